#include <unistd.h>

#include <CLI11.hpp>
#include <iostream>

#include "cdslab/server.hpp"

using namespace cdslab;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct Options {
  std::vector<std::string> load;
  bool bare = false;
};

Workspace load_workspace(const Options& opts) {
  Workspace ws = opts.bare ? Workspace() : fixtures_workspace();
  for (const auto& file : opts.load) {
    ParseResult r = parse_file(file, ws);
    if (!r.ok()) {
      for (auto& d : r.errors) d.message = file + ": " + d.message;
      throw Error(r.errors);
    }
    ws.merge(r.delta);
  }
  return ws;
}

void add_workspace_options(CLI::App* cmd, Options& opts) {
  cmd->add_option("--load", opts.load, "Definition files read before running")->check(CLI::ExistingFile);
  cmd->add_flag("--bare", opts.bare, "Start without the built-in fixtures");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concrete data structures and sequential algorithms workbench"};
  app.require_subcommand(1);
  Options opts;

  auto* repl = app.add_subcommand("repl", "Interactive interpreter");
  std::vector<std::string> repl_files;
  repl->add_option("files", repl_files, "Definition files to load")->check(CLI::ExistingFile);
  repl->add_flag("--bare", opts.bare, "Start without the built-in fixtures");

  auto* eval = app.add_subcommand("eval", "Apply an algorithm to an argument and request one cell");
  std::string alg, arg = "{}", request;
  bool trace = false, verbose = false;
  eval->add_option("--alg", alg, "Algorithm name")->required();
  eval->add_option("--arg", arg, "Argument: {c=v,...}, manual, or an algorithm name");
  eval->add_option("--request", request, "Output cell to request")->required();
  eval->add_flag("--trace", trace, "Print the dialogue");
  eval->add_flag("--verbose", verbose, "With --trace, also print the internal tables");
  add_workspace_options(eval, opts);

  auto* cls = app.add_subcommand("classify", "Monotone, stable and sequential verdicts for a table");
  std::string table;
  cls->add_option("--table", table, "Table name")->required();
  add_workspace_options(cls, opts);

  auto* en = app.add_subcommand("enum", "List all algorithms between two types");
  std::string from, to;
  en->add_option("--from", from, "Input type")->required();
  en->add_option("--to", to, "Output type")->required();
  add_workspace_options(en, opts);

  auto* ortho = app.add_subcommand("ortho", "Run a taster against a candidate");
  std::string taster, candidate;
  ortho->add_option("--taster", taster)->required();
  ortho->add_option("--candidate", candidate)->required();
  add_workspace_options(ortho, opts);

  auto* mem = app.add_subcommand("member", "Test a candidate against a behaviour");
  std::string behaviour;
  mem->add_option("--behaviour", behaviour)->required();
  mem->add_option("--candidate", candidate)->required();
  add_workspace_options(mem, opts);

  auto* sub = app.add_subcommand("subtype", "Compare two behaviours");
  std::string sub_name, super_name;
  bool semantic = false;
  sub->add_option("--sub", sub_name)->required();
  sub->add_option("--super", super_name)->required();
  sub->add_flag("--semantic", semantic, "Also compare member sets by enumeration");
  add_workspace_options(sub, opts);

  auto* print = app.add_subcommand("print", "Print the workspace as definitions");
  add_workspace_options(print, opts);

  auto* serve = app.add_subcommand("serve", "Serve the JSON line protocol over TCP");
  std::string listen = "127.0.0.1:7411";
  serve->add_option("--listen", listen, "HOST:PORT or PORT");
  add_workspace_options(serve, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*repl) {
      opts.load = repl_files;
      Repl r(load_workspace(opts));
      r.run(std::cin, std::cout, ::isatty(STDIN_FILENO));
    } else if (*eval) {
      Workspace ws = load_workspace(opts);
      const SeqAlg& f = ws.get_alg(alg);
      auto a = make_argument(ws, f, arg);
      Trace t = apply(f, *a, CellId{request});
      std::cout << (trace ? to_text(t, verbose) : to_string(t.outcome) + "\n");
    } else if (*cls) {
      std::cout << classify_report(load_workspace(opts), table);
    } else if (*en) {
      std::cout << enum_report(load_workspace(opts), from, to);
    } else if (*ortho) {
      std::cout << ortho_report(load_workspace(opts), taster, candidate);
    } else if (*mem) {
      std::cout << member_report(load_workspace(opts), behaviour, candidate);
    } else if (*sub) {
      std::cout << subtype_report(load_workspace(opts), sub_name, super_name, semantic);
    } else if (*print) {
      std::cout << print_definitions(load_workspace(opts));
    } else if (*serve) {
      auto addr = parse_listen(listen);
      if (!addr) {
        std::cerr << "error: --listen expects HOST:PORT or PORT, got " << listen << "\n";
        return kUsage;
      }
      Server server(load_workspace(opts), *addr);
      std::cout << "listening on " << addr->host << ":" << server.port() << std::endl;
      server.serve();
    }
  } catch (const Error& e) {
    for (const auto& d : e.diagnostics()) std::cerr << "error: " << format(d) << "\n";
    return kInvalid;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}
