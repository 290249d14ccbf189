#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <thread>

#include "cdslab/server.hpp"

using namespace cdslab;
using nlohmann::json;

namespace {

json call(ProtocolHandler& h, const json& req) { return json::parse(h.handle_line(req.dump())); }

class Client {
 public:
  explicit Client(std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(port);
    sa.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::connect(fd_, reinterpret_cast<sockaddr*>(&sa), sizeof sa) == 0);
  }
  ~Client() { ::close(fd_); }

  std::string round_trip(const std::string& line) {
    const std::string msg = line + "\n";
    REQUIRE(::send(fd_, msg.data(), msg.size(), 0) == static_cast<ssize_t>(msg.size()));
    std::string reply;
    char ch;
    while (::recv(fd_, &ch, 1, 0) == 1 && ch != '\n') reply += ch;
    return reply;
  }

 private:
  int fd_;
};

}  // namespace

TEST_CASE("protocol: dialogue with a static argument") {
  ProtocolHandler h(fixtures_workspace());
  json open = call(h, {{"op", "open"}, {"alg", "A"}, {"arg", "{a=err}"}, {"id", 7}});
  CHECK(open["ok"] == true);
  CHECK(open["id"] == 7);
  CHECK(open["session"] == 1);
  CHECK(open["outputs"] == json::array({"out"}));

  json r = call(h, {{"op", "request"}, {"session", 1}, {"cell", "out"}});
  CHECK(r["ok"] == true);
  CHECK(r["outcome"] == "stuck");
  CHECK(r["pending"] == json{{"valof", "b"}});
  CHECK(r["trace"] == json::array({"REQ out", "VALOF b", "RESULT stuck"}));

  call(h, {{"op", "open"}, {"alg", "A'"}, {"arg", "{a=err}"}});
  json e = call(h, {{"op", "request"}, {"session", 2}, {"cell", "out"}});
  CHECK(e["outcome"] == "err");
  CHECK_FALSE(e.contains("pending"));

  call(h, {{"op", "open"}, {"alg", "A"}, {"arg", "{a=tt,b=tt}"}});
  json v = call(h, {{"op", "request"}, {"session", 3}, {"cell", "out"}});
  CHECK(v["outcome"] == "value");
  CHECK(v["value"] == "tt");
  CHECK(v["trace"].size() == 7);
  CHECK(v["table"] == json{{"a", "tt"}, {"b", "tt"}});
}

TEST_CASE("protocol: manual argument") {
  ProtocolHandler h(fixtures_workspace());
  call(h, {{"op", "open"}, {"alg", "A"}, {"arg", "manual"}});
  json r = call(h, {{"op", "request"}, {"session", 1}, {"cell", "out"}});
  CHECK(r["outcome"] == "awaiting");
  CHECK(r["pending"]["valof"] == "b");
  CHECK(r["trace"] == json::array({"REQ out", "VALOF b"}));

  json bad = call(h, {{"op", "answer"}, {"session", 1}, {"value", "maybe"}});
  CHECK(bad["ok"] == false);
  CHECK(bad["error"] == "IllTypedAnswer");

  r = call(h, {{"op", "answer"}, {"session", 1}, {"value", "tt"}});
  CHECK(r["pending"]["valof"] == "a");
  CHECK(r["table"] == json{{"b", "tt"}});
  r = call(h, {{"op", "answer"}, {"session", 1}, {"value", "err"}});
  CHECK(r["outcome"] == "err");

  json again = call(h, {{"op", "answer"}, {"session", 1}, {"value", "tt"}});
  CHECK(again["error"] == "WrongPhase");

  json t = call(h, {{"op", "trace"}, {"session", 1}, {"verbose", true}});
  CHECK(t["trace"] == json::array({"REQ out", "VALOF b", "ANS tt", "TABLE {b=tt}", "VALOF a", "ANS err",
                                   "RESULT err"}));
  CHECK(call(h, {{"op", "reset"}, {"session", 1}})["table"] == json::object());
  CHECK(call(h, {{"op", "close"}, {"session", 1}})["ok"] == true);
  CHECK(call(h, {{"op", "trace"}, {"session", 1}})["error"] == "UnknownName");
}

TEST_CASE("protocol: errors") {
  ProtocolHandler h(fixtures_workspace());
  json p = json::parse(h.handle_line("{not json"));
  CHECK(p["ok"] == false);
  CHECK(p["error"] == "parse");
  CHECK(p["detail"].is_string());
  CHECK(call(h, json::array({1}))["error"] == "request");
  CHECK(call(h, {{"op", "fly"}})["error"] == "request");
  CHECK(call(h, {{"op", "open"}, {"alg", 3}})["error"] == "request");
  CHECK(call(h, {{"op", "request"}, {"session", "x"}, {"cell", "out"}})["error"] == "request");
  CHECK(call(h, {{"op", "open"}, {"alg", "Nope"}, {"arg", "{}"}})["error"] == "UnknownName");
  call(h, {{"op", "open"}, {"alg", "A"}, {"arg", "{}"}});
  CHECK(call(h, {{"op", "request"}, {"session", 1}, {"cell", "zz"}})["error"] == "RequestUnknownCell");

  json l = call(h, {{"op", "load"}, {"text", "alg X : B2 -> B {\n at {b=tt} out ask b;\n}"}});
  CHECK(l["error"] == "ValofFilledCell");
  CHECK(l["diagnostics"][0]["line"] == 1);
  json s = call(h, {{"op", "load"}, {"text", "alg X : B2 -> B {"}});
  CHECK(s["error"] == "SyntaxError");
}

TEST_CASE("protocol: load, list and analysis ops") {
  ProtocolHandler h(fixtures_workspace());
  json l = call(h, {{"op", "load"}, {"text", "alg K : B2 -> B { at {} out put ff; }"}});
  CHECK(l == json{{"ok", true}, {"names", {"K"}}});
  CHECK(call(h, {{"op", "list"}})["algs"].size() == 13);
  CHECK(call(h, {{"op", "print"}})["text"].get<std::string>().find("alg K : B2 -> B {") != std::string::npos);

  json c = call(h, {{"op", "classify"}, {"table", "por"}});
  CHECK(c["monotone"] == true);
  CHECK(c["stable"] == false);
  CHECK(c["sequential"] == false);
  CHECK(c["stable_counterexample"] == json::array({"{a=tt}", "{b=tt}"}));
  CHECK(call(h, {{"op", "classify"}, {"table", "and"}})["realizers"].size() == 4);

  CHECK(call(h, {{"op", "enum"}, {"from", "o * o"}, {"to", "o"}})["count"] == 3);
  json o = call(h, {{"op", "ortho"}, {"taster", "has_year"}, {"candidate", "K"}});
  CHECK(o["error"] == "TypeMismatch");
  json m = call(h, {{"op", "member"}, {"behaviour", "Needs2"}, {"candidate", "T2"}});
  CHECK(m["error"] == "TypeMismatch");
  json st = call(h, {{"op", "subtype"}, {"sub", "YPC"}, {"super", "YP"}, {"semantic", true}});
  CHECK(st == json{{"ok", true}, {"syntactic", true}, {"semantic", true}});
}

TEST_CASE("server: one handler per connection") {
  CHECK(parse_listen("8080")->port == 8080);
  CHECK(parse_listen("0.0.0.0:9")->host == "0.0.0.0");
  CHECK(parse_listen(":12")->host == "127.0.0.1");
  CHECK_FALSE(parse_listen("host:"));
  CHECK_FALSE(parse_listen("99999"));
  CHECK_FALSE(parse_listen("12ab"));

  Server server(fixtures_workspace(), ListenAddress{"127.0.0.1", 0});
  REQUIRE(server.port() != 0);
  std::thread loop([&] { server.serve(); });
  {
    Client a(server.port());
    Client b(server.port());
    json ra = json::parse(a.round_trip(R"({"op":"open","alg":"A","arg":"{a=err}"})"));
    CHECK(ra["session"] == 1);
    json rb = json::parse(b.round_trip(R"({"op":"open","alg":"A'","arg":"{a=err}"})"));
    CHECK(rb["session"] == 1);
    json sa = json::parse(a.round_trip(R"({"op":"request","session":1,"cell":"out"})"));
    CHECK(sa["outcome"] == "stuck");
    CHECK(sa["pending"]["valof"] == "b");
    json sb = json::parse(b.round_trip(R"({"op":"request","session":1,"cell":"out"})"));
    CHECK(sb["outcome"] == "err");
    CHECK(json::parse(a.round_trip("garbage"))["error"] == "parse");
    CHECK(json::parse(a.round_trip(R"({"op":"list"})"))["ok"] == true);
  }
  server.stop();
  loop.join();
}
