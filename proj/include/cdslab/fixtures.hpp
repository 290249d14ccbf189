#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cdslab/analysis.hpp"
#include "cdslab/behaviours.hpp"

namespace cdslab::fixtures {

/// All cells initial, every cell/value pair an event. Throws DuplicateId.
CdsPtr flat_cds(std::string name, const std::vector<std::string>& cells,
                const std::vector<std::string>& values);

/// One cell `?`, no values.
CdsPtr game_o();

/// Flat booleans: B has the single cell `out`, B2 cells a b, B3 cells a b c.
CdsPtr bool1();
CdsPtr bool2();
CdsPtr bool3();

/// if b = true then if a = true then true, over B2 -> B.
SeqAlg schedule_a();
/// if a = true then if b = true then true, over B2 -> B.
SeqAlg schedule_a_prime();
/// The same two schedules over B3 -> B (c is never read).
SeqAlg schedule_a3();
SeqAlg schedule_a3_prime();
/// Negation on B -> B.
SeqAlg not_alg();

/// Parallel or on B2 -> B, upward-closed from por(tt,_)=tt and por(_,tt)=tt;
/// with_ff_row adds por(ff,ff)=ff.
FunTable por_table(bool with_ff_row = true);
/// Berry's function on B3 -> B from its three characteristic rows; other
/// rows are empty unless forced by monotonicity.
FunTable bk_table();
/// fun_of(schedule_a()).
FunTable and_table();

/// Input factor and output of the neededness example: flat one-value Cds
/// Sin = {in : star}, Sout = {out : star}.
CdsPtr sigma_in();
CdsPtr sigma_out();
/// Sin * Sin * Sin -> Sout, the type of the tasted candidates.
CdsPtr three_arg_type();
/// The taster that outputs err when a candidate's first move queries its
/// second argument.
Taster taster_t2();

/// Records with fields year, price and colour.
CdsPtr record_cds();
Taster presence(const std::string& field);
Behaviour year_price();
Behaviour year_price_colour();

struct BooleanIso {
  /// Each state of B paired with its algorithm of (o * o) -> o.
  std::vector<std::pair<State, SeqAlg>> pairs;
  /// The images are pairwise distinct and cover enumerate_algorithms.
  bool bijective = false;
};

BooleanIso boolean_iso();

/// The empty algorithm of (o * o) -> o and the two schedulers.
SeqAlg o_bottom();
SeqAlg o_true();
SeqAlg o_false();

}  // namespace cdslab::fixtures
