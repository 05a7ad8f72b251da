// imitation.hpp
//
// P/N classification of dynamic (p,m)-Imitation Nim states from the Wythoff
// table, with a < b the canonical coordinates and L the credit of the
// position:
//
//   P  iff  (I)  (a,b) in P_W and xi(a,b) <= L, or
//           (II) some a <= c < b has (a,c) in P_W and the option (a,b)->(a,c)
//                would carry credit L' < xi(a,c)   (L' = -1 means forbidden).
//
// N states come with a constructive winning move, re-validated against the
// classifier before it is returned.

#ifndef IMNIM_IMITATION_HPP
#define IMNIM_IMITATION_HPP

#include <optional>
#include <string>

#include "imnim/core.hpp"
#include "imnim/wythoff.hpp"

namespace imnim {

enum class Outcome { P, N };
enum class Clause { I, II, None };

std::string to_string(Outcome outcome);
std::string to_string(Clause clause);  // "I", "II", "NONE"

struct Verdict {
  Outcome outcome = Outcome::N;
  Clause clause = Clause::None;
  std::optional<Move> winning_move;  // present iff outcome == N
};

enum class StaticKind { NonDynamicP, NonDynamicN, Dynamic };

enum class StaticReason {
  WythoffPXiZero,   // in P_W with xi = 0
  PWithPositiveXi,  // in P_W with xi > 0: outcome depends on credit
  RowPBelow,        // in N_W with (a,c) in P_W for some a <= c < b: a trap is possible
  RowTrap,          // N_W, a P_W position on the same diagonal below (xi > 0)
  ColumnPBelow,     // N_W, a P_W position reachable by a plain Nim move
};

std::string to_string(StaticKind kind);      // "NonDynamicP", ...
std::string to_string(StaticReason reason);  // "WYTHOFF_P_XI_ZERO", ...
char short_code(StaticKind kind);            // 'P', 'N', 'D'

struct StaticClass {
  StaticKind kind = StaticKind::Dynamic;
  StaticReason reason = StaticReason::RowPBelow;

  friend bool operator==(const StaticClass&, const StaticClass&) = default;
};

// Chain credit the mover would leave on the resulting position: credit_mover-1
// for an imitation (possibly -1, i.e. over budget), p-1 otherwise.
int option_credit(const DynamicState& state, const Move& move, const GameParams& params);

// Outcome and witnessing clause only; no move search.
struct Judgement {
  Outcome outcome = Outcome::N;
  Clause clause = Clause::None;
};
Judgement judge(const DynamicState& state, const GameParams& params, const WythoffTable& table);

Verdict classify(const DynamicState& state, const GameParams& params, const WythoffTable& table);

StaticClass classify_static(const Position& position, const GameParams& params,
                            const WythoffTable& table);

// Winning move for N states, nullopt for P states. Among winning moves the
// smallest removal is preferred, then the lowest canonical successor, then
// pile0. Throws std::logic_error if no constructed move validates.
std::optional<Move> best_move(const DynamicState& state, const GameParams& params,
                              const WythoffTable& table);

// History-free move for a losing player: the smallest non-imitating removal
// from the larger pile, else from the smaller pile, else the first legal move.
// nullopt if the mover has no legal move.
std::optional<Move> simple_fallback_move(const DynamicState& state, const GameParams& params);

}  // namespace imnim

#endif  // IMNIM_IMITATION_HPP
