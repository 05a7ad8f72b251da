// imitation.cpp

#include "imnim/imitation.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace imnim {

std::string to_string(Outcome outcome) { return outcome == Outcome::P ? "P" : "N"; }

std::string to_string(Clause clause) {
  switch (clause) {
    case Clause::I:
      return "I";
    case Clause::II:
      return "II";
    case Clause::None:
      return "NONE";
  }
  return "NONE";
}

std::string to_string(StaticKind kind) {
  switch (kind) {
    case StaticKind::NonDynamicP:
      return "NonDynamicP";
    case StaticKind::NonDynamicN:
      return "NonDynamicN";
    case StaticKind::Dynamic:
      return "Dynamic";
  }
  return "Dynamic";
}

std::string to_string(StaticReason reason) {
  switch (reason) {
    case StaticReason::WythoffPXiZero:
      return "WYTHOFF_P_XI_ZERO";
    case StaticReason::PWithPositiveXi:
      return "P_WITH_POSITIVE_XI";
    case StaticReason::RowPBelow:
      return "ROW_P_BELOW";
    case StaticReason::RowTrap:
      return "ROW_TRAP";
    case StaticReason::ColumnPBelow:
      return "COLUMN_P_BELOW";
  }
  return "ROW_P_BELOW";
}

char short_code(StaticKind kind) {
  switch (kind) {
    case StaticKind::NonDynamicP:
      return 'P';
    case StaticKind::NonDynamicN:
      return 'N';
    case StaticKind::Dynamic:
      return 'D';
  }
  return 'D';
}

int option_credit(const DynamicState& state, const Move& move, const GameParams& params) {
  return is_imitation(state, move, params) ? state.credit_mover - 1 : params.p - 1;
}

namespace {

// Label of the pile holding the larger count; pile1 on ties.
Pile high_pile(const Position& position) {
  return position.pile0 > position.pile1 ? Pile::Zero : Pile::One;
}

}  // namespace

Judgement judge(const DynamicState& state, const GameParams& params, const WythoffTable& table) {
  const Position c = state.position.canonical();
  const Count a = c.pile0;
  const Count b = c.pile1;

  if (table.row_of(c) && xi(c, table) <= state.credit_other) return {Outcome::P, Clause::I};

  if (a < b) {
    if (auto n = table.row_with_a(a)) {
      const Count below = table.row(*n).b;
      if (below < b) {
        const Move trap{high_pile(state.position), b - below};
        if (option_credit(state, trap, params) < xi({a, below}, table)) {
          return {Outcome::P, Clause::II};
        }
      }
    }
  }
  return {Outcome::N, Clause::None};
}

namespace {

// Moves suggested by the winning-strategy constructions for an N state:
//  - drop the low pile to the a-value of an earlier P_W row whose only
//    reply is an imitation, so the opponent runs out of credit;
//  - take the high pile down to the row P-position (a,c), c < b;
//  - any plain move onto a P_W position: (c,a) or (c,b) with c < a.
std::vector<Move> constructive_candidates(const DynamicState& state, const WythoffTable& table) {
  const Position& pos = state.position;
  const Position c = pos.canonical();
  const Count a = c.pile0;
  const Count b = c.pile1;

  std::vector<Pile> lows{pos.pile0 <= pos.pile1 ? Pile::Zero : Pile::One};
  std::vector<Pile> highs{high_pile(pos)};
  if (a == b) {
    lows = {Pile::Zero, Pile::One};
    highs = {Pile::Zero, Pile::One};
  }

  std::vector<Move> out;
  auto add = [&](const std::vector<Pile>& piles, Count target) {
    for (Pile pile : piles) {
      if (target >= 0 && target < pos[pile]) out.push_back({pile, pos[pile] - target});
    }
  };

  // A trap row (x,z) needs (b - z) in the window [a - x, a - x + m - 1], i.e.
  // z - x in [d - m + 1, d]; the only P_W difference there is floor(d/m)*m.
  const Count m = table.params().m;
  const RowRange diagonal = table.rows_with_difference((b - a) / m * m);
  for (std::size_t n = diagonal.first; n < diagonal.last && table.row(n).a < a; ++n) {
    add(lows, table.row(n).a);
  }
  if (auto n = table.row_with_a(a)) {
    if (table.row(*n).b < b) add(highs, table.row(*n).b);
  }
  if (auto n = table.row_with_b(a)) {
    if (table.row(*n).a < a) add(highs, table.row(*n).a);
  }
  if (auto n = table.row_with_b(b)) {
    if (table.row(*n).a < a) add(lows, table.row(*n).a);
  }
  return out;
}

// Smallest removal, then lowest canonical successor, then pile0.
bool prefer(const Position& from, const Move& lhs, const Move& rhs) {
  auto key = [&from](const Move& mv) {
    Position next = from;
    next[mv.pile] -= mv.amount;
    const Position c = next.canonical();
    return std::make_tuple(mv.amount, c.pile0, c.pile1, index(mv.pile));
  };
  return key(lhs) < key(rhs);
}

}  // namespace

std::optional<Move> best_move(const DynamicState& state, const GameParams& params,
                              const WythoffTable& table) {
  if (judge(state, params, table).outcome == Outcome::P) return std::nullopt;

  std::optional<Move> best;
  for (const Move& move : constructive_candidates(state, table)) {
    if (violated_rule(state, move, params)) continue;
    const DynamicState next = apply_move(state, move, params);
    if (judge(next, params, table).outcome != Outcome::P) continue;
    if (!best || prefer(state.position, move, *best)) best = move;
  }
  if (!best) {
    throw std::logic_error("no constructed winning move validates for N state " + describe(state));
  }
  return best;
}

Verdict classify(const DynamicState& state, const GameParams& params, const WythoffTable& table) {
  const Judgement j = judge(state, params, table);
  Verdict verdict{j.outcome, j.clause, std::nullopt};
  if (j.outcome == Outcome::N) verdict.winning_move = best_move(state, params, table);
  return verdict;
}

StaticClass classify_static(const Position& position, const GameParams& params,
                            const WythoffTable& table) {
  (void)params;
  const Position c = position.canonical();
  if (table.row_of(c)) {
    return xi(c, table) == 0
               ? StaticClass{StaticKind::NonDynamicP, StaticReason::WythoffPXiZero}
               : StaticClass{StaticKind::Dynamic, StaticReason::PWithPositiveXi};
  }
  if (auto n = table.row_with_a(c.pile0); n && table.row(*n).b < c.pile1) {
    return {StaticKind::Dynamic, StaticReason::RowPBelow};
  }
  if (xi(c, table) > 0) return {StaticKind::NonDynamicN, StaticReason::RowTrap};
  return {StaticKind::NonDynamicN, StaticReason::ColumnPBelow};
}

std::optional<Move> simple_fallback_move(const DynamicState& state, const GameParams& params) {
  const std::vector<Move> legal = legal_moves(state, params);
  if (legal.empty()) return std::nullopt;
  const Pile high = high_pile(state.position);
  for (Pile pile : {high, other(high)}) {
    for (const Move& move : legal) {
      if (move.pile == pile && !is_imitation(state, move, params)) return move;
    }
  }
  return legal.front();
}

}  // namespace imnim
