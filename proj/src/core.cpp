// core.cpp

#include "imnim/core.hpp"

#include <algorithm>
#include <sstream>

namespace imnim {

GameParams::GameParams(int p_in, int m_in) : p(p_in), m(m_in) {
  if (p < 1 || m < 1) {
    throw InvalidParams("p and m must be positive (got p=" + std::to_string(p) +
                        ", m=" + std::to_string(m) + ")");
  }
}

std::string to_string(Pile pile) { return pile == Pile::Zero ? "pile0" : "pile1"; }

std::optional<Pile> parse_pile(const std::string& text) {
  if (text == "0" || text == "pile0") return Pile::Zero;
  if (text == "1" || text == "pile1") return Pile::One;
  return std::nullopt;
}

std::string to_string(const Position& position) {
  return "(" + std::to_string(position.pile0) + "," + std::to_string(position.pile1) + ")";
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::MalformedMove:
      return "illegal_amount";
    case Rule::ImitationBudgetExhausted:
      return "imitation_budget_exhausted";
  }
  return "unknown";
}

DynamicState initial_state(const Position& position, const GameParams& params) {
  if (position.pile0 < 0 || position.pile1 < 0) {
    throw InvalidParams("pile heights must be non-negative");
  }
  return {position, std::nullopt, params.p - 1, params.p - 1};
}

bool is_well_formed(const Position& position, const Move& move) {
  return move.amount >= 1 && move.amount <= position[move.pile];
}

bool is_imitation(const DynamicState& state, const Move& move, const GameParams& params) {
  const auto& pending = state.pending;
  return pending && move.pile == pending->target && move.amount >= pending->window_low() &&
         move.amount <= pending->window_high(params);
}

std::optional<Rule> violated_rule(const DynamicState& state, const Move& move,
                                  const GameParams& params) {
  if (!is_well_formed(state.position, move)) return Rule::MalformedMove;
  if (state.credit_mover == 0 && is_imitation(state, move, params)) {
    return Rule::ImitationBudgetExhausted;
  }
  return std::nullopt;
}

std::vector<Move> legal_moves(const DynamicState& state, const GameParams& params) {
  std::vector<Move> moves;
  moves.reserve(static_cast<std::size_t>(state.position.total()));
  for (Pile pile : {Pile::Zero, Pile::One}) {
    for (Count amount = 1; amount <= state.position[pile]; ++amount) {
      Move move{pile, amount};
      if (state.credit_mover == 0 && is_imitation(state, move, params)) continue;
      moves.push_back(move);
    }
  }
  return moves;
}

std::vector<Move> forbidden_moves(const DynamicState& state, const GameParams& params) {
  std::vector<Move> moves;
  if (state.credit_mover != 0 || !state.pending) return moves;
  const auto& pending = *state.pending;
  const Count top = std::min(pending.window_high(params), state.position[pending.target]);
  for (Count amount = pending.window_low(); amount <= top; ++amount) {
    moves.push_back({pending.target, amount});
  }
  return moves;
}

DynamicState apply_move(const DynamicState& state, const Move& move, const GameParams& params) {
  if (auto rule = violated_rule(state, move, params)) {
    std::ostringstream msg;
    msg << "illegal move: remove " << move.amount << " from " << to_string(move.pile) << " at "
        << to_string(state.position) << " (" << to_string(*rule) << ")";
    throw IllegalMove(*rule, msg.str());
  }

  const bool imitation = is_imitation(state, move, params);
  const Pile source = move.pile;
  const bool from_weakly_shorter = state.position[source] <= state.position[other(source)];

  DynamicState next;
  next.position = state.position;
  next.position[source] -= move.amount;
  if (from_weakly_shorter) next.pending = PendingImitation{other(source), move.amount};
  next.credit_other = imitation ? state.credit_mover - 1 : params.p - 1;
  next.credit_mover = state.credit_other;
  return next;
}

bool is_consistent(const DynamicState& state, const GameParams& params) {
  auto in_range = [&](int credit) { return credit >= 0 && credit <= params.p - 1; };
  if (state.position.pile0 < 0 || state.position.pile1 < 0) return false;
  if (!in_range(state.credit_mover) || !in_range(state.credit_other)) return false;
  if (state.pending) {
    if (state.pending->base < 1) return false;
    if (state.credit_other != params.p - 1) return false;
  }
  return true;
}

DynamicState swap_labels(const DynamicState& state) {
  DynamicState out = state;
  out.position = state.position.swapped();
  if (out.pending) out.pending->target = other(out.pending->target);
  return out;
}

Move swap_labels(const Move& move) { return {other(move.pile), move.amount}; }

std::string describe(const DynamicState& state) {
  std::ostringstream out;
  out << to_string(state.position) << " pending=";
  if (state.pending) {
    out << to_string(state.pending->target) << ":" << state.pending->base;
  } else {
    out << "none";
  }
  out << " creditMover=" << state.credit_mover << " creditOther=" << state.credit_other;
  return out.str();
}

}  // namespace imnim
