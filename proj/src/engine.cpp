// engine.cpp

#include "imnim/engine.hpp"

#include "imnim/imitation.hpp"

namespace imnim {

std::optional<Move> engine_move(const DynamicState& state, const GameParams& params,
                                const WythoffTable& table, Oracle* oracle) {
  if (auto move = best_move(state, params, table)) return move;
  if (oracle && oracle->within_bound(state)) return oracle->longest_game_move(state);
  return simple_fallback_move(state, params);
}

}  // namespace imnim
