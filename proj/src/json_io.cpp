// json_io.cpp

#include "imnim/json_io.hpp"

namespace imnim {

nlohmann::json to_json(const GameParams& params) { return {{"p", params.p}, {"m", params.m}}; }

nlohmann::json to_json(const Position& position) {
  return {{"pile0", position.pile0}, {"pile1", position.pile1}};
}

nlohmann::json to_json(const Move& move) {
  return {{"pile", index(move.pile)}, {"amount", move.amount}};
}

nlohmann::json to_json(const std::optional<PendingImitation>& pending) {
  if (!pending) return nullptr;
  return {{"target", index(pending->target)}, {"base", pending->base}};
}

nlohmann::json to_json(const DynamicState& state) {
  return {{"position", to_json(state.position)},
          {"pending", to_json(state.pending)},
          {"creditMover", state.credit_mover},
          {"creditOther", state.credit_other}};
}

}  // namespace imnim
