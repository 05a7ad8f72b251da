// engine.hpp

#ifndef IMNIM_ENGINE_HPP
#define IMNIM_ENGINE_HPP

#include <optional>

#include "imnim/core.hpp"
#include "imnim/oracle.hpp"
#include "imnim/wythoff.hpp"

namespace imnim {

// Move the engine plays: the classifier's winning move when one exists;
// otherwise the oracle's longest-game move when an oracle is supplied and
// the state fits its bound; otherwise simple_fallback_move. nullopt only when
// the mover has no legal move.
std::optional<Move> engine_move(const DynamicState& state, const GameParams& params,
                                const WythoffTable& table, Oracle* oracle = nullptr);

}  // namespace imnim

#endif  // IMNIM_ENGINE_HPP
