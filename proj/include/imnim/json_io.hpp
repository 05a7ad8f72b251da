// json_io.hpp
//
// JSON views of core types, using the wire field names of the HTTP API.

#ifndef IMNIM_JSON_IO_HPP
#define IMNIM_JSON_IO_HPP

#include "imnim/core.hpp"
#include "json.hpp"

namespace imnim {

nlohmann::json to_json(const GameParams& params);
nlohmann::json to_json(const Position& position);  // {pile0, pile1}
nlohmann::json to_json(const Move& move);          // {pile, amount}
nlohmann::json to_json(const std::optional<PendingImitation>& pending);  // {target, base} | null
// {position, pending, creditMover, creditOther}
nlohmann::json to_json(const DynamicState& state);

}  // namespace imnim

#endif  // IMNIM_JSON_IO_HPP
