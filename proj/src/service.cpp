// service.cpp

#include "imnim/service.hpp"

#include <fstream>

#include "httplib.h"
#include "imnim/engine.hpp"
#include "imnim/imitation.hpp"
#include "imnim/json_io.hpp"

namespace imnim::service {

using nlohmann::json;

std::string to_string(Player player) { return player == Player::First ? "first" : "second"; }

std::string to_string(EngineSide side) {
  switch (side) {
    case EngineSide::None:
      return "none";
    case EngineSide::First:
      return "first";
    case EngineSide::Second:
      return "second";
  }
  return "none";
}

namespace {

ServiceError bad_params(const std::string& message) { return {400, "invalid_params", message}; }

Count read_count(const json& body, const char* key, std::optional<Count> fallback = std::nullopt) {
  if (!body.contains(key)) {
    if (fallback) return *fallback;
    throw bad_params(std::string("missing field ") + key);
  }
  const json& value = body.at(key);
  if (!value.is_number_integer()) throw bad_params(std::string(key) + " must be an integer");
  return value.get<Count>();
}

bool engine_owns(const GameSession& session) {
  return (session.engine_side == EngineSide::First && session.to_move() == Player::First) ||
         (session.engine_side == EngineSide::Second && session.to_move() == Player::Second);
}

json move_json(const Move& move) { return {{"pile", index(move.pile)}, {"amount", move.amount}}; }

json optional_move(const std::optional<Move>& move) { return move ? move_json(*move) : json(nullptr); }

json move_list(const std::vector<Move>& moves) {
  json out = json::array();
  for (const Move& move : moves) out.push_back(move_json(move));
  return out;
}

}  // namespace

GameService::GameService(ServiceOptions options) : options_(std::move(options)) {}

std::shared_ptr<GameService::Slot> GameService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown_session", "no game with id " + id);
  return it->second;
}

std::shared_ptr<const WythoffTable> GameService::table_for(const GameParams& params) const {
  std::lock_guard lock(tables_mutex_);
  auto& slot = tables_[{params.p, params.m}];
  if (!slot) slot = std::make_shared<const WythoffTable>(WythoffTable::covering(params, options_.pile_cap));
  return slot;
}

void GameService::play(GameSession& session, const Move& move) {
  const bool imitation = is_imitation(session.state, move, session.params);
  const Player mover = session.to_move();
  session.state = apply_move(session.state, move, session.params);
  session.log.push_back({mover, move, imitation});
  if (legal_moves(session.state, session.params).empty()) {
    session.finished = true;
    session.winner = mover;
  }
  persist({{"id", session.id},
           {"event", "move"},
           {"player", to_string(mover)},
           {"pile", index(move.pile)},
           {"amount", move.amount},
           {"imitation", imitation}});
}

void GameService::engine_turns(GameSession& session, json& engine_moves) {
  const auto table = table_for(session.params);
  while (!session.finished && engine_owns(session)) {
    const std::optional<Move> move = engine_move(session.state, session.params, *table);
    if (!move) break;
    play(session, *move);
    engine_moves.push_back(move_json(*move));
  }
}

void GameService::verify_replay(const GameSession& session) const {
  DynamicState state = initial_state(session.start, session.params);
  for (const LoggedMove& entry : session.log) state = apply_move(state, entry.move, session.params);
  if (state != session.state) {
    throw ServiceError(500, "internal_error", "replay of game " + session.id + " diverged");
  }
}

void GameService::persist(const json& line) const {
  if (!options_.log_path) return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(*options_.log_path, std::ios::app);
  out << line.dump() << '\n';
}

json GameService::view(const GameSession& session) const {
  json moves = json::array();
  for (const LoggedMove& entry : session.log) {
    moves.push_back({{"player", to_string(entry.player)},
                     {"pile", index(entry.move.pile)},
                     {"amount", entry.move.amount},
                     {"imitation", entry.imitation}});
  }
  const DynamicState& s = session.state;
  return {{"id", session.id},
          {"p", session.params.p},
          {"m", session.params.m},
          {"start", to_json(session.start)},
          {"position", to_json(s.position)},
          {"pending", to_json(s.pending)},
          {"creditMover", s.credit_mover},
          {"creditOther", s.credit_other},
          {"toMove", to_string(session.to_move())},
          {"engineSide", to_string(session.engine_side)},
          {"status", session.finished ? "finished" : "ongoing"},
          {"winner", session.winner ? json(to_string(*session.winner)) : json(nullptr)},
          {"moves", moves}};
}

json GameService::create_game(const json& request) {
  if (!request.is_object()) throw bad_params("request body must be a JSON object");
  const Count p = read_count(request, "p");
  const Count m = read_count(request, "m");
  if (p < 1 || m < 1 || p > options_.param_cap || m > options_.param_cap) {
    throw bad_params("p and m must lie in [1, " + std::to_string(options_.param_cap) + "]");
  }
  // {a, b} or position: {pile0, pile1}
  Position start;
  if (request.contains("position")) {
    const json& pos = request.at("position");
    if (!pos.is_object()) throw bad_params("position must be an object");
    start = {read_count(pos, "pile0"), read_count(pos, "pile1")};
  } else {
    start = {read_count(request, "a"), read_count(request, "b")};
  }
  if (start.pile0 < 0 || start.pile1 < 0 || start.pile0 > options_.pile_cap || start.pile1 > options_.pile_cap) {
    throw bad_params("pile heights must lie in [0, " + std::to_string(options_.pile_cap) + "]");
  }
  EngineSide side = EngineSide::None;
  if (request.contains("engineSide")) {
    const json& value = request.at("engineSide");
    const std::string text = value.is_string() ? value.get<std::string>() : "";
    if (text == "none") {
      side = EngineSide::None;
    } else if (text == "first") {
      side = EngineSide::First;
    } else if (text == "second") {
      side = EngineSide::Second;
    } else {
      throw bad_params("engineSide must be none, first or second");
    }
  }

  auto slot = std::make_shared<Slot>();
  GameSession& session = slot->session;
  session.params = GameParams(static_cast<int>(p), static_cast<int>(m));
  session.start = start;
  session.state = initial_state(start, session.params);
  session.engine_side = side;
  if (legal_moves(session.state, session.params).empty()) {
    session.finished = true;
    session.winner = Player::Second;
  }
  {
    std::unique_lock lock(sessions_mutex_);
    session.id = "g" + std::to_string(next_id_++);
    sessions_[session.id] = slot;
  }

  std::lock_guard lock(slot->mutex);
  persist({{"id", session.id},
           {"event", "create"},
           {"p", p},
           {"m", m},
           {"position", to_json(start)},
           {"engineSide", to_string(side)}});
  json engine_moves = json::array();
  engine_turns(session, engine_moves);
  verify_replay(session);
  json out = view(session);
  out["engineMoves"] = engine_moves;
  return out;
}

json GameService::get_game(const std::string& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  return view(slot->session);
}

json GameService::post_move(const std::string& id, const json& request) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  GameSession& session = slot->session;
  if (session.finished) throw ServiceError(409, "not_your_turn", "game " + id + " is finished");
  if (engine_owns(session)) throw ServiceError(409, "not_your_turn", "the engine is to move");
  if (!request.is_object()) throw bad_params("request body must be a JSON object");

  const json& pile_field = request.contains("pile") ? request.at("pile") : json();
  std::optional<Pile> pile;
  if (pile_field.is_number_integer()) {
    const auto value = pile_field.get<Count>();
    if (value == 0 || value == 1) pile = static_cast<Pile>(value);
  } else if (pile_field.is_string()) {
    pile = parse_pile(pile_field.get<std::string>());
  }
  if (!pile) throw bad_params("pile must be 0, 1, \"pile0\" or \"pile1\"");
  const Move move{*pile, read_count(request, "amount")};

  if (auto rule = violated_rule(session.state, move, session.params)) {
    const std::string message = "cannot remove " + std::to_string(move.amount) + " from " +
                                imnim::to_string(move.pile) + " in " + describe(session.state);
    throw ServiceError(400, imnim::to_string(*rule), message);
  }
  play(session, move);
  json engine_moves = json::array();
  engine_turns(session, engine_moves);
  verify_replay(session);
  json out = view(session);
  out["engineMoves"] = engine_moves;
  return out;
}

json GameService::get_analysis(const std::string& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  const GameSession& session = slot->session;
  const auto table = table_for(session.params);
  const DynamicState& state = session.state;

  const Verdict verdict = classify(state, session.params, *table);
  const std::optional<Move> recommended =
      session.finished ? std::nullopt : engine_move(state, session.params, *table);

  // Overlays cover the board [0, extent]^2; staticClass[x][y] is the class of
  // (pile0 = x, pile1 = y).
  const Count extent = std::max(session.start.pile0, session.start.pile1);
  json wythoff_p = json::array();
  for (const WythoffRow& row : table->rows()) {
    if (row.a > extent) break;
    if (row.b <= extent) {
      wythoff_p.push_back({{"pile0", row.a}, {"pile1", row.b}});
      if (row.a != row.b) wythoff_p.push_back({{"pile0", row.b}, {"pile1", row.a}});
    }
  }
  json static_rows = json::array();
  json reasons = json::object();
  for (Count x = 0; x <= extent; ++x) {
    std::string line;
    for (Count y = 0; y <= extent; ++y) {
      const StaticClass cls = classify_static({x, y}, session.params, *table);
      line.push_back(short_code(cls.kind));
      if (Position{x, y} == state.position) {
        reasons = {{"kind", to_string(cls.kind)}, {"reason", to_string(cls.reason)}};
      }
    }
    static_rows.push_back(line);
  }

  json out = view(session);
  out["verdict"] = {{"outcome", to_string(verdict.outcome)},
                    {"clause", to_string(verdict.clause)},
                    {"winningMove", optional_move(verdict.winning_move)}};
  out["legalMoves"] = move_list(legal_moves(state, session.params));
  out["forbiddenMoves"] = move_list(forbidden_moves(state, session.params));
  out["recommendedMove"] = optional_move(recommended);
  out["overlays"] = {{"extent", extent},
                     {"wythoffP", wythoff_p},
                     {"staticClass", static_rows},
                     {"current", reasons}};
  return out;
}

void mount(httplib::Server& server, GameService& service) {
  auto reply = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(body.dump(), "application/json");
  };
  auto guarded = [reply](auto&& fn) {
    return [reply, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const ServiceError& e) {
        reply(res, e.status(), e.body());
      } catch (const json::exception& e) {
        reply(res, 400, {{"code", "invalid_params"}, {"message", e.what()}});
      } catch (const InvalidParams& e) {
        reply(res, 400, {{"code", "invalid_params"}, {"message", e.what()}});
      } catch (const std::exception& e) {
        reply(res, 500, {{"code", "internal_error"}, {"message", e.what()}});
      }
    };
  };
  auto body_of = [](const httplib::Request& req) {
    return req.body.empty() ? json::object() : json::parse(req.body);
  };

  server.Post("/api/games", guarded([&service, reply, body_of](const httplib::Request& req, httplib::Response& res) {
                reply(res, 201, service.create_game(body_of(req)));
              }));
  server.Get(R"(/api/games/([^/]+))",
             guarded([&service, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, service.get_game(req.matches[1]));
             }));
  server.Post(R"(/api/games/([^/]+)/moves)",
              guarded([&service, reply, body_of](const httplib::Request& req, httplib::Response& res) {
                reply(res, 200, service.post_move(req.matches[1], body_of(req)));
              }));
  server.Get(R"(/api/games/([^/]+)/analysis)",
             guarded([&service, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, service.get_analysis(req.matches[1]));
             }));
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

bool serve(const std::string& host, int port, ServiceOptions options) {
  GameService service(std::move(options));
  httplib::Server server;
  mount(server, service);
  return server.listen(host, port);
}

}  // namespace imnim::service
