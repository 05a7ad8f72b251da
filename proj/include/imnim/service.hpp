// service.hpp
//
// In-memory HTTP/JSON host for human-vs-engine games.
//
//   POST /api/games                  create a session
//   GET  /api/games/{id}             session view
//   POST /api/games/{id}/moves       play {pile, amount}; engine replies inline
//   GET  /api/games/{id}/analysis    verdict, legal/forbidden moves, overlays
//
// Errors are {code, message} with codes invalid_params, illegal_amount,
// imitation_budget_exhausted, not_your_turn, unknown_session.

#ifndef IMNIM_SERVICE_HPP
#define IMNIM_SERVICE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "imnim/core.hpp"
#include "imnim/wythoff.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace imnim::service {

class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }
  nlohmann::json body() const { return {{"code", code_}, {"message", what()}}; }

 private:
  int status_;
  std::string code_;
};

enum class Player { First, Second };
enum class EngineSide { None, First, Second };

std::string to_string(Player player);
std::string to_string(EngineSide side);

struct LoggedMove {
  Player player = Player::First;
  Move move;
  bool imitation = false;
};

struct GameSession {
  std::string id;
  GameParams params;
  Position start;
  DynamicState state;
  std::vector<LoggedMove> log;
  EngineSide engine_side = EngineSide::None;
  bool finished = false;
  std::optional<Player> winner;

  Player to_move() const { return log.size() % 2 == 0 ? Player::First : Player::Second; }
};

struct ServiceOptions {
  Count pile_cap = 500;
  int param_cap = 64;  // largest accepted p and m
  std::optional<std::string> log_path;  // append-only JSON lines
};

class GameService {
 public:
  explicit GameService(ServiceOptions options = {});

  // Each call throws ServiceError on a bad request.
  nlohmann::json create_game(const nlohmann::json& request);
  nlohmann::json get_game(const std::string& id) const;
  nlohmann::json post_move(const std::string& id, const nlohmann::json& request);
  nlohmann::json get_analysis(const std::string& id) const;

  const ServiceOptions& options() const { return options_; }

 private:
  struct Slot {
    mutable std::mutex mutex;
    GameSession session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  std::shared_ptr<const WythoffTable> table_for(const GameParams& params) const;
  void play(GameSession& session, const Move& move);
  void engine_turns(GameSession& session, nlohmann::json& engine_moves);
  void verify_replay(const GameSession& session) const;
  void persist(const nlohmann::json& line) const;
  nlohmann::json view(const GameSession& session) const;

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::size_t next_id_ = 1;
  mutable std::mutex tables_mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const WythoffTable>> tables_;
  mutable std::mutex log_mutex_;
};

// Registers the API routes on `server`; `service` must outlive it.
void mount(httplib::Server& server, GameService& service);

// Blocks serving on host:port. Returns false if the socket cannot be bound.
bool serve(const std::string& host, int port, ServiceOptions options = {});

}  // namespace imnim::service

#endif  // IMNIM_SERVICE_HPP
