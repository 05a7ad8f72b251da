// oracle.hpp
//
// Exhaustive normal-play solver over the full dynamic state space (position,
// pending window, both credits), used as ground truth for the classifier.

#ifndef IMNIM_ORACLE_HPP
#define IMNIM_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "imnim/core.hpp"
#include "imnim/imitation.hpp"
#include "imnim/json_io.hpp"

namespace imnim {

inline constexpr Count kMaxOracleBound = 64;
inline constexpr std::size_t kMaxOracleStates = std::size_t{1} << 26;

// Dense numbering of every consistent state with both piles <= bound.
class StateIndexer {
 public:
  StateIndexer(const GameParams& params, Count bound);

  std::size_t size() const { return size_; }
  bool within_bound(const DynamicState& state) const;
  std::size_t index(const DynamicState& state) const;  // requires within_bound

 private:
  GameParams params_;
  Count bound_;
  std::size_t pending_slots_;
  std::size_t size_;
};

struct OracleEntry {
  Outcome outcome = Outcome::P;
  // Plies to the end under optimal play: the winner minimizes, the loser
  // maximizes. Terminal states have distance 0.
  int distance = 0;
};

class Oracle {
 public:
  // Throws ResourceLimit if bound exceeds kMaxOracleBound or the memo would
  // exceed kMaxOracleStates entries.
  Oracle(const GameParams& params, Count pile_bound);

  const GameParams& params() const { return params_; }
  Count bound() const { return bound_; }
  bool within_bound(const DynamicState& state) const { return indexer_.within_bound(state); }

  // Thread-safe; insertion is serialized. Throws ResourceLimit for states
  // outside the bound.
  OracleEntry solve(const DynamicState& state);

  // Legal move whose successor has the largest distance (ties: lowest
  // canonical successor, then pile0, then smaller amount). Intended for
  // lost positions. nullopt when the mover has no legal move.
  std::optional<Move> longest_game_move(const DynamicState& state);

 private:
  friend class SweepRunner;
  friend struct SweepReport sweep(const GameParams& params, Count pile_bound, unsigned threads);

  OracleEntry solve_unlocked(const DynamicState& state);
  static std::int16_t encode(OracleEntry entry);
  static OracleEntry decode(std::int16_t code);

  GameParams params_;
  Count bound_;
  StateIndexer indexer_;
  std::vector<std::int16_t> memo_;  // -1 = unknown
  std::mutex mutex_;
};

// Forward closure of all initial positions with piles <= bound. parent[i] is
// the index of the state that produced states[i] via moves[i], or -1 for
// initial states.
struct ReachableSet {
  std::vector<DynamicState> states;
  std::vector<std::int64_t> parent;
  std::vector<Move> via;
};

ReachableSet enumerate_reachable(const GameParams& params, Count bound);

// Starting position and the legal move sequence that reaches states[i].
struct Replay {
  Position start;
  std::vector<Move> moves;
};
Replay replay_path(const ReachableSet& reachable, std::size_t i);

struct Mismatch {
  DynamicState state;
  Outcome oracle = Outcome::P;
  Outcome classifier = Outcome::P;
};

struct SweepReport {
  GameParams params;
  Count bound = 0;
  std::size_t visited = 0;
  std::vector<Mismatch> mismatches;  // oracle vs Theorem-1 classifier
  // Initial positions whose classifier outcome disagrees with P_W membership.
  std::vector<Position> initial_mismatches;
  // p = m = 1 only: initial positions whose oracle outcome disagrees with the
  // golden-ratio pairs (floor(n phi), floor(n phi^2)).
  std::vector<Position> golden_mismatches;

  bool ok() const {
    return mismatches.empty() && initial_mismatches.empty() && golden_mismatches.empty();
  }
};

// threads = 0 picks std::thread::hardware_concurrency(). The report does not
// depend on the thread count.
SweepReport sweep(const GameParams& params, Count pile_bound, unsigned threads = 0);

nlohmann::json to_json(const SweepReport& report);

}  // namespace imnim

#endif  // IMNIM_ORACLE_HPP
