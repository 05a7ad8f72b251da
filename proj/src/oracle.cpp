// oracle.cpp

#include "imnim/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <thread>
#include <tuple>

#include "imnim/wythoff.hpp"

namespace imnim {

StateIndexer::StateIndexer(const GameParams& params, Count bound)
    : params_(params), bound_(bound), pending_slots_(1 + 2 * static_cast<std::size_t>(bound)) {
  if (bound < 0 || bound > kMaxOracleBound) {
    throw ResourceLimit("oracle pile bound " + std::to_string(bound) + " outside [0, " +
                        std::to_string(kMaxOracleBound) + "]");
  }
  const auto side = static_cast<std::size_t>(bound + 1);
  const auto p = static_cast<std::size_t>(params.p);
  size_ = side * side * pending_slots_ * p * p;
  if (size_ > kMaxOracleStates) {
    throw ResourceLimit("oracle state space " + std::to_string(size_) + " exceeds cap " +
                        std::to_string(kMaxOracleStates));
  }
}

bool StateIndexer::within_bound(const DynamicState& state) const {
  const auto& pos = state.position;
  return pos.pile0 >= 0 && pos.pile1 >= 0 && pos.pile0 <= bound_ && pos.pile1 <= bound_ &&
         (!state.pending || (state.pending->base >= 1 && state.pending->base <= bound_)) &&
         state.credit_mover >= 0 && state.credit_mover < params_.p && state.credit_other >= 0 &&
         state.credit_other < params_.p;
}

std::size_t StateIndexer::index(const DynamicState& state) const {
  const auto side = static_cast<std::size_t>(bound_ + 1);
  const auto p = static_cast<std::size_t>(params_.p);
  std::size_t slot = 0;
  if (state.pending) {
    slot = 1 + static_cast<std::size_t>(imnim::index(state.pending->target)) * static_cast<std::size_t>(bound_) +
           static_cast<std::size_t>(state.pending->base - 1);
  }
  std::size_t key = static_cast<std::size_t>(state.position.pile0) * side +
                    static_cast<std::size_t>(state.position.pile1);
  key = key * pending_slots_ + slot;
  key = key * p + static_cast<std::size_t>(state.credit_mover);
  key = key * p + static_cast<std::size_t>(state.credit_other);
  return key;
}

Oracle::Oracle(const GameParams& params, Count pile_bound)
    : params_(params), bound_(pile_bound), indexer_(params, pile_bound), memo_(indexer_.size(), -1) {}

std::int16_t Oracle::encode(OracleEntry entry) {
  return static_cast<std::int16_t>(entry.distance * 2 + (entry.outcome == Outcome::N ? 1 : 0));
}

OracleEntry Oracle::decode(std::int16_t code) {
  return {(code & 1) ? Outcome::N : Outcome::P, code >> 1};
}

OracleEntry Oracle::solve(const DynamicState& state) {
  if (!within_bound(state)) {
    throw ResourceLimit("state " + describe(state) + " outside oracle bound " + std::to_string(bound_));
  }
  std::lock_guard lock(mutex_);
  return solve_unlocked(state);
}

OracleEntry Oracle::solve_unlocked(const DynamicState& state) {
  const std::size_t key = indexer_.index(state);
  if (memo_[key] >= 0) return decode(memo_[key]);

  const std::vector<Move> moves = legal_moves(state, params_);
  int best_win = -1;   // min distance over P successors
  int best_loss = -1;  // max distance over N successors
  for (const Move& move : moves) {
    const OracleEntry next = solve_unlocked(apply_move(state, move, params_));
    if (next.outcome == Outcome::P) {
      if (best_win < 0 || next.distance < best_win) best_win = next.distance;
    } else {
      best_loss = std::max(best_loss, next.distance);
    }
  }
  OracleEntry entry;
  if (best_win >= 0) {
    entry = {Outcome::N, best_win + 1};
  } else {
    entry = {Outcome::P, moves.empty() ? 0 : best_loss + 1};
  }
  memo_[key] = encode(entry);
  return entry;
}

std::optional<Move> Oracle::longest_game_move(const DynamicState& state) {
  if (!within_bound(state)) {
    throw ResourceLimit("state " + describe(state) + " outside oracle bound " + std::to_string(bound_));
  }
  std::lock_guard lock(mutex_);
  std::optional<Move> best;
  std::tuple<int, Count, Count, int, Count> best_key{};
  for (const Move& move : legal_moves(state, params_)) {
    const DynamicState next = apply_move(state, move, params_);
    const OracleEntry entry = solve_unlocked(next);
    const Position c = next.position.canonical();
    // Larger distance wins; negate so that the tuple minimum is preferred.
    auto key = std::make_tuple(-entry.distance, c.pile0, c.pile1, index(move.pile), move.amount);
    if (!best || key < best_key) {
      best = move;
      best_key = key;
    }
  }
  return best;
}

ReachableSet enumerate_reachable(const GameParams& params, Count bound) {
  const StateIndexer indexer(params, bound);
  std::vector<bool> seen(indexer.size(), false);
  ReachableSet out;
  std::size_t head = 0;

  auto visit = [&](const DynamicState& state, std::int64_t parent, Move via) {
    const std::size_t key = indexer.index(state);
    if (seen[key]) return;
    seen[key] = true;
    out.states.push_back(state);
    out.parent.push_back(parent);
    out.via.push_back(via);
  };

  for (Count x = 0; x <= bound; ++x) {
    for (Count y = 0; y <= bound; ++y) visit(initial_state({x, y}, params), -1, Move{});
  }
  while (head < out.states.size()) {
    const DynamicState state = out.states[head];
    for (const Move& move : legal_moves(state, params)) {
      visit(apply_move(state, move, params), static_cast<std::int64_t>(head), move);
    }
    ++head;
  }
  return out;
}

Replay replay_path(const ReachableSet& reachable, std::size_t i) {
  Replay replay;
  auto cursor = static_cast<std::int64_t>(i);
  while (reachable.parent[static_cast<std::size_t>(cursor)] >= 0) {
    replay.moves.push_back(reachable.via[static_cast<std::size_t>(cursor)]);
    cursor = reachable.parent[static_cast<std::size_t>(cursor)];
  }
  replay.start = reachable.states[static_cast<std::size_t>(cursor)].position;
  std::reverse(replay.moves.begin(), replay.moves.end());
  return replay;
}

// Solves reachable states in increasing token total. Every successor has a
// strictly smaller total, so all states of one level can be filled
// concurrently: each memo slot has exactly one writer and only reads slots
// of completed levels.
class SweepRunner {
 public:
  SweepRunner(Oracle& oracle, unsigned threads) : oracle_(oracle), threads_(threads) {}

  template <typename Fn>
  void parallel_for(std::size_t count, Fn fn) const {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads_, static_cast<unsigned>(count)));
    if (workers <= 1) {
      for (std::size_t i = 0; i < count; ++i) fn(i, 0u);
      return;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) fn(i, w);
      });
    }
  }

  void solve_levels(const std::vector<DynamicState>& states) {
    std::map<Count, std::vector<std::size_t>> levels;
    for (std::size_t i = 0; i < states.size(); ++i) levels[states[i].position.total()].push_back(i);
    for (const auto& [total, members] : levels) {
      parallel_for(members.size(),
                   [&](std::size_t i, unsigned) { oracle_.solve_unlocked(states[members[i]]); });
    }
  }

  unsigned threads() const { return threads_; }

 private:
  Oracle& oracle_;
  unsigned threads_;
};

SweepReport sweep(const GameParams& params, Count pile_bound, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  Oracle oracle(params, pile_bound);
  const ReachableSet reachable = enumerate_reachable(params, pile_bound);
  const WythoffTable table = WythoffTable::covering(params, pile_bound);

  SweepRunner runner(oracle, threads);
  runner.solve_levels(reachable.states);

  SweepReport report;
  report.params = params;
  report.bound = pile_bound;
  report.visited = reachable.states.size();

  // Per-worker buckets, merged in state order so the report is independent
  // of scheduling.
  std::vector<std::vector<std::size_t>> found(threads);
  runner.parallel_for(reachable.states.size(), [&](std::size_t i, unsigned w) {
    const DynamicState& state = reachable.states[i];
    if (oracle.solve_unlocked(state).outcome != judge(state, params, table).outcome) {
      found[w].push_back(i);
    }
  });
  std::vector<std::size_t> merged;
  for (const auto& bucket : found) merged.insert(merged.end(), bucket.begin(), bucket.end());
  std::sort(merged.begin(), merged.end());
  for (std::size_t i : merged) {
    const DynamicState& state = reachable.states[i];
    report.mismatches.push_back(
        {state, oracle.solve_unlocked(state).outcome, judge(state, params, table).outcome});
  }

  std::vector<Position> golden;
  if (params.p == 1 && params.m == 1) {
    for (Count n = 0;; ++n) {
      const WythoffRow row = beatty_wythoff_pair(1, n);
      if (row.a > pile_bound) break;
      golden.push_back({row.a, row.b});
    }
  }
  for (Count x = 0; x <= pile_bound; ++x) {
    for (Count y = 0; y <= pile_bound; ++y) {
      const DynamicState start = initial_state({x, y}, params);
      const bool in_table = table.contains(start.position);
      if ((judge(start, params, table).outcome == Outcome::P) != in_table) {
        report.initial_mismatches.push_back(start.position);
      }
      if (params.p == 1 && params.m == 1) {
        const bool in_golden =
            std::find(golden.begin(), golden.end(), start.position.canonical()) != golden.end();
        if ((oracle.solve_unlocked(start).outcome == Outcome::P) != in_golden) {
          report.golden_mismatches.push_back(start.position);
        }
      }
    }
  }
  return report;
}

nlohmann::json to_json(const SweepReport& report) {
  auto mismatches = nlohmann::json::array();
  for (const auto& m : report.mismatches) {
    mismatches.push_back({{"state", to_json(m.state)},
                          {"oracle", to_string(m.oracle)},
                          {"classifier", to_string(m.classifier)}});
  }
  auto positions = [](const std::vector<Position>& list) {
    auto out = nlohmann::json::array();
    for (const auto& pos : list) out.push_back(to_json(pos));
    return out;
  };
  return {{"params", to_json(report.params)},
          {"bound", report.bound},
          {"visited", report.visited},
          {"mismatches", mismatches},
          {"initialMismatches", positions(report.initial_mismatches)},
          {"goldenMismatches", positions(report.golden_mismatches)}};
}

}  // namespace imnim
