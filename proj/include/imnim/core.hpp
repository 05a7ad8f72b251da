// core.hpp
//
// Rules of (p,m)-Imitation Nim: two labeled piles, Nim removals, and the
// restriction that a player may chain at most p-1 consecutive m-imitations.
//
// A move that removes x tokens from the weakly shorter pile (heights counted
// before the removal) opens an imitation window [x, x+m-1] on the other pile.
// The reply imitates if it removes an amount inside that window from that
// pile. Every state carries both players' remaining imitation credit.

#ifndef IMNIM_CORE_HPP
#define IMNIM_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace imnim {

using Count = std::int64_t;

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a request would exceed a configured memory/time cap.
class ResourceLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Raised when a Wythoff table is too short to answer a query exactly.
class CoverageError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct GameParams {
  int p = 1;  // imitation budget: at most p-1 consecutive imitations
  int m = 1;  // imitation window width

  GameParams() = default;
  GameParams(int p_in, int m_in);

  friend bool operator==(const GameParams&, const GameParams&) = default;
};

enum class Pile : std::uint8_t { Zero = 0, One = 1 };

constexpr Pile other(Pile pile) { return pile == Pile::Zero ? Pile::One : Pile::Zero; }
constexpr int index(Pile pile) { return static_cast<int>(pile); }
std::string to_string(Pile pile);  // "pile0" / "pile1"
std::optional<Pile> parse_pile(const std::string& text);

struct Position {
  Count pile0 = 0;
  Count pile1 = 0;

  Count operator[](Pile pile) const { return pile == Pile::Zero ? pile0 : pile1; }
  Count& operator[](Pile pile) { return pile == Pile::Zero ? pile0 : pile1; }

  Count total() const { return pile0 + pile1; }
  Count low() const { return pile0 < pile1 ? pile0 : pile1; }
  Count high() const { return pile0 < pile1 ? pile1 : pile0; }

  // (min, max) view; only used for classification.
  Position canonical() const { return {low(), high()}; }
  Position swapped() const { return {pile1, pile0}; }

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

std::string to_string(const Position& position);  // "(a,b)"

struct Move {
  Pile pile = Pile::Zero;
  Count amount = 1;

  friend bool operator==(const Move&, const Move&) = default;
};

struct PendingImitation {
  Pile target = Pile::One;
  Count base = 1;

  Count window_low() const { return base; }
  Count window_high(const GameParams& params) const { return base + params.m - 1; }

  friend bool operator==(const PendingImitation&, const PendingImitation&) = default;
};

struct DynamicState {
  Position position;
  std::optional<PendingImitation> pending;
  int credit_mover = 0;  // imitations the player to move may still chain
  int credit_other = 0;  // L of the current position: chain credit of the player who just moved

  friend bool operator==(const DynamicState&, const DynamicState&) = default;
};

enum class Rule {
  MalformedMove,             // pile empty, amount < 1 or larger than the pile
  ImitationBudgetExhausted,  // imitation while credit_mover == 0
};

std::string to_string(Rule rule);

class IllegalMove : public std::invalid_argument {
 public:
  IllegalMove(Rule rule, const std::string& what) : std::invalid_argument(what), rule_(rule) {}
  Rule rule() const { return rule_; }

 private:
  Rule rule_;
};

DynamicState initial_state(const Position& position, const GameParams& params);

bool is_well_formed(const Position& position, const Move& move);

// True iff the move lands inside the pending imitation window. The move must
// be well formed.
bool is_imitation(const DynamicState& state, const Move& move, const GameParams& params);

// nullopt when the move is legal.
std::optional<Rule> violated_rule(const DynamicState& state, const Move& move,
                                  const GameParams& params);

// Pile0 removals first, then pile1, each by increasing amount. Empty means
// the player to move has lost.
std::vector<Move> legal_moves(const DynamicState& state, const GameParams& params);

// Legal Nim removals that the imitation rule forbids.
std::vector<Move> forbidden_moves(const DynamicState& state, const GameParams& params);

DynamicState apply_move(const DynamicState& state, const Move& move, const GameParams& params);

// Checks the stored-state invariants: credits in [0, p-1], a pending window
// only after a non-imitating move (credit_other == p-1), base >= 1.
bool is_consistent(const DynamicState& state, const GameParams& params);

DynamicState swap_labels(const DynamicState& state);
Move swap_labels(const Move& move);

std::string describe(const DynamicState& state);

}  // namespace imnim

template <>
struct std::hash<imnim::DynamicState> {
  std::size_t operator()(const imnim::DynamicState& s) const noexcept {
    std::size_t h = std::hash<imnim::Count>{}(s.position.pile0);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<imnim::Count>{}(s.position.pile1));
    mix(s.pending ? (static_cast<std::size_t>(s.pending->base) << 1 | imnim::index(s.pending->target)) + 1 : 0);
    mix(static_cast<std::size_t>(s.credit_mover) << 16 | static_cast<std::size_t>(s.credit_other));
    return h;
  }
};

#endif  // IMNIM_CORE_HPP
