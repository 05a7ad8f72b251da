// reference.hpp
//
// Slow, independent re-implementations used only as test oracles. None of
// this calls into the library's rule engine or table code.

#ifndef IMNIM_TESTS_REFERENCE_HPP
#define IMNIM_TESTS_REFERENCE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace ref {

using Int = std::int64_t;

// Definition-3 rows by brute-force mex over a std::set.
inline std::vector<std::pair<Int, Int>> mex_table(int p, int m, std::size_t rows) {
  std::vector<std::pair<Int, Int>> out;
  std::set<Int> used;
  for (std::size_t n = 0; n < rows; ++n) {
    Int a = 0;
    while (used.count(a)) ++a;
    const Int b = a + static_cast<Int>(n / static_cast<std::size_t>(p)) * m;
    used.insert(a);
    used.insert(b);
    out.emplace_back(a, b);
  }
  return out;
}

inline bool in_table(const std::vector<std::pair<Int, Int>>& rows, Int a, Int b) {
  if (a > b) std::swap(a, b);
  return std::find(rows.begin(), rows.end(), std::make_pair(a, b)) != rows.end();
}

inline Int xi(const std::vector<std::pair<Int, Int>>& rows, Int a, Int b) {
  if (a > b) std::swap(a, b);
  Int count = 0;
  for (const auto& [i, j] : rows) count += (j - i == b - a && i < a) ? 1 : 0;
  return count;
}

inline Int isqrt(__int128 n) {
  __int128 r = 0;
  __int128 bit = static_cast<__int128>(1) << 62;
  while (bit > n) bit >>= 2;
  while (bit != 0) {
    if (n >= r + bit) {
      n -= r + bit;
      r = (r >> 1) + bit;
    } else {
      r >>= 1;
    }
    bit >>= 2;
  }
  return static_cast<Int>(r);
}

// floor(n * phi) = floor((n + sqrt(5 n^2)) / 2)
inline Int floor_n_phi(Int n) { return (n + isqrt(static_cast<__int128>(5) * n * n)) / 2; }

// The game modelled from the narrative rules: the state remembers the last
// move itself and how many imitations each player has chained.
struct Game {
  int p;
  int m;

  struct State {
    Int x = 0;
    Int y = 0;
    int last_pile = -1;  // -1 before the first move
    Int last_amount = 0;
    bool last_from_shorter = false;
    int chain_mover = 0;  // consecutive imitations already made by the mover
    int chain_other = 0;

    auto key() const {
      return std::make_tuple(x, y, last_pile, last_amount, last_from_shorter, chain_mover, chain_other);
    }
    bool operator<(const State& o) const { return key() < o.key(); }
  };

  static Int height(const State& s, int pile) { return pile == 0 ? s.x : s.y; }

  bool imitates(const State& s, int pile, Int amount) const {
    return s.last_pile >= 0 && s.last_from_shorter && pile != s.last_pile && amount >= s.last_amount &&
           amount <= s.last_amount + m - 1;
  }

  // nullopt when the rules forbid the move.
  std::optional<State> play(const State& s, int pile, Int amount) const {
    if (amount < 1 || amount > height(s, pile)) return std::nullopt;
    const bool imitation = imitates(s, pile, amount);
    if (imitation && s.chain_mover + 1 > p - 1) return std::nullopt;
    State next;
    next.x = s.x - (pile == 0 ? amount : 0);
    next.y = s.y - (pile == 1 ? amount : 0);
    next.last_pile = pile;
    next.last_amount = amount;
    next.last_from_shorter = height(s, pile) <= height(s, 1 - pile);
    next.chain_mover = s.chain_other;
    next.chain_other = imitation ? s.chain_mover + 1 : 0;
    return next;
  }

  std::vector<std::pair<int, Int>> moves(const State& s) const {
    std::vector<std::pair<int, Int>> out;
    for (int pile = 0; pile < 2; ++pile) {
      for (Int amount = 1; amount <= height(s, pile); ++amount) {
        if (play(s, pile, amount)) out.emplace_back(pile, amount);
      }
    }
    return out;
  }

  // true when the player to move loses.
  bool is_p(const State& s) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    bool p_position = true;
    for (const auto& [pile, amount] : moves(s)) {
      if (is_p(*play(s, pile, amount))) {
        p_position = false;
        break;
      }
    }
    memo.emplace(s, p_position);
    return p_position;
  }

  std::map<State, bool> memo;
};

}  // namespace ref

#endif  // IMNIM_TESTS_REFERENCE_HPP
