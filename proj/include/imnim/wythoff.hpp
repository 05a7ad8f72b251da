// wythoff.hpp
//
// P-positions of (p,m)-Wythoff Nim via the mex-greedy rule
//
//   a_n = mex{a_i, b_i : i < n},   b_n = a_n + floor(n/p) * m,
//
// plus the xi statistic, the block closed form for p | m and the
// (n-p+1)alpha <= a_n <= n alpha style bound sweep.

#ifndef IMNIM_WYTHOFF_HPP
#define IMNIM_WYTHOFF_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "imnim/core.hpp"
#include "json.hpp"

namespace imnim {

struct WythoffRow {
  Count a = 0;
  Count b = 0;

  friend bool operator==(const WythoffRow&, const WythoffRow&) = default;
};

// Half-open range of row indices [first, last).
struct RowRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first; }
  bool empty() const { return first == last; }
};

inline constexpr std::size_t kMaxTableRows = 20'000'000;

class WythoffTable {
 public:
  // First `count` rows. Throws ResourceLimit past kMaxTableRows.
  static WythoffTable generate(const GameParams& params, std::size_t count);

  // Smallest prefix whose last a-value exceeds `height`, so every canonical
  // position with low coordinate <= height can be classified.
  static WythoffTable covering(const GameParams& params, Count height);

  const GameParams& params() const { return params_; }
  std::size_t size() const { return rows_.size(); }
  const WythoffRow& row(std::size_t n) const { return rows_[n]; }
  std::span<const WythoffRow> rows() const { return rows_; }

  Count delta(std::size_t n) const;

  // Largest a-value in the table; membership and xi are exact for canonical
  // positions whose low coordinate is at most this.
  Count max_a() const { return rows_.back().a; }
  bool covers(Count low) const { return low <= max_a(); }

  // Row index of a canonical (a <= b) position, or nullopt if it is not a
  // P-position. Throws CoverageError when a > max_a().
  std::optional<std::size_t> row_of(const Position& canonical) const;
  bool contains(const Position& position) const { return row_of(position.canonical()).has_value(); }

  // Row whose a-value is `a`, if any (exact for a <= max_a()).
  std::optional<std::size_t> row_with_a(Count a) const;
  // Row whose b-value is `b`, if any (exact for b <= max_a()).
  std::optional<std::size_t> row_with_b(Count b) const;

  // Rows n with b_n - a_n = d, in increasing n. Difference classes are
  // contiguous: d = k*m is held by rows [k*p, k*p + p). The range is clipped
  // to the generated prefix.
  RowRange rows_with_difference(Count d) const;

 private:
  WythoffTable(const GameParams& params, std::vector<WythoffRow> rows);

  GameParams params_;
  std::vector<WythoffRow> rows_;
  std::vector<std::int32_t> row_of_a_;  // value -> row index, -1 if not an a-value
  std::vector<std::int32_t> row_of_b_;  // same for b-values <= max_a()
};

// #{(i,j) in P_W : j - i = b - a, i < a} for the canonicalized position.
// Always in [0, p]. Throws CoverageError if the table is too short.
Count xi(const Position& position, const WythoffTable& table);

// Row-for-row equivalent of generate() when p | m, built from
// (1, m/p)-Wythoff Beatty pairs. Throws InvalidParams otherwise.
std::vector<WythoffRow> closed_form_block(const GameParams& params, std::size_t count);

// (floor(n alpha), floor(n beta)) for (1,k)-Wythoff Nim, computed exactly.
WythoffRow beatty_wythoff_pair(Count k, Count n);

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

// alpha = (2p - m + sqrt(m^2 + 4p^2)) / (2p), beta = alpha + m/p.
AlphaBeta alpha_beta(const GameParams& params);

struct BoundViolation {
  std::size_t n = 0;
  char coordinate = 'a';  // 'a' or 'b'
  bool lower = true;      // lower bound floor((n-p+1)x) or upper bound n x
};

struct BoundReport {
  GameParams params;
  std::size_t rows = 0;
  std::vector<BoundViolation> violations;
  // Observed max |a_n - n alpha| and |b_n - n beta|; informational only.
  double max_deviation_a = 0.0;
  double max_deviation_b = 0.0;

  bool ok() const { return violations.empty(); }
};

// Checks floor((n-p+1)alpha) <= a_n <= n alpha and the beta analogue on every
// row using exact integer comparisons. Without the floor the lower side fails
// for every n >= 1 when p = 1, where a_n = floor(n alpha).
BoundReport check_bounds(const GameParams& params, const WythoffTable& table);

void write_csv(std::ostream& out, const WythoffTable& table);
nlohmann::json to_json(const WythoffTable& table);
nlohmann::json to_json(const BoundReport& report);

}  // namespace imnim

#endif  // IMNIM_WYTHOFF_HPP
