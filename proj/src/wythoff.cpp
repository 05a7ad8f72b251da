// wythoff.cpp

#include "imnim/wythoff.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "imnim/exact.hpp"

namespace imnim {

namespace {

// Grows the used-number sieve and emits rows until `done` says stop.
template <typename Done>
std::vector<WythoffRow> mex_rows(const GameParams& params, Done done) {
  std::vector<WythoffRow> rows;
  std::vector<bool> used;
  Count mex = 0;
  for (std::size_t n = 0;; ++n) {
    if (n >= kMaxTableRows) {
      throw ResourceLimit("Wythoff table would exceed " + std::to_string(kMaxTableRows) + " rows");
    }
    while (mex < static_cast<Count>(used.size()) && used[static_cast<std::size_t>(mex)]) ++mex;
    const Count a = mex;
    const Count b = a + static_cast<Count>(n / static_cast<std::size_t>(params.p)) * params.m;
    if (static_cast<Count>(used.size()) <= b) used.resize(static_cast<std::size_t>(b) * 2 + 16, false);
    used[static_cast<std::size_t>(a)] = true;
    used[static_cast<std::size_t>(b)] = true;
    rows.push_back({a, b});
    if (done(rows)) break;
  }
  return rows;
}

}  // namespace

WythoffTable::WythoffTable(const GameParams& params, std::vector<WythoffRow> rows)
    : params_(params), rows_(std::move(rows)) {
  const auto limit = static_cast<std::size_t>(rows_.back().a) + 1;
  row_of_a_.assign(limit, -1);
  row_of_b_.assign(limit, -1);
  for (std::size_t n = 0; n < rows_.size(); ++n) {
    row_of_a_[static_cast<std::size_t>(rows_[n].a)] = static_cast<std::int32_t>(n);
    if (static_cast<std::size_t>(rows_[n].b) < limit) {
      row_of_b_[static_cast<std::size_t>(rows_[n].b)] = static_cast<std::int32_t>(n);
    }
  }
}

WythoffTable WythoffTable::generate(const GameParams& params, std::size_t count) {
  if (count == 0) throw InvalidParams("row count must be at least 1");
  if (count > kMaxTableRows) {
    throw ResourceLimit("requested " + std::to_string(count) + " rows; cap is " +
                        std::to_string(kMaxTableRows));
  }
  auto rows = mex_rows(params, [count](const auto& r) { return r.size() >= count; });
  return WythoffTable(params, std::move(rows));
}

WythoffTable WythoffTable::covering(const GameParams& params, Count height) {
  if (height < 0) throw InvalidParams("height must be non-negative");
  auto rows = mex_rows(params, [height](const auto& r) { return r.back().a > height; });
  return WythoffTable(params, std::move(rows));
}

Count WythoffTable::delta(std::size_t n) const {
  return static_cast<Count>(n / static_cast<std::size_t>(params_.p)) * params_.m;
}

std::optional<std::size_t> WythoffTable::row_with_a(Count a) const {
  if (a < 0) return std::nullopt;
  if (!covers(a)) {
    throw CoverageError("Wythoff table covers a <= " + std::to_string(max_a()) +
                        "; need " + std::to_string(a));
  }
  const auto n = row_of_a_[static_cast<std::size_t>(a)];
  if (n < 0) return std::nullopt;
  return static_cast<std::size_t>(n);
}

std::optional<std::size_t> WythoffTable::row_with_b(Count b) const {
  if (b < 0) return std::nullopt;
  if (!covers(b)) {
    throw CoverageError("Wythoff table covers values <= " + std::to_string(max_a()) +
                        "; need " + std::to_string(b));
  }
  const auto n = row_of_b_[static_cast<std::size_t>(b)];
  if (n < 0) return std::nullopt;
  return static_cast<std::size_t>(n);
}

std::optional<std::size_t> WythoffTable::row_of(const Position& canonical) const {
  if (canonical.pile0 > canonical.pile1) return row_of(canonical.canonical());
  auto n = row_with_a(canonical.pile0);
  if (n && rows_[*n].b == canonical.pile1) return n;
  return std::nullopt;
}

RowRange WythoffTable::rows_with_difference(Count d) const {
  if (d < 0 || d % params_.m != 0) return {};
  const auto k = static_cast<std::size_t>(d / params_.m);
  const auto p = static_cast<std::size_t>(params_.p);
  const std::size_t first = std::min(k * p, rows_.size());
  const std::size_t last = std::min(k * p + p, rows_.size());
  return {first, last};
}

Count xi(const Position& position, const WythoffTable& table) {
  const Position c = position.canonical();
  if (!table.covers(c.pile0)) {
    throw CoverageError("xi" + to_string(c) + " needs a Wythoff table with max a >= " +
                        std::to_string(c.pile0));
  }
  const RowRange range = table.rows_with_difference(c.pile1 - c.pile0);
  // a is strictly increasing, so the class is sorted by a.
  auto rows = table.rows().subspan(range.first, range.size());
  auto it = std::lower_bound(rows.begin(), rows.end(), c.pile0,
                             [](const WythoffRow& row, Count a) { return row.a < a; });
  return static_cast<Count>(it - rows.begin());
}

WythoffRow beatty_wythoff_pair(Count k, Count n) {
  using exact::Wide;
  const Wide nn = n;
  const Wide a = exact::floor_quadratic(nn * (2 - k), nn * nn * (Wide(k) * k + 4), 2);
  return {static_cast<Count>(a), static_cast<Count>(a + nn * k)};
}

std::vector<WythoffRow> closed_form_block(const GameParams& params, std::size_t count) {
  if (params.m % params.p != 0) {
    throw InvalidParams("closed form requires p | m (p=" + std::to_string(params.p) +
                        ", m=" + std::to_string(params.m) + ")");
  }
  const Count k = params.m / params.p;
  std::vector<WythoffRow> rows;
  rows.reserve(count);
  for (Count n = 0; rows.size() < count; ++n) {
    const WythoffRow base = beatty_wythoff_pair(k, n);
    for (int j = 0; j < params.p && rows.size() < count; ++j) {
      rows.push_back({params.p * base.a + j, params.p * base.b + j});
    }
  }
  return rows;
}

AlphaBeta alpha_beta(const GameParams& params) {
  const double p = params.p;
  const double m = params.m;
  const double alpha = (2 * p - m + std::sqrt(m * m + 4 * p * p)) / (2 * p);
  return {alpha, alpha + m / p};
}

BoundReport check_bounds(const GameParams& params, const WythoffTable& table) {
  using exact::Wide;
  BoundReport report;
  report.params = params;
  report.rows = table.size();

  const Wide p = params.p;
  const Wide m = params.m;
  const Wide disc = m * m + 4 * p * p;
  const AlphaBeta ab = alpha_beta(params);

  // x*(shift + sqrt(disc)) / (2p) compared with value: sign of
  // x*shift + x*sqrt(disc) - 2p*value.
  auto upper_ok = [&](Wide n, Wide shift, Wide value) {
    return exact::compare_sqrt(n * shift, n, disc, 2 * p * value) >= 0;
  };
  // Lower side in floor form, floor(q*x) <= value, i.e. q*x < value + 1.
  auto lower_ok = [&](Wide q, Wide shift, Wide value) {
    if (q <= 0) return true;
    return exact::compare_sqrt(q * shift, q, disc, 2 * p * (value + 1)) < 0;
  };

  for (std::size_t i = 0; i < table.size(); ++i) {
    const WythoffRow& row = table.row(i);
    const Wide n = static_cast<Wide>(i);
    const Wide q = n - p + 1;
    if (!lower_ok(q, 2 * p - m, row.a)) report.violations.push_back({i, 'a', true});
    if (!upper_ok(n, 2 * p - m, row.a)) report.violations.push_back({i, 'a', false});
    if (!lower_ok(q, 2 * p + m, row.b)) report.violations.push_back({i, 'b', true});
    if (!upper_ok(n, 2 * p + m, row.b)) report.violations.push_back({i, 'b', false});

    const double nd = static_cast<double>(i);
    report.max_deviation_a = std::max(report.max_deviation_a, std::abs(row.a - nd * ab.alpha));
    report.max_deviation_b = std::max(report.max_deviation_b, std::abs(row.b - nd * ab.beta));
  }
  return report;
}

void write_csv(std::ostream& out, const WythoffTable& table) {
  out << "n,a,b,delta\n";
  for (std::size_t n = 0; n < table.size(); ++n) {
    out << n << ',' << table.row(n).a << ',' << table.row(n).b << ',' << table.delta(n) << '\n';
  }
}

nlohmann::json to_json(const WythoffTable& table) {
  auto rows = nlohmann::json::array();
  for (std::size_t n = 0; n < table.size(); ++n) {
    rows.push_back({{"n", n}, {"a", table.row(n).a}, {"b", table.row(n).b}});
  }
  return rows;
}

nlohmann::json to_json(const BoundReport& report) {
  auto violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"n", v.n},
                          {"coordinate", std::string(1, v.coordinate)},
                          {"bound", v.lower ? "lower" : "upper"}});
  }
  return {{"params", {{"p", report.params.p}, {"m", report.params.m}}},
          {"rows", report.rows},
          {"violations", violations},
          {"maxDeviationA", report.max_deviation_a},
          {"maxDeviationB", report.max_deviation_b}};
}

}  // namespace imnim
