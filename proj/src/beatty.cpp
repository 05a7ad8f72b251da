// beatty.cpp

#include "imnim/beatty.hpp"

#include <algorithm>
#include <cmath>

#include "imnim/exact.hpp"
#include "imnim/wythoff.hpp"

namespace imnim {

namespace {

using exact::Wide;

void require_p(int p) {
  if (p < 1) throw InvalidParams("p must be positive");
}

Wide disc(int p) { return Wide(4) * p * p + 1; }

}  // namespace

BeattyPair beatty_pair(int p) {
  require_p(p);
  const double root = std::sqrt(4.0 * p * p + 1.0);
  const double r = ((2.0 * p - 1.0) + root) / (2.0 * p);
  return {r, r + 1.0 / p};
}

Count floor_r(int p, Count k) {
  return static_cast<Count>(exact::floor_quadratic(Wide(k) * (2 * p - 1), Wide(k) * k * disc(p), 2 * p));
}

Count floor_s(int p, Count k) {
  return static_cast<Count>(exact::floor_quadratic(Wide(k) * (2 * p + 1), Wide(k) * k * disc(p), 2 * p));
}

Count floor_big_l(int p, Count n) {
  return static_cast<Count>(exact::floor_quadratic(Wide(n), Wide(n) * n * disc(p), 2 * p));
}

Count floor_small_l(int p, Count n) {
  return static_cast<Count>(exact::floor_quadratic(-Wide(n), Wide(n) * n * disc(p), 2 * p));
}

std::vector<Count> pi_involution(int p, Count n) {
  require_p(p);
  if (n < 1) throw InvalidParams("pi_involution needs n >= 1");
  const WythoffTable table = WythoffTable::covering(GameParams(p, 1), n);
  std::vector<Count> pi(static_cast<std::size_t>(n) + 1, 0);
  for (const WythoffRow& row : table.rows()) {
    if (row.a + 1 <= n) pi[static_cast<std::size_t>(row.a + 1)] = row.b + 1;
    if (row.b + 1 <= n) pi[static_cast<std::size_t>(row.b + 1)] = row.a + 1;
  }
  for (Count v = 1; v <= n; ++v) {
    if (pi[static_cast<std::size_t>(v)] == 0) {
      throw CoverageError("pi_involution: value " + std::to_string(v) + " not covered");
    }
  }
  return pi;
}

TauSequences tau_sequences(int p, Count k_max) {
  require_p(p);
  TauSequences out;
  out.a_star.reserve(static_cast<std::size_t>(k_max));
  out.b_star.reserve(static_cast<std::size_t>(k_max));
  for (Count k = 1; k <= k_max; ++k) {
    out.a_star.push_back(floor_r(p, k));
    out.b_star.push_back(floor_s(p, k));
  }
  return out;
}

AppendixSequences appendix_sequences(int p, Count k_max) {
  require_p(p);
  if (k_max < 1) throw InvalidParams("K must be at least 1");
  AppendixSequences seq;
  seq.p = p;
  seq.k_max = k_max;

  // a_pi_K is about K * r_p < 2K; grow the window until K points are found.
  for (Count span = 2 * k_max + 2 * p + 8;; span *= 2) {
    const std::vector<Count> pi = pi_involution(p, span + p);
    seq.a_pi.clear();
    seq.b_pi.clear();
    for (Count n = 1; n <= span && static_cast<Count>(seq.a_pi.size()) < k_max; ++n) {
      const Count pibar = pi[static_cast<std::size_t>(n + p)] - p;
      if (pibar > n) {
        seq.a_pi.push_back(n);
        seq.b_pi.push_back(pibar);
      }
    }
    if (static_cast<Count>(seq.a_pi.size()) == k_max) break;
  }

  TauSequences tau = tau_sequences(p, k_max);
  seq.a_star = std::move(tau.a_star);
  seq.b_star = std::move(tau.b_star);
  seq.eps.reserve(static_cast<std::size_t>(k_max));
  for (std::size_t k = 0; k < seq.a_pi.size(); ++k) {
    seq.eps.push_back((seq.b_pi[k] - seq.a_pi[k]) - (seq.b_star[k] - seq.a_star[k]));
  }
  return seq;
}

bool AppendixReport::epsilon_within_conjecture() const {
  return std::all_of(epsilon_set.begin(), epsilon_set.end(), [](Count e) { return e == 0 || e == 1; });
}

AppendixReport verify_appendix(int p, Count k_max) {
  const AppendixSequences seq = appendix_sequences(p, k_max);
  AppendixReport report;
  report.p = p;
  report.k_max = k_max;
  auto fail = [&report](bool& flag, std::string what) {
    if (flag) report.failures.push_back(std::move(what));
    flag = false;
  };

  // Counting: b*_k - a*_k >= k/p - 1, so k <= p(K+1)+1 captures every
  // difference up to K.
  {
    const Count k_ext = static_cast<Count>(p) * (k_max + 1) + 1;
    std::vector<Count> hist(static_cast<std::size_t>(k_max) + 1, 0);
    for (Count k = 1; k <= k_ext; ++k) {
      const Count d = floor_s(p, k) - floor_r(p, k);
      if (d >= 1 && d <= k_max) ++hist[static_cast<std::size_t>(d)];
    }
    Count running = 0;
    report.counting_min = p;
    report.counting_max = -1;
    for (Count n = 1; n <= k_max; ++n) {
      running += hist[static_cast<std::size_t>(n)];
      const Count excess = running - static_cast<Count>(p) * n;
      report.counting_min = std::min(report.counting_min, excess);
      report.counting_max = std::max(report.counting_max, excess);
      if (excess < 0 || excess > p - 1) {
        fail(report.counting_ok, "multiset count excess " + std::to_string(excess) + " at n=" + std::to_string(n));
      }
    }
  }

  for (std::size_t i = 0; i < seq.eps.size(); ++i) {
    const Count k = static_cast<Count>(i) + 1;
    const Count e = seq.eps[i];
    if ((e != 0 && e != 1) || (e == 1 && k % p == 0)) {
      fail(report.eps_ok, "eps_" + std::to_string(k) + " = " + std::to_string(e));
    }
  }

  for (std::size_t i = 0; i + 1 < seq.a_star.size(); ++i) {
    const Count gap = seq.a_star[i + 1] - seq.a_star[i];
    const bool repeat_one = i > 0 && gap == 1 && seq.a_star[i] - seq.a_star[i - 1] == 1;
    if (gap < 1 || gap > 2 || repeat_one) {
      fail(report.a_star_gaps_ok, "a* gap " + std::to_string(gap) + " at k=" + std::to_string(i + 1));
    }
    const Count bgap = seq.b_star[i + 1] - seq.b_star[i];
    if (bgap < 2 || bgap > 3) {
      fail(report.b_star_gaps_ok, "b* gap " + std::to_string(bgap) + " at k=" + std::to_string(i + 1));
    }
  }

  for (std::size_t i = 0; i < seq.a_pi.size(); ++i) {
    report.max_deviation = std::max(report.max_deviation, std::abs(seq.a_pi[i] - seq.a_star[i]));
  }
  if (report.max_deviation > p - 1) {
    fail(report.main_theorem_ok, "max |a_pi - a*| = " + std::to_string(report.max_deviation));
  }

  const std::vector<Count> pi = pi_involution(p, k_max);
  for (Count n = 1; n <= k_max; ++n) {
    const Count value = pi[static_cast<std::size_t>(n)];
    const Count upper = floor_big_l(p, n);
    const Count lower = floor_small_l(p, n);
    auto admissible = [value](Count base) { return value - base >= -1 && value - base <= 2; };
    if (!admissible(upper) && !admissible(lower)) {
      fail(report.corollary_ok, "pi(" + std::to_string(n) + ") = " + std::to_string(value));
    }
    report.epsilon_set.insert(value >= n ? value - upper : value - lower);
  }
  return report;
}

nlohmann::json to_json(const AppendixReport& report) {
  return {{"p", report.p},
          {"K", report.k_max},
          {"lemma1",
           {{"counting", {{"ok", report.counting_ok}, {"minExcess", report.counting_min}, {"maxExcess", report.counting_max}}},
            {"epsilonK", {{"ok", report.eps_ok}}},
            {"aStarGaps", {{"ok", report.a_star_gaps_ok}}},
            {"bStarGaps", {{"ok", report.b_star_gaps_ok}}}}},
          {"mainTheorem",
           {{"maxDeviation", report.max_deviation}, {"bound", report.p - 1}, {"ok", report.main_theorem_ok}}},
          {"corollary12",
           {{"epsilonSet", report.epsilon_set},
            {"ok", report.corollary_ok},
            {"withinConjecture", report.epsilon_within_conjecture()}}},
          {"failures", report.failures},
          {"ok", report.ok()}};
}

}  // namespace imnim
