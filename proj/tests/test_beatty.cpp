#include <cmath>
#include <set>

#include "doctest.h"
#include "imnim/beatty.hpp"
#include "imnim/wythoff.hpp"
#include "reference.hpp"

using namespace imnim;

TEST_SUITE("beatty") {
  TEST_CASE("the pair is complementary") {
    for (int p = 1; p <= 10; ++p) {
      const BeattyPair pair = beatty_pair(p);
      CHECK(1.0 / pair.r + 1.0 / pair.s == doctest::Approx(1.0));
      CHECK(pair.r < pair.s);
      CHECK(pair.r > 1.5);
      CHECK(pair.r < 2.0);
    }
    CHECK_THROWS_AS(beatty_pair(0), InvalidParams);
  }

  TEST_CASE("pi involution") {
    const std::vector<Count> pi1 = pi_involution(1, 8);
    CHECK(pi1[1] == 1);
    CHECK(pi1[2] == 3);
    CHECK(pi1[3] == 2);
    CHECK(pi1[4] == 6);
    for (int p = 1; p <= 6; ++p) {
      const std::vector<Count> pi = pi_involution(p, 5000);
      for (Count n = 1; n <= p; ++n) CHECK(pi[static_cast<std::size_t>(n)] == n);
      std::size_t bad = 0;
      for (Count n = 1; n <= 5000; ++n) {
        const Count v = pi[static_cast<std::size_t>(n)];
        if (v <= 5000 && pi[static_cast<std::size_t>(v)] != n) ++bad;
      }
      CHECK(bad == 0);
    }
  }

  TEST_CASE("floor sequences") {
    const TauSequences tau = tau_sequences(1, 3);
    CHECK(tau.a_star == std::vector<Count>{1, 3, 4});
    CHECK(tau.b_star == std::vector<Count>{2, 5, 7});
    for (int p = 1; p <= 10; ++p) CHECK(floor_r(p, 1) == 1);

    // floor(k r_p) = floor(k (2p-1 + sqrt(4p^2+1)) / 2p), checked via the integer square root
    for (int p = 1; p <= 10; ++p) {
      std::size_t bad = 0;
      for (Count k = 1; k <= 20000; ++k) {
        const Count root = ref::isqrt(static_cast<__int128>(k) * k * (4 * p * p + 1));
        // root <= k sqrt(D) < root + 1 and floor((u + x) / q) only depends on floor(x) for integer u, q
        bad += floor_r(p, k) != (k * (2 * p - 1) + root) / (2 * p);
        bad += floor_s(p, k) != (k * (2 * p + 1) + root) / (2 * p);
        bad += floor_big_l(p, k) != (k + root) / (2 * p);
      }
      CHECK(bad == 0);
    }
  }

  TEST_CASE("floor sequences partition an initial segment") {
    for (int p = 1; p <= 10; ++p) {
      const Count k_max = 100000;
      const TauSequences tau = tau_sequences(p, k_max);
      std::vector<int> hits(static_cast<std::size_t>(tau.a_star.back()) + 1, 0);
      for (Count v : tau.a_star) ++hits[static_cast<std::size_t>(v)];
      for (Count v : tau.b_star) {
        if (v < static_cast<Count>(hits.size())) ++hits[static_cast<std::size_t>(v)];
      }
      std::size_t bad = 0;
      for (std::size_t v = 1; v < hits.size(); ++v) bad += hits[v] != 1;
      CHECK(bad == 0);
    }
  }

  TEST_CASE("shifted pairing matches the (p,1) table") {
    for (int p = 1; p <= 5; ++p) {
      const AppendixSequences seq = appendix_sequences(p, 3000);
      const std::vector<Count> pi = pi_involution(p, 20000);
      const WythoffTable table = WythoffTable::generate(GameParams(p, 1), 4000);
      std::set<std::pair<Count, Count>> rows;
      for (const WythoffRow& row : table.rows()) rows.emplace(row.a, row.b);
      std::size_t bad = 0;
      for (std::size_t k = 0; k < seq.a_pi.size(); ++k) {
        const Count a = seq.a_pi[k];
        const Count b = seq.b_pi[k];
        bad += pi[static_cast<std::size_t>(a + p)] - p != b;
        bad += !rows.count({a + p - 1, b + p - 1});
        if (k > 0) bad += a <= seq.a_pi[k - 1];
      }
      CHECK(bad == 0);
    }
  }

  TEST_CASE("appendix checks") {
    const AppendixReport r1 = verify_appendix(1, 10000);
    CHECK(r1.ok());
    CHECK(r1.max_deviation == 0);

    const AppendixReport r3 = verify_appendix(3, 10000);
    CHECK(r3.ok());
    CHECK(r3.max_deviation <= 2);

    const AppendixReport r2 = verify_appendix(2, 10000);
    CHECK(r2.ok());
    CHECK(r2.epsilon_within_conjecture());
    const nlohmann::json j = to_json(r2);
    CHECK(j.at("corollary12").at("epsilonSet") == nlohmann::json::array({0, 1}));
    CHECK(j.at("mainTheorem").at("bound") == 1);
    CHECK(j.at("K") == 10000);
    CHECK_THROWS_AS(verify_appendix(1, 0), InvalidParams);
  }
}
