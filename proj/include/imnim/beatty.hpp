// beatty.hpp
//
// Comparison between the (p,1)-Wythoff pairing and the Beatty pair
//
//   r_p = ((2p-1) + sqrt(4p^2+1)) / (2p),   s_p = r_p + 1/p,
//
// with numeric verification of the lemma/theorem/corollary chain relating
// them. Sequence names: a_pi/b_pi are the upper/lower points of the shifted
// pairing pibar, a_star/b_star the floor sequences of r_p and s_p.

#ifndef IMNIM_BEATTY_HPP
#define IMNIM_BEATTY_HPP

#include <set>
#include <string>
#include <vector>

#include "imnim/core.hpp"
#include "json.hpp"

namespace imnim {

struct BeattyPair {
  double r = 0.0;
  double s = 0.0;
};

BeattyPair beatty_pair(int p);

// Exact floors of k*r_p, k*s_p, n*L_p and n*l_p, where
// L_p = (1 + sqrt(4p^2+1)) / (2p) and l_p = 1/L_p.
Count floor_r(int p, Count k);
Count floor_s(int p, Count k);
Count floor_big_l(int p, Count n);
Count floor_small_l(int p, Count n);

// pi_{1,p} on [1, n], from the (p,1)-Wythoff pairs (a_i, b_i) via
// pi(a_i + 1) = b_i + 1 and pi(b_i + 1) = a_i + 1. Entry 0 is unused.
std::vector<Count> pi_involution(int p, Count n);

// 1-based sequences stored 0-based: a_star[k-1] = floor(k r_p).
struct TauSequences {
  std::vector<Count> a_star;
  std::vector<Count> b_star;
};

TauSequences tau_sequences(int p, Count k_max);

struct AppendixSequences {
  int p = 1;
  Count k_max = 0;
  std::vector<Count> a_pi;  // A = {n : pibar(n) > n}, increasing
  std::vector<Count> b_pi;  // pibar(a_pi[k])
  std::vector<Count> a_star;
  std::vector<Count> b_star;
  std::vector<Count> eps;  // (b_pi - a_pi) - (b_star - a_star)
};

AppendixSequences appendix_sequences(int p, Count k_max);

struct AppendixReport {
  int p = 1;
  Count k_max = 0;

  // #{k : 1 <= b*_k - a*_k <= n} - p*n must lie in [0, p-1] for n <= K.
  bool counting_ok = true;
  Count counting_min = 0;
  Count counting_max = 0;
  // eps_k in {0,1}, and eps_k = 1 only when p does not divide k.
  bool eps_ok = true;
  // a*_{k+1} - a*_k in {1,2}, never 1 twice in a row.
  bool a_star_gaps_ok = true;
  // b*_{k+1} - b*_k in {2,3}.
  bool b_star_gaps_ok = true;

  Count max_deviation = 0;  // max_k |a_pi_k - a*_k|
  bool main_theorem_ok = true;

  // pi_{1,p}(n) - floor(n L) (or floor(n l) on the lower side) over n <= K.
  std::set<Count> epsilon_set;
  bool corollary_ok = true;

  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  // The sharper {0,1} form suggested by computer experiments.
  bool epsilon_within_conjecture() const;
};

AppendixReport verify_appendix(int p, Count k_max);

nlohmann::json to_json(const AppendixReport& report);

}  // namespace imnim

#endif  // IMNIM_BEATTY_HPP
