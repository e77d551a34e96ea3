#pragma once

#include <cstdint>
#include <vector>

#include "subfrac/grid.hpp"
#include "subfrac/operator.hpp"

namespace subfrac {

// Dyadic level sets a_k = |{|u| > 2^k}|. Counts are kept as integers so the
// telescoping identities sum_{l>=k} d_l = a_k and d_k = a_k - sum_{l>=k+1} d_l
// hold exactly; measures are counts times the cell volume. Below k_lo the
// sequence is constant (= |supp u|), above k_hi it vanishes.
struct LevelSetProfile {
  int k_lo = 0;
  std::vector<std::int64_t> count;  // a_k counts for k = k_lo .. k_lo+len-1
  double cell_volume = 0.0;

  int k_hi() const { return k_lo + static_cast<int>(count.size()) - 1; }
  std::int64_t count_at(int k) const;
  double a(int k) const { return static_cast<double>(count_at(k)) * cell_volume; }
  std::int64_t d_count(int k) const { return count_at(k) - count_at(k + 1); }
  double d(int k) const { return static_cast<double>(d_count(k)) * cell_volume; }
};

LevelSetProfile level_set_profile(const SampledFunction& u);

// S* = sum_{k in Z, a_k != 0} 2^{kp} a_k^{-sp/Q} a_{k+1}, including the
// analytic geometric tail over the constant plateau k < k_lo.
double levelset_lower_bound_sum(const LevelSetProfile& ls, const FracParams& params, double Q);

struct SequenceLemmaReport {
  double lhs = 0.0;   // sum a_k^{(Q-sp)/Q} T^k
  double rhs = 0.0;   // sum_{a_k != 0} a_{k+1} a_k^{-sp/Q} T^k
  double ratio = 0.0; // lhs / rhs, 0 when both vanish
  bool spike = false; // degenerate: rhs vanished on the paper's index set
};

// `a` holds the window values for k = 0..len-1; to the left the sequence
// either continues as the constant a_0 (plateau_left, the shape forced by
// monotonicity) or is taken literally zero, which the lemma's index-set
// convention cannot handle and which is flagged as a spike.
SequenceLemmaReport sequence_lemma_check(const std::vector<double>& a, double T,
                                         const FracParams& params, double Q,
                                         bool plateau_left = true);

}  // namespace subfrac
