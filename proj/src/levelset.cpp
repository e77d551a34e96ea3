#include "subfrac/levelset.hpp"

#include <cmath>
#include <stdexcept>

namespace subfrac {

std::int64_t LevelSetProfile::count_at(int k) const {
  if (count.empty()) return 0;
  if (k < k_lo) return count.front();
  if (k > k_hi()) return 0;
  return count[static_cast<std::size_t>(k - k_lo)];
}

LevelSetProfile level_set_profile(const SampledFunction& u) {
  u.validate();
  LevelSetProfile ls;
  ls.cell_volume = u.geom.cell_volume();

  double max_abs = 0.0, min_pos = 0.0;
  for (double v : u.values) {
    const double av = std::abs(v);
    if (av == 0.0) continue;
    max_abs = std::max(max_abs, av);
    min_pos = (min_pos == 0.0) ? av : std::min(min_pos, av);
  }
  if (max_abs == 0.0) return ls;  // empty profile: a_k = 0 for all k

  // a_k is constant for 2^k < min|u|_{+} and zero once 2^k >= max|u|
  ls.k_lo = static_cast<int>(std::floor(std::log2(min_pos))) - 1;
  const int k_hi = static_cast<int>(std::ceil(std::log2(max_abs))) + 1;
  ls.count.assign(static_cast<std::size_t>(k_hi - ls.k_lo + 1), 0);
  for (double v : u.values) {
    const double av = std::abs(v);
    if (av == 0.0) continue;
    for (int k = ls.k_lo; k <= k_hi; ++k) {
      if (av > std::ldexp(1.0, k)) ++ls.count[static_cast<std::size_t>(k - ls.k_lo)];
      else break;
    }
  }
  return ls;
}

double levelset_lower_bound_sum(const LevelSetProfile& ls, const FracParams& params, double Q) {
  params.validate();
  if (!(Q > params.sp())) throw std::invalid_argument("levelset_lower_bound_sum: needs Q > sp");
  if (ls.count.empty()) return 0.0;
  const double e = -params.sp() / Q;
  double sum = 0.0;
  for (int k = ls.k_lo; k <= ls.k_hi(); ++k) {
    const double ak = ls.a(k);
    if (ak == 0.0) continue;
    sum += std::pow(2.0, k * params.p) * std::pow(ak, e) * ls.a(k + 1);
  }
  // plateau tail: a_k = a_{k_lo} for every k < k_lo
  const double a0 = ls.a(ls.k_lo);
  if (a0 > 0.0) {
    const double tp = std::pow(2.0, params.p);
    sum += std::pow(a0, 1.0 + e) * std::pow(2.0, ls.k_lo * params.p) / (tp - 1.0);
  }
  return sum;
}

SequenceLemmaReport sequence_lemma_check(const std::vector<double>& a, double T,
                                         const FracParams& params, double Q, bool plateau_left) {
  params.validate();
  if (!(T > 1.0)) throw std::invalid_argument("sequence_lemma_check: T must exceed 1");
  if (!(Q > params.sp())) throw std::invalid_argument("sequence_lemma_check: needs Q > sp");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < 0.0) throw std::invalid_argument("sequence_lemma_check: negative entry");
    if (k > 0 && a[k] > a[k - 1])
      throw std::invalid_argument("sequence_lemma_check: sequence must be non-increasing");
  }

  SequenceLemmaReport rep;
  const double el = (Q - params.sp()) / Q;
  const double er = -params.sp() / Q;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0.0) continue;
    const double tk = std::pow(T, static_cast<double>(k));
    rep.lhs += std::pow(a[k], el) * tk;
    const double next = (k + 1 < a.size()) ? a[k + 1] : 0.0;
    rep.rhs += next * std::pow(a[k], er) * tk;
  }
  if (plateau_left && !a.empty() && a[0] > 0.0) {
    rep.lhs += std::pow(a[0], el) / (T - 1.0);
    rep.rhs += std::pow(a[0], 1.0 + er) / (T - 1.0);
  }
  if (rep.rhs == 0.0) {
    rep.spike = rep.lhs > 0.0;
    rep.ratio = 0.0;
  } else {
    rep.ratio = rep.lhs / rep.rhs;
  }
  return rep;
}

}  // namespace subfrac
