#pragma once

#include <cstdint>
#include <vector>

#include "subfrac/grid.hpp"
#include "subfrac/operator.hpp"
#include "subfrac/sphere.hpp"

namespace subfrac {

struct ElementaryReport {
  double min_slack = 0.0;  // normalized by max(1, |a|^p)
  std::size_t violations = 0;
  std::size_t samples = 0;
};

// |a-t|^p >= (1-t)^{p-1}(|a|^p - t) over t in [0,1], real and complex a,
// p in (1,10]; violation threshold is on the normalized slack.
ElementaryReport elementary_inequality_check(std::size_t samples, std::uint64_t seed,
                                             double threshold = -1e-12);

struct PiconeReport {
  double min_remainder = 0.0;  // min over grid pairs of R(x,y)
  double lhs = 0.0;            // [u]^p restricted to Omega x Omega
  double rhs = 0.0;            // weak_form(omega, |u|^p / omega^{p-1})
};

// Pointwise Picone remainder scan plus the integrated inequality
// [u]^p_{Omega x Omega} >= <(-Delta_{p,q})^s omega, |u|^p/omega^{p-1}>.
PiconeReport picone_check(const GroupDescriptor& g, const QuasiNormSpec& spec,
                          const FracParams& params, const SampledFunction& omega,
                          const SampledFunction& u, const std::vector<std::uint8_t>& mask,
                          const QuadratureConfig& cfg);

struct Lem1Report {
  double lhs = 0.0;          // int_{K^c} k(x,y) dy
  double floor_value = 0.0;  // C_exp |K|^{-sp/Q}
  double margin_rel = 0.0;   // (lhs - floor)/floor
  double K_measure = 0.0;
  bool x_outside_K = false;  // integral diverges, inequality trivially true
};

// Complement-integral bound with the explicit constant
// C_exp = sigma(omega_Q)/(sp) * unit_ball_volume^{sp/Q}.
Lem1Report complement_integral_check(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                     const FracParams& params, const GridGeom& geom,
                                     const std::vector<std::uint8_t>& K, const Point& x,
                                     const SphereQuadrature& sq, const QuadratureConfig& cfg);

struct HardyReport {
  double lhs = 0.0;  // 2 mu(gamma) int |u|^p q^{-ps}
  double rhs = 0.0;  // [u]^p
  double margin_rel = 0.0;
};

// mu_gamma is the Hardy constant mu(gamma) from the 1-D integral; the
// inequality carries the factor 2. Grid cells within min h of the origin
// are excluded from the singular weight.
HardyReport hardy_check(const GroupDescriptor& g, const QuasiNormSpec& spec,
                        const FracParams& params, double mu_gamma, const SampledFunction& u,
                        const QuadratureConfig& cfg);

// [u]^p / ||u||_{L^{p*}}^p; requires Q > sp.
double sobolev_ratio(const GroupDescriptor& g, const QuasiNormSpec& spec,
                     const FracParams& params, const SampledFunction& u,
                     const QuadratureConfig& cfg);

}  // namespace subfrac
