#pragma once

#include <vector>

#include "subfrac/group.hpp"
#include "subfrac/operator.hpp"
#include "subfrac/sphere.hpp"

namespace subfrac {

// L(rho; x') = int_{q(y')=1} dsigma(y') / q^{Q+ps}((delta_rho y')^{-1} o x')
double L_at(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
            const SphereQuadrature& sq, double rho, const Point& base);

struct MuConfig {
  int base_points = 8;
  int panels_near = 28;
  int panels_mid = 12;
  int panels_far = 12;
  int gl_points = 8;
  double rho_mid = 2.0;
  double rho_far = 64.0;
  double rho_max = 65536.0;
};

// Fixed rho-quadrature for mu(gamma) with the L values precomputed once;
// L does not depend on gamma, so one table serves a whole gamma grid.
// Near rho = 1 the sphere lattice stops resolving the kernel peak; below
// the resolved radius L follows its t^{-(1+ps)} asymptote anchored at the
// last resolved node.
struct MuQuadrature {
  GroupDescriptor group;
  QuasiNormSpec norm;
  FracParams params;
  std::vector<double> rho, w;
  std::vector<double> Lbar;                 // sigma-weighted mean over base points
  std::vector<std::vector<double>> Lbase;   // per base point
  std::vector<Point> bases;
  std::vector<double> base_weights;
  double sigma = 0.0;
  double rho_max = 0.0;
  double resolve_t = 0.0;  // model floor on rho-1 (0 = fully resolved)
  double spread = 0.0;     // max relative spread of L across base points

  double gamma_max() const;
  bool scalar_path() const { return spread < 0.01; }
  // mu(gamma) = int_1^inf (rho^gamma - 1)^{p-1}
  //             (rho^{Q-1-gamma(p-1)} - rho^{ps-1}) L(rho) drho
  double mu(double gamma) const;
  double mu_base(double gamma, std::size_t b) const;
};

MuQuadrature build_mu_quadrature(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                 const FracParams& params, const SphereQuadrature& sq,
                                 const MuConfig& cfg = {});

struct MuRow {
  double gamma = 0.0;
  double mu = 0.0;
  double mu_min = 0.0, mu_max = 0.0;  // across base points
  double spread = 0.0;
  bool scalar_path = true;
};

MuRow hardy_mu(const MuQuadrature& mq, double gamma);
std::vector<MuRow> mu_table(const MuQuadrature& mq, const std::vector<double>& gammas);

// Full-line route: mu = int_0^inf |1-rho^{-gamma}|^{p-2}(1-rho^{-gamma})
// L(rho) rho^{Q-1} drho, with the matched exclusion (1/(1+eps), 1+eps)
// around the cancellation point. Cross-check for MuQuadrature::mu.
double mu_full_line(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
                    const SphereQuadrature& sq, double gamma, double eps = 1e-5,
                    double tol = 1e-10);

struct ReflectionReport {
  double zeta = 0.0;
  double lhs = 0.0;  // L(1/zeta)
  double rhs = 0.0;  // zeta^{Q+ps} L(zeta)
  double rel_err = 0.0;
};

ReflectionReport reflection_check_base(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                       const FracParams& params, const SphereQuadrature& sq,
                                       double zeta, const Point& base);

// sigma-averaged two-point form; the discrete identity is exact for any
// node set, which pins the dilation/inversion plumbing
ReflectionReport reflection_check_averaged(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                           const FracParams& params, const SphereQuadrature& sq,
                                           double zeta);

}  // namespace subfrac
