#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "subfrac/grid.hpp"
#include "subfrac/group.hpp"
#include "subfrac/operator.hpp"

namespace subfrac {

struct Domain {
  GroupDescriptor group;
  QuasiNormSpec norm;
  GridGeom geom;
  std::vector<std::uint8_t> mask;  // Omega
  double R = 0.0;                  // quasi-ball radius when applicable

  // quasi-ball B_q(0,R) on a grid with n_across cells per axis; the box is
  // the tight coordinate extent of the ball padded by `pad`
  static Domain quasi_ball(const GroupDescriptor& g, const QuasiNormSpec& spec, double R,
                           int n_across, double pad = 0.25);

  // delta_lambda applied to the whole discretization; grid nodes map
  // exactly, so the mask is unchanged
  Domain dilated(double lambda) const;

  double r_inner() const;  // max q over Omega nodes
  double volume() const;
  std::size_t interior_count() const;
};

// Discretized Dirichlet energy of the zero-extension:
//   E(u) = sum_{i != j} W_ij |u_i - u_j|^p + sum_i b_i |u_i|^p
// over interior nodes, with W_ij = k(x_i,x_j) h^{2N} (ordered pairs) and
// b_i = 2 h^N (sum over exterior grid + analytic tail) carrying the
// u = 0 condition on G \ Omega.
struct NonlocalForm {
  GroupDescriptor group;
  QuasiNormSpec norm;
  FracParams params;
  GridGeom geom;
  std::vector<std::size_t> interior;
  std::vector<double> pts;  // interior coordinates, AoS
  std::vector<double> b;
  std::vector<double> W;  // dense m*m when materialized, else empty
  double cell = 0.0;
  double R = 0.0;
  double r_inner = 0.0;
  double volume = 0.0;
  bool parallel = true;

  std::size_t size() const { return interior.size(); }
  bool dense() const { return !W.empty(); }
};

NonlocalForm assemble(const Domain& dom, const FracParams& params, const QuadratureConfig& cfg,
                      std::size_t dense_cap = 3000, int min_radius_cells = 4);

double form_energy(const NonlocalForm& f, const std::vector<double>& u);
// F_i = 2 sum_{j != i} W_ij phi_p(u_i - u_j) + b_i phi_p(u_i); the energy
// gradient is p F, and for p = 2 this is the operator matvec A u
void form_stationarity(const NonlocalForm& f, const std::vector<double>& u,
                       std::vector<double>& out);

// E(u) / (h^N sum w_i |u_i|^p); weight = nullptr means w == 1
double rayleigh_quotient(const NonlocalForm& f, const std::vector<double>& u,
                         const std::vector<double>* weight = nullptr);

struct SolverConfig {
  double tol = 1e-11;           // eigenvalue increment tolerance (p = 2 path)
  double residual_tol = 1e-8;   // weak-residual target (p = 2 path)
  int max_iters = 400;          // inverse-iteration steps
  int descent_max_iters = 8000;
  double stagnation_tol = 1e-9;
  int stagnation_window = 25;
  int seeds = 3;  // restarts for the general-p path
  std::uint64_t seed = 12345;
  const std::vector<double>* weight = nullptr;  // denominator weight omega
};

struct EigenResult {
  double lambda1 = 0.0;
  std::vector<double> eigvec;  // ||u||_{L^p(Omega)} = 1
  double residual = 0.0;
  int iters = 0;
  std::vector<double> history;  // Rayleigh quotient per iteration
  std::vector<double> residual_history;
  bool sign_constant = true;
  double seed_spread = 0.0;  // quotient spread across restarts
};

struct NonConvergenceError : std::runtime_error {
  std::vector<double> history;
  explicit NonConvergenceError(const std::string& what, std::vector<double> h)
      : std::runtime_error(what), history(std::move(h)) {}
};

// p = 2: inverse power iteration (CG solves, matrix-free);
// p != 2: normalized descent on the quotient with Armijo backtracking.
EigenResult minimize_rayleigh(const NonlocalForm& f, const SolverConfig& cfg = {});

// max_i |F_i - lambda h^N w_i phi_p(u_i)| / max_i |lambda h^N w_i phi_p(u_i)|
double weak_residual(const NonlocalForm& f, const EigenResult& r,
                     const std::vector<double>* weight = nullptr);

// P(theta, R) = lambda1 |Omega|^{1/theta} r_inner^{sp - Q/theta}; requires
// theta > Q/(sp). Radius-free for quasi-balls by exponent cancellation.
double lyapunov_product(double lambda1, double volume, double r_inner, double theta,
                        const FracParams& params, double Q);

struct WeightedLyapunov {
  double lambda1 = 0.0;     // first eigenvalue of the omega-weighted problem
  double norm_theta = 0.0;  // ||lambda1 * omega||_{L^theta(Omega)}
  double product = 0.0;     // norm_theta * r_inner^{sp - Q/theta}
};

// Non-constant weight path: solves the omega-weighted problem so that
// lambda1*omega admits a nontrivial weak solution, then evaluates the
// Lyapunov lower-bound product.
WeightedLyapunov lyapunov_weighted(const NonlocalForm& f, double theta,
                                   const std::vector<double>& omega, const SolverConfig& cfg);

}  // namespace subfrac
