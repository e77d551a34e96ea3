#pragma once

#include <cstddef>
#include <vector>

#include "subfrac/group.hpp"
#include "subfrac/numerics.hpp"

namespace subfrac {

// Quadrature for the surface measure sigma on the unit quasi-sphere
// {q = 1}, the measure that makes the polar decomposition
//   int_G f = int_0^inf int_{q=1} f(delta_r y') r^{Q-1} dsigma(y') dr
// hold. Built by pushing a Euclidean-sphere lattice through the radial map
// u -> delta_{1/q(u)} u; the change-of-variables density collapses to
// (sum_i v_i u_i^2) / q(u)^Q, so no derivatives of q are needed.
struct SphereQuadrature {
  int dim = 0;
  std::vector<double> nodes;    // count*dim, row-major; q(node) = 1
  std::vector<double> weights;  // positive

  std::size_t count() const { return weights.size(); }
  double total() const;  // approximates sigma(omega_Q)
  Point node(std::size_t j) const;
};

// resolution >= 8; controls the lattice on the Euclidean sphere
// (dim 2: #angles; dim 3: #azimuthal angles x Gauss-Legendre in z).
// Supported for topological dimension 1, 2 and 3.
SphereQuadrature build_sphere_quadrature(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                         int resolution);

double sphere_measure(const SphereQuadrature& sq);              // sigma(omega_Q)
double unit_ball_volume(const GroupDescriptor& g, const SphereQuadrature& sq);  // sigma/Q

// |B_q(0,R)| = R^Q sigma(omega_Q)/Q.
double ball_volume(const GroupDescriptor& g, const SphereQuadrature& sq, double R);

// Polar-formula integral of f over {r in [0, r_max]}:
//   int_0^{r_max} r^{Q-1} sum_j w_j f(delta_r y'_j) dr.
template <class F>
double polar_integral(const GroupDescriptor& g, const SphereQuadrature& sq, const F& f,
                      double r_max, double tol = 1e-9) {
  auto shell = [&](double r) {
    double s = 0.0;
    Point y(static_cast<std::size_t>(g.n));
    for (std::size_t j = 0; j < sq.count(); ++j) {
      for (int k = 0; k < g.n; ++k)
        y[static_cast<std::size_t>(k)] =
            std::pow(r, g.weights[static_cast<std::size_t>(k)]) *
            sq.nodes[j * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(k)];
      s += sq.weights[j] * f(y);
    }
    return s * std::pow(r, g.Q - 1.0);
  };
  return integrate(shell, 0.0, r_max, tol);
}

}  // namespace subfrac
