#include "subfrac/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace subfrac {

double SphereQuadrature::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

Point SphereQuadrature::node(std::size_t j) const {
  Point p(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k)
    p[static_cast<std::size_t>(k)] = nodes[j * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k)];
  return p;
}

namespace {

void push_node(const GroupDescriptor& g, const QuasiNormSpec& spec, SphereQuadrature& sq,
               const Point& u, double w_euclid) {
  const double qu = quasi_norm(g, spec, u);
  double dens = 0.0;
  for (int k = 0; k < g.n; ++k) {
    const double uk = u[static_cast<std::size_t>(k)];
    dens += g.weights[static_cast<std::size_t>(k)] * uk * uk;
  }
  const Point y = dilate(g, 1.0 / qu, u);
  for (double c : y) sq.nodes.push_back(c);
  sq.weights.push_back(w_euclid * dens / std::pow(qu, g.Q));
}

}  // namespace

SphereQuadrature build_sphere_quadrature(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                         int resolution) {
  require_compatible(g, spec);
  if (resolution < 8)
    throw std::invalid_argument("build_sphere_quadrature: resolution must be >= 8");

  SphereQuadrature sq;
  sq.dim = g.n;
  const double pi = std::acos(-1.0);

  switch (g.n) {
    case 1: {
      push_node(g, spec, sq, Point{1.0}, 1.0);
      push_node(g, spec, sq, Point{-1.0}, 1.0);
      break;
    }
    case 2: {
      // midpoint lattice in the angle; periodic, so trapezoid-accurate
      const int m = resolution;
      const double dth = 2.0 * pi / m;
      for (int j = 0; j < m; ++j) {
        const double th = dth * (j + 0.5);
        push_node(g, spec, sq, Point{std::cos(th), std::sin(th)}, dth);
      }
      break;
    }
    case 3: {
      const int mphi = resolution;
      const int mz = std::max(8, resolution / 2);
      const double dphi = 2.0 * pi / mphi;
      const GaussLegendre gl = gauss_legendre(mz);
      for (int iz = 0; iz < mz; ++iz) {
        const double z = gl.nodes[static_cast<std::size_t>(iz)];
        const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < mphi; ++j) {
          const double phi = dphi * (j + 0.5);
          push_node(g, spec, sq, Point{rxy * std::cos(phi), rxy * std::sin(phi), z},
                    dphi * gl.weights[static_cast<std::size_t>(iz)]);
        }
      }
      break;
    }
    default:
      throw std::invalid_argument(
          "build_sphere_quadrature: sphere lattices are implemented for n <= 3");
  }
  return sq;
}

double sphere_measure(const SphereQuadrature& sq) { return sq.total(); }

double unit_ball_volume(const GroupDescriptor& g, const SphereQuadrature& sq) {
  return sq.total() / g.Q;
}

double ball_volume(const GroupDescriptor& g, const SphereQuadrature& sq, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("ball_volume: R must be positive");
  return std::pow(R, g.Q) * unit_ball_volume(g, sq);
}

}  // namespace subfrac
