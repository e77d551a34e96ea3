#include <doctest.h>

#include <cmath>

#include "subfrac/grid.hpp"
#include "subfrac/numerics.hpp"
#include "subfrac/sphere.hpp"

using namespace subfrac;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("node placement and refusal") {
  const auto h = GroupDescriptor::heisenberg();
  const auto kq = QuasiNormSpec::parse("koranyi");
  CHECK_THROWS_AS(build_sphere_quadrature(h, kq, 4), std::invalid_argument);
  const auto sq = build_sphere_quadrature(h, kq, 16);
  for (std::size_t j = 0; j < sq.count(); ++j) {
    CHECK(std::abs(quasi_norm(h, kq, sq.node(j)) - 1.0) <= 1e-12);
    CHECK(sq.weights[j] > 0.0);
  }
}

TEST_CASE("sphere measures against closed forms") {
  // circle: sigma = 2 pi
  const auto a2 = GroupDescriptor::abelian(2);
  const auto eu = QuasiNormSpec::parse("euclidean");
  CHECK(build_sphere_quadrature(a2, eu, 64).total() == doctest::Approx(2 * pi).epsilon(1e-10));
  // S^2: 4 pi
  const auto a3 = GroupDescriptor::abelian(3);
  CHECK(build_sphere_quadrature(a3, eu, 64).total() == doctest::Approx(4 * pi).epsilon(1e-10));
  // wmax unit ball is the cube: sigma = Q |cube| = Q 2^N
  const auto wm = QuasiNormSpec::parse("wmax");
  CHECK(build_sphere_quadrature(a2, wm, 512).total() == doctest::Approx(8.0).epsilon(1e-4));
  // koranyi ball volume pi^2/8 -> sigma = Q V = pi^2/2
  const auto h = GroupDescriptor::heisenberg();
  const auto kq = QuasiNormSpec::parse("koranyi");
  CHECK(build_sphere_quadrature(h, kq, 128).total() ==
        doctest::Approx(pi * pi / 2.0).epsilon(1e-6));
  // 1-D: two directions, unit weight each
  const auto a1 = GroupDescriptor::abelian(1);
  CHECK(build_sphere_quadrature(a1, eu, 8).total() == doctest::Approx(2.0));
}

TEST_CASE("polar integral reproduces known integrals") {
  const auto a2 = GroupDescriptor::abelian(2);
  const auto eu = QuasiNormSpec::parse("euclidean");
  const auto sq = build_sphere_quadrature(a2, eu, 128);
  // Gaussian over R^2
  const double gauss = polar_integral(a2, sq, [](const Point& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1]));
  }, 12.0, 1e-10);
  CHECK(gauss == doctest::Approx(pi).epsilon(1e-6));
  // indicator of the unit ball: total/Q
  const double vol = polar_integral(a2, sq, [&](const Point& x) {
    return quasi_norm(a2, eu, x) <= 1.0 ? 1.0 : 0.0;
  }, 1.0, 1e-10);
  CHECK(vol == doctest::Approx(sq.total() / a2.Q).epsilon(1e-6));
  CHECK(vol == doctest::Approx(pi).epsilon(1e-5));
}

TEST_CASE("ball volume: scaling and dual-route agreement") {
  const auto h = GroupDescriptor::heisenberg();
  const auto kq = QuasiNormSpec::parse("koranyi");
  const auto sq = build_sphere_quadrature(h, kq, 64);
  const double v1 = ball_volume(h, sq, 1.0);
  CHECK(ball_volume(h, sq, 2.0) == doctest::Approx(std::pow(2.0, h.Q) * v1).epsilon(1e-13));
  CHECK(v1 == doctest::Approx(pi * pi / 8.0).epsilon(1e-6));

  // grid count of the koranyi unit ball indicator
  GridGeom geom(Box::centered({1.05, 1.05, 0.27}), {96, 96, 96});
  std::size_t cnt = 0;
  Point pt(3);
  for (std::size_t i = 0; i < geom.size(); ++i) {
    geom.coords(i, pt.data());
    if (quasi_norm(h, kq, pt) <= 1.0) ++cnt;
  }
  const double v_grid = static_cast<double>(cnt) * geom.cell_volume();
  CHECK(std::abs(v_grid - v1) / v1 <= 0.01);

  const auto a2 = GroupDescriptor::abelian(2);
  const auto eu = QuasiNormSpec::parse("euclidean");
  const auto sq2 = build_sphere_quadrature(a2, eu, 64);
  CHECK(ball_volume(a2, sq2, 1.0) == doctest::Approx(pi).epsilon(1e-6));
}

TEST_CASE("polar reconstruction error decreases as resolution doubles") {
  struct Case {
    GroupDescriptor g;
    QuasiNormSpec q;
    double exact_total;
  };
  const std::vector<Case> cases = {
      {GroupDescriptor::abelian(2), QuasiNormSpec::parse("wmax"), 8.0},
      {GroupDescriptor::heisenberg(), QuasiNormSpec::parse("wmax"), 32.0},
      {GroupDescriptor::heisenberg(), QuasiNormSpec::parse("koranyi"), pi * pi / 2.0},
  };
  for (const auto& c : cases) {
    // radial Gaussian: exact polar value sigma * int_0^inf e^{-r^2} r^{Q-1} dr
    const double radial = integrate_to_infinity(
        [&](double r) { return std::exp(-r * r) * std::pow(r, c.g.Q - 1.0); }, 0.0, 1e-12);
    const double exact = c.exact_total * radial;
    double prev_err = 1e300;
    for (int res : {8, 16, 32}) {
      const auto sq = build_sphere_quadrature(c.g, c.q, res);
      const double got = sq.total() * radial;
      const double err = std::abs(got - exact);
      CHECK(err < prev_err);
      prev_err = err;
    }
  }
}
