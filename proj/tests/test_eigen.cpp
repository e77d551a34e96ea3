#include <doctest.h>

#include <cmath>
#include <random>

#include "subfrac/eigen.hpp"
#include "subfrac/numerics.hpp"

#include "oracles.hpp"

using namespace subfrac;

namespace {

const auto a1 = GroupDescriptor::abelian(1);
const auto a2 = GroupDescriptor::abelian(2);
const auto heis = GroupDescriptor::heisenberg();
const auto eu = QuasiNormSpec::parse("euclidean");
const auto kq = QuasiNormSpec::parse("koranyi");

}  // namespace

TEST_CASE("quasi-ball domains") {
  const Domain dom = Domain::quasi_ball(heis, kq, 1.0, 16);
  CHECK(dom.interior_count() > 0);
  const double ri = dom.r_inner();
  CHECK(ri > 0.0);
  CHECK(std::abs(ri - dom.R) <= 2.0 * dom.geom.min_h() / std::sqrt(dom.geom.min_h()));
  CHECK(ri < dom.R);
  // dilation maps the discretization exactly
  const Domain big = dom.dilated(2.0);
  CHECK(big.interior_count() == dom.interior_count());
  CHECK(big.R == doctest::Approx(2.0));
  CHECK(big.volume() == doctest::Approx(std::pow(2.0, heis.Q) * dom.volume()).epsilon(1e-12));
  CHECK_THROWS_AS(Domain::quasi_ball(heis, kq, -1.0, 16), std::invalid_argument);
}

TEST_CASE("assemble: symmetry, positivity, monotone exterior") {
  const FracParams params{0.4, 2.0};
  const QuadratureConfig cfg;
  const Domain dom = Domain::quasi_ball(a1, eu, 1.0, 24);
  const NonlocalForm f = assemble(dom, params, cfg);
  const std::size_t m = f.size();
  REQUIRE(f.dense());
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(f.b[i] > 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(f.W[i * m + j] == f.W[j * m + i]);
      if (i != j) CHECK(f.W[i * m + j] > 0.0);
    }
  }
  // shrinking Omega raises b on retained nodes
  Domain smaller = dom;
  smaller.R = 0.8;
  Point pt(1);
  for (std::size_t i = 0; i < smaller.mask.size(); ++i) {
    smaller.geom.coords(i, pt.data());
    smaller.mask[i] = quasi_norm(a1, eu, pt) < 0.8 ? 1 : 0;
  }
  const NonlocalForm fs = assemble(smaller, params, cfg);
  std::size_t ri = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (ri < fs.size() && f.interior[r] == fs.interior[ri]) {
      CHECK(fs.b[ri] > f.b[r]);
      ++ri;
    }
  }
  CHECK(ri == fs.size());

  CHECK_THROWS_AS(assemble(Domain::quasi_ball(a1, eu, 1.0, 8), params, cfg, 3000, 16),
                  std::invalid_argument);
}

TEST_CASE("form energy equals the gagliardo double sum with boundary terms") {
  const FracParams params{0.4, 2.0};
  const QuadratureConfig cfg;
  const Domain dom = Domain::quasi_ball(a1, eu, 1.0, 32);
  const NonlocalForm f = assemble(dom, params, cfg);

  // u nonzero on every interior node, zero outside Omega
  SampledFunction u = sample(a1, dom.geom, [](const Point&) { return 0.0; }, 1);
  std::vector<double> ui(f.size());
  for (std::size_t r = 0; r < f.size(); ++r) {
    const Point x = dom.geom.point(f.interior[r]);
    ui[r] = 1.0 + 0.5 * std::sin(3.0 * x[0]);
    u.values[f.interior[r]] = ui[r];
  }
  const double direct = gagliardo_seminorm_p(a1, eu, params, u, cfg);
  CHECK(form_energy(f, ui) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("rayleigh quotient: scale invariance and the one-point domain") {
  const FracParams params{0.4, 2.0};
  const QuadratureConfig cfg;
  const Domain dom = Domain::quasi_ball(a1, eu, 1.0, 20);
  const NonlocalForm f = assemble(dom, params, cfg);
  std::mt19937_64 rng(1);
  std::vector<double> u(f.size());
  for (double& v : u) v = uniform(rng, 0.1, 1.0);
  const double r0 = rayleigh_quotient(f, u);
  std::vector<double> cu = u;
  for (double& v : cu) v *= -3.0;
  CHECK(rayleigh_quotient(f, cu) == doctest::Approx(r0).epsilon(1e-12));
  CHECK_THROWS_AS(rayleigh_quotient(f, std::vector<double>(f.size(), 0.0)),
                  std::invalid_argument);

  // single interior node: R(u) = b0 / h^N
  Domain single = dom;
  single.mask.assign(single.geom.size(), 0);
  single.mask[single.geom.size() / 2] = 1;
  single.R = 0.0;  // skip the resolution guard
  const NonlocalForm f1 = assemble(single, params, cfg);
  REQUIRE(f1.size() == 1);
  CHECK(rayleigh_quotient(f1, {2.5}) ==
        doctest::Approx(f1.b[0] / f1.cell).epsilon(1e-13));
}

TEST_CASE("p = 2: iterative solver matches the dense Jacobi oracle") {
  const FracParams params{0.4, 2.0};
  const QuadratureConfig cfg;
  for (int dim = 1; dim <= 2; ++dim) {
    const Domain dom = dim == 1 ? Domain::quasi_ball(a1, eu, 1.0, 20)
                                : Domain::quasi_ball(a2, eu, 1.0, 12);
    const NonlocalForm f = assemble(dom, params, cfg);
    const EigenResult res = minimize_rayleigh(f);
    CHECK(res.lambda1 > 0.0);
    CHECK(res.sign_constant);
    CHECK(res.residual <= 1e-8);
    for (std::size_t k = 1; k < res.history.size(); ++k)
      CHECK(res.history[k] <= res.history[k - 1] * (1.0 + 1e-12));

    const auto A = oracles::matrix_from_form(f);
    const auto eig = oracles::jacobi_eigenvalues(A, f.size());
    const double lambda_dense = eig.front() / f.cell;
    CHECK(std::abs(res.lambda1 - lambda_dense) <= 1e-8 * lambda_dense);

    // residual of a generic vector is far from zero
    EigenResult fake = res;
    std::mt19937_64 rng(3);
    for (double& v : fake.eigvec) v = uniform(rng, -1.0, 1.0);
    fake.lambda1 = res.lambda1;
    CHECK(weak_residual(f, fake) > 1e3 * res.residual);
  }
}

TEST_CASE("eigen scaling law and domain monotonicity") {
  const QuadratureConfig cfg;
  for (double p : {1.5, 2.0, 3.0}) {
    const FracParams params{0.5, p};
    const Domain d1 = Domain::quasi_ball(a2, eu, 1.0, 20);
    const Domain d2 = d1.dilated(2.0);
    const NonlocalForm f1 = assemble(d1, params, cfg);
    const NonlocalForm f2 = assemble(d2, params, cfg);
    const double l1 = minimize_rayleigh(f1).lambda1;
    const double l2 = minimize_rayleigh(f2).lambda1;
    CHECK(std::abs(l2 / l1 - std::pow(2.0, -params.sp())) <= 0.03 * std::pow(2.0, -params.sp()));
  }
  // nested balls on one grid: lambda1 decreases with the domain
  const FracParams params{0.4, 2.0};
  const Domain big = Domain::quasi_ball(a1, eu, 1.0, 40);
  Domain small = big;
  Point pt(1);
  for (std::size_t i = 0; i < small.mask.size(); ++i) {
    small.geom.coords(i, pt.data());
    small.mask[i] = quasi_norm(a1, eu, pt) < 0.7 ? 1 : 0;
  }
  small.R = 0.7;
  const double l_big = minimize_rayleigh(assemble(big, params, cfg)).lambda1;
  const double l_small = minimize_rayleigh(assemble(small, params, cfg)).lambda1;
  CHECK(l_small >= l_big);
}

TEST_CASE("general-p descent: history decreases, seeds agree, residual drops") {
  const FracParams params{0.5, 1.5};
  const QuadratureConfig cfg;
  const Domain dom = Domain::quasi_ball(a1, eu, 1.0, 32);
  const NonlocalForm f = assemble(dom, params, cfg);
  const EigenResult res = minimize_rayleigh(f);
  CHECK(res.lambda1 > 0.0);
  CHECK(res.sign_constant);
  CHECK(res.seed_spread <= 1e-6);
  for (std::size_t k = 1; k < res.history.size(); ++k)
    CHECK(res.history[k] <= res.history[k - 1] * (1.0 + 1e-12));
  REQUIRE(res.residual_history.size() >= 2);
  CHECK(res.residual_history.back() < res.residual_history.front());
  // first eigenfunction normalization
  double lp = 0.0;
  for (double v : res.eigvec) lp += std::pow(std::abs(v), params.p);
  CHECK(lp * f.cell == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("heisenberg ball: positive first eigenvalue at modest resolution") {
  const FracParams params{0.5, 2.0};
  QuadratureConfig cfg;
  const Domain dom = Domain::quasi_ball(heis, kq, 1.0, 10);
  const NonlocalForm f = assemble(dom, params, cfg);
  const EigenResult res = minimize_rayleigh(f);
  CHECK(res.lambda1 > 0.0);
  CHECK(res.residual <= 1e-8);
}

TEST_CASE("lyapunov product: admissibility and radius independence") {
  const FracParams params{0.5, 2.0};
  CHECK_THROWS_AS(lyapunov_product(1.0, 1.0, 1.0, 0.9, params, 1.0), std::invalid_argument);

  const QuadratureConfig cfg;
  const Domain base = Domain::quasi_ball(a1, eu, 1.0, 32);
  const double theta = 3.0;  // > Q/(sp) = 1.25 for s = 0.4, p = 2
  std::vector<double> Ps;
  for (double lam : {0.5, 1.0, 2.0}) {
    const Domain dom = base.dilated(lam);
    const NonlocalForm f = assemble(dom, FracParams{0.4, 2.0}, cfg);
    const EigenResult r = minimize_rayleigh(f);
    Ps.push_back(lyapunov_product(r.lambda1, f.volume, f.r_inner, theta, FracParams{0.4, 2.0},
                                  a1.Q));
  }
  for (double P : Ps) CHECK(P > 0.0);
  const double mean = (Ps[0] + Ps[1] + Ps[2]) / 3.0;
  for (double P : Ps) CHECK(std::abs(P - mean) / mean <= 0.05);

  // weighted problem: product positive with a nontrivially computed norm
  const NonlocalForm f = assemble(base, FracParams{0.4, 2.0}, cfg);
  std::vector<double> omega(f.size());
  for (std::size_t r = 0; r < f.size(); ++r) {
    const double x = f.pts[r];
    omega[r] = 1.0 + x * x;
  }
  const WeightedLyapunov wl = lyapunov_weighted(f, 4.0, omega, {});
  CHECK(wl.lambda1 > 0.0);
  CHECK(wl.norm_theta > 0.0);
  CHECK(wl.product > 0.0);
}
