#include "subfrac/inequality.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "subfrac/detail/qdist.hpp"
#include "subfrac/numerics.hpp"
#include "subfrac/parallel.hpp"

namespace subfrac {

ElementaryReport elementary_inequality_check(std::size_t samples, std::uint64_t seed,
                                             double threshold) {
  if (samples < 1) throw std::invalid_argument("elementary_inequality_check: samples < 1");
  std::mt19937_64 rng(seed);
  ElementaryReport rep;
  rep.samples = samples;
  rep.min_slack = 1e300;
  for (std::size_t i = 0; i < samples; ++i) {
    double t;
    switch (i % 8) {
      case 0: t = 0.0; break;
      case 1: t = 1.0; break;
      default: t = uniform01(rng);
    }
    const double p = 1.0 + 9.0 * uniform01(rng);
    const double mag = std::pow(10.0, uniform(rng, -3.0, 3.0));
    double abs_a, abs_a_minus_t;
    if (i % 2 == 0) {  // real a
      const double a = (uniform01(rng) < 0.5 ? -mag : mag);
      abs_a = std::abs(a);
      abs_a_minus_t = std::abs(a - t);
    } else {  // complex a
      const double ang = uniform(rng, 0.0, 2.0 * std::acos(-1.0));
      const double re = mag * std::cos(ang), im = mag * std::sin(ang);
      abs_a = mag;
      abs_a_minus_t = std::hypot(re - t, im);
    }
    const double pow_a = std::pow(abs_a, p);
    const double lhs = std::pow(abs_a_minus_t, p);
    const double rhs = std::pow(1.0 - t, p - 1.0) * (pow_a - t);
    const double slack = (lhs - rhs) / std::max(1.0, pow_a);
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < threshold) ++rep.violations;
  }
  return rep;
}

PiconeReport picone_check(const GroupDescriptor& g, const QuasiNormSpec& spec,
                          const FracParams& params, const SampledFunction& omega,
                          const SampledFunction& u, const std::vector<std::uint8_t>& mask,
                          const QuadratureConfig& cfg) {
  params.validate();
  if (omega.geom.size() != u.geom.size())
    throw std::invalid_argument("picone_check: omega and u must share one grid");
  if (!mask.empty() && mask.size() != u.geom.size())
    throw std::invalid_argument("picone_check: mask size mismatch");

  const std::size_t m = u.geom.size();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < m; ++i)
    if (mask.empty() || mask[i]) idx.push_back(i);
  for (std::size_t i : idx)
    if (!(omega.values[i] > 0.0))
      throw std::invalid_argument("picone_check: omega must be positive on Omega");

  const double p = params.p;
  PiconeReport rep;
  rep.min_remainder = 1e300;

  // R(x,y) = |u(x)-u(y)|^p
  //        - (|g(x)|^p w(x) - |g(y)|^p w(y)) |w(x)-w(y)|^{p-2}(w(x)-w(y))
  std::vector<double> gp(idx.size());  // |u/omega|^p omega = |u|^p / omega^{p-1}
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const std::size_t i = idx[r];
    const double gi = u.values[i] / omega.values[i];
    gp[r] = std::pow(std::abs(gi), p) * omega.values[i];
  }
  std::vector<double> row_min(idx.size(), 1e300);
  parallel_for(idx.size(), [&](std::size_t r) {
    const std::size_t i = idx[r];
    const double ui = u.values[i], wi = omega.values[i];
    double mn = 1e300;
    for (std::size_t rr = r + 1; rr < idx.size(); ++rr) {
      const std::size_t j = idx[rr];
      const double du = ui - u.values[j];
      const double dw = wi - omega.values[j];
      const double R = std::pow(std::abs(du), p) - (gp[r] - gp[rr]) * signed_pow(dw, p);
      mn = std::min(mn, R);
    }
    row_min[r] = mn;
  }, cfg.parallel);
  for (double v : row_min) rep.min_remainder = std::min(rep.min_remainder, v);
  if (idx.size() < 2) rep.min_remainder = 0.0;

  // integrated form: [u]^p_{Omega x Omega} >= weak_form(omega, |u|^p/omega^{p-1})
  SampledFunction v = u;
  for (double& val : v.values) val = 0.0;
  for (std::size_t r = 0; r < idx.size(); ++r) v.values[idx[r]] = gp[r];
  rep.lhs = weak_form(g, spec, params, u, u, mask, cfg);
  rep.rhs = weak_form(g, spec, params, omega, v, mask, cfg);
  return rep;
}

Lem1Report complement_integral_check(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                     const FracParams& params, const GridGeom& geom,
                                     const std::vector<std::uint8_t>& K, const Point& x,
                                     const SphereQuadrature& sq, const QuadratureConfig& cfg) {
  params.validate();
  if (K.size() != geom.size())
    throw std::invalid_argument("complement_integral_check: mask size mismatch");
  if (static_cast<int>(x.size()) != geom.dim())
    throw std::invalid_argument("complement_integral_check: point dimension mismatch");

  std::int64_t count = 0;
  for (auto b : K) count += b ? 1 : 0;
  if (count == 0) throw std::invalid_argument("complement_integral_check: |K| = 0");

  Lem1Report rep;
  rep.K_measure = static_cast<double>(count) * geom.cell_volume();

  const double sp = params.sp();
  const double sigma = sq.total();
  const double v1 = sigma / g.Q;
  rep.floor_value = sigma / sp * std::pow(v1, sp / g.Q) * std::pow(rep.K_measure, -sp / g.Q);

  // locate the cell containing x; if it is not in K the integral diverges
  std::vector<int> cell(static_cast<std::size_t>(geom.dim()));
  bool inside_box = true;
  for (int k = 0; k < geom.dim(); ++k) {
    const double fk = (x[static_cast<std::size_t>(k)] - geom.box.lo[static_cast<std::size_t>(k)]) /
                      geom.h[static_cast<std::size_t>(k)];
    const int ik = static_cast<int>(std::floor(fk));
    if (ik < 0 || ik >= geom.n[static_cast<std::size_t>(k)]) inside_box = false;
    cell[static_cast<std::size_t>(k)] = std::min(std::max(ik, 0), geom.n[static_cast<std::size_t>(k)] - 1);
  }
  if (!inside_box || !K[geom.flat_index(cell)]) {
    rep.x_outside_K = true;
    rep.lhs = 1e300;
    rep.margin_rel = 1e300;
    return rep;
  }

  const std::size_t m = geom.size();
  const int d = geom.dim();
  const std::vector<double> pts = geom.points();
  const double expo = -(g.Q + sp);
  const double grid_part = detail::with_qdist(g, spec, expo, 0.0, [&](const auto& qd) {
    auto row = [&](std::size_t j) {
      if (K[j]) return 0.0;
      return qd.qpow(x.data(), pts.data() + j * static_cast<std::size_t>(d));
    };
    return sum_rows(m, row, cfg.parallel);
  });
  BoxTail tail(g, spec, params, geom.box, cfg.tail_resolution);
  rep.lhs = grid_part * geom.cell_volume() + tail.at(x.data());
  rep.margin_rel = (rep.lhs - rep.floor_value) / rep.floor_value;
  return rep;
}

HardyReport hardy_check(const GroupDescriptor& g, const QuasiNormSpec& spec,
                        const FracParams& params, double mu_gamma, const SampledFunction& u,
                        const QuadratureConfig& cfg) {
  params.validate();
  u.validate();
  HardyReport rep;
  const std::size_t m = u.geom.size();
  const double ps = params.sp();
  const double exclude_below = u.geom.min_h();
  Point pt(static_cast<std::size_t>(u.geom.dim()));
  double weighted = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (u.values[i] == 0.0) continue;
    u.geom.coords(i, pt.data());
    const double q = quasi_norm(g, spec, pt);
    if (q < exclude_below)
      throw std::invalid_argument("hardy_check: u must vanish near the origin cell");
    weighted += std::pow(std::abs(u.values[i]), params.p) * std::pow(q, -ps);
  }
  rep.lhs = 2.0 * mu_gamma * weighted * u.geom.cell_volume();
  rep.rhs = gagliardo_seminorm_p(g, spec, params, u, cfg);
  rep.margin_rel = (rep.rhs - rep.lhs) / rep.rhs;
  return rep;
}

double sobolev_ratio(const GroupDescriptor& g, const QuasiNormSpec& spec,
                     const FracParams& params, const SampledFunction& u,
                     const QuadratureConfig& cfg) {
  params.validate();
  if (!params.has_pstar(g.Q)) throw std::invalid_argument("sobolev_ratio: requires Q > sp");
  const double pstar = params.pstar(g.Q);
  const double lp = u.lp_norm_p(pstar);  // h^N sum |u|^{p*}
  if (lp == 0.0) throw std::invalid_argument("sobolev_ratio: u vanishes");
  const double denom = std::pow(lp, params.p / pstar);
  return gagliardo_seminorm_p(g, spec, params, u, cfg) / denom;
}

}  // namespace subfrac
