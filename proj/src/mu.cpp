#include "subfrac/mu.hpp"

#include <cmath>
#include <stdexcept>

#include "subfrac/detail/qdist.hpp"
#include "subfrac/numerics.hpp"

namespace subfrac {

namespace {

// dilate all sphere nodes by rho into an AoS buffer
void dilate_nodes(const GroupDescriptor& g, const SphereQuadrature& sq, double rho,
                  std::vector<double>& out) {
  const int d = g.n;
  out.resize(sq.nodes.size());
  double scale[3];
  for (int k = 0; k < d; ++k)
    scale[k] = std::pow(rho, g.weights[static_cast<std::size_t>(k)]);
  for (std::size_t j = 0; j < sq.count(); ++j)
    for (int k = 0; k < d; ++k)
      out[j * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] =
          scale[k] * sq.nodes[j * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
}

template <class Dist>
double L_sum(const Dist& qd, const SphereQuadrature& sq, const std::vector<double>& ynodes,
             const double* base, int d) {
  double s = 0.0;
  for (std::size_t j = 0; j < sq.count(); ++j)
    s += sq.weights[j] * qd.qpow(base, ynodes.data() + j * static_cast<std::size_t>(d));
  return s;
}

double validate_gamma(const MuQuadrature& mq, double gamma) {
  const double gmax = mq.gamma_max();
  if (!(gamma > 0.0 && gamma < gmax))
    throw std::invalid_argument("mu: gamma must lie in (0, (Q-ps)/(p-1))");
  return gamma;
}

double g_integrand(double rho, double gamma, double Q, double p, double ps) {
  const double lead = std::pow(std::pow(rho, gamma) - 1.0, p - 1.0);
  return lead * (std::pow(rho, Q - 1.0 - gamma * (p - 1.0)) - std::pow(rho, ps - 1.0));
}

// frozen-prefactor tail of the mu integrand beyond rho_max, using
// L(rho) ~ sigma rho^{-(Q+ps)}
double mu_tail(double rho_max, double gamma, double Q, double p, double ps, double sigma) {
  const double pre = std::pow(1.0 - std::pow(rho_max, -gamma), p - 1.0) * sigma;
  const double t1 = std::pow(rho_max, -ps) / ps;
  const double t2 = std::pow(rho_max, gamma * (p - 1.0) - Q) / (Q - gamma * (p - 1.0));
  return pre * (t1 - t2);
}

}  // namespace

double L_at(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
            const SphereQuadrature& sq, double rho, const Point& base) {
  if (!(rho > 0.0)) throw std::invalid_argument("L_at: rho must be positive");
  std::vector<double> ynodes;
  dilate_nodes(g, sq, rho, ynodes);
  const double expo = -(g.Q + params.sp());
  return detail::with_qdist(g, spec, expo, 0.0, [&](const auto& qd) {
    return L_sum(qd, sq, ynodes, base.data(), g.n);
  });
}

double MuQuadrature::gamma_max() const { return (group.Q - params.sp()) / (params.p - 1.0); }

double MuQuadrature::mu(double gamma) const {
  validate_gamma(*this, gamma);
  double s = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    s += w[i] * g_integrand(rho[i], gamma, group.Q, params.p, params.sp()) * Lbar[i];
  return s + mu_tail(rho_max, gamma, group.Q, params.p, params.sp(), sigma);
}

double MuQuadrature::mu_base(double gamma, std::size_t b) const {
  validate_gamma(*this, gamma);
  double s = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    s += w[i] * g_integrand(rho[i], gamma, group.Q, params.p, params.sp()) * Lbase[b][i];
  return s + mu_tail(rho_max, gamma, group.Q, params.p, params.sp(), sigma);
}

MuQuadrature build_mu_quadrature(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                 const FracParams& params, const SphereQuadrature& sq,
                                 const MuConfig& cfg) {
  params.validate();
  if (!(g.Q > params.sp()))
    throw std::invalid_argument("build_mu_quadrature: requires Q > ps");

  MuQuadrature mq;
  mq.group = g;
  mq.norm = spec;
  mq.params = params;
  mq.sigma = sq.total();
  mq.rho_max = cfg.rho_max;

  const double p = params.p, ps = params.sp();
  const GaussLegendre gl = gauss_legendre(cfg.gl_points);

  // rho = 1 + t^kappa on geometric t-panels; the substitution flattens the
  // (rho-1)^{p-1-ps} endpoint behaviour of the integrand
  const double kappa = 2.0 / (p - ps);
  for (int j = 0; j < cfg.panels_near; ++j) {
    const double t_hi = std::ldexp(1.0, -j);
    const double t_lo = 0.5 * t_hi;
    // below this the nodes collapse onto rho = 1 in double precision and
    // the remaining mass is O(t^2)
    if (std::pow(t_hi, kappa) * (cfg.rho_mid - 1.0) < 1e-12) break;
    const double mid = 0.5 * (t_lo + t_hi), half = 0.5 * (t_hi - t_lo);
    for (int q = 0; q < cfg.gl_points; ++q) {
      const double t = mid + half * gl.nodes[static_cast<std::size_t>(q)];
      mq.rho.push_back(1.0 + std::pow(t, kappa) * (cfg.rho_mid - 1.0));
      mq.w.push_back(gl.weights[static_cast<std::size_t>(q)] * half * kappa *
                     std::pow(t, kappa - 1.0) * (cfg.rho_mid - 1.0));
    }
  }
  auto log_panels = [&](double lo, double hi, int panels) {
    const double ratio = std::pow(hi / lo, 1.0 / panels);
    for (int j = 0; j < panels; ++j) {
      const double a = lo * std::pow(ratio, j), b = a * ratio;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int q = 0; q < cfg.gl_points; ++q) {
        mq.rho.push_back(mid + half * gl.nodes[static_cast<std::size_t>(q)]);
        mq.w.push_back(gl.weights[static_cast<std::size_t>(q)] * half);
      }
    }
  };
  log_panels(cfg.rho_mid, cfg.rho_far, cfg.panels_mid);
  log_panels(cfg.rho_far, cfg.rho_max, cfg.panels_far);

  // base points: a spread-out subset of the sphere lattice
  const std::size_t nb = std::min<std::size_t>(static_cast<std::size_t>(cfg.base_points), sq.count());
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t j = b * sq.count() / nb;
    mq.bases.push_back(sq.node(j));
    mq.base_weights.push_back(sq.weights[j]);
  }
  double bw_total = 0.0;
  for (double bw : mq.base_weights) bw_total += bw;

  // resolved radius of the sphere lattice around a base point
  if (g.n == 1) mq.resolve_t = 0.0;
  else if (g.n == 2) mq.resolve_t = 12.0 / static_cast<double>(sq.count());
  else mq.resolve_t = 4.0 / std::sqrt(static_cast<double>(sq.count()));

  const double expo = -(g.Q + params.sp());
  mq.Lbase.assign(nb, std::vector<double>(mq.rho.size(), 0.0));
  detail::with_qdist(g, spec, expo, 0.0, [&](const auto& qd) {
    std::vector<double> ynodes;
    std::vector<double> anchor(nb, 0.0);
    if (mq.resolve_t > 0.0) {
      dilate_nodes(g, sq, 1.0 + mq.resolve_t, ynodes);
      for (std::size_t b = 0; b < nb; ++b)
        anchor[b] = L_sum(qd, sq, ynodes, mq.bases[b].data(), g.n);
    }
    for (std::size_t i = 0; i < mq.rho.size(); ++i) {
      const double t = mq.rho[i] - 1.0;
      if (mq.resolve_t > 0.0 && t < mq.resolve_t) {
        const double scale = std::pow(t / mq.resolve_t, -(1.0 + ps));
        for (std::size_t b = 0; b < nb; ++b) mq.Lbase[b][i] = anchor[b] * scale;
      } else {
        dilate_nodes(g, sq, mq.rho[i], ynodes);
        for (std::size_t b = 0; b < nb; ++b)
          mq.Lbase[b][i] = L_sum(qd, sq, ynodes, mq.bases[b].data(), g.n);
      }
    }
    return 0.0;
  });

  mq.Lbar.assign(mq.rho.size(), 0.0);
  for (std::size_t i = 0; i < mq.rho.size(); ++i) {
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b) s += mq.base_weights[b] * mq.Lbase[b][i];
    mq.Lbar[i] = s / bw_total;
  }

  const double spread_floor = std::max(0.05, 2.0 * mq.resolve_t);
  mq.spread = 0.0;
  for (std::size_t i = 0; i < mq.rho.size(); ++i) {
    if (mq.rho[i] - 1.0 < spread_floor) continue;
    double lo = mq.Lbase[0][i], hi = lo;
    for (std::size_t b = 1; b < nb; ++b) {
      lo = std::min(lo, mq.Lbase[b][i]);
      hi = std::max(hi, mq.Lbase[b][i]);
    }
    if (mq.Lbar[i] > 0.0) mq.spread = std::max(mq.spread, (hi - lo) / mq.Lbar[i]);
  }
  return mq;
}

MuRow hardy_mu(const MuQuadrature& mq, double gamma) {
  MuRow row;
  row.gamma = gamma;
  row.mu = mq.mu(gamma);
  row.mu_min = row.mu_max = row.mu;
  for (std::size_t b = 0; b < mq.bases.size(); ++b) {
    const double m = mq.mu_base(gamma, b);
    row.mu_min = std::min(row.mu_min, m);
    row.mu_max = std::max(row.mu_max, m);
  }
  row.spread = mq.spread;
  row.scalar_path = mq.scalar_path();
  return row;
}

std::vector<MuRow> mu_table(const MuQuadrature& mq, const std::vector<double>& gammas) {
  std::vector<MuRow> rows;
  rows.reserve(gammas.size());
  for (double gamma : gammas) rows.push_back(hardy_mu(mq, gamma));
  return rows;
}

double mu_full_line(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
                    const SphereQuadrature& sq, double gamma, double eps, double tol) {
  params.validate();
  if (!(g.Q > params.sp())) throw std::invalid_argument("mu_full_line: requires Q > ps");
  const double gmax = (g.Q - params.sp()) / (params.p - 1.0);
  if (!(gamma > 0.0 && gamma < gmax))
    throw std::invalid_argument("mu_full_line: gamma out of range");

  // sigma-weighted mean of L over the same base subset as the table route
  MuConfig base_cfg;
  const std::size_t nb = std::min<std::size_t>(static_cast<std::size_t>(base_cfg.base_points), sq.count());
  std::vector<Point> bases;
  std::vector<double> bw;
  double bw_total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t j = b * sq.count() / nb;
    bases.push_back(sq.node(j));
    bw.push_back(sq.weights[j]);
    bw_total += sq.weights[j];
  }
  auto Lmean = [&](double rho) {
    double s = 0.0;
    for (std::size_t b = 0; b < nb; ++b) s += bw[b] * L_at(g, spec, params, sq, rho, bases[b]);
    return s / bw_total;
  };
  auto phi = [&](double rho) {
    return signed_pow(1.0 - std::pow(rho, -gamma), params.p) * Lmean(rho) *
           std::pow(rho, g.Q - 1.0);
  };
  const double rho_max = 65536.0;
  const double lower = integrate(phi, 1e-8, 1.0 / (1.0 + eps), tol);
  // log-spaced panels above the exclusion, matching the upper split
  double upper = integrate(phi, 1.0 + eps, 2.0, tol);
  upper += integrate(phi, 2.0, 64.0, tol);
  upper += integrate(phi, 64.0, rho_max, tol * 10.0);
  const double tail = mu_tail(rho_max, gamma, g.Q, params.p, params.sp(), sq.total());
  return lower + upper + tail;
}

ReflectionReport reflection_check_base(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                       const FracParams& params, const SphereQuadrature& sq,
                                       double zeta, const Point& base) {
  ReflectionReport rep;
  rep.zeta = zeta;
  rep.lhs = L_at(g, spec, params, sq, 1.0 / zeta, base);
  rep.rhs = std::pow(zeta, g.Q + params.sp()) * L_at(g, spec, params, sq, zeta, base);
  rep.rel_err = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  return rep;
}

ReflectionReport reflection_check_averaged(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                           const FracParams& params, const SphereQuadrature& sq,
                                           double zeta) {
  const double expo = -(g.Q + params.sp());
  auto lambda = [&](double z) {
    std::vector<double> ynodes;
    dilate_nodes(g, sq, z, ynodes);
    return detail::with_qdist(g, spec, expo, 0.0, [&](const auto& qd) {
      double s = 0.0;
      for (std::size_t i = 0; i < sq.count(); ++i)
        s += sq.weights[i] *
             L_sum(qd, sq, ynodes, sq.nodes.data() + i * static_cast<std::size_t>(g.n), g.n);
      return s / sq.total();
    });
  };
  ReflectionReport rep;
  rep.zeta = zeta;
  rep.lhs = lambda(1.0 / zeta);
  rep.rhs = std::pow(zeta, g.Q + params.sp()) * lambda(zeta);
  rep.rel_err = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  return rep;
}

}  // namespace subfrac
