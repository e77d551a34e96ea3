#include "subfrac/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "subfrac/detail/qdist.hpp"
#include "subfrac/numerics.hpp"
#include "subfrac/parallel.hpp"

namespace subfrac {

namespace {

std::vector<double> ball_extents(const GroupDescriptor& g, const QuasiNormSpec& spec, double R) {
  switch (spec.kind) {
    case NormKind::Euclidean:
      return std::vector<double>(static_cast<std::size_t>(g.n), R);
    case NormKind::Koranyi:
      return {R, R, 0.25 * R * R};
    case NormKind::WeightedMax: {
      std::vector<double> e;
      for (double v : g.weights) e.push_back(std::pow(R, v));
      return e;
    }
  }
  throw std::logic_error("ball_extents: unreachable");
}

}  // namespace

Domain Domain::quasi_ball(const GroupDescriptor& g, const QuasiNormSpec& spec, double R,
                          int n_across, double pad) {
  require_compatible(g, spec);
  if (!(R > 0.0)) throw std::invalid_argument("quasi_ball: R must be positive");
  if (n_across < 4) throw std::invalid_argument("quasi_ball: n_across too small");
  std::vector<double> ext = ball_extents(g, spec, R);
  for (double& e : ext) e *= 1.0 + pad;
  Domain dom;
  dom.group = g;
  dom.norm = spec;
  dom.R = R;
  dom.geom = GridGeom(Box::centered(ext), std::vector<int>(static_cast<std::size_t>(g.n), n_across));
  dom.mask.assign(dom.geom.size(), 0);
  Point pt(static_cast<std::size_t>(g.n));
  for (std::size_t i = 0; i < dom.mask.size(); ++i) {
    dom.geom.coords(i, pt.data());
    if (quasi_norm(g, spec, pt) < R) dom.mask[i] = 1;
  }
  if (dom.interior_count() == 0) throw std::invalid_argument("quasi_ball: empty interior");
  return dom;
}

Domain Domain::dilated(double lambda) const {
  Domain d = *this;
  d.geom = geom.dilated(group, lambda);
  d.R = R * lambda;
  return d;
}

double Domain::r_inner() const {
  double m = 0.0;
  Point pt(static_cast<std::size_t>(geom.dim()));
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    geom.coords(i, pt.data());
    m = std::max(m, quasi_norm(group, norm, pt));
  }
  return m;
}

double Domain::volume() const {
  return static_cast<double>(interior_count()) * geom.cell_volume();
}

std::size_t Domain::interior_count() const {
  std::size_t c = 0;
  for (auto b : mask) c += b ? 1 : 0;
  return c;
}

NonlocalForm assemble(const Domain& dom, const FracParams& params, const QuadratureConfig& cfg,
                      std::size_t dense_cap, int min_radius_cells) {
  params.validate();
  if (!(dom.group.Q > params.sp())) throw std::invalid_argument("assemble: requires Q > sp");
  if (dom.R > 0.0 && dom.R / dom.geom.min_h() < min_radius_cells)
    throw std::invalid_argument("assemble: under-resolved grid (R/h too small)");

  NonlocalForm f;
  f.group = dom.group;
  f.norm = dom.norm;
  f.params = params;
  f.geom = dom.geom;
  f.cell = dom.geom.cell_volume();
  f.R = dom.R;
  f.r_inner = dom.r_inner();
  f.volume = dom.volume();
  f.parallel = cfg.parallel;

  const std::size_t m = dom.geom.size();
  const int d = dom.geom.dim();
  for (std::size_t i = 0; i < m; ++i)
    if (dom.mask[i]) f.interior.push_back(i);
  const std::size_t mi = f.interior.size();

  const std::vector<double> all_pts = dom.geom.points();
  f.pts.resize(mi * static_cast<std::size_t>(d));
  for (std::size_t r = 0; r < mi; ++r)
    for (int k = 0; k < d; ++k)
      f.pts[r * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] =
          all_pts[f.interior[r] * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];

  const double expo = -(dom.group.Q + params.sp());
  const double cut = cfg.pv_cutoff * dom.geom.min_h();
  BoxTail tail(dom.group, dom.norm, params, dom.geom.box, cfg.tail_resolution);

  f.b.assign(mi, 0.0);
  detail::with_qdist(dom.group, dom.norm, expo, cut, [&](const auto& qd) {
    parallel_for(mi, [&](std::size_t r) {
      const double* xi = f.pts.data() + r * static_cast<std::size_t>(d);
      double ext = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (dom.mask[j]) continue;
        const double* xj = all_pts.data() + j * static_cast<std::size_t>(d);
        if (qd.near(xi, xj)) continue;
        ext += qd.qpow(xi, xj);
      }
      f.b[r] = 2.0 * f.cell * (ext * f.cell + tail.at(xi));
    }, cfg.parallel);
    return 0.0;
  });

  if (mi <= dense_cap) {
    f.W.assign(mi * mi, 0.0);
    detail::with_qdist(dom.group, dom.norm, expo, cut, [&](const auto& qd) {
      parallel_for(mi, [&](std::size_t r) {
        const double* xi = f.pts.data() + r * static_cast<std::size_t>(d);
        for (std::size_t c = 0; c < mi; ++c) {
          if (c == r) continue;
          const double* xj = f.pts.data() + c * static_cast<std::size_t>(d);
          if (qd.near(xi, xj)) continue;
          f.W[r * mi + c] = qd.qpow(xi, xj) * f.cell * f.cell;
        }
      }, cfg.parallel);
      return 0.0;
    });
  }
  return f;
}

namespace {

struct Pow2E {
  double operator()(double t) const { return t * t; }
};
struct PowGenE {
  double p;
  double operator()(double t) const { return std::pow(std::abs(t), p); }
};

template <class Pw>
double energy_impl(const NonlocalForm& f, const Pw& pw, const std::vector<double>& u) {
  const std::size_t m = f.size();
  const int d = f.geom.dim();
  if (f.dense()) {
    auto row = [&](std::size_t r) {
      const double ui = u[r];
      double acc = f.b[r] * pw(ui);
      const double* wrow = f.W.data() + r * m;
      for (std::size_t c = 0; c < m; ++c) acc += wrow[c] * pw(ui - u[c]);
      return acc;
    };
    return sum_rows(m, row, f.parallel);
  }
  const double expo = -(f.group.Q + f.params.sp());
  const double cell2 = f.cell * f.cell;
  return detail::with_qdist(f.group, f.norm, expo, 0.0, [&](const auto& qd) {
    auto row = [&](std::size_t r) {
      const double* xi = f.pts.data() + r * static_cast<std::size_t>(d);
      const double ui = u[r];
      double acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == r) continue;
        acc += pw(ui - u[c]) * qd.qpow(xi, f.pts.data() + c * static_cast<std::size_t>(d));
      }
      return acc * cell2 + f.b[r] * pw(ui);
    };
    return sum_rows(m, row, f.parallel);
  });
}

// diagonal of the energy Hessian (up to the factor p): for p < 2 the
// |u_i - u_j|^{p-2} weights blow up on flat regions and make plain descent
// crawl, so the descent direction is preconditioned with this
template <class PwH>
void hessian_diag_impl(const NonlocalForm& f, const PwH& pwh, const std::vector<double>& u,
                       std::vector<double>& out) {
  const std::size_t m = f.size();
  const int d = f.geom.dim();
  out.resize(m);
  if (f.dense()) {
    parallel_for(m, [&](std::size_t r) {
      const double ui = u[r];
      double acc = 0.0;
      const double* wrow = f.W.data() + r * m;
      for (std::size_t c = 0; c < m; ++c) acc += wrow[c] * pwh(ui - u[c]);
      out[r] = 2.0 * acc + f.b[r] * pwh(ui);
    }, f.parallel);
    return;
  }
  const double expo = -(f.group.Q + f.params.sp());
  const double cell2 = f.cell * f.cell;
  detail::with_qdist(f.group, f.norm, expo, 0.0, [&](const auto& qd) {
    parallel_for(m, [&](std::size_t r) {
      const double* xi = f.pts.data() + r * static_cast<std::size_t>(d);
      const double ui = u[r];
      double acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == r) continue;
        acc += pwh(ui - u[c]) * qd.qpow(xi, f.pts.data() + c * static_cast<std::size_t>(d));
      }
      out[r] = 2.0 * acc * cell2 + f.b[r] * pwh(ui);
    }, f.parallel);
    return 0.0;
  });
}

template <class Phi>
void stationarity_impl(const NonlocalForm& f, const Phi& phi, const std::vector<double>& u,
                       std::vector<double>& out) {
  const std::size_t m = f.size();
  const int d = f.geom.dim();
  out.resize(m);
  if (f.dense()) {
    parallel_for(m, [&](std::size_t r) {
      const double ui = u[r];
      double acc = 0.0;
      const double* wrow = f.W.data() + r * m;
      for (std::size_t c = 0; c < m; ++c) acc += wrow[c] * phi(ui - u[c]);
      out[r] = 2.0 * acc + f.b[r] * phi(ui);
    }, f.parallel);
    return;
  }
  const double expo = -(f.group.Q + f.params.sp());
  const double cell2 = f.cell * f.cell;
  detail::with_qdist(f.group, f.norm, expo, 0.0, [&](const auto& qd) {
    parallel_for(m, [&](std::size_t r) {
      const double* xi = f.pts.data() + r * static_cast<std::size_t>(d);
      const double ui = u[r];
      double acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == r) continue;
        acc += phi(ui - u[c]) * qd.qpow(xi, f.pts.data() + c * static_cast<std::size_t>(d));
      }
      out[r] = 2.0 * acc * cell2 + f.b[r] * phi(ui);
    }, f.parallel);
    return 0.0;
  });
}

double denom(const NonlocalForm& f, const std::vector<double>& u,
             const std::vector<double>* weight) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::pow(std::abs(u[i]), f.params.p);
    s += weight ? (*weight)[i] * a : a;
  }
  return s * f.cell;
}

void normalize_lp(const NonlocalForm& f, std::vector<double>& u) {
  double s = 0.0;
  for (double v : u) s += std::pow(std::abs(v), f.params.p);
  const double scale = std::pow(s * f.cell, -1.0 / f.params.p);
  for (double& v : u) v *= scale;
}

}  // namespace

double form_energy(const NonlocalForm& f, const std::vector<double>& u) {
  if (u.size() != f.size()) throw std::invalid_argument("form_energy: size mismatch");
  if (f.params.p == 2.0) return energy_impl(f, Pow2E{}, u);
  return energy_impl(f, PowGenE{f.params.p}, u);
}

void form_stationarity(const NonlocalForm& f, const std::vector<double>& u,
                       std::vector<double>& out) {
  if (u.size() != f.size()) throw std::invalid_argument("form_stationarity: size mismatch");
  const double p = f.params.p;
  if (p == 2.0)
    stationarity_impl(f, [](double t) { return t; }, u, out);
  else
    stationarity_impl(f, [p](double t) { return signed_pow(t, p); }, u, out);
}

double rayleigh_quotient(const NonlocalForm& f, const std::vector<double>& u,
                         const std::vector<double>* weight) {
  const double dn = denom(f, u, weight);
  if (dn == 0.0) throw std::invalid_argument("rayleigh_quotient: u vanishes");
  return form_energy(f, u) / dn;
}

namespace {

EigenResult solve_p2(const NonlocalForm& f, const SolverConfig& cfg) {
  const std::size_t m = f.size();
  EigenResult res;
  std::vector<double> u(m, 1.0), y(m);
  // weighted problems are transformed to the standard one by u = w^{-1/2} v
  std::vector<double> wsqrt;
  const bool weighted = cfg.weight != nullptr;
  if (weighted) {
    wsqrt.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!((*cfg.weight)[i] > 0.0))
        throw std::invalid_argument("minimize_rayleigh: weight must be positive");
      wsqrt[i] = std::sqrt((*cfg.weight)[i]);
    }
  }

  // diagonal of A = diag(2 sum_j W_ij + b_i) for the Jacobi preconditioner
  std::vector<double> diag(m, 0.0);
  {
    const int d = f.geom.dim();
    const double expo = -(f.group.Q + f.params.sp());
    const double cell2 = f.cell * f.cell;
    detail::with_qdist(f.group, f.norm, expo, 0.0, [&](const auto& qd) {
      parallel_for(m, [&](std::size_t r) {
        double acc = 0.0;
        if (f.dense()) {
          const double* wrow = f.W.data() + r * m;
          for (std::size_t c = 0; c < m; ++c) acc += wrow[c];
        } else {
          const double* xi = f.pts.data() + r * static_cast<std::size_t>(d);
          for (std::size_t c = 0; c < m; ++c) {
            if (c == r) continue;
            acc += qd.qpow(xi, f.pts.data() + c * static_cast<std::size_t>(d));
          }
          acc *= cell2;
        }
        diag[r] = 2.0 * acc + f.b[r];
      }, f.parallel);
      return 0.0;
    });
  }

  auto matvec = [&](const std::vector<double>& v, std::vector<double>& out) {
    if (!weighted) {
      form_stationarity(f, v, out);
      return;
    }
    std::vector<double> t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = v[i] / wsqrt[i];
    form_stationarity(f, t, out);
    for (std::size_t i = 0; i < m; ++i) out[i] /= wsqrt[i];
  };
  std::vector<double> diag_t = diag;
  if (weighted)
    for (std::size_t i = 0; i < m; ++i) diag_t[i] = diag[i] / (wsqrt[i] * wsqrt[i]);

  // inverse power iteration on the transformed operator
  auto quotient = [&](const std::vector<double>& v) {
    std::vector<double> Av(m);
    matvec(v, Av);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      num += v[i] * Av[i];
      den += v[i] * v[i];
    }
    return num / (den * f.cell);
  };

  // CG wrapper against the transformed matvec
  auto cg = [&](const std::vector<double>& rhs, std::vector<double>& x) {
    std::vector<double> r = rhs, z(m), pdir(m), Ap(m);
    x.assign(m, 0.0);
    double rhs_norm = 0.0;
    for (double v : rhs) rhs_norm += v * v;
    rhs_norm = std::sqrt(rhs_norm);
    if (rhs_norm == 0.0) return;
    for (std::size_t i = 0; i < m; ++i) z[i] = r[i] / diag_t[i];
    pdir = z;
    double rz = 0.0;
    for (std::size_t i = 0; i < m; ++i) rz += r[i] * z[i];
    for (int it = 0; it < 10000; ++it) {
      matvec(pdir, Ap);
      double pAp = 0.0;
      for (std::size_t i = 0; i < m; ++i) pAp += pdir[i] * Ap[i];
      const double alpha = rz / pAp;
      double rnorm = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        x[i] += alpha * pdir[i];
        r[i] -= alpha * Ap[i];
        rnorm += r[i] * r[i];
      }
      if (std::sqrt(rnorm) <= 1e-13 * rhs_norm) return;
      double rz_new = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        z[i] = r[i] / diag_t[i];
        rz_new += r[i] * z[i];
      }
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < m; ++i) pdir[i] = z[i] + beta * pdir[i];
    }
  };

  // residual of the transformed pair (v, lambda): ||Av - lambda cell v||/..
  std::vector<double> Av(m);
  auto rel_residual = [&](const std::vector<double>& v, double lam) {
    matvec(v, Av);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double target = lam * f.cell * v[i];
      worst = std::max(worst, std::abs(Av[i] - target));
      scale = std::max(scale, std::abs(target));
    }
    return scale > 0.0 ? worst / scale : worst;
  };

  double lambda = quotient(u);
  res.history.push_back(lambda);
  for (int it = 0; it < cfg.max_iters; ++it) {
    cg(u, y);
    double ynorm = 0.0;
    for (double v : y) ynorm += v * v;
    ynorm = std::sqrt(ynorm);
    for (std::size_t i = 0; i < m; ++i) u[i] = y[i] / ynorm;
    const double next = quotient(u);
    res.iters = it + 1;
    res.history.push_back(next);
    const double rr = rel_residual(u, next);
    res.residual_history.push_back(rr);
    const bool done =
        std::abs(next - lambda) <= cfg.tol * std::abs(next) && rr <= cfg.residual_tol;
    lambda = next;
    if (done) break;
  }

  if (weighted)
    for (std::size_t i = 0; i < m; ++i) u[i] /= wsqrt[i];
  // fix the overall sign to the positive first eigenfunction
  double ssum = 0.0;
  for (double v : u) ssum += v;
  if (ssum < 0.0)
    for (double& v : u) v = -v;
  normalize_lp(f, u);
  res.lambda1 = rayleigh_quotient(f, u, cfg.weight);
  res.eigvec = std::move(u);
  return res;
}

EigenResult descent_run(const NonlocalForm& f, const SolverConfig& cfg, std::uint64_t seed) {
  const std::size_t m = f.size();
  const double p = f.params.p;
  std::mt19937_64 rng(seed);
  std::vector<double> u(m);
  for (double& v : u) v = 0.5 + uniform01(rng);
  normalize_lp(f, u);

  EigenResult res;
  std::vector<double> F(m), dir(m), trial(m);
  std::vector<double> u_prev, g_prev;
  double E = form_energy(f, u);
  double D = denom(f, u, cfg.weight);
  double R = E / D;
  res.history.push_back(R);

  std::vector<double> hdiag(m);
  const double ph = p;
  auto pwh = [ph](double t) {
    if (t == 0.0) return 0.0;
    return std::pow(std::abs(t), ph - 2.0);
  };

  const int win = cfg.stagnation_window;
  for (int it = 0; it < cfg.descent_max_iters; ++it) {
    form_stationarity(f, u, F);
    hessian_diag_impl(f, pwh, u, hdiag);
    double hmax = 0.0;
    for (double v : hdiag) hmax = std::max(hmax, v);
    double dir_norm2 = 0.0, res_scale = 0.0, res_worst = 0.0, slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double wgt = cfg.weight ? (*cfg.weight)[i] : 1.0;
      const double target = R * f.cell * wgt * signed_pow(u[i], p);
      const double g = F[i] - target;
      dir[i] = -g / std::max(hdiag[i], 1e-12 * hmax);
      slope += -g * dir[i];
      dir_norm2 += dir[i] * dir[i];
      res_scale = std::max(res_scale, std::abs(target));
      res_worst = std::max(res_worst, std::abs(g));
    }
    res.residual_history.push_back(res_scale > 0.0 ? res_worst / res_scale : res_worst);
    if (dir_norm2 == 0.0 || slope <= 0.0) break;
    slope *= p / D;  // -dR/dt at t = 0 along dir

    // Barzilai-Borwein step over the preconditioned pair, Armijo-safeguarded
    double t = 1.0;
    if (!u_prev.empty()) {
      double sy = 0.0, yy = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double si = u[i] - u_prev[i];
        const double yi = -(dir[i] - g_prev[i]);
        sy += si * yi;
        yy += yi * yi;
      }
      if (sy > 0.0 && yy > 0.0) t = sy / yy;
    }
    u_prev = u;
    g_prev = dir;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = u[i] + t * dir[i];
      const double Et = form_energy(f, trial);
      const double Dt = denom(f, trial, cfg.weight);
      if (Dt > 0.0) {
        const double Rt = Et / Dt;
        if (Rt <= R - 1e-4 * t * slope) {
          u = trial;
          normalize_lp(f, u);
          E = form_energy(f, u);
          D = denom(f, u, cfg.weight);
          R = E / D;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    res.iters = it + 1;
    if (!accepted) break;  // stationary to line-search precision
    res.history.push_back(R);
    if (static_cast<int>(res.history.size()) > win) {
      const double past = res.history[res.history.size() - 1 - static_cast<std::size_t>(win)];
      if (std::abs(past - R) <= cfg.stagnation_tol * std::max(std::abs(R), 1e-300)) break;
    }
    if (it + 1 == cfg.descent_max_iters)
      throw NonConvergenceError("minimize_rayleigh: descent did not stagnate", res.history);
  }

  res.lambda1 = R;
  res.eigvec = std::move(u);
  return res;
}

}  // namespace

EigenResult minimize_rayleigh(const NonlocalForm& f, const SolverConfig& cfg) {
  if (f.size() == 0) throw std::invalid_argument("minimize_rayleigh: empty form");
  EigenResult best;
  if (f.params.p == 2.0) {
    best = solve_p2(f, cfg);
  } else {
    const int seeds = std::max(1, cfg.seeds);
    double lo = 0.0, hi = 0.0;
    for (int s = 0; s < seeds; ++s) {
      EigenResult r = descent_run(f, cfg, cfg.seed + static_cast<std::uint64_t>(s));
      if (s == 0 || r.lambda1 < best.lambda1) best = std::move(r);
      lo = (s == 0) ? best.lambda1 : std::min(lo, best.lambda1);
      hi = (s == 0) ? best.lambda1 : std::max(hi, best.lambda1);
    }
    best.seed_spread = (hi - lo) / std::max(hi, 1e-300);
  }
  double mx = 0.0;
  for (double v : best.eigvec) mx = std::max(mx, std::abs(v));
  bool pos = true, neg = true;
  for (double v : best.eigvec) {
    if (v < -1e-8 * mx) pos = false;
    if (v > 1e-8 * mx) neg = false;
  }
  best.sign_constant = pos || neg;
  best.residual = weak_residual(f, best, cfg.weight);
  return best;
}

double weak_residual(const NonlocalForm& f, const EigenResult& r,
                     const std::vector<double>* weight) {
  std::vector<double> F;
  form_stationarity(f, r.eigvec, F);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double wgt = weight ? (*weight)[i] : 1.0;
    const double target = r.lambda1 * f.cell * wgt * signed_pow(r.eigvec[i], f.params.p);
    worst = std::max(worst, std::abs(F[i] - target));
    scale = std::max(scale, std::abs(target));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double lyapunov_product(double lambda1, double volume, double r_inner, double theta,
                        const FracParams& params, double Q) {
  params.validate();
  const double sp = params.sp();
  if (!(Q > sp)) throw std::invalid_argument("lyapunov_product: requires Q > sp");
  if (!(theta > Q / sp) || !std::isfinite(theta))
    throw std::invalid_argument("lyapunov_product: theta must lie in (Q/(sp), inf)");
  return lambda1 * std::pow(volume, 1.0 / theta) * std::pow(r_inner, sp - Q / theta);
}

WeightedLyapunov lyapunov_weighted(const NonlocalForm& f, double theta,
                                   const std::vector<double>& omega, const SolverConfig& cfg) {
  if (omega.size() != f.size()) throw std::invalid_argument("lyapunov_weighted: size mismatch");
  const double sp = f.params.sp();
  const double Q = f.group.Q;
  if (!(theta > Q / sp)) throw std::invalid_argument("lyapunov_weighted: theta out of range");
  SolverConfig wcfg = cfg;
  wcfg.weight = &omega;
  const EigenResult r = minimize_rayleigh(f, wcfg);
  WeightedLyapunov out;
  out.lambda1 = r.lambda1;
  double s = 0.0;
  for (double w : omega) s += std::pow(r.lambda1 * w, theta);
  out.norm_theta = std::pow(s * f.cell, 1.0 / theta);
  out.product = out.norm_theta * std::pow(f.r_inner, sp - Q / theta);
  return out;
}

}  // namespace subfrac
