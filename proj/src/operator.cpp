#include "subfrac/operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subfrac/detail/qdist.hpp"
#include "subfrac/numerics.hpp"
#include "subfrac/parallel.hpp"

namespace subfrac {

double FracParams::pstar(double Q) const {
  if (!has_pstar(Q)) throw std::invalid_argument("pstar: requires Q > sp");
  return Q * p / (Q - sp());
}

void FracParams::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("FracParams: s must lie in (0,1)");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("FracParams: p must lie in (1,inf)");
}

double kernel(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
              const Point& x, const Point& y) {
  params.validate();
  const double q = quasi_distance(g, spec, x, y);
  if (q == 0.0) throw std::invalid_argument("kernel: x = y is a kernel singularity");
  return std::pow(q, -(g.Q + params.sp()));
}

namespace {

struct Pow2 {
  double operator()(double t) const { return t * t; }
};
struct PowGen {
  double p;
  double operator()(double t) const { return std::pow(std::abs(t), p); }
};

// first exit radius of r -> x o delta_r(dir) from the box
double exit_radius(const GroupDescriptor& g, const Box& box, const double* x, const double* dir) {
  double best = 1e300;
  if (g.law == GroupLaw::Abelian) {
    for (int k = 0; k < g.n; ++k) {
      const double d = dir[k];
      if (d > 0.0)
        best = std::min(best, (box.hi[static_cast<std::size_t>(k)] - x[k]) / d);
      else if (d < 0.0)
        best = std::min(best, (box.lo[static_cast<std::size_t>(k)] - x[k]) / d);
    }
    return best;
  }
  // heisenberg: first two coordinates move linearly, the third along
  // x3 + cr*r + dir3*r^2 with cr = (x1 dir2 - x2 dir1)/2
  for (int k = 0; k < 2; ++k) {
    const double d = dir[k];
    if (d > 0.0)
      best = std::min(best, (box.hi[static_cast<std::size_t>(k)] - x[k]) / d);
    else if (d < 0.0)
      best = std::min(best, (box.lo[static_cast<std::size_t>(k)] - x[k]) / d);
  }
  const double a = dir[2];
  const double b = 0.5 * (x[0] * dir[1] - x[1] * dir[0]);
  for (double bound : {box.lo[2], box.hi[2]}) {
    const double c = x[2] - bound;
    if (a == 0.0) {
      if (b != 0.0) {
        const double r = -c / b;
        if (r > 0.0) best = std::min(best, r);
      }
      continue;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    for (double r : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
      if (r > 0.0) best = std::min(best, r);
  }
  return best;
}

}  // namespace

BoxTail::BoxTail(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
                 const Box& box, int resolution)
    : group_(g), box_(box), sphere_(build_sphere_quadrature(g, spec, resolution)),
      sp_(params.sp()) {}

double BoxTail::at(const double* x) const {
  const int d = group_.n;
  double t = 0.0;
  for (std::size_t j = 0; j < sphere_.count(); ++j) {
    const double* dir = sphere_.nodes.data() + j * static_cast<std::size_t>(d);
    const double r = exit_radius(group_, box_, x, dir);
    t += sphere_.weights[j] * std::pow(r, -sp_);
  }
  return t / sp_;
}

namespace {

struct SeminormTerms {
  double pair_sum = 0.0;  // h^{2N} double sum over the box
  double tail = 0.0;      // mixed pairs beyond the box
  double ring = 0.0;      // near-diagonal correction (LocalCorrection only)
};

template <class Dist, class Pw>
SeminormTerms seminorm_terms(const Dist& qd, const Pw& pw, const GroupDescriptor& g,
                             const QuasiNormSpec& spec, const FracParams& params,
                             const SampledFunction& u, const QuadratureConfig& cfg) {
  const std::size_t m = u.geom.size();
  const int d = u.geom.dim();
  const std::vector<double> pts = u.geom.points();
  const double* uv = u.values.data();

  std::vector<std::size_t> supp;
  for (std::size_t i = 0; i < m; ++i)
    if (uv[i] != 0.0) supp.push_back(i);

  SeminormTerms out;
  if (supp.empty()) return out;

  auto row = [&](std::size_t r) {
    const std::size_t i = supp[r];
    const double* xi = pts.data() + i * static_cast<std::size_t>(d);
    const double ui = uv[i];
    const double pwi = pw(ui);
    double acc = 0.0;   // pairs (i, j) for all box j
    double accz = 0.0;  // reversed pairs (j, i) with u_j = 0
    for (std::size_t j = 0; j < m; ++j) {
      const double* xj = pts.data() + j * static_cast<std::size_t>(d);
      if (qd.near(xi, xj)) continue;
      const double k = qd.qpow(xi, xj);
      const double uj = uv[j];
      if (uj != 0.0) {
        acc += pw(ui - uj) * k;
      } else {
        acc += pwi * k;
        accz += k;
      }
    }
    return acc + pwi * accz;
  };
  const double cell = u.geom.cell_volume();
  out.pair_sum = sum_rows(supp.size(), row, cfg.parallel) * cell * cell;

  BoxTail tail(g, spec, params, u.geom.box, cfg.tail_resolution);
  auto tail_row = [&](std::size_t r) {
    const std::size_t i = supp[r];
    return pw(uv[i]) * tail.at(pts.data() + i * static_cast<std::size_t>(d));
  };
  out.tail = 2.0 * cell * sum_rows(supp.size(), tail_row, cfg.parallel);

  if (cfg.near_mode == QuadratureConfig::NearMode::LocalCorrection) {
    // first-order mass of the excluded ring {q < delta}:
    // delta^{p-sp}/(p-sp) * sum_j w_j |grad u . y'_j|^p over weight-1 axes
    const SphereQuadrature sq = build_sphere_quadrature(g, spec, cfg.tail_resolution);
    const double delta = cfg.pv_cutoff * u.geom.min_h();
    const double radial = std::pow(delta, params.p - params.sp()) / (params.p - params.sp());
    std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
    for (int k = d - 2; k >= 0; --k)
      stride[static_cast<std::size_t>(k)] =
          stride[static_cast<std::size_t>(k + 1)] *
          static_cast<std::size_t>(u.geom.n[static_cast<std::size_t>(k + 1)]);
    auto ring_row = [&](std::size_t i) {
      if (u.geom.on_margin(i, 1)) return 0.0;
      double grad[3] = {0.0, 0.0, 0.0};
      bool nonzero = false;
      for (int k = 0; k < d; ++k) {
        if (g.weights[static_cast<std::size_t>(k)] != 1.0) continue;
        const std::size_t st = stride[static_cast<std::size_t>(k)];
        grad[k] = (uv[i + st] - uv[i - st]) / (2.0 * u.geom.h[static_cast<std::size_t>(k)]);
        nonzero = nonzero || grad[k] != 0.0;
      }
      if (!nonzero) return 0.0;
      double s = 0.0;
      for (std::size_t j = 0; j < sq.count(); ++j) {
        double dir = 0.0;
        for (int k = 0; k < d; ++k)
          if (g.weights[static_cast<std::size_t>(k)] == 1.0)
            dir += grad[k] * sq.nodes[j * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
        s += sq.weights[j] * pw(dir);
      }
      return s;
    };
    out.ring = radial * cell * sum_rows(m, ring_row, cfg.parallel);
  }
  return out;
}

template <class Pw>
double seminorm_dispatch(const Pw& pw, const GroupDescriptor& g, const QuasiNormSpec& spec,
                         const FracParams& params, const SampledFunction& u,
                         const QuadratureConfig& cfg) {
  const double expo = -(g.Q + params.sp());
  const double cut = cfg.pv_cutoff * u.geom.min_h();
  return detail::with_qdist(g, spec, expo, cut, [&](const auto& qd) {
    const SeminormTerms t = seminorm_terms(qd, pw, g, spec, params, u, cfg);
    return t.pair_sum + t.tail + t.ring;
  });
}

}  // namespace

double gagliardo_seminorm_p(const GroupDescriptor& g, const QuasiNormSpec& spec,
                            const FracParams& params, const SampledFunction& u,
                            const QuadratureConfig& cfg) {
  params.validate();
  u.validate();
  if (g.n != u.geom.dim())
    throw std::invalid_argument("gagliardo_seminorm_p: grid/group dimension mismatch");
  if (params.p == 2.0) return seminorm_dispatch(Pow2{}, g, spec, params, u, cfg);
  return seminorm_dispatch(PowGen{params.p}, g, spec, params, u, cfg);
}

double gagliardo_seminorm_p_serial(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                   const FracParams& params, const SampledFunction& u,
                                   const QuadratureConfig& cfg) {
  QuadratureConfig serial = cfg;
  serial.parallel = false;
  return gagliardo_seminorm_p(g, spec, params, u, serial);
}

double apply_operator(const GroupDescriptor& g, const QuasiNormSpec& spec,
                      const FracParams& params, const SampledFunction& u, std::size_t flat,
                      const QuadratureConfig& cfg) {
  params.validate();
  u.validate();
  if (flat >= u.geom.size()) throw std::invalid_argument("apply_operator: index out of range");
  if (u.geom.on_margin(flat, 1))
    throw std::invalid_argument("apply_operator: node must be strictly inside the box");
  if (cfg.pv_cutoff < 0.5)
    throw std::invalid_argument("apply_operator: pv_cutoff below h/2 is not resolved");

  const std::size_t m = u.geom.size();
  const int d = u.geom.dim();
  const std::vector<double> pts = u.geom.points();
  const double* xi = pts.data() + flat * static_cast<std::size_t>(d);
  const double ui = u.values[flat];
  const double p = params.p;
  const double expo = -(g.Q + params.sp());
  const double cut = cfg.pv_cutoff * u.geom.min_h();

  const double grid_part = detail::with_qdist(g, spec, expo, cut, [&](const auto& qd) {
    auto row = [&](std::size_t j) {
      const double* xj = pts.data() + j * static_cast<std::size_t>(d);
      if (qd.near(xi, xj)) return 0.0;
      return signed_pow(ui - u.values[j], p) * qd.qpow(xi, xj);
    };
    return sum_rows(m, row, cfg.parallel);
  });

  BoxTail tail(g, spec, params, u.geom.box, cfg.tail_resolution);
  return 2.0 * (grid_part * u.geom.cell_volume() + signed_pow(ui, p) * tail.at(xi));
}

double weak_form(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
                 const SampledFunction& u, const SampledFunction& v,
                 const std::vector<std::uint8_t>& mask, const QuadratureConfig& cfg) {
  params.validate();
  if (u.geom.size() != v.geom.size() || u.geom.n != v.geom.n || u.geom.box.lo != v.geom.box.lo ||
      u.geom.box.hi != v.geom.box.hi)
    throw std::invalid_argument("weak_form: u and v must share one grid");
  if (!mask.empty() && mask.size() != u.geom.size())
    throw std::invalid_argument("weak_form: mask size mismatch");

  const std::size_t m = u.geom.size();
  const int d = u.geom.dim();
  const std::vector<double> pts = u.geom.points();
  std::vector<std::size_t> omega;
  for (std::size_t i = 0; i < m; ++i)
    if (mask.empty() || mask[i]) omega.push_back(i);

  const double p = params.p;
  const double expo = -(g.Q + params.sp());
  const double cut = cfg.pv_cutoff * u.geom.min_h();

  const double sum = detail::with_qdist(g, spec, expo, cut, [&](const auto& qd) {
    auto row = [&](std::size_t r) {
      const std::size_t i = omega[r];
      const double* xi = pts.data() + i * static_cast<std::size_t>(d);
      const double ui = u.values[i], vi = v.values[i];
      double acc = 0.0;
      for (std::size_t rr = 0; rr < omega.size(); ++rr) {
        const std::size_t j = omega[rr];
        const double* xj = pts.data() + j * static_cast<std::size_t>(d);
        if (qd.near(xi, xj)) continue;
        acc += signed_pow(ui - u.values[j], p) * (vi - v.values[j]) * qd.qpow(xi, xj);
      }
      return acc;
    };
    return sum_rows(omega.size(), row, cfg.parallel);
  });
  return sum * u.geom.cell_volume() * u.geom.cell_volume();
}

}  // namespace subfrac
