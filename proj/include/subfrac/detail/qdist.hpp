#pragma once

#include <cmath>
#include <stdexcept>

#include "subfrac/group.hpp"

namespace subfrac::detail {

// Pairwise quasi-distance functors for the four shipped (group, norm)
// combinations. Each one evaluates q(y^{-1} o x) with the kernel exponent
// and the near-cutoff baked in, so the pair loops pay one pow per pair.

struct EuclidDist {
  int n;
  double expo;  // q^expo
  double cut2;

  double q(const double* x, const double* y) const {
    double d2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = x[k] - y[k];
      d2 += d * d;
    }
    return std::sqrt(d2);
  }
  double qpow(const double* x, const double* y) const {
    double d2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = x[k] - y[k];
      d2 += d * d;
    }
    return std::pow(d2, 0.5 * expo);
  }
  bool near(const double* x, const double* y) const {
    double d2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = x[k] - y[k];
      d2 += d * d;
    }
    return d2 < cut2;
  }
};

struct MaxAbelianDist {
  int n;
  double expo;
  double cut;

  double q(const double* x, const double* y) const {
    double m = 0.0;
    for (int k = 0; k < n; ++k) m = std::max(m, std::abs(x[k] - y[k]));
    return m;
  }
  double qpow(const double* x, const double* y) const { return std::pow(q(x, y), expo); }
  bool near(const double* x, const double* y) const { return q(x, y) < cut; }
};

struct KoranyiDist {
  double expo;
  double cut4;

  double q4(const double* x, const double* y) const {
    const double d1 = x[0] - y[0];
    const double d2 = x[1] - y[1];
    const double dt = x[2] - y[2] + 0.5 * (y[1] * x[0] - y[0] * x[1]);
    const double r2 = d1 * d1 + d2 * d2;
    return r2 * r2 + 16.0 * dt * dt;
  }
  double q(const double* x, const double* y) const { return std::pow(q4(x, y), 0.25); }
  double qpow(const double* x, const double* y) const { return std::pow(q4(x, y), 0.25 * expo); }
  bool near(const double* x, const double* y) const { return q4(x, y) < cut4; }
};

struct MaxHeisDist {
  double expo;
  double cut;

  double q(const double* x, const double* y) const {
    const double d1 = std::abs(x[0] - y[0]);
    const double d2 = std::abs(x[1] - y[1]);
    const double dt = std::abs(x[2] - y[2] + 0.5 * (y[1] * x[0] - y[0] * x[1]));
    return std::max(std::max(d1, d2), std::sqrt(dt));
  }
  double qpow(const double* x, const double* y) const { return std::pow(q(x, y), expo); }
  bool near(const double* x, const double* y) const { return q(x, y) < cut; }
};

template <class Fn>
decltype(auto) with_qdist(const GroupDescriptor& g, const QuasiNormSpec& spec, double expo,
                          double cut, Fn&& fn) {
  require_compatible(g, spec);
  switch (spec.kind) {
    case NormKind::Euclidean:
      return fn(EuclidDist{g.n, expo, cut * cut});
    case NormKind::Koranyi:
      return fn(KoranyiDist{expo, cut * cut * cut * cut});
    case NormKind::WeightedMax:
      if (g.law == GroupLaw::Abelian) return fn(MaxAbelianDist{g.n, expo, cut});
      return fn(MaxHeisDist{expo, cut});
  }
  throw std::logic_error("with_qdist: unreachable");
}

}  // namespace subfrac::detail
