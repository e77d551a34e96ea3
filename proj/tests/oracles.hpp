// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "subfrac/eigen.hpp"
#include "subfrac/numerics.hpp"

namespace oracles {

// Cyclic Jacobi eigendecomposition of a dense symmetric matrix (row-major).
// Returns eigenvalues ascending; eigvec (optional) gets the eigenvector of
// the smallest one.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t m,
                                              std::vector<double>* eigvec = nullptr) {
  std::vector<double> v(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) off += a[i * m + j] * a[i * m + j];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a[k * m + p], akq = a[k * m + q];
          a[k * m + p] = c * akp - s * akq;
          a[k * m + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a[p * m + k], aqk = a[q * m + k];
          a[p * m + k] = c * apk - s * aqk;
          a[q * m + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double vkp = v[k * m + p], vkq = v[k * m + q];
          v[k * m + p] = c * vkp - s * vkq;
          v[k * m + q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<double> eig(m);
  for (std::size_t i = 0; i < m; ++i) eig[i] = a[i * m + i];
  std::size_t imin = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (eig[i] < eig[imin]) imin = i;
  if (eigvec) {
    eigvec->resize(m);
    for (std::size_t k = 0; k < m; ++k) (*eigvec)[k] = v[k * m + imin];
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

// Dense operator matrix of the discrete Dirichlet form (p = 2):
// A = diag(2 sum_j W_ij + b_i) - 2 W, so u^T A u = energy(u).
inline std::vector<double> matrix_from_form(const subfrac::NonlocalForm& f) {
  if (!f.dense()) throw std::runtime_error("matrix_from_form: needs a materialized form");
  const std::size_t m = f.size();
  std::vector<double> A(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double rowsum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double w = f.W[i * m + j];
      rowsum += w;
      A[i * m + j] = -2.0 * w;
    }
    A[i * m + i] = 2.0 * rowsum + f.b[i];
  }
  return A;
}

// Direct principal-value quadrature of the paper's operator applied to
// q^{-gamma} on the euclidean line, at x0 = 1. Pairs y = 1 +- d so the PV
// cancellation is explicit; the far field is folded by d -> D/w with a
// frozen-prefactor remainder.
inline double pv_apply_qgamma_1d(double s, double p, double gamma) {
  const double sp = s * p;
  auto phi = [p](double t) { return subfrac::signed_pow(t, p); };
  auto u = [gamma](double y) { return std::pow(std::abs(y), -gamma); };
  auto pair = [&](double d) {
    return (phi(1.0 - u(1.0 + d)) + phi(1.0 - u(1.0 - d))) * std::pow(d, -(1.0 + sp));
  };
  const double tol = 1e-12;
  double I = 0.0;
  I += subfrac::integrate(pair, 1e-9, 0.5, tol);
  I += subfrac::integrate(pair, 0.5, 1.0 - 1e-7, tol);
  I += subfrac::integrate(pair, 1.0 + 1e-7, 4.0, tol);
  const double D = 4.0, dmax = 1e7;
  I += subfrac::integrate(
      [&](double w) { return pair(D / w) * D / (w * w); }, D / dmax, 1.0, tol);
  // beyond dmax both branches look like (1 - d^{-gamma})^{p-1} ~ frozen
  I += 2.0 * std::pow(1.0 - std::pow(dmax, -gamma), p - 1.0) * std::pow(dmax, -sp) / sp;
  return 2.0 * I;
}

}  // namespace oracles
