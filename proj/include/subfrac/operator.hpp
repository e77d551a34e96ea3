#pragma once

#include <cstdint>
#include <vector>

#include "subfrac/grid.hpp"
#include "subfrac/group.hpp"
#include "subfrac/sphere.hpp"

namespace subfrac {

struct FracParams {
  double s = 0.5;
  double p = 2.0;

  double sp() const { return s * p; }
  bool has_pstar(double Q) const { return Q > sp(); }
  // p* = Qp/(Q-sp), defined only when Q > sp
  double pstar(double Q) const;
  void validate() const;
};

struct QuadratureConfig {
  // radius of the excluded singular neighbourhood, in units of min h
  double pv_cutoff = 0.5;
  enum class NearMode { Skip, LocalCorrection };
  NearMode near_mode = NearMode::Skip;
  double tol = 1e-6;
  // sphere lattice resolution used for analytic tails / ring corrections
  int tail_resolution = 32;
  // OpenMP on/off; the reduction order is fixed either way, so results are
  // bit-identical across thread counts
  bool parallel = true;
};

// k(x,y) = q^{-(Q+sp)}(y^{-1} o x)
double kernel(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
              const Point& x, const Point& y);

// Directional tail integrals int_{G \ box} k(x,.) dy, evaluated with the
// polar formula from the first exit radius of each dilation orbit.
class BoxTail {
 public:
  BoxTail(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
          const Box& box, int resolution);

  double at(const double* x) const;
  double at(const Point& x) const { return at(x.data()); }

 private:
  GroupDescriptor group_;
  Box box_;
  SphereQuadrature sphere_;
  double sp_;
};

// [u]^p_{s,p,q} over G x G: grid double sum over the sample box plus the
// analytic exterior tail for mixed pairs.
double gagliardo_seminorm_p(const GroupDescriptor& g, const QuasiNormSpec& spec,
                            const FracParams& params, const SampledFunction& u,
                            const QuadratureConfig& cfg);

// single-threaded reference path (same summation order)
double gagliardo_seminorm_p_serial(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                   const FracParams& params, const SampledFunction& u,
                                   const QuadratureConfig& cfg);

// 2 PV int |u(x)-u(y)|^{p-2}(u(x)-u(y)) k(x,y) dy at grid node `flat`.
double apply_operator(const GroupDescriptor& g, const QuasiNormSpec& spec,
                      const FracParams& params, const SampledFunction& u, std::size_t flat,
                      const QuadratureConfig& cfg);

// Omega x Omega double sum of |u(x)-u(y)|^{p-2}(u(x)-u(y))(v(x)-v(y)) k(x,y);
// ordered pairs, so both (x,y) and (y,x) are counted. Empty mask = whole box.
double weak_form(const GroupDescriptor& g, const QuasiNormSpec& spec, const FracParams& params,
                 const SampledFunction& u, const SampledFunction& v,
                 const std::vector<std::uint8_t>& mask, const QuadratureConfig& cfg);

}  // namespace subfrac
