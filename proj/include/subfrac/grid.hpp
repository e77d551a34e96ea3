#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subfrac/group.hpp"

namespace subfrac {

struct Box {
  std::vector<double> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  static Box centered(const std::vector<double>& half_extents);
  bool contains(const double* x) const;
};

// Uniform cell-centered grid over a box: node i_k along axis k sits at
// lo_k + (i_k + 1/2) h_k. Flat indices are row-major (last axis fastest).
struct GridGeom {
  Box box;
  std::vector<int> n;
  std::vector<double> h;

  GridGeom() = default;
  GridGeom(Box b, std::vector<int> counts);

  int dim() const { return static_cast<int>(n.size()); }
  std::size_t size() const;
  double cell_volume() const;
  double min_h() const;

  void coords(std::size_t flat, double* out) const;
  Point point(std::size_t flat) const;
  std::size_t flat_index(const std::vector<int>& multi) const;
  // all node coordinates, row-major AoS (size()*dim doubles)
  std::vector<double> points() const;
  // true if the node lies in one of the outer `layers` cell layers
  bool on_margin(std::size_t flat, int layers) const;

  // box scaled axis-wise by lambda^{v_k}; grid nodes map exactly under
  // the group dilation delta_lambda
  GridGeom dilated(const GroupDescriptor& g, double lambda) const;
};

// Compactly supported grid sample: values vanish on the outer
// support_margin layers.
struct SampledFunction {
  std::string group_id;
  GridGeom geom;
  int support_margin = 1;
  std::vector<double> values;

  double max_abs() const;
  // h^N sum |u|^p
  double lp_norm_p(double p) const;
  void validate() const;
};

SampledFunction sample(const GroupDescriptor& g, const GridGeom& geom,
                       const std::function<double(const Point&)>& f, int support_margin = 1);

// clamp to [-level, level] (Lemma-style truncation)
SampledFunction truncate(const SampledFunction& u, double level);

void save_csv(const std::string& path, const SampledFunction& u);
SampledFunction load_csv(const std::string& path);

}  // namespace subfrac
