#pragma once

#include <string>
#include <vector>

namespace subfrac {

using Point = std::vector<double>;

enum class GroupLaw { Abelian, Heisenberg };

// A concrete homogeneous Lie group in exponential coordinates: the identity
// is the origin, Haar measure is Lebesgue measure, dilations act coordinate-
// wise as x_i -> lambda^{v_i} x_i.
struct GroupDescriptor {
  std::string name;
  int n = 0;                    // topological dimension
  std::vector<double> weights;  // dilation exponents v_1..v_n
  double Q = 0.0;               // homogeneous dimension = sum of weights
  GroupLaw law = GroupLaw::Abelian;

  static GroupDescriptor abelian(int n);
  static GroupDescriptor heisenberg();
  // "abelian:N" or "heisenberg1"
  static GroupDescriptor parse(const std::string& id);

  Point identity() const { return Point(static_cast<std::size_t>(n), 0.0); }
};

enum class NormKind { Euclidean, Koranyi, WeightedMax };

struct QuasiNormSpec {
  NormKind kind = NormKind::Euclidean;

  // "euclidean", "koranyi", "wmax"
  static QuasiNormSpec parse(const std::string& id);
  std::string id() const;
};

// euclidean is defined on abelian groups only, koranyi on heisenberg only,
// wmax on either.
bool norm_compatible(const GroupDescriptor& g, const QuasiNormSpec& spec);
void require_compatible(const GroupDescriptor& g, const QuasiNormSpec& spec);

Point compose(const GroupDescriptor& g, const Point& a, const Point& b);
Point inverse(const GroupDescriptor& g, const Point& a);
Point dilate(const GroupDescriptor& g, double lambda, const Point& a);
double quasi_norm(const GroupDescriptor& g, const QuasiNormSpec& spec, const Point& a);

// q(y^{-1} o x), the kernel distance.
double quasi_distance(const GroupDescriptor& g, const QuasiNormSpec& spec, const Point& x,
                      const Point& y);

}  // namespace subfrac
