#include "subfrac/group.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace subfrac {

GroupDescriptor GroupDescriptor::abelian(int n) {
  if (n < 1) throw std::invalid_argument("abelian group needs n >= 1");
  GroupDescriptor g;
  g.name = "abelian:" + std::to_string(n);
  g.n = n;
  g.weights.assign(static_cast<std::size_t>(n), 1.0);
  g.Q = static_cast<double>(n);
  g.law = GroupLaw::Abelian;
  return g;
}

GroupDescriptor GroupDescriptor::heisenberg() {
  GroupDescriptor g;
  g.name = "heisenberg1";
  g.n = 3;
  g.weights = {1.0, 1.0, 2.0};
  g.Q = 4.0;
  g.law = GroupLaw::Heisenberg;
  return g;
}

GroupDescriptor GroupDescriptor::parse(const std::string& id) {
  if (id == "heisenberg1" || id == "heisenberg") return heisenberg();
  const std::string prefix = "abelian:";
  if (id.rfind(prefix, 0) == 0) {
    const int n = std::stoi(id.substr(prefix.size()));
    return abelian(n);
  }
  throw std::invalid_argument("unknown group id: " + id);
}

QuasiNormSpec QuasiNormSpec::parse(const std::string& id) {
  if (id == "euclidean") return {NormKind::Euclidean};
  if (id == "koranyi") return {NormKind::Koranyi};
  if (id == "wmax") return {NormKind::WeightedMax};
  throw std::invalid_argument("unknown quasi-norm id: " + id);
}

std::string QuasiNormSpec::id() const {
  switch (kind) {
    case NormKind::Euclidean: return "euclidean";
    case NormKind::Koranyi: return "koranyi";
    case NormKind::WeightedMax: return "wmax";
  }
  return "?";
}

bool norm_compatible(const GroupDescriptor& g, const QuasiNormSpec& spec) {
  switch (spec.kind) {
    case NormKind::Euclidean: return g.law == GroupLaw::Abelian;
    case NormKind::Koranyi: return g.law == GroupLaw::Heisenberg;
    case NormKind::WeightedMax: return true;
  }
  return false;
}

void require_compatible(const GroupDescriptor& g, const QuasiNormSpec& spec) {
  if (!norm_compatible(g, spec))
    throw std::invalid_argument("quasi-norm '" + spec.id() + "' not defined on group '" + g.name +
                                "'");
}

static void check_dim(const GroupDescriptor& g, const Point& a, const char* what) {
  if (static_cast<int>(a.size()) != g.n)
    throw std::invalid_argument(std::string(what) + ": point dimension mismatch");
}

Point compose(const GroupDescriptor& g, const Point& a, const Point& b) {
  check_dim(g, a, "compose");
  check_dim(g, b, "compose");
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  if (g.law == GroupLaw::Heisenberg) c[2] += 0.5 * (a[0] * b[1] - a[1] * b[0]);
  return c;
}

Point inverse(const GroupDescriptor& g, const Point& a) {
  check_dim(g, a, "inverse");
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

Point dilate(const GroupDescriptor& g, double lambda, const Point& a) {
  check_dim(g, a, "dilate");
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::pow(lambda, g.weights[i]) * a[i];
  return c;
}

double quasi_norm(const GroupDescriptor& g, const QuasiNormSpec& spec, const Point& a) {
  check_dim(g, a, "quasi_norm");
  require_compatible(g, spec);
  switch (spec.kind) {
    case NormKind::Euclidean: {
      double s = 0.0;
      for (double v : a) s += v * v;
      return std::sqrt(s);
    }
    case NormKind::Koranyi: {
      const double r2 = a[0] * a[0] + a[1] * a[1];
      return std::pow(r2 * r2 + 16.0 * a[2] * a[2], 0.25);
    }
    case NormKind::WeightedMax: {
      double m = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::pow(std::abs(a[i]), 1.0 / g.weights[i]));
      return m;
    }
  }
  return 0.0;
}

double quasi_distance(const GroupDescriptor& g, const QuasiNormSpec& spec, const Point& x,
                      const Point& y) {
  return quasi_norm(g, spec, compose(g, inverse(g, y), x));
}

}  // namespace subfrac
