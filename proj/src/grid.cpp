#include "subfrac/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subfrac {

double Box::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
  return v;
}

Box Box::centered(const std::vector<double>& half_extents) {
  Box b;
  for (double e : half_extents) {
    b.lo.push_back(-e);
    b.hi.push_back(e);
  }
  return b;
}

bool Box::contains(const double* x) const {
  for (std::size_t k = 0; k < lo.size(); ++k)
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  return true;
}

GridGeom::GridGeom(Box b, std::vector<int> counts) : box(std::move(b)), n(std::move(counts)) {
  if (box.dim() != static_cast<int>(n.size()))
    throw std::invalid_argument("GridGeom: box/count dimension mismatch");
  for (int c : n)
    if (c < 1) throw std::invalid_argument("GridGeom: counts must be positive");
  h.resize(n.size());
  for (std::size_t k = 0; k < n.size(); ++k)
    h[k] = (box.hi[k] - box.lo[k]) / static_cast<double>(n[k]);
}

std::size_t GridGeom::size() const {
  std::size_t s = 1;
  for (int c : n) s *= static_cast<std::size_t>(c);
  return s;
}

double GridGeom::cell_volume() const {
  double v = 1.0;
  for (double hk : h) v *= hk;
  return v;
}

double GridGeom::min_h() const {
  double m = h[0];
  for (double hk : h) m = std::min(m, hk);
  return m;
}

void GridGeom::coords(std::size_t flat, double* out) const {
  for (int k = dim() - 1; k >= 0; --k) {
    const std::size_t nk = static_cast<std::size_t>(n[static_cast<std::size_t>(k)]);
    const std::size_t ik = flat % nk;
    flat /= nk;
    out[k] = box.lo[static_cast<std::size_t>(k)] +
             (static_cast<double>(ik) + 0.5) * h[static_cast<std::size_t>(k)];
  }
}

Point GridGeom::point(std::size_t flat) const {
  Point p(static_cast<std::size_t>(dim()));
  coords(flat, p.data());
  return p;
}

std::size_t GridGeom::flat_index(const std::vector<int>& multi) const {
  if (static_cast<int>(multi.size()) != dim())
    throw std::invalid_argument("flat_index: dimension mismatch");
  std::size_t f = 0;
  for (std::size_t k = 0; k < multi.size(); ++k) {
    if (multi[k] < 0 || multi[k] >= n[k]) throw std::out_of_range("flat_index: out of range");
    f = f * static_cast<std::size_t>(n[k]) + static_cast<std::size_t>(multi[k]);
  }
  return f;
}

std::vector<double> GridGeom::points() const {
  const std::size_t m = size();
  const int d = dim();
  std::vector<double> pts(m * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < m; ++i) coords(i, pts.data() + i * static_cast<std::size_t>(d));
  return pts;
}

bool GridGeom::on_margin(std::size_t flat, int layers) const {
  for (int k = dim() - 1; k >= 0; --k) {
    const std::size_t nk = static_cast<std::size_t>(n[static_cast<std::size_t>(k)]);
    const int ik = static_cast<int>(flat % nk);
    flat /= nk;
    if (ik < layers || ik >= n[static_cast<std::size_t>(k)] - layers) return true;
  }
  return false;
}

GridGeom GridGeom::dilated(const GroupDescriptor& g, double lambda) const {
  if (g.n != dim()) throw std::invalid_argument("dilated: group dimension mismatch");
  Box b;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double s = std::pow(lambda, g.weights[k]);
    b.lo.push_back(box.lo[k] * s);
    b.hi.push_back(box.hi[k] * s);
  }
  return GridGeom(b, n);
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double SampledFunction::lp_norm_p(double p) const {
  double s = 0.0;
  for (double v : values)
    if (v != 0.0) s += std::pow(std::abs(v), p);
  return s * geom.cell_volume();
}

void SampledFunction::validate() const {
  if (values.size() != geom.size())
    throw std::invalid_argument("SampledFunction: value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("SampledFunction: non-finite value");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0.0 && geom.on_margin(i, support_margin))
      throw std::invalid_argument("SampledFunction: nonzero value on the support margin");
}

SampledFunction sample(const GroupDescriptor& g, const GridGeom& geom,
                       const std::function<double(const Point&)>& f, int support_margin) {
  SampledFunction u;
  u.group_id = g.name;
  u.geom = geom;
  u.support_margin = support_margin;
  u.values.resize(geom.size());
  Point p(static_cast<std::size_t>(geom.dim()));
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    geom.coords(i, p.data());
    u.values[i] = geom.on_margin(i, support_margin) ? 0.0 : f(p);
  }
  u.validate();
  return u;
}

SampledFunction truncate(const SampledFunction& u, double level) {
  SampledFunction t = u;
  for (double& v : t.values) v = std::max(std::min(v, level), -level);
  return t;
}

void save_csv(const std::string& path, const SampledFunction& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open " + path);
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "# group=" << u.group_id << "\n";
  out << "# margin=" << u.support_margin << "\n";
  out << "# box=";
  for (int k = 0; k < u.geom.dim(); ++k)
    out << (k ? ";" : "") << fmt(u.geom.box.lo[static_cast<std::size_t>(k)]) << ","
        << fmt(u.geom.box.hi[static_cast<std::size_t>(k)]);
  out << "\n# n=";
  for (int k = 0; k < u.geom.dim(); ++k)
    out << (k ? ";" : "") << u.geom.n[static_cast<std::size_t>(k)];
  out << "\n# h=";
  for (int k = 0; k < u.geom.dim(); ++k)
    out << (k ? ";" : "") << fmt(u.geom.h[static_cast<std::size_t>(k)]);
  out << "\n";
  for (double v : u.values) out << fmt(v) << "\n";
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

SampledFunction load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path);
  SampledFunction u;
  Box box;
  std::vector<int> counts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string val = line.substr(eq + 1);
      if (key == "group") u.group_id = val;
      else if (key == "margin") u.support_margin = std::stoi(val);
      else if (key == "box") {
        for (const auto& part : split(val, ';')) {
          const auto lohi = split(part, ',');
          if (lohi.size() != 2) throw std::runtime_error("load_csv: bad box header");
          box.lo.push_back(std::stod(lohi[0]));
          box.hi.push_back(std::stod(lohi[1]));
        }
      } else if (key == "n") {
        for (const auto& part : split(val, ';')) counts.push_back(std::stoi(part));
      }
      continue;
    }
    u.values.push_back(std::stod(line));
  }
  if (counts.empty()) throw std::runtime_error("load_csv: missing grid header");
  u.geom = GridGeom(box, counts);
  u.validate();
  return u;
}

}  // namespace subfrac
