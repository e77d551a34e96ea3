#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfrac/grid.hpp"
#include "subfrac/group.hpp"
#include "subfrac/operator.hpp"

namespace subfrac {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  std::string group = "abelian:1";
  std::string norm = "euclidean";
  double s = 0.4;
  double p = 2.0;
  double gamma = -1.0;  // negative: experiment picks an admissible default
  double theta = -1.0;
  int n = 64;
  double R = 1.0;
  int resolution = 64;
  std::uint64_t seed = 12345;
  bool deterministic = true;
  std::string out = "results";

  // flat key=value file; unknown keys are rejected
  static ExperimentConfig from_file(const std::string& path);
  void set(const std::string& key, const std::string& value);
  // sorted key=value serialization; hash is stable under field reordering
  std::string canonical() const;
  std::uint64_t hash() const;
  std::string run_id() const;
  void validate() const;  // throws ConfigError
};

struct ResultRow {
  std::string check_id;
  std::string group, norm;
  double s = 0.0, p = 0.0;
  double param = 0.0;  // gamma or theta or R, per check
  double lhs = 0.0, rhs = 0.0, margin = 0.0, tolerance = 0.0;
  bool pass = true;
};

// Runs the named experiment, writes <out>/<experiment>-<run_id>.csv and
// appends JSON lines to <out>/ledger.jsonl. Returns the rows.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// Summary tables + plot-data files derived from a ledger.
void write_report(const std::string& ledger_path, const std::string& out_dir);

// deterministic analytic test-function profiles supported on the quasi-norm
// annulus r_lo < q < r_hi, shared by experiments and tests
using Profile = std::function<double(const Point&)>;
std::vector<Profile> annulus_profiles(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                      int count, double r_lo, double r_hi);
std::vector<SampledFunction> annulus_family(const GroupDescriptor& g, const QuasiNormSpec& spec,
                                            const GridGeom& geom, int count,
                                            double r_lo, double r_hi);

}  // namespace subfrac
