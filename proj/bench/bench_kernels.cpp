// Timing comparison of the serial reference against the OpenMP pair kernels.
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "subfrac/eigen.hpp"
#include "subfrac/experiments.hpp"
#include "subfrac/operator.hpp"

using namespace subfrac;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

void bench_seminorm(const GroupDescriptor& g, const QuasiNormSpec& q, int n) {
  FracParams params{0.4, 2.0};
  if (g.law == GroupLaw::Heisenberg) params.s = 0.5;
  GridGeom geom(Box::centered(std::vector<double>(static_cast<std::size_t>(g.n),
                                                  g.law == GroupLaw::Heisenberg ? 2.0 : 2.0)),
                std::vector<int>(static_cast<std::size_t>(g.n), n));
  const SampledFunction u = annulus_family(g, q, geom, 1, 0.4, 1.8).front();

  QuadratureConfig cfg;
  double t0 = now();
  const double serial = gagliardo_seminorm_p_serial(g, q, params, u, cfg);
  double t1 = now();
  const double parallel = gagliardo_seminorm_p(g, q, params, u, cfg);
  double t2 = now();

  const double ts = t1 - t0, tp = t2 - t1;
  std::printf("%-12s %-10s n=%-4d serial %8.3fs  omp %8.3fs  speedup %5.2fx  %s\n",
              g.name.c_str(), q.id().c_str(), n, ts, tp, tp > 0 ? ts / tp : 0.0,
              serial == parallel ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int scale = argc > 1 ? std::stoi(argv[1]) : 1;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#endif
  bench_seminorm(GroupDescriptor::abelian(1), QuasiNormSpec::parse("euclidean"), 2048 * scale);
  bench_seminorm(GroupDescriptor::abelian(2), QuasiNormSpec::parse("euclidean"), 96 * scale);
  bench_seminorm(GroupDescriptor::abelian(2), QuasiNormSpec::parse("wmax"), 96 * scale);
  bench_seminorm(GroupDescriptor::heisenberg(), QuasiNormSpec::parse("koranyi"), 20 * scale);
  return 0;
}
