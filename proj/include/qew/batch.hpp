// Data-parallel kernels. Every kernel fills per-index slots and reduces
// serially afterwards, so the OpenMP and serial paths produce bit-identical
// results; the serial path is the reference implementation used in tests
// and the benchmark.
#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "qew/chart.hpp"
#include "qew/shooting.hpp"
#include "qew/tensor_engine.hpp"

namespace qew {

enum class Exec { Serial, Parallel };

// Runs body(i) for i in [0, count). Exceptions are captured per index and
// the lowest-index one is rethrown, matching serial order.
template <class F>
void parallel_map(std::size_t count, Exec mode, F&& body) {
  if (mode == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errs(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errs[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < count; ++i)
    if (errs[i]) std::rethrow_exception(errs[i]);
}

// Bakry-Emery tensors over a cloud of chart points.
std::vector<WeightedCurvature> grid_weighted(const Chart& chart, const std::vector<Vec>& points,
                                             const Weight& m, Exec mode);

// Chart-engine residual of Ric_f^m = lambda g at random ansatz states; the
// cross-oracle gate for the ODE reduction.
struct CrossOracleCase {
  QuasiEinsteinSpec spec;
  ProfileState state;
};
std::vector<double> cross_oracle_residuals(const std::vector<CrossOracleCase>& cases,
                                           Exec mode);

// Independent shooting runs over a list of (shoot parameter, weight) pairs.
struct SweepCase {
  QuasiEinsteinSpec spec;
  double shoot_param = 0.0;
};
std::vector<Profile> sweep_shoot(const std::vector<SweepCase>& cases, double r_max,
                                 const ShootOptions& opts, Exec mode);

}  // namespace qew
