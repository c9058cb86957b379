#include "qew/batch.hpp"

namespace qew {

std::vector<WeightedCurvature> grid_weighted(const Chart& chart, const std::vector<Vec>& points,
                                             const Weight& m, Exec mode) {
  std::vector<WeightedCurvature> out(points.size());
  parallel_map(points.size(), mode, [&](std::size_t i) {
    out[i] = weighted_tensors(sample_chart(chart, points[i]), m);
  });
  return out;
}

std::vector<double> cross_oracle_residuals(const std::vector<CrossOracleCase>& cases,
                                           Exec mode) {
  std::vector<double> out(cases.size());
  parallel_map(cases.size(), mode, [&](std::size_t i) {
    out[i] = cross_oracle_residual(cases[i].spec, cases[i].state);
  });
  return out;
}

std::vector<Profile> sweep_shoot(const std::vector<SweepCase>& cases, double r_max,
                                 const ShootOptions& opts, Exec mode) {
  std::vector<Profile> out(cases.size());
  parallel_map(cases.size(), mode, [&](std::size_t i) {
    out[i] = shoot(cases[i].spec, cases[i].shoot_param, r_max, opts);
  });
  return out;
}

}  // namespace qew
