// Coordinate charts and pointwise samples of (g, f) with derivatives to
// second order. A chart may carry exact derivative callbacks; otherwise it
// is sampled by second-order central finite differences.
#pragma once

#include <functional>
#include <optional>

#include "qew/types.hpp"

namespace qew {

// Metric, potential, and their derivatives to second order at one chart point.
struct ChartSample {
  int dim = 0;
  Vec point;
  Mat metric;         // g_ij
  Ten3 metric_d1;     // (i,j,k) = ∂_k g_ij
  Ten4 metric_d2;     // (i,j,k,l) = ∂_k ∂_l g_ij
  double potential = 0.0;
  Vec potential_d1;   // ∂_i f
  Mat potential_d2;   // ∂_i ∂_j f
};

// Throws DomainError if symmetry or finiteness invariants are broken.
void validate_sample(const ChartSample& s);

// Value and first/second derivatives of a scalar at a point.
struct ScalarJet {
  double value = 0.0;
  Vec d1;
  Mat d2;
};

// A scalar function on the chart domain, with optional exact derivatives.
struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> d1;  // may be empty
  std::function<Mat(const Vec&)> d2;  // may be empty

  bool has_exact() const { return static_cast<bool>(d1) && static_cast<bool>(d2); }
  ScalarJet jet(const Vec& x, double h) const;
};

// A coordinate chart: g and f as functions of the point, with optional
// exact derivative callbacks used in place of differencing when present.
struct Chart {
  int dim = 0;
  std::function<Mat(const Vec&)> metric;
  std::function<double(const Vec&)> potential;
  std::function<Ten3(const Vec&)> metric_d1;       // may be empty
  std::function<Ten4(const Vec&)> metric_d2;       // may be empty
  std::function<Vec(const Vec&)> potential_d1;     // may be empty
  std::function<Mat(const Vec&)> potential_d2;     // may be empty

  bool has_exact() const {
    return metric_d1 && metric_d2 && potential_d1 && potential_d2;
  }
};

// Default differencing step: 1e-4 of the coordinate scale at x.
double default_step(const Vec& x);

// Evaluate the chart at x, using exact callbacks when present and
// second-order central stencils of step h otherwise.
ChartSample sample_chart(const Chart& chart, const Vec& x, double h);
inline ChartSample sample_chart(const Chart& chart, const Vec& x) {
  return sample_chart(chart, x, default_step(x));
}

// Drops the exact derivative callbacks, forcing stencil sampling.
Chart strip_derivatives(const Chart& chart);

}  // namespace qew
