// The warped product gbar = g (+) exp(-2f/m) h on a product chart, the
// Einstein residual Ric(gbar) - lambda gbar, and the characteristic
// constant field mu(x) forced by the Bianchi identity.
#pragma once

#include "qew/chart.hpp"
#include "qew/tensor_engine.hpp"

namespace qew {

// An Einstein fiber (N^m, h) with Ric(h) = mu_h h, given by one chart and
// a sample point. The fiber dimension doubles as the weight m.
struct FiberSpec {
  int dim = 0;
  double einstein_constant = 0.0;  // mu_h
  Chart chart;
  Vec point;
  double tol = 1e-9;  // tolerance for the Ric(h) = mu_h h check
};

struct WarpedSample {
  ChartSample base;
  ChartSample fiber;
  ChartSample total;  // dimension n + m, block metric g (+) exp(-2f/m) h
};

// Builds the product chart sample with exact product/chain-rule derivative
// arrays. Throws DomainError if the fiber fails its Einstein check.
WarpedSample assemble(const ChartSample& base, const FiberSpec& fiber);

// Ric(gbar) - lambda gbar on the total chart.
Mat einstein_residual(const WarpedSample& ws, double lambda);

// mu(x) = -(Delta_f f - m lambda) exp(-2f/m) / m; constant on connected
// regions where Ric_f^m = lambda g holds (Kim-Kim).
double mu_field(const ChartSample& base, const Weight& m, double lambda);

}  // namespace qew
