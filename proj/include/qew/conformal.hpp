// The one-parameter conformal rescaling
//   g~ = exp(-2f/(m~+n-2)) g,   f~ = m~/(m~+n-2) f,
// its two pointwise identities, and the associated lower bound for
// Ric_{f~}^{m~}(g~) under Ric_f >= 0 and a declared source law.
#pragma once

#include "qew/chart.hpp"
#include "qew/tensor_engine.hpp"
#include "qew/types.hpp"

namespace qew {

struct RescaleSpec {
  Weight m_tilde;  // finite
  int dim = 0;
  double exponent_metric = 0.0;     // -2/(m~+n-2)
  double exponent_potential = 0.0;  // m~/(m~+n-2)

  RescaleSpec(Weight m, int n);
  double p() const { return m_tilde.value() + dim - 2; }
};

// The source law Delta_f f = c1 exp(c2 f); c1 may be any real on input,
// nonnegativity is checked by consumers that need it.
struct SourceTerm {
  double c1 = 0.0;
  double c2 = 0.0;
};

// Exact chain-rule transform of all sample fields. Never re-differences.
ChartSample rescale_triple(const ChartSample& s, const RescaleSpec& spec);

// Undoes rescale_triple to machine precision.
ChartSample inverse_rescale(const ChartSample& s, const RescaleSpec& spec);

// Ric_{f~}^{m~}(g~) - [Ric + Hess f + (1/(m~+n-2)) df (x) df
//                      + (1/(m~+n-2)) (Delta_f f) g], as a matrix.
Mat change_identity_residual(const ChartSample& s, const RescaleSpec& spec);

// Delta~_{f~} u - exp(2f/(m~+n-2)) Delta_f u at the sample point.
double laplacian_identity_residual(const ChartSample& s, const RescaleSpec& spec,
                                   const ScalarJet& u);

struct CorollaryOptions {
  double tol = 1e-9;         // eigenvalue verdict tolerance (exact derivatives)
  double source_tol = 1e-6;  // consistency of the declared source law
};

struct CorollaryReport {
  double margin = 0.0;       // smallest eigenvalue of LHS - bound, relative to g~
  double ric_f_floor = 0.0;  // smallest eigenvalue of Ric_f relative to g
  double source_residual = 0.0;
  bool pass = false;
};

// Verifies Ric_{f~}^{m~}(g~) >= (c1/(m~+n-2)) exp((c2+2/(m~+n-2)) f) g~.
// Preconditions: Ric_f >= -tol (else HypothesisError) and the declared
// source law holds at the point (else NumericalError).
CorollaryReport corollary_lower_bound(const ChartSample& s, const RescaleSpec& spec,
                                      const SourceTerm& src,
                                      const CorollaryOptions& opts = {});

}  // namespace qew
