// Pointwise curvature and weighted-curvature evaluation on chart samples:
// Christoffel symbols, Ricci via the Riemann trace, the Bakry-Emery tensor
// Ric_f^m = Ric + Hess f - (1/m) df (x) df, drift Laplacian, and the
// finite-difference Bochner residual.
#pragma once

#include <optional>

#include "qew/chart.hpp"
#include "qew/types.hpp"

namespace qew {

struct WeightedCurvature {
  Ten3 christoffel;        // (k,i,j) = Gamma^k_ij
  Mat ricci;
  double scalar = 0.0;     // R = g^{ij} Ric_ij
  Mat hess_f;              // covariant Hessian of f
  double laplacian_f = 0.0;
  double grad_f_sq = 0.0;  // |grad f|^2_g
  double drift_laplacian_f = 0.0;  // Delta_f f = Delta f - |grad f|^2
  Mat bakry_emery;         // Ric_f^m
};

// Inverse of an SPD metric; throws DomainError naming the offending
// eigenvalue if g is not positive definite.
Mat inverse_metric(const Mat& g);

// Gamma^k_ij = 1/2 g^{kl}(d_i g_jl + d_j g_il - d_l g_ij).
Ten3 christoffel(const ChartSample& s, const Mat& ginv);

// Christoffel, Ricci, and scalar curvature only (no potential terms).
WeightedCurvature curvature(const ChartSample& s);

// All WeightedCurvature fields; with m infinite the quadratic term drops.
WeightedCurvature weighted_tensors(const ChartSample& s, const Weight& m);

// Smallest eigenvalue of a symmetric bilinear form relative to the metric.
double min_eigenvalue_rel(const Mat& form, const Mat& g);

// Covariant Laplacian and drift Laplacian of a scalar jet at a sample.
double laplacian(const ChartSample& s, const Mat& ginv, const Ten3& gamma,
                 const ScalarJet& u);
double drift_laplacian(const ChartSample& s, const Mat& ginv, const Ten3& gamma,
                       const ScalarJet& u);

struct BochnerResult {
  double residual = 0.0;
  // Set when h is small enough that roundoff dominates the stencils.
  bool conditioning_warning = false;
};

// Residual of the weighted Bochner formula at x:
//   1/2 Delta_f |grad u|^2 - |Hess u|^2 - <grad u, grad Delta_f u>
//   - Ric_f^m(grad u, grad u) - (1/m) <grad f, grad u>^2,
// with the outer derivatives of |grad u|^2 and Delta_f u formed by central
// differences of step h. Second order in h on analytic charts.
BochnerResult bochner_residual(const Chart& chart, const ScalarField& u, const Weight& m,
                               const Vec& x, double h);

}  // namespace qew
