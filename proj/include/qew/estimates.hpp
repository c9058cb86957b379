// Analytic estimate checks on radial data: the gradient bound
// |grad f|^2(x) <= 2n(m+n+6)/a^2 with its proof barrier
// (a^2-d^2)^2 |grad f|^2, the Laplacian comparison Delta_f r <= (m+n-1)/r,
// the steady-soliton rescaling workflow, and conformal lengths.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qew/batch.hpp"
#include "qew/conformal.hpp"
#include "qew/shooting.hpp"

namespace qew {

// A geodesic ball on a radial profile: |r - center_r| < a.
struct BallSpec {
  double center_r = 0.0;
  double a = 1.0;
};

// Radial data with second derivatives; produced either from a Profile (via
// the ODE right-hand sides) or from the conformal rescaling chain rule.
struct RadialNode {
  double r = 0.0;
  double w = 1.0, wp = 0.0, wpp = 0.0;
  double f = 0.0, fp = 0.0, fpp = 0.0;
};

struct RadialGeometry {
  int n = 1;
  std::vector<RadialNode> nodes;  // increasing r
};

RadialGeometry profile_geometry(const Profile& p);

// Arc-length-gauge geometry of (g~, f~) = (e^{-2f/(m~+n-2)} g, m~ f/(m~+n-2)):
// r~ = int e^{-f/(m~+n-2)} dr, w~ = e^{-f/(m~+n-2)} w, all derivatives by
// exact chain rule. Never re-differences.
RadialGeometry rescale_profile(const Profile& p, const Weight& m_tilde);

struct EstimateReport {
  double bound = 0.0;
  double observed = 0.0;
  double margin = 0.0;  // bound - observed
  bool pass = false;
  double witness = 0.0;  // radius of the supremum
};

struct HypothesisStatus {
  double ric_floor = 0.0;  // min eigenvalue of Ric_f^m relative to g over the domain
  std::optional<double> source_floor;  // inf of phi' + (2/n) phi over the ball f-range
  bool ric_ok = false;
};

struct EstimateOptions {
  double tol_rel = 1e-9;  // verdict tolerance, relative to the bound
  double hyp_tol = 1e-7;
  bool enforce_ric = true;  // HypothesisError on Ric_f^m < 0 when set
  std::optional<SourceTerm> declared_source;
  Exec exec = Exec::Parallel;
};

double gradient_bound_constant(int n, double m);  // 2n(m+n+6)

struct GradientEstimateResult {
  EstimateReport center;   // |grad f|^2(center) vs 2n(m+n+6)/a^2
  EstimateReport barrier;  // sup (a^2-d^2)^2 |grad f|^2 vs 2n(m+n+6)a^2
  HypothesisStatus hyp;
  bool pass = false;
};

// Profile flavor derives the source term from (m, lambda, mu) and reports
// its margin; a declared SourceTerm is verified instead (and enforced).
GradientEstimateResult gradient_estimate_check(const Profile& p, const BallSpec& ball,
                                               const EstimateOptions& opts = {});
GradientEstimateResult gradient_estimate_check(
    const RadialGeometry& geom, const Weight& m, const BallSpec& ball,
    const EstimateOptions& opts = {},
    std::optional<std::pair<double, double>> lambda_mu = std::nullopt);

struct LaplacianComparisonResult {
  EstimateReport report;  // observed = sup of Delta_f r - (m+n-1)/r, bound = 0
  HypothesisStatus hyp;
};

LaplacianComparisonResult laplacian_comparison_check(const RadialGeometry& geom,
                                                     const Weight& m,
                                                     const EstimateOptions& opts = {});
LaplacianComparisonResult laplacian_comparison_check(const Profile& p,
                                                     const EstimateOptions& opts = {});

// g-length of the g~-unit-speed radial segment [t0, t1] (arc-length units):
// int exp(f~/m~) dt by adaptive quadrature to relative tolerance 1e-8.
double conformal_length(const Profile& p, const Weight& m_tilde, double t0, double t1);

// C = sqrt(8n(m+n+6)), the completeness-threshold constant.
double rescale_threshold_constant(int n, double m_tilde);

// Smallest integer m~ with sqrt(8n(m~+n+6)) < m~ (exact integer arithmetic).
int minimal_rescale_weight(int n);

struct WorkflowCheck {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct WorkflowOptions {
  double tol = 1e-6;  // margin tolerance for the composite checks
  std::optional<BallSpec> ball;  // rescaled arc-length units; default mid-range
  double seg_t0 = 0.0, seg_t1 = 5.0;
  std::optional<int> expected_min_m_tilde;
  Exec exec = Exec::Parallel;
};

struct WorkflowReport {
  std::vector<WorkflowCheck> checks;
  int minimal_m_tilde = 0;
  double conformal_length_value = 0.0;
  bool pass = false;
};

// The full rescaling workflow on a steady soliton run: Ric_f >= 0 gate,
// the Corollary lower bound pointwise, the C/m~ threshold, the gradient
// and Laplacian checks on the rescaled data, and the conformal length.
WorkflowReport soliton_rescale_workflow(const Profile& p, const Weight& m_tilde,
                                        const WorkflowOptions& opts = {});

}  // namespace qew
