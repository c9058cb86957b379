// Cohomogeneity-one reduction of Ric_f^m = lambda g under the ansatz
// g = dr^2 + w(r)^2 g_{S^{n-1}}, f = f(r): right-hand sides, smooth-closure
// series seeds, adaptive shooting with singularity classification, and the
// characteristic constant mu computed along profiles.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qew/chart.hpp"
#include "qew/types.hpp"

namespace qew {

struct QuasiEinsteinSpec {
  int n = 3;        // base dimension (1 = line model, no sphere factor)
  Weight m;         // weight, (0, inf]
  double lambda = 0.0;
};

struct ProfileState {
  double r = 0.0;
  double w = 1.0, wp = 0.0;
  double f = 0.0, fp = 0.0;
};

enum class ProfileClass { Trivial, CompleteToHorizon, PotentialBlowUp, WarpingDegenerate };

struct Classification {
  ProfileClass kind = ProfileClass::Trivial;
  std::optional<double> r_star;  // set for blow-up / degeneration
  std::string str() const;
};

enum class MuTag { FromEq12, FromEq13, FromRPlusGrad };

struct MuEstimate {
  double value = 0.0;          // grid mean
  double max_deviation = 0.0;  // max |mu(r) - mean|
  MuTag tag = MuTag::FromEq12;
};

enum class StopReason { ReachedRMax, FpThreshold, StepCollapse, WarpingZero };

struct ShootOptions {
  double eps0 = 1e-4;     // seed offset from the w = 0 coordinate singularity
  double f0 = 0.0;        // f(0)
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.02;
  double blowup_threshold = 1e8;  // |f'| level that declares divergence
  double trivial_tol = 1e-9;      // sup|f'| under which a run can be trivial
};

struct Profile {
  QuasiEinsteinSpec spec;
  double shoot_param = 0.0;
  ShootOptions options;
  std::vector<ProfileState> states;  // increasing r
  StopReason stop = StopReason::ReachedRMax;
  std::optional<double> r_star_hint;  // located singular radius, when detected
  Classification classification;
  MuEstimate mu;  // headline: eq (1.2) for finite m, eq (1.3) for m = inf
  double seed_residual = 0.0;
};

struct OdeRhs {
  double wpp = 0.0, fpp = 0.0;
};

// w'' = -lambda w + w' f' - (n-2)(w'^2 - 1)/w,
// f'' = lambda + (1/m) f'^2 + (n-1) w''/w; n = 1 degenerates to
// f'' = lambda + (1/m) f'^2 with no w equation.
OdeRhs ode_rhs(const ProfileState& st, const QuasiEinsteinSpec& spec);

// State at r = eps0 from w = r + w3 r^3, f = f0 + s r^2 with the
// compatibility relation 2s - 6(n-1) w3 = lambda.
ProfileState series_seed(const QuasiEinsteinSpec& spec, double s, double eps0,
                         double f0 = 0.0);

// ODE residual of the series seed at eps0; O(eps0^2) when compatible.
// w3_override breaks compatibility on purpose (negative controls).
double series_seed_residual(const QuasiEinsteinSpec& spec, double s, double eps0,
                            double f0 = 0.0,
                            std::optional<double> w3_override = std::nullopt);

// Adaptive integration from the seed to r_max or a detected singularity.
Profile shoot(const QuasiEinsteinSpec& spec, double s, double r_max,
              const ShootOptions& opts = {});

// Re-derives the classification from the stored states and stop reason.
Classification classify_solution(const Profile& p);

// Headline mu over the grid: eq (1.2) for finite m, eq (1.3) for m = inf.
MuEstimate profile_mu(const Profile& p);

// R + f'^2 for steady soliton runs (m = inf, lambda = 0 only).
MuEstimate steady_invariant(const Profile& p);

// Same formula as profile_mu but with Delta_f f taken from the chart
// engine on the polar chart; independent of the ode_rhs algebra.
MuEstimate chart_engine_mu(const Profile& p);

// Ansatz scalar curvature and drift Laplacian at a state.
double ansatz_scalar_curvature(int n, const ProfileState& st, double wpp);
double ansatz_drift_laplacian(int n, const ProfileState& st, double fpp);

// Pointwise headline mu at one state (used for CSV export).
double mu_pointwise(const QuasiEinsteinSpec& spec, const ProfileState& st);

// Polar-chart bridge: exact ChartSample at a state, with second
// derivatives filled from ode_rhs.
ChartSample profile_chart_sample(const QuasiEinsteinSpec& spec, const ProfileState& st);

// sup-norm of Ric_f^m - lambda g evaluated by the chart engine at the
// state; the mandatory cross-oracle for the reduction formulas.
double cross_oracle_residual(const QuasiEinsteinSpec& spec, const ProfileState& st);

// Cubic Hermite interpolation of the profile at radius r.
ProfileState interpolate(const Profile& p, double r);

}  // namespace qew
