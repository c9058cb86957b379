#include "qew/shooting.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>
#include <cmath>
#include <cstdio>

#include "qew/charts.hpp"
#include "qew/tensor_engine.hpp"

namespace qew {

std::string Classification::str() const {
  auto with_rstar = [&](const char* name) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s(r*=%.6g)", name, r_star.value());
    return std::string(buf);
  };
  switch (kind) {
    case ProfileClass::Trivial:
      return "trivial";
    case ProfileClass::CompleteToHorizon:
      return "complete-to-horizon";
    case ProfileClass::PotentialBlowUp:
      return with_rstar("potential-blow-up");
    case ProfileClass::WarpingDegenerate:
      return with_rstar("warping-degenerate");
  }
  return "unknown";
}

OdeRhs ode_rhs(const ProfileState& st, const QuasiEinsteinSpec& spec) {
  const double eps = spec.m.reciprocal();
  OdeRhs rhs;
  if (spec.n == 1) {
    rhs.wpp = 0.0;
    rhs.fpp = spec.lambda + eps * st.fp * st.fp;
    return rhs;
  }
  if (!(st.w > 0.0)) throw DomainError("ode_rhs requires w > 0");
  rhs.wpp = -spec.lambda * st.w + st.wp * st.fp -
            (spec.n - 2) * (st.wp * st.wp - 1.0) / st.w;
  rhs.fpp = spec.lambda + eps * st.fp * st.fp + (spec.n - 1) * rhs.wpp / st.w;
  return rhs;
}

ProfileState series_seed(const QuasiEinsteinSpec& spec, double s, double eps0, double f0) {
  if (spec.n < 2) throw ContractError("series seed needs n >= 2; the line model seeds at r = 0");
  const double w3 = (2.0 * s - spec.lambda) / (6.0 * (spec.n - 1));
  ProfileState st;
  st.r = eps0;
  st.w = eps0 + w3 * eps0 * eps0 * eps0;
  st.wp = 1.0 + 3.0 * w3 * eps0 * eps0;
  st.f = f0 + s * eps0 * eps0;
  st.fp = 2.0 * s * eps0;
  return st;
}

double series_seed_residual(const QuasiEinsteinSpec& spec, double s, double eps0, double f0,
                            std::optional<double> w3_override) {
  const double w3 = w3_override.value_or((2.0 * s - spec.lambda) / (6.0 * (spec.n - 1)));
  ProfileState st;
  st.r = eps0;
  st.w = eps0 + w3 * eps0 * eps0 * eps0;
  st.wp = 1.0 + 3.0 * w3 * eps0 * eps0;
  st.f = f0 + s * eps0 * eps0;
  st.fp = 2.0 * s * eps0;
  const OdeRhs rhs = ode_rhs(st, spec);
  return std::abs(6.0 * w3 * eps0 - rhs.wpp) + std::abs(2.0 * s - rhs.fpp);
}

namespace {

using State = std::array<double, 4>;  // w, wp, f, fp

bool all_finite(const State& x) {
  return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]) &&
         std::isfinite(x[3]);
}

// Least-squares line through (r_i, 1/fp_i); its root estimates the pole.
std::optional<double> fit_pole(const std::vector<ProfileState>& states) {
  const size_t k = states.size();
  if (k < 3) return std::nullopt;
  double sr = 0, sy = 0, srr = 0, sry = 0;
  for (size_t i = k - 3; i < k; ++i) {
    const double r = states[i].r, y = 1.0 / states[i].fp;
    sr += r;
    sy += y;
    srr += r * r;
    sry += r * y;
  }
  const double denom = 3.0 * srr - sr * sr;
  if (denom == 0.0) return std::nullopt;
  const double slope = (3.0 * sry - sr * sy) / denom;
  if (slope == 0.0) return std::nullopt;
  const double rbar = sr / 3.0, ybar = sy / 3.0;
  return rbar - ybar / slope;
}

double model_warping(int n, double lambda, double r) {
  if (lambda == 0.0) return r;
  const double k = std::sqrt(std::abs(lambda) / (n - 1));
  return lambda > 0.0 ? std::sin(k * r) / k : std::sinh(k * r) / k;
}

}  // namespace

Classification classify_solution(const Profile& p) {
  Classification cl;
  const auto& st = p.states;
  if (st.empty()) throw DomainError("cannot classify an empty profile");
  switch (p.stop) {
    case StopReason::WarpingZero: {
      cl.kind = ProfileClass::WarpingDegenerate;
      const ProfileState& last = st.back();
      // Crossing hint from the integrator, else linear zero extrapolation.
      if (p.r_star_hint)
        cl.r_star = *p.r_star_hint;
      else
        cl.r_star = (last.wp < 0.0) ? last.r - last.w / last.wp : last.r;
      return cl;
    }
    case StopReason::FpThreshold: {
      cl.kind = ProfileClass::PotentialBlowUp;
      cl.r_star = fit_pole(st).value_or(st.back().r);
      return cl;
    }
    case StopReason::StepCollapse: {
      const ProfileState& last = st.back();
      const size_t k = st.size();
      const bool fp_growing =
          k >= 3 && std::abs(st[k - 1].fp) > std::abs(st[k - 2].fp) &&
          std::abs(st[k - 2].fp) > std::abs(st[k - 3].fp) && std::abs(last.fp) > 1e3;
      if (fp_growing) {
        cl.kind = ProfileClass::PotentialBlowUp;
        cl.r_star = fit_pole(st).value_or(last.r);
        return cl;
      }
      if (p.spec.n >= 2 && last.wp < 0.0 && last.w < 0.05 * (1.0 + std::abs(last.r))) {
        cl.kind = ProfileClass::WarpingDegenerate;
        cl.r_star = last.r - last.w / last.wp;
        return cl;
      }
      throw NumericalError("integrator step collapse with no singularity pattern at r = " +
                           std::to_string(last.r));
    }
    case StopReason::ReachedRMax:
      break;
  }
  double sup_fp = 0.0, sup_w_err = 0.0, sup_w = 0.0;
  for (const ProfileState& s : st) {
    sup_fp = std::max(sup_fp, std::abs(s.fp));
    sup_w = std::max(sup_w, std::abs(s.w));
  }
  if (p.spec.n >= 2)
    for (const ProfileState& s : st)
      sup_w_err = std::max(sup_w_err,
                           std::abs(s.w - model_warping(p.spec.n, p.spec.lambda, s.r)));
  const bool lambda_consistent =
      p.spec.n == 1 ? std::abs(p.spec.lambda) < 1e-14
                    : sup_w_err <= 1e-6 * std::max(1.0, sup_w);
  if (sup_fp < p.options.trivial_tol && lambda_consistent)
    cl.kind = ProfileClass::Trivial;
  else
    cl.kind = ProfileClass::CompleteToHorizon;
  return cl;
}

Profile shoot(const QuasiEinsteinSpec& spec, double s, double r_max,
              const ShootOptions& opts) {
  if (spec.n < 1) throw DomainError("base dimension must be >= 1");
  Profile p;
  p.spec = spec;
  p.shoot_param = s;
  p.options = opts;

  State x;
  double r;
  if (spec.n == 1) {
    x = {1.0, 0.0, opts.f0, s};
    r = 0.0;
    p.seed_residual = 0.0;
  } else {
    if (!(opts.eps0 > 0.0) || opts.eps0 >= r_max)
      throw DomainError("seed offset must satisfy 0 < eps0 < r_max");
    const ProfileState seed = series_seed(spec, s, opts.eps0, opts.f0);
    x = {seed.w, seed.wp, seed.f, seed.fp};
    r = opts.eps0;
    p.seed_residual = series_seed_residual(spec, s, opts.eps0, opts.f0);
    if (p.seed_residual > 1e-5 * std::max({1.0, std::abs(s), std::abs(spec.lambda)}))
      throw NumericalError("series seed residual unexpectedly large: " +
                           std::to_string(p.seed_residual));
  }

  auto system = [&spec](const State& y, State& dydr, double) {
    ProfileState st;
    st.w = y[0];
    st.wp = y[1];
    st.f = y[2];
    st.fp = y[3];
    dydr[0] = y[1];
    dydr[2] = y[3];
    if (spec.n == 1) {
      dydr[1] = 0.0;
      dydr[3] = spec.lambda + spec.m.reciprocal() * y[3] * y[3];
      return;
    }
    // Evaluated raw (no positivity guard): rejected trial steps may probe
    // w <= 0; accepted states are checked by the outer loop.
    const double wpp = -spec.lambda * y[0] + y[1] * y[3] -
                       (spec.n - 2) * (y[1] * y[1] - 1.0) / y[0];
    dydr[1] = wpp;
    dydr[3] = spec.lambda + spec.m.reciprocal() * y[3] * y[3] +
              (spec.n - 1) * wpp / y[0];
  };

  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled(opts.atol, opts.rtol, ode::runge_kutta_dopri5<State>());

  auto push = [&p](double rr, const State& y) {
    p.states.push_back(ProfileState{rr, y[0], y[1], y[2], y[3]});
  };
  push(r, x);

  double dt = std::min(opts.max_step, 1e-3);
  const double min_step = 1e-13;
  p.stop = StopReason::ReachedRMax;
  while (r < r_max - 1e-12) {
    dt = std::min({dt, opts.max_step, r_max - r});
    State x_prev = x;
    const double r_prev = r;
    ode::controlled_step_result res;
    try {
      res = stepper.try_step(system, x, r, dt);
    } catch (const std::exception&) {
      p.stop = StopReason::StepCollapse;
      break;
    }
    if (res == ode::fail) {
      if (dt < min_step) {
        p.stop = StopReason::StepCollapse;
        break;
      }
      continue;
    }
    if (!all_finite(x)) {
      x = x_prev;
      r = r_prev;
      p.stop = StopReason::StepCollapse;
      break;
    }
    if (spec.n >= 2 && x[0] <= 0.0) {
      // Warping hit zero inside the step: locate the crossing and stop,
      // keeping the grid strictly pre-degenerate.
      const double frac = x_prev[0] / (x_prev[0] - x[0]);
      p.r_star_hint = r_prev + frac * (r - r_prev);
      p.stop = StopReason::WarpingZero;
      break;
    }
    push(r, x);
    if (std::abs(x[3]) >= opts.blowup_threshold) {
      p.stop = StopReason::FpThreshold;
      break;
    }
  }

  p.classification = classify_solution(p);
  p.mu = profile_mu(p);
  return p;
}

double ansatz_scalar_curvature(int n, const ProfileState& st, double wpp) {
  if (n == 1) return 0.0;
  return -2.0 * (n - 1) * wpp / st.w +
         (n - 1) * (n - 2) * (1.0 - st.wp * st.wp) / (st.w * st.w);
}

double ansatz_drift_laplacian(int n, const ProfileState& st, double fpp) {
  const double lap = (n == 1) ? fpp : fpp + (n - 1) * (st.wp / st.w) * st.fp;
  return lap - st.fp * st.fp;
}

double mu_pointwise(const QuasiEinsteinSpec& spec, const ProfileState& st) {
  const OdeRhs rhs = ode_rhs(st, spec);
  const double drift = ansatz_drift_laplacian(spec.n, st, rhs.fpp);
  if (spec.m.is_finite()) {
    const double m = spec.m.value();
    return -(drift - m * spec.lambda) * std::exp(-2.0 * st.f / m) / m;
  }
  return -(drift + 2.0 * spec.lambda * st.f);
}

namespace {

MuEstimate mu_over_grid(const Profile& p, MuTag tag,
                        const std::function<double(const ProfileState&)>& point) {
  if (p.states.empty()) throw DomainError("empty profile");
  std::vector<double> vals;
  vals.reserve(p.states.size());
  for (const ProfileState& st : p.states) vals.push_back(point(st));
  const double mean =
      std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
  double dev = 0.0;
  for (double v : vals) dev = std::max(dev, std::abs(v - mean));
  return MuEstimate{mean, dev, tag};
}

}  // namespace

MuEstimate profile_mu(const Profile& p) {
  const MuTag tag = p.spec.m.is_finite() ? MuTag::FromEq12 : MuTag::FromEq13;
  return mu_over_grid(p, tag,
                      [&](const ProfileState& st) { return mu_pointwise(p.spec, st); });
}

MuEstimate steady_invariant(const Profile& p) {
  if (p.spec.m.is_finite() || p.spec.lambda != 0.0)
    throw ContractError("steady invariant requires m = inf and lambda = 0");
  return mu_over_grid(p, MuTag::FromRPlusGrad, [&](const ProfileState& st) {
    const OdeRhs rhs = ode_rhs(st, p.spec);
    return ansatz_scalar_curvature(p.spec.n, st, rhs.wpp) + st.fp * st.fp;
  });
}

MuEstimate chart_engine_mu(const Profile& p) {
  if (p.states.empty()) throw DomainError("empty profile");
  const size_t stride = std::max<size_t>(1, p.states.size() / 32);
  std::vector<double> vals;
  for (size_t i = 0; i < p.states.size(); i += stride) {
    const ProfileState& st = p.states[i];
    const ChartSample cs = profile_chart_sample(p.spec, st);
    const WeightedCurvature wc = weighted_tensors(cs, p.spec.m);
    if (p.spec.m.is_finite()) {
      const double m = p.spec.m.value();
      vals.push_back(-(wc.drift_laplacian_f - m * p.spec.lambda) *
                     std::exp(-2.0 * st.f / m) / m);
    } else {
      vals.push_back(-(wc.drift_laplacian_f + 2.0 * p.spec.lambda * st.f));
    }
  }
  const double mean =
      std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
  double dev = 0.0;
  for (double v : vals) dev = std::max(dev, std::abs(v - mean));
  return MuEstimate{mean, dev, p.spec.m.is_finite() ? MuTag::FromEq12 : MuTag::FromEq13};
}

ChartSample profile_chart_sample(const QuasiEinsteinSpec& spec, const ProfileState& st) {
  const OdeRhs rhs = ode_rhs(st, spec);
  AnsatzNode node{st.r, st.w, st.wp, rhs.wpp, st.f, st.fp, rhs.fpp};
  return ansatz_sample(spec.n, node);
}

double cross_oracle_residual(const QuasiEinsteinSpec& spec, const ProfileState& st) {
  const ChartSample cs = profile_chart_sample(spec, st);
  const WeightedCurvature wc = weighted_tensors(cs, spec.m);
  return sup_norm(wc.bakry_emery - spec.lambda * cs.metric);
}

ProfileState interpolate(const Profile& p, double r) {
  const auto& st = p.states;
  if (st.empty()) throw DomainError("empty profile");
  if (r < st.front().r - 1e-12 || r > st.back().r + 1e-12)
    throw DomainError("interpolation radius outside the computed range");
  r = std::clamp(r, st.front().r, st.back().r);
  auto it = std::lower_bound(st.begin(), st.end(), r,
                             [](const ProfileState& a, double rr) { return a.r < rr; });
  if (it == st.begin()) return st.front();
  if (it == st.end()) return st.back();
  const ProfileState &a = *(it - 1), &b = *it;
  const double dr = b.r - a.r;
  const double t = (r - a.r) / dr;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t),
               h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  auto hermite = [&](double va, double da, double vb, double db) {
    return h00 * va + h10 * dr * da + h01 * vb + h11 * dr * db;
  };
  const OdeRhs ra = ode_rhs(a, p.spec), rb = ode_rhs(b, p.spec);
  ProfileState out;
  out.r = r;
  out.w = hermite(a.w, a.wp, b.w, b.wp);
  out.f = hermite(a.f, a.fp, b.f, b.fp);
  out.wp = hermite(a.wp, ra.wpp, b.wp, rb.wpp);
  out.fp = hermite(a.fp, ra.fpp, b.fp, rb.fpp);
  return out;
}

}  // namespace qew
