#include "qew/estimates.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "qew/charts.hpp"

namespace qew {

namespace {

ChartSample node_sample(int n, const RadialNode& nd) {
  AnsatzNode a{nd.r, nd.w, nd.wp, nd.wpp, nd.f, nd.fp, nd.fpp};
  return ansatz_sample(n, a);
}

double hermite01(double t, double va, double da, double vb, double db, double dr) {
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t),
               h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * va + h10 * dr * da + h01 * vb + h11 * dr * db;
}

// Hermite interpolation of (value, derivative) node data at radius r.
double interp_nodes(const std::vector<RadialNode>& nodes, double r,
                    double RadialNode::*value, double RadialNode::*deriv) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), r,
                             [](const RadialNode& a, double rr) { return a.r < rr; });
  if (it == nodes.begin()) return nodes.front().*value;
  if (it == nodes.end()) return nodes.back().*value;
  const RadialNode &a = *(it - 1), &b = *it;
  const double dr = b.r - a.r;
  return hermite01((r - a.r) / dr, a.*value, a.*deriv, b.*value, b.*deriv, dr);
}

}  // namespace

RadialGeometry profile_geometry(const Profile& p) {
  RadialGeometry g;
  g.n = p.spec.n;
  g.nodes.reserve(p.states.size());
  for (const ProfileState& st : p.states) {
    const OdeRhs rhs = ode_rhs(st, p.spec);
    g.nodes.push_back(RadialNode{st.r, st.w, st.wp, rhs.wpp, st.f, st.fp, rhs.fpp});
  }
  return g;
}

RadialGeometry rescale_profile(const Profile& p, const Weight& m_tilde) {
  const RescaleSpec spec(m_tilde, p.spec.n);
  const double sigma = 0.5 * spec.exponent_metric;  // -1/(m~+n-2)
  const double alpha = spec.exponent_potential;
  const RadialGeometry orig = profile_geometry(p);
  RadialGeometry out;
  out.n = orig.n;
  out.nodes.resize(orig.nodes.size());
  double rt = orig.nodes.front().r * std::exp(sigma * orig.nodes.front().f);
  for (size_t i = 0; i < orig.nodes.size(); ++i) {
    const RadialNode& nd = orig.nodes[i];
    const double E = std::exp(sigma * nd.f);
    if (i > 0) {
      // Arc length by Simpson with a Hermite midpoint; the integrand is
      // exp(sigma f), smooth along the profile.
      const RadialNode& prev = orig.nodes[i - 1];
      const double dr = nd.r - prev.r;
      const double fmid = hermite01(0.5, prev.f, prev.fp, nd.f, nd.fp, dr);
      const double Eprev = std::exp(sigma * prev.f);
      const double Emid = std::exp(sigma * fmid);
      rt += dr / 6.0 * (Eprev + 4.0 * Emid + E);
    }
    RadialNode& o = out.nodes[i];
    o.r = rt;
    o.w = E * nd.w;
    o.wp = sigma * nd.fp * nd.w + nd.wp;
    o.wpp = (sigma * nd.fpp * nd.w + sigma * nd.fp * nd.wp + nd.wpp) / E;
    o.f = alpha * nd.f;
    o.fp = alpha * nd.fp / E;
    o.fpp = alpha * (nd.fpp - sigma * nd.fp * nd.fp) / (E * E);
  }
  return out;
}

double gradient_bound_constant(int n, double m) { return 2.0 * n * (m + n + 6.0); }

namespace {

struct BallSlice {
  size_t lo = 0, hi = 0;  // node index range [lo, hi]
};

BallSlice ball_nodes(const RadialGeometry& geom, const BallSpec& ball) {
  if (!(ball.a > 0.0)) throw DomainError("ball radius must be positive");
  const double lo = ball.center_r - ball.a, hi = ball.center_r + ball.a;
  const double first = geom.nodes.front().r, last = geom.nodes.back().r;
  // The seed hole [0, eps0) counts as inside the range.
  const bool lo_ok = lo >= -1e-12 && (lo >= first - 1e-12 || first <= 1e-3);
  if (!lo_ok || hi > last + 1e-12)
    throw DomainError("ball does not lie inside the computed range");
  BallSlice s;
  s.lo = std::lower_bound(geom.nodes.begin(), geom.nodes.end(), lo,
                          [](const RadialNode& a, double rr) { return a.r < rr; }) -
         geom.nodes.begin();
  s.hi = std::upper_bound(geom.nodes.begin(), geom.nodes.end(), hi,
                          [](double rr, const RadialNode& a) { return rr < a.r; }) -
         geom.nodes.begin();
  if (s.hi < s.lo + 3) throw DomainError("ball contains too few grid nodes");
  --s.hi;
  return s;
}

double ric_floor(const RadialGeometry& geom, const Weight& m, size_t lo, size_t hi,
                 Exec exec) {
  std::vector<double> floors(hi - lo + 1);
  parallel_map(floors.size(), exec, [&](size_t k) {
    const ChartSample cs = node_sample(geom.n, geom.nodes[lo + k]);
    const WeightedCurvature wc = weighted_tensors(cs, m);
    floors[k] = min_eigenvalue_rel(wc.bakry_emery, cs.metric);
  });
  return *std::min_element(floors.begin(), floors.end());
}

}  // namespace

GradientEstimateResult gradient_estimate_check(
    const RadialGeometry& geom, const Weight& m, const BallSpec& ball,
    const EstimateOptions& opts, std::optional<std::pair<double, double>> lambda_mu) {
  if (!m.is_finite())
    throw ContractError("the gradient estimate requires a finite weight");
  const double mv = m.value();
  const int n = geom.n;
  const BallSlice slice = ball_nodes(geom, ball);

  GradientEstimateResult res;
  res.hyp.ric_floor = ric_floor(geom, m, slice.lo, slice.hi, opts.exec);
  res.hyp.ric_ok = res.hyp.ric_floor >= -opts.hyp_tol;
  if (opts.enforce_ric && !res.hyp.ric_ok)
    throw HypothesisError("Ric_f^m >= 0 fails on the ball: floor " +
                          std::to_string(res.hyp.ric_floor));

  if (opts.declared_source) {
    const SourceTerm& src = *opts.declared_source;
    if (src.c1 < 0.0 || src.c2 < 0.0)
      throw HypothesisError("declared source term needs c1, c2 >= 0");
    double worst = 0.0;
    for (size_t i = slice.lo; i <= slice.hi; ++i) {
      const RadialNode& nd = geom.nodes[i];
      const double drift = ansatz_drift_laplacian(n, {nd.r, nd.w, nd.wp, nd.f, nd.fp}, nd.fpp);
      worst = std::max(worst, std::abs(drift - src.c1 * std::exp(src.c2 * nd.f)));
    }
    if (worst > 1e-6 * std::max(1.0, std::abs(src.c1)))
      throw NumericalError("declared source law fails on the ball: residual " +
                           std::to_string(worst));
    res.hyp.source_floor = src.c1 * (src.c2 + 2.0 / n);  // at f = 0; >= 0 either way
  } else if (lambda_mu) {
    // phi(t) = m lambda - m mu e^{2t/m}; report inf of phi' + (2/n) phi
    // over the f-range of the ball. Monotone in t, so endpoints suffice.
    const double lambda = lambda_mu->first, mu = lambda_mu->second;
    double fmin = geom.nodes[slice.lo].f, fmax = fmin;
    for (size_t i = slice.lo; i <= slice.hi; ++i) {
      fmin = std::min(fmin, geom.nodes[i].f);
      fmax = std::max(fmax, geom.nodes[i].f);
    }
    auto margin = [&](double t) {
      return (2.0 * mv / n) * lambda - 2.0 * mu * (1.0 + mv / n) * std::exp(2.0 * t / mv);
    };
    res.hyp.source_floor = std::min(margin(fmin), margin(fmax));
  }

  const double K = gradient_bound_constant(n, mv);

  // Center bound.
  const double fp_c = interp_nodes(geom.nodes, ball.center_r, &RadialNode::fp,
                                   &RadialNode::fpp);
  res.center.bound = K / (ball.a * ball.a);
  res.center.observed = fp_c * fp_c;
  res.center.margin = res.center.bound - res.center.observed;
  res.center.witness = ball.center_r;
  res.center.pass = res.center.margin >= -opts.tol_rel * res.center.bound;

  // Barrier bound: grid supremum with local quadratic refinement.
  auto barrier = [&](size_t i) {
    const RadialNode& nd = geom.nodes[i];
    const double d = nd.r - ball.center_r;
    const double q = ball.a * ball.a - d * d;
    return q * q * nd.fp * nd.fp;
  };
  size_t imax = slice.lo;
  double fmaxv = barrier(slice.lo);
  for (size_t i = slice.lo; i <= slice.hi; ++i) {
    const double v = barrier(i);
    if (v > fmaxv) {
      fmaxv = v;
      imax = i;
    }
  }
  double sup = fmaxv;
  double witness = geom.nodes[imax].r;
  if (imax > slice.lo && imax < slice.hi) {
    // Newton-form parabola through the maximizer and its neighbors;
    // grid-only suprema under-report peaks.
    const double r0 = geom.nodes[imax - 1].r, r1 = geom.nodes[imax].r,
                 r2 = geom.nodes[imax + 1].r;
    const double v0 = barrier(imax - 1), v1 = fmaxv, v2 = barrier(imax + 1);
    const double f01 = (v1 - v0) / (r1 - r0);
    const double f012 = ((v2 - v1) / (r2 - r1) - f01) / (r2 - r0);
    if (f012 < 0.0) {
      const double rv = 0.5 * (r0 + r1) - f01 / (2.0 * f012);
      if (rv > r0 && rv < r2) {
        const double vv = v0 + (rv - r0) * f01 + (rv - r0) * (rv - r1) * f012;
        if (vv > sup) {
          sup = vv;
          witness = rv;
        }
      }
    }
  }
  res.barrier.bound = K * ball.a * ball.a;
  res.barrier.observed = sup;
  res.barrier.margin = res.barrier.bound - sup;
  res.barrier.witness = witness;
  res.barrier.pass = res.barrier.margin >= -opts.tol_rel * res.barrier.bound;

  res.pass = res.center.pass && res.barrier.pass;
  return res;
}

GradientEstimateResult gradient_estimate_check(const Profile& p, const BallSpec& ball,
                                               const EstimateOptions& opts) {
  return gradient_estimate_check(profile_geometry(p), p.spec.m, ball, opts,
                                 std::make_pair(p.spec.lambda, p.mu.value));
}

LaplacianComparisonResult laplacian_comparison_check(const RadialGeometry& geom,
                                                     const Weight& m,
                                                     const EstimateOptions& opts) {
  if (!m.is_finite())
    throw ContractError("the Laplacian comparison requires a finite weight");
  const double mv = m.value();
  const int n = geom.n;
  LaplacianComparisonResult res;
  res.hyp.ric_floor = ric_floor(geom, m, 0, geom.nodes.size() - 1, opts.exec);
  res.hyp.ric_ok = res.hyp.ric_floor >= -opts.hyp_tol;
  if (opts.enforce_ric && !res.hyp.ric_ok)
    throw HypothesisError("Ric_f^m >= 0 fails on the domain: floor " +
                          std::to_string(res.hyp.ric_floor));
  double worst = -std::numeric_limits<double>::infinity();
  double witness = geom.nodes.front().r;
  for (const RadialNode& nd : geom.nodes) {
    if (!(nd.r > 0.0)) continue;
    const double lap_r = (n == 1) ? 0.0 : (n - 1) * nd.wp / nd.w;
    const double v = lap_r - nd.fp - (mv + n - 1) / nd.r;
    if (v > worst) {
      worst = v;
      witness = nd.r;
    }
  }
  res.report.bound = 0.0;
  res.report.observed = worst;
  res.report.margin = -worst;
  res.report.witness = witness;
  res.report.pass = worst <= opts.tol_rel;  // absolute tolerance for this check
  return res;
}

LaplacianComparisonResult laplacian_comparison_check(const Profile& p,
                                                     const EstimateOptions& opts) {
  return laplacian_comparison_check(profile_geometry(p), p.spec.m, opts);
}

double conformal_length(const Profile& p, const Weight& m_tilde, double t0, double t1) {
  if (!(t1 >= t0)) throw DomainError("segment must satisfy t1 >= t0");
  const RadialGeometry geom = rescale_profile(p, m_tilde);
  const double first = geom.nodes.front().r, last = geom.nodes.back().r;
  // t0 may dip into the seed hole below the first node when it is tiny.
  if (t0 < -1e-12 || (t0 < first - 1e-12 && first > 1e-3) || t1 > last + 1e-9)
    throw DomainError("segment outside the computed range");
  const double mt = m_tilde.value();
  auto integrand = [&](double t) {
    const double ft = (t <= first) ? geom.nodes.front().f
                                   : interp_nodes(geom.nodes, t, &RadialNode::f,
                                                  &RadialNode::fp);
    return std::exp(ft / mt);
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, t0, t1, 12, 1e-8, &error);
  if (!std::isfinite(value))
    throw NumericalError("conformal length quadrature failed");
  return value;
}

double rescale_threshold_constant(int n, double m_tilde) {
  return std::sqrt(8.0 * n * (m_tilde + n + 6.0));
}

int minimal_rescale_weight(int n) {
  for (long long mt = 1;; ++mt)
    if (mt * mt > 8LL * n * (mt + n + 6)) return static_cast<int>(mt);
}

WorkflowReport soliton_rescale_workflow(const Profile& p, const Weight& m_tilde,
                                        const WorkflowOptions& opts) {
  if (p.spec.m.is_finite() || p.spec.lambda != 0.0)
    throw ContractError("the rescaling workflow takes a steady soliton run");
  if (!m_tilde.is_finite()) throw ContractError("rescale weight must be finite");

  WorkflowReport rep;
  auto add = [&rep](const std::string& name, double value, double tol, bool pass) {
    rep.checks.push_back(WorkflowCheck{name, value, tol, pass});
  };

  const RadialGeometry orig = profile_geometry(p);

  // Gate: Ric_f >= 0 on the original steady profile.
  const double floor0 = ric_floor(orig, Weight::infinite(), 0, orig.nodes.size() - 1,
                                  opts.exec);
  if (floor0 < -opts.tol)
    throw HypothesisError("workflow requires Ric_f >= 0 on the profile: floor " +
                          std::to_string(floor0));
  add("ric-f-floor-original", floor0, opts.tol, true);

  // Corollary lower bound, pointwise through the conformal module.
  const double mu = p.mu.value;
  const SourceTerm src{-mu, 0.0};
  const RescaleSpec rspec(m_tilde, p.spec.n);
  const size_t stride = std::max<size_t>(1, orig.nodes.size() / 64);
  std::vector<size_t> idx;
  for (size_t i = 0; i < orig.nodes.size(); i += stride) idx.push_back(i);
  std::vector<double> margins(idx.size());
  parallel_map(idx.size(), opts.exec, [&](size_t k) {
    const ChartSample cs = node_sample(orig.n, orig.nodes[idx[k]]);
    const CorollaryReport cr =
        corollary_lower_bound(cs, rspec, src, CorollaryOptions{opts.tol, 1e-5});
    margins[k] = cr.margin;
  });
  const double cor_margin = *std::min_element(margins.begin(), margins.end());
  add("corollary-2.2-lower-bound", cor_margin, opts.tol, cor_margin >= -opts.tol);

  // Completeness threshold C/m~ < 1 and the minimal integer weight.
  const double mt = m_tilde.value();
  const double ratio = rescale_threshold_constant(p.spec.n, mt) / mt;
  add("threshold-C-over-m", ratio, 1.0, ratio < 1.0);
  rep.minimal_m_tilde = minimal_rescale_weight(p.spec.n);
  if (opts.expected_min_m_tilde)
    add("minimal-m-tilde", rep.minimal_m_tilde, *opts.expected_min_m_tilde,
        rep.minimal_m_tilde == *opts.expected_min_m_tilde);
  else
    add("minimal-m-tilde", rep.minimal_m_tilde, 0.0, true);

  // Estimates on the rescaled geometry; hypothesis floors are reported,
  // not enforced (the rescaled data cannot satisfy them when mu > 0).
  const RadialGeometry resc = rescale_profile(p, m_tilde);
  BallSpec ball;
  if (opts.ball) {
    ball = *opts.ball;
  } else {
    const double lo = resc.nodes.front().r, hi = resc.nodes.back().r;
    ball.center_r = 0.5 * (lo + hi);
    ball.a = 0.45 * (hi - lo);
  }
  EstimateOptions eopts;
  eopts.enforce_ric = false;
  eopts.hyp_tol = opts.tol;
  eopts.exec = opts.exec;
  const GradientEstimateResult ge = gradient_estimate_check(resc, m_tilde, ball, eopts);
  add("rescaled-ric-floor-reported", ge.hyp.ric_floor, 0.0, true);
  add("rescaled-gradient-center", ge.center.margin, opts.tol, ge.center.pass);
  add("rescaled-gradient-barrier", ge.barrier.margin, opts.tol, ge.barrier.pass);

  EstimateOptions lopts = eopts;
  lopts.tol_rel = opts.tol;
  const LaplacianComparisonResult lc = laplacian_comparison_check(resc, m_tilde, lopts);
  add("rescaled-laplacian-comparison", lc.report.observed, opts.tol, lc.report.pass);

  const double t1 = std::min(opts.seg_t1, resc.nodes.back().r);
  rep.conformal_length_value = conformal_length(p, m_tilde, opts.seg_t0, t1);
  add("conformal-length-finite", rep.conformal_length_value,
      std::numeric_limits<double>::infinity(),
      std::isfinite(rep.conformal_length_value));

  rep.pass = true;
  for (const WorkflowCheck& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace qew
