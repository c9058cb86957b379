#include "qew/conformal.hpp"

#include <cmath>

namespace qew {

RescaleSpec::RescaleSpec(Weight m, int n) : m_tilde(m), dim(n) {
  if (!m.is_finite()) throw DomainError("rescale weight must be finite");
  const double denom = m.value() + n - 2;
  if (!(denom > 0.0)) throw DomainError("rescale requires m + n - 2 > 0");
  exponent_metric = -2.0 / denom;
  exponent_potential = m.value() / denom;
}

namespace {

// g' = exp(a f) g, f' = c f, with exact chain-rule derivative arrays.
ChartSample transform(const ChartSample& s, double a, double c) {
  const int n = s.dim;
  const double E = std::exp(a * s.potential);
  ChartSample out;
  out.dim = n;
  out.point = s.point;
  out.metric = E * s.metric;
  out.metric_d1 = Ten3(n);
  out.metric_d2 = Ten4(n);
  const Vec& df = s.potential_d1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        out.metric_d1(i, j, k) = E * (a * df[k] * s.metric(i, j) + s.metric_d1(i, j, k));
        for (int l = 0; l < n; ++l) {
          out.metric_d2(i, j, k, l) =
              E * (a * a * df[k] * df[l] * s.metric(i, j) +
                   a * s.potential_d2(k, l) * s.metric(i, j) +
                   a * df[k] * s.metric_d1(i, j, l) + a * df[l] * s.metric_d1(i, j, k) +
                   s.metric_d2(i, j, k, l));
        }
      }
    }
  out.potential = c * s.potential;
  out.potential_d1 = c * s.potential_d1;
  out.potential_d2 = c * s.potential_d2;
  return out;
}

}  // namespace

ChartSample rescale_triple(const ChartSample& s, const RescaleSpec& spec) {
  if (spec.dim != s.dim) throw DomainError("rescale spec dimension mismatch");
  return transform(s, spec.exponent_metric, spec.exponent_potential);
}

ChartSample inverse_rescale(const ChartSample& s, const RescaleSpec& spec) {
  if (spec.dim != s.dim) throw DomainError("rescale spec dimension mismatch");
  const double a = spec.exponent_metric, c = spec.exponent_potential;
  return transform(s, -a / c, 1.0 / c);
}

Mat change_identity_residual(const ChartSample& s, const RescaleSpec& spec) {
  const WeightedCurvature lhs = weighted_tensors(rescale_triple(s, spec), spec.m_tilde);
  const WeightedCurvature wc = weighted_tensors(s, spec.m_tilde);
  const double invp = 1.0 / spec.p();
  const Mat rhs = wc.ricci + wc.hess_f +
                  invp * (s.potential_d1 * s.potential_d1.transpose()) +
                  invp * wc.drift_laplacian_f * s.metric;
  return lhs.bakry_emery - rhs;
}

double laplacian_identity_residual(const ChartSample& s, const RescaleSpec& spec,
                                   const ScalarJet& u) {
  const ChartSample rs = rescale_triple(s, spec);
  const Mat ginv_t = inverse_metric(rs.metric);
  const double lhs = drift_laplacian(rs, ginv_t, christoffel(rs, ginv_t), u);
  const Mat ginv = inverse_metric(s.metric);
  const double rhs = drift_laplacian(s, ginv, christoffel(s, ginv), u);
  return lhs - std::exp(-spec.exponent_metric * s.potential) * rhs;
}

CorollaryReport corollary_lower_bound(const ChartSample& s, const RescaleSpec& spec,
                                      const SourceTerm& src, const CorollaryOptions& opts) {
  CorollaryReport rep;
  const WeightedCurvature wc = weighted_tensors(s, Weight::infinite());
  rep.ric_f_floor = min_eigenvalue_rel(wc.bakry_emery, s.metric);
  if (rep.ric_f_floor < -opts.tol)
    throw HypothesisError("corollary hypothesis Ric_f >= 0 fails: floor " +
                          std::to_string(rep.ric_f_floor));
  const double source_value = src.c1 * std::exp(src.c2 * s.potential);
  rep.source_residual = std::abs(wc.drift_laplacian_f - source_value);
  if (rep.source_residual > opts.source_tol * std::max(1.0, std::abs(source_value)))
    throw NumericalError("declared source law does not hold at the point: residual " +
                         std::to_string(rep.source_residual));

  const ChartSample rs = rescale_triple(s, spec);
  const WeightedCurvature wct = weighted_tensors(rs, spec.m_tilde);
  const double invp = 1.0 / spec.p();
  const Mat bound = src.c1 * invp *
                    std::exp((src.c2 + 2.0 * invp) * s.potential) * rs.metric;
  rep.margin = min_eigenvalue_rel(wct.bakry_emery - bound, rs.metric);
  rep.pass = rep.margin >= -opts.tol;
  return rep;
}

}  // namespace qew
