#include "qew/warped.hpp"

#include <cmath>

namespace qew {

WarpedSample assemble(const ChartSample& base, const FiberSpec& fiber) {
  if (fiber.dim < 1) throw DomainError("fiber dimension must be >= 1");
  WarpedSample ws;
  ws.base = base;
  ws.fiber = sample_chart(fiber.chart, fiber.point);

  const WeightedCurvature fib_wc = curvature(ws.fiber);
  const double fib_err =
      sup_norm(fib_wc.ricci - fiber.einstein_constant * ws.fiber.metric);
  if (fib_err > fiber.tol)
    throw DomainError("fiber is not Einstein with the declared constant: residual " +
                      std::to_string(fib_err));

  const int n = base.dim, mf = fiber.dim, N = n + mf;
  const double m = static_cast<double>(mf);
  const double F = std::exp(-2.0 * base.potential / m);
  // dF_a = -(2/m) f_a F over base indices; ddF by the product rule.
  Vec dF(n);
  Mat ddF(n, n);
  for (int a = 0; a < n; ++a) dF[a] = -(2.0 / m) * base.potential_d1[a] * F;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      ddF(a, b) = F * ((4.0 / (m * m)) * base.potential_d1[a] * base.potential_d1[b] -
                       (2.0 / m) * base.potential_d2(a, b));

  ChartSample& t = ws.total;
  t.dim = N;
  t.point = Vec(N);
  t.point.head(n) = base.point;
  t.point.tail(mf) = ws.fiber.point;
  t.metric = Mat::Zero(N, N);
  t.metric_d1 = Ten3(N);
  t.metric_d2 = Ten4(N);
  t.potential = 0.0;
  t.potential_d1 = Vec::Zero(N);
  t.potential_d2 = Mat::Zero(N, N);

  // Base block: untouched by the warping.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.metric(a, b) = base.metric(a, b);
      for (int c = 0; c < n; ++c) {
        t.metric_d1(a, b, c) = base.metric_d1(a, b, c);
        for (int d = 0; d < n; ++d)
          t.metric_d2(a, b, c, d) = base.metric_d2(a, b, c, d);
      }
    }
  // Fiber block: F(x) h(y) with mixed derivatives from the product rule.
  for (int al = 0; al < mf; ++al)
    for (int be = 0; be < mf; ++be) {
      const double h = ws.fiber.metric(al, be);
      t.metric(n + al, n + be) = F * h;
      for (int c = 0; c < n; ++c) {
        t.metric_d1(n + al, n + be, c) = dF[c] * h;
        for (int d = 0; d < n; ++d)
          t.metric_d2(n + al, n + be, c, d) = ddF(c, d) * h;
        for (int ga = 0; ga < mf; ++ga) {
          t.metric_d2(n + al, n + be, c, n + ga) = dF[c] * ws.fiber.metric_d1(al, be, ga);
          t.metric_d2(n + al, n + be, n + ga, c) = t.metric_d2(n + al, n + be, c, n + ga);
        }
      }
      for (int ga = 0; ga < mf; ++ga) {
        t.metric_d1(n + al, n + be, n + ga) = F * ws.fiber.metric_d1(al, be, ga);
        for (int de = 0; de < mf; ++de)
          t.metric_d2(n + al, n + be, n + ga, n + de) =
              F * ws.fiber.metric_d2(al, be, ga, de);
      }
    }
  validate_sample(t);
  return ws;
}

Mat einstein_residual(const WarpedSample& ws, double lambda) {
  const WeightedCurvature wc = curvature(ws.total);
  return wc.ricci - lambda * ws.total.metric;
}

double mu_field(const ChartSample& base, const Weight& m, double lambda) {
  if (!m.is_finite()) throw ContractError("mu_field requires a finite weight");
  const double mv = m.value();
  const WeightedCurvature wc = weighted_tensors(base, m);
  return -(wc.drift_laplacian_f - mv * lambda) * std::exp(-2.0 * base.potential / mv) / mv;
}

}  // namespace qew
