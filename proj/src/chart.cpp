#include "qew/chart.hpp"

#include <cmath>

namespace qew {

void validate_sample(const ChartSample& s) {
  const int n = s.dim;
  if (n < 1) throw DomainError("chart sample dimension must be >= 1");
  if (s.point.size() != n || s.metric.rows() != n || s.metric.cols() != n ||
      s.potential_d1.size() != n || s.potential_d2.rows() != n ||
      s.metric_d1.dim() != n || s.metric_d2.dim() != n)
    throw DomainError("chart sample field dimensions disagree");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!s.metric.allFinite() || !s.potential_d1.allFinite() ||
      !s.potential_d2.allFinite() || !finite(s.potential))
    throw DomainError("chart sample contains non-finite values");
  const double scale = std::max(1.0, s.metric.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  if (sup_norm(s.metric - s.metric.transpose()) > tol)
    throw DomainError("metric is not symmetric");
  if (sup_norm(s.potential_d2 - s.potential_d2.transpose()) > tol)
    throw DomainError("potential Hessian data is not symmetric");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < n; ++k) {
        if (std::abs(s.metric_d1(i, j, k) - s.metric_d1(j, i, k)) > tol)
          throw DomainError("metric_d1 not symmetric in (i,j)");
        for (int l = 0; l < n; ++l)
          if (std::abs(s.metric_d2(i, j, k, l) - s.metric_d2(j, i, k, l)) > tol ||
              std::abs(s.metric_d2(i, j, k, l) - s.metric_d2(i, j, l, k)) > tol)
            throw DomainError("metric_d2 symmetry broken");
      }
}

double default_step(const Vec& x) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  return 1e-4 * scale;
}

ScalarJet ScalarField::jet(const Vec& x, double h) const {
  const int n = static_cast<int>(x.size());
  ScalarJet j;
  j.value = value(x);
  if (has_exact()) {
    j.d1 = d1(x);
    j.d2 = d2(x);
    return j;
  }
  j.d1 = Vec::Zero(n);
  j.d2 = Mat::Zero(n, n);
  const double f0 = j.value;
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const double fp = value(xp), fm = value(xm);
    j.d1[k] = (fp - fm) / (2.0 * h);
    j.d2(k, k) = (fp - 2.0 * f0 + fm) / (h * h);
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[k] += h; xpp[l] += h;
      xpm[k] += h; xpm[l] -= h;
      xmp[k] -= h; xmp[l] += h;
      xmm[k] -= h; xmm[l] -= h;
      const double v = (value(xpp) - value(xpm) - value(xmp) + value(xmm)) / (4.0 * h * h);
      j.d2(k, l) = v;
      j.d2(l, k) = v;
    }
  return j;
}

namespace {

Ten3 fd_metric_d1(const Chart& c, const Vec& x, double h) {
  const int n = c.dim;
  Ten3 d1(n);
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Mat gp = c.metric(xp), gm = c.metric(xm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d1(i, j, k) = (gp(i, j) - gm(i, j)) / (2.0 * h);
  }
  return d1;
}

Ten4 fd_metric_d2(const Chart& c, const Vec& x, double h) {
  const int n = c.dim;
  Ten4 d2(n);
  const Mat g0 = c.metric(x);
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Mat gp = c.metric(xp), gm = c.metric(xm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d2(i, j, k, k) = (gp(i, j) - 2.0 * g0(i, j) + gm(i, j)) / (h * h);
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[k] += h; xpp[l] += h;
      xpm[k] += h; xpm[l] -= h;
      xmp[k] -= h; xmp[l] += h;
      xmm[k] -= h; xmm[l] -= h;
      const Mat m = (c.metric(xpp) - c.metric(xpm) - c.metric(xmp) + c.metric(xmm)) / (4.0 * h * h);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          d2(i, j, k, l) = m(i, j);
          d2(i, j, l, k) = m(i, j);
        }
    }
  return d2;
}

}  // namespace

ChartSample sample_chart(const Chart& chart, const Vec& x, double h) {
  if (chart.dim != x.size()) throw DomainError("point dimension does not match chart");
  ChartSample s;
  s.dim = chart.dim;
  s.point = x;
  s.metric = chart.metric(x);
  s.potential = chart.potential(x);

  if (chart.metric_d1 && chart.metric_d2) {
    s.metric_d1 = chart.metric_d1(x);
    s.metric_d2 = chart.metric_d2(x);
  } else {
    s.metric_d1 = fd_metric_d1(chart, x, h);
    s.metric_d2 = fd_metric_d2(chart, x, h);
  }

  if (chart.potential_d1 && chart.potential_d2) {
    s.potential_d1 = chart.potential_d1(x);
    s.potential_d2 = chart.potential_d2(x);
  } else {
    ScalarField f{chart.potential, nullptr, nullptr};
    ScalarJet j = f.jet(x, h);
    s.potential_d1 = j.d1;
    s.potential_d2 = j.d2;
  }
  validate_sample(s);
  return s;
}

Chart strip_derivatives(const Chart& chart) {
  Chart c;
  c.dim = chart.dim;
  c.metric = chart.metric;
  c.potential = chart.potential;
  return c;
}

}  // namespace qew
