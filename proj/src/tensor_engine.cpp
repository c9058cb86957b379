#include "qew/tensor_engine.hpp"

#include <cmath>
#include <sstream>

namespace qew {

Mat inverse_metric(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.info() != Eigen::Success) throw NumericalError("metric eigendecomposition failed");
  const Vec& ev = es.eigenvalues();
  const double floor = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev[0] <= floor) {
    std::ostringstream msg;
    msg << "metric not positive definite: eigenvalue " << ev[0];
    throw DomainError(msg.str());
  }
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

Ten3 christoffel(const ChartSample& s, const Mat& ginv) {
  const int n = s.dim;
  Ten3 gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = 0.0;
        for (int l = 0; l < n; ++l)
          v += ginv(k, l) *
               (s.metric_d1(j, l, i) + s.metric_d1(i, l, j) - s.metric_d1(i, j, l));
        gamma(k, i, j) = 0.5 * v;
        gamma(k, j, i) = gamma(k, i, j);
      }
  return gamma;
}

namespace {

// d_m Gamma^k_ij from the sample's second metric derivatives.
// d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}.
Ten4 christoffel_d1(const ChartSample& s, const Mat& ginv) {
  const int n = s.dim;
  // dginv(k,l,m) = d_m g^{kl}
  Ten3 dginv(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        double v = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) v += ginv(k, a) * s.metric_d1(a, b, m) * ginv(b, l);
        dginv(k, l, m) = -v;
      }
  Ten4 dgamma(n);  // (k,i,j,m) = d_m Gamma^k_ij
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
          double v = 0.0;
          for (int l = 0; l < n; ++l) {
            v += dginv(k, l, m) *
                 (s.metric_d1(j, l, i) + s.metric_d1(i, l, j) - s.metric_d1(i, j, l));
            v += ginv(k, l) * (s.metric_d2(j, l, i, m) + s.metric_d2(i, l, j, m) -
                               s.metric_d2(i, j, l, m));
          }
          dgamma(k, i, j, m) = 0.5 * v;
        }
  return dgamma;
}

}  // namespace

WeightedCurvature curvature(const ChartSample& s) {
  const int n = s.dim;
  const Mat ginv = inverse_metric(s.metric);
  WeightedCurvature wc;
  wc.christoffel = christoffel(s, ginv);
  const Ten4 dgamma = christoffel_d1(s, ginv);

  // Ric_jk = d_i Gamma^i_jk - d_j Gamma^i_ik + Gamma^i_im Gamma^m_jk
  //          - Gamma^i_jm Gamma^m_ik
  wc.ricci = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        v += dgamma(i, j, k, i) - dgamma(i, i, k, j);
        for (int m = 0; m < n; ++m)
          v += wc.christoffel(i, i, m) * wc.christoffel(m, j, k) -
               wc.christoffel(i, j, m) * wc.christoffel(m, i, k);
      }
      wc.ricci(j, k) = v;
      wc.ricci(k, j) = v;
    }
  wc.scalar = (ginv * wc.ricci).trace();
  return wc;
}

WeightedCurvature weighted_tensors(const ChartSample& s, const Weight& m) {
  const int n = s.dim;
  WeightedCurvature wc = curvature(s);
  const Mat ginv = inverse_metric(s.metric);
  wc.hess_f = s.potential_d2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) wc.hess_f(i, j) -= wc.christoffel(k, i, j) * s.potential_d1[k];
  wc.laplacian_f = (ginv * wc.hess_f).trace();
  wc.grad_f_sq = s.potential_d1.dot(ginv * s.potential_d1);
  wc.drift_laplacian_f = wc.laplacian_f - wc.grad_f_sq;
  wc.bakry_emery = wc.ricci + wc.hess_f -
                   m.reciprocal() * (s.potential_d1 * s.potential_d1.transpose());
  return wc;
}

double min_eigenvalue_rel(const Mat& form, const Mat& g) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(form, g);
  if (es.info() != Eigen::Success) throw NumericalError("generalized eigensolve failed");
  return es.eigenvalues()[0];
}

double laplacian(const ChartSample& s, const Mat& ginv, const Ten3& gamma,
                 const ScalarJet& u) {
  const int n = s.dim;
  double v = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double hess = u.d2(i, j);
      for (int k = 0; k < n; ++k) hess -= gamma(k, i, j) * u.d1[k];
      v += ginv(i, j) * hess;
    }
  return v;
}

double drift_laplacian(const ChartSample& s, const Mat& ginv, const Ten3& gamma,
                       const ScalarJet& u) {
  return laplacian(s, ginv, gamma, u) - s.potential_d1.dot(ginv * u.d1);
}

namespace {

// |grad u|^2 as a scalar function of the chart point.
double grad_sq_at(const Chart& chart, const ScalarField& u, const Vec& y, double h) {
  const Mat ginv = inverse_metric(chart.metric(y));
  Vec du;
  if (u.d1) {
    du = u.d1(y);
  } else {
    du = Vec::Zero(y.size());
    for (int k = 0; k < y.size(); ++k) {
      Vec yp = y, ym = y;
      yp[k] += h;
      ym[k] -= h;
      du[k] = (u.value(yp) - u.value(ym)) / (2.0 * h);
    }
  }
  return du.dot(ginv * du);
}

// Delta_f u as a scalar function of the chart point.
double drift_lap_at(const Chart& chart, const ScalarField& u, const Vec& y, double h) {
  const ChartSample s = sample_chart(chart, y, h);
  const Mat ginv = inverse_metric(s.metric);
  const Ten3 gamma = christoffel(s, ginv);
  return drift_laplacian(s, ginv, gamma, u.jet(y, h));
}

}  // namespace

BochnerResult bochner_residual(const Chart& chart, const ScalarField& u, const Weight& m,
                               const Vec& x, double h) {
  const int n = chart.dim;
  if (!(h > 0.0)) throw DomainError("differencing step must be positive");

  const ChartSample s0 = sample_chart(chart, x, h);
  const Mat ginv = inverse_metric(s0.metric);
  const WeightedCurvature wc = weighted_tensors(s0, m);
  const ScalarJet uj = u.jet(x, h);

  // Outer stencils of the two derived scalar fields.
  auto phi1 = [&](const Vec& y) { return grad_sq_at(chart, u, y, h); };
  auto phi2 = [&](const Vec& y) { return drift_lap_at(chart, u, y, h); };

  const double p10 = phi1(x);
  Vec d_phi1 = Vec::Zero(n), d_phi2 = Vec::Zero(n);
  Mat dd_phi1 = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const double pp = phi1(xp), pm = phi1(xm);
    d_phi1[k] = (pp - pm) / (2.0 * h);
    dd_phi1(k, k) = (pp - 2.0 * p10 + pm) / (h * h);
    d_phi2[k] = (phi2(xp) - phi2(xm)) / (2.0 * h);
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[k] += h; xpp[l] += h;
      xpm[k] += h; xpm[l] -= h;
      xmp[k] -= h; xmp[l] += h;
      xmm[k] -= h; xmm[l] -= h;
      const double v = (phi1(xpp) - phi1(xpm) - phi1(xmp) + phi1(xmm)) / (4.0 * h * h);
      dd_phi1(k, l) = v;
      dd_phi1(l, k) = v;
    }

  ScalarJet j1{p10, d_phi1, dd_phi1};
  const double half_drift = 0.5 * drift_laplacian(s0, ginv, wc.christoffel, j1);

  // |Hess u|^2
  Mat hess_u = uj.d2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) hess_u(i, j) -= wc.christoffel(k, i, j) * uj.d1[k];
  const Mat hess_up = ginv * hess_u * ginv;  // both indices raised
  double hess_sq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hess_sq += hess_u(i, j) * hess_up(i, j);

  const double t3 = uj.d1.dot(ginv * d_phi2);
  const Vec grad_u = ginv * uj.d1;
  const double t4 = grad_u.dot(wc.bakry_emery * grad_u);
  const double mixed = s0.potential_d1.dot(ginv * uj.d1);
  const double t5 = m.reciprocal() * mixed * mixed;

  BochnerResult res;
  res.residual = half_drift - hess_sq - t3 - t4 - t5;
  // Below ~1e-5 the eps/h^2 roundoff in the outer stencils overtakes the
  // h^2 truncation term for order-one data.
  res.conditioning_warning = h < 1e-5 * std::max(1.0, x.cwiseAbs().maxCoeff());
  return res;
}

}  // namespace qew
