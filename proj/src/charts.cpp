#include "qew/charts.hpp"

#include <cmath>
#include <memory>
#include <random>

namespace qew {

namespace {

Ten3 zero3(int n) { return Ten3(n); }
Ten4 zero4(int n) { return Ten4(n); }

}  // namespace

Chart flat_chart(int n) {
  Chart c;
  c.dim = n;
  c.metric = [n](const Vec&) { return Mat::Identity(n, n); };
  c.potential = [](const Vec&) { return 0.0; };
  c.metric_d1 = [n](const Vec&) { return zero3(n); };
  c.metric_d2 = [n](const Vec&) { return zero4(n); };
  c.potential_d1 = [n](const Vec&) { return Vec::Zero(n); };
  c.potential_d2 = [n](const Vec&) { return Mat::Zero(n, n); };
  return c;
}

Chart gaussian_soliton_chart(int n) {
  Chart c = flat_chart(n);
  c.potential = [](const Vec& x) { return 0.5 * x.squaredNorm(); };
  c.potential_d1 = [](const Vec& x) { return Vec(x); };
  c.potential_d2 = [n](const Vec&) { return Mat::Identity(n, n); };
  return c;
}

Chart sphere_chart() {
  // g = diag(1, sin^2 theta), coordinates (theta, phi).
  Chart c;
  c.dim = 2;
  c.metric = [](const Vec& x) {
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = std::sin(x[0]) * std::sin(x[0]);
    return g;
  };
  c.potential = [](const Vec&) { return 0.0; };
  c.metric_d1 = [](const Vec& x) {
    Ten3 d(2);
    d(1, 1, 0) = 2.0 * std::sin(x[0]) * std::cos(x[0]);
    return d;
  };
  c.metric_d2 = [](const Vec& x) {
    Ten4 d(2);
    d(1, 1, 0, 0) = 2.0 * std::cos(2.0 * x[0]);
    return d;
  };
  c.potential_d1 = [](const Vec&) { return Vec::Zero(2); };
  c.potential_d2 = [](const Vec&) { return Mat::Zero(2, 2); };
  return c;
}

Chart hyperbolic_plane_chart() {
  // g = y^-2 (dx^2 + dy^2), coordinates (x, y), y > 0.
  Chart c;
  c.dim = 2;
  c.metric = [](const Vec& x) {
    const double y = x[1];
    return Mat(Mat::Identity(2, 2) / (y * y));
  };
  c.potential = [](const Vec&) { return 0.0; };
  c.metric_d1 = [](const Vec& x) {
    const double y = x[1];
    Ten3 d(2);
    d(0, 0, 1) = -2.0 / (y * y * y);
    d(1, 1, 1) = -2.0 / (y * y * y);
    return d;
  };
  c.metric_d2 = [](const Vec& x) {
    const double y = x[1];
    Ten4 d(2);
    d(0, 0, 1, 1) = 6.0 / (y * y * y * y);
    d(1, 1, 1, 1) = 6.0 / (y * y * y * y);
    return d;
  };
  c.potential_d1 = [](const Vec&) { return Vec::Zero(2); };
  c.potential_d2 = [](const Vec&) { return Mat::Zero(2, 2); };
  return c;
}

Chart flat_torus_chart() { return flat_chart(2); }

Chart cosh_line_chart(double m, double c0) {
  Chart c = flat_chart(1);
  c.potential = [m, c0](const Vec& x) { return -m * std::log(std::cosh(c0 * x[0])); };
  c.potential_d1 = [m, c0](const Vec& x) {
    Vec d(1);
    d[0] = -m * c0 * std::tanh(c0 * x[0]);
    return d;
  };
  c.potential_d2 = [m, c0](const Vec& x) {
    Mat d(1, 1);
    const double sech = 1.0 / std::cosh(c0 * x[0]);
    d(0, 0) = -m * c0 * c0 * sech * sech;
    return d;
  };
  return c;
}

namespace {

// Coefficients of one analytic sine family.
struct SineModes {
  int n = 0;
  int terms = 0;
  std::vector<Mat> amp;       // symmetric, per term
  std::vector<Vec> freq;      // per term
  std::vector<Mat> phase;     // symmetric, per term
};

SineModes make_modes(int n, std::mt19937_64& rng, double amplitude, double frequency,
                     int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SineModes m;
  m.n = n;
  m.terms = terms;
  for (int t = 0; t < terms; ++t) {
    Mat a(n, n), p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        a(i, j) = a(j, i) = u(rng) * amplitude / terms;
        p(i, j) = p(j, i) = u(rng) * 3.0;
      }
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = frequency * (0.8 + 0.4 * std::abs(u(rng)));
    m.amp.push_back(a);
    m.freq.push_back(w);
    m.phase.push_back(p);
  }
  return m;
}

}  // namespace

Chart random_analytic_chart(int n, std::uint64_t seed, double amplitude, double frequency) {
  std::mt19937_64 rng(seed);
  auto gm = std::make_shared<SineModes>(make_modes(n, rng, amplitude, frequency, 3));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // Potential shares the generator stream so one seed fixes the whole chart.
  auto fa = std::make_shared<Vec>(Vec::Zero(3));
  auto ff = std::make_shared<Mat>(Mat::Zero(3, n));
  auto fp = std::make_shared<Vec>(Vec::Zero(3));
  for (int t = 0; t < 3; ++t) {
    (*fa)[t] = u(rng) * 0.4;
    for (int i = 0; i < n; ++i) (*ff)(t, i) = frequency * (0.8 + 0.4 * std::abs(u(rng)));
    (*fp)[t] = u(rng) * 3.0;
  }

  Chart c;
  c.dim = n;
  c.metric = [gm, n](const Vec& x) {
    Mat g = Mat::Identity(n, n);
    for (int t = 0; t < gm->terms; ++t) {
      const double arg0 = gm->freq[t].dot(x);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          g(i, j) += gm->amp[t](i, j) * std::sin(arg0 + gm->phase[t](i, j));
    }
    return g;
  };
  c.metric_d1 = [gm, n](const Vec& x) {
    Ten3 d(n);
    for (int t = 0; t < gm->terms; ++t) {
      const double arg0 = gm->freq[t].dot(x);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double cosv = gm->amp[t](i, j) * std::cos(arg0 + gm->phase[t](i, j));
          for (int k = 0; k < n; ++k) d(i, j, k) += cosv * gm->freq[t][k];
        }
    }
    return d;
  };
  c.metric_d2 = [gm, n](const Vec& x) {
    Ten4 d(n);
    for (int t = 0; t < gm->terms; ++t) {
      const double arg0 = gm->freq[t].dot(x);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double sinv = gm->amp[t](i, j) * std::sin(arg0 + gm->phase[t](i, j));
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) d(i, j, k, l) -= sinv * gm->freq[t][k] * gm->freq[t][l];
        }
    }
    return d;
  };
  c.potential = [fa, ff, fp](const Vec& x) {
    double v = 0.0;
    for (int t = 0; t < 3; ++t) v += (*fa)[t] * std::sin(ff->row(t).dot(x) + (*fp)[t]);
    return v;
  };
  c.potential_d1 = [fa, ff, fp, n](const Vec& x) {
    Vec d = Vec::Zero(n);
    for (int t = 0; t < 3; ++t) {
      const double cosv = (*fa)[t] * std::cos(ff->row(t).dot(x) + (*fp)[t]);
      for (int i = 0; i < n; ++i) d[i] += cosv * (*ff)(t, i);
    }
    return d;
  };
  c.potential_d2 = [fa, ff, fp, n](const Vec& x) {
    Mat d = Mat::Zero(n, n);
    for (int t = 0; t < 3; ++t) {
      const double sinv = (*fa)[t] * std::sin(ff->row(t).dot(x) + (*fp)[t]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) -= sinv * (*ff)(t, i) * (*ff)(t, j);
    }
    return d;
  };
  return c;
}

ScalarField random_scalar_field(int n, std::uint64_t seed, double amplitude, double frequency) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto a = std::make_shared<Vec>(Vec::Zero(3));
  auto w = std::make_shared<Mat>(Mat::Zero(3, n));
  auto p = std::make_shared<Vec>(Vec::Zero(3));
  for (int t = 0; t < 3; ++t) {
    (*a)[t] = u(rng) * amplitude;
    for (int i = 0; i < n; ++i) (*w)(t, i) = frequency * (0.8 + 0.4 * std::abs(u(rng)));
    (*p)[t] = u(rng) * 3.0;
  }
  ScalarField f;
  f.value = [a, w, p](const Vec& x) {
    double v = 0.0;
    for (int t = 0; t < 3; ++t) v += (*a)[t] * std::sin(w->row(t).dot(x) + (*p)[t]);
    return v;
  };
  f.d1 = [a, w, p, n](const Vec& x) {
    Vec d = Vec::Zero(n);
    for (int t = 0; t < 3; ++t) {
      const double cosv = (*a)[t] * std::cos(w->row(t).dot(x) + (*p)[t]);
      for (int i = 0; i < n; ++i) d[i] += cosv * (*w)(t, i);
    }
    return d;
  };
  f.d2 = [a, w, p, n](const Vec& x) {
    Mat d = Mat::Zero(n, n);
    for (int t = 0; t < 3; ++t) {
      const double sinv = (*a)[t] * std::sin(w->row(t).dot(x) + (*p)[t]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) -= sinv * (*w)(t, i) * (*w)(t, j);
    }
    return d;
  };
  return f;
}

namespace {

// Round S^{n-1} factors: s(a) = prod_{b<a} sin^2(theta_b) for sphere
// coordinate a >= 1 (s(1) = 1). Angles enter through x[1..n-1].
double sphere_factor(const Vec& x, int a) {
  double s = 1.0;
  for (int b = 1; b < a; ++b) {
    const double sn = std::sin(x[b]);
    s *= sn * sn;
  }
  return s;
}

// Fills metric derivative arrays for g_aa = w^2 s(a) (a >= 1), g_00 = 1.
void fill_ansatz_arrays(int n, const Vec& x, double w, double wp, double wpp,
                        Mat& g, Ten3& d1, Ten4& d2) {
  g = Mat::Zero(n, n);
  d1 = Ten3(n);
  d2 = Ten4(n);
  g(0, 0) = 1.0;
  for (int a = 1; a < n; ++a) {
    const double s = sphere_factor(x, a);
    g(a, a) = w * w * s;
    d1(a, a, 0) = 2.0 * w * wp * s;
    d2(a, a, 0, 0) = 2.0 * (wp * wp + w * wpp) * s;
    for (int c = 1; c < a; ++c) {
      const double cotc = std::cos(x[c]) / std::sin(x[c]);
      d1(a, a, c) = g(a, a) * 2.0 * cotc;
      d2(a, a, 0, c) = d2(a, a, c, 0) = d1(a, a, 0) * 2.0 * cotc;
      // d^2/dtheta_c^2 of sin^2: 2 cos(2 theta_c) replaces sin^2.
      const double sn = std::sin(x[c]);
      d2(a, a, c, c) = g(a, a) * 2.0 * std::cos(2.0 * x[c]) / (sn * sn);
      for (int d = 1; d < a; ++d) {
        if (d == c) continue;
        const double cotd = std::cos(x[d]) / std::sin(x[d]);
        d2(a, a, c, d) = g(a, a) * 4.0 * cotc * cotd;
      }
    }
  }
}

Vec ansatz_point(int n, double r) {
  Vec x = Vec::Zero(n);
  x[0] = r;
  for (int a = 1; a < n; ++a) x[a] = 1.0 + 0.15 * a;  // generic angles, away from poles
  return x;
}

}  // namespace

ChartSample ansatz_sample(int n, const AnsatzNode& node) {
  if (n < 1) throw DomainError("ansatz dimension must be >= 1");
  ChartSample s;
  s.dim = n;
  s.point = ansatz_point(n, node.r);
  if (n == 1) {
    s.metric = Mat::Identity(1, 1);
    s.metric_d1 = Ten3(1);
    s.metric_d2 = Ten4(1);
  } else {
    if (!(node.w > 0.0)) throw DomainError("ansatz warping value must be positive");
    fill_ansatz_arrays(n, s.point, node.w, node.wp, node.wpp, s.metric, s.metric_d1,
                       s.metric_d2);
  }
  // Radial f: coordinate partials vanish off the r-slot; the angular pieces
  // of the covariant Hessian come from the Gamma terms in the engine.
  s.potential = node.f;
  s.potential_d1 = Vec::Zero(n);
  s.potential_d1[0] = node.fp;
  s.potential_d2 = Mat::Zero(n, n);
  s.potential_d2(0, 0) = node.fpp;
  return s;
}

Chart ansatz_chart(int n, const RadialFunction& w, const RadialFunction& f) {
  Chart c;
  c.dim = n;
  c.metric = [n, w](const Vec& x) {
    if (n == 1) return Mat(Mat::Identity(1, 1));
    Mat g;
    Ten3 d1;
    Ten4 d2;
    fill_ansatz_arrays(n, x, w.value(x[0]), w.d1(x[0]), w.d2(x[0]), g, d1, d2);
    return g;
  };
  c.metric_d1 = [n, w](const Vec& x) {
    if (n == 1) return Ten3(1);
    Mat g;
    Ten3 d1;
    Ten4 d2;
    fill_ansatz_arrays(n, x, w.value(x[0]), w.d1(x[0]), w.d2(x[0]), g, d1, d2);
    return d1;
  };
  c.metric_d2 = [n, w](const Vec& x) {
    if (n == 1) return Ten4(1);
    Mat g;
    Ten3 d1;
    Ten4 d2;
    fill_ansatz_arrays(n, x, w.value(x[0]), w.d1(x[0]), w.d2(x[0]), g, d1, d2);
    return d2;
  };
  c.potential = [f](const Vec& x) { return f.value(x[0]); };
  c.potential_d1 = [n, f](const Vec& x) {
    Vec d = Vec::Zero(n);
    d[0] = f.d1(x[0]);
    return d;
  };
  c.potential_d2 = [n, f](const Vec& x) {
    Mat d = Mat::Zero(n, n);
    d(0, 0) = f.d2(x[0]);
    return d;
  };
  return c;
}

}  // namespace qew
