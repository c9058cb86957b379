#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qew/charts.hpp"
#include "qew/tensor_engine.hpp"

using namespace qew;

namespace {

Vec pt(std::initializer_list<double> v) {
  Vec x(static_cast<int>(v.size()));
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

}  // namespace

TEST_CASE("weight invariants") {
  const Weight m = Weight::finite(4.0);
  CHECK(m.is_finite());
  CHECK(m.value() == doctest::Approx(4.0));
  CHECK(m.value() * m.reciprocal() == doctest::Approx(1.0));
  const Weight inf = Weight::infinite();
  CHECK(!inf.is_finite());
  CHECK(inf.reciprocal() == 0.0);
  CHECK_THROWS_AS(inf.value(), ContractError);
  CHECK_THROWS_AS(Weight::finite(0.0), DomainError);
  CHECK_THROWS_AS(Weight::finite(-2.0), DomainError);
}

TEST_CASE("flat space curvature vanishes") {
  const Chart c = flat_chart(3);
  const ChartSample s = sample_chart(c, pt({0.2, -0.4, 1.0}));
  const WeightedCurvature wc = curvature(s);
  CHECK(sup_norm(wc.ricci) < 1e-14);
  CHECK(std::abs(wc.scalar) < 1e-14);
}

TEST_CASE("round sphere: Ric = g, R = 2") {
  const Chart c = sphere_chart();
  const ChartSample s = sample_chart(c, pt({M_PI / 3.0, 0.7}));
  const WeightedCurvature wc = curvature(s);
  CHECK(sup_norm(wc.ricci - s.metric) < 1e-12);
  CHECK(wc.scalar == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hyperbolic plane: Ric = -g, R = -2") {
  const Chart c = hyperbolic_plane_chart();
  const ChartSample s = sample_chart(c, pt({0.0, 1.0}));
  const WeightedCurvature wc = curvature(s);
  CHECK(sup_norm(wc.ricci + s.metric) < 1e-12);
  CHECK(wc.scalar == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("constant-curvature ansatz charts") {
  // w = sin r on S^3: Ric = (n-1) g; w = sinh r: Ric = -(n-1) g.
  const RadialFunction wsin{[](double r) { return std::sin(r); },
                            [](double r) { return std::cos(r); },
                            [](double r) { return -std::sin(r); }};
  const RadialFunction wsinh{[](double r) { return std::sinh(r); },
                             [](double r) { return std::cosh(r); },
                             [](double r) { return std::sinh(r); }};
  const RadialFunction f0{[](double) { return 0.0; }, [](double) { return 0.0; },
                          [](double) { return 0.0; }};
  for (int n : {2, 3, 4}) {
    const ChartSample ss = sample_chart(ansatz_chart(n, wsin, f0), [&] {
      Vec x = Vec::Zero(n);
      x[0] = 0.9;
      for (int a = 1; a < n; ++a) x[a] = 1.0 + 0.15 * a;
      return x;
    }());
    CHECK(sup_norm(curvature(ss).ricci - (n - 1) * ss.metric) < 1e-10);
    const ChartSample sh = sample_chart(ansatz_chart(n, wsinh, f0), [&] {
      Vec x = Vec::Zero(n);
      x[0] = 0.9;
      for (int a = 1; a < n; ++a) x[a] = 1.0 + 0.15 * a;
      return x;
    }());
    CHECK(sup_norm(curvature(sh).ricci + (n - 1) * sh.metric) < 1e-10);
  }
}

TEST_CASE("degenerate metric raises a domain error naming the eigenvalue") {
  ChartSample s = sample_chart(flat_chart(2), pt({0.0, 0.0}));
  s.metric(1, 1) = -0.5;
  try {
    curvature(s);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("-0.5") != std::string::npos);
  }
}

TEST_CASE("vanishing potential: weighted tensors reduce to curvature") {
  const Chart c = random_analytic_chart(3, 11);
  Chart cf = c;
  cf.potential = [](const Vec&) { return 0.0; };
  cf.potential_d1 = [](const Vec&) { return Vec::Zero(3); };
  cf.potential_d2 = [](const Vec&) { return Mat::Zero(3, 3); };
  const ChartSample s = sample_chart(cf, pt({0.1, 0.3, -0.2}));
  const WeightedCurvature wc = weighted_tensors(s, Weight::finite(3.0));
  CHECK(sup_norm(wc.bakry_emery - wc.ricci) < 1e-13);
  CHECK(wc.drift_laplacian_f == doctest::Approx(wc.laplacian_f).epsilon(1e-14));
}

TEST_CASE("Gaussian soliton: Ric_f = id") {
  const Chart c = gaussian_soliton_chart(3);
  const ChartSample s = sample_chart(c, pt({0.5, -1.0, 2.0}));
  const WeightedCurvature wc = weighted_tensors(s, Weight::infinite());
  CHECK(sup_norm(wc.bakry_emery - Mat::Identity(3, 3)) < 1e-13);
}

TEST_CASE("cosh line: Ric_f^m = -m c^2 g") {
  const Chart c = cosh_line_chart(2.0, 1.0);
  const ChartSample s = sample_chart(c, pt({0.7}));
  const WeightedCurvature wc = weighted_tensors(s, Weight::finite(2.0));
  CHECK(wc.bakry_emery(0, 0) == doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("weighted identities across random charts") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const Chart c = random_analytic_chart(3, seed);
    const ChartSample s = sample_chart(c, pt({0.15, -0.25, 0.35}));
    const Mat ginv = inverse_metric(s.metric);
    for (double mval : {1.0, 2.0, 7.5}) {
      const WeightedCurvature wm = weighted_tensors(s, Weight::finite(mval));
      const WeightedCurvature wi = weighted_tensors(s, Weight::infinite());
      const Mat expect = -(1.0 / mval) * (s.potential_d1 * s.potential_d1.transpose());
      CHECK(sup_norm((wm.bakry_emery - wi.bakry_emery) - expect) < 1e-13);
      // trace_g hess = laplacian, drift + |grad f|^2 = laplacian, exactly
      CHECK((ginv * wm.hess_f).trace() == doctest::Approx(wm.laplacian_f));
      CHECK(wm.drift_laplacian_f + wm.grad_f_sq == doctest::Approx(wm.laplacian_f));
      CHECK(wm.scalar == doctest::Approx((ginv * wm.ricci).trace()));
    }
  }
}

TEST_CASE("stencil sampling approximates exact derivatives at O(h^2)") {
  const Chart c = random_analytic_chart(3, 21);
  const Vec x = pt({0.1, 0.2, -0.3});
  const ChartSample exact = sample_chart(c, x);
  const ChartSample coarse = sample_chart(strip_derivatives(c), x, 2e-3);
  const ChartSample fine = sample_chart(strip_derivatives(c), x, 1e-3);
  double ec = 0.0, ef = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        ec = std::max(ec, std::abs(coarse.metric_d1(i, j, k) - exact.metric_d1(i, j, k)));
        ef = std::max(ef, std::abs(fine.metric_d1(i, j, k) - exact.metric_d1(i, j, k)));
      }
  CHECK(ec / ef == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("Bochner residual: flat chart with quadratic data is stencil-exact") {
  Chart c = flat_chart(3);
  c.potential = [](const Vec& x) { return 0.3 * x[0] * x[0] - 0.2 * x[1] * x[2] + 0.5 * x[2]; };
  c.potential_d1 = nullptr;
  c.potential_d2 = nullptr;
  ScalarField u;
  u.value = [](const Vec& x) {
    return 0.7 * x[0] * x[1] + 0.4 * x[2] * x[2] - 1.1 * x[0] + 0.2;
  };
  const BochnerResult r =
      bochner_residual(c, u, Weight::finite(2.0), pt({0.3, -0.1, 0.4}), 1e-2);
  CHECK(std::abs(r.residual) < 1e-10);
  CHECK(!r.conditioning_warning);
}

TEST_CASE("Bochner residual on the round sphere, u = cos theta") {
  const Chart c = sphere_chart();
  ScalarField u;
  u.value = [](const Vec& x) { return std::cos(x[0]); };
  u.d1 = [](const Vec& x) { return pt({-std::sin(x[0]), 0.0}); };
  u.d2 = [](const Vec& x) {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = -std::cos(x[0]);
    return d;
  };
  const BochnerResult r = bochner_residual(c, u, Weight::infinite(), pt({1.2, 0.4}), 1e-3);
  CHECK(std::abs(r.residual) < 1e-6);
}

TEST_CASE("Bochner residual converges at second order on random charts") {
  const Chart c = random_analytic_chart(3, 7, 0.3, 1.8);
  const ScalarField u = random_scalar_field(3, 7, 1.0, 1.6);
  const Vec x = pt({0.2, -0.1, 0.3});
  const Weight m = Weight::finite(5.0);
  const double r1 = bochner_residual(c, u, m, x, 1e-3).residual;
  const double r2 = bochner_residual(c, u, m, x, 5e-4).residual;
  CHECK(std::abs(r1) > 1e-9);  // above the roundoff floor, so the ratio is meaningful
  const double ratio = r1 / r2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("Bochner conditioning warning for tiny steps") {
  const Chart c = random_analytic_chart(2, 5);
  const ScalarField u = random_scalar_field(2, 5);
  const BochnerResult r = bochner_residual(c, u, Weight::infinite(), pt({0.1, 0.1}), 1e-6);
  CHECK(r.conditioning_warning);
}
