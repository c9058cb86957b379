#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qew/charts.hpp"
#include "qew/warped.hpp"

using namespace qew;

namespace {

Vec pt(std::initializer_list<double> v) {
  Vec x(static_cast<int>(v.size()));
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

FiberSpec hyperbolic_fiber() {
  FiberSpec fib;
  fib.dim = 2;
  fib.einstein_constant = -1.0;
  fib.chart = hyperbolic_plane_chart();
  fib.point = pt({0.3, 1.2});
  return fib;
}

ChartSample cosh_base(double t) {
  return sample_chart(cosh_line_chart(2.0, 1.0), pt({t}));
}

}  // namespace

TEST_CASE("flat base and flat fiber assemble to the flat product") {
  FiberSpec fib;
  fib.dim = 2;
  fib.einstein_constant = 0.0;
  fib.chart = flat_torus_chart();
  fib.point = pt({0.1, 0.2});
  const ChartSample base = sample_chart(flat_chart(2), pt({0.0, 0.5}));
  const WarpedSample ws = assemble(base, fib);
  CHECK(sup_norm(ws.total.metric - Mat::Identity(4, 4)) < 1e-14);
  CHECK(sup_norm(einstein_residual(ws, 0.0)) < 1e-13);
}

TEST_CASE("cosh base with H^2 fiber is hyperbolic 3-space") {
  // e^{-2f/m} = cosh^2 t, so the total is dt^2 + cosh^2 t h (lambda = -2).
  const ChartSample base = cosh_base(0.6);
  const WarpedSample ws = assemble(base, hyperbolic_fiber());
  const double ch = std::cosh(0.6);
  CHECK(ws.total.metric(1, 1) ==
        doctest::Approx(ch * ch * ws.fiber.metric(0, 0)).epsilon(1e-13));
  CHECK(sup_norm(einstein_residual(ws, -2.0)) < 1e-8);
  CHECK(sup_norm(einstein_residual(ws, -2.0)) < 1e-12);  // exact derivatives
}

TEST_CASE("f = 0 with nonzero gradient still produces warped derivatives") {
  Chart linear = flat_chart(1);
  linear.potential = [](const Vec& x) { return x[0]; };
  linear.potential_d1 = [](const Vec&) { return pt({1.0}); };
  linear.potential_d2 = [](const Vec&) { return Mat::Zero(1, 1); };
  const ChartSample base = sample_chart(linear, pt({0.0}));
  REQUIRE(base.potential == 0.0);
  FiberSpec fib = hyperbolic_fiber();
  const WarpedSample ws = assemble(base, fib);
  // Fiber block equals h, but its r-derivative is -(2/m) f' F h != 0.
  CHECK(ws.total.metric(1, 1) == doctest::Approx(ws.fiber.metric(0, 0)));
  CHECK(ws.total.metric_d1(1, 1, 0) ==
        doctest::Approx(-1.0 * ws.fiber.metric(0, 0)).epsilon(1e-13));
}

TEST_CASE("fiber Einstein check gates assembly") {
  FiberSpec bad = hyperbolic_fiber();
  bad.einstein_constant = 1.0;  // H^2 has Ric = -h
  CHECK_THROWS_AS(assemble(cosh_base(0.2), bad), DomainError);
}

TEST_CASE("perturbed potential breaks the Einstein equation") {
  Chart c = cosh_line_chart(2.0, 1.0);
  const auto f0 = c.potential;
  const auto d0 = c.potential_d1;
  const auto h0 = c.potential_d2;
  c.potential = [f0](const Vec& x) { return f0(x) + 0.01 * std::sin(x[0]); };
  c.potential_d1 = [d0](const Vec& x) {
    Vec d = d0(x);
    d[0] += 0.01 * std::cos(x[0]);
    return d;
  };
  c.potential_d2 = [h0](const Vec& x) {
    Mat d = h0(x);
    d(0, 0) -= 0.01 * std::sin(x[0]);
    return d;
  };
  const ChartSample base = sample_chart(c, pt({0.9}));
  const WarpedSample ws = assemble(base, hyperbolic_fiber());
  CHECK(sup_norm(einstein_residual(ws, -2.0)) > 1e-3);
}

TEST_CASE("wrong fiber constant breaks the Einstein equation") {
  FiberSpec flat_fib;
  flat_fib.dim = 2;
  flat_fib.einstein_constant = 0.0;
  flat_fib.chart = flat_torus_chart();
  flat_fib.point = pt({0.0, 0.0});
  const WarpedSample ws = assemble(cosh_base(0.6), flat_fib);
  CHECK(sup_norm(einstein_residual(ws, -2.0)) > 0.5);
}

TEST_CASE("mu field: vanishing potential gives lambda") {
  const ChartSample base = sample_chart(flat_chart(3), pt({0.1, 0.2, 0.3}));
  CHECK(mu_field(base, Weight::finite(4.0), 0.7) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("mu field on the cosh family: mu = -(m-1)c^2, constant") {
  for (double m : {1.0, 2.0, 3.0})
    for (double c : {0.5, 1.0}) {
      const Chart chart = cosh_line_chart(m, c);
      const double lambda = -m * c * c;
      const double expected = -(m - 1.0) * c * c;
      double mean = 0.0, dev = 0.0;
      std::vector<double> vals;
      for (int i = 0; i < 100; ++i) {
        const double t = -3.0 + 6.0 * i / 99.0;
        vals.push_back(mu_field(sample_chart(chart, pt({t})), Weight::finite(m), lambda));
      }
      for (double v : vals) mean += v;
      mean /= vals.size();
      for (double v : vals) dev += (v - mean) * (v - mean);
      const double sd = std::sqrt(dev / vals.size());
      CHECK(mean == doctest::Approx(expected).epsilon(1e-10));
      CHECK(sd < 1e-8);
    }
}

TEST_CASE("warped Einstein <=> base quasi-Einstein + matching fiber constant") {
  // Forward: the cosh base satisfies Ric_f^m = -2g and mu_field = -1 = mu_h.
  const ChartSample base = cosh_base(0.4);
  CHECK(mu_field(base, Weight::finite(2.0), -2.0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(sup_norm(einstein_residual(assemble(base, hyperbolic_fiber()), -2.0)) < 1e-10);
  // Reverse direction is witnessed by the perturbation and wrong-fiber cases.
}

TEST_CASE("constant shift of f with compensating fiber rescale is invariant") {
  const double c0 = 0.3, m = 2.0;
  const ChartSample base = cosh_base(0.5);
  Chart shifted = cosh_line_chart(2.0, 1.0);
  const auto f0 = shifted.potential;
  shifted.potential = [f0, c0](const Vec& x) { return f0(x) + c0; };
  const ChartSample base_shift = sample_chart(shifted, pt({0.5}));

  FiberSpec fib = hyperbolic_fiber();
  FiberSpec fib_comp = fib;
  const double scale = std::exp(2.0 * c0 / m);
  const Chart orig_chart = fib.chart;
  fib_comp.chart.dim = 2;
  fib_comp.chart.metric = [orig_chart, scale](const Vec& y) {
    return Mat(scale * orig_chart.metric(y));
  };
  fib_comp.chart.potential = orig_chart.potential;
  fib_comp.chart.metric_d1 = [orig_chart, scale](const Vec& y) {
    Ten3 d = orig_chart.metric_d1(y);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) d(i, j, k) *= scale;
    return d;
  };
  fib_comp.chart.metric_d2 = [orig_chart, scale](const Vec& y) {
    Ten4 d = orig_chart.metric_d2(y);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) d(i, j, k, l) *= scale;
    return d;
  };
  fib_comp.chart.potential_d1 = orig_chart.potential_d1;
  fib_comp.chart.potential_d2 = orig_chart.potential_d2;
  fib_comp.einstein_constant = fib.einstein_constant / scale;

  const WarpedSample w1 = assemble(base, fib);
  const WarpedSample w2 = assemble(base_shift, fib_comp);
  CHECK(sup_norm(w1.total.metric - w2.total.metric) < 1e-13);
  CHECK(sup_norm(einstein_residual(w1, -2.0) - einstein_residual(w2, -2.0)) < 1e-11);
  // mu transforms like the fiber Einstein constant.
  const double mu_shift = mu_field(base_shift, Weight::finite(m), -2.0);
  CHECK(mu_shift == doctest::Approx(-1.0 / scale).epsilon(1e-11));
}
