#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qew/shooting.hpp"

using namespace qew;

TEST_CASE("ode_rhs on the flat seed and the round sphere") {
  const QuasiEinsteinSpec flat{3, Weight::infinite(), 0.0};
  const OdeRhs r0 = ode_rhs({1.0, 1.0, 1.0, 0.0, 0.0}, flat);
  CHECK(r0.wpp == doctest::Approx(0.0));
  CHECK(r0.fpp == doctest::Approx(0.0));

  for (int n : {2, 3, 4}) {
    const QuasiEinsteinSpec sph{n, Weight::infinite(), static_cast<double>(n - 1)};
    const double r = 0.8;
    const OdeRhs rs = ode_rhs({r, std::sin(r), std::cos(r), 0.0, 0.0}, sph);
    CHECK(rs.wpp == doctest::Approx(-std::sin(r)).epsilon(1e-12));
    CHECK(rs.fpp == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("ode_rhs requires positive warping") {
  const QuasiEinsteinSpec spec{3, Weight::finite(2.0), 0.0};
  CHECK_THROWS_AS(ode_rhs({1.0, -0.1, 1.0, 0.0, 0.0}, spec), DomainError);
}

TEST_CASE("cross-oracle: ode_rhs matches the chart engine on random states") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3, 4})
    for (double mv : {1.0, 2.0, 5.0, -1.0}) {  // -1 encodes m = inf
      const Weight m = mv > 0 ? Weight::finite(mv) : Weight::infinite();
      for (int trial = 0; trial < 50; ++trial) {
        const QuasiEinsteinSpec spec{n, m, 2.0 * u(rng)};
        ProfileState st;
        st.r = 1.0 + 0.5 * u(rng);
        st.w = 1.65 + 1.35 * u(rng);  // [0.3, 3]
        st.wp = 2.0 * u(rng);
        st.f = u(rng);
        st.fp = 2.0 * u(rng);
        CHECK(cross_oracle_residual(spec, st) < 1e-7);
      }
    }
}

TEST_CASE("cross-oracle also covers the line model") {
  const QuasiEinsteinSpec spec{1, Weight::finite(2.0), 0.0};
  ProfileState st;
  st.r = 0.5;
  st.f = 0.3;
  st.fp = 0.9;
  CHECK(cross_oracle_residual(spec, st) < 1e-12);
}

TEST_CASE("series seed: flat, Bryant-type, and violated compatibility") {
  const QuasiEinsteinSpec flat{3, Weight::infinite(), 0.0};
  const ProfileState s0 = series_seed(flat, 0.0, 1e-4);
  CHECK(s0.w == doctest::Approx(1e-4));  // w3 = 0
  CHECK(s0.fp == 0.0);

  const ProfileState s1 = series_seed(flat, -0.5, 1e-4);
  // w3 = (2s - lambda)/(6(n-1)) = -1/12
  CHECK((s1.w - 1e-4) / 1e-12 == doctest::Approx(-1.0 / 12.0).epsilon(1e-6));
  CHECK(series_seed_residual(flat, -0.5, 1e-4) < 1e-7);

  // Intentionally breaking the compatibility relation is flagged loudly.
  CHECK(series_seed_residual(flat, -0.5, 1e-4, 0.0, 0.5) > 0.1);
}

TEST_CASE("Bryant-type steady soliton: complete with positive constant mu") {
  const QuasiEinsteinSpec spec{3, Weight::infinite(), 0.0};
  const Profile p = shoot(spec, -0.5, 10.0);
  CHECK(p.classification.kind == ProfileClass::CompleteToHorizon);
  CHECK(p.states.back().r == doctest::Approx(10.0));

  const MuEstimate mu13 = profile_mu(p);
  const MuEstimate muRg = steady_invariant(p);
  const MuEstimate muCh = chart_engine_mu(p);
  CHECK(mu13.value > 0.0);
  CHECK(muRg.value > 0.0);
  // constancy to 1e-6 relative, and the three routes agree
  CHECK(muRg.max_deviation < 1e-6 * muRg.value);
  CHECK(mu13.max_deviation < 1e-6 * std::abs(mu13.value));
  CHECK(std::abs(mu13.value - muRg.value) < 1e-6 * muRg.value);
  CHECK(std::abs(muCh.value - muRg.value) < 1e-6 * muRg.value);
}

TEST_CASE("line model blow-up matches the closed form f' = v0/(1 - v0 t/m)") {
  const QuasiEinsteinSpec spec{1, Weight::finite(2.0), 0.0};
  const Profile p = shoot(spec, 1.0, 10.0);
  CHECK(p.classification.kind == ProfileClass::PotentialBlowUp);
  REQUIRE(p.classification.r_star.has_value());
  CHECK(*p.classification.r_star == doctest::Approx(2.0).epsilon(0.01));
  // interior agreement with the closed form
  for (double t : {0.5, 1.0, 1.5}) {
    const ProfileState st = interpolate(p, t);
    CHECK(st.fp == doctest::Approx(1.0 / (1.0 - t / 2.0)).epsilon(1e-8));
    CHECK(st.f == doctest::Approx(-2.0 * std::log(1.0 - t / 2.0)).epsilon(1e-8));
  }
  // mu = v0^2 (m-1)/m^2 = 1/4 for this family, constant along the run
  CHECK(p.mu.value == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("1-D cosh profile: mu = -1 with tiny deviation") {
  // n = 1, m = 2, lambda = -2, v0 = 0 integrates f = -2 log cosh t.
  const QuasiEinsteinSpec spec{1, Weight::finite(2.0), -2.0};
  const Profile p = shoot(spec, 0.0, 3.0);
  CHECK(p.classification.kind == ProfileClass::CompleteToHorizon);
  const ProfileState st = interpolate(p, 0.7);
  CHECK(st.f == doctest::Approx(-2.0 * std::log(std::cosh(0.7))).epsilon(1e-9));
  const MuEstimate mu = profile_mu(p);
  CHECK(mu.value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(mu.max_deviation < 1e-8);
}

TEST_CASE("trivial run: s = 0, lambda = 0") {
  const QuasiEinsteinSpec spec{3, Weight::finite(2.0), 0.0};
  const Profile p = shoot(spec, 0.0, 5.0);
  CHECK(p.classification.kind == ProfileClass::Trivial);
  CHECK(std::abs(p.states.back().f - p.states.front().f) < 1e-12);
  CHECK(std::abs(p.mu.value) < 1e-12);
}

TEST_CASE("hyperbolic trivial run reaches the horizon with w = sinh") {
  const QuasiEinsteinSpec spec{3, Weight::finite(3.0), -2.0};
  const Profile p = shoot(spec, 0.0, 4.0);
  CHECK(p.classification.kind == ProfileClass::Trivial);
  const ProfileState st = interpolate(p, 2.0);
  CHECK(st.w == doctest::Approx(std::sinh(2.0)).epsilon(1e-8));
}

TEST_CASE("round sphere closes up: warping-degenerate at pi") {
  const QuasiEinsteinSpec spec{3, Weight::finite(2.0), 2.0};
  const Profile p = shoot(spec, 0.0, 10.0);
  CHECK(p.classification.kind == ProfileClass::WarpingDegenerate);
  REQUIRE(p.classification.r_star.has_value());
  CHECK(*p.classification.r_star == doctest::Approx(M_PI).epsilon(1e-4));
}

TEST_CASE("steady invariant contract") {
  const QuasiEinsteinSpec spec{3, Weight::finite(2.0), 0.0};
  const Profile p = shoot(spec, 0.0, 2.0);
  CHECK_THROWS_AS(steady_invariant(p), ContractError);
}

TEST_CASE("scaling covariance of the lambda = 0 system") {
  const QuasiEinsteinSpec spec{3, Weight::infinite(), 0.0};
  const double k = 2.0;
  const Profile p1 = shoot(spec, -0.5, 6.0);
  const Profile p2 = shoot(spec, -0.5 / (k * k), 12.0);
  for (double r : {1.0, 2.0, 3.0, 5.0}) {
    const ProfileState a = interpolate(p1, r);
    const ProfileState b = interpolate(p2, k * r);
    CHECK(b.w == doctest::Approx(k * a.w).epsilon(1e-7));
    CHECK(b.f == doctest::Approx(a.f).epsilon(1e-7));
  }
}

TEST_CASE("classification strings carry the singular radius") {
  Classification cl;
  cl.kind = ProfileClass::PotentialBlowUp;
  cl.r_star = 2.0;
  CHECK(cl.str() == "potential-blow-up(r*=2)");
  cl.kind = ProfileClass::Trivial;
  CHECK(cl.str() == "trivial");
}
