// Closed-form model charts used as oracles and test fixtures, plus the
// rotationally symmetric (polar ansatz) chart builders that bridge radial
// profiles to the tensor engine.
#pragma once

#include <cstdint>

#include "qew/chart.hpp"

namespace qew {

// Flat R^n with f = 0.
Chart flat_chart(int n);

// Flat R^n with f = |x|^2/2 (the Gaussian soliton: Ric_f = g).
Chart gaussian_soliton_chart(int n);

// Round unit S^2 in polar coordinates (theta, phi): g = diag(1, sin^2 theta).
Chart sphere_chart();

// Hyperbolic plane, half-space model: g = y^-2 (dx^2 + dy^2), Ric = -g.
Chart hyperbolic_plane_chart();

// Flat 2-torus fundamental chart: g = identity, Ric = 0.
Chart flat_torus_chart();

// The 1-D line with g = dt^2 and f = -m log cosh(c t); satisfies
// Ric_f^m = -m c^2 g, the closed-form quasi-Einstein oracle.
Chart cosh_line_chart(double m, double c);

// Seeded analytic chart: g = delta + sum of small sine modes (SPD by
// construction), f a sine combination; exact derivatives included.
Chart random_analytic_chart(int n, std::uint64_t seed, double amplitude = 0.25,
                            double frequency = 1.5);

// Seeded analytic scalar field with exact derivatives.
ScalarField random_scalar_field(int n, std::uint64_t seed, double amplitude = 0.8,
                                double frequency = 1.3);

// One node of radial data for g = dr^2 + w(r)^2 g_{S^{n-1}}, f = f(r).
struct AnsatzNode {
  double r = 0.0;
  double w = 1.0, wp = 0.0, wpp = 0.0;
  double f = 0.0, fp = 0.0, fpp = 0.0;
};

// Exact ChartSample of the polar ansatz chart at the given node. The sphere
// angles are fixed generic values away from the poles. n = 1 yields the
// line chart (no sphere factor).
ChartSample ansatz_sample(int n, const AnsatzNode& node);

// Full ansatz chart from closed-form radial profiles (w, w', w'') and
// (f, f', f''); used for the sphere/flat/hyperbolic model runs.
struct RadialFunction {
  std::function<double(double)> value, d1, d2;
};
Chart ansatz_chart(int n, const RadialFunction& w, const RadialFunction& f);

}  // namespace qew
