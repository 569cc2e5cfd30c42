// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cmath>

#include <gtest/gtest.h>

#include "acoustic_layer/core/bessel.hpp"
#include "acoustic_layer/core/chebyshev.hpp"
#include "acoustic_layer/core/jet.hpp"
#include "acoustic_layer/core/parallel.hpp"
#include "acoustic_layer/core/periodic.hpp"

using namespace acoustic_layer;

TEST(Jet, ProductAndExpMatchFiniteDifferences)
{
  auto f = [](double u, double v) { return std::exp(u * v) * std::sin(u + 2.0 * v); };
  const double u0 = 0.3, v0 = -0.7, h = 1e-4;
  const auto u = Jet2d::variable_u(u0), v = Jet2d::variable_v(v0);
  const auto j = exp(u * v) * sin(u + 2.0 * v);
  EXPECT_NEAR(j.v, f(u0, v0), 1e-15);
  EXPECT_NEAR(j.du, (f(u0 + h, v0) - f(u0 - h, v0)) / (2 * h), 1e-7);
  EXPECT_NEAR(j.dv, (f(u0, v0 + h) - f(u0, v0 - h)) / (2 * h), 1e-7);
  EXPECT_NEAR(j.duu, (f(u0 + h, v0) - 2 * f(u0, v0) + f(u0 - h, v0)) / (h * h), 1e-5);
  EXPECT_NEAR(j.dvv, (f(u0, v0 + h) - 2 * f(u0, v0) + f(u0, v0 - h)) / (h * h), 1e-5);
  EXPECT_NEAR(j.duv,
              (f(u0 + h, v0 + h) - f(u0 + h, v0 - h) - f(u0 - h, v0 + h) + f(u0 - h, v0 - h)) / (4 * h * h), 1e-5);
}

TEST(Jet, QuotientAndPower)
{
  const auto u = Jet2d::variable_u(1.5), v = Jet2d::variable_v(0.5);
  const auto q = u / (1.0 + v * v);
  // d/dv [u / (1 + v^2)] = -2 u v / (1 + v^2)^2
  EXPECT_NEAR(q.dv, -2 * 1.5 * 0.5 / std::pow(1.25, 2), 1e-14);
  const auto p = pow(u, 3);
  EXPECT_NEAR(p.duu, 6 * 1.5, 1e-13);
}

TEST(Periodic, DerivativeOfConstantIsZero)
{
  std::vector<double> f(64, 3.25);
  for (double d : periodic::derivative(f, 2.0))
  {
    EXPECT_NEAR(d, 0.0, 1e-13);
  }
}

TEST(Periodic, SineDerivativeOnCircle)
{
  const double length = 2.0 * kPi;
  const int n = 128;
  std::vector<double> f(n), df(n), f2(n);
  for (int j = 0; j < n; ++j)
  {
    const double s = length * j / n;
    f[j] = std::sin(2 * kPi * s / length);
    f2[j] = std::pow(std::sin(kPi * s / length), 2);
  }
  const auto d1 = periodic::derivative(f, length);
  const auto d2 = periodic::derivative(f2, length);
  for (int j = 0; j < n; ++j)
  {
    const double s = length * j / n;
    EXPECT_NEAR(d1[j], 2 * kPi / length * std::cos(2 * kPi * s / length), 1e-10);
    EXPECT_NEAR(d2[j], kPi / length * std::sin(2 * kPi * s / length), 1e-10);
  }
}

TEST(Periodic, InterpolantEvaluatesOffGrid)
{
  const int n = 32;
  const double period = 3.0;
  std::vector<cplx> f(n);
  auto g = [&](double s) { return cplx(std::cos(4 * kPi * s / period), std::sin(6 * kPi * s / period)); };
  for (int j = 0; j < n; ++j)
  {
    f[j] = g(period * j / n);
  }
  periodic::TrigInterpolant interp(f, period);
  const double s = 0.377;
  EXPECT_NEAR(std::abs(interp.evaluate(s) - g(s)), 0.0, 1e-12);
  const cplx dg(-4 * kPi / period * std::sin(4 * kPi * s / period), 6 * kPi / period * std::cos(6 * kPi * s / period));
  EXPECT_NEAR(std::abs(interp.evaluate(s, 1) - dg), 0.0, 1e-11);
}

TEST(Chebyshev, DifferentiatesPolynomialsExactly)
{
  chebyshev::Grid grid(0.5, 2.0, 12);
  VectorXc v(grid.nodes().size());
  for (long i = 0; i < v.size(); ++i)
  {
    const double x = grid.nodes()(i);
    v(i) = std::pow(x, 5) - 2.0 * x;
  }
  const VectorXc d = grid.diff() * v;
  for (long i = 0; i < v.size(); ++i)
  {
    const double x = grid.nodes()(i);
    EXPECT_NEAR(d(i).real(), 5 * std::pow(x, 4) - 2.0, 1e-10);
  }
  const auto e = grid.evaluate(grid.coefficients(v), 1.3);
  EXPECT_NEAR(e[0].real(), std::pow(1.3, 5) - 2.6, 1e-12);
  EXPECT_NEAR(e[1].real(), 5 * std::pow(1.3, 4) - 2.0, 1e-10);
  EXPECT_NEAR(e[2].real(), 20 * std::pow(1.3, 3), 1e-9);
  EXPECT_NEAR(e[3].real(), 60 * std::pow(1.3, 2), 1e-8);
}

TEST(Bessel, DerivativeZerosMatchTables)
{
  // Reference zeros of J_n' (scipy.special.jnp_zeros).
  EXPECT_NEAR(bessel::disc_neumann_roots(1, 1)[0], 1.8411837813406595, 1e-12);
  EXPECT_NEAR(bessel::disc_neumann_roots(0, 1)[0], 3.8317059702075125, 1e-12);
  EXPECT_NEAR(bessel::disc_neumann_roots(2, 1)[0], 3.0542369282271404, 1e-12);
  EXPECT_NEAR(bessel::disc_neumann_roots(1, 2)[1], 5.33144277, 1e-8);
}

TEST(Bessel, AnnulusRootsMatchIndependentBracketing)
{
  // Brent's method on the same cross product in scipy, radii 0.5 and 1.
  EXPECT_NEAR(bessel::annulus_neumann_roots(0, 0.5, 1.0, 1)[0], 6.39315676162127, 1e-9);
  EXPECT_NEAR(bessel::annulus_neumann_roots(1, 0.5, 1.0, 2)[1], 6.564942382322759, 1e-9);
  EXPECT_NEAR(bessel::annulus_neumann_roots(2, 0.5, 1.0, 1)[0], 2.6812042866688417, 1e-9);
}

TEST(Bessel, DerivativesSatisfyBesselEquation)
{
  for (int n : {0, 1, 3})
  {
    const double x = 2.7;
    const auto j = bessel::j(n, x);
    EXPECT_NEAR(x * x * j.d2 + x * j.d1 + (x * x - n * n) * j.v, 0.0, 1e-13);
    const double h = 1e-5;
    EXPECT_NEAR(j.d3, (bessel::j(n, x + h).d2 - bessel::j(n, x - h).d2) / (2 * h), 1e-8);
  }
}

TEST(Parallel, VisitsEveryIndexOnce)
{
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits)
  {
    EXPECT_EQ(h, 1);
  }
  EXPECT_GE(worker_count(), 1u);
}

TEST(Parallel, PropagatesExceptions)
{
  EXPECT_THROW(parallel_for(4, [](std::size_t i) {
                 if (i == 2)
                 {
                   throw std::runtime_error("boom");
                 }
               }),
               std::runtime_error);
}
