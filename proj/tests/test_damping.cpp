// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/damping.hpp"

using namespace acoustic_layer;
using namespace acoustic_layer::damping;
using geometry::Domain;

namespace
{

struct DiscSetup
{
  Domain disc = Domain::disc(1.0, 0.9);
  std::vector<spectrum::NeumannMode> modes = spectrum::solve_closed_form(disc, 10);
  geometry::QuadratureSet quad = geometry::build_quadrature(disc);
};

const DiscSetup &disc_setup()
{
  static const DiscSetup s;
  return s;
}

// Closed-form ||b0 exp(mu t / sqrt(eps))||_{L^2(0,T)}.
double initial_norm(double b0, double mu, double eps, double T)
{
  const double se = std::sqrt(eps);
  return b0 * std::sqrt(se * (1.0 - std::exp(2.0 * mu * T / se)) / (-2.0 * mu));
}

cplx i_lambda(double lambda0, double mu, double eps)
{
  return truncated_eigenvalue(cplx(0.0, lambda0), cplx(mu, 0.0), cplx(0.0), eps);
}

acoustic::FieldPair gradient_field(const spectrum::NeumannMode &m)
{
  return std::sqrt(2.0) * acoustic::make_acoustic_mode(m, 1).field();
}

}  // namespace

TEST(Classify, DiscModes)
{
  const auto &s = disc_setup();
  acoustic::OperatorConfig cfg;
  std::vector<layer::DampingRate> rates;
  for (const auto &m : s.modes)
  {
    rates.push_back(layer::damping_rate(m, cfg));
  }
  const auto c = classify(rates, 1e-8, 2.0 * M_PI);
  // The radial mode (index 5) has no tangential boundary gradient.
  EXPECT_EQ(c.J_set, std::vector<std::size_t>{5});
  EXPECT_EQ(c.I_set.size(), 9u);
  EXPECT_TRUE(c.inconsistent.empty());
  EXPECT_TRUE(c.damped(1));
  EXPECT_FALSE(c.damped(5));
}

TEST(Classify, SyntheticAndEmpty)
{
  layer::DampingRate r;
  r.k = 3;
  r.lambda0 = 2.0;
  EXPECT_EQ(classify({r}).J_set, std::vector<std::size_t>{3});
  const auto e = classify({});
  EXPECT_TRUE(e.I_set.empty());
  EXPECT_TRUE(e.J_set.empty());
}

TEST(Amplitude, UnitaryPhase)
{
  const auto tr = solve_amplitude(cplx(0.0, 1.7), 1e-3, cplx(0.6, 0.8), ForcingSpec::zero_forcing());
  for (const auto &b : tr.b)
  {
    EXPECT_NEAR(std::abs(b), 1.0, 1e-12);
  }
  EXPECT_NEAR(tr.l2_norm, 1.0, 1e-12);
}

TEST(Amplitude, ZeroForcingClosedForm)
{
  const double mu = -0.3536, eps = 1e-4;
  const auto tr = solve_amplitude(i_lambda(1.84, mu, eps), eps, cplx(2.0), ForcingSpec::zero_forcing());
  const double expected = initial_norm(2.0, mu, eps, 1.0);
  EXPECT_NEAR(tr.l2_norm / expected, 1.0, 1e-6);
  EXPECT_NEAR(tr.initial_part / expected, 1.0, 1e-12);
  EXPECT_NEAR(tr.l2_norm_trapezoid / expected, 1.0, 1e-3);
  for (std::size_t j = 0; j < tr.t.size(); j += 97)
  {
    EXPECT_NEAR(std::abs(tr.b[j]), 2.0 * std::exp(mu * tr.t[j] / std::sqrt(eps)), 1e-12);
  }
}

TEST(Amplitude, StepForcingPropagatorIsExact)
{
  const double eps = 1e-3;
  const cplx il = i_lambda(2.3, -0.5, eps);
  const cplx z = std::conj(il) / eps;
  const cplx b0(0.3, -0.1);
  const auto tr = solve_amplitude(il, eps, b0, ForcingSpec::step(1.0));
  for (std::size_t j = 0; j < tr.t.size(); j += 31)
  {
    const double t = tr.t[j];
    const cplx exact = b0 * std::exp(z * t) + (std::exp(z * t) - 1.0) / z;
    EXPECT_NEAR(std::abs(tr.b[j] - exact), 0.0, 1e-12 * std::max(1.0, std::abs(exact)));
  }
  // Steady state |b| -> eps / |i lambda|.
  EXPECT_NEAR(std::abs(tr.b.back()) / (eps / std::abs(il)), 1.0, 0.01);
}

TEST(Amplitude, RejectsGrowthAndCoarseSteps)
{
  EXPECT_THROW(solve_amplitude(cplx(0.1, 1.0), 1e-3, 1.0, ForcingSpec::zero_forcing()), StabilityError);
  EXPECT_THROW(solve_amplitude(cplx(0.0, 1.0), 1e-4, 1.0, ForcingSpec::zero_forcing(), 1.0, 0.01),
               PreconditionError);
}

TEST(Amplitude, NormDecreasesWithDamping)
{
  const double eps = 1e-3;
  double prev = std::numeric_limits<double>::infinity();
  for (double mu : {0.0, -0.05, -0.2, -0.5, -1.0, -3.0})
  {
    const auto tr = solve_amplitude(i_lambda(1.5, mu, eps), eps, 1.0, ForcingSpec::zero_forcing());
    EXPECT_LE(tr.l2_norm, prev);
    prev = tr.l2_norm;
  }
}

TEST(DecayFit, QuarterLaw)
{
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  auto fit = [&](double mu) {
    std::vector<AmplitudeTrajectory> tr;
    for (double e : eps)
    {
      tr.push_back(solve_amplitude(i_lambda(1.84, mu, e), e, 1.0, ForcingSpec::zero_forcing()));
    }
    return std::make_pair(decay_fit(eps, tr), tr.back().l2_norm);
  };
  EXPECT_NEAR(fit(-0.3536).first, 0.25, 0.02);
  EXPECT_NEAR(fit(0.0).first, 0.0, 0.01);
  const auto a = fit(-1.0), b = fit(-0.1);
  EXPECT_NEAR(a.first, 0.25, 0.05);
  EXPECT_NEAR(b.first, 0.25, 0.05);
  EXPECT_GT(std::abs(a.second - b.second), 1e-3);
}

TEST(DecayFit, RejectsDegenerateGrid)
{
  std::vector<AmplitudeTrajectory> tr(3);
  EXPECT_THROW(decay_fit({1e-2, 1e-3, 1e-4}, tr), ConfigurationError);
  tr.resize(4);
  EXPECT_THROW(decay_fit({1e-2, 2e-2, 3e-2, 4e-2}, tr), ConfigurationError);
}

TEST(Holder, ZeroAndConstantForcing)
{
  EXPECT_EQ(holder_kernel_check(ForcingSpec::zero_forcing(), -0.5, 1e-3, 2.0).lhs, 0.0);
  const double mu = -0.7, eps = 1e-3;
  const auto h = holder_kernel_check(ForcingSpec::step(1.0), mu, eps, std::numeric_limits<double>::infinity());
  const double se = std::sqrt(eps);
  EXPECT_NEAR(h.lhs, se / std::abs(mu) * (1.0 - std::exp(mu / se)), 1e-14);
  EXPECT_NEAR(h.ratio, 1.0, 1e-8);
  EXPECT_TRUE(h.holds);
  EXPECT_EQ(h.kernel_exponent, 0.5);
}

TEST(Holder, OscillatoryForcingCancels)
{
  const double eps = 1e-3;
  std::vector<double> t;
  std::vector<cplx> v;
  const int n = 40000;
  for (int i = 0; i <= n; ++i)
  {
    t.push_back(static_cast<double>(i) / n);
    v.emplace_back(std::sin(t.back() / eps));
  }
  const auto h = holder_kernel_check(ForcingSpec::sampled(t, v), -0.5, eps, 2.0);
  EXPECT_TRUE(h.holds);
  EXPECT_LT(h.lhs, 0.1 * h.rhs);
}

TEST(Holder, RandomizedCombinations)
{
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial)
  {
    const double eps = std::pow(10.0, -2.0 - 2.0 * u(rng));
    const double mu = -0.1 - 2.0 * u(rng);
    const double p = trial % 5 == 0 ? std::numeric_limits<double>::infinity() : 1.0 + 5.0 * u(rng);
    ForcingSpec f;
    switch (trial % 3)
    {
    case 0:
      f = ForcingSpec::step(cplx(u(rng) - 0.5, u(rng) - 0.5));
      break;
    case 1:
      f = ForcingSpec::power(cplx(2.0 * u(rng), 0.0), 3.0 * u(rng));
      break;
    default:
    {
      std::vector<double> t;
      std::vector<cplx> v;
      for (int i = 0; i <= 2000; ++i)
      {
        t.push_back(i / 2000.0);
        v.emplace_back(u(rng) - 0.5, u(rng) - 0.5);
      }
      f = ForcingSpec::sampled(t, v);
    }
    }
    const auto h = holder_kernel_check(f, mu, eps, p);
    EXPECT_TRUE(h.holds) << "trial " << trial << " ratio " << h.ratio;
    EXPECT_LE(h.lhs, h.rhs * (1.0 + 1e-8));
  }
  EXPECT_THROW(holder_kernel_check(ForcingSpec::step(1.0), -0.5, 1e-3, 0.5), ConfigurationError);
}

TEST(Forcing, DeclaredBound)
{
  auto f = ForcingSpec::step(2.0);
  f.declared_p = 2.0;
  f.declared_bound = 2.0;
  EXPECT_NO_THROW(f.validate(1.0));
  f.declared_bound = 1.5;
  EXPECT_THROW(f.validate(1.0), ConfigurationError);
  EXPECT_THROW(ForcingSpec::sampled({0.0, 0.5}, {1.0, 1.0}).validate(1.0), ConfigurationError);
}

TEST(Projection, SingleModeAndLinearity)
{
  const auto &s = disc_setup();
  const auto c = classify({});
  const auto p = project_oscillatory(gradient_field(s.modes[0]), s.modes, c, s.quad);
  EXPECT_NEAR(std::abs(p.coeff(0) - 1.0), 0.0, 1e-8);
  for (Eigen::Index l = 1; l < p.coeff.size(); ++l)
  {
    EXPECT_LT(std::abs(p.coeff(l)), 1e-8);
  }
  const auto f = cplx(2.0) * gradient_field(s.modes[2]) + cplx(0.0, -3.0) * gradient_field(s.modes[6]);
  const auto q = project_oscillatory(f, s.modes, c, s.quad);
  EXPECT_NEAR(std::abs(q.coeff(2) - 2.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(q.coeff(6) - cplx(0.0, -3.0)), 0.0, 1e-8);
  const Point x(0.3, -0.2);
  EXPECT_NEAR((q.reconstruct(s.modes, x) - f.jet(x).m).norm(), 0.0, 1e-7);
  // Parseval with equality in the span.
  EXPECT_NEAR(q.coeff.squaredNorm(), 13.0, 1e-7);
}

TEST(Projection, SolenoidalFieldHasNoComponents)
{
  const auto &s = disc_setup();
  acoustic::FieldPair swirl(s.disc.id(), 0, [](const Point &x) {
    acoustic::FieldJet j;
    j.order = 0;
    const double h = 1.0 - x.squaredNorm();
    j.m = Vec2c(-x.y() * h, x.x() * h);
    return j;
  });
  const double tol = 1e-8;
  layer::DampingRate r;
  r.k = 1;
  r.i_lambda1 = cplx(-1.0, 0.0);
  const auto p = project_oscillatory(swirl, s.modes, classify({r}, tol), s.quad);
  EXPECT_LT(p.coeff.cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_EQ(p.q1_index, std::vector<std::size_t>{1});
  EXPECT_EQ(p.q2.size(), static_cast<Eigen::Index>(s.modes.size() - 1));
}
