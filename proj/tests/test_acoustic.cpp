// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/jet.hpp"

using namespace acoustic_layer;
using namespace acoustic_layer::acoustic;
using geometry::Domain;

namespace
{

struct DiscSetup
{
  Domain disc = Domain::disc(1.0, 0.9);
  std::vector<spectrum::NeumannMode> modes = spectrum::solve_closed_form(disc, 8);
  geometry::QuadratureSet quad = geometry::build_quadrature(disc);
};

const DiscSetup &disc_setup()
{
  static const DiscSetup s;
  return s;
}

std::vector<Point> sample_points(double radius, int count)
{
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < count)
  {
    const Point p(radius * (2.0 * u(rng) - 1.0), radius * (2.0 * u(rng) - 1.0));
    if (p.norm() < 0.99 * radius)
    {
      pts.push_back(p);
    }
  }
  pts.emplace_back(radius, 0.0);
  pts.push_back(radius * Point(std::cos(2.0), std::sin(2.0)));
  return pts;
}

double max_diff(const FieldPair &a, const FieldPair &b, const std::vector<Point> &pts)
{
  double e = 0.0;
  for (const auto &x : pts)
  {
    const FieldJet ja = a.jet(x), jb = b.jet(x);
    e = std::max({e, std::abs(ja.psi - jb.psi), (ja.m - jb.m).norm()});
  }
  return e;
}

// Tangential field h(r^2) (-y, x) with h = 1 + b r^2 + c r^4.
FieldPair swirl(const Domain &d, double b, double c)
{
  return FieldPair(d.id(), 2, [b, c](const Point &x) {
    const auto X = Jet2d::variable_u(x.x()), Y = Jet2d::variable_v(x.y());
    const Jet2d r2 = X * X + Y * Y;
    const Jet2d h = Jet2d(1.0) + b * r2 + c * (r2 * r2);
    const Jet2d ux = -(Y * h), uy = X * h;
    FieldJet j;
    j.m = Vec2c(ux.v, uy.v);
    j.grad_m << ux.du, ux.dv, uy.du, uy.dv;
    j.lap_m = Vec2c(ux.duu + ux.dvv, uy.duu + uy.dvv);
    j.grad_div_m = Vec2c(ux.duu + uy.duv, ux.duv + uy.dvv);
    return j;
  });
}

// b making the swirl satisfy nu (g' - g/R) + rho g = 0 at r = R, g = r h.
double slip_coefficient(double R, double c, double nu, double rho)
{
  return -(4.0 * nu * c * std::pow(R, 4) + rho * (R + c * std::pow(R, 5))) / (2.0 * nu * R * R + rho * std::pow(R, 3));
}

}  // namespace

TEST(OperatorConfig, Validation)
{
  OperatorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.xi = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigurationError);
  cfg = OperatorConfig{};
  cfg.chi = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigurationError);
}

TEST(InnerProduct, NormalizationAndOrthogonality)
{
  const auto &s = disc_setup();
  for (std::size_t k = 0; k < 5; ++k)
  {
    const auto p = make_acoustic_mode(s.modes[k], 1).field();
    const auto m = make_acoustic_mode(s.modes[k], -1).field();
    EXPECT_NEAR(std::abs(inner_product(p, p, s.quad) - 1.0), 0.0, 1e-8);
    EXPECT_LT(std::abs(inner_product(p, m, s.quad)), 1e-8);
    const auto q = make_acoustic_mode(s.modes[k + 1], 1).field();
    EXPECT_LT(std::abs(inner_product(p, q, s.quad)), 1e-8);
  }
}

TEST(InnerProduct, MismatchedQuadratureRaises)
{
  const auto &s = disc_setup();
  const auto other = Domain::disc(1.0);
  const auto q = geometry::build_quadrature(other);
  const auto p = make_acoustic_mode(s.modes[0], 1).field();
  EXPECT_THROW(inner_product(p, p, q), QuadratureError);
}

TEST(Operators, AcousticModeIsEigenvector)
{
  const auto &s = disc_setup();
  for (std::size_t k = 0; k < 6; ++k)
  {
    for (int sign : {1, -1})
    {
      const auto mode = make_acoustic_mode(s.modes[k], sign);
      const auto phi = mode.field();
      const auto res = apply_A(phi) - mode.i_lambda() * phi;
      EXPECT_LT(lp_norm(res, s.quad, 2.0), 1e-8);
    }
  }
}

TEST(Operators, DiffusionOfConstantVanishes)
{
  const auto &s = disc_setup();
  const FieldPair c(s.disc.id(), 2, [](const Point &) {
    FieldJet j;
    j.m = Vec2c(cplx(1.0, 2.0), -3.0);
    return j;
  });
  EXPECT_EQ(lp_norm(apply_D(c, OperatorConfig{}), s.quad, 2.0), 0.0);
}

TEST(Operators, ZeroEpsMatchesA)
{
  const auto &s = disc_setup();
  const auto phi = make_acoustic_mode(s.modes[2], 1).field();
  EXPECT_EQ(lp_norm(apply_A_eps(phi, OperatorConfig{}, 0.0) - apply_A(phi), s.quad, 2.0), 0.0);
}

TEST(Operators, Linearity)
{
  const auto &s = disc_setup();
  const OperatorConfig cfg{1.0, 0.5, 1.4, 1.0};
  const auto a = make_acoustic_mode(s.modes[1], 1).field();
  const auto b = make_acoustic_mode(s.modes[4], -1).field();
  const cplx al(0.3, -1.2), be(2.0, 0.5);
  const auto lhs = apply_A_eps(al * a + be * b, cfg, 0.01);
  const auto rhs = al * apply_A_eps(a, cfg, 0.01) + be * apply_A_eps(b, cfg, 0.01);
  EXPECT_LT(lp_norm(lhs - rhs, s.quad, 2.0), 1e-10);
}

TEST(Operators, AntiSelfAdjoint)
{
  const auto &s = disc_setup();
  const auto a = make_acoustic_mode(s.modes[0], 1).field();
  const auto b = (cplx(0.5, 1.0) * make_acoustic_mode(s.modes[0], -1).field()) +
                 make_acoustic_mode(s.modes[3], 1).field();
  const cplx sum = inner_product(apply_A(a), b, s.quad) + inner_product(a, apply_A(b), s.quad);
  EXPECT_LT(std::abs(sum), 1e-8);
}

TEST(Operators, DiffusionFormOnModes)
{
  const auto &s = disc_setup();
  const OperatorConfig cfg{1.0, 0.5, 1.4, 1.0};
  for (std::size_t k = 0; k < 4; ++k)
  {
    const auto pk = make_acoustic_mode(s.modes[k], 1).field();
    const double lam = s.modes[k].lambda0;
    EXPECT_NEAR(std::abs(inner_product(apply_D(pk, cfg), pk, s.quad) + 0.5 * 2.5 * lam * lam), 0.0, 1e-7);
    const auto pl = make_acoustic_mode(s.modes[k + 1], 1).field();
    EXPECT_LT(std::abs(inner_product(apply_D(pk, cfg), pl, s.quad)), 1e-6);
  }
}

TEST(Operators, LowOrderFieldRaisesCapability)
{
  const auto &s = disc_setup();
  const FieldPair rough(s.disc.id(), 0, [](const Point &) { return FieldJet{}; });
  EXPECT_THROW(apply_A(rough), CapabilityError);
  EXPECT_THROW(apply_D(rough, OperatorConfig{}), CapabilityError);
}

TEST(ModeBasis, ProjectionRecoversCoefficients)
{
  const auto &s = disc_setup();
  const auto basis = ModeBasis::create(s.modes, s.quad);
  const auto f = cplx(2.0, 1.0) * basis->mode(2, 1).field() + cplx(0.0, -0.5) * basis->mode(5, -1).field();
  const auto c = basis->project(f);
  EXPECT_NEAR(std::abs(c.plus(2) - cplx(2.0, 1.0)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(c.minus(5) - cplx(0.0, -0.5)), 0.0, 1e-9);
  EXPECT_LT(std::abs(c.plus(5)), 1e-9);
  const auto g = basis->synthesize(c);
  ASSERT_TRUE(g.spectral().has_value());
  EXPECT_LT(max_diff(f, g, sample_points(1.0, 20)), 1e-8);
}

TEST(PseudoInverse, OppositeSignSameMode)
{
  const auto &s = disc_setup();
  const auto basis = ModeBasis::create(s.modes, s.quad);
  const std::size_t k = 4;
  const auto rhs = basis->mode(k, -1).field();
  const auto u = basis->pseudo_inverse(k, 1, rhs);
  const auto expected = (1.0 / cplx(0.0, -2.0 * s.modes[k].lambda0)) * rhs;
  EXPECT_LT(lp_norm(u - expected, s.quad, 2.0), 1e-8);
  EXPECT_TRUE(basis->pseudo_inverse(k, 1, FieldPair::zero(s.disc.id())).is_zero());
}

TEST(PseudoInverse, RoundTripOnComplement)
{
  const auto &s = disc_setup();
  const auto basis = ModeBasis::create(s.modes, s.quad);
  const std::size_t k = 0;  // doublet with mode 1
  std::mt19937 rng(3);
  std::normal_distribution<double> n01;
  FieldPair rhs = FieldPair::zero(s.disc.id());
  for (std::size_t l = 0; l < s.modes.size(); ++l)
  {
    for (int sign : {1, -1})
    {
      if (sign == 1 && l <= 1)
      {
        continue;
      }
      rhs = rhs + cplx(n01(rng), n01(rng)) * basis->mode(l, sign).field();
    }
  }
  const auto u = basis->pseudo_inverse(k, 1, rhs);
  const cplx ilk(0.0, s.modes[k].lambda0);
  const auto back = apply_A(u) - ilk * u;
  EXPECT_LT(lp_norm(back - rhs, s.quad, 2.0), 1e-8 * lp_norm(rhs, s.quad, 2.0));
  const auto c = basis->project(u);
  EXPECT_LT(std::abs(c.plus(0)) + std::abs(c.plus(1)), 1e-9);
}

TEST(PseudoInverse, ResonantComponentRaises)
{
  const auto &s = disc_setup();
  const auto basis = ModeBasis::create(s.modes, s.quad);
  EXPECT_THROW(basis->pseudo_inverse(0, 1, basis->mode(1, 1).field()), SolvabilityError);
}

TEST(PolarField, ModeChannelsMatchClosedForm)
{
  const auto &s = disc_setup();
  const auto grid = std::make_shared<const PolarGrid>(s.disc, 41);
  for (std::size_t k : {0u, 2u, 4u, 5u})
  {
    const auto mode = make_acoustic_mode(s.modes[k], -1);
    const auto a = polar_mode(grid, mode).to_field();
    const auto b = mode.field();
    for (const auto &x : sample_points(1.0, 15))
    {
      const FieldJet ja = a.jet(x), jb = b.jet(x);
      EXPECT_LT(std::abs(ja.psi - jb.psi), 1e-10);
      EXPECT_LT((ja.grad_psi - jb.grad_psi).norm(), 1e-9);
      EXPECT_LT((ja.m - jb.m).norm(), 1e-10);
      EXPECT_LT((ja.grad_m - jb.grad_m).norm(), 1e-8);
      EXPECT_LT((ja.lap_m - jb.lap_m).norm(), 1e-6);
    }
  }
}

TEST(PolarField, DiffusionMatchesPointwise)
{
  const auto &s = disc_setup();
  const OperatorConfig cfg{1.0, 0.5, 1.4, 1.0};
  const auto grid = std::make_shared<const PolarGrid>(s.disc, 41);
  const auto mode = make_acoustic_mode(s.modes[2], 1);
  const auto a = polar_apply_D(polar_mode(grid, mode), cfg).to_field();
  const auto b = apply_D(mode.field(), cfg);
  EXPECT_LT(max_diff(a, b, sample_points(1.0, 15)), 1e-6);
}

TEST(SolveInterior, HomogeneousProblem)
{
  const auto &s = disc_setup();
  const auto grid = std::make_shared<const PolarGrid>(s.disc, 31);
  const std::vector<spectrum::NeumannMode> group{s.modes[4]};
  const auto sol = solve_interior(group, 0, 1, PolarField(grid), {});
  EXPECT_EQ(sol.i_nu, cplx(0.0));
  for (const auto &c : sol.phi_perp.channels())
  {
    EXPECT_EQ(c.W.norm() + c.P.norm(), 0.0);
  }
  EXPECT_FALSE(sol.p0_undetermined);
}

TEST(SolveInterior, NonResonantForcing)
{
  const auto &s = disc_setup();
  const auto grid = std::make_shared<const PolarGrid>(s.disc, 41);
  const std::vector<spectrum::NeumannMode> group{s.modes[4]};
  const auto fl = make_acoustic_mode(s.modes[2], 1);
  const auto sol = solve_interior(group, 0, 1, polar_mode(grid, fl), {});
  EXPECT_LT(std::abs(sol.i_nu), 1e-10);
  EXPECT_LT(std::abs(sol.i_nu_quadrature), 1e-8);
  const cplx scale = 1.0 / (fl.i_lambda() - cplx(0.0, s.modes[4].lambda0));
  EXPECT_LT(max_diff(sol.phi_perp.to_field(), scale * fl.field(), sample_points(1.0, 15)), 1e-9);
}

TEST(SolveInterior, SimpleEigenvalueBoundaryForcing)
{
  const auto &s = disc_setup();
  const auto grid = std::make_shared<const PolarGrid>(s.disc, 41);
  const auto &mk = s.modes[4];  // radial mode, J0'(lambda) = 0
  const auto &bc = s.disc.boundary()[0];
  std::vector<cplx> g(bc.size());
  for (std::size_t j = 0; j < bc.size(); ++j)
  {
    g[j] = mk.boundary_value(0, j);
  }
  const int tau = -1;
  const auto sol = solve_interior({mk}, 0, tau, PolarField(grid), {g});
  // int_{dOmega} Psi^2 = 2 for the unit disc, scaled by 1/sqrt(2).
  EXPECT_NEAR(std::abs(sol.i_nu - std::sqrt(2.0)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(sol.i_nu_quadrature - sol.i_nu), 0.0, 1e-9);

  // (A - i mu) phi = i nu phi_k and m.n = g.
  const auto phi = sol.phi_perp.to_field();
  const auto phik = make_acoustic_mode(mk, tau).field();
  const auto res = apply_A(phi) - cplx(0.0, tau * mk.lambda0) * phi - sol.i_nu * phik;
  for (const auto &x : sample_points(1.0, 15))
  {
    const FieldJet j = res.jet(x);
    EXPECT_LT(std::abs(j.psi) + j.m.norm(), 1e-8);
  }
  for (std::size_t j = 0; j < bc.size(); j += 17)
  {
    const Vec2c m = phi.jet(bc.x[j]).m;
    EXPECT_NEAR(std::abs(bc.normal[j].cast<cplx>().dot(m) - g[j]), 0.0, 1e-9);
  }
  EXPECT_LT(std::abs(inner_product(phi, phik, s.quad)), 1e-8);
}

TEST(SolveInterior, DoubletCompatibility)
{
  const auto &s = disc_setup();
  const auto grid = std::make_shared<const PolarGrid>(s.disc, 31);
  const std::vector<spectrum::NeumannMode> group{s.modes[0], s.modes[1]};
  const auto &bc = s.disc.boundary()[0];
  std::vector<cplx> g(bc.size());
  for (std::size_t j = 0; j < bc.size(); ++j)
  {
    g[j] = s.modes[1].boundary_value(0, j);
  }
  EXPECT_THROW(solve_interior(group, 0, 1, PolarField(grid), {g}), CompatibilityError);
  InteriorOptions opts;
  opts.enforce_compatibility = false;
  const auto sol = solve_interior(group, 0, 1, PolarField(grid), {g}, opts);
  EXPECT_TRUE(sol.p0_undetermined);
  EXPECT_LT(std::abs(sol.i_nu), 1e-10);
  EXPECT_GT(std::abs(sol.compat[1]), 0.1);
}

TEST(SolveInterior, AnnulusBothCircles)
{
  const auto ann = Domain::annulus(0.5, 1.0);
  const auto modes = spectrum::solve_closed_form(ann, 16);
  const auto grid = std::make_shared<const PolarGrid>(ann, 30);
  std::size_t k = 0;
  for (; k < modes.size(); ++k)
  {
    if (modes[k].atoms.size() == 1 && modes[k].atoms[0].second.n == 0)
    {
      break;
    }
  }
  ASSERT_LT(k, modes.size());
  const auto &mk = modes[k];
  std::vector<std::vector<cplx>> g(2);
  for (std::size_t c = 0; c < 2; ++c)
  {
    const auto &bc = ann.boundary()[c];
    for (std::size_t j = 0; j < bc.size(); ++j)
    {
      g[c].push_back(mk.boundary_value(c, j) + 0.2 * std::cos(3.0 * std::atan2(bc.x[j].y(), bc.x[j].x())));
    }
  }
  const auto sol = solve_interior({mk}, 0, 1, PolarField(grid), g);
  EXPECT_NEAR(std::abs(sol.i_nu_quadrature - sol.i_nu), 0.0, 1e-8);
  const auto phi = sol.phi_perp.to_field();
  const auto res = apply_A(phi) - cplx(0.0, mk.lambda0) * phi - sol.i_nu * make_acoustic_mode(mk, 1).field();
  for (double r : {0.55, 0.7, 0.95})
  {
    const FieldJet j = res.jet(Point(r * std::cos(0.4), r * std::sin(0.4)));
    EXPECT_LT(std::abs(j.psi) + j.m.norm(), 1e-8);
  }
  for (std::size_t c = 0; c < 2; ++c)
  {
    const auto &bc = ann.boundary()[c];
    for (std::size_t j = 0; j < bc.size(); j += 23)
    {
      const Vec2c m = phi.jet(bc.x[j]).m;
      EXPECT_NEAR(std::abs(bc.normal[j].cast<cplx>().dot(m) - g[c][j]), 0.0, 1e-8);
    }
  }
}

TEST(Duality, SlipCompatibleSwirls)
{
  const auto &s = disc_setup();
  const OperatorConfig cfg{1.0, 0.5, 1.4, 1.0};
  const double eps = 1e-2, rho = cfg.chi / std::sqrt(eps);
  const auto u = swirl(s.disc, slip_coefficient(1.0, 0.0, cfg.nu, rho), 0.0);
  const auto m = swirl(s.disc, slip_coefficient(1.0, 0.3, cfg.nu, rho), 0.3);
  EXPECT_LT(duality_check(s.disc, u, m, cfg, eps, s.quad), 1e-8);
  EXPECT_EQ(duality_check(s.disc, FieldPair::zero(s.disc.id()), FieldPair::zero(s.disc.id()), cfg, eps, s.quad),
            0.0);
}

TEST(Duality, LibrarySwirlMatchesConstruction)
{
  const auto &s = disc_setup();
  const OperatorConfig cfg{0.7, 0.2, 1.4, 1.3};
  const double eps = 1e-3;
  const auto lib = slip_swirl(s.disc, 0.4, cfg, eps);
  const auto ref = swirl(s.disc, slip_coefficient(1.0, 0.4, cfg.nu, cfg.chi / std::sqrt(eps)), 0.4);
  for (const Point &x : sample_points(0.7, 10))
  {
    EXPECT_NEAR((lib.jet(x).lap_m - ref.jet(x).lap_m).norm(), 0.0, 1e-12);
  }
  EXPECT_LT(duality_check(s.disc, lib, slip_swirl(s.disc, -0.2, cfg, eps), cfg, eps, s.quad), 1e-8);
}

TEST(Duality, BrokenSlipRaises)
{
  const auto &s = disc_setup();
  const OperatorConfig cfg;
  const auto u = swirl(s.disc, 0.7, 0.0);
  const auto m = swirl(s.disc, slip_coefficient(1.0, 0.0, 1.0, 10.0), 0.0);
  EXPECT_THROW(duality_check(s.disc, u, m, cfg, 1e-2, s.quad), PreconditionError);
}
