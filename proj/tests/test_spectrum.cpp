// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/geometry.hpp"
#include "acoustic_layer/spectrum.hpp"

using namespace acoustic_layer;
using namespace acoustic_layer::geometry;
using namespace acoustic_layer::spectrum;

TEST(ClosedForm, UnitSquareFirstGroup)
{
  const auto sq = Domain::rectangle(1.0, 1.0);
  auto modes = solve_closed_form(sq, 3);
  ASSERT_EQ(modes.size(), 3u);
  EXPECT_NEAR(modes[0].lambda0, kPi, 1e-14);
  EXPECT_NEAR(modes[1].lambda0, kPi, 1e-14);
  EXPECT_NEAR(modes[2].lambda0, std::sqrt(2.0) * kPi, 1e-14);
  const auto groups = group_eigenvalues(modes, default_cluster_tolerance(modes));
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].multiplicity(), 2u);
  EXPECT_EQ(groups[1].multiplicity(), 1u);
  // Ties are ordered with cos(pi x) first.
  EXPECT_NEAR(modes[0].value(Point(0.0, 0.3)), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(modes[0].value(Point(1.0, 0.7)), -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(modes[0].value(Point(0.25, 0.7)), 1.0, 1e-14);
}

TEST(ClosedForm, DiscFirstEigenvalue)
{
  const auto disc = Domain::disc(1.0);
  const auto modes = solve_closed_form(disc, 6);
  EXPECT_NEAR(modes[0].lambda0, 1.8411837813406595, 1e-10);
  EXPECT_NEAR(modes[1].lambda0, 1.8411837813406595, 1e-10);
  EXPECT_NEAR(modes[2].lambda0, 3.0542369282271404, 1e-10);
  EXPECT_NEAR(modes[4].lambda0, 3.8317059702075125, 1e-10);
  const auto scaled = solve_closed_form(Domain::disc(2.0), 1);
  EXPECT_NEAR(scaled[0].lambda0, 1.8411837813406595 / 2.0, 1e-10);
}

TEST(ClosedForm, AnnulusEigenvalues)
{
  const auto ann = Domain::annulus(0.5, 1.0);
  const auto modes = solve_closed_form(ann, 4);
  // n = 1 is the lowest, then n = 2 (doublets).
  EXPECT_NEAR(modes[0].lambda0, modes[1].lambda0, 1e-12);
  EXPECT_NEAR(modes[2].lambda0, 2.6812042866688417, 1e-10);
}

TEST(ClosedForm, GramAndRayleighIdentities)
{
  for (const auto &dom : {Domain::disc(1.0), Domain::annulus(0.5, 1.0), Domain::rectangle(1.0, 0.7)})
  {
    auto modes = solve_closed_form(dom, 8);
    group_eigenvalues(modes, 1e-8);
    const auto q = build_quadrature(dom, {15, 16, 256, {}});
    for (std::size_t a = 0; a < modes.size(); ++a)
    {
      for (std::size_t b = 0; b < modes.size(); ++b)
      {
        EXPECT_NEAR(l2_inner(modes[a], modes[b]), a == b ? 1.0 : 0.0, 1e-10) << to_string(dom.kind());
      }
      double mean = 0.0, grad2 = 0.0, val2 = 0.0;
      for (const auto &n : q.interior)
      {
        const double v = modes[a].value(n.x);
        mean += n.w * v;
        val2 += n.w * v * v;
        grad2 += n.w * modes[a].gradient(n.x).squaredNorm();
      }
      EXPECT_NEAR(mean, 0.0, 1e-8);
      EXPECT_NEAR(val2, 1.0, 1e-6);
      EXPECT_NEAR(grad2, modes[a].lambda0 * modes[a].lambda0, 1e-6 * grad2);
      // Neumann condition.
      const auto &bc = dom.boundary();
      for (std::size_t c = 0; c < bc.size(); ++c)
      {
        for (std::size_t j = 0; j < bc[c].size(); j += 7)
        {
          if (dom.corner_domain() && bc[c].weight[j] == 0.0)
          {
            continue;
          }
          EXPECT_NEAR(modes[a].boundary_gradient(c, j).dot(bc[c].normal[j]), 0.0, 1e-9);
        }
      }
    }
  }
}

TEST(ClosedForm, JetMatchesFiniteDifferences)
{
  const auto ann = Domain::annulus(0.5, 1.0);
  const auto modes = solve_closed_form(ann, 5);
  const Point x(0.3, 0.55);
  const double h = 1e-5;
  for (const auto &m : modes)
  {
    const auto j = m.jet(x);
    const auto jx = m.jet(x + Vec2(h, 0)), jy = m.jet(x + Vec2(0, h));
    const auto kx = m.jet(x - Vec2(h, 0)), ky = m.jet(x - Vec2(0, h));
    EXPECT_NEAR(j.g.x(), (jx.v - kx.v) / (2 * h), 1e-7);
    EXPECT_NEAR(j.h(0, 1), (jy.g.x() - ky.g.x()) / (2 * h), 1e-6);
    EXPECT_NEAR(j.h(1, 1), (jy.g.y() - ky.g.y()) / (2 * h), 1e-6);
    // Helmholtz: trace of the Hessian is -lambda^2 u.
    EXPECT_NEAR(j.h.trace(), -m.lambda0 * m.lambda0 * j.v, 1e-9);
    EXPECT_NEAR(j.grad_lap.x(), (jx.h.trace() - kx.h.trace()) / (2 * h), 1e-5);
  }
}

TEST(BoundaryGradient, SquareAndDiscValues)
{
  const auto sq = Domain::rectangle(1.0, 1.0);
  const auto modes = solve_closed_form(sq, 2);
  // sqrt(2) cos(pi x): gradient pi sqrt(2) sin(pi x) on y = 0 and y = 1.
  EXPECT_NEAR(boundary_gradient_integral(modes[0], modes[0]), 2 * kPi * kPi, 1e-8);
  EXPECT_NEAR(boundary_gradient_integral(modes[0], modes[1]), 0.0, 1e-10);

  const auto disc = Domain::disc(1.0);
  auto dm = solve_closed_form(disc, 6);
  for (std::size_t a = 0; a < 6; ++a)
  {
    for (std::size_t b = 0; b < 6; ++b)
    {
      EXPECT_NEAR(boundary_gradient_integral(dm[a], dm[b]), boundary_gradient_integral(dm[b], dm[a]), 1e-12);
    }
  }
  EXPECT_NEAR(boundary_gradient_integral(dm[0], dm[1]), 0.0, 1e-10);
  // The first radial mode has no tangential gradient on the circle.
  EXPECT_NEAR(dm[4].lambda0, 3.8317059702075125, 1e-10);
  EXPECT_TRUE(is_undamped_class(dm[4]));
  EXPECT_FALSE(is_undamped_class(dm[0]));
  // Tangential derivative of n = 1: integral of (d/ds)^2 = lambda-independent norm.
  const double n1 = boundary_gradient_integral(dm[0], dm[0]);
  EXPECT_GT(n1, 0.0);
}

TEST(Fem, SquareEigenvaluesAndConvergence)
{
  const auto coarse = Domain::from_mesh(rectangle_mesh(1.0, 1.0, 16, 16));
  const auto fine = Domain::from_mesh(rectangle_mesh(1.0, 1.0, 32, 32));
  const auto mc = solve_fem(coarse, 3);
  const auto mf = solve_fem(fine, 3);
  const double exact = kPi * kPi;
  const double ec = mc[0].lambda0 * mc[0].lambda0 - exact;
  const double ef = mf[0].lambda0 * mf[0].lambda0 - exact;
  EXPECT_GT(ec, 0.0);
  EXPECT_NEAR(ec / ef, 4.0, 0.4);
  // Stiffness annihilates constants.
  const auto data = assemble_p1(fine);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(data->stiffness.rows());
  EXPECT_LT((data->stiffness * ones).norm(), 1e-10);
  const double total_mass = ones.dot(data->mass * ones);
  EXPECT_NEAR(total_mass, 1.0, 1e-12);
}

TEST(Fem, SquareFineMeshAccuracyAndClustering)
{
  const auto dom = Domain::from_mesh(rectangle_mesh(1.0, 1.0, 64, 64));
  auto modes = solve_fem(dom, 6);
  const double exact[] = {kPi, kPi, std::sqrt(2.0) * kPi, 2 * kPi, 2 * kPi, std::sqrt(5.0) * kPi};
  for (int i = 0; i < 6; ++i)
  {
    EXPECT_NEAR(modes[i].lambda0 * modes[i].lambda0 / (exact[i] * exact[i]), 1.0, 1e-2);
  }
  const auto groups = group_eigenvalues(modes, default_cluster_tolerance(modes));
  ASSERT_GE(groups.size(), 3u);
  EXPECT_EQ(groups[0].multiplicity(), 2u);
  EXPECT_EQ(groups[1].multiplicity(), 1u);
  EXPECT_EQ(groups[2].multiplicity(), 2u);
  for (std::size_t a = 0; a < 6; ++a)
  {
    EXPECT_NEAR(l2_inner(modes[a], modes[a]), 1.0, 1e-10);
    EXPECT_NEAR(l2_inner(modes[a], modes[(a + 1) % 6]), 0.0, 1e-8);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(modes[a].nodal.size());
    EXPECT_NEAR(ones.dot(modes[a].fem->mass * modes[a].nodal), 0.0, 1e-10);
  }
  // The doublet spans cos(pi x) and cos(pi y): boundary integrals of the
  // pair are close to 2 pi^2 times the identity in any orthonormal basis.
  const double g00 = boundary_gradient_integral(modes[0], modes[0]);
  const double g11 = boundary_gradient_integral(modes[1], modes[1]);
  EXPECT_NEAR((g00 + g11) / (4 * kPi * kPi), 1.0, 0.05);
}

TEST(Fem, DiscMeshMatchesClosedForm)
{
  const auto dom = Domain::from_mesh(disc_mesh(1.0, 24));
  const auto modes = solve(dom, 3);
  EXPECT_EQ(modes[0].source, ModeSource::fem);
  EXPECT_NEAR(modes[0].lambda0 / 1.8411837813406595, 1.0, 5e-3);
  EXPECT_NEAR(modes[2].lambda0 / 3.0542369282271404, 1.0, 5e-3);
}

TEST(Spectrum, DispatchAndErrors)
{
  EXPECT_EQ(solve(Domain::disc(1.0), 2)[0].source, ModeSource::closed_form);
  EXPECT_THROW(solve(Domain::ellipse(2.0, 1.0), 2), UnsupportedDomainError);
  EXPECT_TRUE(solve_closed_form(Domain::disc(1.0), 0).empty());
}
