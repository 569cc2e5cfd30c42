// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/special_functions/ellint_2.hpp>
#include <gtest/gtest.h>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/geometry.hpp"
#include "oracles/geometry_oracles.hpp"

using namespace acoustic_layer;
using namespace acoustic_layer::geometry;

TEST(ChartPoint, DiscRadialExamples)
{
  const auto disc = Domain::disc(1.0, 0.9);
  const auto a = disc.chart_point(Point(0.5, 0.0));
  ASSERT_TRUE(a.in_tube);
  EXPECT_NEAR(a.d, 0.5, 1e-15);
  EXPECT_NEAR((a.proj - Point(1.0, 0.0)).norm(), 0.0, 1e-15);
  // The distance gradient points into the domain, i.e. -n(proj).
  EXPECT_NEAR((a.grad_d - Vec2(-1.0, 0.0)).norm(), 0.0, 1e-15);

  const auto b = disc.chart_point(Point(0.0, 0.9));
  EXPECT_NEAR(b.d, 0.1, 1e-15);
  EXPECT_NEAR((b.proj - Point(0.0, 1.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(b.s, kPi / 2, 1e-14);
}

TEST(ChartPoint, OutsideTubeReturnsDistanceOnly)
{
  const auto disc = Domain::disc(1.0);
  const auto c = disc.chart_point(Point(0.1, 0.0));
  EXPECT_FALSE(c.in_tube);
  EXPECT_NEAR(c.d, 0.9, 1e-15);
}

TEST(ChartPoint, OutsideDomainThrows)
{
  const auto disc = Domain::disc(1.0);
  EXPECT_THROW(disc.chart_point(Point(1.2, 0.0)), DomainError);
  const auto ann = Domain::annulus(0.5, 1.0);
  EXPECT_THROW(ann.chart_point(Point(0.1, 0.0)), DomainError);
}

TEST(ChartPoint, EllipseDistanceMatchesBruteForce)
{
  const auto ell = Domain::ellipse(2.0, 1.0);
  const Point x(1.0, 0.0);
  const auto ref = oracles::ellipse_nearest(2.0, 1.0, x);
  const auto cp = ell.chart_point(x);
  EXPECT_NEAR(cp.d, ref.d, 1e-10);
  EXPECT_FALSE(cp.in_tube);
}

TEST(ChartPoint, EllipseTubeInvariants)
{
  const double a = 2.0, b = 1.0;
  const auto ell = Domain::ellipse(a, b);
  const auto &bc = ell.boundary()[0];
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ut(0.0, 2 * kPi), ud(0.0, 0.95 * ell.tubular_width());
  for (int trial = 0; trial < 40; ++trial)
  {
    const double t = ut(rng);
    const Point foot(a * std::cos(t), b * std::sin(t));
    const Vec2 n = Vec2(b * std::cos(t), a * std::sin(t)).normalized();
    const Point x = foot - ud(rng) * n;
    const auto cp = ell.chart_point(x);
    ASSERT_TRUE(cp.in_tube);
    const auto ref = oracles::ellipse_nearest(a, b, x);
    EXPECT_NEAR(cp.d, ref.d, 1e-10);
    EXPECT_NEAR((cp.proj - ref.foot).norm(), 0.0, 1e-8);
    EXPECT_NEAR(std::abs((x - cp.proj).norm() - cp.d), 0.0, 1e-10);
    EXPECT_NEAR(cp.grad_d.norm(), 1.0, 1e-10);
    for (const auto &p : bc.x)
    {
      EXPECT_GE((x - p).norm(), cp.d - 1e-12);
    }
    // The projection is constant along the normal line and its arc-length
    // coordinate is orthogonal to grad d.
    const auto moved = ell.chart_point(x + 1e-3 * cp.grad_d);
    EXPECT_NEAR((moved.proj - cp.proj).norm(), 0.0, 1e-9);
    const double h = 1e-6;
    const Vec2 grad_s((ell.chart_point(x + Vec2(h, 0)).s - ell.chart_point(x - Vec2(h, 0)).s) / (2 * h),
                      (ell.chart_point(x + Vec2(0, h)).s - ell.chart_point(x - Vec2(0, h)).s) / (2 * h));
    if (grad_s.norm() < 100.0)
    {
      EXPECT_NEAR(grad_s.dot(cp.grad_d), 0.0, 1e-6);
    }
    // Consistency with the boundary frame at the returned arc length.
    const auto f = ell.frame(0, cp.s);
    EXPECT_NEAR((f.x - cp.proj).norm(), 0.0, 1e-9);
  }
}

TEST(ChartPoint, AnnulusPicksNearerCircle)
{
  const auto ann = Domain::annulus(0.5, 1.0, 0.2);
  const auto inner = ann.chart_point(Point(0.0, 0.6));
  ASSERT_TRUE(inner.in_tube);
  EXPECT_EQ(inner.component, 1u);
  EXPECT_NEAR(inner.d, 0.1, 1e-15);
  EXPECT_NEAR((inner.grad_d - Vec2(0.0, 1.0)).norm(), 0.0, 1e-15);
  const auto f = ann.frame(1, inner.s);
  EXPECT_NEAR((f.x - inner.proj).norm(), 0.0, 1e-14);
  EXPECT_NEAR((f.normal + inner.grad_d).norm(), 0.0, 1e-14);
}

TEST(ChartPoint, RectangleCornerAmbiguity)
{
  const auto sq = Domain::rectangle(1.0, 1.0);
  EXPECT_TRUE(sq.corner_domain());
  try
  {
    sq.chart_point(Point(0.1, 0.1));
    FAIL() << "expected an ambiguity error";
  }
  catch (const AmbiguityError &e)
  {
    EXPECT_NEAR((e.first() - e.second()).norm(), std::sqrt(2.0) * 0.1, 1e-14);
  }
  const auto cp = sq.chart_point(Point(0.5, 0.1));
  EXPECT_NEAR(cp.d, 0.1, 1e-15);
  EXPECT_NEAR((cp.grad_d - Vec2(0, 1)).norm(), 0.0, 1e-15);
}

TEST(ChartPoint, RejectsWidthBeyondReach)
{
  EXPECT_THROW(Domain::disc(1.0, 1.0), ConfigurationError);
  EXPECT_THROW(Domain::ellipse(2.0, 1.0, 0.6), ConfigurationError);
  EXPECT_THROW(Domain::disc(1.0, -0.1), ConfigurationError);
}

TEST(Cutoff, SupportAndMonotonicity)
{
  const double delta = 0.6;
  EXPECT_EQ(cutoff_profile(0.0, delta).value, 1.0);
  EXPECT_EQ(cutoff_profile(delta / 3, delta).value, 1.0);
  EXPECT_EQ(cutoff_profile(delta, delta).value, 0.0);
  EXPECT_EQ(cutoff_profile(2 * delta / 3, delta).value, 0.0);
  const double mid = cutoff_profile(delta / 2, delta).value;
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
  double prev = 1.0;
  for (int i = 0; i <= 1000; ++i)
  {
    const double d = delta * i / 1000.0;
    const auto c = cutoff_profile(d, delta);
    EXPECT_LE(c.value, prev + 1e-15);
    EXPECT_TRUE(std::isfinite(c.d1) && std::isfinite(c.d2));
    EXPECT_LE(std::abs(c.d1), 100.0);
    prev = c.value;
  }
  const double d = 0.27, h = 1e-6;
  EXPECT_NEAR(cutoff_profile(d, delta).d1,
              (cutoff_profile(d + h, delta).value - cutoff_profile(d - h, delta).value) / (2 * h), 1e-6);
  EXPECT_NEAR(cutoff_profile(d, delta).d2,
              (cutoff_profile(d + h, delta).d1 - cutoff_profile(d - h, delta).d1) / (2 * h), 1e-5);
  const auto disc = Domain::disc(1.0);
  EXPECT_EQ(disc.cutoff(Point(0.0, 0.99)), 1.0);
  EXPECT_EQ(disc.cutoff(Point(0.0, 0.0)), 0.0);
}

TEST(TangentialDerivative, SpectralOnCircle)
{
  const auto disc = Domain::disc(1.5);
  const auto &bc = disc.boundary()[0];
  std::vector<double> f(bc.size());
  for (std::size_t j = 0; j < f.size(); ++j)
  {
    f[j] = std::sin(2 * kPi * bc.s[j] / bc.length);
  }
  const auto d = tangential_derivative(f, bc);
  for (std::size_t j = 0; j < f.size(); ++j)
  {
    EXPECT_NEAR(d[j], 2 * kPi / bc.length * std::cos(2 * kPi * bc.s[j] / bc.length), 1e-10);
  }
}

TEST(TangentialDerivative, FourthOrderOnMeshBoundary)
{
  std::vector<double> errors;
  for (int rings : {16, 32})
  {
    const auto dom = Domain::from_mesh(disc_mesh(1.0, rings));
    const auto &bc = dom.boundary()[0];
    std::vector<double> f(bc.size());
    for (std::size_t j = 0; j < f.size(); ++j)
    {
      f[j] = std::sin(3 * kPi * bc.s[j] / bc.length * 2);
    }
    const auto d = tangential_derivative(f, bc);
    double err = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
    {
      err = std::max(err, std::abs(d[j] - 6 * kPi / bc.length * std::cos(6 * kPi * bc.s[j] / bc.length)));
    }
    errors.push_back(err);
  }
  EXPECT_GT(errors[0] / errors[1], 12.0);
}

TEST(TangentialDerivative, NonUniformWithoutWeightsIsRejected)
{
  const auto dom = Domain::from_mesh(disc_mesh(1.0, 4));
  auto bc = dom.boundary()[0];
  bc.weight.clear();
  std::vector<double> f(bc.size(), 1.0);
  EXPECT_THROW(tangential_derivative(f, bc), ConfigurationError);
}

TEST(Quadrature, WeightsSumToAreaAndLength)
{
  const double ell_perimeter = 4.0 * 2.0 * boost::math::ellint_2(std::sqrt(1.0 - 0.25));
  struct Case
  {
    Domain dom;
    double area, length;
  };
  const std::vector<Case> cases = {
    {Domain::disc(1.3), kPi * 1.69, 2 * kPi * 1.3},
    {Domain::annulus(0.4, 1.1), kPi * (1.21 - 0.16), 2 * kPi * 1.5},
    {Domain::ellipse(2.0, 1.0), 2 * kPi, ell_perimeter},
    {Domain::rectangle(1.0, 0.5), 0.5, 3.0},
  };
  for (const auto &c : cases)
  {
    const auto q = build_quadrature(c.dom);
    double area = 0.0, length = 0.0;
    for (const auto &n : q.interior)
    {
      EXPECT_GT(n.w, 0.0);
      area += n.w;
    }
    for (const auto &n : q.boundary)
    {
      EXPECT_GT(n.w, 0.0);
      length += n.w;
    }
    EXPECT_NEAR(area / c.area, 1.0, 1e-10) << to_string(c.dom.kind());
    EXPECT_NEAR(length / c.length, 1.0, 1e-10) << to_string(c.dom.kind());
  }
}

TEST(Quadrature, LayerPartitionIntegratesExactly)
{
  const auto disc = Domain::disc(1.0, 0.9);
  const auto q = build_quadrature(disc, {10, 12, 128, 1e-4});
  ASSERT_TRUE(q.has_layer());
  // f = exp(-d / sqrt(eps)) + r^2: partitioned integration.
  auto f = [](const Point &x) { return std::exp(-(1.0 - x.norm()) / 1e-2) + x.squaredNorm(); };
  double sum = 0.0;
  for (std::size_t i = 0; i < q.interior.size(); ++i)
  {
    sum += q.interior_partition[i] * q.interior[i].w * f(q.interior[i].x);
  }
  for (const auto &n : q.layer)
  {
    sum += cutoff_profile(n.d, q.delta).value * n.w * f(n.x);
  }
  // int_0^1 e^{-(1-r)/h} r dr * 2 pi + pi / 2, h = 0.01.
  const double h = 1e-2;
  const double layer = 2 * kPi * (h - h * h * (1.0 - std::exp(-1.0 / h)));
  EXPECT_NEAR(sum, layer + kPi / 2, 1e-9);
}

TEST(Quadrature, LayerRuleRejectsCorners)
{
  EXPECT_THROW(build_quadrature(Domain::rectangle(1, 1), {10, 4, 16, 1e-3}), UnsupportedDomainError);
}

TEST(Mesh, RoundTripAndValidation)
{
  const auto mesh = rectangle_mesh(1.0, 2.0, 3, 4);
  std::stringstream ss;
  write_mesh(ss, mesh);
  const auto back = read_mesh(ss);
  EXPECT_EQ(back.nodes.size(), mesh.nodes.size());
  EXPECT_EQ(back.triangles, mesh.triangles);
  EXPECT_EQ(back.boundary_edges, mesh.boundary_edges);

  auto bad = mesh;
  bad.nodes[bad.triangles[0][1]] = bad.nodes[bad.triangles[0][0]];
  EXPECT_THROW(validate_mesh(bad), MeshError);

  auto open = mesh;
  open.boundary_edges.pop_back();
  EXPECT_THROW(validate_mesh(open), MeshError);

  std::stringstream broken("nodes 3 triangle 1 boundary_edges 3");
  EXPECT_THROW(read_mesh(broken), MeshError);
}

TEST(Mesh, DomainFromMesh)
{
  const auto dom = Domain::from_mesh(disc_mesh(1.0, 12));
  ASSERT_EQ(dom.boundary().size(), 1u);
  const auto &bc = dom.boundary()[0];
  EXPECT_EQ(bc.size(), 72u);
  // Outward normals on a centered disc point away from the origin.
  for (std::size_t j = 0; j < bc.size(); ++j)
  {
    EXPECT_GT(bc.normal[j].dot(bc.x[j]), 0.0);
    EXPECT_NEAR(bc.curvature[j], 1.0, 0.02);
  }
  const auto q = build_quadrature(dom);
  double area = 0.0;
  for (const auto &n : q.interior)
  {
    area += n.w;
  }
  EXPECT_NEAR(area, dom.area(), 1e-12);
  EXPECT_NEAR(dom.tubular_width(), 0.5, 0.02);
  const auto cp = dom.chart_point(Point(0.0, 0.8));
  EXPECT_TRUE(cp.in_tube);
  EXPECT_NEAR(cp.d, 0.2, 0.01);
  EXPECT_THROW(dom.chart_point(Point(2.0, 0.0)), DomainError);
}
