// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/geometry.hpp"

namespace acoustic_layer::geometry
{

namespace
{

template <unsigned N>
void gauss_rule(double a, double b, std::vector<double> &x, std::vector<double> &w)
{
  using rule = boost::math::quadrature::gauss<double, N>;
  const auto &abs = rule::abscissa();
  const auto &wt = rule::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  x.clear();
  w.clear();
  for (std::size_t i = 0; i < abs.size(); ++i)
  {
    if (abs[i] == 0.0)
    {
      x.push_back(mid);
      w.push_back(half * wt[i]);
      continue;
    }
    x.push_back(mid - half * abs[i]);
    w.push_back(half * wt[i]);
    x.push_back(mid + half * abs[i]);
    w.push_back(half * wt[i]);
  }
}

void panel_rule(int order, const std::vector<double> &breaks, std::vector<double> &x, std::vector<double> &w)
{
  x.clear();
  w.clear();
  std::vector<double> px, pw;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
  {
    gauss_legendre(order, breaks[k], breaks[k + 1], px, pw);
    x.insert(x.end(), px.begin(), px.end());
    w.insert(w.end(), pw.begin(), pw.end());
  }
}

constexpr int kGluePanels = 4;

// Sorts breakpoints and drops near duplicates.
void merge_breaks(std::vector<double> &br)
{
  std::sort(br.begin(), br.end());
  std::vector<double> out;
  for (double b : br)
  {
    if (out.empty() || b - out.back() > 1e-12 * std::max(1.0, std::abs(b)))
    {
      out.push_back(b);
    }
  }
  br = std::move(out);
}

std::vector<double> uniform_breaks(double a, double b, int panels)
{
  std::vector<double> br;
  for (int k = 0; k <= panels; ++k)
  {
    br.push_back(a + (b - a) * k / panels);
  }
  return br;
}

}  // namespace

void gauss_legendre(int order, double a, double b, std::vector<double> &x, std::vector<double> &w)
{
  switch (order)
  {
    case 7: gauss_rule<7>(a, b, x, w); break;
    case 10: gauss_rule<10>(a, b, x, w); break;
    case 15: gauss_rule<15>(a, b, x, w); break;
    case 20: gauss_rule<20>(a, b, x, w); break;
    case 25: gauss_rule<25>(a, b, x, w); break;
    case 30: gauss_rule<30>(a, b, x, w); break;
    default: throw ConfigurationError("Gauss-Legendre order must be one of 7, 10, 15, 20, 25, 30");
  }
}

QuadratureSet build_quadrature(const Domain &domain, const QuadratureOptions &opt)
{
  if (opt.panels < 1 || opt.angular < 4)
  {
    throw ConfigurationError("quadrature needs at least one panel and four angular points");
  }
  QuadratureSet q;
  q.domain_id = domain.id();
  q.delta = domain.tubular_width();
  q.eps = opt.eps;
  const auto &p = domain.parameters();
  std::vector<double> rx, rw;

  switch (domain.kind())
  {
    case DomainKind::disc:
    case DomainKind::annulus:
    case DomainKind::ellipse:
    {
      const bool ellipse = domain.kind() == DomainKind::ellipse;
      const double r0 = domain.kind() == DomainKind::annulus ? p[0] : 0.0;
      const double r1 = ellipse ? 1.0 : p.back();
      auto breaks = uniform_breaks(r0, r1, opt.panels);
      if (!ellipse)
      {
        // Resolve the cutoff transition band next to each circle.
        const double dl = q.delta;
        for (int k = 0; k <= kGluePanels; ++k)
        {
          const double d = dl / 3.0 * (1.0 + static_cast<double>(k) / kGluePanels);
          breaks.push_back(r1 - d);
          if (r0 > 0.0)
          {
            breaks.push_back(r0 + d);
          }
        }
        merge_breaks(breaks);
      }
      panel_rule(opt.order, breaks, rx, rw);
      const double jac = ellipse ? p[0] * p[1] : 1.0;
      for (int k = 0; k < opt.angular; ++k)
      {
        const double th = 2.0 * kPi * k / opt.angular;
        for (std::size_t i = 0; i < rx.size(); ++i)
        {
          const Point x = ellipse ? Point(p[0] * rx[i] * std::cos(th), p[1] * rx[i] * std::sin(th))
                                  : Point(rx[i] * std::cos(th), rx[i] * std::sin(th));
          q.interior.push_back({x, jac * rx[i] * rw[i] * 2.0 * kPi / opt.angular});
        }
      }
      break;
    }
    case DomainKind::rectangle:
    {
      std::vector<double> yx, yw;
      panel_rule(opt.order, uniform_breaks(0.0, p[0], opt.panels), rx, rw);
      panel_rule(opt.order, uniform_breaks(0.0, p[1], opt.panels), yx, yw);
      for (std::size_t j = 0; j < yx.size(); ++j)
      {
        for (std::size_t i = 0; i < rx.size(); ++i)
        {
          q.interior.push_back({Point(rx[i], yx[j]), rw[i] * yw[j]});
        }
      }
      break;
    }
    case DomainKind::mesh:
    {
      const Mesh &mesh = *domain.mesh();
      const double l1 = 2.0 / 3.0, l2 = 1.0 / 6.0;
      for (const auto &t : mesh.triangles)
      {
        const Point &a = mesh.nodes[t[0]], &b = mesh.nodes[t[1]], &c = mesh.nodes[t[2]];
        const Vec2 e1 = b - a, e2 = c - a;
        const double area = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
        q.interior.push_back({Point(l1 * a + l2 * b + l2 * c), area / 3.0});
        q.interior.push_back({Point(l2 * a + l1 * b + l2 * c), area / 3.0});
        q.interior.push_back({Point(l2 * a + l2 * b + l1 * c), area / 3.0});
      }
      break;
    }
  }

  const auto &comps = domain.boundary();
  for (std::size_t c = 0; c < comps.size(); ++c)
  {
    for (std::size_t j = 0; j < comps[c].size(); ++j)
    {
      q.boundary.push_back({comps[c].x[j], comps[c].weight[j], c, j});
    }
  }

  q.interior_partition.resize(q.interior.size(), 1.0);
  if (opt.eps)
  {
    const double eps = *opt.eps;
    if (!(eps > 0.0 && eps < 1.0))
    {
      throw ConfigurationError("layer quadrature needs 0 < eps < 1");
    }
    if (domain.corner_domain())
    {
      throw UnsupportedDomainError("layer quadrature needs a smooth boundary");
    }
    for (std::size_t i = 0; i < q.interior.size(); ++i)
    {
      q.interior_partition[i] = 1.0 - domain.cutoff(q.interior[i].x);
    }
    const double eta = std::sqrt(eps);
    const double dmax = 2.0 * q.delta / 3.0;
    std::vector<double> breaks{0.0};
    for (double z = 0.25; eta * z < q.delta / 3.0; z *= 2.0)
    {
      breaks.push_back(eta * z);
    }
    for (int k = 0; k <= kGluePanels; ++k)
    {
      breaks.push_back(q.delta / 3.0 + (dmax - q.delta / 3.0) * k / kGluePanels);
    }
    merge_breaks(breaks);
    std::vector<double> dx, dw;
    panel_rule(opt.order, breaks, dx, dw);
    for (std::size_t c = 0; c < comps.size(); ++c)
    {
      const auto &bc = comps[c];
      for (std::size_t j = 0; j < bc.size(); ++j)
      {
        for (std::size_t i = 0; i < dx.size(); ++i)
        {
          const double h = 1.0 - bc.curvature[j] * dx[i];
          q.layer.push_back({Point(bc.x[j] - dx[i] * bc.normal[j]), bc.weight[j] * h * dw[i], c, j, dx[i]});
        }
      }
    }
  }
  return q;
}

}  // namespace acoustic_layer::geometry
