// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "acoustic_layer/core/bessel.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/spectrum.hpp"

namespace acoustic_layer::spectrum
{

using geometry::DomainKind;

std::array<double, 4> Atom::radial(double r) const
{
  const double x = lambda * r;
  const auto jd = bessel::j(n, x);
  std::array<double, 4> out{jd.v, jd.d1, jd.d2, jd.d3};
  if (family == DomainKind::annulus)
  {
    const auto yd = bessel::y(n, x);
    out = {alpha * jd.v + beta * yd.v, alpha * jd.d1 + beta * yd.d1, alpha * jd.d2 + beta * yd.d2,
           alpha * jd.d3 + beta * yd.d3};
  }
  double scale = 1.0;
  for (auto &v : out)
  {
    v *= scale;
    scale *= lambda;
  }
  return out;
}

ScalarJet Atom::jet(const Point &x) const
{
  ScalarJet out;
  if (family == DomainKind::rectangle)
  {
    const double a = n * kPi / lx, b = parity * kPi / ly;
    const double cx = std::cos(a * x.x()), sx = std::sin(a * x.x());
    const double cy = std::cos(b * x.y()), sy = std::sin(b * x.y());
    out.v = norm * cx * cy;
    out.g = norm * Vec2(-a * sx * cy, -b * cx * sy);
    out.h << -a * a * out.v, norm * a * b * sx * sy, norm * a * b * sx * sy, -b * b * out.v;
    out.grad_lap = -lambda * lambda * out.g;
    return out;
  }
  double r = x.norm();
  double theta = std::atan2(x.y(), x.x());
  if (r < 1e-12)
  {
    // Polar formulas are singular at the origin; evaluate just beside it.
    r = 1e-12;
    theta = 0.0;
  }
  const auto f = radial(r);
  const double nn = static_cast<double>(n);
  const double c = std::cos(nn * theta), s = std::sin(nn * theta);
  const double th = parity == 0 ? c : s;
  const double th1 = parity == 0 ? -nn * s : nn * c;
  const double th2 = -nn * nn * th;
  const double u = f[0] * th, ur = f[1] * th, ut = f[0] * th1;
  const double urr = f[2] * th, urt = f[1] * th1, utt = f[0] * th2;
  const Vec2 er(std::cos(theta), std::sin(theta)), et(-std::sin(theta), std::cos(theta));
  Mat2 q;
  q.col(0) = er;
  q.col(1) = et;
  Mat2 hp;
  const double hrt = urt / r - ut / (r * r);
  hp << urr, hrt, hrt, ur / r + utt / (r * r);
  out.v = norm * u;
  out.g = norm * (ur * er + ut / r * et);
  out.h = norm * (q * hp * q.transpose());
  out.grad_lap = -lambda * lambda * out.g;
  return out;
}

void NeumannMode::set_domain(const geometry::Domain &domain)
{
  domain_ = std::make_shared<geometry::Domain>(domain);
}

namespace
{

std::pair<int, Eigen::Vector3d> locate_or_throw(const geometry::Domain &domain, const Point &x)
{
  auto loc = domain.locate(x);
  if (!loc)
  {
    throw DomainError("point lies outside the mesh");
  }
  return *loc;
}

Vec2 recovered_gradient(const FemData &fem, const Eigen::VectorXd &nodal, int node)
{
  Vec2 g = Vec2::Zero();
  double area = 0.0;
  const auto &mesh = *fem.domain.mesh();
  for (int t : fem.node_triangles[node])
  {
    Vec2 gt = Vec2::Zero();
    for (int k = 0; k < 3; ++k)
    {
      gt += nodal(mesh.triangles[t][k]) * fem.basis_gradients[t][k];
    }
    g += fem.areas[t] * gt;
    area += fem.areas[t];
  }
  return g / area;
}

bool same_atom(const Atom &a, const Atom &b)
{
  return a.family == b.family && a.n == b.n && a.parity == b.parity &&
         std::abs(a.lambda - b.lambda) <= 1e-13 * std::max(1.0, a.lambda);
}

}  // namespace

double NeumannMode::value(const Point &x) const
{
  if (source == ModeSource::fem)
  {
    const auto [t, bary] = locate_or_throw(fem->domain, x);
    const auto &tri = fem->domain.mesh()->triangles[t];
    return bary(0) * nodal(tri[0]) + bary(1) * nodal(tri[1]) + bary(2) * nodal(tri[2]);
  }
  double v = 0.0;
  for (const auto &[c, atom] : atoms)
  {
    v += c * atom.jet(x).v;
  }
  return v;
}

Vec2 NeumannMode::gradient(const Point &x) const
{
  if (source == ModeSource::fem)
  {
    const auto [t, bary] = locate_or_throw(fem->domain, x);
    const auto &tri = fem->domain.mesh()->triangles[t];
    Vec2 g = Vec2::Zero();
    for (int k = 0; k < 3; ++k)
    {
      g += nodal(tri[k]) * fem->basis_gradients[t][k];
    }
    return g;
  }
  Vec2 g = Vec2::Zero();
  for (const auto &[c, atom] : atoms)
  {
    g += c * atom.jet(x).g;
  }
  return g;
}

ScalarJet NeumannMode::jet(const Point &x) const
{
  if (source == ModeSource::fem)
  {
    throw CapabilityError("piecewise-linear modes have no second derivatives");
  }
  ScalarJet out;
  for (const auto &[c, atom] : atoms)
  {
    const auto j = atom.jet(x);
    out.v += c * j.v;
    out.g += c * j.g;
    out.h += c * j.h;
    out.grad_lap += c * j.grad_lap;
  }
  return out;
}

Vec2 NeumannMode::boundary_gradient(std::size_t component, std::size_t j) const
{
  if (source == ModeSource::fem)
  {
    return recovered_gradient(*fem, nodal, fem->boundary_nodes.at(component).at(j));
  }
  return gradient(domain().boundary().at(component).x.at(j));
}

double NeumannMode::boundary_value(std::size_t component, std::size_t j) const
{
  if (source == ModeSource::fem)
  {
    return nodal(fem->boundary_nodes.at(component).at(j));
  }
  return value(domain().boundary().at(component).x.at(j));
}

double l2_inner(const NeumannMode &a, const NeumannMode &b)
{
  if (a.source != b.source)
  {
    throw ConfigurationError("cannot pair closed-form and FEM modes");
  }
  if (a.source == ModeSource::fem)
  {
    return a.nodal.dot(a.fem->mass * b.nodal);
  }
  // Distinct atoms are exactly orthonormal.
  double sum = 0.0;
  for (const auto &[ca, xa] : a.atoms)
  {
    for (const auto &[cb, xb] : b.atoms)
    {
      if (same_atom(xa, xb))
      {
        sum += ca * cb;
      }
    }
  }
  return sum;
}

NeumannMode combine(const std::vector<const NeumannMode *> &modes, const Eigen::VectorXd &coeffs)
{
  if (modes.empty() || static_cast<long>(modes.size()) != coeffs.size())
  {
    throw ConfigurationError("combination needs one coefficient per mode");
  }
  NeumannMode out = *modes[0];
  if (out.source == ModeSource::fem)
  {
    out.nodal = Eigen::VectorXd::Zero(modes[0]->nodal.size());
    for (std::size_t i = 0; i < modes.size(); ++i)
    {
      out.nodal += coeffs(static_cast<long>(i)) * modes[i]->nodal;
    }
    return out;
  }
  out.atoms.clear();
  for (std::size_t i = 0; i < modes.size(); ++i)
  {
    for (const auto &[c, atom] : modes[i]->atoms)
    {
      const double w = coeffs(static_cast<long>(i)) * c;
      auto it = std::find_if(out.atoms.begin(), out.atoms.end(),
                             [&](const auto &e) { return same_atom(e.second, atom); });
      if (it == out.atoms.end())
      {
        out.atoms.emplace_back(w, atom);
      }
      else
      {
        it->first += w;
      }
    }
  }
  out.atoms.erase(std::remove_if(out.atoms.begin(), out.atoms.end(),
                                 [](const auto &e) { return std::abs(e.first) < 1e-15; }),
                  out.atoms.end());
  return out;
}

double default_cluster_tolerance(const std::vector<NeumannMode> &modes)
{
  return !modes.empty() && modes[0].source == ModeSource::fem ? 1e-3 : 1e-8;
}

std::vector<EigenGroup> group_eigenvalues(std::vector<NeumannMode> &modes, double rel_tol)
{
  std::vector<EigenGroup> groups;
  for (std::size_t i = 0; i < modes.size(); ++i)
  {
    if (!groups.empty())
    {
      const double prev = modes[groups.back().members.back()].lambda0;
      if (std::abs(modes[i].lambda0 - prev) <= rel_tol * std::max(std::abs(prev), 1e-300))
      {
        groups.back().members.push_back(i);
        continue;
      }
    }
    groups.push_back({modes[i].lambda0, {i}});
  }
  for (auto &g : groups)
  {
    double sum = 0.0;
    for (std::size_t k = 0; k < g.members.size(); ++k)
    {
      auto &m = modes[g.members[k]];
      sum += m.lambda0;
      for (std::size_t j = 0; j < k; ++j)
      {
        const auto &prev = modes[g.members[j]];
        const double c = l2_inner(m, prev);
        Eigen::VectorXd coeffs(2);
        coeffs << 1.0, -c;
        m = combine({&m, &prev}, coeffs);
      }
      const double nrm = std::sqrt(l2_inner(m, m));
      Eigen::VectorXd scale(1);
      scale << 1.0 / nrm;
      const double lam = m.lambda0;
      const int idx = m.index;
      m = combine({&m}, scale);
      m.lambda0 = lam;
      m.index = idx;
    }
    g.lambda0 = sum / static_cast<double>(g.members.size());
  }
  return groups;
}

double boundary_gradient_integral(const NeumannMode &a, const NeumannMode &b)
{
  if (a.domain().id() != b.domain().id())
  {
    throw ConfigurationError("modes live on different domains");
  }
  const auto &comps = a.domain().boundary();
  double sum = 0.0;
  if (a.source == ModeSource::fem)
  {
    // Recovered nodal gradients averaged onto edge midpoints.
    for (std::size_t c = 0; c < comps.size(); ++c)
    {
      const auto &bc = comps[c];
      const std::size_t n = bc.size();
      for (std::size_t j = 0; j < n; ++j)
      {
        const std::size_t k = (j + 1) % n;
        const double len = (bc.x[k] - bc.x[j]).norm();
        const Vec2 ga = 0.5 * (a.boundary_gradient(c, j) + a.boundary_gradient(c, k));
        const Vec2 gb = 0.5 * (b.boundary_gradient(c, j) + b.boundary_gradient(c, k));
        sum += len * ga.dot(gb);
      }
    }
    return sum;
  }
  for (std::size_t c = 0; c < comps.size(); ++c)
  {
    for (std::size_t j = 0; j < comps[c].size(); ++j)
    {
      sum += comps[c].weight[j] * a.boundary_gradient(c, j).dot(b.boundary_gradient(c, j));
    }
  }
  return sum;
}

bool is_undamped_class(const NeumannMode &mode, double tol)
{
  const double b = boundary_gradient_integral(mode, mode);
  return b < tol * mode.lambda0 * mode.lambda0 * mode.domain().boundary_length();
}

std::vector<NeumannMode> solve(const geometry::Domain &domain, std::size_t count)
{
  if (domain.kind() == DomainKind::mesh)
  {
    return solve_fem(domain, count);
  }
  if (domain.kind() == DomainKind::ellipse)
  {
    throw UnsupportedDomainError("ellipse spectra need a mesh (use kind 'mesh' with an ellipse mesh)");
  }
  return solve_closed_form(domain, count);
}

}  // namespace acoustic_layer::spectrum
