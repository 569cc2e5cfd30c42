// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/jet.hpp"

namespace acoustic_layer::acoustic
{

namespace
{

void check_slip(const geometry::Domain &domain, const FieldPair &v, const OperatorConfig &cfg, double eps,
                const geometry::QuadratureSet &q, double tol, const char *name)
{
  if (v.is_zero())
  {
    return;
  }
  const double robin = cfg.chi / std::sqrt(eps);
  for (const auto &node : q.boundary)
  {
    const auto &bc = domain.boundary()[node.component];
    const Vec2c n = bc.normal[node.index].cast<cplx>();
    const Vec2c t = bc.tangent[node.index].cast<cplx>();
    const FieldJet j = v.jet(node.x);
    const Mat2c sigma = j.grad_m + j.grad_m.transpose();
    const cplx normal = n.dot(j.m);
    const cplx shear = cfg.nu * t.dot(sigma * n) + robin * t.dot(j.m);
    const double scale = std::max(1.0, std::abs(robin * t.dot(j.m)));
    if (std::abs(normal) > tol * std::max(1.0, j.m.norm()) || std::abs(shear) > tol * scale)
    {
      throw PreconditionError(std::string(name) + " violates the slip boundary condition at (" +
                              std::to_string(node.x.x()) + ", " + std::to_string(node.x.y()) + ")");
    }
  }
}

}  // namespace

double duality_check(const geometry::Domain &domain, const FieldPair &u, const FieldPair &m,
                     const OperatorConfig &cfg, double eps, const geometry::QuadratureSet &q, double bc_tol)
{
  cfg.validate();
  if (!(eps > 0.0))
  {
    throw ConfigurationError("eps must be positive");
  }
  if (u.domain_id() != q.domain_id || m.domain_id() != q.domain_id || domain.id() != q.domain_id)
  {
    throw QuadratureError("duality check quadrature belongs to a different domain");
  }
  check_slip(domain, u, cfg, eps, q, bc_tol, "u");
  check_slip(domain, m, cfg, eps, q, bc_tol, "m");
  if (u.is_zero() || m.is_zero())
  {
    return 0.0;
  }
  const cplx lhs = integrate(
    [&](const Point &x) {
      const FieldJet ju = u.jet(x), jm = m.jet(x);
      return jm.m.dot(apply_D(ju, cfg).m);
    },
    q);
  const cplx rhs = integrate(
    [&](const Point &x) {
      const FieldJet ju = u.jet(x), jm = m.jet(x);
      return apply_D(jm, cfg).m.dot(ju.m);
    },
    q);
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-30);
}

FieldPair slip_swirl(const geometry::Domain &disc, double c, const OperatorConfig &cfg, double eps)
{
  if (disc.kind() != geometry::DomainKind::disc)
  {
    throw UnsupportedDomainError("slip swirl fields are built on the disc");
  }
  if (!(eps > 0.0))
  {
    throw ConfigurationError("eps must be positive");
  }
  cfg.validate();
  const double R = disc.parameters()[0];
  const double rho = cfg.chi / std::sqrt(eps);
  // g = r h(r^2) solves nu (g' - g / R) + rho g = 0 at r = R.
  const double b = -(4.0 * cfg.nu * c * std::pow(R, 4) + rho * (R + c * std::pow(R, 5))) /
                   (2.0 * cfg.nu * R * R + rho * std::pow(R, 3));
  return FieldPair(disc.id(), 2, [b, c](const Point &x) {
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

}  // namespace acoustic_layer::acoustic
