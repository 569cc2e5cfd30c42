// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/errors.hpp"

namespace acoustic_layer::acoustic
{

void OperatorConfig::validate() const
{
  if (!(nu > 0.0))
  {
    throw ConfigurationError("nu must be positive");
  }
  if (!(xi + nu > 0.0))
  {
    throw ConfigurationError("xi + nu must be positive");
  }
  if (!(gamma > 0.0))
  {
    throw ConfigurationError("gamma must be positive");
  }
  if (!(chi > 0.0))
  {
    throw ConfigurationError("chi must be positive");
  }
}

FieldJet apply_A(const FieldJet &j)
{
  if (j.order < 1)
  {
    throw CapabilityError("A needs first derivatives of the field");
  }
  FieldJet out;
  out.psi = j.grad_m.trace();
  out.m = j.grad_psi;
  out.order = 0;
  return out;
}

FieldJet apply_D(const FieldJet &j, const OperatorConfig &cfg)
{
  if (j.order < 2)
  {
    throw CapabilityError("D needs second derivatives of the field");
  }
  FieldJet out;
  out.m = cfg.nu * j.lap_m + (cfg.xi + cfg.nu) * j.grad_div_m;
  out.order = 0;
  return out;
}

FieldPair apply_A(const FieldPair &phi)
{
  if (phi.is_zero())
  {
    return phi;
  }
  if (phi.order() < 1)
  {
    throw CapabilityError("A needs first derivatives of the field");
  }
  return FieldPair(phi.domain_id(), 0, [phi](const Point &x) { return apply_A(phi.jet(x)); });
}

FieldPair apply_D(const FieldPair &phi, const OperatorConfig &cfg)
{
  if (phi.is_zero())
  {
    return phi;
  }
  if (phi.order() < 2)
  {
    throw CapabilityError("D needs second derivatives of the field");
  }
  return FieldPair(phi.domain_id(), 0, [phi, cfg](const Point &x) { return apply_D(phi.jet(x), cfg); });
}

FieldPair apply_A_eps(const FieldPair &phi, const OperatorConfig &cfg, double eps)
{
  if (eps == 0.0)
  {
    return apply_A(phi);
  }
  if (phi.is_zero())
  {
    return phi;
  }
  if (phi.order() < 2)
  {
    throw CapabilityError("A_eps needs second derivatives of the field");
  }
  return FieldPair(phi.domain_id(), 0, [phi, cfg, eps](const Point &x) {
    const FieldJet j = phi.jet(x);
    FieldJet out = apply_A(j);
    FieldJet d = apply_D(j, cfg);
    d *= eps;
    out += d;
    return out;
  });
}

AcousticMode make_acoustic_mode(const spectrum::NeumannMode &mode, int sign)
{
  if (sign != 1 && sign != -1)
  {
    throw ConfigurationError("acoustic mode sign must be +1 or -1");
  }
  if (!(mode.lambda0 > 0.0))
  {
    throw ConfigurationError("acoustic modes need a positive Neumann eigenvalue");
  }
  return AcousticMode{mode, sign};
}

FieldPair AcousticMode::field() const
{
  const double s2 = std::sqrt(2.0);
  const cplx scale = double(sign) / (cplx(0.0, base.lambda0) * s2);
  auto mode = std::make_shared<const spectrum::NeumannMode>(base);
  if (base.smooth())
  {
    return FieldPair(base.domain().id(), 2, [mode, scale, s2](const Point &x) {
      const spectrum::ScalarJet s = mode->jet(x);
      FieldJet j;
      j.psi = s.v / s2;
      j.grad_psi = s.g.cast<cplx>() / s2;
      j.m = scale * s.g.cast<cplx>();
      j.grad_m = scale * s.h.cast<cplx>();
      j.lap_m = scale * s.grad_lap.cast<cplx>();
      j.grad_div_m = j.lap_m;
      j.order = 2;
      return j;
    });
  }
  return FieldPair(base.domain().id(), 0, [mode, scale, s2](const Point &x) {
    FieldJet j;
    j.psi = mode->value(x) / s2;
    j.m = scale * mode->gradient(x).cast<cplx>();
    j.order = 0;
    return j;
  });
}

}  // namespace acoustic_layer::acoustic
