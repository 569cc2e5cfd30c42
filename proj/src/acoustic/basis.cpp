// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/parallel.hpp"

namespace acoustic_layer::acoustic
{

std::shared_ptr<ModeBasis> ModeBasis::create(std::vector<spectrum::NeumannMode> modes,
                                             geometry::QuadratureSet quadrature)
{
  std::shared_ptr<ModeBasis> b(new ModeBasis());
  for (const auto &m : modes)
  {
    if (m.domain().id() != quadrature.domain_id)
    {
      throw QuadratureError("basis quadrature belongs to a different domain");
    }
    b->plus_.push_back(make_acoustic_mode(m, 1));
    b->minus_.push_back(make_acoustic_mode(m, -1));
  }
  b->modes_ = std::move(modes);
  b->quad_ = std::move(quadrature);

  const auto &q = b->quad_;
  for (std::size_t i = 0; i < q.interior.size(); ++i)
  {
    const double w = q.interior[i].w * q.interior_partition[i];
    if (w != 0.0)
    {
      b->nodes_.push_back(q.interior[i].x);
      b->weights_.conservativeResize(static_cast<Eigen::Index>(b->nodes_.size()));
      b->weights_(b->weights_.size() - 1) = w;
    }
  }
  std::vector<double> extra;
  for (const auto &n : q.layer)
  {
    const double w = n.w * geometry::cutoff_profile(n.d, q.delta).value;
    if (w != 0.0)
    {
      b->nodes_.push_back(n.x);
      extra.push_back(w);
    }
  }
  const Eigen::Index ni = b->weights_.size();
  b->weights_.conservativeResize(static_cast<Eigen::Index>(b->nodes_.size()));
  for (std::size_t i = 0; i < extra.size(); ++i)
  {
    b->weights_(ni + static_cast<Eigen::Index>(i)) = extra[i];
  }

  const auto k = static_cast<Eigen::Index>(b->modes_.size());
  const auto nn = static_cast<Eigen::Index>(b->nodes_.size());
  b->psi_.resize(k, nn);
  b->gx_.resize(k, nn);
  b->gy_.resize(k, nn);
  parallel_for(static_cast<std::size_t>(nn), [&](std::size_t j) {
    for (Eigen::Index l = 0; l < k; ++l)
    {
      const auto &mode = b->modes_[static_cast<std::size_t>(l)];
      const auto jj = static_cast<Eigen::Index>(j);
      if (mode.smooth())
      {
        const auto s = mode.jet(b->nodes_[j]);
        b->psi_(l, jj) = s.v;
        b->gx_(l, jj) = s.g.x();
        b->gy_(l, jj) = s.g.y();
      }
      else
      {
        const Vec2 g = mode.gradient(b->nodes_[j]);
        b->psi_(l, jj) = mode.value(b->nodes_[j]);
        b->gx_(l, jj) = g.x();
        b->gy_(l, jj) = g.y();
      }
    }
  });
  return b;
}

const AcousticMode &ModeBasis::mode(std::size_t l, int sign) const
{
  if (l >= modes_.size())
  {
    throw ConfigurationError("mode index out of range");
  }
  return sign > 0 ? plus_[l] : minus_[l];
}

ModeBasis::Samples ModeBasis::sample(const FieldPair &f) const
{
  if (f.domain_id() != quad_.domain_id)
  {
    throw QuadratureError("field belongs to a different domain than the basis");
  }
  const auto nn = static_cast<Eigen::Index>(nodes_.size());
  Samples s{VectorXc::Zero(nn), VectorXc::Zero(nn), VectorXc::Zero(nn)};
  if (f.is_zero())
  {
    return s;
  }
  parallel_for(nodes_.size(), [&](std::size_t j) {
    const FieldJet fj = f.jet(nodes_[j]);
    const auto jj = static_cast<Eigen::Index>(j);
    s.psi(jj) = fj.psi;
    s.mx(jj) = fj.m.x();
    s.my(jj) = fj.m.y();
  });
  return s;
}

SpectralCoefficients ModeBasis::project(const Samples &s) const
{
  const double s2 = std::sqrt(2.0);
  const VectorXc wp = weights_.cast<cplx>().cwiseProduct(s.psi);
  const VectorXc wx = weights_.cast<cplx>().cwiseProduct(s.mx);
  const VectorXc wy = weights_.cast<cplx>().cwiseProduct(s.my);
  const VectorXc a = psi_.cast<cplx>() * wp;
  const VectorXc g = gx_.cast<cplx>() * wx + gy_.cast<cplx>() * wy;
  const auto k = static_cast<Eigen::Index>(modes_.size());
  SpectralCoefficients c{shared_from_this(), VectorXc(k), VectorXc(k)};
  for (Eigen::Index l = 0; l < k; ++l)
  {
    // conj(+-grad Psi / (i lambda)) = +-i grad Psi / lambda
    const cplx m = kI / modes_[static_cast<std::size_t>(l)].lambda0 * g(l);
    c.plus(l) = (a(l) + m) / s2;
    c.minus(l) = (a(l) - m) / s2;
  }
  return c;
}

SpectralCoefficients ModeBasis::project(const FieldPair &f) const
{
  return project(sample(f));
}

double ModeBasis::kernel_norm2(const Samples &s, const SpectralCoefficients &c) const
{
  const double s2 = std::sqrt(2.0);
  const auto k = static_cast<Eigen::Index>(modes_.size());
  VectorXc a(k), b(k);
  for (Eigen::Index l = 0; l < k; ++l)
  {
    a(l) = (c.plus(l) + c.minus(l)) / s2;
    b(l) = (c.plus(l) - c.minus(l)) / (cplx(0.0, modes_[static_cast<std::size_t>(l)].lambda0) * s2);
  }
  const VectorXc rp = s.psi - psi_.transpose().cast<cplx>() * a;
  const VectorXc rx = s.mx - gx_.transpose().cast<cplx>() * b;
  const VectorXc ry = s.my - gy_.transpose().cast<cplx>() * b;
  double sum = 0.0;
  for (Eigen::Index j = 0; j < rp.size(); ++j)
  {
    sum += weights_(j) * (std::norm(rp(j)) + std::norm(rx(j)) + std::norm(ry(j)));
  }
  return sum;
}

FieldPair ModeBasis::synthesize(const SpectralCoefficients &c) const
{
  const std::uint64_t id = quad_.domain_id;
  FieldPair sum = FieldPair::zero(id);
  for (std::size_t l = 0; l < modes_.size(); ++l)
  {
    const auto li = static_cast<Eigen::Index>(l);
    if (c.plus(li) != 0.0)
    {
      sum = sum + c.plus(li) * plus_[l].field();
    }
    if (c.minus(li) != 0.0)
    {
      sum = sum + c.minus(li) * minus_[l].field();
    }
  }
  return sum.with_spectral(SpectralCoefficients{shared_from_this(), c.plus, c.minus});
}

FieldPair ModeBasis::kernel_part(const FieldPair &f, const SpectralCoefficients &c) const
{
  FieldPair r = f - synthesize(c);
  return FieldPair(r.domain_id(), r.order(), [r](const Point &x) { return r.jet(x); });
}

FieldPair ModeBasis::pseudo_inverse(std::size_t k, int tau, const FieldPair &rhs,
                                    const PseudoInverseOptions &options) const
{
  if (k >= modes_.size())
  {
    throw ConfigurationError("target mode index out of range");
  }
  if (tau != 1 && tau != -1)
  {
    throw ConfigurationError("target sign must be +1 or -1");
  }
  if (rhs.is_zero())
  {
    return FieldPair::zero(quad_.domain_id);
  }
  const Samples s = sample(rhs);
  SpectralCoefficients c = project(s);
  const double lk = modes_[k].lambda0;
  const cplx ilk(0.0, tau * lk);
  for (std::size_t l = 0; l < modes_.size(); ++l)
  {
    const auto li = static_cast<Eigen::Index>(l);
    for (int sign : {1, -1})
    {
      cplx &coef = sign > 0 ? c.plus(li) : c.minus(li);
      const bool resonant =
        sign == tau && std::abs(modes_[l].lambda0 - lk) <= options.degeneracy_tol * lk;
      if (resonant)
      {
        if (std::abs(coef) > options.solvability_tol)
        {
          throw SolvabilityError("right-hand side has a component " + std::to_string(std::abs(coef)) +
                                 " along the kernel of A - i lambda");
        }
        coef = 0.0;
      }
      else
      {
        coef /= cplx(0.0, sign * modes_[l].lambda0) - ilk;
      }
    }
  }
  FieldPair out = synthesize(c);
  const double f2 = (weights_.cast<cplx>().cwiseProduct(s.psi.cwiseAbs2().cast<cplx>())).sum().real();
  SpectralCoefficients raw = project(s);
  if (kernel_norm2(s, raw) > 1e-24 * std::max(1.0, f2))
  {
    const cplx scale = options.literal_kernel_sign ? 1.0 / ilk : -1.0 / ilk;
    out = out + scale * kernel_part(rhs, raw);
  }
  return out;
}

}  // namespace acoustic_layer::acoustic
