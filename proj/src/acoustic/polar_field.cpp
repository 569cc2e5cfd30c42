// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/errors.hpp"

namespace acoustic_layer::acoustic
{

PolarGrid::PolarGrid(const geometry::Domain &domain, int points) : domain_(domain)
{
  if (!domain.is_polar())
  {
    throw UnsupportedDomainError("polar fields need a disc or an annulus");
  }
  if (points < 4)
  {
    throw ConfigurationError("polar grid needs at least 4 points");
  }
  disc_ = domain.kind() == geometry::DomainKind::disc;
  if (disc_)
  {
    // Odd degree keeps r = 0 off the grid.
    full_ = points % 2 == 1 ? points : points + 1;
    r0_ = 0.0;
    r1_ = domain.parameters()[0];
    grid_ = std::make_shared<chebyshev::Grid>(-r1_, r1_, full_);
    const int half = (full_ + 1) / 2;
    r_.resize(half);
    for (int i = 0; i < half; ++i)
    {
      pos_.push_back(i);
      neg_.push_back(full_ - i);
      r_(i) = grid_->nodes()(i);
    }
  }
  else
  {
    full_ = points;
    r0_ = domain.parameters()[0];
    r1_ = domain.parameters()[1];
    grid_ = std::make_shared<chebyshev::Grid>(r0_, r1_, full_);
    r_ = grid_->nodes();
    for (int i = 0; i <= full_; ++i)
    {
      pos_.push_back(i);
    }
  }
}

namespace
{

Eigen::MatrixXd fold(const Eigen::MatrixXd &full, const std::vector<int> &pos, const std::vector<int> &neg,
                     int n)
{
  if (neg.empty())
  {
    return full;
  }
  const double parity = n % 2 == 0 ? 1.0 : -1.0;
  const auto m = static_cast<Eigen::Index>(pos.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
  {
    for (Eigen::Index j = 0; j < m; ++j)
    {
      out(i, j) = full(pos[i], pos[j]) + parity * full(pos[i], neg[j]);
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd PolarGrid::d1(int n) const
{
  return fold(grid_->diff(), pos_, neg_, n);
}

Eigen::MatrixXd PolarGrid::d2(int n) const
{
  return fold(grid_->diff() * grid_->diff(), pos_, neg_, n);
}

VectorXc PolarGrid::coefficients(const VectorXc &values, int n) const
{
  if (values.size() != r_.size())
  {
    throw ConfigurationError("radial values do not match the polar grid");
  }
  VectorXc full(full_ + 1);
  const double parity = n % 2 == 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < pos_.size(); ++i)
  {
    full(pos_[i]) = values(static_cast<Eigen::Index>(i));
    if (!neg_.empty())
    {
      full(neg_[i]) = parity * values(static_cast<Eigen::Index>(i));
    }
  }
  return grid_->coefficients(full);
}

std::array<cplx, 4> PolarGrid::evaluate(const VectorXc &coeffs, double r) const
{
  return grid_->evaluate(coeffs, r);
}

PolarChannel &PolarField::channel(int n, int parity)
{
  for (auto &c : channels_)
  {
    if (c.n == n && c.parity == parity)
    {
      return c;
    }
  }
  const auto m = grid_->size();
  channels_.push_back(PolarChannel{n, parity, VectorXc::Zero(m), VectorXc::Zero(m)});
  return channels_.back();
}

const PolarChannel *PolarField::find(int n, int parity) const
{
  for (const auto &c : channels_)
  {
    if (c.n == n && c.parity == parity)
    {
      return &c;
    }
  }
  return nullptr;
}

PolarField &PolarField::operator+=(const PolarField &o)
{
  if (!grid_)
  {
    grid_ = o.grid_;
  }
  if (o.grid_ && o.grid_ != grid_ && o.grid_->size() != grid_->size())
  {
    throw ConfigurationError("polar fields live on different grids");
  }
  for (const auto &c : o.channels_)
  {
    auto &mine = channel(c.n, c.parity);
    mine.P += c.P;
    mine.W += c.W;
  }
  return *this;
}

PolarField &PolarField::operator*=(cplx s)
{
  for (auto &c : channels_)
  {
    c.P *= s;
    c.W *= s;
  }
  return *this;
}

namespace
{

struct ChannelEval
{
  int n;
  int parity;
  std::array<VectorXc, 2> p;
  std::array<VectorXc, 4> w;
};

}  // namespace

FieldPair PolarField::to_field() const
{
  if (!grid_)
  {
    throw ConfigurationError("polar field without a grid");
  }
  const double a = grid_->disc() ? -grid_->outer() : grid_->inner();
  const double b = grid_->outer();
  auto evals = std::make_shared<std::vector<ChannelEval>>();
  for (const auto &c : channels_)
  {
    ChannelEval e{c.n, c.parity, {}, {}};
    e.p[0] = grid_->coefficients(c.P, c.n);
    e.p[1] = chebyshev::derivative_coefficients(e.p[0], a, b);
    e.w[0] = grid_->coefficients(c.W, c.n);
    for (int k = 1; k < 4; ++k)
    {
      e.w[k] = chebyshev::derivative_coefficients(e.w[k - 1], a, b);
    }
    evals->push_back(std::move(e));
  }
  const double rmin = grid_->disc() ? 1e-9 * b : 0.0;
  return FieldPair(grid_->domain().id(), 2, [evals, a, b, rmin](const Point &x) {
    const double r = std::max(x.norm(), rmin);
    const double th = std::atan2(x.y(), x.x());
    const Vec2 er(std::cos(th), std::sin(th)), et(-std::sin(th), std::cos(th));
    Mat2 q;
    q.col(0) = er;
    q.col(1) = et;
    const Vec2c erc = er.cast<cplx>(), etc = et.cast<cplx>();
    const Mat2c qc = q.cast<cplx>();
    FieldJet j;
    for (const auto &e : *evals)
    {
      const double nn = e.n;
      const double t = e.parity == 0 ? std::cos(nn * th) : std::sin(nn * th);
      const double tp = e.parity == 0 ? -nn * std::sin(nn * th) : nn * std::cos(nn * th);
      const cplx p = chebyshev::clenshaw(e.p[0], a, b, r);
      const cplx p1 = chebyshev::clenshaw(e.p[1], a, b, r);
      std::array<cplx, 4> w;
      for (int k = 0; k < 4; ++k)
      {
        w[k] = chebyshev::clenshaw(e.w[k], a, b, r);
      }
      j.psi += p * t;
      j.grad_psi += p1 * t * erc + p * tp / r * etc;
      j.m += w[1] * t * erc + w[0] * tp / r * etc;
      Mat2c h;
      h(0, 0) = w[2] * t;
      h(0, 1) = h(1, 0) = (w[1] / r - w[0] / (r * r)) * tp;
      h(1, 1) = w[1] * t / r - nn * nn * w[0] * t / (r * r);
      j.grad_m += qc * h * qc.transpose();
      const cplx lap = w[2] + w[1] / r - nn * nn * w[0] / (r * r);
      const cplx lap1 = w[3] + w[2] / r - w[1] / (r * r) - nn * nn * w[1] / (r * r) +
                        2.0 * nn * nn * w[0] / (r * r * r);
      const Vec2c gl = lap1 * t * erc + lap * tp / r * etc;
      j.lap_m += gl;
      j.grad_div_m += gl;
    }
    return j;
  });
}

PolarField polar_mode(const std::shared_ptr<const PolarGrid> &grid, const AcousticMode &mode)
{
  if (!mode.base.smooth())
  {
    throw CapabilityError("polar channels need a closed-form mode");
  }
  PolarField out(grid);
  const double s2 = std::sqrt(2.0);
  const cplx wscale = double(mode.sign) / cplx(0.0, mode.lambda0());
  for (const auto &[coef, atom] : mode.base.atoms)
  {
    if (atom.family != geometry::DomainKind::disc && atom.family != geometry::DomainKind::annulus)
    {
      throw UnsupportedDomainError("polar channels need disc or annulus modes");
    }
    auto &c = out.channel(atom.n, atom.parity);
    for (int i = 0; i < grid->size(); ++i)
    {
      const double v = coef * atom.norm * atom.radial(grid->r()(i))[0] / s2;
      c.P(i) += v;
      c.W(i) += wscale * v;
    }
  }
  return out;
}

PolarField polar_apply_D(const PolarField &phi, const OperatorConfig &cfg)
{
  const auto &grid = phi.grid();
  PolarField out(grid);
  const Eigen::ArrayXd r = grid->r().array();
  for (const auto &c : phi.channels())
  {
    const double nn = c.n;
    const VectorXc w1 = grid->d1(c.n).cast<cplx>() * c.W;
    const VectorXc w2 = grid->d2(c.n).cast<cplx>() * c.W;
    VectorXc lap = w2.array() + w1.array() / r.cast<cplx>() - nn * nn * c.W.array() / (r * r).cast<cplx>();
    auto &o = out.channel(c.n, c.parity);
    o.W = (2.0 * cfg.nu + cfg.xi) * lap;
  }
  return out;
}

BoundaryChannels boundary_channels(const geometry::Domain &domain, std::size_t component,
                                   const std::vector<cplx> &samples)
{
  if (!domain.is_polar())
  {
    throw UnsupportedDomainError("boundary channels need a disc or an annulus");
  }
  if (component >= domain.boundary().size())
  {
    throw ConfigurationError("boundary component index out of range");
  }
  const auto &bc = domain.boundary()[component];
  if (samples.size() != bc.size())
  {
    throw ConfigurationError("boundary samples do not match the boundary grid");
  }
  const std::size_t m = samples.size();
  BoundaryChannels out;
  const int nmax = static_cast<int>(m / 2) - 1;
  out.coeffs.assign(static_cast<std::size_t>(std::max(nmax + 1, 1)), {cplx(0.0), cplx(0.0)});
  for (int n = 0; n <= nmax; ++n)
  {
    cplx cs = 0.0, sn = 0.0;
    for (std::size_t j = 0; j < m; ++j)
    {
      const double th = std::atan2(bc.x[j].y(), bc.x[j].x());
      cs += samples[j] * std::cos(n * th);
      sn += samples[j] * std::sin(n * th);
    }
    const double scale = (n == 0 ? 1.0 : 2.0) / static_cast<double>(m);
    out.coeffs[static_cast<std::size_t>(n)] = {scale * cs, n == 0 ? cplx(0.0) : scale * sn};
  }
  return out;
}

}  // namespace acoustic_layer::acoustic
