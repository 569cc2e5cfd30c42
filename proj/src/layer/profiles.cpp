// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/layer.hpp"

namespace acoustic_layer::layer
{

cplx decay_rate(double lambda0, double nu, int tau)
{
  if (!(lambda0 > 0.0) || !(nu > 0.0))
  {
    throw ConfigurationError("decay rate needs lambda > 0 and nu > 0");
  }
  const double m = std::sqrt(lambda0 / nu) / std::sqrt(2.0);
  return tau > 0 ? cplx(m, m) : cplx(m, -m);
}

LayerProfile::LayerProfile(cplx c, std::size_t component, double period, std::size_t nodes, int degree)
  : c_(c), component_(component), period_(period), nodes_(nodes)
{
  if (!(c.real() > 0.0))
  {
    throw ConfigurationError("layer profiles need Re(c) > 0");
  }
  q_.assign(static_cast<std::size_t>(std::max(degree, 0)) + 1, std::vector<cplx>(nodes, cplx(0.0)));
}

void LayerProfile::grow(int degree)
{
  while (this->degree() < degree)
  {
    q_.emplace_back(nodes_, cplx(0.0));
  }
}

std::vector<cplx> &LayerProfile::coefficients(int j)
{
  grow(j);
  return q_[static_cast<std::size_t>(j)];
}

cplx LayerProfile::value(std::size_t i, double zeta, int order) const
{
  std::vector<cplx> q(q_.size());
  for (std::size_t j = 0; j < q_.size(); ++j)
  {
    q[j] = q_[j][i];
  }
  for (int o = 0; o < order; ++o)
  {
    // (q e^{-c z})' = (q' - c q) e^{-c z}
    std::vector<cplx> d(q.size(), cplx(0.0));
    for (std::size_t j = 0; j < q.size(); ++j)
    {
      d[j] -= c_ * q[j];
      if (j + 1 < q.size())
      {
        d[j] += static_cast<double>(j + 1) * q[j + 1];
      }
    }
    q = std::move(d);
  }
  cplx poly = 0.0;
  for (std::size_t j = q.size(); j-- > 0;)
  {
    poly = poly * zeta + q[j];
  }
  return poly * std::exp(-c_ * zeta);
}

std::vector<cplx> LayerProfile::traces() const
{
  return q_.empty() ? std::vector<cplx>(nodes_, cplx(0.0)) : q_[0];
}

double LayerProfile::max_abs() const
{
  double m = 0.0;
  for (const auto &q : q_)
  {
    for (const auto &v : q)
    {
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

LayerProfile LayerProfile::ds(const geometry::BoundaryComponent &chart) const
{
  if (chart.size() != nodes_)
  {
    throw ConfigurationError("profile and boundary chart sizes differ");
  }
  LayerProfile out = *this;
  for (auto &q : out.q_)
  {
    q = geometry::tangential_derivative(q, chart);
  }
  return out;
}

LayerProfile LayerProfile::dzeta() const
{
  LayerProfile out = *this;
  for (std::size_t i = 0; i < nodes_; ++i)
  {
    for (std::size_t j = 0; j < q_.size(); ++j)
    {
      out.q_[j][i] = -c_ * q_[j][i] + (j + 1 < q_.size() ? static_cast<double>(j + 1) * q_[j + 1][i] : 0.0);
    }
  }
  return out;
}

LayerProfile LayerProfile::times_zeta() const
{
  LayerProfile out = *this;
  out.q_.insert(out.q_.begin(), std::vector<cplx>(nodes_, cplx(0.0)));
  return out;
}

LayerProfile LayerProfile::tail_integral() const
{
  // int_z^inf t^j e^{-ct} dt = e^{-cz} sum_{i<=j} j!/(i! c^{j-i+1}) z^i
  LayerProfile out(c_, component_, period_, nodes_, degree());
  for (std::size_t j = 0; j < q_.size(); ++j)
  {
    double ratio = 1.0;  // j!/i!
    for (std::size_t i = j + 1; i-- > 0;)
    {
      const cplx f = ratio / std::pow(c_, static_cast<double>(j - i + 1));
      for (std::size_t n = 0; n < nodes_; ++n)
      {
        out.q_[i][n] += f * q_[j][n];
      }
      ratio *= static_cast<double>(i);
    }
  }
  return out;
}

LayerProfile LayerProfile::scaled(const std::vector<cplx> &factor) const
{
  if (factor.size() != nodes_)
  {
    throw ConfigurationError("per-node factor has the wrong size");
  }
  LayerProfile out = *this;
  for (auto &q : out.q_)
  {
    for (std::size_t n = 0; n < nodes_; ++n)
    {
      q[n] *= factor[n];
    }
  }
  return out;
}

LayerProfile &LayerProfile::operator+=(const LayerProfile &o)
{
  if (o.nodes_ == 0)
  {
    return *this;
  }
  if (nodes_ == 0)
  {
    return *this = o;
  }
  if (o.nodes_ != nodes_ || o.component_ != component_ || std::abs(o.c_ - c_) > 1e-14 * std::abs(c_))
  {
    throw ConfigurationError("profiles with different shape or decay rate cannot be added");
  }
  grow(o.degree());
  for (std::size_t j = 0; j < o.q_.size(); ++j)
  {
    for (std::size_t n = 0; n < nodes_; ++n)
    {
      q_[j][n] += o.q_[j][n];
    }
  }
  return *this;
}

LayerProfile &LayerProfile::operator*=(cplx s)
{
  for (auto &q : q_)
  {
    for (auto &v : q)
    {
      v *= s;
    }
  }
  return *this;
}

LayerProfile solve_layer_ode(const LayerProfile &forcing, const std::vector<cplx> &bc, double nu, double chi)
{
  const std::size_t nodes = forcing.nodes();
  if (bc.size() != nodes)
  {
    throw ConfigurationError("boundary data does not match the profile grid");
  }
  const cplx c = forcing.decay();
  const int deg = forcing.degree();
  LayerProfile out(c, forcing.component(), forcing.period(), nodes, deg + 1);
  for (std::size_t n = 0; n < nodes; ++n)
  {
    // nu (q'' - 2 c q') = r with q(0) = 0, solved from the top degree down.
    std::vector<cplx> q(static_cast<std::size_t>(deg) + 3, cplx(0.0));
    for (int i = deg; i >= 0; --i)
    {
      const cplx r = forcing.coefficients(i)[n];
      q[static_cast<std::size_t>(i) + 1] =
        (nu * (i + 2.0) * (i + 1.0) * q[static_cast<std::size_t>(i) + 2] - r) / (2.0 * nu * c * (i + 1.0));
    }
    q[0] = (nu * q[1] - bc[n]) / (chi + nu * c);
    for (int j = 0; j <= deg + 1; ++j)
    {
      out.coefficients(j)[n] = q[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

namespace
{

void require_smooth(const geometry::Domain &d)
{
  if (d.corner_domain())
  {
    throw UnsupportedDomainError("boundary layers need a smooth boundary");
  }
}

// m_int . t on component c for an acoustic mode.
std::vector<cplx> tangential_trace(const acoustic::AcousticMode &mode, std::size_t c)
{
  const auto &bc = mode.base.domain().boundary()[c];
  const cplx scale = double(mode.sign) / (cplx(0.0, mode.lambda0()) * std::sqrt(2.0));
  std::vector<cplx> out(bc.size());
  for (std::size_t i = 0; i < bc.size(); ++i)
  {
    out[i] = scale * mode.base.boundary_gradient(c, i).dot(bc.tangent[i]);
  }
  return out;
}

}  // namespace

std::vector<LayerProfile> tangential_profile0(const acoustic::AcousticMode &mode, const OperatorConfig &cfg)
{
  cfg.validate();
  const auto &domain = mode.base.domain();
  require_smooth(domain);
  const cplx c = decay_rate(mode.lambda0(), cfg.nu, mode.sign);
  const cplx amp = -cfg.chi / (cfg.chi + cfg.nu * c);
  std::vector<LayerProfile> out;
  for (std::size_t comp = 0; comp < domain.boundary().size(); ++comp)
  {
    const auto &bc = domain.boundary()[comp];
    LayerProfile p(c, comp, bc.length, bc.size());
    const auto t = tangential_trace(mode, comp);
    for (std::size_t i = 0; i < bc.size(); ++i)
    {
      p.coefficients(0)[i] = amp * t[i];
    }
    out.push_back(std::move(p));
  }
  return out;
}

NormalFlux normal_flux1(const acoustic::AcousticMode &mode, const OperatorConfig &cfg)
{
  const auto a0 = tangential_profile0(mode, cfg);
  NormalFlux out;
  for (std::size_t comp = 0; comp < a0.size(); ++comp)
  {
    auto b1 = a0[comp].ds(mode.base.domain().boundary()[comp]).tail_integral();
    out.trace.push_back(b1.traces());
    out.profile.push_back(std::move(b1));
  }
  return out;
}

cplx damping_factor(double nu, double lambda0, double chi, int sign)
{
  if (!(nu > 0.0) || !(lambda0 > 0.0) || !(chi > 0.0))
  {
    throw ConfigurationError("damping factor needs nu, lambda and chi positive");
  }
  const double a = chi * std::sqrt(2.0 / (nu * lambda0));
  const cplx lambda_plus =
    -cplx(a * a + 2.0 * a, a * a) / (2.0 * (a * a + 2.0 * a + 2.0)) * std::sqrt(nu / (lambda0 * lambda0 * lambda0));
  return sign > 0 ? lambda_plus : std::conj(lambda_plus);
}

double DampingRate::relative_gap() const
{
  const double scale = std::max(std::abs(i_lambda1), std::abs(i_lambda1_quadrature));
  if (scale < 1e-12)
  {
    return 0.0;
  }
  return std::abs(i_lambda1 - i_lambda1_quadrature) / scale;
}

DampingRate damping_rate(const spectrum::NeumannMode &mode, const OperatorConfig &cfg, int sign, double check_tol)
{
  cfg.validate();
  const auto &domain = mode.domain();
  const double lam = mode.lambda0;
  const cplx c = decay_rate(lam, cfg.nu, sign);
  DampingRate r;
  r.k = static_cast<std::size_t>(mode.index);
  r.sign = sign;
  r.lambda0 = lam;
  r.a = cfg.chi * std::sqrt(2.0 / (cfg.nu * lam));
  r.Lambda = damping_factor(cfg.nu, lam, cfg.chi, sign);
  r.boundary_integral = spectrum::boundary_gradient_integral(mode, mode);
  r.i_lambda1 = r.Lambda * r.boundary_integral;
  r.i_lambda1_eigen = r.i_lambda1 / std::sqrt(2.0);

  // Z1 = d_s A0 / c with A0 = -chi/(chi + nu c) m_int . t, integrated
  // against Psi on the boundary.
  const cplx amp = -cfg.chi / (cfg.chi + cfg.nu * c) * double(sign) / (cplx(0.0, lam) * std::sqrt(2.0));
  cplx sum = 0.0;
  for (std::size_t comp = 0; comp < domain.boundary().size(); ++comp)
  {
    const auto &bc = domain.boundary()[comp];
    std::vector<double> dts(bc.size());
    if (mode.smooth())
    {
      // d_s (grad Psi . t) = t^T H t because grad Psi . n = 0.
      for (std::size_t i = 0; i < bc.size(); ++i)
      {
        const auto jet = mode.jet(bc.x[i]);
        dts[i] = bc.tangent[i].dot(jet.h * bc.tangent[i]);
      }
    }
    else
    {
      std::vector<double> ts(bc.size());
      for (std::size_t i = 0; i < bc.size(); ++i)
      {
        ts[i] = mode.boundary_gradient(comp, i).dot(bc.tangent[i]);
      }
      dts = geometry::tangential_derivative(ts, bc);
    }
    for (std::size_t i = 0; i < bc.size(); ++i)
    {
      sum += bc.weight[i] * amp * dts[i] / c * mode.boundary_value(comp, i);
    }
  }
  r.i_lambda1_quadrature = sum;
  if (check_tol > 0.0 && r.relative_gap() > check_tol)
  {
    throw NumericalError("damping rate routes disagree: relative gap " + std::to_string(r.relative_gap()));
  }
  return r;
}

}  // namespace acoustic_layer::layer
