// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/periodic.hpp"
#include "acoustic_layer/layer.hpp"

namespace acoustic_layer::layer
{

using acoustic::FieldJet;
using acoustic::FieldPair;

namespace
{

// Trimmed Fourier series of one profile coefficient in s.
struct Series
{
  std::vector<double> omega;
  std::vector<cplx> c;

  // Value and first two s-derivatives.
  std::array<cplx, 3> eval(double s) const
  {
    std::array<cplx, 3> out{};
    for (std::size_t k = 0; k < c.size(); ++k)
    {
      const cplx e = c[k] * std::exp(cplx(0.0, omega[k] * s));
      out[0] += e;
      out[1] += cplx(0.0, omega[k]) * e;
      out[2] -= omega[k] * omega[k] * e;
    }
    return out;
  }
};

Series series(const std::vector<cplx> &samples, double period)
{
  Series out;
  const periodic::TrigInterpolant ti(samples, period);
  const int half = static_cast<int>(samples.size()) / 2;
  std::vector<cplx> all;
  double peak = 0.0;
  for (int k = -half + 1; k < half; ++k)
  {
    all.push_back(ti.coefficient(k));
    peak = std::max(peak, std::abs(all.back()));
  }
  for (int k = -half + 1; k < half; ++k)
  {
    const cplx ck = all[static_cast<std::size_t>(k + half - 1)];
    if (std::abs(ck) > 1e-15 * peak)
    {
      out.omega.push_back(2.0 * M_PI * k / period);
      out.c.push_back(ck);
    }
  }
  return out;
}

struct ProfileSeries
{
  cplx decay;
  std::vector<Series> q;
};

ProfileSeries profile_series(const LayerProfile &p)
{
  ProfileSeries out{p.decay(), {}};
  for (int j = 0; j <= p.degree(); ++j)
  {
    out.q.push_back(series(p.coefficients(j), p.period()));
  }
  return out;
}

// Jet of sum_j q_j(s) zeta^j exp(-c zeta) from jets of s and zeta.
Jet2c profile_jet(const ProfileSeries &p, const Jet2c &s, const Jet2c &zeta)
{
  const Jet2c e = exp(-p.decay * zeta);
  Jet2c poly(cplx(0.0));
  Jet2c zp(cplx(1.0));
  for (const auto &q : p.q)
  {
    const auto v = q.eval(s.v.real());
    poly += s.compose(v[0], v[1], v[2]) * zp;
    zp = zp * zeta;
  }
  return poly * e;
}

struct LayerData
{
  std::vector<double> weight;  // sqrt(eps)^i
  // [component][order]
  std::vector<std::vector<ProfileSeries>> a, b;
};

}  // namespace

FieldPair LayerExpansion::layer_field(double eps) const
{
  if (!(eps > 0.0))
  {
    throw ConfigurationError("eps must be positive");
  }
  const auto &dom = domain();
  if (!dom.is_polar())
  {
    throw UnsupportedDomainError("layer evaluation supports the disc and the annulus");
  }
  auto data = std::make_shared<LayerData>();
  const std::size_t ncomp = dom.boundary().size();
  data->a.resize(ncomp);
  data->b.resize(ncomp);
  for (const auto &t : terms)
  {
    data->weight.push_back(std::pow(std::sqrt(eps), t.order));
    for (std::size_t comp = 0; comp < ncomp; ++comp)
    {
      data->a[comp].push_back(profile_series(t.boundary[comp].a));
      data->b[comp].push_back(profile_series(t.boundary[comp].b));
    }
  }
  const bool annulus = dom.kind() == geometry::DomainKind::annulus;
  const double r_out = annulus ? dom.parameters()[1] : dom.parameters()[0];
  const double r_in = annulus ? dom.parameters()[0] : 0.0;
  const double delta = dom.tubular_width();
  const double se = std::sqrt(eps);

  auto eval = [data, annulus, r_out, r_in, delta, se](const Point &x) {
    FieldJet out;
    out.order = 2;
    const double r = x.norm();
    const double d_out = r_out - r;
    const double d_in = annulus ? r - r_in : std::numeric_limits<double>::infinity();
    const bool outer = d_out <= d_in;
    const double dist = outer ? d_out : d_in;
    if (dist >= 2.0 * delta / 3.0 || r == 0.0)
    {
      return out;
    }
    const Jet2d X = Jet2d::variable_u(x.x());
    const Jet2d Y = Jet2d::variable_v(x.y());
    const Jet2d R = sqrt(X * X + Y * Y);
    const double th = std::atan2(x.y(), x.x());
    const double r2 = r * r, r4 = r2 * r2;
    const Jet2d TH(th, -x.y() / r2, x.x() / r2, 2.0 * x.x() * x.y() / r4, (x.y() * x.y() - x.x() * x.x()) / r4,
                   -2.0 * x.x() * x.y() / r4);
    const Jet2d CS = cos(TH), SN = sin(TH);
    Jet2d D, S, tx, ty, ex, ey;
    std::size_t comp = 0;
    if (outer)
    {
      D = Jet2d(r_out) - R;
      S = r_out * TH;
      tx = -SN;
      ty = CS;
      ex = -CS;
      ey = -SN;
    }
    else
    {
      comp = 1;
      D = R - Jet2d(r_in);
      S = -r_in * TH;
      tx = SN;
      ty = -CS;
      ex = CS;
      ey = SN;
    }
    const auto cut = geometry::cutoff_profile(D.v, delta);
    const Jet2c chi = to_complex(D.compose(cut.value, cut.d1, cut.d2));
    const Jet2c s = to_complex(S);
    const Jet2c zeta = to_complex(D * (1.0 / se));
    Jet2c mx(cplx(0.0)), my(cplx(0.0));
    for (std::size_t i = 0; i < data->weight.size(); ++i)
    {
      const Jet2c a = profile_jet(data->a[comp][i], s, zeta);
      const Jet2c b = profile_jet(data->b[comp][i], s, zeta);
      const double w = data->weight[i];
      mx += w * (a * to_complex(tx) + b * to_complex(ex));
      my += w * (a * to_complex(ty) + b * to_complex(ey));
    }
    mx = chi * mx;
    my = chi * my;
    out.m = Vec2c(mx.v, my.v);
    out.grad_m << mx.du, mx.dv, my.du, my.dv;
    out.lap_m = Vec2c(mx.duu + mx.dvv, my.duu + my.dvv);
    out.grad_div_m = Vec2c(mx.duu + my.duv, mx.duv + my.dvv);
    return out;
  };
  return FieldPair(dom.id(), 2, eval);
}

FieldPair LayerExpansion::field(double eps, bool with_layer) const
{
  const double se = std::sqrt(eps);
  FieldPair out = acoustic::make_acoustic_mode(mode(), tau).field();
  for (std::size_t i = 1; i < terms.size(); ++i)
  {
    out = out + std::pow(se, static_cast<double>(i)) * terms[i].interior.to_field();
  }
  if (with_layer && eps > 0.0)
  {
    out = out + layer_field(eps);
  }
  return out;
}

std::vector<ResidualValue> residual_sweep(const LayerExpansion &expansion, const std::vector<double> &eps,
                                          const std::vector<double> &p, const geometry::QuadratureOptions &quad)
{
  std::vector<ResidualValue> out;
  const FieldPair phi0 = acoustic::make_acoustic_mode(expansion.mode(), expansion.tau).field();
  for (double e : eps)
  {
    if (!(e > 0.0))
    {
      throw ConfigurationError("eps must be positive");
    }
    auto opts = quad;
    opts.eps = e;
    const auto q = geometry::build_quadrature(expansion.domain(), opts);
    const FieldPair phi = expansion.field(e);
    const FieldPair res = acoustic::apply_A_eps(phi, expansion.cfg, e) - expansion.i_lambda(e) * phi;
    const FieldPair diff = phi - phi0;
    for (double pp : p)
    {
      out.push_back({e, pp, acoustic::lp_norm(res, q, pp), acoustic::lp_norm(diff, q, pp)});
    }
  }
  return out;
}

double residual(const LayerExpansion &expansion, double eps, double p, const geometry::QuadratureOptions &quad)
{
  return residual_sweep(expansion, {eps}, {p}, quad).front().residual;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
{
  if (x.size() != y.size() || x.size() < 2)
  {
    throw ConfigurationError("slope fit needs two or more matching points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
    {
      throw NumericalError("slope fit needs positive data");
    }
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0)
  {
    throw NumericalError("slope fit needs distinct abscissae");
  }
  return (n * sxy - sx * sy) / den;
}

}  // namespace acoustic_layer::layer
