// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/parallel.hpp"

namespace acoustic_layer::acoustic
{

FieldJet &FieldJet::operator+=(const FieldJet &o)
{
  psi += o.psi;
  grad_psi += o.grad_psi;
  m += o.m;
  grad_m += o.grad_m;
  lap_m += o.lap_m;
  grad_div_m += o.grad_div_m;
  order = std::min(order, o.order);
  return *this;
}

FieldJet &FieldJet::operator*=(cplx s)
{
  psi *= s;
  grad_psi *= s;
  m *= s;
  grad_m *= s;
  lap_m *= s;
  grad_div_m *= s;
  return *this;
}

FieldPair::FieldPair(std::uint64_t domain_id, int order, Evaluator eval)
  : domain_id_(domain_id), order_(order), eval_(std::move(eval))
{
}

FieldPair FieldPair::zero(std::uint64_t domain_id)
{
  FieldPair f;
  f.domain_id_ = domain_id;
  return f;
}

FieldJet FieldPair::jet(const Point &x) const
{
  if (!eval_)
  {
    return FieldJet{};
  }
  FieldJet j = eval_(x);
  j.order = std::min(j.order, order_);
  return j;
}

FieldPair FieldPair::with_spectral(SpectralCoefficients coeffs) const
{
  FieldPair f = *this;
  f.spectral_ = std::move(coeffs);
  return f;
}

namespace
{

void check_same_domain(const FieldPair &a, const FieldPair &b)
{
  if (a.domain_id() != b.domain_id())
  {
    throw DomainError("fields belong to different domains");
  }
}

std::optional<SpectralCoefficients> combine_spectral(const std::optional<SpectralCoefficients> &a, cplx sa,
                                                     const std::optional<SpectralCoefficients> &b, cplx sb)
{
  if (!a || !b || a->basis != b->basis)
  {
    return std::nullopt;
  }
  return SpectralCoefficients{a->basis, sa * a->plus + sb * b->plus, sa * a->minus + sb * b->minus};
}

}  // namespace

FieldPair operator+(const FieldPair &a, const FieldPair &b)
{
  check_same_domain(a, b);
  if (a.is_zero())
  {
    return b;
  }
  if (b.is_zero())
  {
    return a;
  }
  FieldPair r(a.domain_id(), std::min(a.order(), b.order()), [ea = a.eval_, eb = b.eval_](const Point &x) {
    FieldJet j = ea(x);
    j += eb(x);
    return j;
  });
  r.spectral_ = combine_spectral(a.spectral_, 1.0, b.spectral_, 1.0);
  return r;
}

FieldPair operator-(const FieldPair &a, const FieldPair &b)
{
  return a + cplx(-1.0) * b;
}

FieldPair operator*(cplx s, const FieldPair &a)
{
  if (a.is_zero())
  {
    return a;
  }
  FieldPair r(a.domain_id(), a.order(), [ea = a.eval_, s](const Point &x) {
    FieldJet j = ea(x);
    j *= s;
    return j;
  });
  if (a.spectral_)
  {
    r.spectral_ = SpectralCoefficients{a.spectral_->basis, s * a.spectral_->plus, s * a.spectral_->minus};
  }
  return r;
}

namespace
{

// Values of f at every interior and layer node, evaluated in parallel.
template <typename T, typename F>
void sample_nodes(const F &f, const geometry::QuadratureSet &q, std::vector<T> &interior, std::vector<T> &layer)
{
  interior.assign(q.interior.size(), T{});
  layer.assign(q.layer.size(), T{});
  const std::size_t ni = q.interior.size();
  parallel_for(ni + q.layer.size(), [&](std::size_t i) {
    if (i < ni)
    {
      if (q.interior_partition[i] != 0.0)
      {
        interior[i] = f(q.interior[i].x);
      }
    }
    else
    {
      const auto &n = q.layer[i - ni];
      if (geometry::cutoff_profile(n.d, q.delta).value != 0.0)
      {
        layer[i - ni] = f(n.x);
      }
    }
  });
}

}  // namespace

cplx integrate(const std::function<cplx(const Point &)> &f, const geometry::QuadratureSet &q)
{
  std::vector<cplx> vi, vl;
  sample_nodes<cplx>(f, q, vi, vl);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < vi.size(); ++i)
  {
    sum += q.interior[i].w * q.interior_partition[i] * vi[i];
  }
  for (std::size_t i = 0; i < vl.size(); ++i)
  {
    sum += q.layer[i].w * geometry::cutoff_profile(q.layer[i].d, q.delta).value * vl[i];
  }
  return sum;
}

double integrate_real(const std::function<double(const Point &)> &f, const geometry::QuadratureSet &q)
{
  return integrate([&f](const Point &x) { return cplx(f(x)); }, q).real();
}

cplx inner_product(const FieldPair &a, const FieldPair &b, const geometry::QuadratureSet &q)
{
  if (a.domain_id() != q.domain_id || b.domain_id() != q.domain_id)
  {
    throw QuadratureError("inner product quadrature belongs to a different domain");
  }
  if (a.is_zero() || b.is_zero())
  {
    return 0.0;
  }
  return integrate(
    [&](const Point &x) {
      const FieldJet ja = a.jet(x), jb = b.jet(x);
      return ja.psi * std::conj(jb.psi) + jb.m.dot(ja.m);
    },
    q);
}

double lp_norm(const FieldPair &phi, const geometry::QuadratureSet &q, double p)
{
  if (phi.domain_id() != q.domain_id)
  {
    throw QuadratureError("norm quadrature belongs to a different domain");
  }
  if (!(p >= 1.0))
  {
    throw ConfigurationError("L^p norm needs p >= 1");
  }
  if (phi.is_zero())
  {
    return 0.0;
  }
  auto magnitude = [&](const Point &x) {
    const FieldJet j = phi.jet(x);
    return std::sqrt(std::norm(j.psi) + j.m.squaredNorm());
  };
  if (std::isinf(p))
  {
    std::vector<double> vi(q.interior.size()), vl(q.layer.size());
    const std::size_t ni = q.interior.size();
    parallel_for(ni + vl.size(), [&](std::size_t i) {
      if (i < ni)
      {
        vi[i] = magnitude(q.interior[i].x);
      }
      else
      {
        vl[i - ni] = magnitude(q.layer[i - ni].x);
      }
    });
    double mx = 0.0;
    for (double v : vi)
    {
      mx = std::max(mx, v);
    }
    for (double v : vl)
    {
      mx = std::max(mx, v);
    }
    return mx;
  }
  const double s = integrate_real([&](const Point &x) { return std::pow(magnitude(x), p); }, q);
  return std::pow(s, 1.0 / p);
}

}  // namespace acoustic_layer::acoustic
