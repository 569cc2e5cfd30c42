// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CORE_JET_HPP
#define ACOUSTIC_LAYER_CORE_JET_HPP

#include <cmath>
#include <complex>

#include "acoustic_layer/core/types.hpp"

namespace acoustic_layer
{

// Second-order Taylor jet in two variables (u, v): value, gradient and the
// three Hessian entries. Used for chain-rule evaluation of layer fields in
// (s, d) coordinates and for differentiating closed-form test fields.
template <typename T>
struct Jet2
{
  T v{}, du{}, dv{}, duu{}, duv{}, dvv{};

  Jet2() = default;
  Jet2(T value) : v(value) {}
  Jet2(T value, T du_, T dv_, T duu_ = T{}, T duv_ = T{}, T dvv_ = T{})
    : v(value), du(du_), dv(dv_), duu(duu_), duv(duv_), dvv(dvv_)
  {
  }

  static Jet2 variable_u(T value) { return Jet2(value, T(1), T{}); }
  static Jet2 variable_v(T value) { return Jet2(value, T{}, T(1)); }

  // Apply a scalar function given f, f', f'' at v.
  Jet2 compose(T f, T f1, T f2) const
  {
    return Jet2(f, f1 * du, f1 * dv, f1 * duu + f2 * du * du, f1 * duv + f2 * du * dv,
                f1 * dvv + f2 * dv * dv);
  }

  Jet2 &operator+=(const Jet2 &o)
  {
    v += o.v; du += o.du; dv += o.dv; duu += o.duu; duv += o.duv; dvv += o.dvv;
    return *this;
  }
  Jet2 &operator-=(const Jet2 &o)
  {
    v -= o.v; du -= o.du; dv -= o.dv; duu -= o.duu; duv -= o.duv; dvv -= o.dvv;
    return *this;
  }
  Jet2 &operator*=(const Jet2 &o)
  {
    *this = *this * o;
    return *this;
  }
  Jet2 operator-() const { return Jet2(-v, -du, -dv, -duu, -duv, -dvv); }

  friend Jet2 operator+(Jet2 a, const Jet2 &b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2 &b) { return a -= b; }
  friend Jet2 operator*(const Jet2 &a, const Jet2 &b)
  {
    return Jet2(a.v * b.v, a.du * b.v + a.v * b.du, a.dv * b.v + a.v * b.dv,
                a.duu * b.v + 2.0 * a.du * b.du + a.v * b.duu,
                a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
                a.dvv * b.v + 2.0 * a.dv * b.dv + a.v * b.dvv);
  }
  friend Jet2 operator/(const Jet2 &a, const Jet2 &b) { return a * b.reciprocal(); }

  template <typename S>
  friend Jet2 operator*(const Jet2 &a, S s)
  {
    return Jet2(a.v * T(s), a.du * T(s), a.dv * T(s), a.duu * T(s), a.duv * T(s), a.dvv * T(s));
  }
  template <typename S>
  friend Jet2 operator*(S s, const Jet2 &a)
  {
    return a * s;
  }

  Jet2 reciprocal() const
  {
    const T r = T(1) / v;
    return compose(r, -r * r, T(2) * r * r * r);
  }
};

template <typename T>
Jet2<T> exp(const Jet2<T> &a)
{
  const T e = std::exp(a.v);
  return a.compose(e, e, e);
}

template <typename T>
Jet2<T> sin(const Jet2<T> &a)
{
  return a.compose(std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}

template <typename T>
Jet2<T> cos(const Jet2<T> &a)
{
  return a.compose(std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}

template <typename T>
Jet2<T> sqrt(const Jet2<T> &a)
{
  const T r = std::sqrt(a.v);
  return a.compose(r, T(0.5) / r, T(-0.25) / (r * a.v));
}

template <typename T>
Jet2<T> pow(const Jet2<T> &a, int n)
{
  if (n == 0)
  {
    return Jet2<T>(T(1));
  }
  const T p2 = n >= 2 ? std::pow(a.v, n - 2) : T(1) / (a.v * a.v);
  const T p1 = p2 * a.v;
  return a.compose(p1 * a.v, T(n) * p1, T(n) * T(n - 1) * p2);
}

using Jet2c = Jet2<cplx>;
using Jet2d = Jet2<double>;

inline Jet2c to_complex(const Jet2d &a)
{
  return Jet2c(a.v, a.du, a.dv, a.duu, a.duv, a.dvv);
}

}  // namespace acoustic_layer

#endif  // ACOUSTIC_LAYER_CORE_JET_HPP
