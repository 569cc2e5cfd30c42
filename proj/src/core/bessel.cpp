// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/core/bessel.hpp"

#include <cmath>
#include <string>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/types.hpp"

namespace acoustic_layer::bessel
{

namespace
{

template <typename F>
Derivatives derivatives(int n, double x, F &&z)
{
  const double zn = z(n);
  const double zm = n == 0 ? -z(1) : z(n - 1);
  const double zp = z(n + 1);
  const double d1 = 0.5 * (zm - zp);
  // Bessel's equation and its derivative.
  const double nn = static_cast<double>(n) * n;
  const double d2 = -d1 / x - (1.0 - nn / (x * x)) * zn;
  const double d3 = -d2 / x + d1 / (x * x) - (1.0 - nn / (x * x)) * d1 - 2.0 * nn / (x * x * x) * zn;
  return {zn, d1, d2, d3};
}

}  // namespace

Derivatives j(int n, double x)
{
  return derivatives(n, x, [x](int m) { return std::cyl_bessel_j(static_cast<double>(m), x); });
}

Derivatives y(int n, double x)
{
  return derivatives(n, x, [x](int m) { return std::cyl_neumann(static_cast<double>(m), x); });
}

std::vector<double> find_roots(const std::function<double(double)> &f,
                               const std::function<double(double)> &df, double a, double b,
                               double step, std::size_t max_count, double residual_tol)
{
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  while (x0 < b && roots.size() < max_count)
  {
    const double x1 = std::min(x0 + step, b);
    const double f1 = f(x1);
    if (f0 == 0.0)
    {
      roots.push_back(x0);
    }
    else if (f0 * f1 < 0.0)
    {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 60 && hi - lo > 1e-6 * std::max(1.0, hi); ++it)
      {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (flo * fm <= 0.0)
        {
          hi = mid;
        }
        else
        {
          lo = mid;
          flo = fm;
        }
      }
      double x = 0.5 * (lo + hi);
      for (int it = 0; it < 50; ++it)
      {
        const double fx = f(x);
        const double dx = fx / df(x);
        double next = x - dx;
        if (next < lo || next > hi)
        {
          next = 0.5 * (lo + hi);
        }
        if (f(next) * flo <= 0.0)
        {
          hi = std::max(next, lo);
        }
        else
        {
          lo = std::min(next, hi);
        }
        const bool done = std::abs(next - x) < 1e-15 * std::max(1.0, std::abs(x));
        x = next;
        if (done)
        {
          break;
        }
      }
      if (std::abs(f(x)) > residual_tol)
      {
        throw NumericalError("root refinement did not reach residual tolerance near x = " +
                             std::to_string(x));
      }
      roots.push_back(x);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

std::vector<double> disc_neumann_roots(int n, std::size_t count)
{
  if (n < 0)
  {
    throw ConfigurationError("Bessel order must be non-negative");
  }
  const double start = std::max(1e-3, 0.5 * n);
  const double end = start + 4.0 * (static_cast<double>(count) + 2.0) + 2.0 * n + 10.0;
  auto roots = find_roots([n](double x) { return j(n, x).d1; }, [n](double x) { return j(n, x).d2; },
                          start, end, 0.05, count);
  if (roots.size() < count)
  {
    throw NumericalError("could not bracket the requested Bessel-derivative zeros");
  }
  return roots;
}

std::vector<double> annulus_neumann_roots(int n, double r1, double r2, std::size_t count)
{
  if (!(r2 > r1 && r1 > 0.0))
  {
    throw ConfigurationError("annulus radii must satisfy 0 < r1 < r2");
  }
  auto cross = [=](double l) { return j(n, l * r1).d1 * y(n, l * r2).d1 - j(n, l * r2).d1 * y(n, l * r1).d1; };
  auto dcross = [=](double l) {
    const auto ja = j(n, l * r1), jb = j(n, l * r2), ya = y(n, l * r1), yb = y(n, l * r2);
    return r1 * ja.d2 * yb.d1 + r2 * ja.d1 * yb.d2 - r2 * jb.d2 * ya.d1 - r1 * jb.d1 * ya.d2;
  };
  // The cross product grows like Y'; normalize so the residual test is
  // scale free.
  auto scaled = [=](double l) { return cross(l) / std::abs(y(n, l * r1).d1); };
  auto dscaled = [=](double l) { return dcross(l) / std::abs(y(n, l * r1).d1); };
  const double step = std::min(0.02, 0.05 * kPi / (r2 - r1));
  const double start = 1e-3;
  const double end = (static_cast<double>(count) + 2.0) * 3.3 / (r2 - r1) + (n + 2.0) / r2 + 5.0;
  auto roots = find_roots(scaled, dscaled, start, end, step, count, 1e-10);
  if (roots.size() < count)
  {
    throw NumericalError("could not bracket the requested annulus Neumann roots");
  }
  return roots;
}

}  // namespace acoustic_layer::bessel
