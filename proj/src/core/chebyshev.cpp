// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/core/chebyshev.hpp"

#include <cmath>

#include "acoustic_layer/core/errors.hpp"

namespace acoustic_layer::chebyshev
{

Grid::Grid(double a, double b, int n) : a_(a), b_(b), n_(n)
{
  if (n < 2 || !(b > a))
  {
    throw ConfigurationError("chebyshev grid needs n >= 2 and b > a");
  }
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Eigen::VectorXd t(n + 1);
  for (int j = 0; j <= n; ++j)
  {
    t(j) = std::cos(kPi * j / n);
  }
  x_ = mid + half * t.array();

  // Trefethen's cheb matrix with the negative-sum trick on the diagonal.
  Eigen::VectorXd c = Eigen::VectorXd::Ones(n + 1);
  c(0) = c(n) = 2.0;
  d_.setZero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
  {
    for (int j = 0; j <= n; ++j)
    {
      if (i != j)
      {
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        d_(i, j) = c(i) / c(j) * sign / (t(i) - t(j));
      }
    }
  }
  for (int i = 0; i <= n; ++i)
  {
    d_(i, i) = -d_.row(i).sum();
  }
  d_ /= half;
}

VectorXc Grid::coefficients(const VectorXc &values) const
{
  const int n = n_;
  VectorXc c(n + 1);
  for (int k = 0; k <= n; ++k)
  {
    cplx sum = 0.0;
    for (int j = 0; j <= n; ++j)
    {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      sum += w * values(j) * std::cos(kPi * k * j / n);
    }
    c(k) = sum * (2.0 / n);
  }
  c(0) *= 0.5;
  c(n) *= 0.5;
  return c;
}

VectorXc derivative_coefficients(const VectorXc &coeffs, double a, double b)
{
  const int n = static_cast<int>(coeffs.size()) - 1;
  VectorXc d = VectorXc::Zero(std::max(n, 1));
  if (n == 0)
  {
    return d;
  }
  // c'_{k-1} = c'_{k+1} + 2 k c_k, then halve the constant term.
  VectorXc work = VectorXc::Zero(n + 2);
  for (int k = n; k >= 1; --k)
  {
    work(k - 1) = work(k + 1) + 2.0 * k * coeffs(k);
  }
  work(0) *= 0.5;
  const double scale = 2.0 / (b - a);
  for (int k = 0; k < n; ++k)
  {
    d(k) = work(k) * scale;
  }
  return d;
}

cplx clenshaw(const VectorXc &coeffs, double a, double b, double x)
{
  const double t = (2.0 * x - a - b) / (b - a);
  cplx b1 = 0.0, b2 = 0.0;
  for (long k = coeffs.size() - 1; k >= 1; --k)
  {
    const cplx tmp = 2.0 * t * b1 - b2 + coeffs(k);
    b2 = b1;
    b1 = tmp;
  }
  return t * b1 - b2 + coeffs(0);
}

std::array<cplx, 4> Grid::evaluate(const VectorXc &coeffs, double x) const
{
  std::array<cplx, 4> out{};
  VectorXc c = coeffs;
  for (int order = 0; order < 4; ++order)
  {
    out[order] = clenshaw(c, a_, b_, x);
    c = derivative_coefficients(c, a_, b_);
  }
  return out;
}

}  // namespace acoustic_layer::chebyshev
