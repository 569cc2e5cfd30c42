// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CORE_CHEBYSHEV_HPP
#define ACOUSTIC_LAYER_CORE_CHEBYSHEV_HPP

#include <array>

#include "acoustic_layer/core/types.hpp"

namespace acoustic_layer::chebyshev
{

// Chebyshev-Gauss-Lobatto grid on [a, b] with n+1 points ordered from b
// down to a (x_j = mid + half*cos(pi j / n)).
class Grid
{
public:
  Grid(double a, double b, int n);

  int degree() const { return n_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  const Eigen::VectorXd &nodes() const { return x_; }
  // First-derivative collocation matrix.
  const Eigen::MatrixXd &diff() const { return d_; }

  // Chebyshev coefficients of the interpolant through nodal values.
  VectorXc coefficients(const VectorXc &values) const;

  // Value and first three derivatives of the interpolant at x.
  std::array<cplx, 4> evaluate(const VectorXc &coeffs, double x) const;

private:
  double a_, b_;
  int n_;
  Eigen::VectorXd x_;
  Eigen::MatrixXd d_;
};

// Chebyshev coefficients of the derivative (with respect to x on [a, b]).
VectorXc derivative_coefficients(const VectorXc &coeffs, double a, double b);

// Clenshaw evaluation of sum c_k T_k(t), t mapped from x in [a, b].
cplx clenshaw(const VectorXc &coeffs, double a, double b, double x);

}  // namespace acoustic_layer::chebyshev

#endif  // ACOUSTIC_LAYER_CORE_CHEBYSHEV_HPP
