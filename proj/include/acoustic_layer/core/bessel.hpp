// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CORE_BESSEL_HPP
#define ACOUSTIC_LAYER_CORE_BESSEL_HPP

#include <functional>
#include <vector>

namespace acoustic_layer::bessel
{

// Integer-order Bessel functions of the first (J) and second (Y) kind and
// their first three derivatives, index 0..3 of the returned array.
struct Derivatives
{
  double v, d1, d2, d3;
};
Derivatives j(int n, double x);
Derivatives y(int n, double x);

// Roots of f on [a, b]: sign-change scan with the given step, bisection to a
// small bracket, then safeguarded Newton. Each root has |f| < residual_tol or
// a NumericalError is raised.
std::vector<double> find_roots(const std::function<double(double)> &f,
                               const std::function<double(double)> &df, double a, double b,
                               double step, std::size_t max_count, double residual_tol = 1e-12);

// First `count` positive zeros of J_n'.
std::vector<double> disc_neumann_roots(int n, std::size_t count);

// First `count` positive lambda with Z_n'(lambda r1) = Z_n'(lambda r2) = 0 for
// some combination Z_n of J_n and Y_n.
std::vector<double> annulus_neumann_roots(int n, double r1, double r2, std::size_t count);

}  // namespace acoustic_layer::bessel

#endif  // ACOUSTIC_LAYER_CORE_BESSEL_HPP
