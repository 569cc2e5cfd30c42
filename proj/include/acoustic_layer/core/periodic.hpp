// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CORE_PERIODIC_HPP
#define ACOUSTIC_LAYER_CORE_PERIODIC_HPP

#include <vector>

#include "acoustic_layer/core/types.hpp"

namespace acoustic_layer::periodic
{

// Trigonometric interpolant of N uniform samples s_j = j*period/N.
// For even N the Nyquist mode is carried as a cosine so that the
// interpolant and all of its derivatives are real for real samples.
class TrigInterpolant
{
public:
  TrigInterpolant() = default;
  TrigInterpolant(const std::vector<cplx> &samples, double period);

  std::size_t size() const { return coeffs_.size(); }
  double period() const { return period_; }

  // d^order/ds^order of the interpolant at arbitrary s.
  cplx evaluate(double s, int order = 0) const;

  // Derivative of the given order sampled back on the uniform grid.
  std::vector<cplx> derivative_samples(int order) const;

  // Fourier coefficient of wavenumber k (|k| <= N/2), normalized so that
  // f(s) = sum_k c_k exp(2 pi i k s / period).
  cplx coefficient(int k) const;

private:
  std::vector<cplx> coeffs_;
  double period_ = 1.0;
};

std::vector<cplx> derivative(const std::vector<cplx> &samples, double period, int order = 1);
std::vector<double> derivative(const std::vector<double> &samples, double period, int order = 1);

}  // namespace acoustic_layer::periodic

#endif  // ACOUSTIC_LAYER_CORE_PERIODIC_HPP
