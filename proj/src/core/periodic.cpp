// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/core/periodic.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

#include "acoustic_layer/core/errors.hpp"

namespace acoustic_layer::periodic
{

namespace
{

int wavenumber(std::size_t j, std::size_t n)
{
  const auto k = static_cast<long>(j);
  const auto nn = static_cast<long>(n);
  return static_cast<int>(k <= nn / 2 ? k : k - nn);
}

}  // namespace

TrigInterpolant::TrigInterpolant(const std::vector<cplx> &samples, double period)
  : period_(period)
{
  if (samples.empty())
  {
    throw ConfigurationError("trigonometric interpolation needs at least one sample");
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> in(samples);
  fft.fwd(coeffs_, in);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (auto &c : coeffs_)
  {
    c *= scale;
  }
}

cplx TrigInterpolant::coefficient(int k) const
{
  const auto n = static_cast<long>(coeffs_.size());
  long j = k;
  if (j < 0)
  {
    j += n;
  }
  return coeffs_.at(static_cast<std::size_t>(j));
}

cplx TrigInterpolant::evaluate(double s, int order) const
{
  const std::size_t n = coeffs_.size();
  const double w = 2.0 * kPi / period_;
  cplx sum = 0.0;
  for (std::size_t j = 0; j < n; ++j)
  {
    const int k = wavenumber(j, n);
    const double kw = k * w;
    if (n % 2 == 0 && 2 * static_cast<std::size_t>(std::abs(k)) == n)
    {
      // Nyquist term as c*cos(kw s).
      const double phase = kw * s;
      const double d = std::pow(kw, order);
      double trig = 0.0;
      switch (order % 4)
      {
        case 0: trig = std::cos(phase); break;
        case 1: trig = -std::sin(phase); break;
        case 2: trig = -std::cos(phase); break;
        default: trig = std::sin(phase); break;
      }
      sum += coeffs_[j] * d * trig;
      continue;
    }
    sum += coeffs_[j] * std::pow(cplx(0.0, kw), order) * std::exp(cplx(0.0, kw * s));
  }
  return sum;
}

std::vector<cplx> TrigInterpolant::derivative_samples(int order) const
{
  const std::size_t n = coeffs_.size();
  const double w = 2.0 * kPi / period_;
  std::vector<cplx> spec(n);
  for (std::size_t j = 0; j < n; ++j)
  {
    const int k = wavenumber(j, n);
    if (n % 2 == 0 && 2 * static_cast<std::size_t>(std::abs(k)) == n)
    {
      // The cosine Nyquist mode has vanishing odd derivatives on the grid.
      spec[j] = order % 2 == 1 ? cplx(0.0) : coeffs_[j] * std::pow(-(k * w) * (k * w), order / 2);
      continue;
    }
    spec[j] = coeffs_[j] * std::pow(cplx(0.0, k * w), order);
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, spec);
  for (auto &v : out)
  {
    v *= static_cast<double>(n);
  }
  return out;
}

std::vector<cplx> derivative(const std::vector<cplx> &samples, double period, int order)
{
  return TrigInterpolant(samples, period).derivative_samples(order);
}

std::vector<double> derivative(const std::vector<double> &samples, double period, int order)
{
  std::vector<cplx> c(samples.begin(), samples.end());
  const auto d = derivative(c, period, order);
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
  {
    out[i] = d[i].real();
  }
  return out;
}

}  // namespace acoustic_layer::periodic
