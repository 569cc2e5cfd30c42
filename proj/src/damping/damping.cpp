// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/damping.hpp"

#include <algorithm>
#include <cmath>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/core/parallel.hpp"

namespace acoustic_layer::damping
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_0^h exp(z u) du.
cplx phi1(cplx z, double h)
{
  const cplx zh = z * h;
  if (std::abs(zh) < 1e-8)
  {
    return h * (1.0 + zh / 2.0);
  }
  return (std::exp(zh) - 1.0) / z;
}

}  // namespace

bool ModeClassification::damped(std::size_t k) const
{
  return std::find(I_set.begin(), I_set.end(), k) != I_set.end();
}

ModeClassification classify(const std::vector<layer::DampingRate> &rates, double tol,
                            std::optional<double> boundary_length)
{
  ModeClassification out;
  out.tol = tol;
  for (const auto &r : rates)
  {
    if (r.i_lambda1.real() < -tol)
    {
      out.I_set.push_back(r.k);
      continue;
    }
    out.J_set.push_back(r.k);
    if (boundary_length && r.boundary_integral >= tol * r.lambda0 * r.lambda0 * *boundary_length)
    {
      out.inconsistent.push_back(r.k);
    }
  }
  return out;
}

ForcingSpec ForcingSpec::step(cplx amplitude)
{
  ForcingSpec f;
  f.kind = ForcingKind::step;
  f.amplitude = amplitude;
  return f;
}

ForcingSpec ForcingSpec::power(cplx amplitude, double exponent)
{
  ForcingSpec f;
  f.kind = ForcingKind::power;
  f.amplitude = amplitude;
  f.exponent = exponent;
  return f;
}

ForcingSpec ForcingSpec::sampled(std::vector<double> times, std::vector<cplx> values)
{
  ForcingSpec f;
  f.kind = ForcingKind::sampled;
  f.times = std::move(times);
  f.values = std::move(values);
  return f;
}

cplx ForcingSpec::value(double t) const
{
  switch (kind)
  {
  case ForcingKind::zero:
    return 0.0;
  case ForcingKind::step:
    return amplitude;
  case ForcingKind::power:
    return amplitude * std::pow(std::max(t, 0.0), exponent);
  case ForcingKind::sampled:
    break;
  }
  if (times.empty())
  {
    return 0.0;
  }
  if (t <= times.front())
  {
    return values.front();
  }
  if (t >= times.back())
  {
    return values.back();
  }
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto j = static_cast<std::size_t>(it - times.begin());
  const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
  return (1.0 - w) * values[j - 1] + w * values[j];
}

double ForcingSpec::lp_norm(const std::vector<double> &grid, double p) const
{
  if (grid.empty())
  {
    return 0.0;
  }
  if (std::isinf(p))
  {
    double m = 0.0;
    for (double t : grid)
    {
      m = std::max(m, std::abs(value(t)));
    }
    return m;
  }
  // Three-point Gauss rule per grid interval.
  static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j)
  {
    const double a = grid[j], b = grid[j + 1];
    const cplx fa = value(a), fb = value(b);
    for (int g = 0; g < 3; ++g)
    {
      const double w = 0.5 * (1.0 + gx[g]);
      // Piecewise-linear interpolant of the signal.
      sum += 0.5 * (b - a) * gw[g] * std::pow(std::abs((1.0 - w) * fa + w * fb), p);
    }
  }
  return std::pow(sum, 1.0 / p);
}

void ForcingSpec::validate(double T) const
{
  if (!(T > 0.0))
  {
    throw ConfigurationError("forcing horizon T must be positive");
  }
  if (kind == ForcingKind::power && exponent < 0.0)
  {
    throw ConfigurationError("power forcing needs a nonnegative exponent");
  }
  if (kind == ForcingKind::sampled)
  {
    if (times.size() < 2 || times.size() != values.size())
    {
      throw ConfigurationError("sampled forcing needs two or more matching times and values");
    }
    if (times.front() != 0.0 || times.back() < T)
    {
      throw ConfigurationError("sampled forcing grid must cover [0, T]");
    }
    for (std::size_t i = 1; i < times.size(); ++i)
    {
      if (!(times[i] > times[i - 1]))
      {
        throw ConfigurationError("sampled forcing times must increase strictly");
      }
    }
  }
  if (!(declared_p >= 1.0))
  {
    throw ConfigurationError("declared forcing exponent must be at least 1");
  }
  if (declared_bound)
  {
    std::vector<double> grid;
    if (kind == ForcingKind::sampled)
    {
      for (double t : times)
      {
        if (t <= T)
        {
          grid.push_back(t);
        }
      }
      if (grid.back() < T)
      {
        grid.push_back(T);
      }
    }
    else
    {
      const int n = 4096;
      for (int i = 0; i <= n; ++i)
      {
        grid.push_back(T * i / n);
      }
    }
    const double norm = lp_norm(grid, declared_p);
    if (norm > *declared_bound * (1.0 + 1e-12))
    {
      throw ConfigurationError("forcing norm " + std::to_string(norm) + " exceeds the declared bound");
    }
  }
}

cplx truncated_eigenvalue(cplx i_lambda0, cplx i_lambda1, cplx i_lambda2, double eps)
{
  return i_lambda0 + std::sqrt(eps) * i_lambda1 + eps * i_lambda2;
}

AmplitudeTrajectory solve_amplitude(cplx i_lambda_eps2, double eps, cplx b0, const ForcingSpec &forcing, double T,
                                    double dt)
{
  if (!(eps > 0.0) || !(eps < 1.0))
  {
    throw ConfigurationError("eps must lie in (0, 1)");
  }
  forcing.validate(T);
  const cplx z = std::conj(i_lambda_eps2) / eps;
  if (z.real() > 0.0)
  {
    throw StabilityError("amplitude equation has a growing mode: Re(conj(i lambda)) > 0");
  }
  const double se = std::sqrt(eps);
  if (dt <= 0.0)
  {
    dt = se / 20.0;
  }
  if (dt > se / 10.0 * (1.0 + 1e-12))
  {
    throw PreconditionError("dt must not exceed sqrt(eps) / 10");
  }
  const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  const double h = T / static_cast<double>(n);

  AmplitudeTrajectory out;
  out.eps = eps;
  out.i_lambda = i_lambda_eps2;
  out.b0 = b0;
  out.forcing = forcing.kind;
  out.t.resize(n + 1);
  out.b.resize(n + 1);
  out.t[0] = 0.0;
  out.b[0] = b0;
  const cplx eh = std::exp(z * h);
  const cplx p1 = phi1(z, h);
  const double twor = 2.0 * z.real();
  const double e2 = twor == 0.0 ? h : std::expm1(twor * h) / twor;
  double l2 = 0.0;
  for (std::size_t j = 0; j < n; ++j)
  {
    const double t0 = h * static_cast<double>(j);
    const cplx c = forcing.kind == ForcingKind::zero ? cplx(0.0) : forcing.value(t0 + 0.5 * h);
    out.b[j + 1] = eh * out.b[j] + c * p1;
    out.t[j + 1] = t0 + h;
    // On the step b = A exp(z u) + B with B = -c / z (or A + c u for z = 0).
    if (z == 0.0)
    {
      const cplx A = out.b[j];
      l2 += std::norm(A) * h + std::real(A * std::conj(c)) * h * h + std::norm(c) * h * h * h / 3.0;
    }
    else
    {
      const cplx B = -c / z;
      const cplx A = out.b[j] - B;
      l2 += std::norm(A) * e2 + std::norm(B) * h + 2.0 * std::real(std::conj(B) * A * p1);
    }
  }
  out.l2_norm = std::sqrt(std::max(l2, 0.0));
  double trap = 0.0;
  for (std::size_t j = 0; j < n; ++j)
  {
    trap += 0.5 * h * (std::norm(out.b[j]) + std::norm(out.b[j + 1]));
  }
  out.l2_norm_trapezoid = std::sqrt(trap);
  const double e2T = twor == 0.0 ? T : std::expm1(twor * T) / twor;
  out.initial_part = std::abs(b0) * std::sqrt(e2T);
  return out;
}

double decay_fit(const std::vector<double> &eps, const std::vector<AmplitudeTrajectory> &trajectories)
{
  if (eps.size() != trajectories.size())
  {
    throw ConfigurationError("decay fit needs one trajectory per eps value");
  }
  if (eps.size() < 4)
  {
    throw ConfigurationError("decay fit needs at least 4 eps values");
  }
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (!(*lo > 0.0) || *hi / *lo < 100.0 * (1.0 - 1e-12))
  {
    throw ConfigurationError("decay fit eps values must span two decades");
  }
  std::vector<double> y;
  for (std::size_t i = 0; i < eps.size(); ++i)
  {
    if (trajectories[i].forcing != ForcingKind::zero)
    {
      throw ConfigurationError("decay fit needs zero forcing");
    }
    if (std::abs(trajectories[i].eps - eps[i]) > 1e-15 * eps[i])
    {
      throw ConfigurationError("trajectory eps does not match the grid");
    }
    y.push_back(trajectories[i].l2_norm);
  }
  return layer::loglog_slope(eps, y);
}

HolderCheck holder_kernel_check(const ForcingSpec &forcing, double mu, double eps, double p, double T)
{
  if (!(p >= 1.0))
  {
    throw ConfigurationError("Holder exponent p must lie in [1, infinity]");
  }
  if (!(mu < 0.0))
  {
    throw ConfigurationError("kernel rate mu must be negative");
  }
  if (!(eps > 0.0))
  {
    throw ConfigurationError("eps must be positive");
  }
  forcing.validate(T);
  HolderCheck out;
  out.p = p;
  out.r = std::isinf(p) ? 1.0 : (p == 1.0 ? kInf : p / (p - 1.0));
  if (std::isfinite(out.r) && std::abs(1.0 / p + 1.0 / out.r - 1.0) > 1e-12)
  {
    throw ConfigurationError("exponents are not conjugate");
  }
  const double se = std::sqrt(eps);
  const double k = mu / se;

  std::vector<double> grid;
  if (forcing.kind == ForcingKind::sampled)
  {
    for (double t : forcing.times)
    {
      if (t <= T)
      {
        grid.push_back(t);
      }
    }
    if (grid.back() < T)
    {
      grid.push_back(T);
    }
  }
  else
  {
    const auto n = static_cast<std::size_t>(std::ceil(50.0 * T / se));
    for (std::size_t i = 0; i <= n; ++i)
    {
      grid.push_back(T * static_cast<double>(i) / static_cast<double>(n));
    }
  }

  auto kernel_norm = [&](double t) {
    if (std::isinf(out.r))
    {
      return t > 0.0 ? 1.0 : 0.0;
    }
    const double rk = out.r * k;
    return std::pow(std::expm1(rk * t) / rk, 1.0 / out.r);
  };

  // I(t) for the piecewise-linear interpolant of a; exact per interval.
  cplx I = 0.0;
  double a_max = 0.0, a_pow = 0.0;
  static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  cplx fa = forcing.value(grid[0]);
  a_max = std::abs(fa);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j)
  {
    const double h = grid[j + 1] - grid[j];
    const cplx fb = forcing.value(grid[j + 1]);
    const double kh = k * h;
    const double E0 = std::expm1(kh) / k;
    const double E1 = (std::expm1(kh) - kh) / (k * k);
    // int_0^h (fa + (fb - fa) s / h) exp(k (h - s)) ds
    I = std::exp(kh) * I + fb * E0 - (fb - fa) / h * E1;
    a_max = std::max(a_max, std::abs(fb));
    if (std::isfinite(p))
    {
      for (int g = 0; g < 3; ++g)
      {
        const double w = 0.5 * (1.0 + gx[g]);
        a_pow += 0.5 * h * gw[g] * std::pow(std::abs((1.0 - w) * fa + w * fb), p);
      }
    }
    const double t = grid[j + 1];
    const double a_norm = std::isinf(p) ? a_max : std::pow(a_pow, 1.0 / p);
    const double rhs = a_norm * kernel_norm(t);
    out.lhs = std::max(out.lhs, std::abs(I));
    if (rhs > 0.0)
    {
      out.ratio = std::max(out.ratio, std::abs(I) / rhs);
    }
    else if (std::abs(I) > 0.0)
    {
      out.ratio = kInf;
    }
    fa = fb;
  }
  out.kernel_norm = kernel_norm(T);
  out.rhs = (std::isinf(p) ? a_max : std::pow(a_pow, 1.0 / p)) * out.kernel_norm;
  out.kernel_exponent = std::isinf(out.r) ? 0.0 : 1.0 / (2.0 * out.r);
  out.holds = out.ratio <= 1.0 + 1e-8;
  return out;
}

Vec2c OscillatoryProjection::reconstruct(const std::vector<spectrum::NeumannMode> &modes, const Point &x) const
{
  Vec2c out = Vec2c::Zero();
  for (std::size_t i = 0; i < index.size(); ++i)
  {
    const auto &m = *std::find_if(modes.begin(), modes.end(),
                                  [&](const auto &mm) { return mm.index == static_cast<int>(index[i]); });
    out += coeff(static_cast<Eigen::Index>(i)) * m.gradient(x).cast<cplx>() / cplx(0.0, m.lambda0);
  }
  return out;
}

OscillatoryProjection project_oscillatory(const acoustic::FieldPair &field,
                                          const std::vector<spectrum::NeumannMode> &modes,
                                          const ModeClassification &classification,
                                          const geometry::QuadratureSet &q)
{
  OscillatoryProjection out;
  const auto n = static_cast<Eigen::Index>(modes.size());
  out.coeff = VectorXc::Zero(n);
  // Same node weights as acoustic::integrate.
  std::vector<Point> x;
  std::vector<double> w;
  for (std::size_t i = 0; i < q.interior.size(); ++i)
  {
    x.push_back(q.interior[i].x);
    w.push_back(q.interior[i].w * q.interior_partition[i]);
  }
  for (const auto &node : q.layer)
  {
    x.push_back(node.x);
    w.push_back(node.w * geometry::cutoff_profile(node.d, q.delta).value);
  }
  std::vector<Vec2c> m(x.size());
  parallel_for(x.size(), [&](std::size_t i) { m[i] = field.jet(x[i]).m; });
  std::vector<cplx> sums(modes.size(), cplx(0.0));
  parallel_for(modes.size(), [&](std::size_t l) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      s += w[i] * modes[l].gradient(x[i]).cast<cplx>().dot(m[i]);
    }
    sums[l] = s;
  });
  std::vector<cplx> c1, c2;
  for (std::size_t l = 0; l < modes.size(); ++l)
  {
    // <m | grad Psi / (i lambda)> = (i / lambda) int m . grad Psi.
    const cplx c = sums[l] * cplx(0.0, 1.0 / modes[l].lambda0);
    const auto k = static_cast<std::size_t>(modes[l].index);
    out.index.push_back(k);
    out.coeff(static_cast<Eigen::Index>(l)) = c;
    if (classification.damped(k))
    {
      out.q1_index.push_back(k);
      c1.push_back(c);
    }
    else
    {
      out.q2_index.push_back(k);
      c2.push_back(c);
    }
  }
  out.q1 = Eigen::Map<VectorXc>(c1.data(), static_cast<Eigen::Index>(c1.size()));
  out.q2 = Eigen::Map<VectorXc>(c2.data(), static_cast<Eigen::Index>(c2.size()));
  return out;
}

}  // namespace acoustic_layer::damping
