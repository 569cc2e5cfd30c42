// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <tuple>

#include "acoustic_layer/core/bessel.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/spectrum.hpp"

namespace acoustic_layer::spectrum
{

namespace
{

constexpr std::size_t kMaxClosedFormCount = 2000;

struct Candidate
{
  double lambda;
  int n, parity, k;
  Atom atom;
};

bool candidate_less(const Candidate &a, const Candidate &b)
{
  if (a.lambda != b.lambda)
  {
    return a.lambda < b.lambda;
  }
  return std::tie(a.n, a.parity, a.k) < std::tie(b.n, b.parity, b.k);
}

// Disc radial frequencies of order n below x_max (in units of lambda * R).
std::vector<double> disc_roots_below(int n, double x_max)
{
  const double start = std::max(1e-3, 0.5 * n);
  if (start >= x_max)
  {
    return {};
  }
  return bessel::find_roots([n](double x) { return bessel::j(n, x).d1; },
                            [n](double x) { return bessel::j(n, x).d2; }, start, x_max, 0.05,
                            kMaxClosedFormCount);
}

std::vector<double> annulus_roots_below(int n, double r1, double r2, double l_max)
{
  auto scale = [=](double l) { return std::max(1e-300, std::abs(bessel::y(n, l * r1).d1)); };
  auto f = [=](double l) {
    return (bessel::j(n, l * r1).d1 * bessel::y(n, l * r2).d1 - bessel::j(n, l * r2).d1 * bessel::y(n, l * r1).d1) /
           scale(l);
  };
  auto df = [=](double l) {
    const auto ja = bessel::j(n, l * r1), jb = bessel::j(n, l * r2), ya = bessel::y(n, l * r1),
               yb = bessel::y(n, l * r2);
    return (r1 * ja.d2 * yb.d1 + r2 * ja.d1 * yb.d2 - r2 * jb.d2 * ya.d1 - r1 * jb.d1 * ya.d2) / scale(l);
  };
  const double step = std::min(0.02, 0.05 * kPi / (r2 - r1));
  return bessel::find_roots(f, df, 1e-3, l_max, step, kMaxClosedFormCount, 1e-10);
}

Atom polar_atom(geometry::DomainKind family, double lambda, int n, int parity, double r1, double r2)
{
  Atom a;
  a.family = family;
  a.lambda = lambda;
  a.n = n;
  a.parity = parity;
  if (family == geometry::DomainKind::annulus)
  {
    double alpha = bessel::y(n, lambda * r1).d1, beta = -bessel::j(n, lambda * r1).d1;
    const double s = std::hypot(alpha, beta);
    alpha /= s;
    beta /= s;
    a.alpha = alpha;
    a.beta = beta;
    a.norm = 1.0;
    if (a.radial(r1)[0] < 0.0)
    {
      a.alpha = -alpha;
      a.beta = -beta;
    }
  }
  // int Z^2 r dr = [r^2/2 (1 - n^2/(lambda r)^2) Z^2] at radii where Z' = 0.
  auto term = [&](double r) {
    const double z = a.radial(r)[0];
    return 0.5 * r * r * (1.0 - static_cast<double>(n) * n / (lambda * lambda * r * r)) * z * z;
  };
  double radial_int = term(r2);
  if (family == geometry::DomainKind::annulus)
  {
    radial_int -= term(r1);
  }
  const double angular = n == 0 ? 2.0 * kPi : kPi;
  a.norm = 1.0 / std::sqrt(radial_int * angular);
  return a;
}

}  // namespace

std::vector<NeumannMode> solve_closed_form(const geometry::Domain &domain, std::size_t count)
{
  using geometry::DomainKind;
  const auto kind = domain.kind();
  if (kind != DomainKind::disc && kind != DomainKind::annulus && kind != DomainKind::rectangle)
  {
    throw UnsupportedDomainError("closed-form spectrum is available for disc, annulus and rectangle only");
  }
  if (count > kMaxClosedFormCount)
  {
    throw ConfigurationError("closed-form mode count exceeds the implemented index range");
  }
  if (count == 0)
  {
    return {};
  }
  const auto &p = domain.parameters();
  // Weyl estimate of the cutoff frequency, grown until enough modes exist.
  double l_max = std::sqrt(4.0 * kPi * (count + 4.0) / domain.area()) + 4.0;
  std::vector<Candidate> cands;
  for (int attempt = 0; attempt < 40; ++attempt, l_max *= 1.4)
  {
    cands.clear();
    if (kind == DomainKind::rectangle)
    {
      const double lx = p[0], ly = p[1];
      const int pmax = static_cast<int>(l_max * lx / kPi) + 1, qmax = static_cast<int>(l_max * ly / kPi) + 1;
      for (int i = 0; i <= pmax; ++i)
      {
        for (int j = 0; j <= qmax; ++j)
        {
          if (i == 0 && j == 0)
          {
            continue;
          }
          const double lam = kPi * std::sqrt(i * i / (lx * lx) + j * j / (ly * ly));
          if (lam > l_max)
          {
            continue;
          }
          Atom a;
          a.family = DomainKind::rectangle;
          a.lambda = lam;
          a.n = i;
          a.parity = j;
          a.lx = lx;
          a.ly = ly;
          a.norm = std::sqrt((i == 0 ? 1.0 : 2.0) / lx) * std::sqrt((j == 0 ? 1.0 : 2.0) / ly);
          // Order ties by the y-frequency so cos(pi x) precedes cos(pi y).
          cands.push_back({lam, j, 0, i, a});
        }
      }
    }
    else
    {
      const double r2 = p.back(), r1 = kind == DomainKind::annulus ? p[0] : 0.0;
      for (int n = 0;; ++n)
      {
        if (n / r2 > l_max)
        {
          break;
        }
        const auto roots = kind == DomainKind::disc ? disc_roots_below(n, l_max * r2)
                                                    : annulus_roots_below(n, r1, r2, l_max);
        for (std::size_t k = 0; k < roots.size(); ++k)
        {
          const double lam = kind == DomainKind::disc ? roots[k] / r2 : roots[k];
          for (int parity = 0; parity < (n == 0 ? 1 : 2); ++parity)
          {
            cands.push_back({lam, n, parity, static_cast<int>(k), polar_atom(kind, lam, n, parity, r1, r2)});
          }
        }
        if (roots.empty() && n > 0)
        {
          break;
        }
      }
    }
    if (cands.size() >= count + 2)
    {
      break;
    }
  }
  if (cands.size() < count)
  {
    throw NumericalError("closed-form enumeration did not produce enough modes");
  }
  std::sort(cands.begin(), cands.end(), candidate_less);
  std::vector<NeumannMode> modes;
  for (std::size_t i = 0; i < count; ++i)
  {
    NeumannMode m;
    m.index = static_cast<int>(i + 1);
    m.lambda0 = cands[i].lambda;
    m.source = ModeSource::closed_form;
    m.atoms = {{1.0, cands[i].atom}};
    m.set_domain(domain);
    modes.push_back(std::move(m));
  }
  return modes;
}

}  // namespace acoustic_layer::spectrum
