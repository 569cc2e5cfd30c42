// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/layer.hpp"

namespace acoustic_layer::layer
{

using acoustic::FieldPair;
using acoustic::PolarField;
using acoustic::PolarGrid;

namespace
{

constexpr int kMaxOrder = 2;

struct BoundaryData
{
  std::vector<cplx> a;     // m . t
  std::vector<cplx> a_dd;  // d/dd (m . t) = t^T (grad m) e
};

BoundaryData boundary_data(const FieldPair &f, const geometry::BoundaryComponent &bc)
{
  BoundaryData out{std::vector<cplx>(bc.size()), std::vector<cplx>(bc.size())};
  for (std::size_t i = 0; i < bc.size(); ++i)
  {
    const auto j = f.jet(bc.x[i]);
    const Vec2c t = bc.tangent[i].cast<cplx>();
    const Vec2c e = (-bc.normal[i]).cast<cplx>();
    out.a[i] = t.dot(j.m);
    out.a_dd[i] = t.dot(j.grad_m * e);
  }
  return out;
}

std::vector<cplx> curvature(const geometry::BoundaryComponent &bc)
{
  return std::vector<cplx>(bc.curvature.begin(), bc.curvature.end());
}

std::vector<cplx> curvature_sq(const geometry::BoundaryComponent &bc)
{
  std::vector<cplx> out;
  for (double k : bc.curvature)
  {
    out.emplace_back(k * k);
  }
  return out;
}

struct Pass
{
  LayerExpansion exp;
  std::vector<cplx> compat2;
};

// One construction of orders 0..N for group[member]. p0 holds the
// coefficients of the group modes added to the order-1 interior part.
Pass build_pass(const std::vector<spectrum::NeumannMode> &group, std::size_t member, int tau, int order,
                const OperatorConfig &cfg, const ExpansionOptions &opts, const std::vector<cplx> &p0)
{
  const auto &domain = group[member].domain();
  const auto &comps = domain.boundary();
  const auto grid = std::make_shared<const PolarGrid>(domain, opts.radial_points);
  const auto mode = acoustic::make_acoustic_mode(group[member], tau);
  const cplx c = decay_rate(mode.lambda0(), cfg.nu, tau);
  const double nu = cfg.nu, chi = cfg.chi;

  Pass pass;
  auto &e = pass.exp;
  e.k = static_cast<std::size_t>(group[member].index);
  e.tau = tau;
  e.order = order;
  e.cfg = cfg;
  e.group = group;
  e.member = member;
  e.lambda_coeffs.push_back(mode.i_lambda());

  ExpansionTerm t0;
  t0.order = 0;
  t0.interior = acoustic::polar_mode(grid, mode);
  const auto a0 = tangential_profile0(mode, cfg);
  for (std::size_t comp = 0; comp < comps.size(); ++comp)
  {
    t0.boundary.push_back({a0[comp], LayerProfile(c, comp, comps[comp].length, comps[comp].size())});
    t0.trace.emplace_back(comps[comp].size(), cplx(0.0));
  }
  e.terms.push_back(std::move(t0));
  if (order == 0)
  {
    return pass;
  }

  // Order 1.
  const FieldPair f0 = mode.field();
  std::vector<LayerProfile> b1;
  std::vector<std::vector<cplx>> z1;
  for (std::size_t comp = 0; comp < comps.size(); ++comp)
  {
    b1.push_back(a0[comp].ds(comps[comp]).tail_integral());
    z1.push_back(b1.back().traces());
  }
  acoustic::InteriorOptions io;
  io.compat_tol = opts.compat_tol;
  const auto sol1 = acoustic::solve_interior(group, member, tau, PolarField(grid), z1, io);
  const cplx mu1 = sol1.i_nu;
  e.compat1 = sol1.compat;
  PolarField phi1 = sol1.phi_perp;
  for (std::size_t l = 0; l < p0.size(); ++l)
  {
    if (p0[l] != 0.0)
    {
      phi1 += p0[l] * acoustic::polar_mode(grid, acoustic::make_acoustic_mode(group[l], tau));
    }
  }
  const FieldPair f1 = phi1.to_field();
  ExpansionTerm t1;
  t1.order = 1;
  t1.p0_undetermined = sol1.p0_undetermined;
  for (std::size_t comp = 0; comp < comps.size(); ++comp)
  {
    const auto &bc = comps[comp];
    const auto d0 = boundary_data(f0, bc);
    const auto d1 = boundary_data(f1, bc);
    const auto &A0 = a0[comp].coefficients(0);
    LayerProfile forcing(c, comp, bc.length, bc.size());
    std::vector<cplx> rhs(bc.size());
    for (std::size_t i = 0; i < bc.size(); ++i)
    {
      const double kap = bc.curvature[i];
      forcing.coefficients(0)[i] = (mu1 - nu * kap * c) * A0[i];
      rhs[i] = chi * d1.a[i] - nu * (d0.a_dd[i] + kap * (d0.a[i] + A0[i]));
    }
    t1.boundary.push_back({solve_layer_ode(forcing, rhs, nu, chi), b1[comp]});
  }
  t1.trace = z1;
  t1.interior = phi1;
  e.terms.push_back(std::move(t1));
  e.lambda_coeffs.push_back(mu1);
  if (order == 1)
  {
    return pass;
  }

  // Order 2.
  std::vector<std::vector<cplx>> z2;
  std::vector<LayerProfile> b2;
  for (std::size_t comp = 0; comp < comps.size(); ++comp)
  {
    const auto &bc = comps[comp];
    const auto &l0 = e.terms[0].boundary[comp];
    const auto &l1 = e.terms[1].boundary[comp];
    const auto kap = curvature(bc);
    const LayerProfile integrand =
      l1.a.ds(bc) + l0.a.ds(bc).times_zeta().scaled(kap) - l1.b.scaled(kap);
    b2.push_back(integrand.tail_integral());
    z2.push_back(b2.back().traces());
  }
  const PolarField phi0 = e.terms[0].interior;
  const PolarField f2 = mu1 * phi1 + cplx(-1.0) * acoustic::polar_apply_D(phi0, cfg);
  io.enforce_compatibility = false;
  const auto sol2 = acoustic::solve_interior(group, member, tau, f2, z2, io);
  const cplx mu2 = sol2.i_nu;
  pass.compat2 = sol2.compat;
  const FieldPair f2field = sol2.phi_perp.to_field();
  ExpansionTerm t2;
  t2.order = 2;
  t2.p0_undetermined = sol2.p0_undetermined;
  for (std::size_t comp = 0; comp < comps.size(); ++comp)
  {
    const auto &bc = comps[comp];
    const auto &l0 = e.terms[0].boundary[comp];
    const auto &l1 = e.terms[1].boundary[comp];
    const auto kap = curvature(bc);
    const LayerProfile inner = l1.b.ds(bc) + l1.a.scaled(kap) + l0.a.times_zeta().scaled(curvature_sq(bc));
    const LayerProfile forcing = nu * inner.dzeta() + mu1 * l1.a + mu2 * l0.a;
    const auto d1 = boundary_data(f1, bc);
    const auto d2 = boundary_data(f2field, bc);
    std::vector<cplx> rhs(bc.size());
    for (std::size_t i = 0; i < bc.size(); ++i)
    {
      const double k = bc.curvature[i];
      rhs[i] = chi * d2.a[i] - nu * (d1.a_dd[i] + k * (d1.a[i] + l1.a.trace(i)));
    }
    t2.boundary.push_back({solve_layer_ode(forcing, rhs, nu, chi), b2[comp]});
  }
  t2.trace = z2;
  t2.interior = sol2.phi_perp;
  e.terms.push_back(std::move(t2));
  e.lambda_coeffs.push_back(mu2);
  return pass;
}

}  // namespace

LayerExpansion build_expansion(const std::vector<spectrum::NeumannMode> &modes, std::size_t k, int tau, int order,
                               const OperatorConfig &cfg, const ExpansionOptions &options)
{
  cfg.validate();
  if (order < 0 || order > kMaxOrder)
  {
    throw ConfigurationError("expansion order must be between 0 and " + std::to_string(kMaxOrder));
  }
  if (tau != 1 && tau != -1)
  {
    throw ConfigurationError("mode sign must be +1 or -1");
  }
  auto target = std::find_if(modes.begin(), modes.end(),
                             [k](const auto &m) { return m.index == static_cast<int>(k); });
  if (target == modes.end())
  {
    throw ConfigurationError("mode " + std::to_string(k) + " is not among the computed modes");
  }
  if (!target->smooth())
  {
    throw CapabilityError("the layer expansion needs closed-form modes");
  }
  if (!target->domain().is_polar())
  {
    throw UnsupportedDomainError("the layer expansion supports the disc and the annulus");
  }

  // Eigenvalue group of the target.
  std::vector<spectrum::NeumannMode> group;
  std::size_t member = 0;
  for (const auto &m : modes)
  {
    if (std::abs(m.lambda0 - target->lambda0) <= 1e-8 * target->lambda0)
    {
      if (m.index == target->index)
      {
        member = group.size();
      }
      group.push_back(m);
    }
  }
  const Q1Result q1 = q1_diagonalize(group, options.degeneracy_tol);
  group = q1.modes;

  const std::vector<cplx> none;
  Pass pass = build_pass(group, member, tau, order, cfg, options, none);

  if (order >= 2)
  {
    Lambda2Data l2;
    const std::size_t n = group.size();
    std::vector<DampingRate> rates;
    for (const auto &m : group)
    {
      rates.push_back(damping_rate(m, cfg, tau));
    }
    const cplx mu1k = pass.exp.lambda_coeffs[1];
    l2.a_kl1.assign(n, cplx(0.0));
    l2.q2 = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    l2.i_lambda2.assign(n, cplx(0.0));
    // H1 subgroup of the target.
    std::vector<std::size_t> h1;
    for (const auto &g : q1.h1_groups)
    {
      if (std::find(g.begin(), g.end(), member) != g.end())
      {
        h1 = g;
      }
    }
    bool case2 = false;
    for (std::size_t l = 0; l < n; ++l)
    {
      if (l == member || std::find(h1.begin(), h1.end(), l) != h1.end())
      {
        continue;
      }
      const cplx denom = mu1k - rates[l].i_lambda1_eigen;
      if (std::abs(denom) < 1e-12)
      {
        throw MisclassificationError("lambda_1 values coincide within 1e-12; the pair belongs to Case 3");
      }
      l2.a_kl1[l] = pass.compat2[l] / denom;
      case2 = true;
    }
    if (h1.size() > 1)
    {
      l2.case_id = 3;
      for (std::size_t i : h1)
      {
        const Pass pi = i == member ? pass : build_pass(group, i, tau, order, cfg, options, none);
        for (std::size_t j : h1)
        {
          l2.q2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            i == j ? pi.exp.lambda_coeffs[2] : pi.compat2[j];
        }
      }
      const double scale = std::max(l2.q2.cwiseAbs().maxCoeff(), 1e-300);
      l2.q2_symmetry_defect = (l2.q2 - l2.q2.transpose()).cwiseAbs().maxCoeff() / scale;
      double off = 0.0;
      for (std::size_t i : h1)
      {
        for (std::size_t j : h1)
        {
          if (i != j)
          {
            off = std::max(off, std::abs(l2.q2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
          }
        }
      }
      if (off > 1e-8 * scale)
      {
        // Rotate H1 with the eigenvectors of the real part; they must also
        // diagonalize the imaginary part.
        const auto m = static_cast<Eigen::Index>(h1.size());
        Eigen::MatrixXcd sub(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
        {
          for (Eigen::Index j = 0; j < m; ++j)
          {
            sub(i, j) = l2.q2(static_cast<Eigen::Index>(h1[static_cast<std::size_t>(i)]),
                              static_cast<Eigen::Index>(h1[static_cast<std::size_t>(j)]));
          }
        }
        const Eigen::MatrixXd re = 0.5 * (sub.real() + sub.real().transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re);
        const Eigen::MatrixXd v = es.eigenvectors();
        const Eigen::MatrixXcd rot = v.transpose().cast<cplx>() * sub * v.cast<cplx>();
        double rest = 0.0;
        for (Eigen::Index i = 0; i < m; ++i)
        {
          for (Eigen::Index j = 0; j < m; ++j)
          {
            if (i != j)
            {
              rest = std::max(rest, std::abs(rot(i, j)));
            }
          }
        }
        if (rest > 1e-8 * scale)
        {
          throw NumericalError("Q2 cannot be diagonalized by a real rotation of the H1 subgroup");
        }
        std::vector<const spectrum::NeumannMode *> ptrs;
        for (std::size_t i : h1)
        {
          ptrs.push_back(&group[i]);
        }
        std::vector<spectrum::NeumannMode> rotated = group;
        for (Eigen::Index j = 0; j < m; ++j)
        {
          auto mm = spectrum::combine(ptrs, v.col(j));
          mm.index = group[h1[static_cast<std::size_t>(j)]].index;
          mm.lambda0 = group[h1[static_cast<std::size_t>(j)]].lambda0;
          rotated[h1[static_cast<std::size_t>(j)]] = std::move(mm);
        }
        group = std::move(rotated);
        pass = build_pass(group, member, tau, order, cfg, options, none);
      }
      for (std::size_t i : h1)
      {
        l2.i_lambda2[i] = l2.q2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
      }
    }
    else
    {
      l2.case_id = case2 ? 2 : 1;
    }
    l2.i_lambda2[member] = pass.exp.lambda_coeffs[2];
    if (case2)
    {
      pass = build_pass(group, member, tau, order, cfg, options, l2.a_kl1);
    }
    pass.exp.lambda2 = l2;
  }

  LayerExpansion out = std::move(pass.exp);
  out.q1 = q1;
  out.damping = damping_rate(out.group[out.member], cfg, tau);
  return out;
}

cplx LayerExpansion::i_lambda(double eps) const
{
  cplx sum = 0.0;
  const double se = std::sqrt(eps);
  for (std::size_t i = 0; i < lambda_coeffs.size(); ++i)
  {
    sum += std::pow(se, static_cast<double>(i)) * lambda_coeffs[i];
  }
  return sum;
}

}  // namespace acoustic_layer::layer
