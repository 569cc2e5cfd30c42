// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <algorithm>
#include <map>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/errors.hpp"

namespace acoustic_layer::acoustic
{

namespace
{

using ChannelKey = std::pair<int, int>;

// One angular channel of the resonant eigenspace: Psi_p = R_p(r) T_p(theta)
// with unit L2 norm.
struct ResonantChannel
{
  spectrum::Atom atom;
  double coef_scale = 1.0;
};

double angular_norm(int n)
{
  return n == 0 ? 2.0 * kPi : kPi;
}

// Row vector q with q . W = int W(r) f(r) r dr over the radial interval.
class RadialIntegrator
{
public:
  explicit RadialIntegrator(const PolarGrid &grid) : grid_(grid)
  {
    const double a = grid.inner(), b = grid.outer();
    constexpr int kPanels = 4;
    for (int p = 0; p < kPanels; ++p)
    {
      std::vector<double> x, w;
      geometry::gauss_legendre(20, a + (b - a) * p / kPanels, a + (b - a) * (p + 1) / kPanels, x, w);
      r_.insert(r_.end(), x.begin(), x.end());
      w_.insert(w_.end(), w.begin(), w.end());
    }
  }

  const std::vector<double> &nodes() const { return r_; }

  const Eigen::MatrixXd &interpolation(int n) const
  {
    const int key = grid_.disc() ? n % 2 : 0;
    auto it = cache_.find(key);
    if (it != cache_.end())
    {
      return it->second;
    }
    const int m = grid_.size();
    Eigen::MatrixXd e(static_cast<Eigen::Index>(r_.size()), m);
    const double a = grid_.disc() ? -grid_.outer() : grid_.inner();
    for (int i = 0; i < m; ++i)
    {
      VectorXc unit = VectorXc::Zero(m);
      unit(i) = 1.0;
      const VectorXc c = grid_.coefficients(unit, n);
      for (std::size_t g = 0; g < r_.size(); ++g)
      {
        e(static_cast<Eigen::Index>(g), i) = chebyshev::clenshaw(c, a, grid_.outer(), r_[g]).real();
      }
    }
    return cache_.emplace(key, std::move(e)).first->second;
  }

  // f sampled at nodes().
  Eigen::RowVectorXd row(int n, const std::vector<double> &f) const
  {
    Eigen::VectorXd wf(static_cast<Eigen::Index>(r_.size()));
    for (std::size_t g = 0; g < r_.size(); ++g)
    {
      wf(static_cast<Eigen::Index>(g)) = w_[g] * r_[g] * f[g];
    }
    return wf.transpose() * interpolation(n);
  }

private:
  const PolarGrid &grid_;
  std::vector<double> r_, w_;
  mutable std::map<int, Eigen::MatrixXd> cache_;
};

}  // namespace

InteriorSolution solve_interior(const std::vector<spectrum::NeumannMode> &group, std::size_t k, int tau,
                                const PolarField &f, const std::vector<std::vector<cplx>> &g,
                                const InteriorOptions &options)
{
  if (!f.grid())
  {
    throw ConfigurationError("interior forcing needs a polar grid");
  }
  if (k >= group.size())
  {
    throw ConfigurationError("target index outside the eigenvalue group");
  }
  if (tau != 1 && tau != -1)
  {
    throw ConfigurationError("target sign must be +1 or -1");
  }
  const auto grid = f.grid();
  const auto &domain = grid->domain();
  const double lambda0 = group[k].lambda0;
  const double mu = tau * lambda0;
  const cplx imu(0.0, mu);
  const double s2 = std::sqrt(2.0);
  for (const auto &m : group)
  {
    if (!m.smooth())
    {
      throw CapabilityError("the interior solve needs closed-form modes");
    }
    if (m.domain().id() != domain.id())
    {
      throw DomainError("eigenvalue group and forcing belong to different domains");
    }
    if (std::abs(m.lambda0 - lambda0) > 1e-8 * lambda0)
    {
      throw ConfigurationError("eigenvalue group mixes different eigenvalues");
    }
  }
  if (!g.empty() && g.size() != domain.boundary().size())
  {
    throw ConfigurationError("boundary data needs one sample list per boundary component");
  }

  // Resonant channels and the member coefficients alpha(l, p).
  std::vector<ChannelKey> res_keys;
  std::vector<spectrum::Atom> res_atoms;
  for (const auto &m : group)
  {
    for (const auto &[coef, atom] : m.atoms)
    {
      const ChannelKey key{atom.n, atom.parity};
      if (std::find(res_keys.begin(), res_keys.end(), key) == res_keys.end())
      {
        res_keys.push_back(key);
        res_atoms.push_back(atom);
      }
    }
  }
  const std::size_t np = res_keys.size();
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(group.size()),
                                                static_cast<Eigen::Index>(np));
  for (std::size_t l = 0; l < group.size(); ++l)
  {
    for (const auto &[coef, atom] : group[l].atoms)
    {
      const auto p = std::find(res_keys.begin(), res_keys.end(), ChannelKey{atom.n, atom.parity}) - res_keys.begin();
      // Channel modes carry the atom normalization.
      alpha(static_cast<Eigen::Index>(l), p) += coef * atom.norm / res_atoms[static_cast<std::size_t>(p)].norm;
    }
  }

  // Boundary data per component as angular channels. Component 0 is the
  // outer circle, component 1 the inner circle of an annulus.
  std::vector<BoundaryChannels> bch;
  for (std::size_t c = 0; c < g.size(); ++c)
  {
    bch.push_back(boundary_channels(domain, c, g[c]));
  }
  auto g_coef = [&](std::size_t c, int n, int parity) -> cplx {
    if (c >= bch.size() || n >= static_cast<int>(bch[c].coeffs.size()))
    {
      return 0.0;
    }
    return bch[c].coeffs[static_cast<std::size_t>(n)][static_cast<std::size_t>(parity)];
  };
  const std::vector<double> circle_radius =
    grid->disc() ? std::vector<double>{grid->outer()} : std::vector<double>{grid->outer(), grid->inner()};

  // Channel set.
  std::vector<ChannelKey> keys;
  auto add_key = [&keys](ChannelKey key) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
    {
      keys.push_back(key);
    }
  };
  for (const auto &c : f.channels())
  {
    add_key({c.n, c.parity});
  }
  for (const auto &key : res_keys)
  {
    add_key(key);
  }
  double gmax = 0.0;
  for (const auto &b : bch)
  {
    for (const auto &c : b.coeffs)
    {
      gmax = std::max({gmax, std::abs(c[0]), std::abs(c[1])});
    }
  }
  for (const auto &b : bch)
  {
    for (std::size_t n = 0; n < b.coeffs.size(); ++n)
    {
      for (int p = 0; p < 2; ++p)
      {
        if (std::abs(b.coeffs[n][static_cast<std::size_t>(p)]) > 1e-13 * gmax && gmax > 0.0)
        {
          add_key({static_cast<int>(n), p});
        }
      }
    }
  }

  const RadialIntegrator integ(*grid);
  const int m = grid->size();
  const Eigen::ArrayXd r = grid->r().array();

  // Solvability data per resonant channel.
  std::vector<Eigen::RowVectorXd> qrow(np);
  std::vector<VectorXc> rgrid(np);
  VectorXc beta(static_cast<Eigen::Index>(np));
  for (std::size_t p = 0; p < np; ++p)
  {
    const auto &atom = res_atoms[p];
    const int n = atom.n;
    std::vector<double> rg;
    for (double rr : integ.nodes())
    {
      rg.push_back(atom.norm * atom.radial(rr)[0]);
    }
    qrow[p] = angular_norm(n) * integ.row(n, rg);
    rgrid[p].resize(m);
    for (int i = 0; i < m; ++i)
    {
      rgrid[p](i) = atom.norm * atom.radial(r(i))[0];
    }
    cplx gp = 0.0;
    for (std::size_t c = 0; c < circle_radius.size(); ++c)
    {
      const double rc = circle_radius[c];
      gp += g_coef(c, n, atom.parity) * atom.norm * atom.radial(rc)[0] * angular_norm(n) * rc;
    }
    cplx sp = 0.0;
    if (const auto *fc = f.find(n, atom.parity))
    {
      sp = (qrow[p].cast<cplx>() * (fc->P + imu * fc->W))(0);
    }
    beta(static_cast<Eigen::Index>(p)) = gp - sp;
  }

  InteriorSolution sol;
  sol.phi_perp = PolarField(grid);
  sol.p0_undetermined = np > 1;
  const VectorXc member_beta = alpha.cast<cplx>() * beta / s2;
  sol.i_nu = member_beta(static_cast<Eigen::Index>(k));
  sol.compat.assign(group.size(), cplx(0.0));
  for (std::size_t l = 0; l < group.size(); ++l)
  {
    if (l == k)
    {
      continue;
    }
    sol.compat[l] = member_beta(static_cast<Eigen::Index>(l));
    if (options.enforce_compatibility && std::abs(sol.compat[l]) > options.compat_tol)
    {
      throw CompatibilityError("compatibility residual " + std::to_string(std::abs(sol.compat[l])) +
                               " for group member " + std::to_string(l));
    }
  }

  for (const auto &key : keys)
  {
    const auto [n, parity] = key;
    const double nn = n;
    const auto pit = std::find(res_keys.begin(), res_keys.end(), key);
    const bool resonant = pit != res_keys.end();
    const std::size_t p = static_cast<std::size_t>(pit - res_keys.begin());
    const int size = resonant ? m + 1 : m;

    VectorXc fp = VectorXc::Zero(m), fw = VectorXc::Zero(m);
    if (const auto *fc = f.find(n, parity))
    {
      fp = fc->P;
      fw = fc->W;
    }
    const Eigen::MatrixXd d1 = grid->d1(n), d2 = grid->d2(n);
    Eigen::MatrixXd op = d2;
    for (int i = 0; i < m; ++i)
    {
      op.row(i) += d1.row(i) / r(i);
      op(i, i) += mu * mu - nn * nn / (r(i) * r(i));
    }
    MatrixXc a = MatrixXc::Zero(size, size);
    VectorXc rhs = VectorXc::Zero(size);
    a.topLeftCorner(m, m) = op.cast<cplx>();
    rhs.head(m) = fp + imu * fw;
    if (resonant)
    {
      a.block(0, m, m, 1) = -rgrid[p];
    }
    // Outer circle: dw/dn = W'(R).
    a.row(0).setZero();
    a.block(0, 0, 1, m) = d1.row(0).cast<cplx>();
    rhs(0) = g_coef(0, n, parity);
    if (!grid->disc())
    {
      a.row(m - 1).setZero();
      a.block(m - 1, 0, 1, m) = -d1.row(m - 1).cast<cplx>();
      rhs(m - 1) = g_coef(1, n, parity);
    }
    VectorXc fw_tot = fw;
    if (resonant)
    {
      const cplx amp = sol.i_nu * alpha(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(p)) / (imu * s2);
      fw_tot += amp * rgrid[p];
      // <phi, phi_p> = (1/sqrt 2) int (2 i mu w + F_w) Psi_p = 0.
      a.block(m, 0, 1, m) = qrow[p].cast<cplx>();
      rhs(m) = -(qrow[p].cast<cplx>() * fw_tot)(0) / (2.0 * imu);
    }
    const VectorXc x = a.fullPivLu().solve(rhs);
    if (!x.allFinite())
    {
      throw NumericalError("interior channel solve failed");
    }
    auto &out = sol.phi_perp.channel(n, parity);
    out.W = x.head(m);
    out.P = imu * out.W + fw_tot;
  }

  // Same i nu from boundary and interior quadrature.
  cplx gb = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c)
  {
    const auto &bc = domain.boundary()[c];
    for (std::size_t j = 0; j < bc.size(); ++j)
    {
      gb += g[c][j] * group[k].boundary_value(c, j) * bc.weight[j];
    }
  }
  cplx fphi = 0.0;
  if (!f.channels().empty())
  {
    geometry::QuadratureOptions qo;
    qo.panels = 6;
    const auto quad = geometry::build_quadrature(domain, qo);
    fphi = inner_product(f.to_field(), make_acoustic_mode(group[k], tau).field(), quad);
  }
  sol.i_nu_quadrature = gb / s2 - fphi;
  return sol;
}

}  // namespace acoustic_layer::acoustic
