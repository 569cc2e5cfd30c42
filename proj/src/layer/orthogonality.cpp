// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/layer.hpp"

namespace acoustic_layer::layer
{

namespace
{

std::vector<std::vector<std::size_t>> cluster(const Eigen::VectorXd &values, double tol)
{
  std::vector<std::vector<std::size_t>> groups;
  double scale = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i)
  {
    scale = std::max(scale, std::abs(values(i)));
  }
  for (Eigen::Index i = 0; i < values.size(); ++i)
  {
    bool placed = false;
    for (auto &g : groups)
    {
      if (std::abs(values(i) - values(static_cast<Eigen::Index>(g.front()))) <= tol * std::max(scale, 1e-300))
      {
        g.push_back(static_cast<std::size_t>(i));
        placed = true;
        break;
      }
    }
    if (!placed)
    {
      groups.push_back({static_cast<std::size_t>(i)});
    }
  }
  return groups;
}

}  // namespace

Q1Result q1_diagonalize(const std::vector<spectrum::NeumannMode> &group, double degeneracy_tol)
{
  Q1Result r;
  const auto n = static_cast<Eigen::Index>(group.size());
  r.q1.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index j = 0; j < n; ++j)
    {
      r.q1(i, j) = spectrum::boundary_gradient_integral(group[static_cast<std::size_t>(i)],
                                                        group[static_cast<std::size_t>(j)]);
    }
  }
  const double scale = std::max(r.q1.cwiseAbs().maxCoeff(), 1e-300);
  r.symmetry_defect = n > 0 ? (r.q1 - r.q1.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
  if (r.symmetry_defect > 1e-8)
  {
    throw QuadratureError("assembled Q1 is not symmetric (defect " + std::to_string(r.symmetry_defect) + ")");
  }
  const Eigen::MatrixXd sym = 0.5 * (r.q1 + r.q1.transpose());
  double offdiag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index j = 0; j < n; ++j)
    {
      if (i != j)
      {
        offdiag = std::max(offdiag, std::abs(sym(i, j)));
      }
    }
  }
  if (n <= 1 || offdiag <= 1e-10 * scale)
  {
    r.rotation = Eigen::MatrixXd::Identity(n, n);
    r.eigenvalues = sym.diagonal();
    r.modes = group;
  }
  else
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    r.rotation = es.eigenvectors();
    r.eigenvalues = es.eigenvalues();
    std::vector<const spectrum::NeumannMode *> ptrs;
    for (const auto &m : group)
    {
      ptrs.push_back(&m);
    }
    for (Eigen::Index j = 0; j < n; ++j)
    {
      auto m = spectrum::combine(ptrs, r.rotation.col(j));
      m.index = group[static_cast<std::size_t>(j)].index;
      m.lambda0 = group[static_cast<std::size_t>(j)].lambda0;
      r.modes.push_back(std::move(m));
    }
  }
  r.h1_groups = cluster(r.eigenvalues, degeneracy_tol);
  return r;
}

}  // namespace acoustic_layer::layer
