// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/cuthill_mckee_ordering.hpp>
#include <Eigen/SparseLU>
#include <lapacke.h>

#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/spectrum.hpp"

namespace acoustic_layer::spectrum
{

std::shared_ptr<FemData> assemble_p1(const geometry::Domain &domain)
{
  const geometry::Mesh *mesh = domain.mesh();
  if (!mesh)
  {
    throw CapabilityError("finite elements need a mesh domain");
  }
  auto fem = std::make_shared<FemData>(FemData{domain, {}, {}, {}, {}, {}, {}});
  const int n = static_cast<int>(mesh->nodes.size());
  std::vector<Eigen::Triplet<double>> kt, mt;
  fem->node_triangles.assign(static_cast<std::size_t>(n), {});
  for (std::size_t t = 0; t < mesh->triangles.size(); ++t)
  {
    const auto &tri = mesh->triangles[t];
    const Point &a = mesh->nodes[tri[0]], &b = mesh->nodes[tri[1]], &c = mesh->nodes[tri[2]];
    const double signed2 = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    const double area = 0.5 * std::abs(signed2);
    std::array<Vec2, 3> grads;
    const std::array<Point, 3> p = {a, b, c};
    for (int i = 0; i < 3; ++i)
    {
      const Point &pj = p[(i + 1) % 3], &pk = p[(i + 2) % 3];
      grads[i] = Vec2(-(pk.y() - pj.y()), pk.x() - pj.x()) / signed2;
    }
    for (int i = 0; i < 3; ++i)
    {
      fem->node_triangles[tri[i]].push_back(static_cast<int>(t));
      for (int j = 0; j < 3; ++j)
      {
        kt.emplace_back(tri[i], tri[j], area * grads[i].dot(grads[j]));
        mt.emplace_back(tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0));
      }
    }
    fem->basis_gradients.push_back(grads);
    fem->areas.push_back(area);
  }
  fem->stiffness.resize(n, n);
  fem->mass.resize(n, n);
  fem->stiffness.setFromTriplets(kt.begin(), kt.end());
  fem->mass.setFromTriplets(mt.begin(), mt.end());
  fem->boundary_nodes = domain.mesh_boundary_nodes();
  return fem;
}

namespace
{

// Reverse Cuthill-McKee ordering of the matrix graph: order[new] = old.
std::vector<int> rcm_order(const Eigen::SparseMatrix<double> &a)
{
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                      boost::property<boost::vertex_color_t, boost::default_color_type,
                                                      boost::property<boost::vertex_degree_t, int>>>;
  using Vertex = boost::graph_traits<Graph>::vertex_descriptor;
  const int n = static_cast<int>(a.rows());
  Graph g(static_cast<std::size_t>(n));
  for (int k = 0; k < a.outerSize(); ++k)
  {
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
    {
      if (it.row() < it.col())
      {
        boost::add_edge(static_cast<Vertex>(it.row()), static_cast<Vertex>(it.col()), g);
      }
    }
  }
  std::vector<Vertex> inv(static_cast<std::size_t>(n));
  boost::cuthill_mckee_ordering(g, inv.rbegin(), boost::get(boost::vertex_color, g), boost::make_degree_map(g));
  return std::vector<int>(inv.begin(), inv.end());
}

// Upper band storage (LAPACK 'U') of the permuted matrix.
std::vector<double> band_upper(const Eigen::SparseMatrix<double> &a, const std::vector<int> &pos, int kd)
{
  const int n = static_cast<int>(a.rows());
  std::vector<double> ab(static_cast<std::size_t>((kd + 1) * n), 0.0);
  for (int k = 0; k < a.outerSize(); ++k)
  {
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
    {
      const int i = pos[it.row()], j = pos[it.col()];
      if (i <= j)
      {
        ab[static_cast<std::size_t>(kd + i - j + j * (kd + 1))] = it.value();
      }
    }
  }
  return ab;
}

}  // namespace

std::vector<NeumannMode> solve_fem(const geometry::Domain &domain, std::size_t count, const FemOptions &options)
{
  auto fem = assemble_p1(domain);
  const auto &k = fem->stiffness;
  const auto &m = fem->mass;
  const int n = static_cast<int>(k.rows());
  if (count + 1 > static_cast<std::size_t>(n))
  {
    throw ConfigurationError("requested more FEM modes than degrees of freedom");
  }

  // Eigenvalues from the banded reduction of the RCM-reordered pencil.
  const auto order = rcm_order(k);
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
  {
    pos[order[i]] = i;
  }
  int kd = 0;
  for (int c = 0; c < k.outerSize(); ++c)
  {
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, c); it; ++it)
    {
      kd = std::max(kd, std::abs(pos[it.row()] - pos[it.col()]));
    }
  }
  auto ab = band_upper(k, pos, kd);
  auto bb = band_upper(m, pos, kd);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
  lapack_int found = 0;
  double dummy = 0.0;
  const lapack_int info =
    LAPACKE_dsbgvx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, kd, kd, ab.data(), kd + 1, bb.data(), kd + 1, &dummy, 1,
                   0.0, 0.0, 1, static_cast<lapack_int>(count + 1), 0.0, &found, w.data(), &dummy, 1, ifail.data());
  if (info != 0 || found != static_cast<lapack_int>(count + 1))
  {
    throw NumericalError("banded generalized eigensolver failed (info " + std::to_string(info) + ")");
  }
  std::vector<double> evals(w.begin() + 1, w.begin() + static_cast<long>(count) + 1);

  // Eigenvectors by block inverse iteration at each cluster of eigenvalues.
  Eigen::MatrixXd vecs(n, static_cast<long>(count));
  std::vector<double> ritz(count);
  std::mt19937_64 rng(20260101ULL);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::size_t start = 0;
  while (start < count)
  {
    std::size_t end = start + 1;
    while (end < count && evals[end] - evals[end - 1] <= options.cluster_tol * evals[end - 1])
    {
      ++end;
    }
    const long c = static_cast<long>(end - start);
    // Two guard vectors absorb neighbouring eigenvalues outside the cluster.
    const long b = std::min<long>(c + 2, n - 1);
    const double lam = evals[start];
    const double sigma = lam - 1e-4 * std::max(lam, 1e-300);
    Eigen::SparseMatrix<double> shifted = k - sigma * m;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success)
    {
      throw NumericalError("shifted factorization failed in inverse iteration");
    }
    Eigen::MatrixXd x(n, b);
    for (long j = 0; j < b; ++j)
    {
      for (int i = 0; i < n; ++i)
      {
        x(i, j) = uni(rng);
      }
    }
    for (int it = 0; it < options.inverse_iterations; ++it)
    {
      Eigen::MatrixXd y = lu.solve(m * x);
      // M-orthonormalize the block.
      Eigen::MatrixXd g = y.transpose() * (m * y);
      Eigen::LLT<Eigen::MatrixXd> llt(g);
      x = llt.matrixL().solve(y.transpose()).transpose();
    }
    Eigen::MatrixXd kr = x.transpose() * (k * x), mr = x.transpose() * (m * x);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> small(kr, mr);
    x = x * small.eigenvectors();
    // Keep the Ritz pairs closest to the cluster.
    std::vector<long> pick(static_cast<std::size_t>(b));
    std::iota(pick.begin(), pick.end(), 0L);
    const double centre = 0.5 * (evals[start] + evals[end - 1]);
    std::stable_sort(pick.begin(), pick.end(), [&](long p, long q) {
      return std::abs(small.eigenvalues()(p) - centre) < std::abs(small.eigenvalues()(q) - centre);
    });
    pick.resize(static_cast<std::size_t>(c));
    std::sort(pick.begin(), pick.end());
    for (long j = 0; j < c; ++j)
    {
      vecs.col(static_cast<long>(start) + j) = x.col(pick[static_cast<std::size_t>(j)]);
      ritz[start + static_cast<std::size_t>(j)] = small.eigenvalues()(pick[static_cast<std::size_t>(j)]);
    }
    start = end;
  }

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double total = ones.dot(m * ones);
  std::vector<NeumannMode> modes;
  for (std::size_t i = 0; i < count; ++i)
  {
    Eigen::VectorXd v = vecs.col(static_cast<long>(i));
    v -= (ones.dot(m * v) / total) * ones;
    v /= std::sqrt(v.dot(m * v));
    for (int j = 0; j < n; ++j)
    {
      if (std::abs(v(j)) > 1e-6)
      {
        if (v(j) < 0.0)
        {
          v = -v;
        }
        break;
      }
    }
    NeumannMode mode;
    mode.index = static_cast<int>(i + 1);
    mode.lambda0 = std::sqrt(std::max(ritz[i], 0.0));
    mode.source = ModeSource::fem;
    mode.fem = fem;
    mode.nodal = v;
    mode.set_domain(domain);
    modes.push_back(std::move(mode));
  }
  return modes;
}

}  // namespace acoustic_layer::spectrum
