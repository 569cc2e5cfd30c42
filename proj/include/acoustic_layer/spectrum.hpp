// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_SPECTRUM_HPP
#define ACOUSTIC_LAYER_SPECTRUM_HPP

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "acoustic_layer/core/types.hpp"
#include "acoustic_layer/geometry.hpp"

namespace acoustic_layer::spectrum
{

enum class ModeSource
{
  closed_form,
  fem
};

// Value, gradient, Hessian and gradient of the Laplacian of a real scalar.
struct ScalarJet
{
  double v = 0.0;
  Vec2 g = Vec2::Zero();
  Mat2 h = Mat2::Zero();
  Vec2 grad_lap = Vec2::Zero();
};

// One separable closed-form Neumann eigenfunction.
//   disc / annulus: norm * R_n(lambda r) * (cos or sin)(n theta)
//   rectangle:      norm * cos(p pi x / lx) * cos(q pi y / ly)
struct Atom
{
  geometry::DomainKind family = geometry::DomainKind::disc;
  double lambda = 0.0;
  double norm = 1.0;
  int n = 0;       // angular order (polar) or p (rectangle)
  int parity = 0;  // 0 = cos, 1 = sin (polar) ; q (rectangle)
  // Annulus radial part: alpha J_n + beta Y_n.
  double alpha = 1.0, beta = 0.0;
  double lx = 1.0, ly = 1.0;

  // Radial part and its first three r-derivatives (polar families).
  std::array<double, 4> radial(double r) const;
  ScalarJet jet(const Point &x) const;
};

struct FemData;

// Zero-mean, unit-L2 Neumann eigenfunction. Closed-form modes are finite
// combinations of atoms, so rotations inside an eigenspace stay exact; FEM
// modes carry nodal values of a P1 field.
class NeumannMode
{
public:
  int index = 0;
  double lambda0 = 0.0;
  ModeSource source = ModeSource::closed_form;

  std::vector<std::pair<double, Atom>> atoms;
  std::shared_ptr<const FemData> fem;
  Eigen::VectorXd nodal;

  const geometry::Domain &domain() const { return *domain_; }
  void set_domain(const geometry::Domain &domain);

  double value(const Point &x) const;
  Vec2 gradient(const Point &x) const;
  // Second and third derivatives; closed-form modes only.
  ScalarJet jet(const Point &x) const;
  bool smooth() const { return source == ModeSource::closed_form; }

  // Gradient at boundary sample j of component c (exact for closed form,
  // recovered nodal average for FEM).
  Vec2 boundary_gradient(std::size_t component, std::size_t j) const;
  double boundary_value(std::size_t component, std::size_t j) const;

private:
  std::shared_ptr<const geometry::Domain> domain_;
};

// Shared P1 discretization data of an FEM solve.
struct FemData
{
  geometry::Domain domain;
  Eigen::SparseMatrix<double> stiffness;
  Eigen::SparseMatrix<double> mass;
  // Per triangle: gradients of the three barycentric basis functions.
  std::vector<std::array<Vec2, 3>> basis_gradients;
  std::vector<double> areas;
  std::vector<std::vector<int>> node_triangles;
  // Boundary sample (component, j) -> mesh node index.
  std::vector<std::vector<int>> boundary_nodes;
};

struct EigenGroup
{
  double lambda0 = 0.0;
  std::vector<std::size_t> members;
  std::size_t multiplicity() const { return members.size(); }
};

struct FemOptions
{
  // Relative cluster width for block inverse iteration.
  double cluster_tol = 1e-3;
  int inverse_iterations = 6;
};

std::vector<NeumannMode> solve_closed_form(const geometry::Domain &domain, std::size_t count);
std::vector<NeumannMode> solve_fem(const geometry::Domain &domain, std::size_t count,
                                   const FemOptions &options = {});
// Dispatches on the domain kind.
std::vector<NeumannMode> solve(const geometry::Domain &domain, std::size_t count);

// P1 stiffness and consistent mass matrices.
std::shared_ptr<FemData> assemble_p1(const geometry::Domain &domain);

// Greedy clustering by relative gap, then L2 Gram-Schmidt inside each
// group (modes are updated in place).
std::vector<EigenGroup> group_eigenvalues(std::vector<NeumannMode> &modes, double rel_tol);

// Default clustering tolerance: 1e-8 for closed form, 1e-3 for FEM.
double default_cluster_tolerance(const std::vector<NeumannMode> &modes);

// L2 inner product of two modes (mass matrix for FEM, quadrature otherwise).
double l2_inner(const NeumannMode &a, const NeumannMode &b);

// Linear combination sum_i c_i modes[i] as a new mode (same lambda0).
NeumannMode combine(const std::vector<const NeumannMode *> &modes, const Eigen::VectorXd &coeffs);

double boundary_gradient_integral(const NeumannMode &a, const NeumannMode &b);

// Undamped class: self boundary-gradient integral below tol * lambda^2 * |boundary|.
bool is_undamped_class(const NeumannMode &mode, double tol = 1e-8);

}  // namespace acoustic_layer::spectrum

#endif  // ACOUSTIC_LAYER_SPECTRUM_HPP
