// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_LAYER_HPP
#define ACOUSTIC_LAYER_LAYER_HPP

#include <memory>
#include <optional>
#include <vector>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/core/jet.hpp"
#include "acoustic_layer/geometry.hpp"
#include "acoustic_layer/spectrum.hpp"

namespace acoustic_layer::layer
{

using acoustic::OperatorConfig;

// Decay rate c with c^2 = i lambda^tau / nu and Re c > 0:
// c = (1 + i) / 2 * sqrt(2 lambda / nu) for tau = +1, its conjugate for -1.
cplx decay_rate(double lambda0, double nu, int tau = 1);

// Boundary-layer profile on one boundary component,
//   f(s, zeta) = sum_j q_j(s) zeta^j exp(-c zeta),
// with q_j sampled on the boundary grid of the component.
class LayerProfile
{
public:
  LayerProfile() = default;
  LayerProfile(cplx c, std::size_t component, double period, std::size_t nodes, int degree = 0);

  cplx decay() const { return c_; }
  std::size_t component() const { return component_; }
  double period() const { return period_; }
  std::size_t nodes() const { return nodes_; }
  int degree() const { return static_cast<int>(q_.size()) - 1; }

  std::vector<cplx> &coefficients(int j);
  const std::vector<cplx> &coefficients(int j) const { return q_.at(static_cast<std::size_t>(j)); }

  // d^order/dzeta^order of the profile at boundary sample i.
  cplx value(std::size_t i, double zeta, int order = 0) const;
  cplx trace(std::size_t i) const { return value(i, 0.0); }
  std::vector<cplx> traces() const;
  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }

  // Tangential derivative of every coefficient.
  LayerProfile ds(const geometry::BoundaryComponent &chart) const;
  LayerProfile dzeta() const;
  LayerProfile times_zeta() const;
  // F(zeta) = int_zeta^infinity f(t) dt.
  LayerProfile tail_integral() const;
  // Per-node multiplication.
  LayerProfile scaled(const std::vector<cplx> &factor) const;

  LayerProfile &operator+=(const LayerProfile &o);
  LayerProfile &operator*=(cplx s);
  friend LayerProfile operator+(LayerProfile a, const LayerProfile &b) { return a += b; }
  friend LayerProfile operator-(LayerProfile a, const LayerProfile &b)
  {
    LayerProfile nb = b;
    nb *= -1.0;
    return a += nb;
  }
  friend LayerProfile operator*(cplx s, LayerProfile a) { return a *= s; }

private:
  void grow(int degree);

  cplx c_{1.0, 0.0};
  std::size_t component_ = 0;
  double period_ = 1.0;
  std::size_t nodes_ = 0;
  std::vector<std::vector<cplx>> q_;
};

// Solves nu f'' - nu c^2 f = forcing with (nu d/dzeta - chi) f(0) = bc and
// f decaying: polynomial particular part with q(0) = 0 plus H exp(-c zeta).
LayerProfile solve_layer_ode(const LayerProfile &forcing, const std::vector<cplx> &bc, double nu, double chi);

// Tangential (m.t) and normal (m.e, e = -n) layer profiles of one order on
// every boundary component.
struct ComponentLayer
{
  LayerProfile a;
  LayerProfile b;
};

// Order-0 tangential profile on each component:
//   a0 = -chi / (chi + nu c) (m_int . t)|_{dOmega} exp(-c zeta).
std::vector<LayerProfile> tangential_profile0(const acoustic::AcousticMode &mode, const OperatorConfig &cfg);

// Order-1 normal profile b1 = int_zeta^infinity d_s a0 and its trace
// Z1 = b1(0) on each component.
struct NormalFlux
{
  std::vector<LayerProfile> profile;
  std::vector<std::vector<cplx>> trace;
};
NormalFlux normal_flux1(const acoustic::AcousticMode &mode, const OperatorConfig &cfg);

// Lambda_+ = -(a^2 + 2a + i a^2) / (2 (a^2 + 2a + 2)) sqrt(nu / lambda^3),
// a = chi sqrt(2 / (nu lambda)); Lambda_- is its conjugate.
cplx damping_factor(double nu, double lambda0, double chi, int sign = 1);

struct DampingRate
{
  std::size_t k = 0;  // 1-based mode index
  int sign = 1;
  double lambda0 = 0.0;
  double a = 0.0;
  cplx Lambda{};
  double boundary_integral = 0.0;
  // Lambda * boundary_integral.
  cplx i_lambda1{};
  // int_{dOmega} Z1 Psi dsigma by boundary quadrature.
  cplx i_lambda1_quadrature{};
  // First-order eigenvalue correction of the expansion; carries the
  // 1/sqrt(2) of the mode normalization: Lambda * boundary_integral / sqrt(2).
  cplx i_lambda1_eigen{};
  double relative_gap() const;
};

// Throws NumericalError when the two routes differ by more than check_tol
// relative (skipped when check_tol <= 0).
DampingRate damping_rate(const spectrum::NeumannMode &mode, const OperatorConfig &cfg, int sign = 1,
                         double check_tol = 1e-6);

struct Q1Result
{
  std::vector<spectrum::NeumannMode> modes;
  Eigen::MatrixXd q1;        // assembled before rotation
  Eigen::MatrixXd rotation;  // columns: new modes in the old basis
  Eigen::VectorXd eigenvalues;
  // Subgroups with coinciding L1 eigenvalues (indices into modes).
  std::vector<std::vector<std::size_t>> h1_groups;
  double symmetry_defect = 0.0;
};

// Diagonalizes Q1[k,l] = int grad Psi_k . grad Psi_l dsigma on a group.
// Already diagonal matrices keep the identity rotation.
Q1Result q1_diagonalize(const std::vector<spectrum::NeumannMode> &group, double degeneracy_tol = 1e-6);

// ---------------------------------------------------------------------------
// Expansion

struct ExpansionOptions
{
  // Chebyshev degree of the polar interior solves.
  int radial_points = 41;
  // Relative tolerance deciding lambda_{k,1} coincidence.
  double degeneracy_tol = 1e-6;
  double compat_tol = 1e-6;
};

struct ExpansionTerm
{
  int order = 0;
  acoustic::PolarField interior;
  std::vector<ComponentLayer> boundary;
  // Normal trace m_int . n imposed on the interior part.
  std::vector<std::vector<cplx>> trace;
  bool p0_undetermined = false;
};

struct Lambda2Data
{
  std::vector<cplx> i_lambda2;  // per group member
  // Case 2 coefficients a_{kl,1} (row k).
  std::vector<cplx> a_kl1;
  Eigen::MatrixXcd q2;
  double q2_symmetry_defect = 0.0;
  int case_id = 1;
};

class LayerExpansion
{
public:
  std::size_t k = 0;  // 1-based index of the target mode
  int tau = 1;
  int order = 0;
  OperatorConfig cfg;
  std::vector<cplx> lambda_coeffs;  // i lambda_{k,i}
  std::vector<ExpansionTerm> terms;
  std::vector<spectrum::NeumannMode> group;  // rotated group
  std::size_t member = 0;                    // position of the target in group
  DampingRate damping;
  Q1Result q1;
  std::optional<Lambda2Data> lambda2;
  std::vector<cplx> compat1;

  const geometry::Domain &domain() const { return group.at(member).domain(); }
  const spectrum::NeumannMode &mode() const { return group.at(member); }
  cplx i_lambda(double eps) const;
  // phi_{k,eps,N}; interior only when with_layer is false.
  acoustic::FieldPair field(double eps, bool with_layer = true) const;
  // Layer part sum_i sqrt(eps)^i chi(d) phi^b_i alone.
  acoustic::FieldPair layer_field(double eps) const;
};

// Builds the expansion of mode k (1-based, within modes) up to order N.
// modes must be closed-form modes of a disc or annulus.
LayerExpansion build_expansion(const std::vector<spectrum::NeumannMode> &modes, std::size_t k, int tau, int order,
                               const OperatorConfig &cfg, const ExpansionOptions &options = {});

// ||A_eps phi - i lambda_eps phi||_{L^p} with the layer-graded quadrature.
struct ResidualValue
{
  double eps = 0.0;
  double p = 2.0;
  double residual = 0.0;
  double diff = 0.0;  // ||phi_{k,eps,N} - phi_{k,0}||_{L^p}
};
std::vector<ResidualValue> residual_sweep(const LayerExpansion &expansion, const std::vector<double> &eps,
                                          const std::vector<double> &p,
                                          const geometry::QuadratureOptions &quad = {});
double residual(const LayerExpansion &expansion, double eps, double p, const geometry::QuadratureOptions &quad = {});

// Least-squares slope of log y against log x. Needs two or more points.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace acoustic_layer::layer

#endif  // ACOUSTIC_LAYER_LAYER_HPP
