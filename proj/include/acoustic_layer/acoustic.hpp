// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_ACOUSTIC_HPP
#define ACOUSTIC_LAYER_ACOUSTIC_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "acoustic_layer/core/chebyshev.hpp"
#include "acoustic_layer/core/types.hpp"
#include "acoustic_layer/geometry.hpp"
#include "acoustic_layer/spectrum.hpp"

namespace acoustic_layer::acoustic
{

// Physical parameters of the viscous wave operator and the slip condition.
struct OperatorConfig
{
  double nu = 1.0;
  double xi = 0.0;
  double gamma = 1.4;
  double chi = 1.0;

  // Throws ConfigurationError naming the first violated invariant.
  void validate() const;
};

// Pointwise data of phi = (Psi, m). grad_m(i, j) = d m_i / d x_j.
// order: 0 = values, 1 = first derivatives, 2 = lap_m and grad_div_m too.
struct FieldJet
{
  cplx psi{};
  Vec2c grad_psi = Vec2c::Zero();
  Vec2c m = Vec2c::Zero();
  Mat2c grad_m = Mat2c::Zero();
  Vec2c lap_m = Vec2c::Zero();
  Vec2c grad_div_m = Vec2c::Zero();
  int order = 2;

  FieldJet &operator+=(const FieldJet &o);
  FieldJet &operator*=(cplx s);
};

class ModeBasis;

// Coefficients of a field over the acoustic modes of a basis.
struct SpectralCoefficients
{
  std::shared_ptr<const ModeBasis> basis;
  VectorXc plus;
  VectorXc minus;
};

// A scalar-vector field pair evaluated pointwise through jets. Fields are
// immutable and cheap to copy; sums and scalings are lazy.
class FieldPair
{
public:
  using Evaluator = std::function<FieldJet(const Point &)>;

  FieldPair() = default;
  FieldPair(std::uint64_t domain_id, int order, Evaluator eval);

  // The identically zero field.
  static FieldPair zero(std::uint64_t domain_id);

  std::uint64_t domain_id() const { return domain_id_; }
  int order() const { return order_; }
  bool is_zero() const { return !eval_; }
  FieldJet jet(const Point &x) const;

  const std::optional<SpectralCoefficients> &spectral() const { return spectral_; }
  FieldPair with_spectral(SpectralCoefficients coeffs) const;

  friend FieldPair operator+(const FieldPair &a, const FieldPair &b);
  friend FieldPair operator-(const FieldPair &a, const FieldPair &b);
  friend FieldPair operator*(cplx s, const FieldPair &a);

private:
  std::uint64_t domain_id_ = 0;
  int order_ = 2;
  Evaluator eval_;
  std::optional<SpectralCoefficients> spectral_;
};

// Sum over the interior rule, split with the layer rule when present.
cplx integrate(const std::function<cplx(const Point &)> &f, const geometry::QuadratureSet &q);
double integrate_real(const std::function<double(const Point &)> &f, const geometry::QuadratureSet &q);

// <a|b> = int (Psi_a conj(Psi_b) + m_a . conj(m_b)) dx.
cplx inner_product(const FieldPair &a, const FieldPair &b, const geometry::QuadratureSet &q);

// L^p norm of |phi| = sqrt(|Psi|^2 + |m|^2); p = infinity gives the max over
// all quadrature nodes.
double lp_norm(const FieldPair &phi, const geometry::QuadratureSet &q, double p);

FieldPair apply_A(const FieldPair &phi);
FieldPair apply_D(const FieldPair &phi, const OperatorConfig &cfg);
FieldPair apply_A_eps(const FieldPair &phi, const OperatorConfig &cfg, double eps);

// Pointwise versions on jets.
FieldJet apply_A(const FieldJet &j);
FieldJet apply_D(const FieldJet &j, const OperatorConfig &cfg);

// phi^{+/-}_{k,0} = (Psi_k, +/- grad Psi_k / (i lambda_k)) / sqrt(2).
struct AcousticMode
{
  spectrum::NeumannMode base;
  int sign = 1;

  double lambda0() const { return base.lambda0; }
  // i lambda^tau_{k,0} = sign * i * lambda_{k,0}.
  cplx i_lambda() const { return cplx(0.0, sign * base.lambda0); }
  FieldPair field() const;
};

AcousticMode make_acoustic_mode(const spectrum::NeumannMode &mode, int sign);

struct PseudoInverseOptions
{
  // true: scale Null(A) components by +1/(i lambda) as written in the
  // pseudo-inverse formula; false: by -1/(i lambda), the exact inverse of
  // (A - i lambda) on Null(A).
  bool literal_kernel_sign = true;
  // Maximum admissible component of the right-hand side in
  // Null(A - i lambda^tau_k).
  double solvability_tol = 1e-6;
  // Relative tolerance deciding lambda_l == lambda_k.
  double degeneracy_tol = 1e-8;
};

// Truncated acoustic basis phi^{+/-}_l for the first K Neumann modes.
class ModeBasis : public std::enable_shared_from_this<ModeBasis>
{
public:
  static std::shared_ptr<ModeBasis> create(std::vector<spectrum::NeumannMode> modes,
                                           geometry::QuadratureSet quadrature);

  std::size_t size() const { return modes_.size(); }
  const std::vector<spectrum::NeumannMode> &modes() const { return modes_; }
  const geometry::QuadratureSet &quadrature() const { return quad_; }
  const AcousticMode &mode(std::size_t l, int sign) const;

  SpectralCoefficients project(const FieldPair &f) const;
  // sum_l c^+_l phi^+_l + c^-_l phi^-_l, carrying its coefficients.
  FieldPair synthesize(const SpectralCoefficients &c) const;
  // f minus its projection onto the acoustic modes.
  FieldPair kernel_part(const FieldPair &f, const SpectralCoefficients &c) const;

  // Inverse of (A - i lambda^tau_k) on Null(A - i lambda^tau_k)^perp.
  FieldPair pseudo_inverse(std::size_t k, int tau, const FieldPair &rhs,
                           const PseudoInverseOptions &options = {}) const;

private:
  ModeBasis() = default;
  std::vector<spectrum::NeumannMode> modes_;
  std::vector<AcousticMode> plus_, minus_;
  geometry::QuadratureSet quad_;
  // Quadrature nodes with partition-weighted weights, and Psi_l with its
  // gradient at each node (rows = modes).
  std::vector<Point> nodes_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd psi_, gx_, gy_;

  struct Samples
  {
    VectorXc psi, mx, my;
  };
  Samples sample(const FieldPair &f) const;
  SpectralCoefficients project(const Samples &s) const;
  double kernel_norm2(const Samples &s, const SpectralCoefficients &c) const;
};

// ---------------------------------------------------------------------------
// Polar potential fields. On the disc and the annulus every field used by
// the expansion has the form phi = (Psi, grad w) with
//   Psi = sum P_c(r) T_c(theta),  w = sum W_c(r) T_c(theta),
// T_c = cos(n theta) or sin(n theta). Radial parts live on a Chebyshev
// grid: [-R, R] with parity (-1)^n for the disc, [R1, R2] for the annulus.

class PolarGrid
{
public:
  PolarGrid(const geometry::Domain &domain, int points);

  const geometry::Domain &domain() const { return domain_; }
  bool disc() const { return disc_; }
  double inner() const { return r0_; }
  double outer() const { return r1_; }
  // Radial unknowns (r > 0 for the disc).
  const Eigen::VectorXd &r() const { return r_; }
  int size() const { return static_cast<int>(r_.size()); }

  // Collocation matrices for the first and second r-derivative of a
  // function of angular order n.
  Eigen::MatrixXd d1(int n) const;
  Eigen::MatrixXd d2(int n) const;
  // Chebyshev coefficients on the full interval from radial unknowns.
  VectorXc coefficients(const VectorXc &values, int n) const;
  // Value and three r-derivatives from coefficients.
  std::array<cplx, 4> evaluate(const VectorXc &coeffs, double r) const;

private:
  geometry::Domain domain_;
  bool disc_ = true;
  double r0_ = 0.0, r1_ = 1.0;
  int full_ = 0;
  std::shared_ptr<chebyshev::Grid> grid_;
  Eigen::VectorXd r_;
  std::vector<int> pos_, neg_;
};

struct PolarChannel
{
  int n = 0;
  int parity = 0;  // 0 = cos, 1 = sin
  VectorXc P;      // Psi radial values on the grid
  VectorXc W;      // potential radial values on the grid
};

class PolarField
{
public:
  PolarField() = default;
  explicit PolarField(std::shared_ptr<const PolarGrid> grid) : grid_(std::move(grid)) {}

  const std::shared_ptr<const PolarGrid> &grid() const { return grid_; }
  std::vector<PolarChannel> &channels() { return channels_; }
  const std::vector<PolarChannel> &channels() const { return channels_; }
  PolarChannel &channel(int n, int parity);
  const PolarChannel *find(int n, int parity) const;

  PolarField &operator+=(const PolarField &o);
  PolarField &operator*=(cplx s);
  friend PolarField operator+(PolarField a, const PolarField &b) { return a += b; }
  friend PolarField operator*(cplx s, PolarField a) { return a *= s; }

  FieldPair to_field() const;

private:
  std::shared_ptr<const PolarGrid> grid_;
  std::vector<PolarChannel> channels_;
};

// Exact channel representation of a closed-form acoustic mode.
PolarField polar_mode(const std::shared_ptr<const PolarGrid> &grid, const AcousticMode &mode);
// D phi = (0, grad((2 nu + xi) Laplacian w)).
PolarField polar_apply_D(const PolarField &phi, const OperatorConfig &cfg);

// Channel projection of boundary samples on circle `component`:
// g(theta) = sum_n (g_cos cos n theta + g_sin sin n theta).
struct BoundaryChannels
{
  std::vector<std::array<cplx, 2>> coeffs;  // index n
};
BoundaryChannels boundary_channels(const geometry::Domain &domain, std::size_t component,
                                   const std::vector<cplx> &samples);

struct InteriorSolution
{
  // i nu_k from the solvability relation.
  cplx i_nu{};
  // Same value from the boundary and interior quadrature formula.
  cplx i_nu_quadrature{};
  PolarField phi_perp;
  // Compatibility residuals for the other group members (index aligned
  // with the group; entry k is zero).
  std::vector<cplx> compat;
  // The component along the other group members is not determined here.
  bool p0_undetermined = false;
};

struct InteriorOptions
{
  double compat_tol = 1e-6;
  // Throw CompatibilityError when a residual exceeds compat_tol.
  bool enforce_compatibility = true;
};

// Solves (A - i lambda^tau_k) phi = i nu phi^tau_k + f, m.n = g on each
// boundary circle, with phi orthogonal to the group. g holds boundary
// samples per component. group holds orthonormal closed-form modes of one
// eigenvalue; k indexes into it.
InteriorSolution solve_interior(const std::vector<spectrum::NeumannMode> &group, std::size_t k, int tau,
                                const PolarField &f, const std::vector<std::vector<cplx>> &g,
                                const InteriorOptions &options = {});

// Relative defect of <div Sigma(u), m> = <u, div Sigma(m)>, after checking
// that both fields satisfy m.n = 0 and
// nu [sigma(v) n]_tau + chi eps^{-1/2} v_tau = 0 at the boundary nodes.
// The vector parts of u and m are used; div Sigma(v) = nu Lap v + (nu + xi)
// grad div v.
double duality_check(const geometry::Domain &domain, const FieldPair &u, const FieldPair &m,
                     const OperatorConfig &cfg, double eps, const geometry::QuadratureSet &q,
                     double bc_tol = 1e-8);

// Tangential disc field h(r^2) (-y, x), h = 1 + b r^2 + c r^4, with b chosen
// so the slip condition with coefficient chi eps^{-1/2} holds on r = R.
FieldPair slip_swirl(const geometry::Domain &disc, double c, const OperatorConfig &cfg, double eps);

}  // namespace acoustic_layer::acoustic

#endif  // ACOUSTIC_LAYER_ACOUSTIC_HPP
