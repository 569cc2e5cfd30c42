// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_DAMPING_HPP
#define ACOUSTIC_LAYER_DAMPING_HPP

#include <limits>
#include <optional>
#include <vector>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/layer.hpp"

namespace acoustic_layer::damping
{

// I: damped modes (Re i lambda_1 < -tol), J: the rest. Sets hold 1-based
// mode indices.
struct ModeClassification
{
  std::vector<std::size_t> I_set;
  std::vector<std::size_t> J_set;
  double tol = 0.0;
  // J members whose boundary gradient integral is not below
  // tol * lambda^2 * |dOmega| (only filled when the length is given).
  std::vector<std::size_t> inconsistent;

  bool damped(std::size_t k) const;
};

ModeClassification classify(const std::vector<layer::DampingRate> &rates, double tol = 1e-8,
                            std::optional<double> boundary_length = {});

enum class ForcingKind
{
  zero,
  step,
  power,
  sampled
};

// Forcing signal c(t) with a declared L^p bound on [0, T].
struct ForcingSpec
{
  ForcingKind kind = ForcingKind::zero;
  cplx amplitude{1.0, 0.0};
  double exponent = 0.0;       // power: amplitude * t^exponent
  std::vector<double> times;   // sampled: strictly increasing, from 0
  std::vector<cplx> values;    // sampled: linear interpolation
  double declared_p = std::numeric_limits<double>::infinity();
  std::optional<double> declared_bound;

  static ForcingSpec zero_forcing() { return {}; }
  static ForcingSpec step(cplx amplitude);
  static ForcingSpec power(cplx amplitude, double exponent);
  static ForcingSpec sampled(std::vector<double> times, std::vector<cplx> values);

  cplx value(double t) const;
  // Discrete L^p norm on [0, T] of the piecewise-linear interpolant on grid.
  double lp_norm(const std::vector<double> &grid, double p) const;
  // Throws ConfigurationError when the forcing is malformed or the declared
  // bound is below the discrete norm on [0, T].
  void validate(double T) const;
};

struct AmplitudeTrajectory
{
  double eps = 0.0;
  cplx i_lambda{};
  cplx b0{};
  ForcingKind forcing = ForcingKind::zero;
  std::vector<double> t;
  std::vector<cplx> b;
  // ||b||_{L^2(0,T)}: exact for the piecewise-constant forcing, and the
  // trapezoid rule on |b|^2 at the samples.
  double l2_norm = 0.0;
  double l2_norm_trapezoid = 0.0;
  // ||b0 exp(conj(i lambda) t / eps)||_{L^2(0,T)} in closed form.
  double initial_part = 0.0;
};

// b' = conj(i lambda) b / eps + c(t), b(0) = b0. The phase is propagated
// exactly; c is taken constant on each step at its midpoint value.
// dt <= 0 selects sqrt(eps) / 20.
AmplitudeTrajectory solve_amplitude(cplx i_lambda_eps2, double eps, cplx b0, const ForcingSpec &forcing,
                                    double T = 1.0, double dt = 0.0);

// i lambda_eps,2 = i lambda_0 + sqrt(eps) i lambda_1 + eps i lambda_2.
cplx truncated_eigenvalue(cplx i_lambda0, cplx i_lambda1, cplx i_lambda2, double eps);

// Least-squares slope of log ||b||_{L^2(0,T)} against log eps.
double decay_fit(const std::vector<double> &eps, const std::vector<AmplitudeTrajectory> &trajectories);

struct HolderCheck
{
  double p = 0.0, r = 0.0;
  // sup_t |int_0^t a(s) exp(mu (t - s) / sqrt(eps)) ds|
  double lhs = 0.0;
  // ||a||_{L^p(0,T)} ||kernel||_{L^r(0,T)}
  double rhs = 0.0;
  // max over t of lhs(t) / rhs(t)
  double ratio = 0.0;
  double kernel_norm = 0.0;
  // rhs scales like eps^kernel_exponent: 1 / (2 r).
  double kernel_exponent = 0.0;
  bool holds = false;
};

// p in [1, infinity]; r is the conjugate exponent.
HolderCheck holder_kernel_check(const ForcingSpec &forcing, double mu, double eps, double p, double T = 1.0);

struct OscillatoryProjection
{
  std::vector<std::size_t> index;  // 1-based mode indices
  VectorXc coeff;                  // <m | grad Psi_k / (i lambda_k)>
  VectorXc q1;                     // coefficients of I members
  VectorXc q2;                     // coefficients of J members
  std::vector<std::size_t> q1_index, q2_index;

  // sum_k coeff_k grad Psi_k / (i lambda_k) at x.
  Vec2c reconstruct(const std::vector<spectrum::NeumannMode> &modes, const Point &x) const;
};

// Projects the vector part of field onto the gradient family.
OscillatoryProjection project_oscillatory(const acoustic::FieldPair &field,
                                          const std::vector<spectrum::NeumannMode> &modes,
                                          const ModeClassification &classification,
                                          const geometry::QuadratureSet &q);

}  // namespace acoustic_layer::damping

#endif  // ACOUSTIC_LAYER_DAMPING_HPP
