// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CORE_TYPES_HPP
#define ACOUSTIC_LAYER_CORE_TYPES_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace acoustic_layer
{

using cplx = std::complex<double>;
using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;
using Vec2c = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace acoustic_layer

#endif  // ACOUSTIC_LAYER_CORE_TYPES_HPP
