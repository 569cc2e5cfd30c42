// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

// Brute-force geometric references used only by the tests.

#ifndef ACOUSTIC_LAYER_TESTS_GEOMETRY_ORACLES_HPP
#define ACOUSTIC_LAYER_TESTS_GEOMETRY_ORACLES_HPP

#include <cmath>

#include <Eigen/Dense>

namespace oracles
{

struct Nearest
{
  double d;
  Eigen::Vector2d foot;
  double t;
};

// Nearest point on the ellipse (a cos t, b sin t): dense sampling of t, then
// Newton on the stationarity condition.
inline Nearest ellipse_nearest(double a, double b, const Eigen::Vector2d &x, int samples = 20000)
{
  const double two_pi = 6.283185307179586;
  double best_t = 0.0, best = 1e300;
  for (int i = 0; i < samples; ++i)
  {
    const double t = two_pi * i / samples;
    const double d = std::hypot(x.x() - a * std::cos(t), x.y() - b * std::sin(t));
    if (d < best)
    {
      best = d;
      best_t = t;
    }
  }
  double t = best_t;
  for (int it = 0; it < 30; ++it)
  {
    // g(t) = (p(t) - x) . p'(t)
    const double px = a * std::cos(t), py = b * std::sin(t);
    const double dx = -a * std::sin(t), dy = b * std::cos(t);
    const double ddx = -a * std::cos(t), ddy = -b * std::sin(t);
    const double g = (px - x.x()) * dx + (py - x.y()) * dy;
    const double dg = dx * dx + dy * dy + (px - x.x()) * ddx + (py - x.y()) * ddy;
    t -= g / dg;
  }
  const Eigen::Vector2d foot(a * std::cos(t), b * std::sin(t));
  return {(x - foot).norm(), foot, t};
}

}  // namespace oracles

#endif  // ACOUSTIC_LAYER_TESTS_GEOMETRY_ORACLES_HPP
