// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CLI_CONFIG_HPP
#define ACOUSTIC_LAYER_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acoustic_layer/acoustic.hpp"
#include "acoustic_layer/geometry.hpp"

namespace acoustic_layer::cli
{

inline constexpr const char *kSoftwareName = "acoustic-layer";
inline constexpr const char *kSoftwareVersion = "0.1.0";

struct DomainSpec
{
  std::string kind = "disc";
  double radius = 1.0;
  double inner = 0.5, outer = 1.0;
  double a = 1.0, b = 0.5;
  double lx = 1.0, ly = 1.0;
  std::optional<double> delta;
  int boundary_samples = 256;
  std::string mesh;  // path, for kind "mesh"
};

struct SimulateSpec
{
  double T = 1.0;
  double dt = 0.0;  // 0: sqrt(eps) / 20
  double b0 = 1.0;
  std::string forcing = "zero";  // zero | step
  double amplitude = 1.0;
  // Every csv_stride-th sample goes to simulate.csv.
  int csv_stride = 50;
};

struct RunConfig
{
  DomainSpec domain;
  acoustic::OperatorConfig op;
  std::size_t modes = 10;
  int order = 1;
  std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> p{1.0, 2.0};
  std::size_t mode_index = 1;
  int sign = 1;
  double classification_tol = 1e-8;
  double degeneracy_tol = 1e-6;
  double compat_tol = 1e-6;
  SimulateSpec simulate;
  std::string output = "out";
  std::uint64_t seed = 7;

  // Throws ConfigurationError naming the first violated invariant.
  void validate() const;
  nlohmann::json to_json() const;
  geometry::Domain make_domain() const;
};

// Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json &j);
RunConfig load_config(const std::string &path);

// Rounds to 12 significant digits; infinities become the string "inf".
nlohmann::json number(double v);
std::string format_number(double v);

}  // namespace acoustic_layer::cli

#endif  // ACOUSTIC_LAYER_CLI_CONFIG_HPP
