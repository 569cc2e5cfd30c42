// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CORE_ERRORS_HPP
#define ACOUSTIC_LAYER_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace acoustic_layer
{

// Base of every library exception. The category string is the machine
// readable prefix used by the CLI ("config_error", "domain_error", ...).
class Error : public std::runtime_error
{
public:
  Error(std::string category, const std::string &message)
    : std::runtime_error(message), category_(std::move(category))
  {
  }
  const std::string &category() const { return category_; }

private:
  std::string category_;
};

#define ACOUSTIC_LAYER_ERROR(Name, tag)                                  \
  class Name : public Error                                              \
  {                                                                      \
  public:                                                                \
    explicit Name(const std::string &message) : Error(tag, message) {}   \
  }

ACOUSTIC_LAYER_ERROR(ConfigurationError, "config_error");
ACOUSTIC_LAYER_ERROR(DomainError, "domain_error");
ACOUSTIC_LAYER_ERROR(UnsupportedDomainError, "unsupported_domain");
ACOUSTIC_LAYER_ERROR(CapabilityError, "capability_error");
ACOUSTIC_LAYER_ERROR(MeshError, "mesh_error");
ACOUSTIC_LAYER_ERROR(SolvabilityError, "solvability_error");
ACOUSTIC_LAYER_ERROR(CompatibilityError, "compatibility_error");
ACOUSTIC_LAYER_ERROR(PreconditionError, "precondition_error");
ACOUSTIC_LAYER_ERROR(StabilityError, "stability_error");
ACOUSTIC_LAYER_ERROR(QuadratureError, "quadrature_error");
ACOUSTIC_LAYER_ERROR(MisclassificationError, "misclassification_error");
ACOUSTIC_LAYER_ERROR(NumericalError, "numerical_error");

#undef ACOUSTIC_LAYER_ERROR

// Raised when a boundary projection is not unique. Both candidate feet are
// kept so callers can report them.
class AmbiguityError : public Error
{
public:
  AmbiguityError(const std::string &message, Eigen::Vector2d first, Eigen::Vector2d second)
    : Error("ambiguity_error", message), first_(first), second_(second)
  {
  }
  const Eigen::Vector2d &first() const { return first_; }
  const Eigen::Vector2d &second() const { return second_; }

private:
  Eigen::Vector2d first_, second_;
};

}  // namespace acoustic_layer

#endif  // ACOUSTIC_LAYER_CORE_ERRORS_HPP
