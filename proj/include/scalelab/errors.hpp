// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace scalelab {

/// Base class for all scalelab errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Density parameters violate their constraints (weights, exponents, ...).
class InvalidDensityError : public Error {
public:
  using Error::Error;
};

/// Scaling with lambda <= 0 requested.
class InvalidScalingError : public Error {
public:
  using Error::Error;
};

/// A quadrature node produced a non-finite integrand value.
class QuadratureError : public Error {
public:
  using Error::Error;
};

/// Evaluation at a singular point (Coulomb origin, coincident pair).
class SingularPointError : public Error {
public:
  using Error::Error;
};

/// Requested evaluation path does not apply to this density.
class UnsupportedPathError : public Error {
public:
  using Error::Error;
};

/// Bump perturbation drove the density negative.
class PerturbationError : public Error {
public:
  using Error::Error;
};

/// Degenerate or otherwise unusable regression input.
class FitError : public Error {
public:
  using Error::Error;
};

/// A sample point violates a check precondition (n <= 0, zero ratio, ...).
class SampleError : public Error {
public:
  using Error::Error;
};

/// Invalid run configuration (unknown names, empty lists, bad files).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// I/O failure; message carries the offending path.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace scalelab
