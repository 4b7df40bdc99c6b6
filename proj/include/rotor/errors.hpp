// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

/// Invalid quantum numbers, constants or arguments.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Required data missing (spectra, context levels, grid resolution).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Solver failure or non-finite values.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A gap needed by a certificate fails its non-resonance condition.
struct ResonanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rotor
