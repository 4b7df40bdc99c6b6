// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotor/dipole_operators.hpp"
#include "rotor/rotor_hamiltonian.hpp"

namespace rotorctl {

struct ClassicalSettings {
  double T = 10.0;
  double dt = 1e-3;
  int stride = 100;
  int samples = 20;
  unsigned seed = 1;
  std::array<double, 3> u{0.0, 0.0, 0.0};
  std::array<double, 4> q0{1.0, 0.0, 0.0, 0.0};
  std::array<double, 3> P0{1.0, 0.5, 0.25};
};

struct MoleculeConfig {
  std::string name = "molecule";
  std::string units = "";
  rotor::RotationalConstants constants;
  /// Dipole components along the sorted a, b, c axes.
  std::array<double, 3> dipole{0.0, 0.0, 1.0};
  /// relabel[i] is the input axis that became axis i after sorting.
  std::string relabel = "abc";
  int jmax = 2;
  int mu_points = 11;
  double tol_res = 1e-9;
  double tol_svd = 1e-8;
  ClassicalSettings classical;

  rotor::DipoleMoment dipole_moment(rotor::Convention c = rotor::Convention::oblate) const;
  std::vector<double> mu_grid() const;
  nlohmann::json echo() const;
};

/// Reads a JSON config; throws rotor::DomainError on malformed input.
MoleculeConfig load_config(const std::string& path);

/// Parses a JSON object; constants are sorted into A >= B >= C and the dipole is permuted to match.
MoleculeConfig parse_config(const nlohmann::json& j);

}  // namespace rotorctl
