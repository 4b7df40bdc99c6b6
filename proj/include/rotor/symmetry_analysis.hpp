// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "rotor/basis.hpp"
#include "rotor/dipole_operators.hpp"
#include "rotor/rotor_hamiltonian.hpp"

namespace rotor {

/// K: parity of k; G: parity of j+p; L: parity of j+k+p.
enum class Family { K, G, L };
enum class Parity { even, odd };

const char* to_string(Family f);
const char* to_string(Parity p);

struct SubspaceFamily {
  Family family = Family::K;
  Parity parity = Parity::even;
};

enum class DipoleClassKind { axis_a, axis_b, axis_c, generic_in_ab_plane, generic };

const char* to_string(DipoleClassKind k);

struct DipoleClass {
  DipoleClassKind kind = DipoleClassKind::generic;
  std::optional<Family> obstruction;
  /// Absolute threshold below which a component counts as zero.
  double tolerance = 0.0;
};

Parity classify_wang(const WangIndex& w, Family family);

/// Components below rel_tol * |delta| count as zero.
DipoleClass classify_dipole(const DipoleMoment& d, double rel_tol = 1e-12);

struct ParityWitness {
  int l = 0;  // 0 for the rotational Hamiltonian
  WangIndex bra;
  WangIndex ket;
  std::complex<double> value;  // <S_bra, i H_l S_ket>
};

struct InvarianceReport {
  Family family = Family::K;
  int jmax = 0;
  /// Spectral norms of the even-odd block of H_1, H_2, H_3.
  std::array<double, 3> control_norms{};
  double hamiltonian_norm = 0.0;
  ParityWitness witness;
  bool invariant(double tol = 1e-10) const;
  double max_norm() const;
};

/// Cross-parity norms of H and H_l on all Wang levels j <= jmax.
InvarianceReport invariance_certificate(const DipoleMoment& d, Family family, int jmax, const RotationalConstants& rc);

/// Wang-basis Hamiltonian on levels 0..jmax, ordered (j, slot, m).
Eigen::MatrixXd wang_hamiltonian(int jmax, const RotationalConstants& rc, TopKind kind);

/// Wang index at a position of the (j, slot, m) ordering.
WangIndex wang_index_at(int position);

/// Odd-parity mass after evolving an even-supported random state with exp(-i t (H + sum u_l H_l)).
double propagator_leakage(const DipoleMoment& d, Family family, int jmax, const RotationalConstants& rc,
                          const std::array<double, 3>& u, double t, unsigned seed);

}  // namespace rotor
