// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rotor/basis.hpp"
#include "rotor/rotor_hamiltonian.hpp"

namespace rotor {

/// Axis convention: oblate puts c on index 3, prolate puts a on index 3.
enum class Convention { oblate, prolate };

const char* to_string(Convention c);
inline TopKind kind_of(Convention c) { return c == Convention::oblate ? TopKind::oblate : TopKind::prolate; }

/// Electric dipole in the principal-axis frame.
struct DipoleMoment {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Convention convention = Convention::oblate;

  /// (delta_1, delta_2, delta_3): (b, a, c) for oblate, (b, c, a) for prolate.
  Eigen::Vector3d indexed() const;
  /// Components along the body x, y, z axes of the Euler rotation: (delta_2, delta_1, delta_3).
  Eigen::Vector3d body() const;
  double norm() const;
};

enum class Representation { wigner, wang, eigen };

const char* to_string(Representation r);

// Stark coefficients.
double coef_c(int j, int k, int m);
double coef_d(int j, int k, int m);
double coef_h(int j, int k, int m);
double coef_q(int j, int k, int m);
double coef_a(int j, int k, int m);
double coef_b(int j, int k, int m);
/// f_{j,k,s m} for s = +1 / -1.
double coef_f(int j, int k, int s, int m);
double coef_g(int j, int k, int m);

/// <D_bra, i H_l D_ket>, inner product linear in the first argument.
std::complex<double> wigner_element(int l, const WignerIndex& bra, const WignerIndex& ket, const DipoleMoment& d);

/// Real basis change from D functions of level l to the given representation, ordered (slot, m).
Eigen::MatrixXd level_basis(int l, Representation rep, const SpectrumBlock* spectrum = nullptr);

/// Hermitian matrix (H_l)_{ab} = <phi_b, H_l phi_a> on levels lo..hi, ordered (level, slot, m).
///
/// `spectra` must hold one block per level in lo..hi when rep is eigen.
Eigen::MatrixXcd level_operator(int l, int lo, int hi, const DipoleMoment& d, Representation rep,
                                const std::vector<SpectrumBlock>& spectra = {});

/// H_1, H_2, H_3 restricted to levels j and j+1.
struct ControlOperatorBlock {
  int j = 0;
  Representation representation = Representation::wigner;
  std::array<Eigen::MatrixXcd, 3> matrices;
};

ControlOperatorBlock build_control_blocks(int j, const DipoleMoment& d, Representation rep,
                                          const std::vector<SpectrumBlock>& spectra = {});

/// Wang-basis element <S_bra, i H_l S_ket>, assembled from wigner_element.
std::complex<double> wang_element(int l, const WangIndex& bra, const WangIndex& ket, const DipoleMoment& d);

}  // namespace rotor
