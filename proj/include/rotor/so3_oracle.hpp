// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rotor/basis.hpp"
#include "rotor/dipole_operators.hpp"

namespace rotor {

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// R = R_z(alpha) R_y(beta) R_z(gamma).
Eigen::Matrix3d rotation_matrix(const EulerAngles& e);

/// Little-d function; d^1_{0,0}(beta) = cos(beta).
double wigner_d_little(int j, int k, int m, double beta);

/// Normalization making D^j_{k,m} unit-norm under (1/8) d alpha d gamma sin(beta) d beta.
double wigner_D_norm(int j);

/// Normalized D^j_{k,m} = N_j e^{i(k gamma + m alpha)} d^j_{k,m}(beta).
std::complex<double> wigner_D(const WignerIndex& w, const EulerAngles& e);

/// H_l(R) = -<R delta_body, e_l>.
double stark_multiplier(int l, const EulerAngles& e, const DipoleMoment& d);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Product rule: trapezoid in alpha and gamma, Gauss-Legendre in cos(beta).
struct QuadratureGrid {
  int n_alpha = 0;
  int n_beta = 0;
  int n_gamma = 0;
  std::vector<EulerAngles> nodes;
  std::vector<double> weights;

  /// Largest level whose matrix elements the grid integrates exactly.
  int max_level() const;
  double total_mass() const;
};

QuadratureGrid make_grid(int n_alpha, int n_beta, int n_gamma);
/// Orders 4 jmax + 4 in alpha and gamma, 2 jmax + 4 in beta.
QuadratureGrid make_grid(int jmax);

/// Quadrature value of <D_bra, H_l D_ket> (linear in the first argument).
std::complex<double> oracle_element(int l, const WignerIndex& bra, const WignerIndex& ket, const DipoleMoment& d,
                                    const QuadratureGrid& grid);

/// Cached D values on a grid for every index with j <= jmax.
class OracleTable {
 public:
  OracleTable(int jmax, QuadratureGrid grid);

  int jmax() const { return jmax_; }
  const QuadratureGrid& grid() const { return grid_; }
  /// Row of index (j, k, m) in level-major (j, k, m) order.
  static int row(const WignerIndex& w);

  /// Gram matrix of all normalized D functions.
  Eigen::MatrixXcd gram() const;
  /// M(a, b) = <D_a, H_l D_b> for all indices with j <= jmax.
  Eigen::MatrixXcd element_matrix(int l, const DipoleMoment& d) const;

 private:
  int jmax_;
  QuadratureGrid grid_;
  Eigen::MatrixXcd values_;  // node x index
};

}  // namespace rotor
