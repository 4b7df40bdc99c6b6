// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotor/basis.hpp"

namespace rotor {

enum class TopKind { oblate, prolate };

const char* to_string(TopKind kind);

/// Rotational constants, A >= B >= C > 0.
struct RotationalConstants {
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;
};

/// Throws DomainError unless A >= B >= C > 0 and the top is not spherical.
void validate(const RotationalConstants& rc);
bool is_oblate(const RotationalConstants& rc);
bool is_prolate(const RotationalConstants& rc);
bool is_asymmetric(const RotationalConstants& rc);

struct AsymmetryParams {
  double mu_o = 0.0;
  double mu_p = 0.0;
};

AsymmetryParams asymmetry_params(const RotationalConstants& rc);

/// Two eigenvalues closer than 1e-9 * max(1, |E|) are treated as degenerate.
inline constexpr double kDegeneracyTol = 1e-9;
bool degenerate(double e1, double e2);

double symmetric_top_energy(int j, int k, double A_sym, double C_sym, TopKind kind);

/// Matrix of (P_x^2 - P_y^2) on level j in the D basis, rows/cols k = -j..j.
Eigen::MatrixXd ladder_xy(int j);

/// Asymmetry perturbation V = scale * (P_x^2 - P_y^2).
struct PerturbationOperator {
  TopKind kind = TopKind::oblate;
  double scale = 0.0;
  /// Real symmetric matrix on level j in the Wang basis, for any fixed m.
  Eigen::MatrixXd matrix(int j) const;
};

PerturbationOperator perturbation_operator(const RotationalConstants& rc, TopKind kind);

/// One-parameter family H(mu) = H_sym + mu * V joining a symmetric top (mu = 0) to rc.
struct AsymmetryPath {
  TopKind kind = TopKind::oblate;
  double A_sym = 1.0;
  double C_sym = 1.0;
  double scale = 0.0;
  double mu_endpoint = 0.0;

  RotationalConstants constants_at(double mu) const;
  /// Wang-basis Hamiltonian on level j, any fixed m.
  Eigen::MatrixXd hamiltonian(int j, double mu) const;
};

AsymmetryPath asymmetry_path(const RotationalConstants& rc, TopKind kind);

/// Real symmetric Wang-basis matrix of H on level j (m-independent).
Eigen::MatrixXd build_hamiltonian_block(int j, const RotationalConstants& rc, TopKind kind);

/// Eigen-decomposition of one level.
///
/// Columns of `vectors` hold Wang coefficients (rows in wang_labels order) and are sorted by
/// ascending energy, tau = -j..j. `labels[i]` is the (k, p) limit of column i at mu -> 0.
struct SpectrumBlock {
  int j = 0;
  TopKind kind = TopKind::oblate;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  std::vector<WangLabel> labels;

  /// Coefficients in the D basis, rows k = -j..j.
  Eigen::MatrixXd wigner_vectors() const;
  /// Energy of the branch labelled (k, p).
  double energy(int k, int p) const;
};

SpectrumBlock diagonalize_block(int j, const RotationalConstants& rc, TopKind kind);
SpectrumBlock diagonalize_block(int j, const AsymmetryPath& path, double mu);

struct BranchSet {
  int j = 0;
  std::vector<double> mu;
  std::vector<WangLabel> labels;
  /// energies(b, i): branch b at mu[i].
  Eigen::MatrixXd energies;
  /// vectors[b][i]: Wang coefficients of branch b at mu[i].
  std::vector<std::vector<Eigen::VectorXd>> vectors;
  std::vector<std::string> warnings;
};

/// Overlap continuation of eigen-branches from mu = 0 across a sorted grid in [-1, 0].
BranchSet track_branches(int j, const RotationalConstants& endpoint, TopKind kind,
                         const std::vector<double>& mu_grid);

}  // namespace rotor
