// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotor/dipole_operators.hpp"
#include "rotor/rotor_hamiltonian.hpp"
#include "rotor/symmetry_analysis.hpp"

namespace rotor {

/// Default resonance tolerance, relative to max(1, largest |eigenvalue|).
inline constexpr double kResonanceTol = 1e-9;

/// Gap between a level-`lower_level` eigenvalue and a level-`upper_level` eigenvalue.
struct NamedGap {
  char family = 'l';  // 'l' lambda, 'r' rho, 'e' eta, 's' sigma
  int k = 0;
  int p = 0;
  double value = 0.0;
  int lower_level = 0;
  WangLabel lower;
  int upper_level = 0;
  WangLabel upper;
  std::string name() const;
};

struct GapTable {
  int j = 0;
  /// Distinct |E - E'| over the union of both levels, ascending.
  std::vector<double> gaps;
  std::vector<NamedGap> named;
  const NamedGap* find(char family, int k, int p) const;
};

GapTable spectral_gaps(const SpectrumBlock& lower, const SpectrumBlock& upper, double tol_res = kResonanceTol);

/// Largest violation of lambda00 = rho00, lambda_k0 = rho_k1, lambda_k1 = rho_k0,
/// eta_k0 = eta_(k+1)1 and sigma_k0 = sigma_k1.
double gap_symmetry_residual(const GapTable& table);

/// Distinct absolute differences of a list of values at relative tolerance, ascending.
std::vector<double> distinct_gaps(const std::vector<double>& values, double tol_res = kResonanceTol);

/// E_sigma(M): keeps (l, k) iff ||lambda_l - lambda_k| - sigma| <= tol_res * max(1, max |lambda|).
Eigen::MatrixXcd excitation(const Eigen::MatrixXcd& M, double sigma, const Eigen::VectorXd& eigenvalues,
                            double tol_res = kResonanceTol);

/// Rotor with dipole in the eigen representation on levels 0..top_level, ordered (l, tau, m).
struct TruncatedSystem {
  RotationalConstants constants;
  DipoleMoment dipole;
  int top_level = 0;
  std::vector<SpectrumBlock> spectra;
  Eigen::VectorXd energies;
  std::array<Eigen::MatrixXcd, 3> controls;  // Hermitian H_1, H_2, H_3

  int dimension() const { return static_cast<int>(energies.size()); }
  /// n_j of the block M_j spanned by levels j and j+1.
  static int block_size(int j) { return level_size(j) + level_size(j + 1); }
  Eigen::VectorXd block_energies(int j) const;
  /// i H^(j): diagonal drift on M_j.
  Eigen::MatrixXcd block_drift(int j) const;
  /// i H_l^(j): control l restricted to M_j.
  Eigen::MatrixXcd block_control(int l, int j) const;
};

TruncatedSystem build_truncated_system(const RotationalConstants& rc, const DipoleMoment& d, int top_level);

enum class XiClass { xi0, xi1, neither };
const char* to_string(XiClass x);

struct XiResult {
  XiClass cls = XiClass::neither;
  int horizon = 0;
  /// First offending entry, empty when cls is xi0.
  std::string witness;
};

/// Classifies (sigma, l) for block j using entries on levels <= horizon (default top_level).
XiResult xi_membership(double sigma, int l, int j, const TruncatedSystem& sys, double tol_res = kResonanceTol,
                       int horizon = -1);

struct ClosureResult {
  int n = 0;
  int dimension = 0;
  std::vector<Eigen::MatrixXcd> basis;
  bool converged = true;
  /// Isometric real coordinates of the basis, one column per element.
  Eigen::MatrixXd coords;

  /// Distance of vec(X) from the span, relative to |X|.
  double residual(const Eigen::MatrixXcd& X) const;
};

/// Real coordinates of a skew-Hermitian matrix, isometric for Re tr(A^dagger B).
Eigen::VectorXd skew_vec(const Eigen::MatrixXcd& X);
Eigen::MatrixXcd skew_unvec(const Eigen::VectorXd& v, int n);

/// Smallest real Lie algebra containing the generators. cap < 0 means 10 n^2 bracket sweeps.
ClosureResult lie_closure(const std::vector<Eigen::MatrixXcd>& generators, long cap = -1, double rank_tol = 1e-10);

/// Real span of the given matrices (no brackets).
ClosureResult linear_span(const std::vector<Eigen::MatrixXcd>& elements, int n, double rank_tol = 1e-10);

/// Smallest ideal of lie_nu1 containing nu0.
ClosureResult minimal_ideal(const std::vector<Eigen::MatrixXcd>& nu0, const ClosureResult& lie_nu1,
                            double rank_tol = 1e-10);

/// Dimension of the projection of the span onto traceless matrices.
int traceless_dimension(const ClosureResult& c);
bool su_inclusion(const ClosureResult& c, int n);

/// Path graph on blocks 0..jmax with the listed blocks removed.
bool graph_connected(int jmax, const std::vector<int>& removed = {});

struct Generator {
  Eigen::MatrixXcd matrix;
  std::string tag;
};

struct ModeFamily {
  int j = 0;
  std::vector<Generator> generators;
  std::vector<Eigen::MatrixXcd> matrices() const;
};

struct ModeFamilies {
  ModeFamily F;
  ModeFamily P;
  ModeFamily P_tilde;
};

/// Throws ResonanceError if any gap used fails its Xi membership.
ModeFamilies mode_families(int j, const TruncatedSystem& sys, double tol_res = kResonanceTol, int horizon = -1);

struct XiRecord {
  double sigma = 0.0;
  int l = 0;
  XiClass cls = XiClass::neither;
  std::string witness;
};

struct BlockCertificate {
  int j = 0;
  int n = 0;
  int horizon = 0;
  std::vector<XiRecord> memberships;
  int nu0_size = 0;
  int nu1_size = 0;
  int lie_nu0_dimension = 0;
  int lie_nu1_dimension = 0;
  int ideal_dimension = 0;
  int traceless_dimension = 0;
  bool converged = true;
  bool su_included = false;
};

BlockCertificate certify_block(int j, const TruncatedSystem& sys, double tol_res = kResonanceTol, int horizon = -1);

struct ResonanceFlag {
  double mu = 0.0;
  std::string condition;  // "N", "N1" or "I"
  std::string named;
  double named_value = 0.0;
  std::string other;
  double other_value = 0.0;
};

/// Gap comparisons along the asymmetry path of `endpoint` for block j, levels <= horizon (default j+2).
std::vector<ResonanceFlag> resonance_scan(const RotationalConstants& endpoint, TopKind kind, int j,
                                          const std::vector<double>& mu_grid, double tol_res = kResonanceTol,
                                          int horizon = -1);

enum class VerdictKind { certified, obstructed, resonant, inconclusive };
const char* to_string(VerdictKind v);

struct VerdictOptions {
  int jmax = 0;
  std::vector<double> mu_grid;
  double tol_res = kResonanceTol;
  int horizon = -1;  // default jmax + 2
  double axis_tol = 1e-12;
};

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::optional<Family> family;
  DipoleClass dipole_class;
  Convention convention = Convention::oblate;
  int jmax = 0;
  int horizon = 0;
  double tol_res = kResonanceTol;
  bool graph_connected = false;
  std::vector<BlockCertificate> blocks;
  std::vector<double> resonant_mu;
  std::vector<ResonanceFlag> flags;
  std::string summary;
};

Verdict controllability_verdict(const RotationalConstants& rc, DipoleMoment d, const VerdictOptions& opt);

}  // namespace rotor
