// SPDX-License-Identifier: Apache-2.0
#include "rotor/symmetry_analysis.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "rotor/errors.hpp"

namespace rotor {

const char* to_string(Family f) {
  switch (f) {
    case Family::K: return "K";
    case Family::G: return "G";
    case Family::L: return "L";
  }
  return "?";
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

const char* to_string(DipoleClassKind k) {
  switch (k) {
    case DipoleClassKind::axis_a: return "axis_a";
    case DipoleClassKind::axis_b: return "axis_b";
    case DipoleClassKind::axis_c: return "axis_c";
    case DipoleClassKind::generic_in_ab_plane: return "generic_in_ab_plane";
    case DipoleClassKind::generic: return "generic";
  }
  return "?";
}

Parity classify_wang(const WangIndex& w, Family family) {
  if (!is_valid(w)) throw DomainError("classify_wang: invalid Wang index");
  int s = 0;
  switch (family) {
    case Family::K: s = w.k; break;
    case Family::G: s = w.j + w.p; break;
    case Family::L: s = w.j + w.k + w.p; break;
  }
  return s % 2 == 0 ? Parity::even : Parity::odd;
}

DipoleClass classify_dipole(const DipoleMoment& d, double rel_tol) {
  const double n = d.norm();
  if (!(n > 0.0)) throw DomainError("classify_dipole: zero dipole");
  DipoleClass out;
  out.tolerance = rel_tol * n;
  const bool a = std::abs(d.a) > out.tolerance;
  const bool b = std::abs(d.b) > out.tolerance;
  const bool c = std::abs(d.c) > out.tolerance;
  if (a && !b && !c) {
    out.kind = DipoleClassKind::axis_a;
    out.obstruction = Family::G;
  } else if (!a && b && !c) {
    out.kind = DipoleClassKind::axis_b;
    out.obstruction = Family::L;
  } else if (!a && !b && c) {
    out.kind = DipoleClassKind::axis_c;
    out.obstruction = Family::K;
  } else if (a && b && !c) {
    out.kind = DipoleClassKind::generic_in_ab_plane;
  } else {
    out.kind = DipoleClassKind::generic;
  }
  return out;
}

bool InvarianceReport::invariant(double tol) const { return max_norm() < tol; }

double InvarianceReport::max_norm() const {
  double m = hamiltonian_norm;
  for (double v : control_norms) m = std::max(m, v);
  return m;
}

WangIndex wang_index_at(int position) {
  if (position < 0) throw DomainError("wang_index_at: negative position");
  int j = 0;
  while (level_offset(j + 1) <= position) ++j;
  const int r = position - level_offset(j);
  const int slot = r / (2 * j + 1);
  const int m = r % (2 * j + 1) - j;
  const WangLabel w = wang_labels(j)[slot];
  return {j, w.k, m, w.p};
}

Eigen::MatrixXd wang_hamiltonian(int jmax, const RotationalConstants& rc, TopKind kind) {
  const int dim = level_offset(jmax + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j <= jmax; ++j) {
    const Eigen::MatrixXd h = build_hamiltonian_block(j, rc, kind);
    const int n = 2 * j + 1, o = level_offset(j);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (int m = 0; m < n; ++m) H(o + s * n + m, o + t * n + m) = h(s, t);
  }
  return H;
}

namespace {

std::vector<int> positions(int jmax, Family family, Parity parity) {
  std::vector<int> out;
  for (int i = 0; i < level_offset(jmax + 1); ++i)
    if (classify_wang(wang_index_at(i), family) == parity) out.push_back(i);
  return out;
}

template <typename Mat>
Mat cross_block(const Mat& M, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = M(rows[r], cols[c]);
  return out;
}

template <typename Mat>
double spectral_norm(const Mat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues()(0);
}

}  // namespace

InvarianceReport invariance_certificate(const DipoleMoment& d, Family family, int jmax, const RotationalConstants& rc) {
  if (jmax < 1) throw DomainError("invariance_certificate: jmax must be >= 1");
  validate(rc);
  InvarianceReport out;
  out.family = family;
  out.jmax = jmax;
  const auto even = positions(jmax, family, Parity::even);
  const auto odd = positions(jmax, family, Parity::odd);

  const Eigen::MatrixXd H = wang_hamiltonian(jmax, rc, kind_of(d.convention));
  out.hamiltonian_norm = spectral_norm(cross_block(H, even, odd));

  double best = -1.0;
  for (int l = 1; l <= 3; ++l) {
    const Eigen::MatrixXcd Hl = level_operator(l, 0, jmax, d, Representation::wang);
    const Eigen::MatrixXcd X = cross_block(Hl, even, odd);
    out.control_norms[l - 1] = spectral_norm(X);
    Eigen::Index r = 0, c = 0;
    const double v = X.cwiseAbs().maxCoeff(&r, &c);
    if (v > best) {
      best = v;
      out.witness.l = l;
      out.witness.bra = wang_index_at(even[r]);
      out.witness.ket = wang_index_at(odd[c]);
      out.witness.value = wang_element(l, out.witness.bra, out.witness.ket, d);
    }
  }
  return out;
}

double propagator_leakage(const DipoleMoment& d, Family family, int jmax, const RotationalConstants& rc,
                          const std::array<double, 3>& u, double t, unsigned seed) {
  const int dim = level_offset(jmax + 1);
  Eigen::MatrixXcd H = wang_hamiltonian(jmax, rc, kind_of(d.convention)).cast<std::complex<double>>();
  for (int l = 1; l <= 3; ++l) H += u[l - 1] * level_operator(l, 0, jmax, d, Representation::wang);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw NumericError("propagator_leakage: eigensolver failed");

  std::mt19937 rng(seed);
  std::normal_distribution<double> N;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (int i = 0; i < dim; ++i)
    if (classify_wang(wang_index_at(i), family) == Parity::even) psi(i) = {N(rng), N(rng)};
  psi.normalize();

  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0.0, -t)).array().exp().matrix();
  const Eigen::VectorXcd out = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
  double leak = 0.0;
  for (int i = 0; i < dim; ++i)
    if (classify_wang(wang_index_at(i), family) == Parity::odd) leak += std::norm(out(i));
  return leak;
}

}  // namespace rotor
