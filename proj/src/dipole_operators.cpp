// SPDX-License-Identifier: Apache-2.0
#include "rotor/dipole_operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "rotor/errors.hpp"

namespace rotor {

using cd = std::complex<double>;

const char* to_string(Convention c) { return c == Convention::oblate ? "oblate" : "prolate"; }

const char* to_string(Representation r) {
  switch (r) {
    case Representation::wigner: return "wigner";
    case Representation::wang: return "wang";
    case Representation::eigen: return "eigen";
  }
  return "?";
}

Eigen::Vector3d DipoleMoment::indexed() const {
  if (convention == Convention::oblate) return {b, a, c};
  return {b, c, a};
}

Eigen::Vector3d DipoleMoment::body() const {
  const Eigen::Vector3d d = indexed();
  return {d(1), d(0), d(2)};
}

double DipoleMoment::norm() const { return std::sqrt(a * a + b * b + c * c); }

namespace {

double sqrt0(double x) { return std::sqrt(std::max(0.0, x)); }

}  // namespace

double coef_c(int j, int k, int m) {
  return sqrt0((j + k + 1.0) * (j + k + 2.0)) * sqrt0((j + m + 1.0) * (j + m + 2.0)) /
         (4.0 * (j + 1) * std::sqrt((2.0 * j + 1) * (2.0 * j + 3)));
}

double coef_d(int j, int k, int m) {
  return sqrt0((j + k + 1.0) * (j + k + 2.0)) * sqrt0((j + 1.0) * (j + 1.0) - double(m) * m) /
         (2.0 * (j + 1) * std::sqrt((2.0 * j + 1) * (2.0 * j + 3)));
}

double coef_h(int j, int k, int m) {
  const double jj = double(j) * (j + 1);
  return sqrt0(jj - k * (k + 1.0)) * sqrt0(jj - m * (m + 1.0)) / (4.0 * jj);
}

double coef_q(int j, int k, int m) {
  const double jj = double(j) * (j + 1);
  return sqrt0(jj - k * (k + 1.0)) * m / (2.0 * jj);
}

double coef_a(int j, int k, int m) {
  return sqrt0((j + 1.0) * (j + 1.0) - double(k) * k) * sqrt0((j + m + 1.0) * (j + m + 2.0)) /
         (2.0 * (j + 1) * std::sqrt((2.0 * j + 1) * (2.0 * j + 3)));
}

double coef_b(int j, int k, int m) {
  return sqrt0((j + 1.0) * (j + 1.0) - double(k) * k) * sqrt0((j + 1.0) * (j + 1.0) - double(m) * m) /
         ((j + 1.0) * std::sqrt((2.0 * j + 1) * (2.0 * j + 3)));
}

double coef_f(int j, int k, int s, int m) {
  const double jj = double(j) * (j + 1);
  return k * sqrt0(jj - m * (m + double(s))) / (2.0 * jj);
}

double coef_g(int j, int k, int m) { return double(k) * m / (double(j) * (j + 1)); }

cd wigner_element(int l, const WignerIndex& bra, const WignerIndex& ket, const DipoleMoment& dip) {
  if (l < 1 || l > 3) throw DomainError("wigner_element: l must be 1, 2 or 3");
  if (!is_valid(bra) || !is_valid(ket)) throw DomainError("wigner_element: invalid index");
  const int dj = ket.j - bra.j;
  if (dj == -1) return -std::conj(wigner_element(l, ket, bra, dip));
  if (dj != 0 && dj != 1) return 0.0;
  const int dk = ket.k - bra.k;
  const int dm = ket.m - bra.m;
  if (std::abs(dk) > 1 || std::abs(dm) > 1) return 0.0;
  if ((l == 3) != (dm == 0)) return 0.0;

  const int j = bra.j, k = bra.k, m = bra.m;
  if (dj == 0 && j == 0) return 0.0;
  const Eigen::Vector3d d = dip.indexed();
  const cd I(0.0, 1.0);
  const cd combo = dk == 1 ? cd(d(1), d(0)) : dk == -1 ? cd(d(1), -d(0)) : cd(d(2), 0.0);
  const int kk = dk == -1 ? -k : k;
  const int mm = dm == -1 ? -m : m;

  if (dj == 1) {
    if (l == 3) {
      if (dk == 0) return I * coef_b(j, k, m) * combo;
      return (dk == 1 ? -I : I) * coef_d(j, kk, m) * combo;
    }
    if (dk == 0) {
      const double a = coef_a(j, k, mm);
      return (l == 1 ? (dm == 1 ? -I : I) : cd(-1.0)) * a * combo;
    }
    const double c = coef_c(j, kk, mm);
    if (l == 1) return (dk * dm == 1 ? I : -I) * c * combo;
    return cd(double(dk)) * c * combo;
  }

  // dj == 0
  if (l == 3) {
    if (dk == 0) return I * coef_g(j, k, m) * combo;
    return I * coef_q(j, kk, m) * combo;
  }
  const double v = dk == 0 ? coef_f(j, k, dm, m) : coef_h(j, kk, mm);
  return (l == 1 ? I : cd(double(dm))) * v * combo;
}

Eigen::MatrixXd level_basis(int l, Representation rep, const SpectrumBlock* spectrum) {
  const int n = 2 * l + 1;
  Eigen::MatrixXd T;
  switch (rep) {
    case Representation::wigner: T = Eigen::MatrixXd::Identity(n, n); break;
    case Representation::wang: T = wang_matrix(l); break;
    case Representation::eigen:
      if (spectrum == nullptr || spectrum->j != l)
        throw PreconditionError("eigen representation needs the spectrum of level " + std::to_string(l));
      T = spectrum->wigner_vectors();
      break;
  }
  // (k, m) -> (slot, m)
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      if (T(r, s) != 0.0)
        for (int m = 0; m < n; ++m) U(r * n + m, s * n + m) = T(r, s);
  return U;
}

Eigen::MatrixXcd level_operator(int l, int lo, int hi, const DipoleMoment& d, Representation rep,
                                const std::vector<SpectrumBlock>& spectra) {
  if (lo < 0 || hi < lo) throw DomainError("level_operator: invalid level range");
  const int base = level_offset(lo);
  const int dim = level_offset(hi + 1) - base;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);

  auto pos = [&](int j, int k, int m) { return level_offset(j) - base + (k + j) * (2 * j + 1) + (m + j); };
  for (int j = lo; j <= hi; ++j)
    for (int k = -j; k <= j; ++k)
      for (int m = -j; m <= j; ++m)
        for (int j2 = std::max(lo, j - 1); j2 <= std::min(hi, j + 1); ++j2)
          for (int k2 = std::max(-j2, k - 1); k2 <= std::min(j2, k + 1); ++k2)
            for (int m2 = std::max(-j2, m - 1); m2 <= std::min(j2, m + 1); ++m2) {
              const cd t = wigner_element(l, {j, k, m}, {j2, k2, m2}, d);
              if (t == 0.0) continue;
              // t = <phi_a, i H phi_b>  =>  standard element H_ab = -i conj(t)
              M(pos(j, k, m), pos(j2, k2, m2)) = cd(0.0, -1.0) * std::conj(t);
            }

  if (rep == Representation::wigner) return M;

  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = lo; j <= hi; ++j) {
    const SpectrumBlock* sb = nullptr;
    if (rep == Representation::eigen) {
      for (const auto& s : spectra)
        if (s.j == j) sb = &s;
      if (sb != nullptr && sb->kind != kind_of(d.convention))
        throw PreconditionError("spectrum kind does not match the dipole convention");
    }
    const int o = level_offset(j) - base;
    U.block(o, o, level_size(j), level_size(j)) = level_basis(j, rep, sb);
  }
  Eigen::MatrixXcd out = U.transpose() * M * U;
  // exact Hermitian symmetry
  Eigen::MatrixXcd herm = 0.5 * (out + out.adjoint());
  return herm;
}

ControlOperatorBlock build_control_blocks(int j, const DipoleMoment& d, Representation rep,
                                          const std::vector<SpectrumBlock>& spectra) {
  if (j < 0) throw DomainError("build_control_blocks: negative j");
  ControlOperatorBlock out;
  out.j = j;
  out.representation = rep;
  for (int l = 1; l <= 3; ++l) out.matrices[l - 1] = level_operator(l, j, j + 1, d, rep, spectra);
  return out;
}

cd wang_element(int l, const WangIndex& bra, const WangIndex& ket, const DipoleMoment& d) {
  cd sum = 0.0;
  for (const auto& [wb, cb] : wang_expansion(bra))
    for (const auto& [wk, ck] : wang_expansion(ket)) sum += cb * std::conj(ck) * wigner_element(l, wb, wk, d);
  return sum;
}

}  // namespace rotor
