// SPDX-License-Identifier: Apache-2.0
#include "rotor/so3_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotor/errors.hpp"

namespace rotor {

using cd = std::complex<double>;

Eigen::Matrix3d rotation_matrix(const EulerAngles& e) {
  const double ca = std::cos(e.alpha), sa = std::sin(e.alpha);
  const double cb = std::cos(e.beta), sb = std::sin(e.beta);
  const double cg = std::cos(e.gamma), sg = std::sin(e.gamma);
  Eigen::Matrix3d R;
  R << ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb,
       sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb,
       -sb * cg, sb * sg, cb;
  return R;
}

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Standard factorial-sum d^j_{m1,m2}.
double d_standard(int j, int m1, int m2, double beta) {
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  const double pre = std::sqrt(factorial(j + m1) * factorial(j - m1) * factorial(j + m2) * factorial(j - m2));
  double sum = 0.0;
  for (int t = std::max(0, m2 - m1); t <= std::min(j + m2, j - m1); ++t) {
    const double den = factorial(j + m2 - t) * factorial(t) * factorial(m1 - m2 + t) * factorial(j - m1 - t);
    const double sign = ((m1 - m2 + t) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::pow(c, 2 * j + m2 - m1 - 2 * t) * std::pow(s, m1 - m2 + 2 * t) / den;
  }
  return pre * sum;
}

}  // namespace

double wigner_d_little(int j, int k, int m, double beta) {
  if (!is_valid(WignerIndex{j, k, m})) throw DomainError("wigner_d_little: invalid index");
  return d_standard(j, m, k, beta);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n < 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int r = 1; r <= n; ++r) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * r - 1.0) * z * p1 - (r - 1.0) * p2) / r;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

double wigner_D_norm(int j) {
  if (j < 0) throw DomainError("wigner_D_norm: negative j");
  // |D|^2 is independent of alpha, gamma; integrate d^2 over cos(beta) exactly.
  const auto [x, w] = gauss_legendre(2 * j + 2);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = wigner_d_little(j, j, j, std::acos(x[i]));
    s += w[i] * d * d;
  }
  const double mass = 4.0 * std::numbers::pi * std::numbers::pi / 8.0;
  return 1.0 / std::sqrt(mass * s);
}

cd wigner_D(const WignerIndex& w, const EulerAngles& e) {
  const double d = wigner_d_little(w.j, w.k, w.m, e.beta);
  return wigner_D_norm(w.j) * std::polar(d, w.k * e.gamma + w.m * e.alpha);
}

double stark_multiplier(int l, const EulerAngles& e, const DipoleMoment& d) {
  if (l < 1 || l > 3) throw DomainError("stark_multiplier: l must be 1, 2 or 3");
  return -(rotation_matrix(e) * d.body())(l - 1);
}

int QuadratureGrid::max_level() const {
  const int ja = (std::min(n_alpha, n_gamma) - 2) / 4;
  const int jb = (n_beta - 2) / 2;
  return std::min(ja, jb);
}

double QuadratureGrid::total_mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureGrid make_grid(int n_alpha, int n_beta, int n_gamma) {
  if (n_alpha < 1 || n_beta < 1 || n_gamma < 1) throw DomainError("make_grid: orders must be positive");
  QuadratureGrid g;
  g.n_alpha = n_alpha;
  g.n_beta = n_beta;
  g.n_gamma = n_gamma;
  const auto [x, wb] = gauss_legendre(n_beta);
  const double two_pi = 2.0 * std::numbers::pi;
  const double wa = two_pi / n_alpha, wg = two_pi / n_gamma;
  for (int ia = 0; ia < n_alpha; ++ia)
    for (int ib = 0; ib < n_beta; ++ib)
      for (int ig = 0; ig < n_gamma; ++ig) {
        g.nodes.push_back({two_pi * ia / n_alpha, std::acos(x[ib]), two_pi * ig / n_gamma});
        g.weights.push_back(wa * wg * wb[ib] / 8.0);
      }
  return g;
}

QuadratureGrid make_grid(int jmax) {
  if (jmax < 0) throw DomainError("make_grid: negative jmax");
  return make_grid(4 * jmax + 4, 2 * jmax + 4, 4 * jmax + 4);
}

cd oracle_element(int l, const WignerIndex& bra, const WignerIndex& ket, const DipoleMoment& d,
                  const QuadratureGrid& grid) {
  if (!is_valid(bra) || !is_valid(ket)) throw DomainError("oracle_element: invalid index");
  if (std::max(bra.j, ket.j) > grid.max_level())
    throw PreconditionError("oracle_element: grid under-resolved for these levels");
  cd s = 0.0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const auto& e = grid.nodes[i];
    s += grid.weights[i] * wigner_D(bra, e) * std::conj(stark_multiplier(l, e, d) * wigner_D(ket, e));
  }
  return s;
}

int OracleTable::row(const WignerIndex& w) { return level_offset(w.j) + (w.k + w.j) * (2 * w.j + 1) + (w.m + w.j); }

OracleTable::OracleTable(int jmax, QuadratureGrid grid) : jmax_(jmax), grid_(std::move(grid)) {
  if (jmax_ > grid_.max_level()) throw PreconditionError("OracleTable: grid under-resolved for jmax");
  const int n = level_offset(jmax_ + 1);
  const int nodes = static_cast<int>(grid_.nodes.size());
  values_.resize(nodes, n);
  for (int j = 0; j <= jmax_; ++j) {
    const double nj = wigner_D_norm(j);
    for (int k = -j; k <= j; ++k)
      for (int m = -j; m <= j; ++m) {
        const int c = row({j, k, m});
        for (int i = 0; i < nodes; ++i) {
          const auto& e = grid_.nodes[i];
          values_(i, c) = nj * std::polar(wigner_d_little(j, k, m, e.beta), k * e.gamma + m * e.alpha);
        }
      }
  }
}

Eigen::MatrixXcd OracleTable::gram() const {
  const Eigen::Map<const Eigen::VectorXd> w(grid_.weights.data(), static_cast<Eigen::Index>(grid_.weights.size()));
  // <D_a, D_b> = sum_i w_i D_a conj(D_b)
  return values_.transpose() * w.asDiagonal() * values_.conjugate();
}

Eigen::MatrixXcd OracleTable::element_matrix(int l, const DipoleMoment& d) const {
  const int nodes = static_cast<int>(grid_.nodes.size());
  Eigen::VectorXd wh(nodes);
  for (int i = 0; i < nodes; ++i) wh(i) = grid_.weights[i] * stark_multiplier(l, grid_.nodes[i], d);
  return values_.transpose() * wh.asDiagonal() * values_.conjugate();
}

}  // namespace rotor
