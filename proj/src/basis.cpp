// SPDX-License-Identifier: Apache-2.0
#include "rotor/basis.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "rotor/errors.hpp"

namespace rotor {

bool is_valid(const WignerIndex& w) {
  return w.j >= 0 && std::abs(w.k) <= w.j && std::abs(w.m) <= w.j;
}

bool is_valid(const WangIndex& w) {
  return w.j >= 0 && w.k >= 0 && w.k <= w.j && std::abs(w.m) <= w.j && (w.p == 0 || w.p == 1) &&
         !(w.k == 0 && w.p == 1);
}

int level_offset(int l) {
  if (l < 0) throw DomainError("level_offset: negative level");
  // sum_{l'<l} (2l'+1)^2 = l(2l-1)(2l+1)/3
  return l * (2 * l - 1) * (2 * l + 1) / 3;
}

std::size_t lex_rank(int l, int tau, int m) {
  if (l < 0 || std::abs(tau) > l || std::abs(m) > l)
    throw DomainError("lex_rank: quantum numbers out of range (l=" + std::to_string(l) +
                      ", tau=" + std::to_string(tau) + ", m=" + std::to_string(m) + ")");
  return static_cast<std::size_t>(level_offset(l) + (tau + l) * (2 * l + 1) + (m + l));
}

std::vector<std::pair<WignerIndex, std::complex<double>>> wang_expansion(const WangIndex& w) {
  if (!is_valid(w)) throw DomainError("wang_expansion: invalid Wang index");
  if (w.k == 0) return {{WignerIndex{w.j, 0, w.m}, 1.0}};
  const double s = 1.0 / std::sqrt(2.0);
  return {{WignerIndex{w.j, w.k, w.m}, s}, {WignerIndex{w.j, -w.k, w.m}, (w.p == 0 ? s : -s)}};
}

BlockSpec block_spec(int j) {
  if (j < 0) throw DomainError("block_spec: negative j");
  BlockSpec b;
  b.j = j;
  for (int l = j; l <= j + 1; ++l)
    for (int tau = -l; tau <= l; ++tau)
      for (int m = -l; m <= l; ++m) b.members.push_back({l, tau, m});
  b.dimension = level_size(j) + level_size(j + 1);
  return b;
}

std::vector<WangLabel> wang_labels(int j) {
  if (j < 0) throw DomainError("wang_labels: negative j");
  std::vector<WangLabel> out{{0, 0}};
  for (int k = 1; k <= j; ++k) {
    out.push_back({k, 0});
    out.push_back({k, 1});
  }
  return out;
}

int wang_slot(const WangLabel& w) { return w.k == 0 ? 0 : 2 * w.k - 1 + w.p; }

Eigen::MatrixXd wang_matrix(int j) {
  const int n = 2 * j + 1;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (const auto& w : wang_labels(j)) {
    const int c = wang_slot(w);
    if (w.k == 0) {
      W(j, c) = 1.0;
    } else {
      W(j + w.k, c) = s;
      W(j - w.k, c) = w.p == 0 ? s : -s;
    }
  }
  return W;
}

}  // namespace rotor
