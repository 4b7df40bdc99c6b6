// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rotor {

/// Label of the rotation-group function D^j_{k,m}.
struct WignerIndex {
  int j = 0;
  int k = 0;
  int m = 0;
  friend bool operator==(const WignerIndex&, const WignerIndex&) = default;
};

/// Label of the Wang function S^j_{k,m,p}, k >= 0.
struct WangIndex {
  int j = 0;
  int k = 0;
  int m = 0;
  int p = 0;
  friend bool operator==(const WangIndex&, const WangIndex&) = default;
};

/// (k, p) part of a Wang label; m-independent.
struct WangLabel {
  int k = 0;
  int p = 0;
  friend bool operator==(const WangLabel&, const WangLabel&) = default;
};

struct BlockMember {
  int l = 0;
  int tau = 0;
  int m = 0;
};

/// Layout of the Galerkin space spanned by levels j and j+1.
struct BlockSpec {
  int j = 0;
  std::vector<BlockMember> members;
  int dimension = 0;
};

bool is_valid(const WignerIndex& w);
bool is_valid(const WangIndex& w);

/// Number of states with level exactly l: (2l+1)^2.
inline int level_size(int l) { return (2 * l + 1) * (2 * l + 1); }

/// Number of states with level < l.
int level_offset(int l);

/// Position of (l, tau, m) in the lexicographic order over all levels.
std::size_t lex_rank(int l, int tau, int m);

/// Expansion of S^j_{k,m,p} in D^j_{±k,m}.
std::vector<std::pair<WignerIndex, std::complex<double>>> wang_expansion(const WangIndex& w);

BlockSpec block_spec(int j);

/// Wang labels of one level in slot order (0,0), (1,0), (1,1), (2,0), (2,1), ...
std::vector<WangLabel> wang_labels(int j);

/// Slot of a Wang label inside wang_labels(j).
int wang_slot(const WangLabel& w);

/// Real orthogonal matrix W with W(k+j, slot) the coefficient of D_k in the Wang function of that slot.
Eigen::MatrixXd wang_matrix(int j);

}  // namespace rotor
