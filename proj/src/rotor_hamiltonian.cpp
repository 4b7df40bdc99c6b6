// SPDX-License-Identifier: Apache-2.0
#include "rotor/rotor_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "rotor/errors.hpp"

namespace rotor {

const char* to_string(TopKind kind) { return kind == TopKind::oblate ? "oblate" : "prolate"; }

void validate(const RotationalConstants& rc) {
  if (!(std::isfinite(rc.A) && std::isfinite(rc.B) && std::isfinite(rc.C)))
    throw DomainError("rotational constants must be finite");
  if (!(rc.A >= rc.B && rc.B >= rc.C && rc.C > 0.0))
    throw DomainError("rotational constants must satisfy A >= B >= C > 0");
  if (rc.A == rc.C) throw DomainError("spherical top unsupported");
}

bool is_oblate(const RotationalConstants& rc) { return rc.A == rc.B && rc.B > rc.C; }
bool is_prolate(const RotationalConstants& rc) { return rc.A > rc.B && rc.B == rc.C; }
bool is_asymmetric(const RotationalConstants& rc) { return rc.A > rc.B && rc.B > rc.C; }

AsymmetryParams asymmetry_params(const RotationalConstants& rc) {
  validate(rc);
  AsymmetryParams p;
  p.mu_o = (rc.A - rc.B) / (2.0 * rc.C - rc.B - rc.A);
  p.mu_p = (rc.C - rc.B) / (2.0 * rc.A - rc.B - rc.C);
  // exact zeros instead of -0.0
  if (p.mu_o == 0.0) p.mu_o = 0.0;
  if (p.mu_p == 0.0) p.mu_p = 0.0;
  return p;
}

bool degenerate(double e1, double e2) {
  return std::abs(e1 - e2) < kDegeneracyTol * std::max(1.0, std::max(std::abs(e1), std::abs(e2)));
}

double symmetric_top_energy(int j, int k, double A_sym, double C_sym, TopKind kind) {
  if (j < 0 || std::abs(k) > j) throw DomainError("symmetric_top_energy: |k| > j");
  const double jj = static_cast<double>(j) * (j + 1);
  const double k2 = static_cast<double>(k) * k;
  if (kind == TopKind::oblate) return A_sym * jj - (A_sym - C_sym) * k2;
  return C_sym * jj + (A_sym - C_sym) * k2;
}

Eigen::MatrixXd ladder_xy(int j) {
  const int n = 2 * j + 1;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  const double jj = static_cast<double>(j) * (j + 1);
  for (int k = -j; k + 2 <= j; ++k) {
    const double v = 0.5 * std::sqrt((jj - k * (k + 1.0)) * (jj - (k + 1.0) * (k + 2.0)));
    L(k + j, k + 2 + j) = v;
    L(k + 2 + j, k + j) = v;
  }
  return L;
}

Eigen::MatrixXd PerturbationOperator::matrix(int j) const {
  const Eigen::MatrixXd W = wang_matrix(j);
  return scale * (W.transpose() * ladder_xy(j) * W);
}

AsymmetryPath asymmetry_path(const RotationalConstants& rc, TopKind kind) {
  const AsymmetryParams mu = asymmetry_params(rc);
  AsymmetryPath p;
  p.kind = kind;
  if (kind == TopKind::oblate) {
    p.A_sym = 0.5 * (rc.A + rc.B);
    p.C_sym = rc.C;
    p.scale = rc.C - p.A_sym;
    p.mu_endpoint = mu.mu_o;
  } else {
    p.A_sym = rc.A;
    p.C_sym = 0.5 * (rc.B + rc.C);
    p.scale = rc.A - p.C_sym;
    p.mu_endpoint = mu.mu_p;
  }
  return p;
}

PerturbationOperator perturbation_operator(const RotationalConstants& rc, TopKind kind) {
  return {kind, asymmetry_path(rc, kind).scale};
}

RotationalConstants AsymmetryPath::constants_at(double mu) const {
  const double s = mu * scale;
  if (kind == TopKind::oblate) return {A_sym + s, A_sym - s, C_sym};
  return {A_sym, C_sym - s, C_sym + s};
}

Eigen::MatrixXd AsymmetryPath::hamiltonian(int j, double mu) const {
  if (j < 0) throw DomainError("hamiltonian: negative j");
  const int n = 2 * j + 1;
  Eigen::MatrixXd H = mu * scale * ladder_xy(j);
  for (int k = -j; k <= j; ++k) H(k + j, k + j) = symmetric_top_energy(j, k, A_sym, C_sym, kind);
  const Eigen::MatrixXd W = wang_matrix(j);
  Eigen::MatrixXd Hw = W.transpose() * H * W;
  // exact symmetry
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) Hw(b, a) = Hw(a, b);
  return Hw;
}

Eigen::MatrixXd build_hamiltonian_block(int j, const RotationalConstants& rc, TopKind kind) {
  const AsymmetryPath p = asymmetry_path(rc, kind);
  return p.hamiltonian(j, p.mu_endpoint);
}

Eigen::MatrixXd SpectrumBlock::wigner_vectors() const { return wang_matrix(j) * vectors; }

double SpectrumBlock::energy(int k, int p) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].k == k && labels[i].p == p) return energies(static_cast<Eigen::Index>(i));
  throw DomainError("SpectrumBlock::energy: no branch with this label");
}

namespace {

struct Level {
  double e;
  WangLabel label;
  Eigen::VectorXd v;
};

void fix_phase(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
}

}  // namespace

SpectrumBlock diagonalize_block(int j, const AsymmetryPath& path, double mu) {
  if (j < 0) throw DomainError("diagonalize_block: negative j");
  const int n = 2 * j + 1;
  const Eigen::MatrixXd H = path.hamiltonian(j, mu);
  const auto labels = wang_labels(j);

  std::vector<Level> levels;
  for (int parity = 0; parity < 2; ++parity) {
    for (int p = 0; p < 2; ++p) {
      std::vector<int> slots;
      std::vector<int> ks;
      for (const auto& w : labels)
        if (w.k % 2 == parity && w.p == p) {
          slots.push_back(wang_slot(w));
          ks.push_back(w.k);
        }
      if (slots.empty()) continue;
      const int s = static_cast<int>(slots.size());
      Eigen::MatrixXd sub(s, s);
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) sub(a, b) = H(slots[a], slots[b]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
      if (es.info() != Eigen::Success) throw NumericError("diagonalize_block: eigensolver failed");
      // Levels of one symmetry class never cross; at mu = 0 energy is monotone in k.
      if (path.kind == TopKind::oblate)
        std::sort(ks.begin(), ks.end(), std::greater<>());
      else
        std::sort(ks.begin(), ks.end());
      for (int a = 0; a < s; ++a) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        for (int b = 0; b < s; ++b) v(slots[b]) = es.eigenvectors()(b, a);
        fix_phase(v);
        levels.push_back({es.eigenvalues()(a), WangLabel{ks[a], p}, v});
      }
    }
  }

  std::sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) { return x.e < y.e; });
  for (std::size_t a = 0; a < levels.size();) {
    std::size_t b = a + 1;
    while (b < levels.size() && degenerate(levels[b - 1].e, levels[b].e)) ++b;
    std::sort(levels.begin() + static_cast<std::ptrdiff_t>(a), levels.begin() + static_cast<std::ptrdiff_t>(b),
              [](const Level& x, const Level& y) {
                return std::tie(x.label.p, x.label.k) < std::tie(y.label.p, y.label.k);
              });
    a = b;
  }

  SpectrumBlock out;
  out.j = j;
  out.kind = path.kind;
  out.energies.resize(n);
  out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.energies(i) = levels[i].e;
    out.vectors.col(i) = levels[i].v;
    out.labels.push_back(levels[i].label);
  }
  return out;
}

SpectrumBlock diagonalize_block(int j, const RotationalConstants& rc, TopKind kind) {
  const AsymmetryPath p = asymmetry_path(rc, kind);
  return diagonalize_block(j, p, p.mu_endpoint);
}

BranchSet track_branches(int j, const RotationalConstants& endpoint, TopKind kind,
                         const std::vector<double>& mu_grid) {
  if (mu_grid.empty()) throw DomainError("track_branches: empty grid");
  if (!std::is_sorted(mu_grid.begin(), mu_grid.end()))
    throw DomainError("track_branches: grid must be sorted");
  for (double mu : mu_grid)
    if (mu < -1.0 - 1e-15 || mu > 1e-15) throw DomainError("track_branches: grid outside [-1, 0]");
  const auto it0 = std::find_if(mu_grid.begin(), mu_grid.end(), [](double mu) { return std::abs(mu) < 1e-15; });
  if (it0 == mu_grid.end()) throw DomainError("track_branches: grid must contain 0");

  const AsymmetryPath path = asymmetry_path(endpoint, kind);
  const int n = 2 * j + 1;
  const int npts = static_cast<int>(mu_grid.size());
  const int i0 = static_cast<int>(it0 - mu_grid.begin());

  BranchSet out;
  out.j = j;
  out.mu = mu_grid;
  out.energies.resize(n, npts);
  out.vectors.assign(n, std::vector<Eigen::VectorXd>(npts));

  const SpectrumBlock s0 = diagonalize_block(j, path, 0.0);
  out.labels = s0.labels;
  for (int b = 0; b < n; ++b) {
    out.energies(b, i0) = s0.energies(b);
    out.vectors[b][i0] = s0.vectors.col(b);
  }

  auto step = [&](int from, int to) {
    const SpectrumBlock s = diagonalize_block(j, path, mu_grid[to]);
    Eigen::MatrixXd prev(n, n);
    for (int b = 0; b < n; ++b) prev.col(b) = out.vectors[b][from];
    const Eigen::MatrixXd ov = (prev.transpose() * s.vectors).cwiseAbs();

    for (int b = 0; b < n; ++b) {
      Eigen::VectorXd row = ov.row(b).transpose();
      Eigen::Index best = 0;
      const double top = row.maxCoeff(&best);
      row(best) = -1.0;
      if (n > 1 && top - row.maxCoeff() < 1e-8) {
        std::ostringstream msg;
        msg << "branch-crossing: ambiguous overlap for branch (k=" << out.labels[b].k << ", p=" << out.labels[b].p
            << ") between mu=" << mu_grid[from] << " and mu=" << mu_grid[to];
        out.warnings.push_back(msg.str());
      }
    }

    std::vector<std::tuple<double, int, int>> pairs;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) pairs.emplace_back(ov(b, c), b, c);
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
    std::vector<int> assign(n, -1);
    std::vector<bool> taken(n, false);
    for (const auto& [o, b, c] : pairs) {
      if (assign[b] >= 0 || taken[c]) continue;
      assign[b] = c;
      taken[c] = true;
    }
    for (int b = 0; b < n; ++b) {
      Eigen::VectorXd v = s.vectors.col(assign[b]);
      if (v.dot(prev.col(b)) < 0) v = -v;
      out.vectors[b][to] = v;
      out.energies(b, to) = s.energies(assign[b]);
    }
  };

  for (int i = i0 - 1; i >= 0; --i) step(i + 1, i);
  for (int i = i0 + 1; i < npts; ++i) step(i - 1, i);
  return out;
}

}  // namespace rotor
