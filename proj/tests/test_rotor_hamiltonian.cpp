// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rotor/errors.hpp"
#include "rotor/rotor_hamiltonian.hpp"

using namespace rotor;

namespace {

RotationalConstants random_rc(std::mt19937& g) {
  std::uniform_real_distribution<double> U(0.2, 4.0);
  double v[3] = {U(g), U(g), U(g)};
  std::sort(v, v + 3, std::greater<>());
  return {v[0], v[1], v[2]};
}

std::vector<double> sorted(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("symmetric top energies") {
  CHECK(symmetric_top_energy(0, 0, 2.0, 1.0, TopKind::oblate) == 0.0);
  CHECK(std::abs(symmetric_top_energy(1, 1, 1.0, 0.5, TopKind::oblate) - 1.5) < 1e-15);
  CHECK(std::abs(symmetric_top_energy(1, 1, 1.0, 0.5, TopKind::prolate) - 1.5) < 1e-15);
}

TEST_CASE("asymmetry parameters") {
  CHECK(std::abs(asymmetry_params({2, 2, 1}).mu_o) < 1e-15);
  CHECK(std::abs(asymmetry_params({2, 1, 1}).mu_o + 1.0) < 1e-15);
  CHECK(std::abs(asymmetry_params({3, 2, 1}).mu_o + 1.0 / 3.0) < 1e-15);
}

TEST_CASE("constants are validated") {
  CHECK_THROWS_AS(validate({1, 1, 1}), DomainError);
  CHECK_THROWS_AS(validate({1, 2, 0.5}), DomainError);
  CHECK_THROWS_AS(validate({1, 0.5, 0.0}), DomainError);
  CHECK_NOTHROW(validate({3, 2, 1}));
}

TEST_CASE("hamiltonian blocks") {
  const Eigen::MatrixXd H = build_hamiltonian_block(3, {2, 2, 1}, TopKind::oblate);
  CHECK((H - Eigen::MatrixXd(H.diagonal().asDiagonal())).norm() == 0.0);

  const RotationalConstants rc{3, 2, 1};
  const Eigen::MatrixXd H1 = build_hamiltonian_block(1, rc, TopKind::oblate);
  const double shift = 0.5 * (rc.A - rc.B);
  const double base = symmetric_top_energy(1, 1, 0.5 * (rc.A + rc.B), rc.C, TopKind::oblate);
  CHECK(std::abs(H1(1, 1) - (base + shift)) < 1e-14);
  CHECK(std::abs(H1(2, 2) - (base - shift)) < 1e-14);

  for (int j = 0; j <= 6; ++j) {
    const Eigen::MatrixXd M = build_hamiltonian_block(j, rc, TopKind::oblate);
    CHECK((M - M.transpose()).norm() == 0.0);
  }
}

TEST_CASE("j = 1 spectrum") {
  const SpectrumBlock b = diagonalize_block(1, {3, 2, 1}, TopKind::oblate);
  CHECK(std::abs(b.energies(0) - 3.0) < 1e-12);
  CHECK(std::abs(b.energies(1) - 4.0) < 1e-12);
  CHECK(std::abs(b.energies(2) - 5.0) < 1e-12);

  const SpectrumBlock z = diagonalize_block(0, {3, 2, 1}, TopKind::oblate);
  CHECK(z.energies.size() == 1);
  CHECK(z.energies(0) == 0.0);
}

TEST_CASE("symmetric limit spectrum") {
  const SpectrumBlock b = diagonalize_block(2, {1, 1, 0.5}, TopKind::oblate);
  const std::vector<double> expect{4.0, 4.0, 5.5, 5.5, 6.0};
  for (int i = 0; i < 5; ++i) CHECK(std::abs(b.energies(i) - expect[i]) < 1e-12);
  CHECK(std::abs(b.energy(0, 0) - 6.0) < 1e-12);
  CHECK(std::abs(b.energy(2, 1) - 4.0) < 1e-12);
}

TEST_CASE("oblate and prolate splittings agree") {
  std::mt19937 g(3);
  for (int t = 0; t < 10; ++t) {
    const RotationalConstants rc = random_rc(g);
    for (int j = 0; j <= 5; ++j) {
      const auto a = sorted(diagonalize_block(j, rc, TopKind::oblate).energies);
      const auto b = sorted(diagonalize_block(j, rc, TopKind::prolate).energies);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10 * std::max(1.0, std::abs(a[i])));
    }
  }
}

TEST_CASE("eigenvectors respect k parity and p") {
  const SpectrumBlock b = diagonalize_block(5, {2.0, 1.3, 0.7}, TopKind::oblate);
  const auto labels = wang_labels(5);
  for (int c = 0; c < b.vectors.cols(); ++c) {
    const WangLabel lab = b.labels[c];
    double off = 0.0;
    for (int r = 0; r < b.vectors.rows(); ++r)
      if (labels[r].k % 2 != lab.k % 2 || labels[r].p != lab.p) off += b.vectors(r, c) * b.vectors(r, c);
    CHECK(off < 1e-20);
    Eigen::Index imax;
    b.vectors.col(c).cwiseAbs().maxCoeff(&imax);
    CHECK(b.vectors(imax, c) > 0.0);
  }
}

TEST_CASE("p degeneracy is lifted away from the symmetric limit") {
  const AsymmetryPath path = asymmetry_path({2.0, 1.3, 0.7}, TopKind::oblate);
  for (double mu : {-0.8, -0.4, -0.1}) {
    const SpectrumBlock b = diagonalize_block(3, path, mu);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(b.energy(k, 0) - b.energy(k, 1)) > 1e-6);
  }
}

TEST_CASE("trace identity") {
  const RotationalConstants rc{2.0, 1.3, 0.7};
  const AsymmetryPath path = asymmetry_path(rc, TopKind::oblate);
  const PerturbationOperator V = perturbation_operator(rc, TopKind::oblate);
  for (int j = 0; j <= 5; ++j) {
    double sym = 0.0;
    for (int k = -j; k <= j; ++k) sym += symmetric_top_energy(j, std::abs(k), path.A_sym, path.C_sym, TopKind::oblate);
    const double tr = diagonalize_block(j, rc, TopKind::oblate).energies.sum();
    CHECK(std::abs(tr - (sym + path.mu_endpoint * V.matrix(j).trace())) < 1e-10);
  }
}

TEST_CASE("branch tracking") {
  const RotationalConstants rc{2.0, 1.3, 0.7};
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(-1.0 + 0.05 * i);
  grid.back() = 0.0;
  const AsymmetryPath path = asymmetry_path(rc, TopKind::oblate);

  const BranchSet b1 = track_branches(1, rc, TopKind::oblate, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const RotationalConstants c = path.constants_at(grid[i]);
    std::vector<double> got;
    for (int r = 0; r < 3; ++r) got.push_back(b1.energies(r, i));
    std::sort(got.begin(), got.end());
    std::vector<double> want{c.B + c.C, c.A + c.C, c.A + c.B};
    std::sort(want.begin(), want.end());
    for (int r = 0; r < 3; ++r) CHECK(std::abs(got[r] - want[r]) < 1e-10);
  }

  const BranchSet b0 = track_branches(0, rc, TopKind::oblate, grid);
  CHECK(b0.energies.cwiseAbs().maxCoeff() == 0.0);

  const BranchSet b3 = track_branches(3, rc, TopKind::oblate, grid);
  const std::size_t last = grid.size() - 1;
  for (std::size_t r = 0; r < b3.labels.size(); ++r)
    CHECK(std::abs(b3.energies(r, last) -
                   symmetric_top_energy(3, b3.labels[r].k, path.A_sym, path.C_sym, TopKind::oblate)) < 1e-10);
  // overlap continuation agrees with the symmetry-sector labels
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SpectrumBlock sb = diagonalize_block(3, path, grid[i]);
    for (std::size_t r = 0; r < b3.labels.size(); ++r)
      CHECK(std::abs(b3.energies(r, i) - sb.energy(b3.labels[r].k, b3.labels[r].p)) < 1e-10);
  }

  CHECK_THROWS_AS(track_branches(1, rc, TopKind::oblate, {-0.5, -0.2}), DomainError);
  CHECK_THROWS_AS(track_branches(1, rc, TopKind::oblate, {0.0, -0.5}), DomainError);
}
