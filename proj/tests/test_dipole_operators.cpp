// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "rotor/dipole_operators.hpp"
#include "rotor/errors.hpp"
#include "rotor/so3_oracle.hpp"
#include "rotor/symmetry_analysis.hpp"

using namespace rotor;
using cd = std::complex<double>;

TEST_CASE("axis element on level 1") {
  const DipoleMoment d{0.0, 0.0, 1.0, Convention::oblate};
  CHECK(std::abs(coef_g(1, 1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(wigner_element(3, {1, 1, 1}, {1, 1, 1}, d) - cd(0.0, 0.5)) < 1e-14);
}

TEST_CASE("selection rule in j") {
  const DipoleMoment d{0.3, -0.4, 0.8, Convention::oblate};
  for (int l = 1; l <= 3; ++l)
    for (int k = -2; k <= 2; ++k)
      for (int m = -2; m <= 2; ++m) CHECK(wigner_element(l, {0, 0, 0}, {2, k, m}, d) == cd(0.0, 0.0));
}

TEST_CASE("ground to first level, l = 1") {
  const double da = 0.6, db = -0.3;
  const DipoleMoment d{da, db, 0.2, Convention::oblate};
  const Eigen::Vector3d ix = d.indexed();
  CHECK(std::abs(coef_c(0, 0, 0) - 2.0 / (4.0 * std::sqrt(3.0))) < 1e-15);
  const cd expect = cd(0.0, 1.0) * coef_c(0, 0, 0) * cd(ix(1), ix(0));
  CHECK(std::abs(wigner_element(1, {0, 0, 0}, {1, 1, 1}, d) - expect) < 1e-14);
  CHECK(std::abs(std::abs(wigner_element(1, {0, 0, 0}, {1, 1, 1}, d)) - coef_c(0, 0, 0) * std::hypot(da, db)) < 1e-14);
}

TEST_CASE("wang elements for a pure index-1 dipole") {
  // oblate: index 1 is axis b
  const DipoleMoment d{0.0, 0.7, 0.0, Convention::oblate};
  const double d1 = d.indexed()(0);
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k < j; ++k)
      for (int m = -j; m < j; ++m) {
        for (int p = 0; p <= 1; ++p) {
          const cd v = wang_element(1, {j, k, m, p}, {j + 1, k + 1, m + 1, p}, d);
          CHECK(std::abs(v + coef_c(j, k, m) * d1) < 1e-13);
          CHECK(std::abs(wang_element(1, {j, k, m, p}, {j, k + 1, m + 1, p}, d)) < 1e-14);
        }
        const cd h = wang_element(1, {j, k, m, 0}, {j, k + 1, m + 1, 1}, d);
        CHECK(std::abs(h + coef_h(j, k, m) * d1) < 1e-13);
      }
}

TEST_CASE("axis c dipole keeps k in the wang basis") {
  const DipoleMoment d{0.0, 0.0, 1.3, Convention::oblate};
  const Eigen::MatrixXcd H = level_operator(1, 0, 3, d, Representation::wang);
  for (int a = 0; a < H.rows(); ++a)
    for (int b = 0; b < H.cols(); ++b)
      if (wang_index_at(a).k != wang_index_at(b).k) CHECK(H(a, b) == cd(0.0, 0.0));
}

TEST_CASE("hermiticity in every representation") {
  const DipoleMoment d{0.5, -0.2, 0.9, Convention::oblate};
  std::vector<SpectrumBlock> spectra;
  for (int j = 0; j <= 3; ++j) spectra.push_back(diagonalize_block(j, {2.0, 1.3, 0.7}, TopKind::oblate));
  for (auto rep : {Representation::wigner, Representation::wang, Representation::eigen})
    for (int l = 1; l <= 3; ++l) {
      const Eigen::MatrixXcd H = level_operator(l, 0, 3, d, rep, spectra);
      CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  CHECK_THROWS_AS(level_operator(1, 0, 2, d, Representation::eigen), PreconditionError);
}

TEST_CASE("parity bookkeeping per dipole axis") {
  struct Case {
    DipoleMoment d;
    Family f;
  };
  // oblate map: index 1 = b, index 2 = a, index 3 = c
  const Case cases[] = {{{0.0, 1.0, 0.0, Convention::oblate}, Family::L},
                        {{1.0, 0.0, 0.0, Convention::oblate}, Family::G},
                        {{0.0, 0.0, 1.0, Convention::oblate}, Family::K}};
  for (const auto& c : cases)
    for (int l = 1; l <= 3; ++l) {
      const Eigen::MatrixXcd H = level_operator(l, 0, 3, c.d, Representation::wang);
      for (int a = 0; a < H.rows(); ++a)
        for (int b = 0; b < H.cols(); ++b)
          if (std::abs(H(a, b)) > 0.0)
            CHECK(classify_wang(wang_index_at(a), c.f) == classify_wang(wang_index_at(b), c.f));
    }
}

TEST_CASE("table matches quadrature") {
  const OracleTable t(2, make_grid(2));
  std::mt19937 g(11);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 2; ++trial) {
    const DipoleMoment d{N(g), N(g), N(g), trial == 0 ? Convention::oblate : Convention::prolate};
    for (int l = 1; l <= 3; ++l) {
      const Eigen::MatrixXcd O = t.element_matrix(l, d);
      const Eigen::MatrixXcd W = level_operator(l, 0, 2, d, Representation::wigner);
      // W(a, b) = -i conj(<D_a, iH D_b>) = <D_b, H D_a> = O(b, a)
      CHECK((W - O.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("control blocks span levels j and j+1") {
  const ControlOperatorBlock b = build_control_blocks(1, {0.2, 0.3, 0.4, Convention::oblate}, Representation::wang);
  for (const auto& M : b.matrices) CHECK(M.rows() == 34);
}
