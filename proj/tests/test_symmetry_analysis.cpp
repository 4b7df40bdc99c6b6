// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rotor/errors.hpp"
#include "rotor/symmetry_analysis.hpp"

using namespace rotor;

TEST_CASE("wang parity classes") {
  CHECK(classify_wang({1, 1, 0, 0}, Family::K) == Parity::odd);
  CHECK(classify_wang({1, 1, 0, 0}, Family::L) == Parity::even);
  for (Family f : {Family::K, Family::G, Family::L}) CHECK(classify_wang({0, 0, 0, 0}, f) == Parity::even);
}

TEST_CASE("classes partition each level") {
  for (Family f : {Family::K, Family::G, Family::L}) {
    int even = 0, odd = 0;
    for (int i = 0; i < level_offset(4); ++i) (classify_wang(wang_index_at(i), f) == Parity::even ? even : odd)++;
    CHECK(even + odd == level_offset(4));
  }
}

TEST_CASE("dipole classes") {
  const double s = 1.0 / std::sqrt(3.0);
  auto c = classify_dipole({0, 0, 1});
  CHECK(c.kind == DipoleClassKind::axis_c);
  CHECK(c.obstruction == Family::K);
  c = classify_dipole({0, 1, 0});
  CHECK(c.kind == DipoleClassKind::axis_b);
  CHECK(c.obstruction == Family::L);
  c = classify_dipole({1, 0, 0});
  CHECK(c.kind == DipoleClassKind::axis_a);
  CHECK(c.obstruction == Family::G);
  c = classify_dipole({s, s, s});
  CHECK(c.kind == DipoleClassKind::generic);
  CHECK(!c.obstruction);
  CHECK(classify_dipole({0.6, 0.8, 0.0}).kind == DipoleClassKind::generic_in_ab_plane);
  CHECK(classify_dipole({1.0, 0.0, 1e-14}).kind == DipoleClassKind::axis_a);
  CHECK_THROWS_AS(classify_dipole({0, 0, 0}), DomainError);
}

TEST_CASE("invariance certificates") {
  const RotationalConstants rc{2.0, 1.3, 0.7};
  CHECK(invariance_certificate({0, 0, 1}, Family::K, 4, rc).invariant());
  CHECK(invariance_certificate({1, 0, 0}, Family::G, 4, rc).invariant());
  CHECK(invariance_certificate({0, 1, 0}, Family::L, 4, rc).invariant());

  const double s = 1.0 / std::sqrt(3.0);
  for (Family f : {Family::K, Family::G, Family::L}) {
    const InvarianceReport r = invariance_certificate({s, s, s}, f, 3, rc);
    CHECK(r.hamiltonian_norm == 0.0);
    CHECK(r.max_norm() > 1e-3);
    CHECK(std::abs(r.witness.value) > 1e-3);
    CHECK(classify_wang(r.witness.bra, f) != classify_wang(r.witness.ket, f));
  }
}

TEST_CASE("propagator leakage") {
  const RotationalConstants rc{2.0, 1.3, 0.7};
  for (double t : {0.3, 1.0}) {
    CHECK(propagator_leakage({0, 0, 1}, Family::K, 3, rc, {0.4, -0.7, 0.2}, t, 5) < 1e-8);
    CHECK(propagator_leakage({0, 1, 0}, Family::L, 3, rc, {0.4, -0.7, 0.2}, t, 5) < 1e-8);
  }
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(propagator_leakage({s, s, s}, Family::K, 3, rc, {0.4, -0.7, 0.2}, 1.0, 5) > 1e-6);
}
