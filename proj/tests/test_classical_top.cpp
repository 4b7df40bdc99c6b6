// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "rotor/classical_top.hpp"
#include "rotor/errors.hpp"

using namespace rotor;
using namespace rotor::classical;

namespace {

const RotationalConstants kRc{2.0, 1.3, 0.7};

Vec7 state_vec(const Eigen::Vector4d& q, const Eigen::Vector3d& P) {
  Vec7 x;
  x << q, P;
  return x;
}

QuaternionState random_state(std::mt19937& g) {
  std::normal_distribution<double> N;
  QuaternionState s;
  s.q = Eigen::Vector4d(N(g), N(g), N(g), N(g)).normalized();
  s.P = Eigen::Vector3d(N(g), N(g), N(g));
  return s;
}

// Y_1 and Y_2 momentum rows written out component by component.
Eigen::Vector3d y1_rows(const Eigen::Vector4d& q, const Eigen::Vector3d& d) {
  const double q0 = q(0), qa = q(1), qb = q(2), qc = q(3);
  const double n = q0 * q0 + qa * qa - qb * qb - qc * qc;
  return {(qa * qb - q0 * qc) * d(2) - (qa * qc + q0 * qb) * d(1), (qa * qc + q0 * qb) * d(0) - 0.5 * n * d(2),
          0.5 * n * d(1) - (qa * qb - q0 * qc) * d(0)};
}

Eigen::Vector3d y2_rows(const Eigen::Vector4d& q, const Eigen::Vector3d& d) {
  const double q0 = q(0), qa = q(1), qb = q(2), qc = q(3);
  const double n = q0 * q0 - qa * qa + qb * qb - qc * qc;
  return {0.5 * n * d(2) - (qb * qc - q0 * qa) * d(1), (qb * qc - q0 * qa) * d(0) - (qa * qb + q0 * qc) * d(2),
          (qa * qb + q0 * qc) * d(1) - 0.5 * n * d(0)};
}

}  // namespace

TEST_CASE("drift field") {
  const Vec7 eq = drift_field(state_vec({0.5, 0.5, 0.5, 0.5}, {1, 0, 0}), kRc);
  CHECK(eq.tail<3>().norm() == 0.0);
  const Vec7 x = drift_field(state_vec({1, 0, 0, 0}, {1, 0, 0}), kRc);
  CHECK((x.head<4>() - Eigen::Vector4d(0, 2 * kRc.A, 0, 0)).norm() < 1e-15);
  CHECK(drift_field(state_vec({1, 0, 0, 0}, {0, 0, 0}), kRc).norm() == 0.0);
}

TEST_CASE("control fields") {
  const Vec7 id = state_vec({1, 0, 0, 0}, {0, 0, 0});
  CHECK((control_field(1, id, {0, 0, 1}).tail<3>() - Eigen::Vector3d(0, -0.5, 0)).norm() < 1e-15);
  CHECK((control_field(3, id, {0, 1, 0}).tail<3>() - Eigen::Vector3d(-0.5, 0, 0)).norm() < 1e-15);
  for (int i = 1; i <= 3; ++i) CHECK(control_field(i, id, {0, 0, 0}).norm() == 0.0);
  CHECK_THROWS_AS(control_field(4, id, {1, 0, 0}), DomainError);

  std::mt19937 g(5);
  std::normal_distribution<double> N;
  for (int t = 0; t < 20; ++t) {
    const QuaternionState s = random_state(g);
    const Eigen::Vector3d d(N(g), N(g), N(g));
    CHECK((control_field(1, s.packed(), d).tail<3>() - y1_rows(s.q, d)).norm() < 1e-14);
    CHECK((control_field(2, s.packed(), d).tail<3>() - y2_rows(s.q, d)).norm() < 1e-14);
  }
}

TEST_CASE("tangency") {
  std::mt19937 g(6);
  std::normal_distribution<double> N;
  for (int t = 0; t < 20; ++t) {
    const QuaternionState s = random_state(g);
    const Eigen::Vector3d d(N(g), N(g), N(g));
    CHECK(std::abs(s.q.dot(drift_field(s.packed(), kRc).head<4>())) < 1e-14);
    for (int i = 1; i <= 3; ++i) CHECK(control_field(i, s.packed(), d).head<4>().norm() == 0.0);
  }
}

TEST_CASE("bracket identities") {
  std::mt19937 g(8);
  std::normal_distribution<double> N;
  const Eigen::Vector3d d(0.4, -0.9, 0.3);
  const Field X = make_field(FieldId::X, d, kRc);
  const Field Y1 = make_field(FieldId::Y1, d, kRc), Y2 = make_field(FieldId::Y2, d, kRc);
  const Field Y3 = make_field(FieldId::Y3, d, kRc);
  for (int t = 0; t < 10; ++t) {
    const Vec7 x = random_state(g).packed();
    CHECK(lie_bracket_numeric(X, X, x).norm() < 1e-8);
    CHECK(lie_bracket_numeric(Y1, Y2, x).norm() < 1e-7);
    CHECK(lie_bracket_numeric(Y2, Y3, x).norm() < 1e-7);
    CHECK((lie_bracket_numeric(X, Y1, x) + lie_bracket_numeric(Y1, X, x)).norm() < 1e-9);
    // Jacobi
    const Field XY1 = bracket_field(X, Y1, 1e-4), Y1Y2 = bracket_field(Y1, Y2, 1e-4), Y2X = bracket_field(Y2, X, 1e-4);
    const Vec7 jac = lie_bracket_numeric(XY1, Y2, x, 1e-3) + lie_bracket_numeric(Y1Y2, X, x, 1e-3) +
                     lie_bracket_numeric(Y2X, Y1, x, 1e-3);
    CHECK(jac.norm() < 1e-5);
  }
}

TEST_CASE("closed form factor") {
  const Eigen::Vector3d d(0.3, 0.5, -0.8);
  CHECK(closed_form_S({0.0, 0.6, 0.0, 0.8}, d, kRc) == 0.0);
  CHECK(closed_form_S({0.5, 0.5, 0.5, 0.5}, {0, 0, 0}, kRc) == 0.0);

  std::mt19937 g(10);
  for (int t = 0; t < 50; ++t) {
    const QuaternionState s = random_state(g);
    const double D = bracket_determinant(s, d, kRc);
    const double cf = closed_form_S(s.q, d, kRc) * s.P.dot(d);
    CHECK(std::abs(D - cf) <= 1e-5 * std::abs(cf));
  }
  QuaternionState s0 = random_state(g);
  s0.P.setZero();
  CHECK(std::abs(bracket_determinant(s0, d, kRc)) < 1e-12);
}

TEST_CASE("rank") {
  std::mt19937 g(12);
  const auto all = default_field_set();
  for (const Eigen::Vector3d& d : {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0.3, 0.5, -0.8)})
    for (int t = 0; t < 10; ++t) CHECK(rank_at(random_state(g), d, kRc, all) == 6);

  QuaternionState s = random_state(g);
  s.P.setZero();
  CHECK(rank_at(s, {0.3, 0.5, -0.8}, kRc, {FieldId::Y1, FieldId::Y2, FieldId::Y3}) <= 3);
  CHECK(rank_at(s, {0, 0, 0}, kRc, all) == 0);
}

TEST_CASE("simulation") {
  std::mt19937 g(13);
  for (int t = 0; t < 3; ++t) {
    const QuaternionState s0 = random_state(g);
    const auto traj = simulate(s0, nullptr, kRc, {0.2, 0.1, 0.4}, 2.0, 1e-3, 100);
    const double n0 = s0.P.squaredNorm(), e0 = rotational_energy(s0.P, kRc);
    for (const auto& smp : traj) {
      CHECK(std::abs(smp.state.P.squaredNorm() - n0) < 1e-8 * n0);
      CHECK(std::abs(rotational_energy(smp.state.P, kRc) - e0) < 1e-8 * e0);
      CHECK(std::abs(smp.state.q.norm() - 1.0) < 1e-9);
    }
    CHECK(traj.back().t == doctest::Approx(2.0));
  }

  QuaternionState eq;
  eq.P = Eigen::Vector3d(1, 0, 0);
  for (const auto& smp : simulate(eq, nullptr, kRc, {0, 0, 1}, 1.0, 1e-3, 50))
    CHECK((smp.state.P - eq.P).norm() < 1e-14);

  const QuaternionState s0 = random_state(g);
  const ControlSignal u = [](double) { return std::array<double, 3>{0.7, -0.3, 0.5}; };
  const auto free = simulate(s0, nullptr, kRc, {0, 0, 0}, 1.0, 1e-3, 1000);
  const auto ctrl = simulate(s0, u, kRc, {0, 0, 0}, 1.0, 1e-3, 1000);
  CHECK((free.back().state.packed() - ctrl.back().state.packed()).norm() == 0.0);

  const auto driven = simulate(s0, u, kRc, {0.3, 0.5, -0.8}, 1.0, 1e-3, 1000);
  const double e0 = rotational_energy(s0.P, kRc);
  CHECK(std::abs(rotational_energy(driven.back().state.P, kRc) - e0) > 1e-4 * e0);

  CHECK_THROWS_AS(simulate(s0, nullptr, kRc, {0, 0, 0}, 1.0, 0.0), DomainError);
}
