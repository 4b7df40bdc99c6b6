// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rotor/rotor_hamiltonian.hpp"

namespace rotor::classical {

using Vec7 = Eigen::Matrix<double, 7, 1>;

/// Unit quaternion q = (q0, qa, qb, qc) and body angular momentum P = (Pa, Pb, Pc).
struct QuaternionState {
  Eigen::Vector4d q{1.0, 0.0, 0.0, 0.0};
  Eigen::Vector3d P{0.0, 0.0, 0.0};

  Vec7 packed() const;
  static QuaternionState unpack(const Vec7& x);
};

/// Hamilton product.
Eigen::Vector4d quat_mul(const Eigen::Vector4d& a, const Eigen::Vector4d& b);
Eigen::Vector4d quat_conj(const Eigen::Vector4d& a);

/// (2A Pa, 2B Pb, 2C Pc).
Eigen::Vector3d inertia_map(const Eigen::Vector3d& P, const RotationalConstants& rc);

/// Drift X: dq = q * rho(P), dP = (2(C-B) Pb Pc, 2(A-C) Pa Pc, 2(B-A) Pa Pb).
Vec7 drift_field(const Vec7& x, const RotationalConstants& rc);

/// Control field Y_i, i in {1, 2, 3}: zero q part, P part (conj(q) h q) x delta / 2 with h = i, j, k.
Vec7 control_field(int i, const Vec7& x, const Eigen::Vector3d& delta);

using Field = std::function<Vec7(const Vec7&)>;

/// Step for doubly nested brackets; the fields are low-degree polynomials, so roundoff dominates truncation.
inline constexpr double kNestedStep = 1e-2;

/// [f, g](x) = Dg(x) f(x) - Df(x) g(x) by central differences with step h * max(1, |x|).
Vec7 lie_bracket_numeric(const Field& f, const Field& g, const Vec7& x, double h = 1e-5);
Field bracket_field(Field f, Field g, double h = 1e-5);

/// Closed-form factor S with D = S <P, delta>.
double closed_form_S(const Eigen::Vector4d& q, const Eigen::Vector3d& delta, const RotationalConstants& rc);
/// Same polynomial with the prefactors as they are usually printed; kept for comparison.
double closed_form_S_as_printed(const Eigen::Vector4d& q, const Eigen::Vector3d& delta, const RotationalConstants& rc);

/// Columns X, Y1, Y2, [X,Y1], [X,Y2], [[X,Y1],Y1] at the state.
Eigen::Matrix<double, 7, 6> bracket_matrix(const QuaternionState& s, const Eigen::Vector3d& delta,
                                           const RotationalConstants& rc);

/// Determinant of bracket_matrix with its first row removed.
double bracket_determinant(const QuaternionState& s, const Eigen::Vector3d& delta, const RotationalConstants& rc);

enum class FieldId { X, Y1, Y2, Y3, XY1, XY2, XY3, XY1Y1, XY2Y2, XY3Y3 };

std::vector<FieldId> default_field_set();
Field make_field(FieldId id, const Eigen::Vector3d& delta, const RotationalConstants& rc);

/// Rank of the evaluated fields after projecting out the q-radial direction.
int rank_at(const QuaternionState& s, const Eigen::Vector3d& delta, const RotationalConstants& rc,
            const std::vector<FieldId>& fields, double tol_svd = 1e-8);

struct Sample {
  double t = 0.0;
  QuaternionState state;
};

using ControlSignal = std::function<std::array<double, 3>(double t)>;

/// RK4 with quaternion renormalization after every step; records every `stride` steps and the end point.
std::vector<Sample> simulate(const QuaternionState& s0, const ControlSignal& u, const RotationalConstants& rc,
                             const Eigen::Vector3d& delta, double T, double dt, int stride = 1);

double rotational_energy(const Eigen::Vector3d& P, const RotationalConstants& rc);

}  // namespace rotor::classical
