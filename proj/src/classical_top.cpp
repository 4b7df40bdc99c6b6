// SPDX-License-Identifier: Apache-2.0
#include "rotor/classical_top.hpp"

#include <cmath>
#include <string>

#include "rotor/errors.hpp"

namespace rotor::classical {

Vec7 QuaternionState::packed() const {
  Vec7 x;
  x << q, P;
  return x;
}

QuaternionState QuaternionState::unpack(const Vec7& x) {
  QuaternionState s;
  s.q = x.head<4>();
  s.P = x.tail<3>();
  return s;
}

Eigen::Vector4d quat_mul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  const Eigen::Vector3d u = a.tail<3>(), v = b.tail<3>();
  Eigen::Vector4d out;
  out(0) = a(0) * b(0) - u.dot(v);
  out.tail<3>() = a(0) * v + b(0) * u + u.cross(v);
  return out;
}

Eigen::Vector4d quat_conj(const Eigen::Vector4d& a) { return {a(0), -a(1), -a(2), -a(3)}; }

Eigen::Vector3d inertia_map(const Eigen::Vector3d& P, const RotationalConstants& rc) {
  return {2.0 * rc.A * P(0), 2.0 * rc.B * P(1), 2.0 * rc.C * P(2)};
}

Vec7 drift_field(const Vec7& x, const RotationalConstants& rc) {
  const Eigen::Vector4d q = x.head<4>();
  const Eigen::Vector3d P = x.tail<3>();
  Eigen::Vector4d w;
  w << 0.0, inertia_map(P, rc);
  Vec7 out;
  out.head<4>() = quat_mul(q, w);
  out(4) = 2.0 * (rc.C - rc.B) * P(1) * P(2);
  out(5) = 2.0 * (rc.A - rc.C) * P(0) * P(2);
  out(6) = 2.0 * (rc.B - rc.A) * P(0) * P(1);
  return out;
}

Vec7 control_field(int i, const Vec7& x, const Eigen::Vector3d& delta) {
  if (i < 1 || i > 3) throw DomainError("control_field: index must be 1, 2 or 3");
  const Eigen::Vector4d q = x.head<4>();
  Eigen::Vector4d h = Eigen::Vector4d::Zero();
  h(i) = 1.0;
  const Eigen::Vector3d r = quat_mul(quat_mul(quat_conj(q), h), q).tail<3>();
  Vec7 out = Vec7::Zero();
  out.tail<3>() = 0.5 * r.cross(delta);
  return out;
}

Vec7 lie_bracket_numeric(const Field& f, const Field& g, const Vec7& x, double h) {
  if (!(h > 0.0)) throw DomainError("lie_bracket_numeric: step must be positive");
  const double base = h * std::max(1.0, x.norm());
  auto jvp = [&](const Field& F, const Vec7& v) -> Vec7 {
    const double nv = v.norm();
    if (nv == 0.0) return Vec7::Zero();
    const double e = base / nv;
    return (F(x + e * v) - F(x - e * v)) / (2.0 * e);
  };
  return jvp(g, f(x)) - jvp(f, g(x));
}

Field bracket_field(Field f, Field g, double h) {
  return [f = std::move(f), g = std::move(g), h](const Vec7& x) { return lie_bracket_numeric(f, g, x, h); };
}

namespace {

struct SPolys {
  double S0, S1, S2, S3, S4, S5, S6;
};

SPolys s_polys(const Eigen::Vector4d& q, const Eigen::Vector3d& d) {
  const double q0 = q(0), qa = q(1), qb = q(2), qc = q(3);
  const double da = d(0), db = d(1), dc = d(2);
  const double n1 = q0 * q0 + qa * qa - qb * qb - qc * qc;
  SPolys s{};
  const double t0 = q0 * (-2.0 * qb * da + 2.0 * qa * db) + 2.0 * qc * (qa * da + qb * db) + q0 * q0 * dc -
                    (qa * qa + qb * qb - qc * qc) * dc;
  s.S0 = t0 * t0;
  s.S1 = q0 * qb * db + qa * qc * db - qa * qb * dc + q0 * qc * dc;
  s.S2 = 2.0 * q0 * da * (qc * db - qb * dc) - 2.0 * qa * da * (qb * db + qc * dc) + n1 * (db * db + dc * dc);
  s.S3 = -2.0 * qa * qb * da + 2.0 * q0 * qc * da + n1 * db;
  s.S4 = -2.0 * (q0 * qb + qa * qc) * (da * da + db * db) + (n1 * da + 2.0 * qa * qb * db - 2.0 * q0 * qc * db) * dc;
  s.S5 = -2.0 * (q0 * qb + qa * qc) * da + n1 * dc;
  s.S6 = n1 * da * db + 2.0 * qa * qc * db * dc - 2.0 * qa * qb * (da * da + dc * dc) +
         2.0 * q0 * (qb * db * dc + qc * (da * da + dc * dc));
  return s;
}

}  // namespace

double closed_form_S(const Eigen::Vector4d& q, const Eigen::Vector3d& delta, const RotationalConstants& rc) {
  const SPolys s = s_polys(q, delta);
  const double A = rc.A, B = rc.B, C = rc.C;
  const double abc = A * B * C;
  return -2.0 * abc * abc * q(0) * s.S0 *
         (s.S1 * s.S2 / (2.0 * B * C) + (s.S3 * s.S4 / (2.0 * B) - s.S5 * s.S6 / (2.0 * C)) / (2.0 * A));
}

double closed_form_S_as_printed(const Eigen::Vector4d& q, const Eigen::Vector3d& delta, const RotationalConstants& rc) {
  const SPolys s = s_polys(q, delta);
  const double A = rc.A, B = rc.B, C = rc.C;
  return 2.0 * A * B * C * q(0) * s.S0 *
         (s.S1 * s.S2 / (4.0 * A * B * C) + (s.S3 * s.S4 / (2.0 * B) - s.S5 * s.S6 / (2.0 * C)) / (2.0 * A));
}

std::vector<FieldId> default_field_set() {
  return {FieldId::X,   FieldId::Y1,  FieldId::Y2,    FieldId::Y3,    FieldId::XY1,
          FieldId::XY2, FieldId::XY3, FieldId::XY1Y1, FieldId::XY2Y2, FieldId::XY3Y3};
}

Field make_field(FieldId id, const Eigen::Vector3d& delta, const RotationalConstants& rc) {
  const Field X = [rc](const Vec7& x) { return drift_field(x, rc); };
  auto Y = [delta](int i) -> Field { return [delta, i](const Vec7& x) { return control_field(i, x, delta); }; };
  switch (id) {
    case FieldId::X: return X;
    case FieldId::Y1: return Y(1);
    case FieldId::Y2: return Y(2);
    case FieldId::Y3: return Y(3);
    case FieldId::XY1: return bracket_field(X, Y(1));
    case FieldId::XY2: return bracket_field(X, Y(2));
    case FieldId::XY3: return bracket_field(X, Y(3));
    case FieldId::XY1Y1: return bracket_field(bracket_field(X, Y(1), kNestedStep), Y(1), kNestedStep);
    case FieldId::XY2Y2: return bracket_field(bracket_field(X, Y(2), kNestedStep), Y(2), kNestedStep);
    case FieldId::XY3Y3: return bracket_field(bracket_field(X, Y(3), kNestedStep), Y(3), kNestedStep);
  }
  throw DomainError("make_field: unknown field");
}

Eigen::Matrix<double, 7, 6> bracket_matrix(const QuaternionState& s, const Eigen::Vector3d& delta,
                                           const RotationalConstants& rc) {
  const Vec7 x = s.packed();
  const FieldId ids[6] = {FieldId::X, FieldId::Y1, FieldId::Y2, FieldId::XY1, FieldId::XY2, FieldId::XY1Y1};
  Eigen::Matrix<double, 7, 6> M;
  for (int c = 0; c < 6; ++c) M.col(c) = make_field(ids[c], delta, rc)(x);
  return M;
}

double bracket_determinant(const QuaternionState& s, const Eigen::Vector3d& delta, const RotationalConstants& rc) {
  const Eigen::Matrix<double, 6, 6> M = bracket_matrix(s, delta, rc).bottomRows<6>();
  return M.determinant();
}

int rank_at(const QuaternionState& s, const Eigen::Vector3d& delta, const RotationalConstants& rc,
            const std::vector<FieldId>& fields, double tol_svd) {
  if (fields.empty()) return 0;
  const Vec7 x = s.packed();
  const Eigen::Vector4d q = s.q.normalized();
  Eigen::Matrix<double, 7, 7> proj = Eigen::Matrix<double, 7, 7>::Identity();
  proj.topLeftCorner<4, 4>() -= q * q.transpose();
  Eigen::MatrixXd M(7, static_cast<Eigen::Index>(fields.size()));
  for (std::size_t c = 0; c < fields.size(); ++c) M.col(c) = proj * make_field(fields[c], delta, rc)(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 1e-14) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol_svd * sv(0)) ++r;
  return r;
}

double rotational_energy(const Eigen::Vector3d& P, const RotationalConstants& rc) {
  return rc.A * P(0) * P(0) + rc.B * P(1) * P(1) + rc.C * P(2) * P(2);
}

std::vector<Sample> simulate(const QuaternionState& s0, const ControlSignal& u, const RotationalConstants& rc,
                             const Eigen::Vector3d& delta, double T, double dt, int stride) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw DomainError("simulate: need dt > 0 and T >= 0");
  if (stride < 1) throw DomainError("simulate: stride must be >= 1");
  auto rhs = [&](double t, const Vec7& x) -> Vec7 {
    Vec7 f = drift_field(x, rc);
    const std::array<double, 3> c = u ? u(t) : std::array<double, 3>{0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i)
      if (c[i] != 0.0) f += c[i] * control_field(i + 1, x, delta);
    return f;
  };

  Vec7 x = s0.packed();
  x.head<4>().normalize();
  std::vector<Sample> out{{0.0, QuaternionState::unpack(x)}};
  const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
  double t = 0.0;
  for (long n = 1; n <= steps; ++n) {
    const double h = std::min(dt, T - t);
    const Vec7 k1 = rhs(t, x);
    const Vec7 k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const Vec7 k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const Vec7 k4 = rhs(t + h, x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = n == steps ? T : t + h;
    if (!x.allFinite()) throw NumericError("simulate: non-finite state at step " + std::to_string(n));
    x.head<4>().normalize();
    if (n % stride == 0 || n == steps) out.push_back({t, QuaternionState::unpack(x)});
  }
  return out;
}

}  // namespace rotor::classical
