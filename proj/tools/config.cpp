// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "rotor/errors.hpp"

namespace rotorctl {

using nlohmann::json;

rotor::DipoleMoment MoleculeConfig::dipole_moment(rotor::Convention c) const {
  return {dipole[0], dipole[1], dipole[2], c};
}

std::vector<double> MoleculeConfig::mu_grid() const {
  if (mu_points < 1) throw rotor::DomainError("mu_grid needs at least one point");
  if (mu_points == 1) return {0.0};
  std::vector<double> g(mu_points);
  for (int i = 0; i < mu_points; ++i) g[i] = -1.0 + static_cast<double>(i) / (mu_points - 1);
  g.back() = 0.0;
  return g;
}

json MoleculeConfig::echo() const {
  return {{"name", name},
          {"units", units},
          {"constants", {{"A", constants.A}, {"B", constants.B}, {"C", constants.C}}},
          {"dipole", dipole},
          {"relabel", relabel},
          {"jmax", jmax},
          {"mu_points", mu_points}};
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

MoleculeConfig parse_config(const json& j) {
  MoleculeConfig c;
  try {
    if (!j.is_object()) throw rotor::DomainError("config must be a JSON object");
    c.name = get_or<std::string>(j, "name", c.name);
    c.units = get_or<std::string>(j, "units", c.units);
    if (!j.contains("constants")) throw rotor::DomainError("config: missing constants");
    const json& k = j.at("constants");
    const std::array<double, 3> abc{k.at("A").get<double>(), k.at("B").get<double>(), k.at("C").get<double>()};
    const auto d = get_or<std::array<double, 3>>(j, "dipole", c.dipole);

    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return abc[x] > abc[y]; });
    c.constants = {abc[order[0]], abc[order[1]], abc[order[2]]};
    for (int i = 0; i < 3; ++i) {
      c.dipole[i] = d[order[i]];
      c.relabel[i] = "abc"[order[i]];
    }
    rotor::validate(c.constants);

    c.jmax = get_or<int>(j, "jmax", c.jmax);
    c.mu_points = get_or<int>(j, "mu_points", c.mu_points);
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      c.tol_res = get_or<double>(t, "tol_res", c.tol_res);
      c.tol_svd = get_or<double>(t, "tol_svd", c.tol_svd);
    }
    if (j.contains("classical")) {
      const json& s = j.at("classical");
      auto& cs = c.classical;
      cs.T = get_or<double>(s, "T", cs.T);
      cs.dt = get_or<double>(s, "dt", cs.dt);
      cs.stride = get_or<int>(s, "stride", cs.stride);
      cs.samples = get_or<int>(s, "samples", cs.samples);
      cs.seed = get_or<unsigned>(s, "seed", cs.seed);
      cs.u = get_or<std::array<double, 3>>(s, "u", cs.u);
      cs.q0 = get_or<std::array<double, 4>>(s, "q0", cs.q0);
      cs.P0 = get_or<std::array<double, 3>>(s, "P0", cs.P0);
    }
  } catch (const json::exception& e) {
    throw rotor::DomainError(std::string("config: ") + e.what());
  }
  if (c.jmax < 0) throw rotor::DomainError("config: jmax must be >= 0");
  return c;
}

MoleculeConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rotor::DomainError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw rotor::DomainError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace rotorctl
