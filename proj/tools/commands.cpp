// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rotor/basis.hpp"
#include "rotor/classical_top.hpp"
#include "rotor/errors.hpp"
#include "rotor/lie_galerkin.hpp"
#include "rotor/so3_oracle.hpp"
#include "rotor/symmetry_analysis.hpp"

namespace rotorctl {

using nlohmann::json;
using namespace rotor;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "0.1.0";

TopKind parse_kind(const std::string& s) {
  if (s == "oblate") return TopKind::oblate;
  if (s == "prolate") return TopKind::prolate;
  throw DomainError("unknown top kind " + s);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

json tolerances(const MoleculeConfig& c) {
  return {{"tol_res", c.tol_res}, {"tol_svd", c.tol_svd}, {"degeneracy", kDegeneracyTol}};
}

classical::QuaternionState random_state(std::mt19937& rng) {
  std::normal_distribution<double> N;
  classical::QuaternionState s;
  s.q = Eigen::Vector4d(N(rng), N(rng), N(rng), N(rng)).normalized();
  s.P = Eigen::Vector3d(N(rng), N(rng), N(rng));
  return s;
}

// Inverse of the (j, k, m) level-major ordering.
WignerIndex wigner_index_at(int pos) {
  int j = 0;
  while (level_offset(j + 1) <= pos) ++j;
  const int r = pos - level_offset(j), n = 2 * j + 1;
  return {j, r / n - j, r % n - j};
}

Eigen::Vector3d dipole_vec(const MoleculeConfig& c) { return {c.dipole[0], c.dipole[1], c.dipole[2]}; }

}  // namespace

CommandResult cmd_spectrum(const RunContext& ctx, const std::string& kind_name) {
  const auto& c = ctx.config;
  const TopKind kind = parse_kind(kind_name);
  CommandResult r;
  std::ostringstream csv;
  csv << "j,tau,k,p,energy\n";
  json levels = json::array();
  for (int j = 0; j <= c.jmax; ++j) {
    const SpectrumBlock sb = diagonalize_block(j, c.constants, kind);
    json e = json::array(), labels = json::array();
    for (int t = 0; t < sb.energies.size(); ++t) {
      e.push_back(sb.energies(t));
      labels.push_back({sb.labels[t].k, sb.labels[t].p});
      csv << j << "," << t - j << "," << sb.labels[t].k << "," << sb.labels[t].p << "," << fmt(sb.energies(t)) << "\n";
    }
    levels.push_back({{"j", j}, {"energies", e}, {"labels_kp", labels}});
  }
  const AsymmetryParams ap = asymmetry_params(c.constants);
  r.payload = {{"kind", kind_name}, {"mu_o", ap.mu_o}, {"mu_p", ap.mu_p}, {"levels", levels}};
  r.csv = csv.str();
  return r;
}

CommandResult cmd_dipole(const RunContext& ctx, const std::string& rep_name) {
  const auto& c = ctx.config;
  Representation rep = Representation::wigner;
  if (rep_name == "wang") rep = Representation::wang;
  else if (rep_name == "eigen") rep = Representation::eigen;
  else if (rep_name != "wigner") throw DomainError("unknown representation " + rep_name);
  const DipoleMoment d = c.dipole_moment();
  std::vector<SpectrumBlock> spectra;
  for (int j = 0; j <= c.jmax; ++j) spectra.push_back(diagonalize_block(j, c.constants, kind_of(d.convention)));

  CommandResult r;
  std::ostringstream csv;
  csv << "l,j,j2,frobenius\n";
  json ops = json::array();
  for (int l = 1; l <= 3; ++l) {
    const Eigen::MatrixXcd H = level_operator(l, 0, c.jmax, d, rep, spectra);
    const Eigen::MatrixXcd W = level_operator(l, 0, c.jmax, d, Representation::wigner);
    double violation = 0.0;
    for (int a = 0; a < W.rows(); ++a)
      for (int b = 0; b < W.cols(); ++b) {
        const WignerIndex ia = wigner_index_at(a), ib = wigner_index_at(b);
        if (std::abs(ia.j - ib.j) > 1 || std::abs(ia.k - ib.k) > 1 || std::abs(ia.m - ib.m) > 1)
          violation = std::max(violation, std::abs(W(a, b)));
      }
    json blocks = json::array();
    for (int j = 0; j <= c.jmax; ++j)
      for (int j2 = j; j2 <= std::min(j + 1, c.jmax); ++j2) {
        const double nrm =
            H.block(level_offset(j), level_offset(j2), level_size(j), level_size(j2)).norm();
        blocks.push_back({{"j", j}, {"j2", j2}, {"frobenius", nrm}});
        csv << l << "," << j << "," << j2 << "," << fmt(nrm) << "\n";
      }
    ops.push_back({{"l", l},
                   {"hermiticity_residual", (H - H.adjoint()).cwiseAbs().maxCoeff()},
                   {"selection_rule_violation", violation},
                   {"blocks", blocks}});
  }
  r.payload = {{"representation", rep_name}, {"convention", to_string(d.convention)}, {"operators", ops}};
  r.csv = csv.str();
  return r;
}

CommandResult cmd_symmetry(const RunContext& ctx) {
  const auto& c = ctx.config;
  const DipoleMoment d = c.dipole_moment();
  const DipoleClass dc = classify_dipole(d);
  const int jmax = std::max(1, c.jmax);
  CommandResult r;
  std::ostringstream csv;
  csv << "family,H,H1,H2,H3,invariant\n";
  json certs = json::array();
  for (Family f : {Family::K, Family::G, Family::L}) {
    const InvarianceReport rep = invariance_certificate(d, f, jmax, c.constants);
    const auto& w = rep.witness;
    certs.push_back({{"family", to_string(f)},
                     {"hamiltonian_norm", rep.hamiltonian_norm},
                     {"control_norms", rep.control_norms},
                     {"invariant", rep.invariant()},
                     {"witness",
                      {{"l", w.l},
                       {"bra", {w.bra.j, w.bra.k, w.bra.m, w.bra.p}},
                       {"ket", {w.ket.j, w.ket.k, w.ket.m, w.ket.p}},
                       {"abs", std::abs(w.value)}}}});
    csv << to_string(f) << "," << fmt(rep.hamiltonian_norm);
    for (double v : rep.control_norms) csv << "," << fmt(v);
    csv << "," << (rep.invariant() ? 1 : 0) << "\n";
  }
  r.payload = {{"class", to_string(dc.kind)},
               {"obstruction", dc.obstruction ? json(to_string(*dc.obstruction)) : json(nullptr)},
               {"zero_tolerance", dc.tolerance},
               {"jmax", jmax},
               {"invariance_tolerance", 1e-10},
               {"certificates", certs}};
  r.csv = csv.str();
  return r;
}

CommandResult cmd_controllability(const RunContext& ctx) {
  const auto& c = ctx.config;
  VerdictOptions opt;
  opt.jmax = c.jmax;
  opt.mu_grid = c.mu_grid();
  opt.tol_res = c.tol_res;
  const Verdict v = controllability_verdict(c.constants, c.dipole_moment(), opt);

  CommandResult r;
  std::ostringstream csv;
  csv << "j,n,nu0,nu1,lie_nu0,lie_nu1,ideal,traceless,su_included\n";
  json blocks = json::array();
  for (const auto& b : v.blocks) {
    json xi = json::array();
    for (const auto& m : b.memberships)
      xi.push_back({{"sigma", m.sigma}, {"l", m.l}, {"class", to_string(m.cls)}, {"witness", m.witness}});
    blocks.push_back({{"j", b.j},
                      {"n", b.n},
                      {"horizon", b.horizon},
                      {"nu0_size", b.nu0_size},
                      {"nu1_size", b.nu1_size},
                      {"lie_nu0_dimension", b.lie_nu0_dimension},
                      {"lie_nu1_dimension", b.lie_nu1_dimension},
                      {"ideal_dimension", b.ideal_dimension},
                      {"traceless_dimension", b.traceless_dimension},
                      {"converged", b.converged},
                      {"su_included", b.su_included},
                      {"memberships", xi}});
    csv << b.j << "," << b.n << "," << b.nu0_size << "," << b.nu1_size << "," << b.lie_nu0_dimension << ","
        << b.lie_nu1_dimension << "," << b.ideal_dimension << "," << b.traceless_dimension << ","
        << (b.su_included ? 1 : 0) << "\n";
  }
  json flags = json::array();
  for (const auto& f : v.flags)
    flags.push_back({{"mu", f.mu}, {"condition", f.condition}, {"named", f.named}, {"other", f.other}});
  r.payload = {{"verdict", to_string(v.kind)},
               {"family", v.family ? json(to_string(*v.family)) : json(nullptr)},
               {"summary", v.summary},
               {"dipole_class", to_string(v.dipole_class.kind)},
               {"convention", to_string(v.convention)},
               {"jmax", v.jmax},
               {"horizon", v.horizon},
               {"mu_grid", opt.mu_grid},
               {"tol_res", v.tol_res},
               {"graph_connected", v.graph_connected},
               {"resonant_mu", v.resonant_mu},
               {"grid_flags", flags},
               {"blocks", blocks}};
  r.csv = csv.str();
  r.exit_code = v.kind == VerdictKind::resonant ? 4 : 0;
  return r;
}

CommandResult cmd_scan(const RunContext& ctx, const std::string& kind_name) {
  const auto& c = ctx.config;
  const TopKind kind = parse_kind(kind_name);
  const auto grid = c.mu_grid();
  CommandResult r;
  std::ostringstream csv;
  csv << "j,mu,condition,named,named_value,other,other_value\n";
  json per_j = json::array();
  for (int j = 0; j <= c.jmax; ++j) {
    const auto flags = resonance_scan(c.constants, kind, j, grid, c.tol_res);
    json fl = json::array();
    std::vector<double> flagged;
    for (const auto& f : flags) {
      fl.push_back({{"mu", f.mu},
                    {"condition", f.condition},
                    {"named", f.named},
                    {"named_value", f.named_value},
                    {"other", f.other},
                    {"other_value", f.other_value}});
      if (flagged.empty() || flagged.back() != f.mu) flagged.push_back(f.mu);
      csv << j << "," << fmt(f.mu) << "," << f.condition << "," << f.named << "," << fmt(f.named_value) << ","
          << f.other << "," << fmt(f.other_value) << "\n";
    }
    per_j.push_back({{"j", j}, {"horizon", j + 2}, {"flagged_mu", flagged}, {"flags", fl}});
  }
  r.payload = {{"kind", kind_name}, {"mu_grid", grid}, {"tol_res", c.tol_res}, {"blocks", per_j}};
  r.csv = csv.str();
  return r;
}

CommandResult cmd_classical_sim(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto& s = c.classical;
  classical::QuaternionState s0;
  s0.q = Eigen::Vector4d(s.q0[0], s.q0[1], s.q0[2], s.q0[3]);
  if (!(s0.q.norm() > 0.0)) throw DomainError("classical: q0 must be nonzero");
  s0.P = Eigen::Vector3d(s.P0[0], s.P0[1], s.P0[2]);
  const std::array<double, 3> u = s.u;
  const auto traj = classical::simulate(
      s0, [u](double) { return u; }, c.constants, dipole_vec(c), s.T, s.dt, s.stride);

  CommandResult r;
  std::ostringstream csv;
  csv << "t,q0,qa,qb,qc,Pa,Pb,Pc,norm_P2,energy\n";
  const double n0 = s0.P.squaredNorm(), e0 = classical::rotational_energy(s0.P, c.constants);
  double dn = 0.0, de = 0.0, dq = 0.0;
  for (const auto& smp : traj) {
    const double n2 = smp.state.P.squaredNorm(), e = classical::rotational_energy(smp.state.P, c.constants);
    dn = std::max(dn, std::abs(n2 - n0) / std::max(n0, 1e-300));
    de = std::max(de, std::abs(e - e0) / std::max(std::abs(e0), 1e-300));
    dq = std::max(dq, std::abs(smp.state.q.norm() - 1.0));
    csv << fmt(smp.t);
    for (int i = 0; i < 4; ++i) csv << "," << fmt(smp.state.q(i));
    for (int i = 0; i < 3; ++i) csv << "," << fmt(smp.state.P(i));
    csv << "," << fmt(n2) << "," << fmt(e) << "\n";
  }
  r.payload = {{"T", s.T},
               {"dt", s.dt},
               {"u", u},
               {"samples", traj.size()},
               {"max_rel_drift_norm_P2", dn},
               {"max_rel_drift_energy", de},
               {"max_unit_quaternion_error", dq}};
  r.csv = csv.str();
  return r;
}

CommandResult cmd_classical_rank(const RunContext& ctx) {
  const auto& c = ctx.config;
  std::mt19937 rng(c.classical.seed);
  const Eigen::Vector3d d = dipole_vec(c);
  CommandResult r;
  std::ostringstream csv;
  csv << "sample,rank,det\n";
  json rows = json::array();
  int full = 0;
  for (int i = 0; i < c.classical.samples; ++i) {
    const auto s = random_state(rng);
    const int rk = classical::rank_at(s, d, c.constants, classical::default_field_set(), c.tol_svd);
    const double D = classical::bracket_determinant(s, d, c.constants);
    full += rk == 6;
    rows.push_back({{"rank", rk}, {"det", D}});
    csv << i << "," << rk << "," << fmt(D) << "\n";
  }
  r.payload = {{"samples", rows}, {"full_rank", full}, {"count", c.classical.samples}, {"seed", c.classical.seed}};
  r.csv = csv.str();
  return r;
}

CommandResult cmd_classical_det(const RunContext& ctx) {
  const auto& c = ctx.config;
  std::mt19937 rng(c.classical.seed);
  const Eigen::Vector3d d = dipole_vec(c);
  CommandResult r;
  std::ostringstream csv;
  csv << "sample,numeric,closed_form,rel_error,printed_rel_error\n";
  double worst = 0.0, worst_printed = 0.0;
  for (int i = 0; i < c.classical.samples; ++i) {
    const auto s = random_state(rng);
    const double D = classical::bracket_determinant(s, d, c.constants);
    const double pd = s.P.dot(d);
    const double cf = classical::closed_form_S(s.q, d, c.constants) * pd;
    const double pf = classical::closed_form_S_as_printed(s.q, d, c.constants) * pd;
    const double e = std::abs(D - cf) / std::max(std::abs(cf), 1e-300);
    const double ep = std::abs(D - pf) / std::max(std::abs(pf), 1e-300);
    worst = std::max(worst, e);
    worst_printed = std::max(worst_printed, ep);
    csv << i << "," << fmt(D) << "," << fmt(cf) << "," << fmt(e) << "," << fmt(ep) << "\n";
  }
  r.payload = {{"count", c.classical.samples},
               {"seed", c.classical.seed},
               {"max_rel_error", worst},
               {"max_rel_error_printed_prefactors", worst_printed},
               {"tolerance", 1e-5}};
  r.csv = csv.str();
  return r;
}

CommandResult cmd_oracle_verify(const RunContext& ctx, int dipoles) {
  const int jmax = std::min(ctx.config.jmax, 3);
  const OracleTable table(jmax, make_grid(jmax));
  const int dim = level_offset(jmax + 1);
  std::mt19937 rng(ctx.config.classical.seed);
  std::normal_distribution<double> N;
  CommandResult r;
  std::ostringstream csv;
  csv << "dipole,convention,l,max_abs_error\n";
  const double gram_err = (table.gram() - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int t = 0; t < dipoles; ++t) {
    const DipoleMoment d{N(rng), N(rng), N(rng), t % 2 == 0 ? Convention::oblate : Convention::prolate};
    for (int l = 1; l <= 3; ++l) {
      const Eigen::MatrixXcd O = table.element_matrix(l, d);
      double e = 0.0;
      for (int ja = 0; ja <= jmax; ++ja)
        for (int ka = -ja; ka <= ja; ++ka)
          for (int ma = -ja; ma <= ja; ++ma)
            for (int jb = 0; jb <= jmax; ++jb)
              for (int kb = -jb; kb <= jb; ++kb)
                for (int mb = -jb; mb <= jb; ++mb) {
                  const WignerIndex A{ja, ka, ma}, B{jb, kb, mb};
                  const std::complex<double> expect = std::complex<double>(0.0, -1.0) *
                                                      O(OracleTable::row(A), OracleTable::row(B));
                  e = std::max(e, std::abs(wigner_element(l, A, B, d) - expect));
                }
      worst = std::max(worst, e);
      csv << t << "," << to_string(d.convention) << "," << l << "," << fmt(e) << "\n";
    }
  }
  r.payload = {{"jmax", jmax},
               {"grid", {table.grid().n_alpha, table.grid().n_beta, table.grid().n_gamma}},
               {"gram_error", gram_err},
               {"max_abs_error", worst},
               {"tolerance", 1e-8},
               {"pass", worst < 1e-8 && gram_err < 1e-8}};
  r.csv = csv.str();
  r.exit_code = worst < 1e-8 && gram_err < 1e-8 ? 0 : 3;
  return r;
}

void write_report(const RunContext& ctx, const std::string& stem, const CommandResult& r, double seconds) {
  std::filesystem::create_directories(ctx.out_dir);
  const std::filesystem::path base = std::filesystem::path(ctx.out_dir) / stem;
  if (ctx.format != Format::csv) {
    const json report = {{"schema_version", kSchemaVersion},
                         {"tool", "rotorctl"},
                         {"version", kToolVersion},
                         {"command", ctx.command},
                         {"input", ctx.config.echo()},
                         {"tolerances", tolerances(ctx.config)},
                         {"result", r.payload},
                         {"timing_s", seconds}};
    std::ofstream(base.string() + ".json") << report.dump(2) << "\n";
  }
  if (ctx.format != Format::json && !r.csv.empty()) std::ofstream(base.string() + ".csv") << r.csv;
}

}  // namespace rotorctl
