// SPDX-License-Identifier: Apache-2.0
#include "rotor/lie_galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

#include "rotor/errors.hpp"

namespace rotor {

using cd = std::complex<double>;

namespace {

std::string label_str(int level, const WangLabel& w) {
  std::ostringstream os;
  os << "E(" << level << ";" << w.k << "," << w.p << ")";
  return os.str();
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

NamedGap make_gap(char family, int k, int p, const SpectrumBlock& lo_sb, WangLabel lo, const SpectrumBlock& hi_sb,
                  WangLabel hi) {
  NamedGap g;
  g.family = family;
  g.k = k;
  g.p = p;
  g.lower_level = lo_sb.j;
  g.lower = lo;
  g.upper_level = hi_sb.j;
  g.upper = hi;
  g.value = std::abs(hi_sb.energy(hi.k, hi.p) - lo_sb.energy(lo.k, lo.p));
  return g;
}

// Energy groups of one level, merged at the degeneracy tolerance.
struct MergedLevel {
  double energy = 0.0;
  std::vector<WangLabel> labels;
};

std::vector<MergedLevel> merge_levels(const SpectrumBlock& sb) {
  std::vector<MergedLevel> out;
  for (int i = 0; i < sb.energies.size(); ++i) {
    if (!out.empty() && degenerate(out.back().energy, sb.energies(i))) {
      out.back().labels.push_back(sb.labels[i]);
      continue;
    }
    out.push_back({sb.energies(i), {sb.labels[i]}});
  }
  return out;
}

int group_of(const std::vector<MergedLevel>& levels, const WangLabel& w) {
  for (std::size_t g = 0; g < levels.size(); ++g)
    for (const auto& l : levels[g].labels)
      if (l == w) return static_cast<int>(g);
  throw DomainError("group_of: label not found");
}

struct GapEntry {
  double value = 0.0;
  int lo_group = 0;
  int hi_group = 0;
  std::string desc;
};

// Gaps between distinct levels of H_t and H_u (same-level pairs when t == u).
std::vector<GapEntry> cross_gaps(const std::vector<std::vector<MergedLevel>>& merged, int t, int u) {
  std::vector<GapEntry> out;
  const auto& A = merged[t];
  const auto& B = merged[u];
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = (t == u ? a + 1 : 0); b < B.size(); ++b)
      out.push_back({std::abs(B[b].energy - A[a].energy), static_cast<int>(a), static_cast<int>(b),
                     label_str(u, B[b].labels.front()) + "-" + label_str(t, A[a].labels.front())});
  return out;
}

Eigen::MatrixXcd comm(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) { return A * B - B * A; }

// Incremental orthonormal basis in skew_vec coordinates.
class SpanBuilder {
 public:
  SpanBuilder(int n, double tol) : n_(n), tol_(tol), Q_(n * n, n * n) {}

  bool add(const Eigen::MatrixXcd& X) {
    Eigen::VectorXd v = skew_vec(X);
    const double nv = v.norm();
    if (!(nv > 0.0)) return false;
    v /= nv;
    if (d_ >= Q_.cols()) return false;
    if (d_ > 0) {
      const auto Q = Q_.leftCols(d_);
      v.noalias() -= Q * (Q.transpose() * v);
      v.noalias() -= Q * (Q.transpose() * v);
    }
    const double r = v.norm();
    if (r <= tol_) return false;
    v /= r;
    Q_.col(d_++) = v;
    basis_.push_back(skew_unvec(v, n_));
    return true;
  }

  int dimension() const { return d_; }
  const Eigen::MatrixXcd& element(int i) const { return basis_[i]; }

  ClosureResult result(bool converged) const {
    ClosureResult out;
    out.n = n_;
    out.dimension = dimension();
    out.basis = basis_;
    out.coords = Q_.leftCols(d_);
    out.converged = converged;
    return out;
  }

 private:
  int n_;
  double tol_;
  int d_ = 0;
  Eigen::MatrixXd Q_;
  std::vector<Eigen::MatrixXcd> basis_;
};

int check_dims(const std::vector<Eigen::MatrixXcd>& mats, int n = -1) {
  for (const auto& M : mats) {
    if (M.rows() != M.cols()) throw DomainError("matrix not square");
    if (n < 0) n = static_cast<int>(M.rows());
    if (M.rows() != n) throw DomainError("dimension mismatch among generators");
  }
  return n;
}

}  // namespace

std::string NamedGap::name() const {
  const char* f = family == 'l' ? "lambda" : family == 'r' ? "rho" : family == 'e' ? "eta" : "sigma";
  std::ostringstream os;
  os << f << "^" << lower_level << "_{" << k << "," << p << "}";
  return os.str();
}

const NamedGap* GapTable::find(char family, int k, int p) const {
  for (const auto& g : named)
    if (g.family == family && g.k == k && g.p == p) return &g;
  return nullptr;
}

std::vector<double> distinct_gaps(const std::vector<double>& values, double tol_res) {
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  std::vector<double> all;
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = a; b < values.size(); ++b) all.push_back(std::abs(values[a] - values[b]));
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double g : all)
    if (out.empty() || g - out.back() > tol_res * scale) out.push_back(g);
  return out;
}

GapTable spectral_gaps(const SpectrumBlock& lo, const SpectrumBlock& hi, double tol_res) {
  if (hi.j != lo.j + 1) throw DomainError("spectral_gaps: levels must be j and j+1");
  if (!lo.energies.allFinite() || !hi.energies.allFinite()) throw NumericError("spectral_gaps: non-finite eigenvalues");
  GapTable t;
  t.j = lo.j;
  const int j = lo.j;
  std::vector<double> values(lo.energies.data(), lo.energies.data() + lo.energies.size());
  values.insert(values.end(), hi.energies.data(), hi.energies.data() + hi.energies.size());
  t.gaps = distinct_gaps(values, tol_res);

  for (int k = 0; k <= j; ++k) t.named.push_back(make_gap('l', k, 0, lo, {k, 0}, hi, {k + 1, 0}));
  if (j >= 1) t.named.push_back(make_gap('l', 1, 1, lo, {1, 1}, hi, {0, 0}));
  for (int k = 2; k <= j; ++k) t.named.push_back(make_gap('l', k, 1, lo, {k, 1}, hi, {k - 1, 1}));

  t.named.push_back(make_gap('r', 0, 0, lo, {0, 0}, hi, {1, 1}));
  for (int k = 1; k <= j; ++k) t.named.push_back(make_gap('r', k, 0, lo, {k, 0}, hi, {k - 1, 0}));
  for (int k = 1; k <= j; ++k) t.named.push_back(make_gap('r', k, 1, lo, {k, 1}, hi, {k + 1, 1}));

  for (int k = 0; k < j; ++k) t.named.push_back(make_gap('e', k, 0, lo, {k, 0}, lo, {k + 1, 0}));
  if (j >= 1) t.named.push_back(make_gap('e', 1, 1, lo, {1, 1}, lo, {0, 0}));
  for (int k = 2; k <= j; ++k) t.named.push_back(make_gap('e', k, 1, lo, {k, 1}, lo, {k - 1, 1}));

  t.named.push_back(make_gap('s', 0, 0, lo, {0, 0}, hi, {0, 0}));
  for (int k = 1; k <= j; ++k)
    for (int p = 0; p <= 1; ++p) t.named.push_back(make_gap('s', k, p, lo, {k, p}, hi, {k, p}));
  return t;
}

double gap_symmetry_residual(const GapTable& t) {
  double r = 0.0;
  auto cmp = [&](char f1, int k1, int p1, char f2, int k2, int p2) {
    const NamedGap* a = t.find(f1, k1, p1);
    const NamedGap* b = t.find(f2, k2, p2);
    if (a && b) r = std::max(r, std::abs(a->value - b->value));
  };
  cmp('l', 0, 0, 'r', 0, 0);
  for (int k = 1; k <= t.j; ++k) {
    cmp('l', k, 0, 'r', k, 1);
    cmp('l', k, 1, 'r', k, 0);
    cmp('s', k, 0, 's', k, 1);
  }
  for (int k = 0; k < t.j; ++k) cmp('e', k, 0, 'e', k + 1, 1);
  return r;
}

Eigen::MatrixXcd excitation(const Eigen::MatrixXcd& M, double sigma, const Eigen::VectorXd& ev, double tol_res) {
  if (M.rows() != M.cols() || M.rows() != ev.size()) throw DomainError("excitation: dimension mismatch");
  const double tol = tol_res * std::max(1.0, max_abs(ev));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(M.rows(), M.cols());
  for (int a = 0; a < M.rows(); ++a)
    for (int b = 0; b < M.cols(); ++b)
      if (std::abs(std::abs(ev(a) - ev(b)) - sigma) <= tol) out(a, b) = M(a, b);
  return out;
}

Eigen::VectorXd TruncatedSystem::block_energies(int j) const {
  if (j < 0 || j + 1 > top_level) throw PreconditionError("block outside the truncated system");
  return energies.segment(level_offset(j), block_size(j));
}

Eigen::MatrixXcd TruncatedSystem::block_drift(int j) const {
  return (cd(0.0, 1.0) * block_energies(j).cast<cd>()).asDiagonal();
}

Eigen::MatrixXcd TruncatedSystem::block_control(int l, int j) const {
  if (l < 1 || l > 3) throw DomainError("control index must be 1, 2 or 3");
  block_energies(j);
  const int o = level_offset(j), n = block_size(j);
  return cd(0.0, 1.0) * controls[l - 1].block(o, o, n, n);
}

TruncatedSystem build_truncated_system(const RotationalConstants& rc, const DipoleMoment& d, int top_level) {
  if (top_level < 1) throw DomainError("build_truncated_system: top_level must be >= 1");
  validate(rc);
  TruncatedSystem s;
  s.constants = rc;
  s.dipole = d;
  s.top_level = top_level;
  const TopKind kind = kind_of(d.convention);
  s.energies.resize(level_offset(top_level + 1));
  for (int l = 0; l <= top_level; ++l) {
    s.spectra.push_back(diagonalize_block(l, rc, kind));
    const int n = 2 * l + 1;
    for (int t = 0; t < n; ++t)
      for (int m = 0; m < n; ++m) s.energies(level_offset(l) + t * n + m) = s.spectra.back().energies(t);
  }
  for (int l = 1; l <= 3; ++l) s.controls[l - 1] = level_operator(l, 0, top_level, d, Representation::eigen, s.spectra);
  return s;
}

const char* to_string(XiClass x) {
  switch (x) {
    case XiClass::xi0: return "xi0";
    case XiClass::xi1: return "xi1";
    case XiClass::neither: return "neither";
  }
  return "?";
}

XiResult xi_membership(double sigma, int l, int j, const TruncatedSystem& sys, double tol_res, int horizon) {
  if (horizon < 0) horizon = sys.top_level;
  if (horizon > sys.top_level || horizon < j + 2)
    throw PreconditionError("xi_membership: needs levels up to j+2 within the truncated system");
  if (l < 1 || l > 3) throw DomainError("control index must be 1, 2 or 3");
  const Eigen::MatrixXcd& H = sys.controls[l - 1];
  const int dim = level_offset(horizon + 1);
  const int lo = level_offset(j), hi = level_offset(j + 2);
  const double thr = 1e-10 * std::max(H.cwiseAbs().maxCoeff(), 1e-300);
  const double tol = tol_res * std::max(1.0, max_abs(sys.energies.segment(lo, hi - lo)));
  auto inside = [&](int a) { return a >= lo && a < hi; };

  XiResult out;
  out.horizon = horizon;
  std::string internal;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      if (std::abs(H(a, b)) <= thr) continue;
      if (std::abs(std::abs(sys.energies(a) - sys.energies(b)) - sigma) > tol) continue;
      const bool ia = inside(a), ib = inside(b);
      if (ia && ib) continue;
      std::ostringstream os;
      os << "entry (" << a << "," << b << ") gap " << std::abs(sys.energies(a) - sys.energies(b));
      if (ia || ib) {
        out.cls = XiClass::neither;
        out.witness = "M_j to complement " + os.str();
        return out;
      }
      if (internal.empty()) internal = "complement " + os.str();
    }
  out.cls = internal.empty() ? XiClass::xi0 : XiClass::xi1;
  out.witness = internal;
  return out;
}

Eigen::VectorXd skew_vec(const Eigen::MatrixXcd& X) {
  const int n = static_cast<int>(X.rows());
  Eigen::VectorXd v(n * n);
  int i = 0;
  for (int a = 0; a < n; ++a) v(i++) = X(a, a).imag();
  const double s = std::sqrt(2.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      v(i++) = s * X(a, b).real();
      v(i++) = s * X(a, b).imag();
    }
  return v;
}

Eigen::MatrixXcd skew_unvec(const Eigen::VectorXd& v, int n) {
  if (v.size() != n * n) throw DomainError("skew_unvec: length mismatch");
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
  int i = 0;
  for (int a = 0; a < n; ++a) X(a, a) = cd(0.0, v(i++));
  const double s = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const cd z(s * v(i), s * v(i + 1));
      i += 2;
      X(a, b) = z;
      X(b, a) = -std::conj(z);
    }
  return X;
}

double ClosureResult::residual(const Eigen::MatrixXcd& X) const {
  Eigen::VectorXd v = skew_vec(X);
  const double nv = v.norm();
  if (!(nv > 0.0)) return 0.0;
  if (coords.cols() > 0) v -= coords * (coords.transpose() * v);
  return v.norm() / nv;
}

ClosureResult linear_span(const std::vector<Eigen::MatrixXcd>& elements, int n, double rank_tol) {
  check_dims(elements, n);
  SpanBuilder sb(n, rank_tol);
  for (const auto& X : elements) sb.add(X);
  return sb.result(true);
}

ClosureResult lie_closure(const std::vector<Eigen::MatrixXcd>& generators, long cap, double rank_tol) {
  if (generators.empty()) return ClosureResult{};
  const int n = check_dims(generators);
  const long full = static_cast<long>(n) * n;
  if (cap < 0) cap = 10 * full;

  std::vector<Eigen::MatrixXcd> gens;
  for (const auto& G : generators)
    if (G.norm() > 0.0) gens.push_back(G / G.norm());

  SpanBuilder sb(n, rank_tol);
  std::deque<int> queue;
  for (const auto& G : gens)
    if (sb.add(G)) queue.push_back(sb.dimension() - 1);

  long sweeps = 0;
  while (!queue.empty() && sb.dimension() < full) {
    if (sweeps >= cap) return sb.result(false);
    ++sweeps;
    const Eigen::MatrixXcd E = sb.element(queue.front());
    queue.pop_front();
    for (const auto& G : gens) {
      if (sb.add(comm(G, E))) queue.push_back(sb.dimension() - 1);
      if (sb.dimension() >= full) break;
    }
  }
  return sb.result(true);
}

ClosureResult minimal_ideal(const std::vector<Eigen::MatrixXcd>& nu0, const ClosureResult& lie_nu1, double rank_tol) {
  const int n = lie_nu1.n;
  check_dims(nu0, n);
  for (const auto& X : nu0)
    if (lie_nu1.residual(X) > 1e-8) throw PreconditionError("minimal_ideal: generator outside Lie(nu1)");

  SpanBuilder sb(n, rank_tol);
  std::deque<int> queue;
  for (const auto& X : nu0)
    if (sb.add(X)) queue.push_back(sb.dimension() - 1);
  while (!queue.empty() && sb.dimension() < lie_nu1.dimension) {
    const Eigen::MatrixXcd T = sb.element(queue.front());
    queue.pop_front();
    for (const auto& G : lie_nu1.basis) {
      if (sb.add(comm(G, T))) queue.push_back(sb.dimension() - 1);
      if (sb.dimension() >= lie_nu1.dimension) break;
    }
  }
  return sb.result(true);
}

int traceless_dimension(const ClosureResult& c) {
  if (c.dimension == 0) return 0;
  const Eigen::MatrixXcd I = cd(0.0, 1.0) * Eigen::MatrixXcd::Identity(c.n, c.n);
  return c.dimension - (c.residual(I) < 1e-8 ? 1 : 0);
}

bool su_inclusion(const ClosureResult& c, int n) {
  if (n < 1) throw DomainError("su_inclusion: n must be positive");
  if (c.n != n && c.dimension > 0) throw DomainError("su_inclusion: dimension mismatch");
  return traceless_dimension(c) == n * n - 1;
}

bool graph_connected(int jmax, const std::vector<int>& removed) {
  if (jmax < 0) throw DomainError("graph_connected: jmax must be >= 0");
  std::vector<int> present;
  for (int j = 0; j <= jmax; ++j)
    if (std::find(removed.begin(), removed.end(), j) == removed.end()) present.push_back(j);
  if (present.empty()) return false;
  // consecutive blocks share level j+1, so the graph is a path
  return present.back() - present.front() + 1 == static_cast<int>(present.size());
}

std::vector<Eigen::MatrixXcd> ModeFamily::matrices() const {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& g : generators) out.push_back(g.matrix);
  return out;
}

ModeFamilies mode_families(int j, const TruncatedSystem& sys, double tol_res, int horizon) {
  if (horizon < 0) horizon = sys.top_level;
  const GapTable table = spectral_gaps(sys.spectra.at(j), sys.spectra.at(j + 1), tol_res);
  const Eigen::VectorXd ev = sys.block_energies(j);
  std::vector<std::string> failures;

  auto excite = [&](const NamedGap* g, int l, XiClass need) -> Eigen::MatrixXcd {
    const Eigen::MatrixXcd E = excitation(sys.block_control(l, j), g->value, ev, tol_res);
    if (E.cwiseAbs().maxCoeff() <= 1e-12) return E;
    const XiResult x = xi_membership(g->value, l, j, sys, tol_res, horizon);
    const bool ok = x.cls == XiClass::xi0 || (need == XiClass::xi1 && x.cls == XiClass::xi1);
    if (!ok) {
      std::ostringstream os;
      os << g->name() << " (l=" << l << ", " << g->value << ") is " << to_string(x.cls) << ": " << x.witness;
      failures.push_back(os.str());
    }
    return E;
  };
  auto push = [](ModeFamily& f, const Eigen::MatrixXcd& M, const std::string& tag) {
    if (M.cwiseAbs().maxCoeff() > 1e-12) f.generators.push_back({M, tag});
  };
  auto pair = [&](ModeFamily& f, const NamedGap* g1, const NamedGap* g2, int l, XiClass need) {
    if (!g1 || !g2) return;
    const Eigen::MatrixXcd M = 0.5 * (excite(g1, l, need) + excite(g2, l, need));
    push(f, M, "avg(" + g1->name() + "," + g2->name() + ") l=" + std::to_string(l));
  };

  ModeFamilies out;
  out.F.j = out.P.j = out.P_tilde.j = j;
  out.F.generators.push_back({sys.block_drift(j), "iH"});
  out.P.generators.push_back({sys.block_drift(j), "iH"});
  for (int l = 1; l <= 3; ++l) {
    pair(out.F, table.find('l', 0, 0), table.find('r', 0, 0), l, XiClass::xi0);
    for (int k = 1; k <= j; ++k) {
      pair(out.F, table.find('l', k, 0), table.find('r', k, 1), l, XiClass::xi0);
      pair(out.F, table.find('l', k, 1), table.find('r', k, 0), l, XiClass::xi0);
    }
    for (int k = 0; k < j; ++k) pair(out.P, table.find('e', k, 0), table.find('e', k + 1, 1), l, XiClass::xi1);
    const NamedGap* s00 = table.find('s', 0, 0);
    push(out.P, excite(s00, l, XiClass::xi0), s00->name() + " l=" + std::to_string(l));
    for (int k = 1; k <= j; ++k) pair(out.P, table.find('s', k, 0), table.find('s', k, 1), l, XiClass::xi0);
  }
  if (!failures.empty()) {
    std::ostringstream os;
    os << "mode_families: block " << j << " has resonant gaps:";
    for (const auto& f : failures) os << "\n  " << f;
    throw ResonanceError(os.str());
  }

  const ClosureResult L = lie_closure(out.F.matrices());
  for (int a = 0; a < L.dimension; ++a) out.P_tilde.generators.push_back({L.basis[a], "L"});
  for (int a = 0; a < L.dimension; ++a)
    for (const auto& C : out.P.generators) push(out.P_tilde, comm(L.basis[a], C.matrix), "[L," + C.tag + "]");
  return out;
}

BlockCertificate certify_block(int j, const TruncatedSystem& sys, double tol_res, int horizon) {
  if (horizon < 0) horizon = sys.top_level;
  BlockCertificate c;
  c.j = j;
  c.n = TruncatedSystem::block_size(j);
  c.horizon = horizon;
  const Eigen::VectorXd ev = sys.block_energies(j);

  std::vector<Eigen::MatrixXcd> nu0{sys.block_drift(j)};
  std::vector<Eigen::MatrixXcd> nu1{sys.block_drift(j)};
  const std::vector<double> values(ev.data(), ev.data() + ev.size());
  for (double sigma : distinct_gaps(values, tol_res)) {
    if (sigma <= tol_res * std::max(1.0, max_abs(ev))) continue;
    for (int l = 1; l <= 3; ++l) {
      const Eigen::MatrixXcd E = excitation(sys.block_control(l, j), sigma, ev, tol_res);
      if (E.cwiseAbs().maxCoeff() <= 1e-12) continue;
      const XiResult x = xi_membership(sigma, l, j, sys, tol_res, horizon);
      c.memberships.push_back({sigma, l, x.cls, x.witness});
      if (x.cls == XiClass::xi0) nu0.push_back(E);
      if (x.cls != XiClass::neither) nu1.push_back(E);
    }
  }
  c.nu0_size = static_cast<int>(nu0.size());
  c.nu1_size = static_cast<int>(nu1.size());

  const ClosureResult L0 = lie_closure(nu0);
  c.lie_nu0_dimension = L0.dimension;
  if (su_inclusion(L0, c.n)) {
    // Lie(nu0) then already contains [Lie(nu1), Lie(nu1)], so it is the ideal
    std::vector<Eigen::MatrixXcd> all = L0.basis;
    all.insert(all.end(), nu1.begin(), nu1.end());
    c.lie_nu1_dimension = linear_span(all, c.n).dimension;
    c.ideal_dimension = L0.dimension;
    c.traceless_dimension = traceless_dimension(L0);
    c.converged = L0.converged;
  } else {
    const ClosureResult L1 = lie_closure(nu1);
    const ClosureResult T = minimal_ideal(nu0, L1);
    c.lie_nu1_dimension = L1.dimension;
    c.ideal_dimension = T.dimension;
    c.traceless_dimension = traceless_dimension(T);
    c.converged = L0.converged && L1.converged;
  }
  c.su_included = c.traceless_dimension == c.n * c.n - 1;
  return c;
}

std::vector<ResonanceFlag> resonance_scan(const RotationalConstants& endpoint, TopKind kind, int j,
                                          const std::vector<double>& mu_grid, double tol_res, int horizon) {
  if (j < 0) throw DomainError("resonance_scan: j must be >= 0");
  if (horizon < 0) horizon = j + 2;
  if (horizon < j + 2) throw PreconditionError("resonance_scan: horizon must reach level j+2");
  const AsymmetryPath path = asymmetry_path(endpoint, kind);
  std::vector<ResonanceFlag> flags;

  for (double mu : mu_grid) {
    if (!(mu >= -1.0 && mu <= 0.0)) throw DomainError("resonance_scan: mu outside [-1, 0]");
    std::vector<SpectrumBlock> sp;
    std::vector<std::vector<MergedLevel>> merged;
    for (int n = 0; n <= horizon; ++n) {
      sp.push_back(diagonalize_block(n, path, mu));
      merged.push_back(merge_levels(sp.back()));
    }
    const GapTable table = spectral_gaps(sp[j], sp[j + 1], tol_res);
    const double tol = tol_res * std::max({1.0, max_abs(sp[j].energies), max_abs(sp[j + 1].energies)});
    std::set<std::tuple<std::string, std::string, std::string>> seen;

    auto flag = [&](const char* cond, const NamedGap& g, const GapEntry& e) {
      if (std::abs(g.value - e.value) > tol) return;
      if (!seen.insert({cond, g.name(), e.desc}).second) return;
      flags.push_back({mu, cond, g.name(), g.value, e.desc, e.value});
    };

    std::vector<GapEntry> outer = cross_gaps(merged, j + 1, j + 2);
    if (j >= 1) {
      const auto lower = cross_gaps(merged, j - 1, j);
      outer.insert(outer.end(), lower.begin(), lower.end());
    }
    for (const auto& g : table.named)
      for (const auto& e : outer) flag("N", g, e);

    for (int m = 0; m <= horizon; ++m)
      for (int n = m; n <= std::min(m + 1, horizon); ++n) {
        if (m == j || m == j + 1 || n == j || n == j + 1) continue;
        for (const auto& e : cross_gaps(merged, m, n)) {
          if (e.value <= tol) continue;
          for (const auto& g : table.named)
            if (g.family != 'e') flag("N1", g, e);
        }
      }

    const auto inner = cross_gaps(merged, j, j + 1);
    std::vector<std::pair<const NamedGap*, const NamedGap*>> pairs{{table.find('l', 0, 0), table.find('r', 0, 0)}};
    for (int k = 1; k <= j; ++k) {
      pairs.push_back({table.find('l', k, 0), table.find('r', k, 1)});
      pairs.push_back({table.find('l', k, 1), table.find('r', k, 0)});
    }
    for (const auto& [g1, g2] : pairs) {
      std::set<std::pair<int, int>> ends;
      for (const NamedGap* g : {g1, g2})
        ends.insert({group_of(merged[j], g->lower), group_of(merged[j + 1], g->upper)});
      for (const auto& e : inner) {
        if (ends.count({e.lo_group, e.hi_group})) continue;
        flag("I", *g1, e);
        flag("I", *g2, e);
      }
    }
  }
  return flags;
}

const char* to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::certified: return "certified";
    case VerdictKind::obstructed: return "obstructed";
    case VerdictKind::resonant: return "resonant";
    case VerdictKind::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict controllability_verdict(const RotationalConstants& rc, DipoleMoment d, const VerdictOptions& opt) {
  validate(rc);
  if (opt.jmax < 0) throw DomainError("controllability_verdict: jmax must be >= 0");
  Verdict v;
  v.jmax = opt.jmax;
  v.tol_res = opt.tol_res;
  v.horizon = opt.horizon < 0 ? opt.jmax + 2 : opt.horizon;
  if (v.horizon < opt.jmax + 2) throw PreconditionError("controllability_verdict: horizon must be >= jmax + 2");
  v.dipole_class = classify_dipole(d, opt.axis_tol);
  v.graph_connected = graph_connected(opt.jmax);

  std::ostringstream os;
  if (v.dipole_class.obstruction) {
    v.kind = VerdictKind::obstructed;
    v.family = v.dipole_class.obstruction;
    v.convention = d.convention;
    os << "obstructed(" << to_string(*v.family) << "): " << to_string(v.dipole_class.kind) << " dipole";
    v.summary = os.str();
    return v;
  }
  d.convention =
      v.dipole_class.kind == DipoleClassKind::generic_in_ab_plane ? Convention::prolate : Convention::oblate;
  v.convention = d.convention;
  const TopKind kind = kind_of(d.convention);

  const TruncatedSystem sys = build_truncated_system(rc, d, v.horizon);
  bool all = v.graph_connected;
  for (int j = 0; j <= opt.jmax; ++j) {
    v.blocks.push_back(certify_block(j, sys, opt.tol_res, v.horizon));
    all = all && v.blocks.back().su_included && v.blocks.back().converged;
  }

  const double mu_end = asymmetry_path(rc, kind).mu_endpoint;
  for (int j = 0; j <= opt.jmax; ++j) {
    for (auto& f : resonance_scan(rc, kind, j, opt.mu_grid, opt.tol_res, v.horizon)) v.flags.push_back(f);
  }

  if (all) {
    v.kind = VerdictKind::certified;
    os << "certified-up-to-" << opt.jmax;
  } else {
    for (int j = 0; j <= opt.jmax; ++j)
      if (!resonance_scan(rc, kind, j, {mu_end}, opt.tol_res, v.horizon).empty()) {
        v.resonant_mu = {mu_end};
        break;
      }
    v.kind = v.resonant_mu.empty() ? VerdictKind::inconclusive : VerdictKind::resonant;
    os << to_string(v.kind);
    if (!v.resonant_mu.empty()) os << " at mu=" << mu_end;
  }
  os << " (horizon " << v.horizon << ", tol_res " << opt.tol_res << ")";
  v.summary = os.str();
  return v;
}

}  // namespace rotor
