// SPDX-License-Identifier: MIT
// Current relations at c = 0, checked coefficientwise in a module.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "superyang/gauss.hpp"
#include "superyang/pool.hpp"

namespace superyang {

inline const std::vector<std::string>& relation_families() {
  static const std::vector<std::string> f{
      "kk-same-sign",       "kk-mixed-even",      "kk-mixed-odd",          "kk-cross-ij",
      "kX-trivial",         "kXminus-near",       "kXplus-near",           "kX-odd-root",
      "XX-same-even",       "XX-same-oddblock",   "XX-fermionic",          "XX-adjacent-plus",
      "XX-adjacent-minus",  "XplusXminus-commutator", "XplusXminus-anticommutator",
      "serre1",             "serre2",             "serre3",                "serre4",
      "extra-serre"};
  return f;
}

inline bool is_serre_family(const std::string& f) {
  return f == "serre1" || f == "serre2" || f == "serre3" || f == "serre4" || f == "extra-serre";
}

struct RelationId {
  std::string family;
  int i = 0, j = 0;  // 1-based generator indices, 0 when unused
  int sign = 0;      // +1 / -1: upper / lower choice of a +- line
  char x = 0;        // '+' or '-' when the line involves one kind of X
};

struct RelationOptions {
  std::vector<std::string> only;  // restrict to these families (empty: all)
  bool serre = true;
  bool expanded = true;  // also run prefactor-expanded forms where computable
  int workers = 1;
};

struct RelationJob {
  RelationId id;
  std::string category = "printed";
  std::string form;  // extra label, e.g. "cleared", "expanded", "amended"
  std::vector<int> vars{U, V};
  std::string skip;
  std::function<Expr()> build;
  std::vector<std::shared_ptr<SeriesQ>> keep;  // scalar series referenced by build
};

namespace detail {

inline MPoly lin(int a, int b, const Rat& c) { return MPoly::var(a) - MPoly::var(b) + MPoly(c); }
inline MPoly lin(const Rat& c) { return lin(U, V, c); }

// 1-based accessors
struct Cur {
  const CurrentSystem& cs;
  const SeriesM& X(char pm, int i) const {
    return pm == '+' ? cs.Xplus.at(static_cast<std::size_t>(i - 1)) : cs.Xminus.at(static_cast<std::size_t>(i - 1));
  }
  const SeriesM& k(int s, int j) const {
    return s > 0 ? cs.kplus.at(static_cast<std::size_t>(j - 1)) : cs.kminus.at(static_cast<std::size_t>(j - 1));
  }
  const SeriesM& kinv(int s, int j) const {
    return s > 0 ? cs.kplus_inv.at(static_cast<std::size_t>(j - 1)) : cs.kminus_inv.at(static_cast<std::size_t>(j - 1));
  }
  const SeriesM& phi(int i) const { return cs.phi.at(static_cast<std::size_t>(i - 1)); }
  const SeriesM& psi(int i) const { return cs.psi.at(static_cast<std::size_t>(i - 1)); }
};

// c in k_j^{-1} X^-_i(v) k_j = (u - v + c)/(u - v) X^-_i(v), equally
// k_j X^+_i(v) k_j^{-1} = (u - v + c)/(u - v) X^+_i(v), for j in {i, i+1}
inline Rat near_shift(int m, int i, int j, const Rat& h) {
  if (i == m) return 2 * h;
  bool even = i < m;
  if (j == i) return even ? Rat(2 * h) : Rat(-2 * h);
  return even ? Rat(-2 * h) : Rat(2 * h);
}

inline std::string sign_str(int s) { return s > 0 ? "+" : "-"; }

// Symmetrise over u1 <-> u2.
inline void add_symmetrised(Expr& e, const Rat& coef, const MPoly& pre, const std::vector<Factor>& fs) {
  e.add(coef, pre, fs);
  std::vector<Factor> sw = fs;
  for (auto& f : sw)
    for (auto& v : f.vars) v = v == U1 ? U2 : v == U2 ? U1 : v;
  MPoly p;
  for (const auto& [m, c] : pre.terms()) {
    Mono n = m;
    std::swap(n[static_cast<std::size_t>(U1)], n[static_cast<std::size_t>(U2)]);
    p += MPoly::monomial(c, n);
  }
  e.add(coef, p, sw);
}

}  // namespace detail

// Every relation instance for the module, in a fixed order.
inline std::vector<RelationJob> relation_jobs(const CurrentSystem& cs, const RelationOptions& opt = {}) {
  using detail::lin;
  const int m = cs.dims.m, N = cs.dims.size();
  const Rat h = cs.hbar;
  const Rat h2 = 2 * h;
  auto cur = std::make_shared<detail::Cur>(detail::Cur{cs});
  std::vector<RelationJob> jobs;
  auto want = [&](const std::string& fam) {
    if (!opt.serre && is_serre_family(fam)) return false;
    if (opt.only.empty()) return true;
    return std::find(opt.only.begin(), opt.only.end(), fam) != opt.only.end();
  };
  auto push = [&](RelationJob j) { jobs.push_back(std::move(j)); };
  auto skipped = [&](const std::string& fam, const std::string& why) {
    RelationJob j;
    j.id.family = fam;
    j.skip = why;
    push(std::move(j));
  };
  auto F1 = [](const SeriesM& s, int v) { return F(s, v); };

  // k k, same sign
  if (want("kk-same-sign")) {
    for (int s : {+1, -1})
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
          RelationJob J;
          J.id = {"kk-same-sign", i, j, s, 0};
          if (i == j) J.category = "unstated";
          J.build = [=] {
            Expr e;
            e.add(1, {F1(cur->k(s, i), U), F1(cur->k(s, j), V)});
            e.add(-1, {F1(cur->k(s, j), V), F1(cur->k(s, i), U)});
            return e;
          };
          push(std::move(J));
        }
  }
  if (want("kk-mixed-even")) {
    if (m < 1) skipped("kk-mixed-even", "m = 0: no index i <= m");
    for (int i = 1; i <= m; ++i) {
      RelationJob J;
      J.id = {"kk-mixed-even", i, 0, 0, 0};
      J.build = [=] {
        Expr e;
        e.add(1, {F1(cur->k(+1, i), U), F1(cur->k(-1, i), V)});
        e.add(-1, {F1(cur->k(-1, i), V), F1(cur->k(+1, i), U)});
        return e;
      };
      push(std::move(J));
    }
  }
  if (want("kk-mixed-odd")) {
    if (m >= N) skipped("kk-mixed-odd", "n = 0: no index m < i <= m+n");
    for (int i = m + 1; i <= N; ++i) {
      // both sides carry (u-v-2h)/(u-v+2h); cleared by the product of the two denominators
      RelationJob J;
      J.id = {"kk-mixed-odd", i, 0, 0, 0};
      J.form = "cleared";
      J.build = [=] {
        MPoly pre = lin(-h2) * lin(h2);
        Expr e;
        e.add(1, pre, {F1(cur->k(+1, i), U), F1(cur->k(-1, i), V)});
        e.add(-1, pre, {F1(cur->k(-1, i), V), F1(cur->k(+1, i), U)});
        return e;
      };
      RelationId id = J.id;
      push(std::move(J));
      if (opt.expanded) {
        // (u-v-2h)/(u-v+2h) = 1 - 4h/(u-v+2h), expanded at u = infinity
        RelationJob X;
        X.id = id;
        X.form = "expanded";
        X.category = "expanded";
        auto S = std::make_shared<SeriesQ>(expand_inverse_difference(h2, cs.order + 2, true));
        X.keep.push_back(S);
        X.build = [=] {
          Expr e;
          e.add(1, {F1(cur->k(+1, i), U), F1(cur->k(-1, i), V)});
          e.add(-1, {F1(cur->k(-1, i), V), F1(cur->k(+1, i), U)});
          e.add(-2 * h2, {Scalar(*S), F1(cur->k(+1, i), U), F1(cur->k(-1, i), V)});
          e.add(2 * h2, {Scalar(*S), F1(cur->k(-1, i), V), F1(cur->k(+1, i), U)});
          return e;
        };
        push(std::move(X));
      }
    }
  }
  if (want("kk-cross-ij")) {
    if (N < 2) skipped("kk-cross-ij", "needs two diagonal currents");
    for (int s : {+1, -1})
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j < i; ++j) {
          // k^{-s}_i(v)^{-1} k^{s}_j(u) vs k^{s}_j(u) k^{-s}_i(v)^{-1}, prefactor (u-v)/(u-v+2h)
          RelationJob J;
          J.id = {"kk-cross-ij", i, j, s, 0};
          J.form = "cleared";
          J.build = [=] {
            MPoly pre = lin(0) * lin(h2);
            Expr e;
            e.add(1, pre, {F1(cur->kinv(-s, i), V), F1(cur->k(s, j), U)});
            e.add(-1, pre, {F1(cur->k(s, j), U), F1(cur->kinv(-s, i), V)});
            return e;
          };
          RelationId id = J.id;
          push(std::move(J));
          if (opt.expanded) {
            // (u-v)/(u-v+2h) = 1 - 2h/(u-v+2h), expanded where the k^+ variable is large
            RelationJob X;
            X.id = id;
            X.form = "expanded";
            X.category = "expanded";
            auto S = std::make_shared<SeriesQ>(expand_inverse_difference(h2, cs.order + 2, s > 0));
            X.keep.push_back(S);
            X.build = [=] {
              Expr e;
              e.add(1, {F1(cur->kinv(-s, i), V), F1(cur->k(s, j), U)});
              e.add(-1, {F1(cur->k(s, j), U), F1(cur->kinv(-s, i), V)});
              e.add(-h2, {Scalar(*S), F1(cur->kinv(-s, i), V), F1(cur->k(s, j), U)});
              e.add(h2, {Scalar(*S), F1(cur->k(s, j), U), F1(cur->kinv(-s, i), V)});
              return e;
            };
            push(std::move(X));
          }
        }
  }

  // k X
  auto kx_conj = [&](const std::string& fam, char pm, int s, int i, int j, const Rat& c, bool trivial) {
    RelationJob J;
    J.id = {fam, i, j, s, pm};
    J.build = [=] {
      Expr e;
      // X^-: k^{-1} X k;  X^+: k X k^{-1} (the trivial lines are printed as k^{-1} X k for both)
      bool inv_first = pm == '-' || trivial;
      const SeriesM& a = inv_first ? cur->kinv(s, j) : cur->k(s, j);
      const SeriesM& b = inv_first ? cur->k(s, j) : cur->kinv(s, j);
      MPoly pre = trivial ? MPoly(1) : lin(0);
      MPoly rhs = trivial ? MPoly(1) : lin(c);
      e.add(1, pre, {F1(a, U), F1(cur->X(pm, i), V), F1(b, U)});
      e.add(-1, rhs, {F1(cur->X(pm, i), V)});
      return e;
    };
    push(std::move(J));
  };
  if (want("kX-trivial")) {
    if (N < 3) skipped("kX-trivial", "needs j outside {i, i+1}: m+n >= 3");
    for (char pm : {'-', '+'})
      for (int s : {+1, -1})
        for (int i = 1; i < N; ++i)
          for (int j = 1; j <= N; ++j)
            if (j != i && j != i + 1) kx_conj("kX-trivial", pm, s, i, j, 0, true);
  }
  for (char pm : {'-', '+'}) {
    std::string fam = pm == '-' ? "kXminus-near" : "kXplus-near";
    if (!want(fam)) continue;
    bool any = false;
    for (int s : {+1, -1})
      for (int i = 1; i < N; ++i) {
        if (i == m) continue;
        for (int j : {i, i + 1}) {
          kx_conj(fam, pm, s, i, j, detail::near_shift(m, i, j, h), false);
          any = true;
        }
      }
    if (!any) skipped(fam, "no index i != m with 1 <= i < m+n");
  }
  if (want("kX-odd-root")) {
    if (m < 1 || m >= N) skipped("kX-odd-root", "X_m absent (needs m >= 1 and n >= 1)");
    else
      for (char pm : {'-', '+'})
        for (int s : {+1, -1})
          for (int j : {m, m + 1}) kx_conj("kX-odd-root", pm, s, m, j, h2, false);
  }

  // X X
  auto xx_same = [&](const std::string& fam, char pm, int i, const Rat& c) {
    // (u - v + c) X(u) X(v) - (u - v - c) X(v) X(u)
    RelationJob J;
    J.id = {fam, i, 0, 0, pm};
    J.build = [=] {
      Expr e;
      e.add(1, lin(c), {F1(cur->X(pm, i), U), F1(cur->X(pm, i), V)});
      e.add(-1, lin(-c), {F1(cur->X(pm, i), V), F1(cur->X(pm, i), U)});
      return e;
    };
    push(std::move(J));
  };
  if (want("XX-same-even")) {
    if (m < 2) skipped("XX-same-even", "no index i < m");
    for (char pm : {'-', '+'})
      for (int i = 1; i < m; ++i) xx_same("XX-same-even", pm, i, pm == '-' ? Rat(-h2) : h2);
  }
  if (want("XX-same-oddblock")) {
    if (N - 1 <= m) skipped("XX-same-oddblock", "no index m < i <= m+n-1");
    for (char pm : {'-', '+'})
      for (int i = m + 1; i < N; ++i) xx_same("XX-same-oddblock", pm, i, pm == '-' ? h2 : Rat(-h2));
  }
  if (want("XX-fermionic")) {
    if (m < 1 || m >= N) skipped("XX-fermionic", "X_m absent (needs m >= 1 and n >= 1)");
    else
      for (char pm : {'-', '+'}) {
        RelationJob J;
        J.id = {"XX-fermionic", m, 0, 0, pm};
        J.build = [=] {
          Expr e;
          e.add(1, {F1(cur->X(pm, m), U), F1(cur->X(pm, m), V)});
          e.add(1, {F1(cur->X(pm, m), V), F1(cur->X(pm, m), U)});
          return e;
        };
        push(std::move(J));
      }
  }
  for (char pm : {'+', '-'}) {
    std::string fam = pm == '+' ? "XX-adjacent-plus" : "XX-adjacent-minus";
    if (!want(fam)) continue;
    if (N < 3) skipped(fam, "needs X_i and X_{i+1}: m+n >= 3");
    for (int i = 1; i + 1 < N; ++i) {
      Rat cp = i < m ? h2 : Rat(-h2);
      RelationJob J;
      J.id = {fam, i, i + 1, 0, pm};
      J.build = [=] {
        Expr e;
        MPoly left = pm == '+' ? lin(0) : lin(cp), right = pm == '+' ? lin(cp) : lin(0);
        e.add(1, left, {F1(cur->X(pm, i), U), F1(cur->X(pm, i + 1), V)});
        e.add(-1, right, {F1(cur->X(pm, i + 1), V), F1(cur->X(pm, i), U)});
        return e;
      };
      push(std::move(J));
    }
  }

  // X+ X-: bracket by parity, delta terms on the diagonal.  The residual is
  // [X+_i(u), X-_j(v)} - kappa (delta(u-v) phi_i(v) - delta(u-v) psi_i(u)).
  auto xpxm = [&](const std::string& fam, int i, int j, bool anti, const Rat& kappa, const std::string& cat,
                  const std::string& form) {
    RelationJob J;
    J.id = {fam, i, j, 0, 0};
    J.category = cat;
    J.form = form;
    J.build = [=] {
      Expr e;
      e.add(1, {F1(cur->X('+', i), U), F1(cur->X('-', j), V)});
      e.add(anti ? 1 : -1, {F1(cur->X('-', j), V), F1(cur->X('+', i), U)});
      if (i == j) {
        e.add(-kappa, {Delta(U, V), F1(cur->phi(i), V)});
        e.add(kappa, {Delta(U, V), F1(cur->psi(i), U)});
      }
      return e;
    };
    push(std::move(J));
  };
  if (want("XplusXminus-commutator")) {
    for (int i = 1; i < N; ++i)
      for (int j = 1; j < N; ++j) {
        if (i != m && j != m) {
          xpxm("XplusXminus-commutator", i, j, false, -h2, "printed", "");
          if (i == j && i > m) xpxm("XplusXminus-commutator", i, j, false, h2, "amended", "amended");
        } else if (i != j) {
          // one odd, one even generator: commutator with zero right side, not listed
          xpxm("XplusXminus-commutator", i, j, false, 0, "unstated", "");
        }
      }
  }
  if (want("XplusXminus-anticommutator")) {
    if (m < 1 || m >= N) {
      skipped("XplusXminus-anticommutator", "X_m absent (needs m >= 1 and n >= 1)");
    } else {
      xpxm("XplusXminus-anticommutator", m, m, true, h2, "printed", "");
      xpxm("XplusXminus-anticommutator", m, m, true, -h2, "amended", "amended");
    }
  }

  // Serre relations in u1, u2, v (and v1, v2)
  auto triple = [](const SeriesM& A, const SeriesM& B) {
    // A(u1) A(u2) B(v) - 2 A(u1) B(v) A(u2) + B(v) A(u1) A(u2)
    std::vector<std::pair<Rat, std::vector<Factor>>> t;
    t.push_back({1, {F(A, U1), F(A, U2), F(B, V)}});
    t.push_back({-2, {F(A, U1), F(B, V), F(A, U2)}});
    t.push_back({1, {F(B, V), F(A, U1), F(A, U2)}});
    return t;
  };
  for (const std::string fam : {"serre1", "serre2"}) {
    if (!want(fam)) continue;
    bool any = false;
    for (char pm : {'+', '-'})
      for (int i = 1; i + 1 < N; ++i) {
        if (fam == "serre1" ? i == m : i == m - 1) continue;
        any = true;
        RelationJob J;
        J.id = {fam, i, i + 1, 0, pm};
        J.vars = {U1, U2, V};
        J.build = [=] {
          Expr e;
          const SeriesM& A = fam == "serre1" ? cur->X(pm, i) : cur->X(pm, i + 1);
          const SeriesM& B = fam == "serre1" ? cur->X(pm, i + 1) : cur->X(pm, i);
          for (const auto& [c, fs] : triple(A, B)) detail::add_symmetrised(e, c, MPoly(1), fs);
          return e;
        };
        push(std::move(J));
      }
    if (!any)
      skipped(fam, fam == "serre1" ? "no index i != m with X_{i+1} present"
                                   : "no index i != m-1 with X_{i+1} present");
  }
  if (want("serre3")) {
    if (m < 2) skipped("serre3", "m-1 < 1: X_{m-1} absent");
    else if (m >= N) skipped("serre3", "n = 0: X_m is not odd");
    else
      for (char pm : {'+', '-'}) {
        RelationJob J;
        J.id = {"serre3", m, m - 1, 0, pm};
        J.vars = {U1, U2, V};
        J.build = [=] {
          Expr e;
          MPoly pre = lin(U1, U2, pm == '+' ? Rat(-h2) : h2);
          for (const auto& [c, fs] : triple(cur->X(pm, m), cur->X(pm, m - 1))) detail::add_symmetrised(e, c, pre, fs);
          return e;
        };
        push(std::move(J));
      }
  }
  if (want("serre4")) {
    if (m < 1) skipped("serre4", "m = 0: X_m absent");
    else if (m + 1 > N - 1) skipped("serre4", "m+1 > m+n-1: X_{m+1} absent");
    else
      for (char pm : {'+', '-'}) {
        RelationJob J;
        J.id = {"serre4", m, m + 1, 0, pm};
        J.vars = {U1, U2, V};
        J.build = [=] {
          Expr e;
          MPoly pre = lin(U2, U1, pm == '+' ? Rat(-h2) : h2);
          for (const auto& [c, fs] : triple(cur->X(pm, m), cur->X(pm, m + 1))) detail::add_symmetrised(e, c, pre, fs);
          return e;
        };
        push(std::move(J));
      }
  }
  if (want("extra-serre")) {
    if (m < 2 || m + 1 > N - 1) {
      skipped("extra-serre", "needs m >= 2 and n >= 2 so that X_{m-1} and X_{m+1} both exist");
    } else {
      for (char pm : {'+', '-'}) {
        RelationJob J;
        J.id = {"extra-serre", m - 1, m + 1, 0, pm};
        J.vars = {U1, U2, V1, V2};
        J.build = [=] {
          Expr e;
          Rat s = pm == '+' ? Rat(-h2) : h2;  // the "-+ 2h" of the upper/lower sign
          const SeriesM& Xm = cur->X(pm, m);
          const SeriesM& Xa = cur->X(pm, m - 1);
          const SeriesM& Xb = cur->X(pm, m + 1);
          MPoly p12 = lin(U1, U2, s), p21 = lin(U2, U1, s);
          detail::add_symmetrised(e, 1, p12, {F(Xm, U1), F(Xm, U2), F(Xa, V1), F(Xb, V2)});
          detail::add_symmetrised(e, -2, p12, {F(Xm, U1), F(Xa, V1), F(Xm, U2), F(Xb, V2)});
          detail::add_symmetrised(e, 2 * s, MPoly(1), {F(Xa, V1), F(Xm, U1), F(Xm, U2), F(Xb, V2)});
          detail::add_symmetrised(e, -2, p21, {F(Xa, V1), F(Xm, U1), F(Xb, V2), F(Xm, U2)});
          detail::add_symmetrised(e, 1, p21, {F(Xa, V1), F(Xb, V2), F(Xm, U1), F(Xm, U2)});
          return e;
        };
        push(std::move(J));
      }
    }
  }
  return jobs;
}

inline CheckReport relation_report(const CurrentSystem& cs, const RelationJob& j) {
  CheckReport r;
  r.suite = "relations";
  r.name = j.id.family;
  r.category = j.category;
  r.param("gl", cs.dims.str()).param("points", cs.label).param("hbar", rat_str(cs.hbar));
  r.param("order", std::to_string(cs.order));
  if (j.id.i) r.param("i", std::to_string(j.id.i));
  if (j.id.j) r.param("j", std::to_string(j.id.j));
  if (j.id.sign) r.param("k", detail::sign_str(j.id.sign));
  if (j.id.x) r.param("X", std::string(1, j.id.x));
  if (!j.form.empty()) r.param("form", j.form);
  return r;
}

inline CheckReport run_relation_job(const CurrentSystem& cs, const RelationJob& j) {
  CheckReport r = relation_report(cs, j);
  if (!j.skip.empty()) return r.skip(j.skip);
  Stopwatch sw;
  try {
    Expr e = j.build();
    auto box = expr_box(e, j.vars);
    auto s = scan_zero(e, j.vars, box, cs.d);
    fill_report(r, s, j.vars, box);
  } catch (const std::exception& ex) {
    r.status = Status::Error;
    r.reason = ex.what();
  }
  r.seconds = sw.seconds();
  return r;
}

inline std::vector<CheckReport> check_relations(const CurrentSystem& cs, const RelationOptions& opt = {}) {
  auto jobs = relation_jobs(cs, opt);
  std::function<CheckReport(std::size_t)> f = [&](std::size_t k) { return run_relation_job(cs, jobs[k]); };
  return parallel_map<CheckReport>(jobs.size(), f, opt.workers);
}

inline CheckReport check_relation(const CurrentSystem& cs, const RelationId& id, const RelationOptions& opt = {}) {
  RelationOptions o = opt;
  o.only = {id.family};
  for (const auto& j : relation_jobs(cs, o))
    if (j.id.i == id.i && j.id.j == id.j && j.id.sign == id.sign && j.id.x == id.x &&
        j.category != "amended" && j.category != "expanded")
      return run_relation_job(cs, j);
  for (const auto& j : relation_jobs(cs, o))
    if (!j.skip.empty()) return run_relation_job(cs, j);
  RelationJob none;
  none.id = id;
  none.skip = "no such instance for " + cs.dims.str();
  return run_relation_job(cs, none);
}

inline std::vector<CheckReport> check_serre(const CurrentSystem& cs, const std::string& which,
                                            const RelationOptions& opt = {}) {
  if (!is_serre_family(which)) throw std::invalid_argument("unknown Serre relation: " + which);
  RelationOptions o = opt;
  o.only = {which};
  o.serre = true;
  return check_relations(cs, o);
}

// Relation statuses that change when the module changes, restricted to
// instances present in both lists.
inline std::vector<std::string> flipped_to_fail(const std::vector<CheckReport>& base,
                                                const std::vector<CheckReport>& other) {
  std::map<std::string, Status> b;
  for (const auto& r : base) b[r.name + "|" + r.category + "|" + r.key()] = r.status;
  std::vector<std::string> out;
  for (const auto& r : other) {
    std::string k = r.name + "|" + r.category + "|" + r.key();
    auto it = b.find(k);
    if (it != b.end() && it->second == Status::Pass && r.status == Status::Fail) out.push_back(r.key());
  }
  return out;
}

// ------------------------------------------------------------ gl(1|1)

namespace detail {

struct Gl11Line {
  std::string name;
  RelationId general;  // the matching instance of the general suite
  std::function<Expr()> build;
};

}  // namespace detail

// The gl(1|1) relation list written out directly with its own literal
// coefficients, then compared line by line with the general suite.
inline std::vector<CheckReport> check_gl11(const CurrentSystem& cs, const RelationOptions& opt = {}) {
  if (!(cs.dims == GradedDims(1, 1))) throw std::invalid_argument("check_gl11 needs gl(1|1) currents");
  using detail::lin;
  const Rat h = cs.hbar;
  std::vector<detail::Gl11Line> lines;
  const auto& kp = cs.kplus;
  const auto& km = cs.kminus;
  const auto& kpi = cs.kplus_inv;
  const auto& kmi = cs.kminus_inv;
  const SeriesM& Xp = cs.Xplus[0];
  const SeriesM& Xm = cs.Xminus[0];
  for (int s : {+1, -1})
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        const SeriesM& a = (s > 0 ? kp : km)[static_cast<std::size_t>(i - 1)];
        const SeriesM& b = (s > 0 ? kp : km)[static_cast<std::size_t>(j - 1)];
        lines.push_back({"kk-same " + std::string(s > 0 ? "k+" : "k-") + std::to_string(i) + std::to_string(j),
                         {"kk-same-sign", i, j, s, 0}, [pa = &a, pb = &b] {
                           Expr e;
                           e.add(1, {F(*pa, U), F(*pb, V)});
                           e.add(-1, {F(*pb, V), F(*pa, U)});
                           return e;
                         }});
      }
  lines.push_back({"k+1 k-1", {"kk-mixed-even", 1, 0, 0, 0}, [&] {
                     Expr e;
                     e.add(1, {F(kp[0], U), F(km[0], V)});
                     e.add(-1, {F(km[0], V), F(kp[0], U)});
                     return e;
                   }});
  lines.push_back({"k+2 k-2", {"kk-mixed-odd", 2, 0, 0, 0}, [&] {
                     MPoly pre = lin(-2 * h) * lin(2 * h);
                     Expr e;
                     e.add(1, pre, {F(kp[1], U), F(km[1], V)});
                     e.add(-1, pre, {F(km[1], V), F(kp[1], U)});
                     return e;
                   }});
  for (int s : {+1, -1})
    lines.push_back({std::string("k") + (s > 0 ? "-" : "+") + "2^-1 k" + (s > 0 ? "+" : "-") + "1",
                     {"kk-cross-ij", 2, 1, s, 0}, [&, s] {
                       const SeriesM& inv2 = s > 0 ? kmi[1] : kpi[1];
                       const SeriesM& k1 = s > 0 ? kp[0] : km[0];
                       MPoly pre = lin(0) * lin(2 * h);
                       Expr e;
                       e.add(1, pre, {F(inv2, V), F(k1, U)});
                       e.add(-1, pre, {F(k1, U), F(inv2, V)});
                       return e;
                     }});
  for (char pm : {'-', '+'})
    for (int s : {+1, -1})
      for (int i = 1; i <= 2; ++i)
        lines.push_back({std::string("k") + (s > 0 ? "+" : "-") + std::to_string(i) + " X" + pm + "1",
                         {"kX-odd-root", 1, i, s, pm}, [&, pm, s, i] {
                           const SeriesM& k = (s > 0 ? kp : km)[static_cast<std::size_t>(i - 1)];
                           const SeriesM& ki = (s > 0 ? kpi : kmi)[static_cast<std::size_t>(i - 1)];
                           const SeriesM& X = pm == '+' ? Xp : Xm;
                           Expr e;
                           if (pm == '-') e.add(1, lin(0), {F(ki, U), F(X, V), F(k, U)});
                           else e.add(1, lin(0), {F(k, U), F(X, V), F(ki, U)});
                           e.add(-1, lin(2 * h), {F(X, V)});
                           return e;
                         }});
  for (char pm : {'-', '+'})
    lines.push_back({std::string("{X") + pm + "1, X" + pm + "1}", {"XX-fermionic", 1, 0, 0, pm}, [&, pm] {
                       const SeriesM& X = pm == '+' ? Xp : Xm;
                       Expr e;
                       e.add(1, {F(X, U), F(X, V)});
                       e.add(1, {F(X, V), F(X, U)});
                       return e;
                     }});
  lines.push_back({"{X+1, X-1}", {"XplusXminus-anticommutator", 1, 1, 0, 0}, [&] {
                     Expr e;
                     e.add(1, {F(Xp, U), F(Xm, V)});
                     e.add(1, {F(Xm, V), F(Xp, U)});
                     e.add(-2 * h, {Delta(U, V), F(cs.phi[0], V)});
                     e.add(2 * h, {Delta(U, V), F(cs.psi[0], U)});
                     return e;
                   }});

  std::function<CheckReport(std::size_t)> run = [&](std::size_t k) {
    RelationJob j;
    j.id = lines[k].general;
    j.build = lines[k].build;
    CheckReport r = run_relation_job(cs, j);
    r.suite = "gl11";
    r.name = lines[k].name;
    r.params.clear();
    r.param("gl", "gl(1|1)").param("points", cs.label).param("hbar", rat_str(h)).param("order", std::to_string(cs.order));
    return r;
  };
  std::vector<CheckReport> out = parallel_map<CheckReport>(lines.size(), run, opt.workers);

  // agreement with the general suite
  RelationOptions go = opt;
  go.serre = false;
  go.expanded = false;
  auto general = check_relations(cs, go);
  CheckReport agree;
  agree.suite = "gl11";
  agree.name = "agreement-with-general-suite";
  agree.category = "structure";
  agree.param("gl", "gl(1|1)").param("points", cs.label).param("hbar", rat_str(h)).param("order", std::to_string(cs.order));
  auto jobs = relation_jobs(cs, go);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const RelationId& id = lines[k].general;
    const CheckReport* g = nullptr;
    for (std::size_t t = 0; t < jobs.size(); ++t)
      if (jobs[t].id.family == id.family && jobs[t].id.i == id.i && jobs[t].id.j == id.j &&
          jobs[t].id.sign == id.sign && jobs[t].id.x == id.x && jobs[t].form != "amended" &&
          jobs[t].form != "expanded" && jobs[t].category != "amended")
        g = &general[t];
    ++agree.compared;
    if (!g) {
      agree.fail("line '" + lines[k].name + "' has no counterpart in the general suite");
      break;
    }
    if (g->status != out[k].status) {
      agree.fail("line '" + lines[k].name + "' is " + status_str(out[k].status) + " but the general suite says " +
                 status_str(g->status));
      break;
    }
  }
  out.push_back(agree);
  return out;
}

}  // namespace superyang
