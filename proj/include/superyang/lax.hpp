// SPDX-License-Identifier: MIT
// Evaluation Lax operators L(u) = R(u - a) and the exchange relations they obey.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "superyang/rmatrix.hpp"
#include "superyang/terms.hpp"

namespace superyang {

struct EvalModule {
  GradedDims dims;
  Rat a;
  Rat hbar;
  Rat c = 0;

  EvalModule(const GradedDims& d, const Rat& point, const Rat& h, const Rat& charge = 0)
      : dims(d), a(point), hbar(h), c(charge) {
    require_hbar(hbar);
    if (c != 0) throw std::invalid_argument("evaluation modules have central charge 0");
    if (a == 0 || a == 2 * hbar || a == -2 * hbar)
      throw std::invalid_argument("evaluation point " + rat_short(a) + " is excluded (0, +-2 hbar)");
  }
};

// Quantum space of a Lax operator: one evaluation module or a tensor chain.
struct QuantumSpace {
  GradedDims dims;
  Rat hbar;
  std::vector<Rat> points;
  Grading grading;

  QuantumSpace(const GradedDims& d, const Rat& h, std::vector<Rat> pts) : dims(d), hbar(h), points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("at least one evaluation point is needed");
    for (const auto& p : points) EvalModule(d, p, h);
    grading = Grading(d);
    for (std::size_t k = 1; k < points.size(); ++k) grading = grading * Grading(d);
  }
  std::size_t dim() const { return grading.size(); }
  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < points.size(); ++k) s += (k ? "," : "") + rat_short(points[k]);
    return s;
  }
};

// Block (alpha, beta) of an operator on aux (x) quantum, aux index outer.
template <class T>
Matrix<T> aux_block(const Matrix<T>& L, std::size_t N, std::size_t d, std::size_t al, std::size_t be) {
  (void)N;
  return L.block(al * d, be * d, d, d);
}

// Rational Lax operator in u on V (x) V_{a1} (x) ... (x) V_{ak}.
inline MatF rational_lax(const QuantumSpace& q) {
  const GradedDims& d = q.dims;
  const std::size_t N = static_cast<std::size_t>(d.size());
  MatF R = r_compact(d, q.hbar);
  MatF L = substitute(R, Rat(1), -q.points[0]);
  Grading gq(d);
  for (std::size_t k = 1; k < q.points.size(); ++k) {
    MatF Lb = substitute(R, Rat(1), -q.points[k]);
    std::size_t da = gq.size(), db = static_cast<std::size_t>(d.size());
    MatF M(N * da * db, N * da * db);
    for (std::size_t al = 0; al < N; ++al)
      for (std::size_t be = 0; be < N; ++be) {
        MatF S(da * db, da * db);
        for (std::size_t g = 0; g < N; ++g)
          S += graded_kron(aux_block(L, N, da, al, g), gq, aux_block(Lb, N, db, g, be), Grading(d));
        M.set_block(al * da * db, be * da * db, S);
      }
    L = M;
    gq = gq * Grading(d);
  }
  return L;
}

struct LaxOperator {
  int sign = +1;  // +1: expanded at infinity, -1: expanded at zero
  std::size_t N = 0, d = 0;
  SeriesM L;
  SeriesM block(std::size_t al, std::size_t be) const {
    return L.map([&](const MatQ& m) { return m.block(al * d, be * d, d, d); });
  }
};

inline LaxOperator build_eval_lax(const QuantumSpace& q, int sign, int order) {
  MatF L = rational_lax(q);
  LaxOperator op;
  op.sign = sign;
  op.N = static_cast<std::size_t>(q.dims.size());
  op.d = q.dim();
  if (sign > 0) {
    op.L = expand_at_infinity(L, order);
    // window [-N, 0]
    op.L = restrict_box(op.L, {Window{-order, 0}});
  } else {
    try {
      op.L = expand_at_zero(L, order);
    } catch (const PoleError&) {
      throw PoleError("pole of the Lax operator at the expansion center u = 0; choose a different evaluation point");
    }
  }
  return op;
}

inline LaxOperator build_eval_lax(const EvalModule& m, int sign, int order) {
  return build_eval_lax(QuantumSpace(m.dims, m.hbar, {m.a}), sign, order);
}

// ------------------------------------------------------------ expressions

// Constant operator pieces of a polynomial matrix prefactor sum_k mono_k C_k.
struct PolyOp {
  std::vector<std::pair<Mono, SeriesM>> parts;
  std::vector<std::pair<Mono, MatQ>> aux;  // C_k before tensoring with the quantum identity
};

// Clear the denominators of a rational matrix R(x) and substitute x = arg:
// q(x) R(x) = Q(x).  Returns the parts of Q(arg) (x) I_d together with q.
inline PolyOp clear_and_substitute(const MatF& R, const MPoly& arg, std::size_t d, UPoly* denom = nullptr) {
  UPoly q(1);
  for (const auto& e : R.data())
    if (!e.is_zero()) q = q * (e.den() / UPoly::gcd(q, e.den()));
  q = q.monic();
  std::map<Mono, MatQ> acc;
  const std::size_t n = R.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RatFun& e = R(i, j);
      if (e.is_zero()) continue;
      UPoly num = e.num() * (q / e.den());
      MPoly p = MPoly::substitute(num, arg);
      for (const auto& [m, c] : p.terms()) {
        auto it = acc.find(m);
        if (it == acc.end()) it = acc.emplace(m, MatQ(n, n)).first;
        it->second(i, j) += c;
      }
    }
  if (denom) *denom = q;
  PolyOp op;
  MatQ Id = MatQ::identity(d);
  for (auto& [m, c] : acc) {
    op.aux.emplace_back(m, c);
    op.parts.emplace_back(m, constant_series(kron(c, Id)));
  }
  return op;
}

// An ordered product of factors where some entries are polynomial operator sums.
struct Item {
  const PolyOp* poly = nullptr;
  Factor f;
  Item(const PolyOp& p) : poly(&p) {}  // NOLINT
  Item(Factor x) : f(std::move(x)) {}   // NOLINT
};

inline void add_chain(Expr& e, const Rat& coef, const std::vector<Item>& items, const MPoly& pre = MPoly(1)) {
  std::vector<Factor> fs;
  auto rec = [&](auto&& self, std::size_t k, MPoly p) -> void {
    if (k == items.size()) {
      e.add(coef, p, fs);
      return;
    }
    if (!items[k].poly) {
      fs.push_back(items[k].f);
      self(self, k + 1, p);
      fs.pop_back();
      return;
    }
    for (const auto& [m, c] : items[k].poly->parts) {
      fs.push_back(F(c));
      self(self, k + 1, p * MPoly::monomial(Rat(1), m));
      fs.pop_back();
    }
  };
  rec(rec, 0, pre);
}

// Exponent box covering every possibly nonzero coefficient of e.
inline std::vector<Window> expr_box(const Expr& e, const std::vector<int>& vars) {
  std::vector<Window> box;
  for (int v : vars) {
    long long lo = LLONG_MAX, hi = LLONG_MIN;
    for (const auto& t : e.terms()) {
      long long slo = 0, shi = 0;
      for (const auto& f : t.factors) {
        if (f.delta) continue;
        for (std::size_t k = 0; k < f.vars.size(); ++k)
          if (f.vars[k] == v) {
            slo += f.axes()[k].w.lo;
            shi += f.axes()[k].w.hi;
          }
      }
      int plo = INT_MAX, phi = INT_MIN;
      for (const auto& [m, c] : t.pre.terms()) {
        plo = std::min(plo, m[static_cast<std::size_t>(v)]);
        phi = std::max(phi, m[static_cast<std::size_t>(v)]);
      }
      lo = std::min(lo, slo + plo);
      hi = std::max(hi, shi + phi);
    }
    if (lo > hi) lo = hi = 0;
    box.push_back(Window{static_cast<int>(lo), static_cast<int>(hi)});
  }
  return box;
}

// embeddings of an operator on aux (x) quantum into aux1 (x) aux2 (x) quantum
inline MatQ embed_aux1(const MatQ& L, std::size_t N, std::size_t d) {
  MatQ M(N * N * d, N * N * d);
  for (std::size_t al = 0; al < N; ++al)
    for (std::size_t ap = 0; ap < N; ++ap) {
      MatQ b = L.block(al * d, ap * d, d, d);
      if (b.is_zero()) continue;
      for (std::size_t be = 0; be < N; ++be) M.set_block((al * N + be) * d, (ap * N + be) * d, b);
    }
  return M;
}
inline MatQ embed_aux2(const MatQ& L, std::size_t N, std::size_t d) {
  MatQ M(N * N * d, N * N * d);
  for (std::size_t al = 0; al < N; ++al) M.set_block(al * N * d, al * N * d, L);
  return M;
}

struct RllOptions {
  int order = 8;
};

namespace detail {

struct RllSetup {
  GradedDims dims;
  Rat hbar;
  std::size_t N, d;
  LaxOperator Lp, Lm;
  SeriesM Lp_inv, Lm_inv;
  MatQ theta;  // theta (x) I_d on the triple space
};

inline CheckReport rll_report(const std::string& name, const QuantumSpace& q, int order) {
  CheckReport r;
  r.suite = "rll";
  r.name = name;
  r.param("gl", q.dims.str()).param("points", q.str()).param("hbar", rat_str(q.hbar)).param("order", std::to_string(order));
  return r;
}

inline CheckReport run_scan(CheckReport rep, const Expr& e, std::size_t dim) {
  Stopwatch sw;
  try {
    std::vector<int> vars{U, V};
    auto box = expr_box(e, vars);
    auto s = scan_zero(e, vars, box, dim);
    fill_report(rep, s, vars, box);
  } catch (const std::exception& ex) {
    rep.status = Status::Error;
    rep.reason = ex.what();
  }
  rep.seconds = sw.seconds();
  return rep;
}

}  // namespace detail

// Component form with explicit signs, computed block by block.
// Residual rows (alpha, beta, gamma), columns (alpha', beta', gamma').
inline std::map<std::pair<int, int>, MatQ> rll_component_table(const GradedDims& dims, const PolyOp& Rl,
                                                                const PolyOp& Rr, const SeriesM& Lu,
                                                                const SeriesM& Lv, std::size_t d,
                                                                const std::vector<Window>& box) {
  const std::size_t N = static_cast<std::size_t>(dims.size());
  auto p = [&](std::size_t i) { return dims.p0(static_cast<int>(i)); };
  std::map<std::pair<int, int>, MatQ> table;
  std::map<std::pair<const SeriesM*, int>, std::vector<MatQ>> cache;
  const MatQ zero_block(d, d);
  for (int pu = box[0].lo; pu <= box[0].hi; ++pu)
    for (int qv = box[1].lo; qv <= box[1].hi; ++qv) {
      MatQ res(N * N * d, N * N * d);
      bool known = true;
      auto blockL = [&](const SeriesM& s, int e, std::size_t a, std::size_t b) -> const MatQ& {
        auto& slot = cache[{&s, e}];
        if (slot.empty()) {
          std::vector<int> ex{e};
          if (!s.known(ex)) {
            slot.assign(1, MatQ());
          } else {
            MatQ whole = s.at(ex);
            for (std::size_t x = 0; x < N; ++x)
              for (std::size_t y = 0; y < N; ++y) slot.push_back(whole.block(x * d, y * d, d, d));
          }
        }
        if (slot.size() == 1) {
          known = false;
          return zero_block;
        }
        return slot[a * N + b];
      };
      // left: R_{ab}^{a"b"} L(u)_{a"}^{a'} L(v)_{b"}^{b'} (-1)^{[a']([b']+[b"])}
      for (const auto& [m, C] : Rl.aux) {
        int eu = pu - m[U], ev = qv - m[V];
        for (std::size_t r = 0; r < N * N && known; ++r)
          for (std::size_t c = 0; c < N * N && known; ++c) {
            if (is_zero(C(r, c))) continue;
            std::size_t a = r / N, b = r % N, a2 = c / N, b2 = c % N;
            for (std::size_t a1 = 0; a1 < N && known; ++a1)
              for (std::size_t b1 = 0; b1 < N && known; ++b1) {
                const MatQ& x = blockL(Lu, eu, a2, a1);
                if (x.is_zero()) continue;
                const MatQ& y = blockL(Lv, ev, b2, b1);
                if (y.is_zero()) continue;
                MatQ prod = x * y;
                Rat k = C(r, c);
                if ((p(a1) * (p(b1) + p(b2))) & 1) k = -k;
                for (std::size_t i = 0; i < d; ++i)
                  for (std::size_t j = 0; j < d; ++j)
                    if (!is_zero(prod(i, j))) res((a * N + b) * d + i, (a1 * N + b1) * d + j) += k * prod(i, j);
              }
          }
      }
      // right: L(v)_b^{b"} L(u)_a^{a"} R_{a"b"}^{a'b'} (-1)^{[a]([b]+[b"])}
      for (const auto& [m, C] : Rr.aux) {
        int eu = pu - m[U], ev = qv - m[V];
        for (std::size_t r = 0; r < N * N && known; ++r)
          for (std::size_t c = 0; c < N * N && known; ++c) {
            if (is_zero(C(r, c))) continue;
            std::size_t a2 = r / N, b2 = r % N, a1 = c / N, b1 = c % N;
            for (std::size_t a = 0; a < N && known; ++a)
              for (std::size_t b = 0; b < N && known; ++b) {
                const MatQ& y = blockL(Lv, ev, b, b2);
                if (y.is_zero()) continue;
                const MatQ& x = blockL(Lu, eu, a, a2);
                if (x.is_zero()) continue;
                MatQ prod = y * x;
                Rat k = C(r, c);
                if ((p(a) * (p(b) + p(b2))) & 1) k = -k;
                for (std::size_t i = 0; i < d; ++i)
                  for (std::size_t j = 0; j < d; ++j)
                    if (!is_zero(prod(i, j))) res((a * N + b) * d + i, (a1 * N + b1) * d + j) -= k * prod(i, j);
              }
          }
      }
      if (known) table.emplace(std::make_pair(pu, qv), std::move(res));
    }
  return table;
}

inline std::map<std::pair<int, int>, MatQ> expr_table(const Expr& e, const std::vector<Window>& box, std::size_t dim) {
  std::map<std::pair<int, int>, MatQ> t;
  std::array<int, kNumVars> y{};
  for (int pu = box[0].lo; pu <= box[0].hi; ++pu)
    for (int qv = box[1].lo; qv <= box[1].hi; ++qv) {
      y[U] = pu;
      y[V] = qv;
      auto r = eval_expr(e, y, dim);
      if (r.known) t.emplace(std::make_pair(pu, qv), std::move(r.value));
    }
  return t;
}

inline std::vector<CheckReport> check_rll(const QuantumSpace& q, const RllOptions& opt = {}) {
  std::vector<CheckReport> out;
  const GradedDims& dims = q.dims;
  const std::size_t N = static_cast<std::size_t>(dims.size()), d = q.dim(), D = N * N * d;
  const int order = opt.order;
  LaxOperator Lp = build_eval_lax(q, +1, order), Lm = build_eval_lax(q, -1, order);

  MPoly u = MPoly::var(U), v = MPoly::var(V);
  MatF R = r_compact(dims, q.hbar);
  UPoly qden;
  PolyOp Ruv = clear_and_substitute(R, u - v, d, &qden);
  MatF R21 = r21(build_r(dims, q.hbar));  // R21(x) = R(-x)^{-1}
  PolyOp R21uv = clear_and_substitute(R21, u - v, d);

  MatQ theta = kron(theta_op(dims), MatQ::identity(d));
  auto tconj = [&](const SeriesM& s) { return s.map([&](const MatQ& m) { return MatQ(theta * m * theta); }); };
  auto e1 = [&](const SeriesM& s, int var) {
    return rename(s.map([&](const MatQ& m) { return embed_aux1(m, N, d); }), {{U, var}});
  };
  auto e2 = [&](const SeriesM& s, int var) {
    return rename(s.map([&](const MatQ& m) { return embed_aux2(m, N, d); }), {{U, var}});
  };

  SeriesM Lp_inv = series_inverse(Lp.L, Expansion::AtInfinity);
  SeriesM Lm_inv = series_inverse(Lm.L, Expansion::AtZero);

  // L1(u) and theta L2(v) theta
  SeriesM L1p_u = e1(Lp.L, U), L1m_u = e1(Lm.L, U);
  SeriesM tL2p_v = tconj(e2(Lp.L, V)), tL2m_v = tconj(e2(Lm.L, V));
  // derived forms: L2 in u, L1 in v
  SeriesM tL2p_u = tconj(e2(Lp.L, U)), tL2m_u = tconj(e2(Lm.L, U));
  SeriesM L1p_v = e1(Lp.L, V), L1m_v = e1(Lm.L, V);
  SeriesM tL2pi_u = tconj(e2(Lp_inv, U)), tL2mi_u = tconj(e2(Lm_inv, U));
  SeriesM L1pi_v = e1(Lp_inv, V), L1mi_v = e1(Lm_inv, V);

  struct Form {
    std::string name;
    Expr e;
  };
  std::vector<Form> forms;
  auto form = [&](const std::string& name, std::vector<Item> lhs, std::vector<Item> rhs) {
    Expr e;
    add_chain(e, 1, lhs);
    add_chain(e, -1, rhs);
    forms.push_back({name, std::move(e)});
  };
  form("theta-same-plus", {Ruv, F(L1p_u), F(tL2p_v)}, {F(tL2p_v), F(L1p_u), Ruv});
  form("theta-same-minus", {Ruv, F(L1m_u), F(tL2m_v)}, {F(tL2m_v), F(L1m_u), Ruv});
  form("theta-mixed", {Ruv, F(L1p_u), F(tL2m_v)}, {F(tL2m_v), F(L1p_u), Ruv});
  form("swapped-same-plus", {R21uv, F(tL2p_u), F(L1p_v)}, {F(L1p_v), F(tL2p_u), R21uv});
  form("swapped-same-minus", {R21uv, F(tL2m_u), F(L1m_v)}, {F(L1m_v), F(tL2m_u), R21uv});
  form("swapped-mixed", {R21uv, F(tL2m_u), F(L1p_v)}, {F(L1p_v), F(tL2m_u), R21uv});
  form("inverse-same-plus", {F(tL2pi_u), F(L1pi_v), R21uv}, {R21uv, F(L1pi_v), F(tL2pi_u)});
  form("inverse-same-minus", {F(tL2mi_u), F(L1mi_v), R21uv}, {R21uv, F(L1mi_v), F(tL2mi_u)});
  form("inverse-mixed", {F(tL2pi_u), F(L1mi_v), R21uv}, {R21uv, F(L1mi_v), F(tL2pi_u)});
  form("half-inverse-same-plus", {F(L1pi_v), R21uv, F(tL2p_u)}, {F(tL2p_u), R21uv, F(L1pi_v)});
  form("half-inverse-same-minus", {F(L1mi_v), R21uv, F(tL2m_u)}, {F(tL2m_u), R21uv, F(L1mi_v)});
  form("half-inverse-mixed-minus", {F(L1mi_v), R21uv, F(tL2p_u)}, {F(tL2p_u), R21uv, F(L1mi_v)});
  form("half-inverse-mixed-plus", {F(L1pi_v), R21uv, F(tL2m_u)}, {F(tL2m_u), R21uv, F(L1pi_v)});

  for (const auto& f : forms) {
    CheckReport r = detail::rll_report(f.name, q, order);
    r.category = f.name.rfind("theta", 0) == 0 ? "theta" : "derived";
    out.push_back(detail::run_scan(r, f.e, D));
  }

  // component form with signs, and equality of its residual table with the theta form
  auto comp = [&](const std::string& name, const SeriesM& Lu, const SeriesM& Lv, const Expr& theta_e) {
    CheckReport r = detail::rll_report(name, q, order);
    r.category = "component";
    CheckReport eq = detail::rll_report(name + "-matches-theta", q, order);
    eq.category = "equivalence";
    Stopwatch sw;
    try {
      std::vector<Window> box = expr_box(theta_e, {U, V});
      auto ct = rll_component_table(dims, Ruv, Ruv, Lu, rename(Lv, {{U, V}}), d, box);
      auto tt = expr_table(theta_e, box, D);
      ResidualScan s;
      for (const auto& [k, m] : ct) {
        ++s.compared;
        if (!s.witness && !m.is_zero()) {
          Witness w;
          w.exponents = {{"u", k.first}, {"v", k.second}};
          s.witness = w;
        }
      }
      fill_report(r, s, {U, V}, box);
      for (const auto& [k, m] : ct) {
        auto it = tt.find(k);
        if (it == tt.end()) continue;
        ++eq.compared;
        if (!(it->second == m)) {
          eq.fail("residual tables differ");
          Witness w;
          w.exponents = {{"u", k.first}, {"v", k.second}};
          eq.witness = w;
          break;
        }
      }
      if (eq.compared == 0) eq.fail("component and theta forms share no known coefficient");
    } catch (const std::exception& ex) {
      r.status = eq.status = Status::Error;
      r.reason = eq.reason = ex.what();
    }
    r.seconds = eq.seconds = sw.seconds();
    out.push_back(r);
    out.push_back(eq);
  };
  comp("component-same-plus", Lp.L, Lp.L, forms[0].e);
  comp("component-same-minus", Lm.L, Lm.L, forms[1].e);
  comp("component-mixed", Lp.L, Lm.L, forms[2].e);

  // mixed relation with R(u - v) itself expanded: 1/(u - v + 2h) at u = infinity
  {
    const int K = order + 2;
    for (bool right_dir : {true, false}) {
      SeriesQ S = expand_inverse_difference(2 * q.hbar, K, right_dir);
      Expr e;
      add_chain(e, 1, {Scalar(S), Ruv, F(L1p_u), F(tL2m_v)});
      add_chain(e, -1, {Scalar(S), F(tL2m_v), F(L1p_u), Ruv});
      CheckReport r = detail::rll_report(right_dir ? "mixed-expanded-at-infinity" : "mixed-expanded-wrong-direction", q, order);
      r.category = "expanded";
      r = detail::run_scan(r, e, D);
      if (right_dir) out.push_back(r);
      else out.push_back(negative_control(r, "mixed-wrong-expansion-direction"));
    }
  }

  // inverse series and weight conservation
  {
    CheckReport r = detail::rll_report("lax-inverse", q, order);
    r.category = "structure";
    std::vector<std::pair<const SeriesM*, const SeriesM*>> pairs{{&Lp.L, &Lp_inv}, {&Lm.L, &Lm_inv}};
    for (auto [a, b] : pairs)
      for (const SeriesM& prod : {series_mul(*a, *b), series_mul(*b, *a)})
        for (std::size_t i = 0; i < prod.size(); ++i) {
          ++r.compared;
          bool at0 = prod.exponents(i)[0] == 0;
          const MatQ& m = prod.at_index(i);
          if (at0 ? !m.is_identity() : !m.is_zero()) r.fail("L L^{-1} differs from the identity");
        }
    out.push_back(r);
    CheckReport w = detail::rll_report("lax-weight-conservation", q, order);
    w.category = "structure";
    Grading g = Grading(dims) * q.grading;
    for (const auto* s : {&Lp.L, &Lm.L})
      for (std::size_t i = 0; i < s->size(); ++i)
        if (!weight_conserving(s->at_index(i), g)) w.fail("a Lax coefficient mixes parities");
    out.push_back(w);
  }
  (void)qden;
  return out;
}

}  // namespace superyang
