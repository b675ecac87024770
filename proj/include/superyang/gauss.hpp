// SPDX-License-Identifier: MIT
// Gauss decomposition L = (unit lower) (diagonal) (unit upper) over a
// noncommutative block ring, and the Drinfeld currents built from it.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "superyang/lax.hpp"

namespace superyang {

enum class GaussOrder { Schur, Doolittle };

// Factors indexed 0-based: e(i,j) with i > j, f(i,j) with i < j, k[i].
template <class B>
struct GaussFactors {
  std::size_t N = 0;
  std::map<std::pair<std::size_t, std::size_t>, B> e, f;
  std::vector<B> k;
  const B& E(std::size_t i, std::size_t j) const { return e.at({i, j}); }
  const B& Fu(std::size_t i, std::size_t j) const { return f.at({i, j}); }
};

namespace detail {

// Ring operations needed by the elimination.
struct SeriesRing {
  using B = SeriesM;
  static B mul(const B& a, const B& b) { return series_mul(a, b); }
  static B inv(const B& a) { return series_inverse(a); }
  static B sub(const B& a, const B& b) { return a - b; }
};
struct RationalRing {
  using B = MatF;
  static B mul(const B& a, const B& b) { return a * b; }
  static B inv(const B& a) { return inverse(a); }
  static B sub(const B& a, const B& b) { return a - b; }
};

template <class Ring>
typename Ring::B pivot_inverse(const typename Ring::B& k, std::size_t s) {
  try {
    return Ring::inv(k);
  } catch (const SingularError&) {
    throw SingularError("Gauss pivot k_" + std::to_string(s + 1) +
                        " is not invertible (degenerate evaluation point?)");
  }
}

template <class Ring>
GaussFactors<typename Ring::B> eliminate(std::vector<std::vector<typename Ring::B>> L, GaussOrder order) {
  using B = typename Ring::B;
  const std::size_t N = L.size();
  GaussFactors<B> g;
  g.N = N;
  if (order == GaussOrder::Schur) {
    for (std::size_t s = 0; s < N; ++s) {
      B k = L[s][s];
      B ki = pivot_inverse<Ring>(k, s);
      for (std::size_t j = s + 1; j < N; ++j) g.f.emplace(std::make_pair(s, j), Ring::mul(ki, L[s][j]));
      for (std::size_t i = s + 1; i < N; ++i) g.e.emplace(std::make_pair(i, s), Ring::mul(L[i][s], ki));
      for (std::size_t i = s + 1; i < N; ++i)
        for (std::size_t j = s + 1; j < N; ++j)
          L[i][j] = Ring::sub(L[i][j], Ring::mul(g.e.at({i, s}), L[s][j]));
      g.k.push_back(std::move(k));
    }
    return g;
  }
  // Doolittle: every entry from the original L and previously found factors
  for (std::size_t s = 0; s < N; ++s) {
    B k = L[s][s];
    for (std::size_t t = 0; t < s; ++t)
      k = Ring::sub(k, Ring::mul(Ring::mul(g.e.at({s, t}), g.k[t]), g.f.at({t, s})));
    B ki = pivot_inverse<Ring>(k, s);
    for (std::size_t j = s + 1; j < N; ++j) {
      B x = L[s][j];
      for (std::size_t t = 0; t < s; ++t)
        x = Ring::sub(x, Ring::mul(Ring::mul(g.e.at({s, t}), g.k[t]), g.f.at({t, j})));
      g.f.emplace(std::make_pair(s, j), Ring::mul(ki, x));
    }
    for (std::size_t i = s + 1; i < N; ++i) {
      B x = L[i][s];
      for (std::size_t t = 0; t < s; ++t)
        x = Ring::sub(x, Ring::mul(Ring::mul(g.e.at({i, t}), g.k[t]), g.f.at({t, s})));
      g.e.emplace(std::make_pair(i, s), Ring::mul(x, ki));
    }
    g.k.push_back(std::move(k));
  }
  return g;
}

}  // namespace detail

struct GaussData {
  int sign = +1;
  GradedDims dims{1, 1};
  std::size_t d = 0;
  GaussFactors<SeriesM> fac;
  std::size_t N() const { return fac.N; }
};

inline GaussData gauss_decompose(const LaxOperator& L, GaussOrder order = GaussOrder::Schur) {
  std::vector<std::vector<SeriesM>> B(L.N);
  for (std::size_t i = 0; i < L.N; ++i)
    for (std::size_t j = 0; j < L.N; ++j) B[i].push_back(L.block(i, j));
  GaussData g;
  g.sign = L.sign;
  g.d = L.d;
  g.fac = detail::eliminate<detail::SeriesRing>(std::move(B), order);
  return g;
}

inline GaussData gauss_decompose(const LaxOperator& L, const GradedDims& dims, GaussOrder order = GaussOrder::Schur) {
  GaussData g = gauss_decompose(L, order);
  g.dims = dims;
  return g;
}

// (unit lower)(diag)(unit upper) block (i, j), i.e. sum_t e_it k_t f_tj.
inline SeriesM reconstruct_block(const GaussData& g, std::size_t i, std::size_t j) {
  const auto& F = g.fac;
  std::size_t top = std::min(i, j);
  SeriesM acc;
  bool first = true;
  for (std::size_t t = 0; t <= top; ++t) {
    SeriesM x = F.k[t];
    if (t < i) x = series_mul(F.E(i, t), x);
    if (t < j) x = series_mul(x, F.Fu(t, j));
    if (first) {
      acc = std::move(x);
      first = false;
    } else {
      acc = acc + x;
    }
  }
  return acc;
}

inline CheckReport check_reconstruction(const LaxOperator& L, const GaussData& g, CheckReport rep) {
  Stopwatch sw;
  rep.status = Status::Pass;
  long long compared = 0;
  try {
    for (std::size_t i = 0; i < g.N() && rep.status == Status::Pass; ++i)
      for (std::size_t j = 0; j < g.N() && rep.status == Status::Pass; ++j) {
        CheckReport part = compare_series(reconstruct_block(g, i, j), L.block(i, j), rep);
        compared += part.compared;
        if (!part.passed()) {
          rep = part;
          rep.reason += " at block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        } else {
          rep.window = part.window;
        }
      }
    rep.compared = compared;
  } catch (const std::exception& ex) {
    rep.status = Status::Error;
    rep.reason = ex.what();
  }
  rep.seconds = sw.seconds();
  return rep;
}

// Factor-by-factor agreement of two decompositions on their shared windows.
inline CheckReport compare_gauss(const GaussData& a, const GaussData& b, CheckReport rep) {
  rep.status = Status::Pass;
  long long compared = 0;
  auto one = [&](const SeriesM& x, const SeriesM& y, const std::string& what) {
    if (rep.status != Status::Pass) return;
    CheckReport part = compare_series(x, y, rep);
    compared += part.compared;
    if (!part.passed()) {
      rep = part;
      rep.reason += " in " + what;
    }
  };
  for (std::size_t t = 0; t < a.N(); ++t) one(a.fac.k[t], b.fac.k[t], "k_" + std::to_string(t + 1));
  for (const auto& [ij, s] : a.fac.e)
    one(s, b.fac.e.at(ij), "e_" + std::to_string(ij.first + 1) + std::to_string(ij.second + 1));
  for (const auto& [ij, s] : a.fac.f)
    one(s, b.fac.f.at(ij), "f_" + std::to_string(ij.first + 1) + std::to_string(ij.second + 1));
  rep.compared = compared;
  return rep;
}

// ------------------------------------------------------- rational version

struct RationalGauss {
  GaussFactors<MatF> fac;
  std::vector<MatF> K;     // k_j
  std::vector<MatF> Kinv;  // k_j^{-1}
  std::vector<MatF> E;     // e_{i+1,i}
  std::vector<MatF> Fm;    // f_{i,i+1}
  std::vector<MatF> Phi;   // k_{i+1} k_i^{-1}
};

inline RationalGauss rational_gauss(const MatF& L, std::size_t N, std::size_t d,
                                    GaussOrder order = GaussOrder::Schur) {
  std::vector<std::vector<MatF>> B(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) B[i].push_back(L.block(i * d, j * d, d, d));
  RationalGauss r;
  r.fac = detail::eliminate<detail::RationalRing>(std::move(B), order);
  r.K = r.fac.k;
  for (const auto& k : r.K) r.Kinv.push_back(inverse(k));
  for (std::size_t i = 0; i + 1 < N; ++i) {
    r.E.push_back(r.fac.E(i + 1, i));
    r.Fm.push_back(r.fac.Fu(i, i + 1));
    r.Phi.push_back(r.K[i + 1] * r.Kinv[i]);
  }
  return r;
}

inline RationalGauss rational_gauss(const QuantumSpace& q) {
  return rational_gauss(rational_lax(q), static_cast<std::size_t>(q.dims.size()), q.dim());
}

// --------------------------------------------------------------- currents

struct CurrentSystem {
  GradedDims dims{1, 1};
  Rat hbar = 1;
  std::size_t d = 0;
  int order = 0;
  std::string label;  // evaluation points, e.g. "3,5"
  std::vector<SeriesM> Xplus, Xminus;  // index i-1 for i = 1..m+n-1
  std::vector<SeriesM> kplus, kminus, kplus_inv, kminus_inv;  // j-1 for j = 1..m+n
  std::vector<SeriesM> psi, phi, psi_inv, phi_inv;
  std::size_t rank() const { return Xplus.size(); }
  // parity of X^{+-}_i, 1-based i
  int x_parity(int i) const { return i == dims.m ? 1 : 0; }
};

struct CurrentOptions {
  // negative control: X^+_m = e^+ + e^- instead of e^+ - e^-
  bool flip_xplus_m = false;
};

namespace detail {

inline void finish_currents(CurrentSystem& cs) {
  for (std::size_t j = 0; j < cs.kplus.size(); ++j) {
    cs.kplus_inv.push_back(series_inverse(cs.kplus[j], Expansion::AtInfinity));
    cs.kminus_inv.push_back(series_inverse(cs.kminus[j], Expansion::AtZero));
  }
  for (std::size_t i = 0; i + 1 < cs.kplus.size(); ++i) {
    cs.phi.push_back(series_mul(cs.kplus[i + 1], cs.kplus_inv[i]));
    cs.psi.push_back(series_mul(cs.kminus[i + 1], cs.kminus_inv[i]));
    cs.phi_inv.push_back(series_mul(cs.kplus[i], cs.kplus_inv[i + 1]));
    cs.psi_inv.push_back(series_mul(cs.kminus[i], cs.kminus_inv[i + 1]));
  }
}

}  // namespace detail

inline CurrentSystem build_currents(const GaussData& plus, const GaussData& minus, const Rat& c = 0,
                                    const CurrentOptions& opt = {}) {
  if (c != 0) throw std::invalid_argument("only central charge c = 0 is supported");
  if (plus.sign <= 0 || minus.sign >= 0)
    throw std::invalid_argument("build_currents expects the decompositions of L+ and L-, in that order");
  if (plus.N() != minus.N() || plus.d != minus.d || !(plus.dims == minus.dims))
    throw std::invalid_argument("mismatched modules: L+ and L- act on different spaces");
  CurrentSystem cs;
  cs.dims = plus.dims;
  cs.d = plus.d;
  const std::size_t N = plus.N();
  for (std::size_t i = 0; i + 1 < N; ++i) {
    bool flip = opt.flip_xplus_m && static_cast<int>(i + 1) == cs.dims.m;
    cs.Xplus.push_back(add_scaled(plus.fac.E(i + 1, i), minus.fac.E(i + 1, i), flip ? +1 : -1));
    cs.Xminus.push_back(plus.fac.Fu(i, i + 1) - minus.fac.Fu(i, i + 1));
  }
  cs.kplus = plus.fac.k;
  cs.kminus = minus.fac.k;
  detail::finish_currents(cs);
  return cs;
}

// Currents of an evaluation module (or a chain of them) from the Lax pair.
inline CurrentSystem currents_of(const QuantumSpace& q, int order, const CurrentOptions& opt = {}) {
  LaxOperator Lp = build_eval_lax(q, +1, order);
  LaxOperator Lm = build_eval_lax(q, -1, order);
  CurrentSystem cs = build_currents(gauss_decompose(Lp, q.dims), gauss_decompose(Lm, q.dims), 0, opt);
  cs.hbar = q.hbar;
  cs.order = order;
  cs.label = q.str();
  return cs;
}

// Currents from rational Gauss data: X = iota_inf(E) - iota_0(E) and so on.
inline CurrentSystem currents_from_rational(const RationalGauss& r, const GradedDims& dims, const Rat& hbar,
                                            int order, const CurrentOptions& opt = {}) {
  CurrentSystem cs;
  cs.dims = dims;
  cs.hbar = hbar;
  cs.order = order;
  cs.d = r.K.empty() ? 0 : r.K[0].rows();
  auto plus = [&](const MatF& m) { return restrict_box(expand_at_infinity(m, order), {Window{-order, 0}}); };
  auto minus = [&](const MatF& m) { return expand_at_zero(m, order); };
  for (std::size_t i = 0; i < r.E.size(); ++i) {
    bool flip = opt.flip_xplus_m && static_cast<int>(i + 1) == dims.m;
    cs.Xplus.push_back(add_scaled(plus(r.E[i]), minus(r.E[i]), flip ? +1 : -1));
    cs.Xminus.push_back(plus(r.Fm[i]) - minus(r.Fm[i]));
  }
  for (const auto& k : r.K) {
    cs.kplus.push_back(plus(k));
    cs.kminus.push_back(minus(k));
  }
  detail::finish_currents(cs);
  return cs;
}

// ------------------------------------------------------------------ suite

struct GaussRun {
  GaussData plus, minus;
  std::vector<CheckReport> reports;
};

// Decompose L+ and L- of a quantum space, check E K F = L on the windows,
// agreement of the two elimination orders, and agreement of the currents
// with the ones obtained from the rational decomposition.
inline GaussRun check_gauss(const QuantumSpace& q, int order) {
  GaussRun run;
  auto base = [&](const std::string& name) {
    CheckReport r;
    r.suite = "gauss";
    r.name = name;
    r.param("gl", q.dims.str()).param("points", q.str()).param("hbar", rat_str(q.hbar));
    r.param("order", std::to_string(order));
    return r;
  };
  auto error = [](CheckReport r, const std::exception& ex) {
    r.status = Status::Error;
    r.reason = ex.what();
    return r;
  };
  for (int sign : {+1, -1}) {
    CheckReport rec = base("reconstruction");
    rec.param("L", sign > 0 ? "+" : "-");
    CheckReport cmp = base("elimination-order-independence");
    cmp.param("L", sign > 0 ? "+" : "-");
    try {
      LaxOperator L = build_eval_lax(q, sign, order);
      GaussData g = gauss_decompose(L, q.dims);
      run.reports.push_back(check_reconstruction(L, g, rec));
      run.reports.push_back(compare_gauss(g, gauss_decompose(L, q.dims, GaussOrder::Doolittle), cmp));
      (sign > 0 ? run.plus : run.minus) = std::move(g);
    } catch (const std::exception& ex) {
      run.reports.push_back(error(rec, ex));
      run.reports.push_back(error(cmp, ex));
    }
  }
  CheckReport cur = base("currents-series-vs-rational");
  try {
    CurrentSystem a = build_currents(run.plus, run.minus);
    CurrentSystem b = currents_from_rational(rational_gauss(q), q.dims, q.hbar, order);
    cur.status = Status::Pass;
    long long n = 0;
    auto one = [&](const std::vector<SeriesM>& x, const std::vector<SeriesM>& y, const std::string& what) {
      for (std::size_t k = 0; k < x.size() && cur.passed(); ++k) {
        CheckReport part = compare_series(x[k], y[k], cur);
        n += part.compared;
        if (!part.passed()) {
          cur = part;
          cur.reason += " in " + what + "_" + std::to_string(k + 1);
        }
      }
    };
    one(a.Xplus, b.Xplus, "X+");
    one(a.Xminus, b.Xminus, "X-");
    one(a.kplus, b.kplus, "k+");
    one(a.kminus, b.kminus, "k-");
    cur.compared = n;
    cur.window.clear();
  } catch (const std::exception& ex) {
    cur = error(cur, ex);
  }
  run.reports.push_back(cur);
  return run;
}

}  // namespace superyang
