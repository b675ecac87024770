// SPDX-License-Identifier: MIT
// Coproduct, counit and antipode on currents, checked inside tensor products
// of evaluation modules at central charge 0.
//
// A module is stored through its rational Gauss data (k_j, e_{i+1,i},
// f_{i,i+1} and k_{i+1} k_i^{-1} as rational matrices in u).  Products such as
// psi(u) X+(u) do not converge coefficientwise, since psi is a power series at
// 0 and X+ is bilateral.  They are evaluated as iota_inf - iota_0 of the part
// of the rational product with poles at the poles of X+.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "superyang/pool.hpp"
#include "superyang/relations.hpp"

namespace superyang {

// u -> u + hbar (a1 c1 + a2 c2 + a c), with c1 = c (x) 1, c2 = 1 (x) c.
struct ArgShift {
  Rat a1 = 0, a2 = 0, a = 0;
  Rat value(const Rat& hbar, const Rat& c1, const Rat& c2, const Rat& c = 0) const {
    return hbar * (a1 * c1 + a2 * c2 + a * c);
  }
};

inline MatF shifted(const MatF& M, const Rat& s) { return s == 0 ? M : substitute(M, Rat(1), s); }

struct HopfModule {
  GradedDims dims{1, 1};
  Rat hbar = 1;
  Rat c = 0;
  Grading grading;
  std::string label;
  std::vector<MatF> K;    // k_j, j = 1..m+n
  std::vector<MatF> E;    // e_{i+1,i}
  std::vector<MatF> F;    // f_{i,i+1}
  std::vector<MatF> Phi;  // k_{i+1} k_i^{-1}

  std::size_t dim() const { return grading.size(); }
  MatF one() const { return MatF::identity(dim()); }
};

inline HopfModule hopf_module(const QuantumSpace& q) {
  RationalGauss r = rational_gauss(q);
  HopfModule h;
  h.dims = q.dims;
  h.hbar = q.hbar;
  h.grading = q.grading;
  h.label = q.str();
  h.K = r.K;
  h.E = r.E;
  h.F = r.Fm;
  h.Phi = r.Phi;
  return h;
}

// The one-dimensional module of the counit: k -> 1, X -> 0, c -> 0.
inline HopfModule trivial_module(const GradedDims& dims, const Rat& hbar) {
  HopfModule h;
  h.dims = dims;
  h.hbar = hbar;
  h.grading = Grading(std::vector<int>{0});
  h.label = "trivial";
  const std::size_t N = static_cast<std::size_t>(dims.size());
  h.K.assign(N, MatF::identity(1));
  h.E.assign(N - 1, MatF(1, 1));
  h.F.assign(N - 1, MatF(1, 1));
  h.Phi.assign(N - 1, MatF::identity(1));
  return h;
}

namespace detail {

inline UPoly lcm(const UPoly& a, const UPoly& b) {
  if (a.degree() <= 0) return b.monic();
  if (b.degree() <= 0) return a.monic();
  return (a * b / UPoly::gcd(a, b)).monic();
}

// least common denominator of the entries
inline UPoly pole_poly(const MatF& M) {
  UPoly q(Rat(1));
  for (const auto& f : M.data())
    if (!f.is_zero()) q = lcm(q, f.den());
  return q;
}

// Part of the partial-fraction expansion of f with poles among the roots of q.
inline RatFun principal_part(const RatFun& f, const UPoly& q) {
  if (f.is_zero() || q.degree() <= 0) return RatFun();
  UPoly inside(Rat(1)), rest = f.den();
  for (;;) {
    UPoly g = UPoly::gcd(rest, q);
    if (g.degree() <= 0) break;
    inside *= g;
    rest = rest / g;
  }
  if (inside.degree() <= 0) return RatFun();
  if (rest.degree() <= 0) return RatFun(f.num() * UPoly(Rat(1) / rest.lead()) % inside, inside);
  // s*inside + t*rest = 1, so f = num*t/inside + num*s/rest
  auto [g, s, t] = UPoly::ext_gcd(inside, rest);
  if (g.degree() != 0) throw std::logic_error("principal_part: pole split is not coprime");
  return RatFun(f.num() * t % inside, inside);
}

inline MatF principal_part(const MatF& M, const UPoly& q) {
  return M.map([&](const RatFun& f) { return principal_part(f, q); });
}

enum class PolesOf { Left, Right };

// left * right restricted to the poles of one factor; the other factor must
// have no pole there, otherwise the series product is not defined.
inline MatF pole_product(const MatF& left, const MatF& right, PolesOf side) {
  UPoly q = pole_poly(side == PolesOf::Left ? left : right);
  const MatF& other = side == PolesOf::Left ? right : left;
  if (UPoly::gcd(pole_poly(other), q).degree() > 0)
    throw std::invalid_argument("coproduct image needs factors with disjoint pole sets (distinct points)");
  return principal_part(left * right, q);
}

// A product of k-type factors and one current inside a single module.  The
// rational product is formed first and then restricted to the poles of the
// current: psi has poles where X+ is supported, so the factors cannot be
// regularised one at a time there.
inline MatF monomial(const std::vector<MatF>& factors, std::size_t current) {
  MatF p = factors.at(0);
  for (std::size_t k = 1; k < factors.size(); ++k) p = p * factors[k];
  return principal_part(p, pole_poly(factors.at(current)));
}

using Kron = MatF (*)(const MatF&, const Grading&, const MatF&, const Grading&);

inline Kron kron_for(bool graded) { return graded ? &graded_kron<RatFun> : &plain_kron<RatFun>; }

inline void require_compatible(const HopfModule& A, const HopfModule& B) {
  if (!(A.dims == B.dims) || A.hbar != B.hbar || A.K.size() != B.K.size())
    throw std::invalid_argument("module mismatch: factors carry different algebras (" + A.dims.str() + ", " +
                                B.dims.str() + ")");
}

}  // namespace detail

enum class TensorSigns { Graded, Stripped };

// The module A (x) B on which each current acts through its coproduct image.
inline HopfModule tensor(const HopfModule& A, const HopfModule& B, TensorSigns signs = TensorSigns::Graded) {
  detail::require_compatible(A, B);
  if (A.c != 0 || B.c != 0) throw std::invalid_argument("coproduct images are only evaluated at c = 0");
  auto kr = detail::kron_for(signs == TensorSigns::Graded);
  const Rat c1 = A.c, c2 = B.c, h = A.hbar;
  const ArgShift k_left{0, rat(1, 2), 0}, k_right{rat(-1, 2), 0, 0};
  const ArgShift psi_arg{rat(1, 2), 0, 0}, xp_arg{1, 0, 0};
  const ArgShift xm_arg{0, 1, 0}, phi_arg{0, rat(1, 2), 0};

  HopfModule T;
  T.dims = A.dims;
  T.hbar = h;
  T.c = c1 + c2;
  T.grading = A.grading * B.grading;
  T.label = A.label + "x" + B.label;
  const MatF IA = A.one(), IB = B.one();
  for (std::size_t j = 0; j < A.K.size(); ++j) {
    // k+ and k- share the rational function; the shifts differ only by sign
    MatF l = shifted(A.K[j], k_left.value(h, c1, c2)), r = shifted(B.K[j], k_right.value(h, c1, c2));
    T.K.push_back(kr(l, A.grading, r, B.grading));
  }
  for (std::size_t i = 0; i < A.E.size(); ++i) {
    MatF psiA = shifted(A.Phi[i], psi_arg.value(h, c1, c2));
    MatF xB = shifted(B.E[i], xp_arg.value(h, c1, c2));
    T.E.push_back(kr(A.E[i], A.grading, IB, B.grading) +
                  detail::pole_product(kr(psiA, A.grading, IB, B.grading), kr(IA, A.grading, xB, B.grading),
                                       detail::PolesOf::Right));
    MatF xA = shifted(A.F[i], xm_arg.value(h, c1, c2));
    MatF phiB = shifted(B.Phi[i], phi_arg.value(h, c1, c2));
    T.F.push_back(kr(IA, A.grading, B.F[i], B.grading) +
                  detail::pole_product(kr(xA, A.grading, IB, B.grading), kr(IA, A.grading, phiB, B.grading),
                                       detail::PolesOf::Left));
    T.Phi.push_back(kr(A.Phi[i], A.grading, B.Phi[i], B.grading));
  }
  return T;
}

inline CurrentSystem currents_of(const HopfModule& M, int order, const CurrentOptions& opt = {}) {
  RationalGauss r;
  r.K = M.K;
  r.E = M.E;
  r.Fm = M.F;
  r.Phi = M.Phi;
  CurrentSystem cs = currents_from_rational(r, M.dims, M.hbar, order, opt);
  cs.label = M.label;
  return cs;
}

// ------------------------------------------------------------- generators

enum class GenKind { C, Kplus, Kminus, Xplus, Xminus, Psi, Phi };

struct Generator {
  GenKind kind = GenKind::C;
  int index = 0;  // 1-based; unused for c
  std::string str() const {
    static const char* names[] = {"c", "k+", "k-", "X+", "X-", "psi", "phi"};
    std::string s = names[static_cast<int>(kind)];
    if (kind != GenKind::C) s += "_" + std::to_string(index);
    return s;
  }
};

inline std::vector<Generator> generators(const GradedDims& d) {
  std::vector<Generator> g{{GenKind::C, 0}};
  for (int j = 1; j <= d.size(); ++j) g.push_back({GenKind::Kplus, j});
  for (int j = 1; j <= d.size(); ++j) g.push_back({GenKind::Kminus, j});
  for (int i = 1; i < d.size(); ++i) g.push_back({GenKind::Xplus, i});
  for (int i = 1; i < d.size(); ++i) g.push_back({GenKind::Xminus, i});
  for (int i = 1; i < d.size(); ++i) g.push_back({GenKind::Psi, i});
  for (int i = 1; i < d.size(); ++i) g.push_back({GenKind::Phi, i});
  return g;
}

namespace detail {

inline SeriesM plus_series(const MatF& M, int order) {
  return restrict_box(expand_at_infinity(M, order), {Window{-order, 0}});
}
inline SeriesM minus_series(const MatF& M, int order) { return expand_at_zero(M, order); }
inline SeriesM delta_difference(const MatF& M, int order) { return plus_series(M, order) - minus_series(M, order); }

}  // namespace detail

// The series by which a generator acts on a module.
inline SeriesM generator_series(const HopfModule& M, const Generator& g, int order) {
  auto at = [](const std::vector<MatF>& v, int k) -> const MatF& {
    if (k < 1 || static_cast<std::size_t>(k) > v.size())
      throw std::out_of_range("generator index " + std::to_string(k) + " out of range");
    return v[static_cast<std::size_t>(k - 1)];
  };
  switch (g.kind) {
    case GenKind::C: return constant_series(MatQ(M.dim(), M.dim()));
    case GenKind::Kplus: return detail::plus_series(at(M.K, g.index), order);
    case GenKind::Kminus: return detail::minus_series(at(M.K, g.index), order);
    case GenKind::Xplus: return detail::delta_difference(at(M.E, g.index), order);
    case GenKind::Xminus: return detail::delta_difference(at(M.F, g.index), order);
    case GenKind::Psi: return detail::minus_series(at(M.Phi, g.index), order);
    case GenKind::Phi: return detail::plus_series(at(M.Phi, g.index), order);
  }
  throw std::logic_error("unknown generator");
}

// Image of a generator under the coproduct, acting on A (x) B.
inline SeriesM coproduct_image(const Generator& g, const HopfModule& A, const HopfModule& B, int order) {
  return generator_series(tensor(A, B), g, order);
}

// Coefficientwise tensor product of two series in the same variable, both
// expanded at infinity or both at zero.
inline SeriesM series_tensor(const SeriesM& a, const Grading& ga, const SeriesM& b, const Grading& gb) {
  if (a.nvars() != 1 || b.nvars() != 1 || a.axes()[0].var != b.axes()[0].var)
    throw std::invalid_argument("series_tensor needs one-variable series in the same variable");
  const Axis& x = a.axes()[0];
  const Axis& y = b.axes()[0];
  Window w;
  bool zb = false, za = false;
  if (x.zero_above && y.zero_above) {
    w = {std::max(x.w.lo + y.w.hi, x.w.hi + y.w.lo), x.w.hi + y.w.hi};
    za = true;
    zb = x.zero_below && y.zero_below;
  } else if (x.zero_below && y.zero_below) {
    w = {x.w.lo + y.w.lo, std::min(x.w.hi + y.w.lo, x.w.lo + y.w.hi)};
    zb = true;
  } else {
    throw std::invalid_argument("series_tensor: the factors are expanded in opposite directions");
  }
  MatQ zero(a.zero().rows() * b.zero().rows(), a.zero().cols() * b.zero().cols());
  SeriesM r({Axis{x.var, w, zb, za}}, zero);
  for (int e = w.lo; e <= w.hi; ++e) {
    MatQ acc = zero;
    for (int i = x.w.lo; i <= x.w.hi; ++i) {
      int j = e - i;
      if (j < y.w.lo || j > y.w.hi) continue;
      acc += graded_kron(a.at({i}), ga, b.at({j}), gb);
    }
    r.ref({e}) = acc;
  }
  return r;
}

// ---------------------------------------------------------------- reports

namespace detail {

inline CheckReport hopf_report(const std::string& name, const HopfModule& M, int order, const Generator& g) {
  CheckReport r;
  r.suite = "hopf";
  r.name = name;
  r.param("gl", M.dims.str()).param("module", M.label).param("hbar", rat_str(M.hbar));
  r.param("order", std::to_string(order)).param("gen", g.str());
  return r;
}

inline std::string entry_str(const MatF& M) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero())
        return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + M(i, j).str();
  return "";
}

// exact rational identity a == b, then the same identity between expansions
inline CheckReport rational_and_series(CheckReport rep, const MatF& a, const MatF& b,
                                       const std::function<SeriesM(const MatF&)>& expand) {
  try {
    MatF diff = a - b;
    CheckReport s = compare_series(expand(a), expand(b), rep);
    if (!diff.is_zero()) {
      s.status = Status::Fail;
      s.reason = "rational images differ: " + entry_str(diff);
    }
    return s;
  } catch (const std::exception& ex) {
    rep.status = Status::Error;
    rep.reason = ex.what();
    return rep;
  }
}

template <class F>
CheckReport guarded(CheckReport rep, F f) {
  Stopwatch sw;
  try {
    rep = f(rep);
  } catch (const std::exception& ex) {
    rep.status = Status::Error;
    rep.reason = ex.what();
  }
  rep.seconds = sw.seconds();
  return rep;
}

inline const MatF& pick(const HopfModule& M, const Generator& g) {
  switch (g.kind) {
    case GenKind::Kplus:
    case GenKind::Kminus: return M.K.at(static_cast<std::size_t>(g.index - 1));
    case GenKind::Xplus: return M.E.at(static_cast<std::size_t>(g.index - 1));
    case GenKind::Xminus: return M.F.at(static_cast<std::size_t>(g.index - 1));
    default: return M.Phi.at(static_cast<std::size_t>(g.index - 1));
  }
}

inline std::function<SeriesM(const MatF&)> expander(const Generator& g, int order) {
  switch (g.kind) {
    case GenKind::Kplus:
    case GenKind::Phi: return [order](const MatF& m) { return plus_series(m, order); };
    case GenKind::Kminus:
    case GenKind::Psi: return [order](const MatF& m) { return minus_series(m, order); };
    default: return [order](const MatF& m) { return delta_difference(m, order); };
  }
}

template <class F>
std::vector<CheckReport> per_generator(const GradedDims& d, int workers, F f) {
  auto gens = generators(d);
  std::function<std::vector<CheckReport>(std::size_t)> job = [&](std::size_t k) { return f(gens[k]); };
  std::vector<CheckReport> out;
  for (auto& v : parallel_map(gens.size(), job, workers))
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace detail

// Delta(c) = 0 and Delta(k), Delta(psi), Delta(phi) = g (x) g as series.
inline std::vector<CheckReport> check_grouplike(const HopfModule& A, const HopfModule& B, int order,
                                                int workers = 1) {
  HopfModule T = tensor(A, B);
  return detail::per_generator(A.dims, workers, [&](const Generator& g) -> std::vector<CheckReport> {
    if (g.kind == GenKind::Xplus || g.kind == GenKind::Xminus) return {};
    CheckReport rep = detail::hopf_report("grouplike", T, order, g);
    return {detail::guarded(rep, [&](CheckReport r) {
      SeriesM lhs = generator_series(T, g, order);
      if (g.kind == GenKind::C) {
        r = compare_series(lhs, constant_series(MatQ(T.dim(), T.dim())), r);
        return r;
      }
      SeriesM rhs = series_tensor(generator_series(A, g, order), A.grading, generator_series(B, g, order), B.grading);
      return compare_series(restrict_box(lhs, {rhs.axes()[0].w}), rhs, r);
    })};
  });
}

// Relation suite on A (x) B, its agreement with the suite on A alone, and the
// sign-stripped tensor as a negative control.
inline std::vector<CheckReport> check_delta_homomorphism(const HopfModule& A, const HopfModule& B, int order,
                                                         const RelationOptions& opt = {}) {
  HopfModule T = tensor(A, B);
  CurrentSystem cs = currents_of(T, order);
  std::vector<CheckReport> out = check_relations(cs, opt);
  for (auto& r : out) r.suite = "hopf-delta";

  auto signature = [](const CheckReport& r) {
    std::string s = r.name + "|" + r.category;
    for (const auto& [k, v] : r.params)
      if (k != "points") s += "|" + k + "=" + v;
    return s;
  };
  CheckReport same;
  same.suite = "hopf-delta";
  same.name = "same-statuses-as-single-module";
  same.category = "structure";
  same.param("gl", A.dims.str()).param("module", T.label).param("order", std::to_string(order));
  same = detail::guarded(same, [&](CheckReport r) {
    std::map<std::string, Status> single;
    for (const auto& x : check_relations(currents_of(A, order), opt)) single[signature(x)] = x.status;
    for (const auto& x : out) {
      auto it = single.find(signature(x));
      ++r.compared;
      if (it == single.end()) return r.fail("relation " + x.key() + " has no single-module counterpart");
      if (it->second != x.status)
        return r.fail(x.key() + ": " + status_str(x.status) + " on the tensor module, " + status_str(it->second) +
                      " on " + A.label);
    }
    if (single.size() != out.size()) return r.fail("relation lists differ in length");
    return r;
  });
  out.push_back(same);

  CheckReport ctrl;
  ctrl.suite = "hopf-delta";
  ctrl.param("gl", A.dims.str()).param("module", T.label).param("order", std::to_string(order));
  ctrl = detail::guarded(ctrl, [&](CheckReport r) {
    HopfModule S = tensor(A, B, TensorSigns::Stripped);
    CurrentSystem cz = currents_of(S, order);
    auto stripped = check_relations(cz, opt);
    auto flips = flipped_to_fail(check_relations(cs, opt), stripped);
    r.compared = static_cast<long long>(stripped.size());
    CheckReport inner = r;
    if (flips.empty()) inner.status = Status::Pass;
    else inner.fail(std::to_string(flips.size()) + " relations fail, first " + flips.front());
    return negative_control(inner, "sign-stripped-tensor");
  });
  ctrl.suite = "hopf-delta";
  out.push_back(ctrl);
  return out;
}

// (eps (x) id) Delta(g) = g = (id (x) eps) Delta(g), plus the relation suite on
// the trivial module.
inline std::vector<CheckReport> check_counit(const HopfModule& A, int order, int workers = 1) {
  HopfModule one = trivial_module(A.dims, A.hbar);
  HopfModule L = tensor(one, A), R = tensor(A, one);
  auto out = detail::per_generator(A.dims, workers, [&](const Generator& g) {
    std::vector<CheckReport> v;
    for (auto [side, T] : {std::pair<const char*, const HopfModule*>{"eps(x)id", &L}, {"id(x)eps", &R}}) {
      CheckReport rep = detail::hopf_report("counit", A, order, g);
      rep.param("side", side);
      v.push_back(detail::guarded(rep, [&](CheckReport r) {
        if (g.kind == GenKind::C) return compare_series(generator_series(*T, g, order), generator_series(A, g, order), r);
        return detail::rational_and_series(r, detail::pick(*T, g), detail::pick(A, g), detail::expander(g, order));
      }));
    }
    return v;
  });
  CurrentSystem triv = currents_of(one, order);
  RelationOptions o;
  o.workers = workers;
  CheckReport suite;
  suite.suite = "hopf";
  suite.name = "trivial-module-relations";
  suite.param("gl", A.dims.str()).param("order", std::to_string(order));
  long long n = 0;
  for (const auto& r : check_relations(triv, o)) {
    if (r.status == Status::Skipped) continue;
    n += r.compared;
    if (!r.passed() && suite.passed()) suite.fail(r.key() + ": " + r.reason);
  }
  suite.compared = n;
  out.push_back(suite);
  return out;
}

// m (S (x) id) Delta(g) = eps(g) 1 and m (id (x) S) Delta(g) = eps(g) 1 on a module.
inline std::vector<CheckReport> check_antipode(const HopfModule& M, int order, int workers = 1) {
  if (M.c != 0) throw std::invalid_argument("antipode images are only evaluated at c = 0");
  CurrentSystem cs = currents_of(M, order);
  const Rat h = M.hbar, c = M.c;
  const ArgShift half_back{0, 0, rat(-1, 2)}, back{0, 0, -1};
  return detail::per_generator(M.dims, workers, [&](const Generator& g) {
    std::vector<CheckReport> v;
    for (const char* side : {"S(x)id", "id(x)S"}) {
      CheckReport rep = detail::hopf_report("antipode", M, order, g);
      rep.param("side", side);
      bool left = side[0] == 'S';
      v.push_back(detail::guarded(rep, [&](CheckReport r) {
        const std::size_t k = static_cast<std::size_t>(g.index - 1);
        const SeriesM one = constant_series(MatQ::identity(M.dim()));
        switch (g.kind) {
          case GenKind::C:  // S(c) + c = -c + c
            return compare_series(generator_series(M, g, order) - generator_series(M, g, order),
                                  constant_series(MatQ(M.dim(), M.dim())), r);
          case GenKind::Kplus: {
            const SeriesM& x = cs.kplus[k];
            const SeriesM& s = cs.kplus_inv[k];
            return compare_series(left ? series_mul(s, x) : series_mul(x, s), one, r);
          }
          case GenKind::Kminus: {
            const SeriesM& x = cs.kminus[k];
            const SeriesM& s = cs.kminus_inv[k];
            return compare_series(left ? series_mul(s, x) : series_mul(x, s), one, r);
          }
          case GenKind::Psi:
            return compare_series(left ? series_mul(cs.psi_inv[k], cs.psi[k]) : series_mul(cs.psi[k], cs.psi_inv[k]),
                                  one, r);
          case GenKind::Phi:
            return compare_series(left ? series_mul(cs.phi_inv[k], cs.phi[k]) : series_mul(cs.phi[k], cs.phi_inv[k]),
                                  one, r);
          case GenKind::Xplus: {
            // Delta(X+) = X+ (x) 1 + psi (x) X+,  S(X+) = -psi^{-1} X+
            MatF X = shifted(M.E[k], back.value(h, 0, 0, c));
            MatF psi_inv = inverse(shifted(M.Phi[k], half_back.value(h, 0, 0, c)));
            MatF first, second;
            if (left) {  // S(X+) 1 + S(psi) X+
              first = -detail::monomial({psi_inv, X}, 1);
              second = detail::monomial({inverse(M.Phi[k]), M.E[k]}, 1);
            } else {  // X+ S(1) + psi S(X+)
              first = M.E[k];
              second = -detail::monomial({M.Phi[k], psi_inv, X}, 2);
            }
            return detail::rational_and_series(r, first, -second, detail::expander(g, order));
          }
          case GenKind::Xminus: {
            // Delta(X-) = 1 (x) X- + X- (x) phi,  S(X-) = -X- phi^{-1}
            MatF X = shifted(M.F[k], back.value(h, 0, 0, c));
            MatF phi_inv = inverse(shifted(M.Phi[k], half_back.value(h, 0, 0, c)));
            MatF first, second;
            if (left) {  // S(1) X- + S(X-) phi
              first = M.F[k];
              second = -detail::monomial({X, phi_inv, M.Phi[k]}, 0);
            } else {  // 1 S(X-) + X- S(phi)
              first = -detail::monomial({X, phi_inv}, 0);
              second = detail::monomial({M.F[k], inverse(M.Phi[k])}, 0);
            }
            return detail::rational_and_series(r, first, -second, detail::expander(g, order));
          }
        }
        throw std::logic_error("unknown generator");
      }));
    }
    return v;
  });
}

// (Delta (x) id) Delta(g) = (id (x) Delta) Delta(g) on A (x) B (x) C, both
// compared with the directly assembled three-term sum.
inline std::vector<CheckReport> check_coassociativity(const HopfModule& A, const HopfModule& B, const HopfModule& C,
                                                      int order, int workers = 1) {
  HopfModule L = tensor(tensor(A, B), C), R = tensor(A, tensor(B, C));
  auto kr3 = [&](const MatF& a, const MatF& b, const MatF& c) {
    return graded_kron(graded_kron(a, A.grading, b, B.grading), A.grading * B.grading, c, C.grading);
  };
  const MatF IA = A.one(), IB = B.one(), IC = C.one();
  return detail::per_generator(A.dims, workers, [&](const Generator& g) {
    CheckReport rep = detail::hopf_report("coassociativity", L, order, g);
    return std::vector<CheckReport>{detail::guarded(rep, [&](CheckReport r) {
      if (g.kind == GenKind::C) return compare_series(generator_series(L, g, order), generator_series(R, g, order), r);
      const std::size_t k = static_cast<std::size_t>(g.index - 1);
      MatF oracle;
      switch (g.kind) {
        case GenKind::Kplus:
        case GenKind::Kminus: oracle = kr3(A.K[k], B.K[k], C.K[k]); break;
        case GenKind::Psi:
        case GenKind::Phi: oracle = kr3(A.Phi[k], B.Phi[k], C.Phi[k]); break;
        case GenKind::Xplus:
          oracle = kr3(A.E[k], IB, IC) +
                   detail::principal_part(kr3(A.Phi[k], B.E[k], IC), detail::pole_poly(B.E[k])) +
                   detail::principal_part(kr3(A.Phi[k], B.Phi[k], C.E[k]), detail::pole_poly(C.E[k]));
          break;
        case GenKind::Xminus:
          oracle = kr3(IA, IB, C.F[k]) +
                   detail::principal_part(kr3(IA, B.F[k], C.Phi[k]), detail::pole_poly(B.F[k])) +
                   detail::principal_part(kr3(A.F[k], B.Phi[k], C.Phi[k]), detail::pole_poly(A.F[k]));
          break;
        default: break;
      }
      auto ex = detail::expander(g, order);
      CheckReport a = detail::rational_and_series(r, detail::pick(L, g), detail::pick(R, g), ex);
      if (!a.passed()) {
        a.reason = "(Delta x id) vs (id x Delta): " + a.reason;
        return a;
      }
      CheckReport b = detail::rational_and_series(r, detail::pick(L, g), oracle, ex);
      if (!b.passed()) b.reason = "three-term sum: " + b.reason;
      b.compared += a.compared;
      return b;
    })};
  });
}

// ------------------------------------------------------------ full suite

struct HopfOptions {
  int workers = 1;
  bool relations = true;  // Delta-homomorphism re-run of the relation suite
  RelationOptions rel;
};

// Hopf checks for evaluation modules at the given points (two or three).
inline std::vector<CheckReport> check_hopf(const GradedDims& dims, const Rat& hbar, const std::vector<Rat>& points,
                                           int order, const HopfOptions& opt = {}) {
  if (points.size() < 2 || points.size() > 3)
    throw std::invalid_argument("hopf checks need two or three evaluation points");
  std::vector<HopfModule> mods;
  for (const auto& p : points) mods.push_back(hopf_module(QuantumSpace(dims, hbar, {p})));
  const HopfModule& A = mods[0];
  const HopfModule& B = mods[1];
  std::vector<CheckReport> out;
  auto add = [&](std::vector<CheckReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  if (opt.relations) {
    RelationOptions ro = opt.rel;
    ro.workers = opt.workers;
    add(check_delta_homomorphism(A, B, order, ro));
  }
  add(check_grouplike(A, B, order, opt.workers));
  add(check_counit(A, order, opt.workers));
  add(check_antipode(A, order, opt.workers));
  add(check_antipode(tensor(A, B), order, opt.workers));
  if (mods.size() == 3) add(check_coassociativity(A, B, mods[2], order, opt.workers));
  return out;
}

}  // namespace superyang
