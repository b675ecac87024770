// SPDX-License-Identifier: MIT
// Yang's graded rational R-matrix and its structural checks.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "superyang/graded.hpp"
#include "superyang/report.hpp"

namespace superyang {

struct RMatrix {
  GradedDims dims;
  Rat hbar;
  MatF R;  // (u I + 2 hbar P)/(u + 2 hbar)
};

inline void require_hbar(const Rat& hbar) {
  if (is_zero(hbar)) throw std::invalid_argument("hbar = 0 is a degenerate deformation");
}

inline MatF r_compact(const GradedDims& d, const Rat& hbar) {
  require_hbar(hbar);
  const std::size_t N2 = static_cast<std::size_t>(d.size() * d.size());
  MatQ P = permutation_op(d);
  RatFun inv_den = RatFun(1) / RatFun(UPoly(std::vector<Rat>{2 * hbar, Rat(1)}));
  MatF R(N2, N2);
  for (std::size_t i = 0; i < N2; ++i)
    for (std::size_t j = 0; j < N2; ++j) {
      RatFun e = i == j ? RatFun::x() : RatFun();
      if (!is_zero(P(i, j))) e += RatFun(2 * hbar * P(i, j));
      if (!e.is_zero()) R(i, j) = e * inv_den;
    }
  return R;
}

// Matrix-element form: R = (-1)^{[a][b]} Rtilde with Rtilde the sum of the
// five families of matrix-unit tensors.
inline MatF r_five_term(const GradedDims& d, const Rat& hbar) {
  require_hbar(hbar);
  const int N = d.size();
  const std::size_t N2 = static_cast<std::size_t>(N * N);
  RatFun den(UPoly(std::vector<Rat>{2 * hbar, Rat(1)}));
  RatFun odd_diag = RatFun(UPoly(std::vector<Rat>{2 * hbar, Rat(-1)})) / den;
  RatFun mixed = RatFun::x() / den;
  RatFun swap = RatFun(2 * hbar) / den;
  MatF Rt(N2, N2);
  auto E = [&](int i, int j) { return matrix_unit<RatFun>(d, i, j); };
  for (int i = 1; i <= d.m; ++i) Rt += kron(E(i, i), E(i, i));
  for (int i = d.m + 1; i <= N; ++i) Rt += odd_diag * kron(E(i, i), E(i, i));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      if (i != j) {
        RatFun s = (d.parity(i) * d.parity(j)) ? -mixed : mixed;
        Rt += s * kron(E(i, i), E(j, j));
      }
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) Rt += swap * kron(E(j, i), E(i, j));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j < i; ++j) Rt += swap * kron(E(j, i), E(i, j));
  MatF th = theta_op<RatFun>(d);
  return th * Rt;
}

inline RMatrix build_r(const GradedDims& d, const Rat& hbar) {
  RMatrix r{d, hbar, r_compact(d, hbar)};
  if (!(r_five_term(d, hbar) == r.R))
    throw std::logic_error("five-term and compact R-matrix forms disagree");
  return r;
}

// R(c*u + s) as a rational matrix in u
inline MatF substitute(const MatF& m, const Rat& c, const Rat& s) {
  return m.map([&](const RatFun& f) { return f.compose_linear(c, s); });
}

// R21(u) = R(-u)^{-1}
inline MatF r21(const RMatrix& r) { return inverse(substitute(r.R, Rat(-1), Rat(0))); }

// x I + 2 hbar P with polynomial x
inline MatP r_hat(const GradedDims& d, const Rat& hbar, const MPoly& x) {
  const std::size_t N2 = static_cast<std::size_t>(d.size() * d.size());
  MatQ P = permutation_op(d);
  MatP R(N2, N2);
  for (std::size_t i = 0; i < N2; ++i)
    for (std::size_t j = 0; j < N2; ++j) {
      MPoly e = i == j ? x : MPoly();
      if (!is_zero(P(i, j))) e += MPoly(2 * hbar * P(i, j));
      R(i, j) = e;
    }
  return R;
}

namespace detail {

inline std::vector<std::vector<std::pair<std::size_t, MPoly>>> sparse_rows(const MatP& m) {
  std::vector<std::vector<std::pair<std::size_t, MPoly>>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) rows[i].emplace_back(j, m(i, j));
  return rows;
}

inline Witness poly_witness(const MatP& res, std::size_t i, std::size_t j) {
  Witness w;
  w.row = static_cast<long>(i);
  w.col = static_cast<long>(j);
  const auto& t = *res(i, j).terms().begin();
  for (int k = 0; k < kNumVars; ++k)
    if (t.first[static_cast<std::size_t>(k)]) w.exponents.emplace_back(var_name(k), t.first[static_cast<std::size_t>(k)]);
  w.value = rat_str(t.second);
  w.note = "residual entry " + res(i, j).str();
  return w;
}

inline void poly_verdict(CheckReport& rep, const MatP& res) {
  rep.compared = static_cast<long long>(res.rows() * res.cols());
  for (std::size_t i = 0; i < res.rows(); ++i)
    for (std::size_t j = 0; j < res.cols(); ++j)
      if (!res(i, j).is_zero()) {
        rep.status = Status::Fail;
        rep.reason = "nonzero polynomial residual";
        rep.witness = poly_witness(res, i, j);
        return;
      }
  rep.status = Status::Pass;
}

}  // namespace detail

// Component form with explicit parity signs:
//   R(x)_{ab}^{a'b'} R(y)_{a'g}^{a''g'} R(z)_{b'g'}^{b''g''} (-1)^{[a][b]+[g][a']+[g'][b']}
// - R(z)_{bg}^{b'g'} R(y)_{ag'}^{a'g''} R(x)_{a'b'}^{a''b''} (-1)^{[b][g]+[g'][a]+[b'][a']}
// Entry (a,b,g),(a'',b'',g'') of the returned matrix; R^{cd}_{ab} = R[(a,b),(c,d)].
inline MatP ybe_component_residual(const GradedDims& d, const MatP& Rx, const MatP& Ry, const MatP& Rz,
                                   bool with_signs = true) {
  const std::size_t N = static_cast<std::size_t>(d.size());
  auto p = [&](std::size_t i) { return d.p0(static_cast<int>(i)); };
  auto sx = detail::sparse_rows(Rx), sy = detail::sparse_rows(Ry), sz = detail::sparse_rows(Rz);
  MatP res(N * N * N, N * N * N);
  auto idx3 = [&](std::size_t a, std::size_t b, std::size_t c) { return (a * N + b) * N + c; };
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t g = 0; g < N; ++g) {
        std::size_t row = idx3(a, b, g);
        // left side
        for (const auto& [c1, x] : sx[a * N + b]) {
          std::size_t a1 = c1 / N, b1 = c1 % N;
          for (const auto& [c2, y] : sy[a1 * N + g]) {
            std::size_t a2 = c2 / N, g1 = c2 % N;
            for (const auto& [c3, z] : sz[b1 * N + g1]) {
              std::size_t b2 = c3 / N, g2 = c3 % N;
              MPoly t = x * y * z;
              if (with_signs && ((p(a) * p(b) + p(g) * p(a1) + p(g1) * p(b1)) & 1)) t = -t;
              res(row, idx3(a2, b2, g2)) += t;
            }
          }
        }
        // right side
        for (const auto& [c1, z] : sz[b * N + g]) {
          std::size_t b1 = c1 / N, g1 = c1 % N;
          for (const auto& [c2, y] : sy[a * N + g1]) {
            std::size_t a1 = c2 / N, g2 = c2 % N;
            for (const auto& [c3, x] : sx[a1 * N + b1]) {
              std::size_t a2 = c3 / N, b2 = c3 % N;
              MPoly t = z * y * x;
              if (with_signs && ((p(b) * p(g) + p(g1) * p(a) + p(b1) * p(a1)) & 1)) t = -t;
              res(row, idx3(a2, b2, g2)) -= t;
            }
          }
        }
      }
  return res;
}

// Operator form with graded embeddings: R12 R13 R23 - R23 R13 R12,
// R13 = P23 R12 P23.
inline MatP ybe_operator_residual(const GradedDims& d, const MatP& Rx, const MatP& Ry, const MatP& Rz) {
  const std::size_t N = static_cast<std::size_t>(d.size());
  MatP I = MatP::identity(N);
  MatP P23 = kron(I, permutation_op<MPoly>(d));
  MatP R12 = kron(Rx, I);
  MatP R13 = P23 * kron(Ry, I) * P23;
  MatP R23 = kron(I, Rz);
  return R12 * R13 * R23 - R23 * R13 * R12;
}

// Ordinary embedding of an operator on spaces (1,3) into V(x)V(x)V.
template <class T>
Matrix<T> embed13(const GradedDims& d, const Matrix<T>& m) {
  const std::size_t N = static_cast<std::size_t>(d.size());
  Matrix<T> r(N * N * N, N * N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t c = 0; c < N; ++c)
      for (std::size_t a2 = 0; a2 < N; ++a2)
        for (std::size_t c2 = 0; c2 < N; ++c2) {
          const T& v = m(a * N + c, a2 * N + c2);
          if (is_zero(v)) continue;
          for (std::size_t b = 0; b < N; ++b) r((a * N + b) * N + c, (a2 * N + b) * N + c2) = v;
        }
  return r;
}

// theta-dressed form: R12 L1 theta L2 theta - theta L2 theta L1 R12 with
// L1 = R(y) on (1,3), L2 = R(z) on (2,3), ordinary products throughout.
inline MatP ybe_theta_residual(const GradedDims& d, const MatP& Rx, const MatP& Ry, const MatP& Rz) {
  const std::size_t N = static_cast<std::size_t>(d.size());
  MatP I = MatP::identity(N);
  MatP R12 = kron(Rx, I);
  MatP L1 = embed13(d, Ry);
  MatP L2 = kron(I, Rz);
  MatP th = kron(theta_op<MPoly>(d), I);
  MatP tL2t = th * L2 * th;
  return R12 * L1 * tL2t - tL2t * L1 * R12;
}

// Sign relating the component residual to the theta-form residual entrywise.
inline int component_theta_sign(const GradedDims& d, std::size_t row, std::size_t col) {
  const std::size_t N = static_cast<std::size_t>(d.size());
  auto p = [&](std::size_t i) { return d.p0(static_cast<int>(i)); };
  std::size_t a = row / (N * N), b = (row / N) % N, g = row % N;
  std::size_t a2 = col / (N * N), b2 = (col / N) % N;
  int e = p(g) + p(a2) + p(b2) + p(a) * p(b2) + p(b) * p(a2);
  return (e & 1) ? -1 : 1;
}

struct YbeOptions {
  bool symbolic = true;
  int samples = 20;
  unsigned seed = 20240601u;
};

inline std::vector<CheckReport> check_graded_ybe(const GradedDims& d, const Rat& hbar,
                                                 const YbeOptions& opt = {}) {
  std::vector<CheckReport> out;
  auto base = [&](const std::string& name) {
    CheckReport r;
    r.suite = "ybe";
    r.name = name;
    r.param("gl", d.str()).param("hbar", rat_str(hbar)).param("mode", opt.symbolic ? "symbolic" : "sampled");
    return r;
  };
  if (opt.symbolic) {
    MPoly u = MPoly::var(U), v = MPoly::var(V);
    MatP Rx = r_hat(d, hbar, u - v), Ry = r_hat(d, hbar, u), Rz = r_hat(d, hbar, v);
    Stopwatch sw;
    MatP comp = ybe_component_residual(d, Rx, Ry, Rz, true);
    CheckReport c = base("component-form");
    detail::poly_verdict(c, comp);
    c.seconds = sw.seconds();
    out.push_back(c);

    Stopwatch sw2;
    MatP op = ybe_operator_residual(d, Rx, Ry, Rz);
    CheckReport o = base("operator-form");
    detail::poly_verdict(o, op);
    o.seconds = sw2.seconds();
    out.push_back(o);

    Stopwatch sw3;
    MatP tf = ybe_theta_residual(d, Rx, Ry, Rz);
    CheckReport t = base("theta-form");
    detail::poly_verdict(t, tf);
    t.seconds = sw3.seconds();
    out.push_back(t);

    // Equivalence on independent arguments, where the residuals do not vanish.
    Stopwatch sw4;
    MPoly x1 = MPoly::var(U1);
    MatP Ax = r_hat(d, hbar, x1), Ay = r_hat(d, hbar, u), Az = r_hat(d, hbar, v);
    MatP c2 = ybe_component_residual(d, Ax, Ay, Az, true);
    MatP o2 = ybe_operator_residual(d, Ax, Ay, Az);
    MatP t2 = ybe_theta_residual(d, Ax, Ay, Az);
    MatP th = kron(theta_op<MPoly>(d), MatP::identity(static_cast<std::size_t>(d.size())));
    MatP conj = th * t2 * th;
    CheckReport e = base("forms-equivalent");
    e.compared = static_cast<long long>(c2.rows() * c2.cols());
    bool nonzero = false;
    for (std::size_t i = 0; i < c2.rows() && e.status == Status::Pass; ++i)
      for (std::size_t j = 0; j < c2.cols(); ++j) {
        MPoly want = component_theta_sign(d, i, j) > 0 ? t2(i, j) : -t2(i, j);
        if (!t2(i, j).is_zero()) nonzero = true;
        if (!(c2(i, j) == want) || !(o2(i, j) == conj(i, j))) {
          e.fail("component, operator and theta residuals are not related by the parity signs");
          Witness w;
          w.row = static_cast<long>(i);
          w.col = static_cast<long>(j);
          w.note = "component " + c2(i, j).str() + ", theta " + t2(i, j).str();
          e.witness = w;
          break;
        }
      }
    if (e.status == Status::Pass && !nonzero) e.fail("equivalence probe produced a vanishing residual");
    e.seconds = sw4.seconds();
    out.push_back(e);
    return out;
  }

  // sampled: random rational points, poles skipped with a note
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  auto rnd = [&]() { return Rat(num(rng), den(rng)); };
  CheckReport c = base("component-form"), o = base("operator-form"), t = base("theta-form");
  int skipped = 0, done = 0;
  Stopwatch sw;
  std::vector<std::string> notes;
  while (done < opt.samples) {
    Rat a = rnd(), b = rnd();
    a.canonicalize();
    b.canonicalize();
    Rat two_h = 2 * hbar;
    if (a - b + two_h == 0 || a + two_h == 0 || b + two_h == 0) {
      ++skipped;
      notes.push_back("pole skipped at u=" + rat_str(a) + ", v=" + rat_str(b));
      continue;
    }
    MatP Rx = r_hat(d, hbar, MPoly(a - b)), Ry = r_hat(d, hbar, MPoly(a)), Rz = r_hat(d, hbar, MPoly(b));
    for (auto* rep : {&c, &o, &t}) {
      if (rep->status != Status::Pass) continue;
      MatP res = rep == &c   ? ybe_component_residual(d, Rx, Ry, Rz, true)
                 : rep == &o ? ybe_operator_residual(d, Rx, Ry, Rz)
                             : ybe_theta_residual(d, Rx, Ry, Rz);
      detail::poly_verdict(*rep, res);
      if (rep->status != Status::Pass && rep->witness)
        rep->witness->note += " at u=" + rat_str(a) + ", v=" + rat_str(b);
    }
    ++done;
  }
  for (auto* rep : {&c, &o, &t}) {
    rep->compared = done;
    rep->seconds = sw.seconds();
    if (skipped) rep->reason += (rep->reason.empty() ? "" : "; ") + std::to_string(skipped) + " pole sample(s) skipped";
    out.push_back(*rep);
  }
  return out;
}

// Sign-stripped component form; must fail whenever odd indices exist.
inline CheckReport ybe_sign_stripped(const GradedDims& d, const Rat& hbar) {
  MPoly u = MPoly::var(U), v = MPoly::var(V);
  MatP res = ybe_component_residual(d, r_hat(d, hbar, u - v), r_hat(d, hbar, u), r_hat(d, hbar, v), false);
  CheckReport r;
  r.suite = "ybe";
  r.name = "component-form-sign-stripped";
  r.param("gl", d.str()).param("hbar", rat_str(hbar));
  detail::poly_verdict(r, res);
  return negative_control(r, "sign-stripped-ybe");
}

// Unitarity R(u)R(-u) = 1, PT symmetry P R P = R21, R(0) = P, weight conservation.
inline std::vector<CheckReport> check_r_properties(const GradedDims& d, const Rat& hbar) {
  std::vector<CheckReport> out;
  auto base = [&](const std::string& name) {
    CheckReport r;
    r.suite = "ybe";
    r.name = name;
    r.param("gl", d.str()).param("hbar", rat_str(hbar));
    return r;
  };
  RMatrix R = build_r(d, hbar);
  MatF P = permutation_op<RatFun>(d);
  MatF R21 = r21(R);
  {
    CheckReport r = base("unitarity");
    MatF prod = R.R * R21.map([](const RatFun& f) { return f.compose_linear(Rat(-1), Rat(0)); });
    r.compared = static_cast<long long>(prod.rows() * prod.cols());
    if (!prod.is_identity()) r.fail("R12(u) R21(-u) is not the identity");
    MatP poly = r_hat(d, hbar, MPoly::var(U)) * r_hat(d, hbar, -MPoly::var(U));
    MPoly scal = (MPoly::var(U) + MPoly(2 * hbar)) * (MPoly(2 * hbar) - MPoly::var(U));
    for (std::size_t i = 0; i < poly.rows(); ++i)
      for (std::size_t j = 0; j < poly.cols(); ++j)
        if (!(poly(i, j) == (i == j ? scal : MPoly()))) r.fail("cleared unitarity identity fails");
    out.push_back(r);
  }
  {
    CheckReport r = base("pt-symmetry");
    r.compared = static_cast<long long>(P.rows() * P.cols());
    if (!(P * R.R * P == R21)) r.fail("P R(u) P differs from R(-u)^{-1}");
    out.push_back(r);
  }
  {
    CheckReport r = base("r-at-zero");
    MatQ R0 = evaluate(R.R, Rat(0));
    r.compared = static_cast<long long>(R0.rows() * R0.cols());
    if (!(R0 == permutation_op(d))) r.fail("R(0) differs from P");
    out.push_back(r);
  }
  {
    CheckReport r = base("weight-conservation");
    Grading g = Grading(d) * Grading(d);
    if (!weight_conserving(R.R, g) || !weight_conserving(P, g) || !weight_conserving(theta_op<RatFun>(d), g))
      r.fail("an entry connects basis vectors of different total parity");
    out.push_back(r);
  }
  {
    CheckReport r = base("five-term-matches-compact");
    if (!(r_five_term(d, hbar) == r_compact(d, hbar))) r.fail("forms disagree");
    out.push_back(r);
  }
  return out;
}

}  // namespace superyang
