// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <set>

#include "superyang/relations.hpp"

using namespace superyang;

namespace {

CurrentSystem module(int m, int n, std::vector<Rat> pts, int order, bool flip = false) {
  QuantumSpace q(GradedDims(m, n), rat(1, 2), std::move(pts));
  return currents_of(q, order, CurrentOptions{flip});
}

std::string param(const CheckReport& r, const std::string& k) {
  for (const auto& [a, b] : r.params)
    if (a == k) return b;
  return "";
}

// The printed X+X- line at an index i >= m carries the opposite sign of what
// the constructed currents satisfy; those lines are pinned as failures.
bool known_delta_sign_failure(const CheckReport& r, int m) {
  if (r.category != "printed") return false;
  if (r.name != "XplusXminus-commutator" && r.name != "XplusXminus-anticommutator") return false;
  std::string i = param(r, "i"), j = param(r, "j");
  return i == j && std::stoi(i) >= m;
}

void expect_suite(const std::vector<CheckReport>& v, int m) {
  int executed = 0;
  for (const auto& r : v) {
    if (r.status == Status::Skipped) continue;
    ++executed;
    if (known_delta_sign_failure(r, m)) {
      EXPECT_EQ(r.status, Status::Fail) << r.key();
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_FALSE(r.witness->exponents.empty());
    } else {
      EXPECT_EQ(r.status, Status::Pass) << r.key() << " [" << r.category << "]: " << r.reason;
      EXPECT_GT(r.compared, 0) << r.key();
    }
  }
  EXPECT_GT(executed, 0);
}

const CheckReport* find(const std::vector<CheckReport>& v, const std::string& name, const std::string& cat,
                        const std::vector<std::pair<std::string, std::string>>& ps = {}) {
  for (const auto& r : v) {
    if (r.name != name || r.category != cat) continue;
    bool ok = true;
    for (const auto& [k, val] : ps) ok = ok && param(r, k) == val;
    if (ok) return &r;
  }
  return nullptr;
}

}  // namespace

TEST(Relations, Gl11SingleModule) {
  CurrentSystem cs = module(1, 1, {Rat(3)}, 8);
  auto v = check_relations(cs);
  expect_suite(v, 1);
  const CheckReport* printed = find(v, "XplusXminus-anticommutator", "printed");
  const CheckReport* amended = find(v, "XplusXminus-anticommutator", "amended");
  ASSERT_TRUE(printed && amended);
  EXPECT_EQ(printed->status, Status::Fail);
  EXPECT_EQ(amended->status, Status::Pass);
  const CheckReport* ferm = find(v, "XX-fermionic", "printed", {{"X", "+"}});
  ASSERT_TRUE(ferm);
  EXPECT_EQ(ferm->status, Status::Pass);
}

TEST(Relations, Gl21SingleModuleFullSuite) {
  CurrentSystem cs = module(2, 1, {Rat(3)}, 8);
  auto v = check_relations(cs);
  expect_suite(v, 2);
  for (const char* fam : {"XX-fermionic", "kX-trivial", "kX-odd-root", "XX-same-even", "XX-adjacent-plus",
                          "XX-adjacent-minus", "kk-cross-ij", "kk-mixed-odd", "serre1", "serre3"}) {
    const CheckReport* r = find(v, fam, "printed");
    ASSERT_TRUE(r) << fam;
    EXPECT_EQ(r->status, Status::Pass) << fam;
  }
}

TEST(Relations, Gl12AndTensorModules) {
  expect_suite(check_relations(module(1, 2, {Rat(3)}, 8)), 1);
  RelationOptions o;
  o.serre = false;
  expect_suite(check_relations(module(1, 1, {Rat(3), Rat(5)}, 8), o), 1);
  expect_suite(check_relations(module(2, 1, {Rat(3), Rat(-7)}, 6), o), 2);
}

TEST(Relations, GuardsSkipWithReason) {
  CurrentSystem cs = module(1, 2, {Rat(3)}, 4);
  auto v = check_serre(cs, "serre3");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].status, Status::Skipped);
  EXPECT_EQ(v[0].reason, "m-1 < 1: X_{m-1} absent");
  auto w = check_serre(module(2, 1, {Rat(3)}, 4), "serre2");
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].status, Status::Skipped);
  auto x = check_serre(module(2, 1, {Rat(3)}, 4), "extra-serre");
  EXPECT_EQ(x[0].status, Status::Skipped);
  EXPECT_THROW(check_serre(cs, "serre9"), std::invalid_argument);
}

// Every family runs at least once over gl(1|1), gl(2|1), gl(1|2), gl(2|2).
TEST(Relations, EveryFamilyExecutedSomewhere) {
  std::set<std::string> ran;
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}})
    for (const auto& r : check_relations(module(m, n, {Rat(3)}, 3)))
      if (r.status != Status::Skipped && r.category == "printed") ran.insert(r.name);
  for (const auto& f : relation_families()) EXPECT_TRUE(ran.count(f)) << f;
}

TEST(Relations, ClearedAndExpandedFormsAgree) {
  CurrentSystem cs = module(2, 2, {Rat(3), Rat(5)}, 6);
  RelationOptions o;
  o.only = {"kk-cross-ij", "kk-mixed-odd"};
  auto v = check_relations(cs, o);
  int pairs = 0;
  for (const auto& a : v) {
    if (a.category != "expanded") continue;
    for (const auto& b : v) {
      if (b.category != "printed" || b.name != a.name) continue;
      if (param(a, "i") != param(b, "i") || param(a, "j") != param(b, "j") || param(a, "k") != param(b, "k"))
        continue;
      EXPECT_EQ(a.status, b.status) << a.key();
      EXPECT_EQ(a.status, Status::Pass) << a.key() << ": " << a.reason;
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 3);
}

TEST(Relations, BracketFollowsParity) {
  CurrentSystem cs = module(2, 2, {Rat(3)}, 2);
  for (const auto& j : relation_jobs(cs)) {
    if (j.id.family == "XplusXminus-anticommutator") {
      EXPECT_EQ(j.id.i, 2);
      EXPECT_EQ(j.id.j, 2);
    }
    if (j.id.family == "XplusXminus-commutator" && j.id.i == j.id.j) EXPECT_NE(j.id.i, 2);
  }
}

TEST(Relations, FlippedXplusMBreaksSomething) {
  auto base = check_relations(module(2, 1, {Rat(3)}, 6));
  auto flipped = check_relations(module(2, 1, {Rat(3)}, 6, true));
  auto flips = flipped_to_fail(base, flipped);
  EXPECT_FALSE(flips.empty());
}

// Serre relations on a two-point module: they hold, and dropping one of the
// products makes them fail, so the check is not vacuous.
TEST(Relations, SerreOnTensorModuleIsNontrivial) {
  CurrentSystem cs = module(2, 1, {Rat(3), Rat(5)}, 4);
  for (const char* fam : {"serre1", "serre3"}) {
    RelationOptions o;
    o.only = {fam};
    for (const auto& job : relation_jobs(cs, o)) {
      CheckReport r = run_relation_job(cs, job);
      EXPECT_EQ(r.status, Status::Pass) << r.key() << ": " << r.reason;
      Expr full = job.build();
      int nonzero_terms = 0;
      for (const auto& t : full.terms()) {
        RelationJob one = job;
        one.build = [t] {
          Expr e;
          e.add(t.coef, t.pre, t.factors);
          return e;
        };
        if (run_relation_job(cs, one).status == Status::Fail) ++nonzero_terms;
      }
      EXPECT_GE(nonzero_terms, 2) << r.key();
    }
  }
}

TEST(Relations, OnlyFilterAndCheckRelation) {
  CurrentSystem cs = module(2, 1, {Rat(3)}, 4);
  RelationOptions o;
  o.only = {"XX-fermionic"};
  auto v = check_relations(cs, o);
  ASSERT_EQ(v.size(), 2u);
  for (const auto& r : v) EXPECT_EQ(r.name, "XX-fermionic");
  CheckReport r = check_relation(cs, RelationId{"kX-trivial", 2, 1, +1, '-'});
  EXPECT_EQ(r.status, Status::Pass) << r.reason;
  EXPECT_EQ(param(r, "i"), "2");
  CheckReport none = check_relation(cs, RelationId{"kX-trivial", 1, 2, +1, '-'});
  EXPECT_EQ(none.status, Status::Skipped);
}

TEST(Relations, WorkerCountDoesNotChangeReports) {
  CurrentSystem cs = module(2, 1, {Rat(3)}, 4);
  RelationOptions a, b;
  b.workers = 3;
  auto x = check_relations(cs, a), y = check_relations(cs, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    EXPECT_EQ(x[k].key(), y[k].key());
    EXPECT_EQ(x[k].status, y[k].status);
    EXPECT_EQ(x[k].compared, y[k].compared);
  }
}

TEST(Gl11, LinesMatchGeneralSuite) {
  CurrentSystem cs = module(1, 1, {Rat(3)}, 8);
  auto v = check_gl11(cs);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.back().name, "agreement-with-general-suite");
  EXPECT_EQ(v.back().status, Status::Pass) << v.back().reason;
  for (const auto& r : v) {
    if (r.name == "{X+1, X-1}") EXPECT_EQ(r.status, Status::Fail);
    else EXPECT_EQ(r.status, Status::Pass) << r.name << ": " << r.reason;
  }
  const CheckReport* k = nullptr;
  for (const auto& r : v)
    if (r.name == "k+1 k-1") k = &r;
  ASSERT_TRUE(k);
  EXPECT_EQ(k->status, Status::Pass);
  EXPECT_THROW(check_gl11(module(2, 1, {Rat(3)}, 2)), std::invalid_argument);
}

TEST(Gl11, AgreementOnTwoPointModule) {
  auto v = check_gl11(module(1, 1, {Rat(3), Rat(5)}, 6));
  EXPECT_EQ(v.back().status, Status::Pass) << v.back().reason;
}
