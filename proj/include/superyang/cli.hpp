// SPDX-License-Identifier: MIT
// Command-line front end: argument parsing, suite dispatch and the JSON report.
// Needs the vendored CLI11.hpp and json.hpp on the include path.
#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "superyang/formal_checks.hpp"
#include "superyang/hopf.hpp"

namespace superyang {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s{"ybe", "series", "rll", "gauss", "relations", "serre", "gl11", "hopf"};
  return s;
}

struct RunConfig {
  std::string command;
  int m = 1, n = 1;
  Rat hbar = rat(1, 2);
  Rat a = 3;
  std::optional<Rat> b;
  std::vector<Rat> points;  // evaluation points of the hopf checks (and of relations if given)
  int order = 8;
  bool symbolic = true;
  int samples = 20;
  std::vector<std::string> only;
  std::vector<std::string> suites;
  bool dump = false;
  std::string json_path;
  int workers = 1;

  GradedDims dims() const { return GradedDims(m, n); }
  bool wants(const std::string& s) const {
    return suites.empty() || std::find(suites.begin(), suites.end(), s) != suites.end();
  }
};

struct RunResult {
  nlohmann::ordered_json json;
  std::vector<CheckReport> reports;
  int exit_code = 0;
  double seconds = 0;
};

// ------------------------------------------------------------------- json

inline nlohmann::ordered_json report_json(const CheckReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = r.suite;
  j["name"] = r.name;
  j["category"] = r.category;
  ordered_json p = ordered_json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["status"] = status_str(r.status);
  j["reason"] = r.reason;
  ordered_json w = ordered_json::object();
  for (const auto& [var, win] : r.window) w[var] = ordered_json::array({win.lo, win.hi});
  j["window"] = w;
  j["compared"] = r.compared;
  if (r.witness) {
    ordered_json x;
    ordered_json e = ordered_json::object();
    for (const auto& [var, k] : r.witness->exponents) e[var] = k;
    x["exponents"] = e;
    x["row"] = r.witness->row;
    x["col"] = r.witness->col;
    x["value"] = r.witness->value;
    x["note"] = r.witness->note;
    j["witness"] = x;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline nlohmann::ordered_json matrix_json(const MatQ& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::ordered_json series_json(const std::string& name, const SeriesM& s, bool dump) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["name"] = name;
  const Axis& a = s.axes().at(0);
  j["window"] = ordered_json::array({a.w.lo, a.w.hi});
  long nonzero = 0;
  std::optional<std::size_t> lead;
  ordered_json coeffs = ordered_json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at_index(i).is_zero()) continue;
    ++nonzero;
    // leading term: highest power at infinity, lowest at zero
    if (!lead || a.zero_above) lead = i;
    if (dump) coeffs.push_back(ordered_json{{"exponent", s.exponents(i)[0]}, {"matrix", matrix_json(s.at_index(i))}});
  }
  j["nonzero_coefficients"] = nonzero;
  if (lead)
    j["leading"] = ordered_json{{"exponent", s.exponents(*lead)[0]}, {"matrix", matrix_json(s.at_index(*lead))}};
  else
    j["leading"] = nullptr;
  if (dump) j["coefficients"] = coeffs;
  return j;
}

inline nlohmann::ordered_json gauss_json(const GaussData& g, bool dump) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json k = ordered_json::array(), e = ordered_json::array(), f = ordered_json::array();
  for (std::size_t t = 0; t < g.fac.k.size(); ++t) k.push_back(series_json("k_" + std::to_string(t + 1), g.fac.k[t], dump));
  for (const auto& [ij, s] : g.fac.e)
    e.push_back(series_json("e_" + std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1), s, dump));
  for (const auto& [ij, s] : g.fac.f)
    f.push_back(series_json("f_" + std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1), s, dump));
  j["k"] = k;
  j["e"] = e;
  j["f"] = f;
  return j;
}

inline nlohmann::ordered_json config_json(const RunConfig& c) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["command"] = c.command;
  j["m"] = c.m;
  j["n"] = c.n;
  j["hbar"] = rat_str(c.hbar);
  j["a"] = rat_str(c.a);
  j["b"] = c.b ? ordered_json(rat_str(*c.b)) : ordered_json(nullptr);
  ordered_json pts = ordered_json::array();
  for (const auto& p : c.points) pts.push_back(rat_str(p));
  j["points"] = pts;
  j["order"] = c.order;
  j["ybe_mode"] = c.symbolic ? "symbolic" : "samples";
  j["samples"] = c.symbolic ? ordered_json(nullptr) : ordered_json(c.samples);
  j["only"] = c.only;
  j["suites"] = c.suites;
  j["dump"] = c.dump;
  return j;
}

// ---------------------------------------------------------------- parsing

inline std::vector<Rat> parse_points(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  if (out.empty()) throw UsageError("--points needs at least one value");
  return out;
}

inline void require_points(const RunConfig& c, const std::vector<Rat>& pts) {
  std::set<Rat> seen;
  for (const auto& p : pts) {
    if (!seen.insert(p).second) throw UsageError("evaluation points must be pairwise distinct");
    try {
      EvalModule(c.dims(), p, c.hbar);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
  }
}

inline void validate(RunConfig& c) {
  if (c.m < 0 || c.n < 0 || c.m + c.n < 1) throw UsageError("--m and --n must be >= 0 with m + n >= 1");
  bool currents = c.command != "ybe-check" && c.command != "rll-check";
  if (currents && c.m + c.n < 2)
    throw UsageError("gl(" + std::to_string(c.m) + "|" + std::to_string(c.n) +
                     ") has no currents X_i; this command needs m + n >= 2");
  if (c.hbar == 0) throw UsageError("--hbar must be nonzero");
  if (c.order < 1) throw UsageError("--order must be >= 1");
  if (!c.symbolic && c.samples < 1) throw UsageError("--samples must be >= 1");
  for (const auto& r : c.only) {
    const auto& f = relation_families();
    if (std::find(f.begin(), f.end(), r) == f.end()) throw UsageError("unknown relation family '" + r + "' for --only");
  }
  for (const auto& s : c.suites) {
    const auto& f = suite_names();
    if (std::find(f.begin(), f.end(), s) == f.end()) throw UsageError("unknown suite '" + s + "'");
  }
  std::vector<Rat> single{c.a};
  if (c.b) single.push_back(*c.b);
  if (c.command != "ybe-check") require_points(c, single);
  if (c.command == "hopf-check" || c.command == "all") {
    if (c.points.empty()) c.points = {Rat(3), Rat(5), Rat(7)};
    if (c.points.size() < 2 || c.points.size() > 3) throw UsageError("hopf checks need --points a,b or a,b,c");
  }
  if (!c.points.empty()) require_points(c, c.points);
}

// ----------------------------------------------------------------- suites

inline std::vector<CheckReport> run_suite(const std::string& suite, const RunConfig& c) {
  const GradedDims d = c.dims();
  std::vector<CheckReport> out;
  auto add = [&](std::vector<CheckReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  QuantumSpace single(d, c.hbar, {c.a});
  if (suite == "ybe") {
    add(check_graded_ybe(d, c.hbar, YbeOptions{c.symbolic, c.samples}));
    out.push_back(ybe_sign_stripped(d, c.hbar));
    add(check_r_properties(d, c.hbar));
  } else if (suite == "series") {
    add(check_formal_delta());
  } else if (suite == "rll") {
    std::vector<Rat> pts{c.a};
    if (c.b) pts.push_back(*c.b);
    add(check_rll(QuantumSpace(d, c.hbar, pts), RllOptions{c.order}));
  } else if (suite == "gauss") {
    add(check_gauss(single, c.order).reports);
  } else if (suite == "relations" || suite == "serre" || suite == "gl11") {
    std::vector<Rat> pts = c.command == "relations" && !c.points.empty() ? c.points : std::vector<Rat>{c.a};
    CurrentSystem cs = currents_of(QuantumSpace(d, c.hbar, pts), c.order);
    RelationOptions o;
    o.workers = c.workers;
    if (suite == "gl11") {
      if (d == GradedDims(1, 1)) add(check_gl11(cs, o));
    } else if (suite == "serre") {
      o.only.clear();
      for (const auto& f : relation_families())
        if (is_serre_family(f)) o.only.push_back(f);
      add(check_relations(cs, o));
    } else {
      o.only = c.only;
      o.serre = c.command == "relations";
      add(check_relations(cs, o));
    }
  } else if (suite == "hopf") {
    HopfOptions o;
    o.workers = c.workers;
    add(check_hopf(d, c.hbar, c.points, c.order, o));
  }
  return out;
}

inline RunResult run(const RunConfig& c) {
  Stopwatch sw;
  RunResult res;
  std::vector<std::string> suites;
  if (c.command == "ybe-check") suites = {"ybe"};
  else if (c.command == "rll-check") suites = {"rll"};
  else if (c.command == "gauss") suites = {"gauss"};
  else if (c.command == "relations") suites = {"relations", "gl11"};
  else if (c.command == "hopf-check") suites = {"hopf"};
  else
    for (const auto& s : suite_names())
      if (c.wants(s)) suites.push_back(s);
  if (c.command == "relations" && !c.only.empty()) suites = {"relations"};

  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "superyang-report";
  j["schema_version"] = kSchemaVersion;
  j["tool"] = ordered_json{{"name", "superyang"}, {"version", kToolVersion}};
  j["config"] = config_json(c);

  std::optional<GaussRun> gauss;
  for (const auto& s : suites) {
    try {
      if (c.command == "gauss") {
        gauss = check_gauss(QuantumSpace(c.dims(), c.hbar, {c.a}), c.order);
        res.reports = gauss->reports;
        continue;
      }
      for (auto& r : run_suite(s, c)) res.reports.push_back(std::move(r));
    } catch (const std::exception& ex) {
      CheckReport r;
      r.suite = s;
      r.name = "suite";
      r.status = Status::Error;
      r.reason = ex.what();
      res.reports.push_back(r);
    }
  }
  ordered_json checks = ordered_json::array();
  for (const auto& r : res.reports) checks.push_back(report_json(r));
  j["checks"] = checks;
  if (gauss)
    j["factors"] = ordered_json{{"L+", gauss_json(gauss->plus, c.dump)}, {"L-", gauss_json(gauss->minus, c.dump)}};
  Tally t = tally(res.reports);
  j["summary"] = ordered_json{{"total", res.reports.size()}, {"pass", t.pass}, {"fail", t.fail},
                              {"skipped", t.skipped}, {"error", t.error}};
  res.json = std::move(j);
  res.exit_code = t.ok() ? 0 : 1;
  res.seconds = sw.seconds();
  return res;
}

inline std::string format_line(const CheckReport& r) {
  std::string s = status_str(r.status);
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  s.resize(8, ' ');
  s += r.key();
  if (r.category != "printed") s += " [" + r.category + "]";
  if (!r.passed() && !r.reason.empty()) s += ": " + r.reason;
  return s;
}

// ------------------------------------------------------------------- main

inline int cli_main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact checks for the super Yangian double DY(gl(m|n)) at c = 0"};
  app.require_subcommand(1);
  RunConfig c;
  std::string hbar = "1/2", a = "3", b, points;

  auto common = [&](CLI::App* s, bool with_points) {
    s->add_option("--m", c.m, "even part rank m")->capture_default_str();
    s->add_option("--n", c.n, "odd part rank n")->capture_default_str();
    s->add_option("--hbar", hbar, "deformation parameter P/Q")->capture_default_str();
    s->add_option("--json", c.json_path, "write the JSON report to PATH ('-' for stdout)");
    if (with_points) s->add_option("--points", points, "evaluation points a,b[,c]");
  };
  auto order = [&](CLI::App* s) { s->add_option("--order", c.order, "truncation order N")->capture_default_str(); };
  auto point_a = [&](CLI::App* s) { s->add_option("--a", a, "evaluation point P/Q")->capture_default_str(); };

  CLI::App* ybe = app.add_subcommand("ybe-check", "graded Yang-Baxter equation and R-matrix properties");
  common(ybe, false);
  auto* sym = ybe->add_flag("--symbolic", "check symbolically in u, v (default)");
  auto* smp = ybe->add_option("--samples", c.samples, "check at K random rational points instead");
  sym->excludes(smp);

  CLI::App* rll = app.add_subcommand("rll-check", "RLL exchange relations of the Lax pair");
  common(rll, false);
  point_a(rll);
  rll->add_option("--b", b, "second evaluation point P/Q");
  order(rll);

  CLI::App* gauss = app.add_subcommand("gauss", "Gauss decomposition of L+ and L-");
  common(gauss, false);
  point_a(gauss);
  order(gauss);
  gauss->add_flag("--dump", c.dump, "include every coefficient of the factors");

  CLI::App* rel = app.add_subcommand("relations", "defining relations of the currents");
  common(rel, true);
  point_a(rel);
  order(rel);
  rel->add_option("--only", c.only, "restrict to a relation family (repeatable)");

  CLI::App* hopf = app.add_subcommand("hopf-check", "coproduct, counit, antipode and coassociativity");
  common(hopf, true);
  order(hopf);

  CLI::App* all = app.add_subcommand("all", "every suite feasible for gl(m|n)");
  common(all, true);
  point_a(all);
  all->add_option("--b", b, "second evaluation point for the RLL suite");
  order(all);
  all->add_option("--suites", c.suites, "subset of ybe,series,rll,gauss,relations,serre,gl11,hopf")->delimiter(',');
  all->add_option("--samples", c.samples, "check the YBE at K random points instead of symbolically");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    c.hbar = parse_rat(hbar);
    c.a = parse_rat(a);
    if (!b.empty()) c.b = parse_rat(b);
    if (!points.empty()) c.points = parse_points(points);
    if ((c.command == "rll-check" || c.command == "all") && !c.b) c.b = Rat(5);
    if (*smp) c.symbolic = false;
    if (c.command == "all" && app.get_subcommands().front()->count("--samples")) c.symbolic = false;
    c.workers = workers_from_env();
    validate(c);
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << "\n";
    return 2;
  }

  RunResult res = run(c);
  std::string text = res.json.dump(2) + "\n";
  bool json_stdout = c.json_path == "-";
  if (!json_stdout) {
    for (const auto& r : res.reports) out << format_line(r) << "\n";
    Tally t = tally(res.reports);
    out << "summary: " << t.pass << " pass, " << t.fail << " fail, " << t.skipped << " skipped, " << t.error
        << " error (" << std::fixed << std::setprecision(2) << res.seconds << " s, workers " << c.workers << ")\n";
  } else {
    out << text;
  }
  if (!c.json_path.empty() && !json_stdout) {
    std::ofstream f(c.json_path, std::ios::binary);
    if (!f) {
      err << "cannot write " << c.json_path << "\n";
      return 2;
    }
    f << text;
  }
  return res.exit_code;
}

}  // namespace superyang
