// SPDX-License-Identifier: MIT
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superyang/series.hpp"

namespace superyang {

enum class Status { Pass, Fail, Skipped, Error };

inline const char* status_str(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    default: return "error";
  }
}

struct Witness {
  std::vector<std::pair<std::string, int>> exponents;
  long row = -1, col = -1;
  std::string value;  // "p/q"
  std::string note;
};

struct CheckReport {
  std::string suite;
  std::string name;
  std::string category = "printed";
  std::vector<std::pair<std::string, std::string>> params;
  Status status = Status::Pass;
  std::string reason;
  std::vector<std::pair<std::string, Window>> window;
  long long compared = 0;
  std::optional<Witness> witness;
  double seconds = 0;

  bool passed() const { return status == Status::Pass; }
  std::string key() const {
    std::string k = suite + "/" + name;
    for (const auto& [a, b] : params) k += " " + a + "=" + b;
    return k;
  }
  CheckReport& param(const std::string& k, const std::string& v) {
    params.emplace_back(k, v);
    return *this;
  }
  CheckReport& fail(std::string why) {
    status = Status::Fail;
    reason = std::move(why);
    return *this;
  }
  CheckReport& skip(std::string why) {
    status = Status::Skipped;
    reason = std::move(why);
    return *this;
  }
};

// A negative control passes exactly when the underlying check fails.
inline CheckReport negative_control(CheckReport inner, const std::string& name) {
  CheckReport r = inner;
  r.name = name;
  r.category = "negative-control";
  if (inner.status == Status::Fail) {
    r.status = Status::Pass;
    r.reason = "underlying check failed as required: " + inner.reason;
  } else {
    r.status = Status::Fail;
    r.reason = "underlying check did not fail (status " + std::string(status_str(inner.status)) + ")";
  }
  return r;
}

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

struct Tally {
  int pass = 0, fail = 0, skipped = 0, error = 0;
  void add(const CheckReport& r) {
    switch (r.status) {
      case Status::Pass: ++pass; break;
      case Status::Fail: ++fail; break;
      case Status::Skipped: ++skipped; break;
      default: ++error; break;
    }
  }
  bool ok() const { return fail == 0 && error == 0; }
};

inline Tally tally(const std::vector<CheckReport>& v) {
  Tally t;
  for (const auto& r : v) t.add(r);
  return t;
}

}  // namespace superyang
