// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace mplreach {

/// Thrown when a bounded iterative search (power iteration, instance
/// generation) exhausts its cap without an answer. Callers may retry with a
/// larger cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a cooperative deadline expires inside a long-running
/// computation. The benchmark harness records these as timeouts.
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by the internal satisfiability engine when the configured search
/// budget is exhausted. Distinct from an Unsat verdict.
class SolverResourceLimit : public std::runtime_error {
 public:
  explicit SolverResourceLimit(const std::string& what)
      : std::runtime_error(what) {}
};

/// Failures talking to an external SMT-LIB2 solver process.
class ExternalSolverError : public std::runtime_error {
 public:
  enum class Kind { Process, Parse, Unknown };

  ExternalSolverError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Malformed matrix/set/model text.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Cooperative cancellation point. Default-constructed deadlines never fire.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after(std::chrono::milliseconds budget) {
    Deadline d;
    if (budget.count() > 0) d.at_ = std::chrono::steady_clock::now() + budget;
    return d;
  }

  bool expired() const {
    return at_ && std::chrono::steady_clock::now() >= *at_;
  }
  void check(const char* where) const {
    if (expired()) throw TimeoutError(std::string("deadline expired in ") + where);
  }
  bool armed() const { return at_.has_value(); }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace mplreach
