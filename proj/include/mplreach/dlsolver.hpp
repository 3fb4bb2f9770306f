// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mplreach/difflogic.hpp"
#include "mplreach/errors.hpp"

namespace mplreach {

struct SolverOptions {
  /// DFS branch budget; exceeding it raises SolverResourceLimit.
  std::uint64_t max_search_nodes = 20'000'000;
  /// Cap on the disjunctive width a single Or-node may expand to.
  std::size_t max_branches_per_clause = 4096;
  Deadline deadline{};
};

/// Result of a satisfiability check. The model maps every variable that
/// occurs in the asserted formulas to an exact rational; it satisfies every
/// asserted formula (replayed internally before being returned).
struct SatVerdict {
  bool sat = false;
  std::map<DLVar, Rat> model;
};

/// Assertion-stack satisfiability interface for negation-free
/// difference-logic formulas. `push` appends one formula, `pop` removes the
/// most recent one and restores exactly the pre-push state; `check` decides
/// the conjunction of the current stack over the reals.
///
/// The decision engine performs a DFS over disjunction branches with
/// conflict-directed backjumping; every candidate conjunction of atoms is
/// tested by incremental negative-cycle detection on the weighted
/// difference-constraint graph, with strictness carried as an infinitesimal
/// component of each weight. Learned conflicts are scoped to one check call,
/// so push/pop trivially restore solver state.
class SolverContext {
 public:
  explicit SolverContext(SolverOptions opts = {});

  void push(DLFormula f);
  void pop();  // throws std::logic_error on an empty stack
  std::size_t depth() const { return stack_.size(); }
  std::span<const DLFormula> assertions() const { return stack_; }

  SatVerdict check() const;  // may throw SolverResourceLimit / TimeoutError

 private:
  std::vector<DLFormula> stack_;
  SolverOptions opts_;
};

struct SmtEmitOptions {
  /// Emit QF_IDL instead of QF_RDL when every constant in the stack is
  /// integral. Off by default: atoms are solved over the reals regardless of
  /// integrality, and this flag only changes the exported logic.
  bool prefer_integer_logic = false;
};

/// Deterministic SMT-LIB2 v2.6 script for an assertion stack: logic
/// selection, sorted declarations, one assert per stack entry, check-sat and
/// get-model.
std::string to_smtlib(std::span<const DLFormula> stack,
                      const SmtEmitOptions& opts = {});

/// Runs `solver_cmd` as a child process speaking SMT-LIB2 on stdin/stdout
/// and parses the verdict. Sat models are read back and re-checked against
/// the stack before being returned. Process failure, unparseable output, and
/// a solver answer of `unknown` raise ExternalSolverError with distinct
/// kinds.
SatVerdict check_external(std::span<const DLFormula> stack,
                          const std::string& solver_cmd,
                          const SmtEmitOptions& opts = {});

/// Probes a list of well-known SMT solver command lines with a trivial
/// script; returns the first one that answers. Used to gate optional
/// cross-checks.
std::optional<std::string> find_external_solver();

}  // namespace mplreach
