// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "mplreach/dlsolver.hpp"
#include "mplreach/reach.hpp"

namespace mplreach {

enum class SolverEngine { Internal, External };

struct SymbolicOptions {
  SolverEngine engine = SolverEngine::Internal;
  /// Command line of an external SMT-LIB2 solver (External engine only).
  std::string solver_cmd;
  bool check_k0 = false;
  /// When set, the script of each satisfiability call is written here (the
  /// file ends up holding the final call's script).
  std::string dump_smt2;
  SolverOptions solver{};
  SmtEmitOptions emit{};
};

/// True iff trajectory[0] lies in X, the last point lies in Y, and every
/// consecutive pair satisfies x(j) = A ⊗ x(j-1) exactly.
bool verify_witness(const MaxPlusMatrix& A, const Dbm& X, const Dbm& Y,
                    std::span<const std::vector<Rat>> trajectory);

/// SMT-based bounded reachability over an incremental assertion stack.
/// Forward runs assert the step relation and the target per iteration and
/// stop at the first satisfiable bound; backward runs first check
/// satisfiability without X (unsatisfiable means the backward set emptied
/// out, so the search stops), then with X. One-shot variants keep two stage
/// variable sets and swap in the step encoding of A^⊗k each iteration,
/// re-asserting the far set after each emptiness check.
///
/// Any satisfiable verdict is decoded into a trajectory and verified by
/// exact simulation before being returned.
ReachResult reach_symbolic(const ReachSpec& spec,
                           const SymbolicOptions& opts = {});

/// Record of one symbolic query.
struct SymbolicRun {
  ReachSpec spec;
  SolverEngine engine = SolverEngine::Internal;
  ReachResult result;
};

SymbolicRun run_symbolic(ReachSpec spec, const SymbolicOptions& opts = {});

}  // namespace mplreach
