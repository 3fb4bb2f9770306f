// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mplreach/reach_symbolic.hpp"

#include <fstream>
#include <stdexcept>

namespace mplreach {

namespace {

// Uniform push/pop/check over the internal engine or an external process.
class SolverHandle {
 public:
  explicit SolverHandle(const SymbolicOptions& opts)
      : opts_(opts), ctx_(opts.solver) {}

  void push(DLFormula f) {
    if (opts_.engine == SolverEngine::Internal)
      ctx_.push(std::move(f));
    else
      stack_.push_back(std::move(f));
  }

  void pop() {
    if (opts_.engine == SolverEngine::Internal)
      ctx_.pop();
    else
      stack_.pop_back();
  }

  SatVerdict check() {
    std::span<const DLFormula> stack = opts_.engine == SolverEngine::Internal
                                           ? ctx_.assertions()
                                           : std::span<const DLFormula>(stack_);
    if (!opts_.dump_smt2.empty()) {
      std::ofstream out(opts_.dump_smt2);
      out << to_smtlib(stack, opts_.emit);
    }
    if (opts_.engine == SolverEngine::Internal) return ctx_.check();
    return check_external(stack, opts_.solver_cmd, opts_.emit);
  }

 private:
  const SymbolicOptions& opts_;
  SolverContext ctx_;
  std::vector<DLFormula> stack_;
};

std::vector<Rat> decode_stage(const SatVerdict& v, int n, int stage) {
  std::vector<Rat> x(n, Rat(0));
  for (int i = 1; i <= n; ++i) {
    auto it = v.model.find(DLVar{i, stage});
    if (it != v.model.end()) x[i - 1] = it->second;
  }
  return x;
}

// Witness from a model: decoded stages for sequential runs, decoded start
// plus exact simulation for one-shot runs (intermediate stages are not in
// the model there).
std::vector<std::vector<Rat>> build_witness(const SatVerdict& v,
                                            const MaxPlusMatrix& A, int n,
                                            int first_stage, int k,
                                            bool simulate) {
  std::vector<std::vector<Rat>> traj;
  traj.push_back(decode_stage(v, n, first_stage));
  for (int j = 1; j <= k; ++j) {
    if (simulate)
      traj.push_back(apply(A, traj.back()));
    else
      traj.push_back(decode_stage(v, n, first_stage + j));
  }
  return traj;
}

}  // namespace

bool verify_witness(const MaxPlusMatrix& A, const Dbm& X, const Dbm& Y,
                    std::span<const std::vector<Rat>> trajectory) {
  if (trajectory.empty()) return false;
  if (!X.contains(trajectory.front())) return false;
  if (!Y.contains(trajectory.back())) return false;
  for (std::size_t j = 1; j < trajectory.size(); ++j) {
    if (apply(A, trajectory[j - 1]) != trajectory[j]) return false;
  }
  return true;
}

ReachResult reach_symbolic(const ReachSpec& spec, const SymbolicOptions& opts) {
  if (spec.N < 0) throw std::invalid_argument("reach_symbolic: N must be >= 0");
  const int n = spec.A.rows();
  if (!spec.A.is_square() || spec.X.dim() != n || spec.Y.dim() != n)
    throw std::invalid_argument("reach_symbolic: dimension mismatch");
  auto Xc = spec.X.canonical();
  auto Yc = spec.Y.canonical();
  if (!Xc || !Yc)
    throw std::invalid_argument("reach_symbolic: X and Y must be non-empty");

  const bool forward = spec.mode == Mode::Forward;
  const bool oneshot = spec.strategy == Strategy::OneShot;
  SolverHandle solver(opts);
  ReachResult res;

  auto accept = [&](const SatVerdict& v, int k, int first_stage,
                    bool simulate) {
    res.reachable = true;
    res.step = k;
    res.witness = build_witness(v, spec.A, n, first_stage, k, simulate);
    if (!verify_witness(spec.A, *Xc, *Yc, res.witness))
      throw std::logic_error("symbolic witness failed exact replay");
  };

  // Stage 0 carries the set the iteration grows away from: X for forward
  // runs, Y for backward ones.
  solver.push(dbm_to_formula(forward ? *Xc : *Yc, 0));

  if (opts.check_k0) {
    solver.push(dbm_to_formula(forward ? *Yc : *Xc, 0));
    SatVerdict v = solver.check();
    if (v.sat) {
      res.reachable = true;
      res.step = 0;
      res.witness.push_back(decode_stage(v, n, 0));
      if (!verify_witness(spec.A, *Xc, *Yc, res.witness))
        throw std::logic_error("symbolic witness failed exact replay");
      return res;
    }
    solver.pop();
  }

  if (!oneshot) {
    if (forward) {
      for (int k = 1; k <= spec.N; ++k) {
        opts.solver.deadline.check("reach_symbolic");
        solver.push(encode_step(spec.A, k - 1, k));
        solver.push(dbm_to_formula(*Yc, k));
        SatVerdict v = solver.check();
        if (v.sat) {
          accept(v, k, 0, false);
          return res;
        }
        solver.pop();
      }
    } else {
      for (int k = 1; k <= spec.N; ++k) {
        opts.solver.deadline.check("reach_symbolic");
        solver.push(encode_step(spec.A, -k, 1 - k));
        if (!solver.check().sat) {
          res.emptied = true;
          res.step = k;
          return res;
        }
        solver.push(dbm_to_formula(*Xc, -k));
        SatVerdict v = solver.check();
        if (v.sat) {
          accept(v, k, -k, false);
          return res;
        }
        solver.pop();
      }
    }
    return res;
  }

  // One-shot: two stage variable sets; the step encoding of A^⊗k replaces
  // its slot each iteration.
  const int from_stage = forward ? 0 : -1;
  const int to_stage = forward ? 1 : 0;
  DLFormula far_set = dbm_to_formula(forward ? *Yc : *Xc, forward ? 1 : -1);
  MaxPlusMatrix pk = spec.A;
  solver.push(DLFormula::make_true());  // placeholder for the step slot
  if (forward) solver.push(far_set);
  for (int k = 1; k <= spec.N; ++k) {
    opts.solver.deadline.check("reach_symbolic");
    if (k > 1) pk = pk * spec.A;
    if (forward) {
      solver.pop();  // far set
      solver.pop();  // previous step encoding
      solver.push(encode_step(pk, from_stage, to_stage));
      solver.push(far_set);
      SatVerdict v = solver.check();
      if (v.sat) {
        accept(v, k, 0, true);
        return res;
      }
    } else {
      solver.pop();  // previous step encoding
      solver.push(encode_step(pk, from_stage, to_stage));
      if (!solver.check().sat) {
        res.emptied = true;
        res.step = k;
        return res;
      }
      solver.push(far_set);
      SatVerdict v = solver.check();
      if (v.sat) {
        accept(v, k, -1, true);
        return res;
      }
      solver.pop();  // far set, re-asserted after the next emptiness check
    }
  }
  return res;
}

SymbolicRun run_symbolic(ReachSpec spec, const SymbolicOptions& opts) {
  SymbolicRun run{std::move(spec), opts.engine, {}};
  run.result = reach_symbolic(run.spec, opts);
  return run;
}

}  // namespace mplreach
