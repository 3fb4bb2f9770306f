// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "mplreach/dbm.hpp"
#include "mplreach/errors.hpp"
#include "mplreach/maxplus.hpp"

namespace mplreach {

enum class Mode { Forward, Backward };
enum class Strategy { Sequential, OneShot };

/// A bounded reachability query: is the target Y reachable from the initial
/// set X within 1..N steps of x(k) = A ⊗ x(k-1)?
struct ReachSpec {
  MaxPlusMatrix A;
  Dbm X;
  Dbm Y;
  int N = 1;
  Mode mode = Mode::Forward;
  Strategy strategy = Strategy::Sequential;
};

/// Verdict of a reachability run. `step` is the earliest hit (1..N), or the
/// break step of a backward run whose sets emptied out. `witness` is filled
/// by the symbolic engine only and holds a verified trajectory x(0..k).
/// `set_sizes` counts DBM parts per computed step (explicit engine).
struct ReachResult {
  bool reachable = false;
  std::optional<int> step;
  std::vector<std::vector<Rat>> witness;
  bool emptied = false;
  std::vector<std::size_t> set_sizes;
};

/// Shared engine knobs. Reachability at k = 0 (X meets Y) is not part of the
/// algorithms; `check_k0` adds that test in front of the loop.
struct ReachOptions {
  bool check_k0 = false;
  bool reduce_unions = false;
  Deadline deadline{};
};

}  // namespace mplreach
