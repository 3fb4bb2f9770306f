// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mplreach/dbm.hpp"
#include "mplreach/errors.hpp"
#include "mplreach/maxplus.hpp"

namespace mplreach {

/// One piece of the piecewise-affine form of an MPL system: on `region`
/// (canonical, non-empty) the dynamics are x'_i = x_{g[i]} + offsets[i].
/// g holds 0-based column indices with A(i, g[i]) finite.
struct PwaRegion {
  std::vector<int> g;
  Dbm region;
  std::vector<Rat> offsets;
};

struct PwaSystem {
  MaxPlusMatrix matrix;
  std::vector<PwaRegion> regions;
};

/// Enumerates all non-empty regions by backtracking over g row by row with
/// incremental DBM tightening; empty partial regions are pruned early.
/// Regions come out in lexicographic g order, so the list is deterministic.
/// Throws std::invalid_argument for a non-regular matrix.
PwaSystem pwa_generate(const MaxPlusMatrix& a, const Deadline& deadline = {});

}  // namespace mplreach
