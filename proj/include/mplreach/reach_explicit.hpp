// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mplreach/pwa.hpp"
#include "mplreach/reach.hpp"

namespace mplreach {

/// One forward image step over a PWA system: the union over regions r of
/// image(part ∩ r.region) for every part of `cur`, empty pieces dropped.
DbmUnion forward_step(const PwaSystem& pwa, const DbmUnion& cur);

/// One backward step: union over regions of preimage(part) ∩ r.region.
DbmUnion backward_step(const PwaSystem& pwa, const DbmUnion& cur);

/// Forward reach sets X_1..X_N (X_k = Im(X_{k-1})). X must be non-empty.
std::vector<DbmUnion> forward_reach_sets(const MaxPlusMatrix& A, const Dbm& X,
                                         int N, const ReachOptions& = {});

/// Backward reach sets Y_{-1}..Y_{-N}; stops early (shorter list) once a set
/// comes out empty, since all later ones are empty too.
std::vector<DbmUnion> backward_reach_sets(const MaxPlusMatrix& A, const Dbm& Y,
                                          int N, const ReachOptions& = {});

/// Explicit reach-set reachability. Sequential strategies build the PWA
/// system of A once and iterate images; one-shot strategies regenerate the
/// PWA system of A^⊗k at every iteration and map the initial/target set
/// through it directly.
ReachResult reach_explicit(const ReachSpec& spec, const ReachOptions& = {});

}  // namespace mplreach
