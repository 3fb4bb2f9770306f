// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mplreach/reach_explicit.hpp"

#include <stdexcept>

namespace mplreach {

namespace {

Dbm canonical_nonempty(const Dbm& d, const char* which) {
  auto c = d.canonical();
  if (!c) throw std::invalid_argument(std::string(which) + " set is empty");
  return *c;
}

bool meets(const DbmUnion& u, const Dbm& set) {
  for (const Dbm& part : u.parts)
    if (intersect(part, set)) return true;
  return false;
}

}  // namespace

DbmUnion forward_step(const PwaSystem& pwa, const DbmUnion& cur) {
  DbmUnion next;
  for (const Dbm& part : cur.parts) {
    for (const PwaRegion& r : pwa.regions) {
      auto cut = intersect(part, r.region);
      if (!cut) continue;
      auto img = image_affine(*cut, r.g, r.offsets);
      next.parts.push_back(std::move(*img));
    }
  }
  return next;
}

DbmUnion backward_step(const PwaSystem& pwa, const DbmUnion& cur) {
  DbmUnion prev;
  for (const Dbm& part : cur.parts) {
    for (const PwaRegion& r : pwa.regions) {
      auto pre = preimage_affine(part, r.g, r.offsets);
      if (!pre) continue;
      auto cut = intersect(*pre, r.region);
      if (cut) prev.parts.push_back(std::move(*cut));
    }
  }
  return prev;
}

std::vector<DbmUnion> forward_reach_sets(const MaxPlusMatrix& A, const Dbm& X,
                                         int N, const ReachOptions& opts) {
  Dbm x0 = canonical_nonempty(X, "initial");
  PwaSystem pwa = pwa_generate(A, opts.deadline);
  std::vector<DbmUnion> sets;
  DbmUnion cur{{x0}};
  for (int k = 1; k <= N; ++k) {
    opts.deadline.check("forward_reach_sets");
    cur = forward_step(pwa, cur);
    if (opts.reduce_unions) cur = reduce_union(std::move(cur));
    sets.push_back(cur);
  }
  return sets;
}

std::vector<DbmUnion> backward_reach_sets(const MaxPlusMatrix& A, const Dbm& Y,
                                          int N, const ReachOptions& opts) {
  Dbm y0 = canonical_nonempty(Y, "target");
  PwaSystem pwa = pwa_generate(A, opts.deadline);
  std::vector<DbmUnion> sets;
  DbmUnion cur{{y0}};
  for (int k = 1; k <= N; ++k) {
    opts.deadline.check("backward_reach_sets");
    cur = backward_step(pwa, cur);
    if (opts.reduce_unions) cur = reduce_union(std::move(cur));
    sets.push_back(cur);
    if (cur.empty()) break;
  }
  return sets;
}

ReachResult reach_explicit(const ReachSpec& spec, const ReachOptions& opts) {
  if (spec.N < 0) throw std::invalid_argument("reach_explicit: N must be >= 0");
  Dbm X = canonical_nonempty(spec.X, "initial");
  Dbm Y = canonical_nonempty(spec.Y, "target");

  ReachResult res;
  if (opts.check_k0 && intersect(X, Y)) {
    res.reachable = true;
    res.step = 0;
    return res;
  }

  const bool forward = spec.mode == Mode::Forward;
  const Dbm& seed = forward ? X : Y;
  const Dbm& goal = forward ? Y : X;

  if (spec.strategy == Strategy::Sequential) {
    PwaSystem pwa = pwa_generate(spec.A, opts.deadline);
    DbmUnion cur{{seed}};
    for (int k = 1; k <= spec.N; ++k) {
      opts.deadline.check("reach_explicit");
      cur = forward ? forward_step(pwa, cur) : backward_step(pwa, cur);
      if (opts.reduce_unions) cur = reduce_union(std::move(cur));
      res.set_sizes.push_back(cur.size());
      if (!forward && cur.empty()) {
        res.emptied = true;
        res.step = k;
        return res;
      }
      if (meets(cur, goal)) {
        res.reachable = true;
        res.step = k;
        return res;
      }
    }
    return res;
  }

  // One-shot: the PWA system of A^⊗k is regenerated at every iteration and
  // applied to the original seed set in a single step.
  MaxPlusMatrix pk = spec.A;
  for (int k = 1; k <= spec.N; ++k) {
    opts.deadline.check("reach_explicit");
    if (k > 1) pk = pk * spec.A;
    PwaSystem pwa = pwa_generate(pk, opts.deadline);
    DbmUnion setk = forward ? forward_step(pwa, DbmUnion{{seed}})
                            : backward_step(pwa, DbmUnion{{seed}});
    if (opts.reduce_unions) setk = reduce_union(std::move(setk));
    res.set_sizes.push_back(setk.size());
    if (!forward && setk.empty()) {
      res.emptied = true;
      res.step = k;
      return res;
    }
    if (meets(setk, goal)) {
      res.reachable = true;
      res.step = k;
      return res;
    }
  }
  return res;
}

}  // namespace mplreach
