// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mplreach/rational.hpp"

namespace mplreach {

/// Upper bound on a variable difference: either unbounded or `<= v` /
/// `< v`. Bounds form a totally ordered monoid: `+` adds values (strictness
/// ORs), and a bound is tighter when its value is smaller, with `<` tighter
/// than `<=` at equal value. Unbounded is the weakest element.
struct Bound {
  bool is_inf = true;
  Rat value{};
  bool strict = false;

  static Bound inf() { return Bound{}; }
  static Bound le(Rat v) { return Bound{false, std::move(v), false}; }
  static Bound lt(Rat v) { return Bound{false, std::move(v), true}; }

  friend Bound operator+(const Bound& a, const Bound& b) {
    if (a.is_inf || b.is_inf) return inf();
    return Bound{false, a.value + b.value, a.strict || b.strict};
  }

  /// "a tighter than b" total order.
  friend bool operator<(const Bound& a, const Bound& b) {
    if (a.is_inf) return false;
    if (b.is_inf) return true;
    if (a.value != b.value) return a.value < b.value;
    return a.strict && !b.strict;
  }
  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.is_inf != b.is_inf) return false;
    return a.is_inf || (a.value == b.value && a.strict == b.strict);
  }
};

std::string to_string(const Bound& b);

/// Relation tokens of the external set format.
enum class Rel { Ge, Gt, Le, Lt, Eq };

/// One difference constraint in user-facing lower/upper form.
struct DbmConstraint {
  int i = 0;  // x_i - x_j, variables 1..n, 0 is the zero variable
  int j = 0;
  Bound bound;  // upper bound on x_i - x_j
};

/// Difference-bound matrix over variables x1..xn plus the zero variable x0.
/// Entry (i, j) stores the upper bound on x_i - x_j; the paper-facing
/// lower-bound form (>=, >) is converted on input by swapping indices and
/// negating, which is lossless.
///
/// Single-variable constraints (those involving x0) are rejected unless the
/// DBM was created with `allow_x0`; by default sets contain no inequality
/// with a single variable.
///
/// A DBM is *canonical* when every entry is the tightest implied by the
/// whole system (Floyd-Warshall closure over bound addition). The canonical
/// form of a non-empty set is unique, so canonical DBMs compare by value.
class Dbm {
 public:
  /// Unconstrained set of dimension n (x1..xn free).
  explicit Dbm(int n, bool allow_x0 = false);

  int dim() const { return n_; }
  bool x0_allowed() const { return allow_x0_; }

  /// Indices 0..n; entry (i, j) bounds x_i - x_j from above.
  const Bound& bound(int i, int j) const { return b_[idx(i, j)]; }

  /// Keeps the tighter of the current entry and `b`. Throws on x0 use
  /// without the flag.
  void tighten(int i, int j, const Bound& b);

  /// x_i - x_j rel c, with Eq expanding to both directions.
  void add_constraint(int i, int j, Rel rel, const Rat& c);

  /// All-pairs tightest closure; nullopt iff the set is empty (a negative
  /// cycle exists).
  std::optional<Dbm> canonical() const;

  /// Closure-preserving tighten: assumes *this is canonical, applies the
  /// constraint and restores closure in O(n^2). Returns false (leaving the
  /// DBM unusable) if the set became empty.
  bool tighten_close(int i, int j, const Bound& b);

  /// Constraint-by-constraint membership on the current (not necessarily
  /// canonical) form. `point` holds x1..xn; x0 is fixed to 0.
  bool contains(std::span<const Rat> point) const;

  /// Finite off-diagonal entries in row-major order.
  std::vector<DbmConstraint> constraints() const;

  bool operator==(const Dbm& o) const {
    return n_ == o.n_ && b_ == o.b_;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * (n_ + 1) + j;
  }
  void check_index(int i, int j) const;

  int n_;
  bool allow_x0_;
  std::vector<Bound> b_;
};

/// Entrywise tightest common refinement, canonicalized. nullopt when the
/// intersection is empty. Dimensions must match.
std::optional<Dbm> intersect(const Dbm& d1, const Dbm& d2);

/// Exact image {x' | exists x in D, x'_i = x_{g[i]} + a[i]} of a canonical
/// non-empty DBM under an affine max-plus dynamic. g holds 0-based source
/// indices. The result is canonical and never empty.
///
/// Because the map only selects and shifts coordinates, the image of a
/// canonical DBM is read off directly: bound(x'_i - x'_j) =
/// D(g_i, g_j) + a_i - a_j, and exactly a_i - a_j when g_i = g_j. Closure of
/// D makes the projection exact and the result closed.
std::optional<Dbm> image_affine(const Dbm& d, std::span<const int> g,
                                std::span<const Rat> a);

/// Exact preimage {x | affine(x) in D}: substitutes x'_i := x_{g[i]} + a[i]
/// into every constraint of D and canonicalizes. nullopt when empty.
std::optional<Dbm> preimage_affine(const Dbm& d, std::span<const int> g,
                                   std::span<const Rat> a);

/// True iff every set described by `inner` (canonical) is contained in
/// `outer`: all of outer's constraints are implied by inner's closure.
bool dbm_subset(const Dbm& inner_canonical, const Dbm& outer);

/// Draws a rational point from a canonical non-empty DBM. Unbounded
/// directions are sampled from a small box around the origin.
std::vector<Rat> sample_point(const Dbm& canonical, std::mt19937_64& rng);

/// Finite union of non-empty equal-dimension DBMs. Order is meaningful
/// (deterministic construction), no subsumption is applied by default.
struct DbmUnion {
  std::vector<Dbm> parts;

  bool empty() const { return parts.empty(); }
  std::size_t size() const { return parts.size(); }
  bool contains(std::span<const Rat> point) const;
};

/// Optional pairwise-subsumption pass: drops parts contained in an earlier
/// or later part. A measurable optimization, off by default in reach-set
/// computation.
DbmUnion reduce_union(DbmUnion u);

}  // namespace mplreach
