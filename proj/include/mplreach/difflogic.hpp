// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mplreach/dbm.hpp"
#include "mplreach/maxplus.hpp"
#include "mplreach/reach.hpp"

namespace mplreach {

/// A stage-indexed real variable x<index>@<stage>. `index` is 1..n; index 0
/// with stage 0 is the shared zero variable backing single-variable
/// constraints (present only when a DBM carries the x0 flag). Stages may be
/// negative for backward encodings.
struct DLVar {
  int index = 0;
  int stage = 0;
  auto operator<=>(const DLVar&) const = default;
};

/// The zero variable is global to a formula, never per-stage: absolute
/// bounds keep their meaning across stages, and any model can be shifted so
/// it evaluates to 0.
inline constexpr DLVar kZeroVar{0, 0};

std::string to_string(DLVar v);

/// lhs - rhs ⋈ c with ⋈ in {>, >=, =}. `<`/`<=` inputs are canonicalized by
/// flipping operands. Equality is kept in the AST and expanded into two >=
/// atoms at solver ingestion.
enum class DLRel { Gt, Ge, Eq };

struct DLAtom {
  DLVar lhs;
  DLVar rhs;
  DLRel rel = DLRel::Ge;
  Rat c{};
};

std::string to_string(const DLAtom& a);

/// Negation-free difference-logic formula: True | False | Atom |
/// And(children) | Or(children). Immutable and cheaply shareable.
class DLFormula {
 public:
  enum class Kind { True, False, Atom, And, Or };

  DLFormula() : DLFormula(make_true()) {}

  static DLFormula make_true();
  static DLFormula make_false();
  static DLFormula make_atom(DLAtom a);
  static DLFormula make_and(std::vector<DLFormula> children);
  static DLFormula make_or(std::vector<DLFormula> children);

  Kind kind() const;
  const DLAtom& atom() const;                  // Kind::Atom only
  std::span<const DLFormula> children() const; // And/Or only

 private:
  struct Node;
  explicit DLFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Exact truth value under a total assignment.
bool evaluate(const DLFormula& f, const std::function<Rat(DLVar)>& value_of);

/// Number of atom leaves (equalities count once).
std::size_t atom_count(const DLFormula& f);

/// All variables mentioned anywhere in the formula, in (stage, index) order.
void collect_vars(const DLFormula& f, std::set<DLVar>& out);

/// Human-readable infix dump, deterministic for golden tests.
std::string to_string(const DLFormula& f);

/// Difference-logic image of one MPL step between two stage variable sets:
/// for every row i, a conjunction of x_i@to - x_j@from >= A(i,j) over the
/// finite columns j of row i, and a disjunction of the matching equalities
/// (a lone equality when the row has a single finite entry). Throws for a
/// non-regular matrix.
DLFormula encode_step(const MaxPlusMatrix& A, int from_stage, int to_stage);

/// Conjunction of a canonical non-empty DBM's constraints over one stage.
/// Unconstrained DBMs encode as True. Constraints on x0 use the global zero
/// variable and require the DBM's x0 flag.
DLFormula dbm_to_formula(const Dbm& d, int stage);

/// Ordered fragments of the bounded reachability formula, mirroring the
/// incremental assertion order of the solving loops:
///   forward sequential:  [X@0, step(0,1), ..., step(N-1,N), Y@N]
///   forward one-shot:    [X@0, step of A^⊗N between stages 0 and 1, Y@1]
///   backward sequential: [Y@0, step(-1,0), ..., step(-N,1-N), X@-N]
///   backward one-shot:   [Y@0, step of A^⊗N between stages -1 and 0, X@-1]
std::vector<DLFormula> encode_bounded(const ReachSpec& spec);

}  // namespace mplreach
