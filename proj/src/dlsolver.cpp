// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mplreach/dlsolver.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mplreach {

namespace {

// Weight with an infinitesimal component: r + d*delta for a positive delta
// smaller than every relevant rational gap. Strict bounds enter with d = -1.
struct DeltaVal {
  Rat r{};
  std::int64_t d = 0;

  friend DeltaVal operator+(const DeltaVal& a, const DeltaVal& b) {
    return DeltaVal{a.r + b.r, a.d + b.d};
  }
  friend bool operator<(const DeltaVal& a, const DeltaVal& b) {
    if (a.r != b.r) return a.r < b.r;
    return a.d < b.d;
  }
  friend bool operator<=(const DeltaVal& a, const DeltaVal& b) {
    return !(b < a);
  }
};

// Normalized constraint x_to - x_from <= w over dense variable ids.
struct DiffCon {
  int from = 0;
  int to = 0;
  DeltaVal w;
};

// Incremental difference-constraint graph. Maintains a feasible potential
// (pi[to] <= pi[from] + w for every edge), which doubles as a model. Edge
// insertion repairs the potential by label-correcting relaxation; a negative
// cycle is detected exactly when the repair would lower the potential of the
// inserted edge's tail. All mutations are trailed for O(1) backtracking.
class DiffGraph {
 public:
  explicit DiffGraph(int nvars)
      : pi_(nvars), out_(nvars), pred_(nvars, -2), in_queue_(nvars, 0) {}

  std::size_t mark() const { return trail_.size(); }

  void rollback(std::size_t mark) {
    while (trail_.size() > mark) {
      const Undo& u = trail_.back();
      if (u.node < 0) {
        const Edge& e = edges_.back();
        out_[e.from].pop_back();
        edges_.pop_back();
      } else {
        pi_[u.node] = u.old_pi;
      }
      trail_.pop_back();
    }
  }

  // On success records the edge and returns true. On a negative cycle,
  // returns false with the offending edge tags in *conflict and the graph
  // rolled back to its state at entry.
  bool assert_edge(const DiffCon& c, int tag, std::vector<int>* conflict) {
    std::size_t entry = mark();
    DeltaVal cand = pi_[c.from] + c.w;
    if (cand < pi_[c.to]) {
      pred_[c.to] = -1;  // the new edge
      set_pi(c.to, cand);
      queue_.clear();
      queue_.push_back(c.to);
      in_queue_[c.to] = 1;
      std::size_t head = 0;
      while (head < queue_.size()) {
        int u = queue_[head++];
        in_queue_[u] = 0;
        for (int eid : out_[u]) {
          const Edge& e = edges_[eid];
          DeltaVal nv = pi_[u] + e.w;
          if (nv < pi_[e.to]) {
            if (e.to == c.from) {
              // Cycle: from ->(new) to ~~> u ->(e) from.
              conflict->clear();
              conflict->push_back(tag);
              conflict->push_back(e.tag);
              int v = u;
              int guard = 0;
              while (v != c.to) {
                int pe = pred_[v];
                assert(pe >= 0 && "broken predecessor chain");
                conflict->push_back(edges_[pe].tag);
                v = edges_[pe].from;
                if (++guard > static_cast<int>(pi_.size()) + 1)
                  throw std::logic_error("cycle walk did not terminate");
              }
              rollback(entry);
              return false;
            }
            pred_[e.to] = eid;
            set_pi(e.to, nv);
            if (!in_queue_[e.to]) {
              in_queue_[e.to] = 1;
              queue_.push_back(e.to);
            }
          }
        }
      }
    }
    trail_.push_back(Undo{-1, {}});
    out_[c.from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back(Edge{c.from, c.to, c.w, tag});
    return true;
  }

  const DeltaVal& potential(int v) const { return pi_[v]; }

  struct Edge {
    int from, to;
    DeltaVal w;
    int tag;
  };
  std::span<const Edge> edges() const { return edges_; }

 private:
  struct Undo {
    int node;  // -1: edge added; >= 0: pi of node changed
    DeltaVal old_pi;
  };

  void set_pi(int v, DeltaVal nv) {
    trail_.push_back(Undo{v, pi_[v]});
    pi_[v] = std::move(nv);
  }

  std::vector<DeltaVal> pi_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<Undo> trail_;
  std::vector<int> pred_;
  std::vector<char> in_queue_;
  std::vector<int> queue_;
};

struct Branch {
  std::vector<DiffCon> cons;
};

struct Clause {
  std::vector<Branch> branches;
};

class Solver {
 public:
  Solver(std::span<const DLFormula> stack, const SolverOptions& opts)
      : stack_(stack), opts_(opts) {}

  SatVerdict solve() {
    register_vars();
    graph_.emplace(static_cast<int>(vars_.size()));
    if (!flatten()) return SatVerdict{};  // contains False
    if (!assert_units()) return SatVerdict{};
    if (!strengthen()) return SatVerdict{};
    std::vector<int> conflict;
    if (!clauses_.empty() && !dfs(0, &conflict)) return SatVerdict{};
    return extract_model();
  }

 private:
  void register_vars() {
    std::set<DLVar> seen;
    for (const auto& f : stack_) collect_vars(f, seen);
    int id = 0;
    for (const DLVar& v : seen) {
      vars_.push_back(v);
      ids_[v] = id++;
    }
  }

  void atom_cons(const DLAtom& a, std::vector<DiffCon>& out) const {
    int l = ids_.at(a.lhs), r = ids_.at(a.rhs);
    // lhs - rhs >= c  <=>  rhs - lhs <= -c
    switch (a.rel) {
      case DLRel::Ge:
        out.push_back(DiffCon{l, r, DeltaVal{-a.c, 0}});
        break;
      case DLRel::Gt:
        out.push_back(DiffCon{l, r, DeltaVal{-a.c, -1}});
        break;
      case DLRel::Eq:
        out.push_back(DiffCon{l, r, DeltaVal{-a.c, 0}});
        out.push_back(DiffCon{r, l, DeltaVal{a.c, 0}});
        break;
    }
  }

  // DNF of a negation-free formula as a list of branches. nullopt means the
  // formula is trivially true (a branch with no constraints).
  std::optional<std::vector<Branch>> dnf(const DLFormula& f) {
    switch (f.kind()) {
      case DLFormula::Kind::True:
        return std::nullopt;
      case DLFormula::Kind::False:
        return std::vector<Branch>{};
      case DLFormula::Kind::Atom: {
        Branch b;
        atom_cons(f.atom(), b.cons);
        return std::vector<Branch>{std::move(b)};
      }
      case DLFormula::Kind::Or: {
        std::vector<Branch> all;
        for (const auto& k : f.children()) {
          auto sub = dnf(k);
          if (!sub) return std::nullopt;  // true disjunct
          for (auto& b : *sub) {
            all.push_back(std::move(b));
            if (all.size() > opts_.max_branches_per_clause)
              throw SolverResourceLimit("disjunction expansion too wide");
          }
        }
        return all;
      }
      case DLFormula::Kind::And: {
        std::vector<Branch> acc{Branch{}};
        for (const auto& k : f.children()) {
          auto sub = dnf(k);
          if (!sub) continue;
          if (sub->empty()) return std::vector<Branch>{};
          std::vector<Branch> next;
          for (const auto& a : acc) {
            for (const auto& b : *sub) {
              Branch m = a;
              m.cons.insert(m.cons.end(), b.cons.begin(), b.cons.end());
              next.push_back(std::move(m));
              if (next.size() > opts_.max_branches_per_clause)
                throw SolverResourceLimit("conjunction expansion too wide");
            }
          }
          acc = std::move(next);
        }
        return acc;
      }
    }
    return std::nullopt;
  }

  // Conjunctive walk of the stack into unit constraints and disjunctive
  // clauses. Returns false on a False node.
  bool flatten_conj(const DLFormula& f) {
    switch (f.kind()) {
      case DLFormula::Kind::True:
        return true;
      case DLFormula::Kind::False:
        return false;
      case DLFormula::Kind::Atom:
        atom_cons(f.atom(), units_);
        return true;
      case DLFormula::Kind::And:
        for (const auto& k : f.children())
          if (!flatten_conj(k)) return false;
        return true;
      case DLFormula::Kind::Or: {
        auto branches = dnf(f);
        if (!branches) return true;  // trivially satisfied
        if (branches->empty()) return false;
        if (branches->size() == 1) {
          units_.insert(units_.end(), branches->front().cons.begin(),
                        branches->front().cons.end());
          return true;
        }
        clauses_.push_back(Clause{std::move(*branches)});
        return true;
      }
    }
    return true;
  }

  bool flatten() {
    for (const auto& f : stack_)
      if (!flatten_conj(f)) return false;
    return true;
  }

  bool assert_units() {
    std::vector<int> conflict;
    for (const DiffCon& c : units_)
      if (!graph_->assert_edge(c, kUnitTag, &conflict)) return false;
    return true;
  }

  // Pre-search filtering: drop branches inconsistent with the asserted
  // units, promote lone survivors to units, repeat to fixpoint. Conflicts
  // here involve only units, so removals need no bookkeeping.
  bool strengthen() {
    bool changed = true;
    std::vector<int> conflict;
    while (changed) {
      changed = false;
      for (std::size_t ci = 0; ci < clauses_.size();) {
        Clause& cl = clauses_[ci];
        for (std::size_t bi = 0; bi < cl.branches.size();) {
          std::size_t m = graph_->mark();
          bool ok = true;
          for (const DiffCon& c : cl.branches[bi]) {
            if (!graph_->assert_edge(c, kUnitTag, &conflict)) {
              ok = false;
              break;
            }
          }
          graph_->rollback(m);
          if (!ok) {
            cl.branches.erase(cl.branches.begin() + bi);
            changed = true;
          } else {
            ++bi;
          }
        }
        if (cl.branches.empty()) return false;
        if (cl.branches.size() == 1) {
          for (const DiffCon& c : cl.branches.front().cons)
            if (!graph_->assert_edge(c, kUnitTag, &conflict)) return false;
          clauses_.erase(clauses_.begin() + ci);
          changed = true;
        } else {
          ++ci;
        }
      }
    }
    return true;
  }

  // Conflict-directed backjumping over clause branches. Decision level d
  // chooses a branch of clauses_[d]; theory conflicts name the levels whose
  // choices participate in the negative cycle. On true, the graph holds a
  // satisfying potential. On false, *conflict lists responsible levels < d.
  bool dfs(std::size_t d, std::vector<int>* conflict) {
    if (d == clauses_.size()) return true;
    bump_budget();
    std::vector<int> merged;
    std::vector<int> local;
    for (std::size_t b = 0; b < clauses_[d].branches.size(); ++b) {
      std::size_t m = graph_->mark();
      bool ok = true;
      local.clear();
      for (const DiffCon& c : clauses_[d].branches[b]) {
        if (!graph_->assert_edge(c, static_cast<int>(d), &local)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::vector<int> sub;
        if (dfs(d + 1, &sub)) return true;
        if (std::find(sub.begin(), sub.end(), static_cast<int>(d)) ==
            sub.end()) {
          // This level is irrelevant to the failure below: jump through it.
          graph_->rollback(m);
          *conflict = std::move(sub);
          return false;
        }
        merge_levels(merged, sub, d);
      } else {
        merge_levels(merged, local, d);
      }
      graph_->rollback(m);
    }
    *conflict = std::move(merged);
    return false;
  }

  void bump_budget() {
    if (++nodes_ > opts_.max_search_nodes)
      throw SolverResourceLimit("search node budget exhausted");
    if ((nodes_ & 0x3FF) == 0) opts_.deadline.check("difference-logic solver");
  }

  static void merge_levels(std::vector<int>& into, const std::vector<int>& src,
                           std::size_t current) {
    for (int t : src) {
      if (t == kUnitTag || t == static_cast<int>(current)) continue;
      if (std::find(into.begin(), into.end(), t) == into.end())
        into.push_back(t);
    }
  }

  SatVerdict extract_model() {
    // Potentials satisfy every asserted constraint over (rational, delta)
    // pairs; realize delta as a concrete rational smaller than every
    // remaining slack, then shift so the zero variable (if any) sits at 0.
    Rat delta(1);
    for (const auto& e : graph_->edges()) {
      const DeltaVal& pf = graph_->potential(e.from);
      const DeltaVal& pt = graph_->potential(e.to);
      Rat dr = pt.r - pf.r;
      std::int64_t dd = pt.d - pf.d;
      std::int64_t g = dd - e.w.d;
      if (g > 0) {
        Rat h = (e.w.r - dr) / Rat(g);
        if (h < delta) delta = h;
      }
    }
    delta /= 2;

    SatVerdict v;
    v.sat = true;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const DeltaVal& p = graph_->potential(static_cast<int>(i));
      v.model[vars_[i]] = p.r + Rat(p.d) * delta;
    }
    auto zit = v.model.find(kZeroVar);
    if (zit != v.model.end() && zit->second != Rat(0)) {
      Rat shift = zit->second;
      for (auto& [var, val] : v.model) val -= shift;
    }
    return v;
  }

  static constexpr int kUnitTag = -1;

  std::span<const DLFormula> stack_;
  SolverOptions opts_;
  std::vector<DLVar> vars_;
  std::map<DLVar, int> ids_;
  std::optional<DiffGraph> graph_;
  std::vector<DiffCon> units_;
  std::vector<Clause> clauses_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SolverContext::SolverContext(SolverOptions opts) : opts_(opts) {}

void SolverContext::push(DLFormula f) { stack_.push_back(std::move(f)); }

void SolverContext::pop() {
  if (stack_.empty()) throw std::logic_error("pop on empty assertion stack");
  stack_.pop_back();
}

SatVerdict SolverContext::check() const {
  Solver s(stack_, opts_);
  SatVerdict v = s.solve();
  if (v.sat) {
    auto value_of = [&](DLVar var) {
      auto it = v.model.find(var);
      return it == v.model.end() ? Rat(0) : it->second;
    };
    for (const auto& f : stack_) {
      if (!evaluate(f, value_of))
        throw std::logic_error("internal solver produced an invalid model");
    }
  }
  return v;
}

}  // namespace mplreach
