// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mplreach/difflogic.hpp"

#include <stdexcept>

namespace mplreach {

std::string to_string(DLVar v) {
  return "x" + std::to_string(v.index) + "@" + std::to_string(v.stage);
}

std::string to_string(const DLAtom& a) {
  const char* rel = a.rel == DLRel::Gt ? ">" : a.rel == DLRel::Ge ? ">=" : "=";
  return to_string(a.lhs) + " - " + to_string(a.rhs) + " " + rel + " " +
         to_string(a.c);
}

struct DLFormula::Node {
  Kind kind;
  DLAtom atom;
  std::vector<DLFormula> kids;
};

DLFormula DLFormula::make_true() {
  static const auto n = std::make_shared<const Node>(Node{Kind::True, {}, {}});
  return DLFormula(n);
}

DLFormula DLFormula::make_false() {
  static const auto n = std::make_shared<const Node>(Node{Kind::False, {}, {}});
  return DLFormula(n);
}

DLFormula DLFormula::make_atom(DLAtom a) {
  if (a.lhs == a.rhs)
    throw std::invalid_argument("difference atom needs two distinct variables");
  return DLFormula(
      std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}}));
}

DLFormula DLFormula::make_and(std::vector<DLFormula> children) {
  if (children.empty()) return make_true();
  if (children.size() == 1) return children.front();
  return DLFormula(
      std::make_shared<const Node>(Node{Kind::And, {}, std::move(children)}));
}

DLFormula DLFormula::make_or(std::vector<DLFormula> children) {
  if (children.empty()) return make_false();
  if (children.size() == 1) return children.front();
  return DLFormula(
      std::make_shared<const Node>(Node{Kind::Or, {}, std::move(children)}));
}

DLFormula::Kind DLFormula::kind() const { return node_->kind; }

const DLAtom& DLFormula::atom() const {
  if (node_->kind != Kind::Atom) throw std::logic_error("not an atom");
  return node_->atom;
}

std::span<const DLFormula> DLFormula::children() const {
  return node_->kids;
}

bool evaluate(const DLFormula& f, const std::function<Rat(DLVar)>& value_of) {
  switch (f.kind()) {
    case DLFormula::Kind::True:
      return true;
    case DLFormula::Kind::False:
      return false;
    case DLFormula::Kind::Atom: {
      const DLAtom& a = f.atom();
      Rat diff = value_of(a.lhs) - value_of(a.rhs);
      switch (a.rel) {
        case DLRel::Gt: return diff > a.c;
        case DLRel::Ge: return diff >= a.c;
        case DLRel::Eq: return diff == a.c;
      }
      return false;
    }
    case DLFormula::Kind::And:
      for (const auto& k : f.children())
        if (!evaluate(k, value_of)) return false;
      return true;
    case DLFormula::Kind::Or:
      for (const auto& k : f.children())
        if (evaluate(k, value_of)) return true;
      return false;
  }
  return false;
}

std::size_t atom_count(const DLFormula& f) {
  switch (f.kind()) {
    case DLFormula::Kind::Atom:
      return 1;
    case DLFormula::Kind::And:
    case DLFormula::Kind::Or: {
      std::size_t n = 0;
      for (const auto& k : f.children()) n += atom_count(k);
      return n;
    }
    default:
      return 0;
  }
}

void collect_vars(const DLFormula& f, std::set<DLVar>& out) {
  switch (f.kind()) {
    case DLFormula::Kind::Atom:
      out.insert(f.atom().lhs);
      out.insert(f.atom().rhs);
      break;
    case DLFormula::Kind::And:
    case DLFormula::Kind::Or:
      for (const auto& k : f.children()) collect_vars(k, out);
      break;
    default:
      break;
  }
}

std::string to_string(const DLFormula& f) {
  switch (f.kind()) {
    case DLFormula::Kind::True:
      return "true";
    case DLFormula::Kind::False:
      return "false";
    case DLFormula::Kind::Atom:
      return "(" + to_string(f.atom()) + ")";
    case DLFormula::Kind::And:
    case DLFormula::Kind::Or: {
      const char* sep = f.kind() == DLFormula::Kind::And ? " & " : " | ";
      std::string s = "(";
      bool first = true;
      for (const auto& k : f.children()) {
        if (!first) s += sep;
        s += to_string(k);
        first = false;
      }
      return s + ")";
    }
  }
  return {};
}

DLFormula encode_step(const MaxPlusMatrix& A, int from_stage, int to_stage) {
  if (!A.is_square())
    throw std::invalid_argument("encode_step: matrix must be square");
  const int n = A.rows();
  std::vector<DLFormula> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<DLFormula> parts;
    std::vector<DLFormula> eqs;
    for (int j = 0; j < n; ++j) {
      if (A.at(i, j).is_epsilon()) continue;
      DLVar to{i + 1, to_stage}, from{j + 1, from_stage};
      parts.push_back(DLFormula::make_atom(
          DLAtom{to, from, DLRel::Ge, A.at(i, j).value()}));
      eqs.push_back(DLFormula::make_atom(
          DLAtom{to, from, DLRel::Eq, A.at(i, j).value()}));
    }
    if (eqs.empty())
      throw std::invalid_argument("encode_step: matrix must be regular");
    parts.push_back(DLFormula::make_or(std::move(eqs)));
    rows.push_back(DLFormula::make_and(std::move(parts)));
  }
  return DLFormula::make_and(std::move(rows));
}

DLFormula dbm_to_formula(const Dbm& d, int stage) {
  std::vector<DLFormula> atoms;
  for (const DbmConstraint& c : d.constraints()) {
    // Upper bound x_i - x_j <= v becomes the lower-bound atom
    // x_j - x_i >= -v (strict bounds become >).
    DLVar lhs = c.j == 0 ? kZeroVar : DLVar{c.j, stage};
    DLVar rhs = c.i == 0 ? kZeroVar : DLVar{c.i, stage};
    atoms.push_back(DLFormula::make_atom(DLAtom{
        lhs, rhs, c.bound.strict ? DLRel::Gt : DLRel::Ge, -c.bound.value}));
  }
  return DLFormula::make_and(std::move(atoms));
}

std::vector<DLFormula> encode_bounded(const ReachSpec& spec) {
  if (spec.N < 1) throw std::invalid_argument("encode_bounded: N must be >= 1");
  auto X = spec.X.canonical();
  auto Y = spec.Y.canonical();
  if (!X || !Y)
    throw std::invalid_argument("encode_bounded: X and Y must be non-empty");

  std::vector<DLFormula> frags;
  const bool forward = spec.mode == Mode::Forward;
  if (spec.strategy == Strategy::Sequential) {
    if (forward) {
      frags.push_back(dbm_to_formula(*X, 0));
      for (int k = 1; k <= spec.N; ++k)
        frags.push_back(encode_step(spec.A, k - 1, k));
      frags.push_back(dbm_to_formula(*Y, spec.N));
    } else {
      frags.push_back(dbm_to_formula(*Y, 0));
      for (int k = 1; k <= spec.N; ++k)
        frags.push_back(encode_step(spec.A, -k, 1 - k));
      frags.push_back(dbm_to_formula(*X, -spec.N));
    }
  } else {
    MaxPlusMatrix an = pow(spec.A, spec.N);
    if (forward) {
      frags.push_back(dbm_to_formula(*X, 0));
      frags.push_back(encode_step(an, 0, 1));
      frags.push_back(dbm_to_formula(*Y, 1));
    } else {
      frags.push_back(dbm_to_formula(*Y, 0));
      frags.push_back(encode_step(an, -1, 0));
      frags.push_back(dbm_to_formula(*X, -1));
    }
  }
  return frags;
}

}  // namespace mplreach
