// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mplreach/dlsolver.hpp"

namespace mplreach {

namespace {

bool all_constants_integral(std::span<const DLFormula> stack) {
  bool ok = true;
  auto walk = [&](const DLFormula& f, auto&& self) -> void {
    switch (f.kind()) {
      case DLFormula::Kind::Atom:
        if (!is_integral(f.atom().c)) ok = false;
        break;
      case DLFormula::Kind::And:
      case DLFormula::Kind::Or:
        for (const auto& k : f.children()) self(k, self);
        break;
      default:
        break;
    }
  };
  for (const auto& f : stack) walk(f, walk);
  return ok;
}

std::string smt_const(const Rat& r, bool integer_logic) {
  std::string num = std::to_string(r.numerator() < 0 ? -r.numerator()
                                                     : r.numerator());
  std::string body;
  if (r.denominator() == 1) {
    body = integer_logic ? num : num + ".0";
  } else {
    body = "(/ " + num + ".0 " + std::to_string(r.denominator()) + ".0)";
    if (integer_logic)
      throw std::logic_error("rational constant in integer logic");
  }
  if (r.numerator() < 0) return "(- " + body + ")";
  return body;
}

void emit_formula(std::ostream& os, const DLFormula& f, bool integer_logic) {
  switch (f.kind()) {
    case DLFormula::Kind::True:
      os << "true";
      return;
    case DLFormula::Kind::False:
      os << "false";
      return;
    case DLFormula::Kind::Atom: {
      const DLAtom& a = f.atom();
      const char* rel =
          a.rel == DLRel::Gt ? ">" : a.rel == DLRel::Ge ? ">=" : "=";
      os << "(" << rel << " (- " << to_string(a.lhs) << " " << to_string(a.rhs)
         << ") " << smt_const(a.c, integer_logic) << ")";
      return;
    }
    case DLFormula::Kind::And:
    case DLFormula::Kind::Or: {
      os << (f.kind() == DLFormula::Kind::And ? "(and" : "(or");
      for (const auto& k : f.children()) {
        os << " ";
        emit_formula(os, k, integer_logic);
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string to_smtlib(std::span<const DLFormula> stack,
                      const SmtEmitOptions& opts) {
  bool integer_logic = opts.prefer_integer_logic && all_constants_integral(stack);
  std::set<DLVar> vars;
  for (const auto& f : stack) collect_vars(f, vars);

  std::ostringstream os;
  os << "(set-option :produce-models true)\n";
  os << "(set-logic " << (integer_logic ? "QF_IDL" : "QF_RDL") << ")\n";
  const char* sort = integer_logic ? "Int" : "Real";
  for (const DLVar& v : vars)
    os << "(declare-fun " << to_string(v) << " () " << sort << ")\n";
  for (const auto& f : stack) {
    os << "(assert ";
    emit_formula(os, f, integer_logic);
    os << ")\n";
  }
  os << "(check-sat)\n(get-model)\n(exit)\n";
  return os.str();
}

namespace {

struct ProcessResult {
  std::string output;
  int status = -1;
};

// Feeds `input` to `cmd` on stdin via a temp file and captures stdout.
ProcessResult run_process(const std::string& cmd, const std::string& input) {
  namespace fs = std::filesystem;
  static std::mt19937_64 rng(std::random_device{}());
  fs::path tmp = fs::temp_directory_path() /
                 ("mplreach-" + std::to_string(rng()) + ".smt2");
  {
    std::ofstream out(tmp);
    if (!out)
      throw ExternalSolverError(ExternalSolverError::Kind::Process,
                                "cannot create temp file " + tmp.string());
    out << input;
  }
  std::string full = cmd + " < " + tmp.string() + " 2>/dev/null";
  ProcessResult res;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) {
    fs::remove(tmp);
    throw ExternalSolverError(ExternalSolverError::Kind::Process,
                              "failed to spawn: " + cmd);
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    res.output.append(buf, got);
  res.status = pclose(pipe);
  fs::remove(tmp);
  return res;
}

// Minimal s-expression reader for solver model output.
struct Sexp {
  std::string atom;           // non-empty for leaves
  std::vector<Sexp> children; // used when atom is empty
  bool is_atom() const { return !atom.empty(); }
};

struct SexpParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  std::optional<Sexp> next() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    if (text[pos] == '(') {
      ++pos;
      Sexp node;
      while (true) {
        skip_ws();
        if (pos >= text.size()) return std::nullopt;  // unbalanced
        if (text[pos] == ')') {
          ++pos;
          return node;
        }
        auto kid = next();
        if (!kid) return std::nullopt;
        node.children.push_back(std::move(*kid));
      }
    }
    if (text[pos] == ')') return std::nullopt;
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    Sexp leaf;
    leaf.atom = std::string(text.substr(start, pos - start));
    return leaf;
  }
};

std::optional<Rat> parse_numeral(const std::string& tok) {
  auto dot = tok.find('.');
  if (dot == std::string::npos) return parse_rat(tok);
  // Decimal: scale the fractional part.
  std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
  auto base = parse_rat(digits);
  if (!base) return std::nullopt;
  std::int64_t scale = 1;
  for (std::size_t i = dot + 1; i < tok.size(); ++i) scale *= 10;
  return *base / Rat(scale);
}

std::optional<Rat> eval_value(const Sexp& s) {
  if (s.is_atom()) return parse_numeral(s.atom);
  if (s.children.empty()) return std::nullopt;
  const Sexp& head = s.children.front();
  if (!head.is_atom()) return std::nullopt;
  if (head.atom == "-" && s.children.size() == 2) {
    auto v = eval_value(s.children[1]);
    if (!v) return std::nullopt;
    return -*v;
  }
  if (head.atom == "-" && s.children.size() == 3) {
    auto a = eval_value(s.children[1]), b = eval_value(s.children[2]);
    if (!a || !b) return std::nullopt;
    return *a - *b;
  }
  if (head.atom == "/" && s.children.size() == 3) {
    auto a = eval_value(s.children[1]), b = eval_value(s.children[2]);
    if (!a || !b || *b == Rat(0)) return std::nullopt;
    return *a / *b;
  }
  return std::nullopt;
}

std::optional<DLVar> parse_var_name(const std::string& name) {
  if (name.size() < 4 || name[0] != 'x') return std::nullopt;
  auto at = name.find('@');
  if (at == std::string::npos) return std::nullopt;
  auto idx = parse_rat(name.substr(1, at - 1));
  auto stage = parse_rat(name.substr(at + 1));
  if (!idx || !stage || !is_integral(*idx) || !is_integral(*stage))
    return std::nullopt;
  return DLVar{static_cast<int>(idx->numerator()),
               static_cast<int>(stage->numerator())};
}

void collect_defines(const Sexp& s, std::map<DLVar, Rat>& model) {
  if (s.is_atom()) return;
  if (s.children.size() >= 5 && s.children[0].is_atom() &&
      s.children[0].atom == "define-fun" && s.children[1].is_atom()) {
    auto var = parse_var_name(s.children[1].atom);
    auto val = eval_value(s.children.back());
    if (var && val) model[*var] = *val;
    return;
  }
  for (const Sexp& k : s.children) collect_defines(k, model);
}

}  // namespace

SatVerdict check_external(std::span<const DLFormula> stack,
                          const std::string& solver_cmd,
                          const SmtEmitOptions& opts) {
  std::string script = to_smtlib(stack, opts);
  ProcessResult proc = run_process(solver_cmd, script);

  SexpParser parser{proc.output};
  std::optional<std::string> verdict;
  std::vector<Sexp> rest;
  while (!parser.done()) {
    auto node = parser.next();
    if (!node) break;
    if (!verdict && node->is_atom() &&
        (node->atom == "sat" || node->atom == "unsat" ||
         node->atom == "unknown")) {
      verdict = node->atom;
    } else if (verdict) {
      rest.push_back(std::move(*node));
    }
  }
  if (!verdict) {
    if (proc.status != 0)
      throw ExternalSolverError(ExternalSolverError::Kind::Process,
                                "solver process failed: " + solver_cmd);
    throw ExternalSolverError(ExternalSolverError::Kind::Parse,
                              "no verdict in solver output");
  }
  if (*verdict == "unknown")
    throw ExternalSolverError(ExternalSolverError::Kind::Unknown,
                              "solver answered unknown");
  if (*verdict == "unsat") return SatVerdict{};

  SatVerdict v;
  v.sat = true;
  for (const Sexp& node : rest) collect_defines(node, v.model);
  auto value_of = [&](DLVar var) {
    auto it = v.model.find(var);
    return it == v.model.end() ? Rat(0) : it->second;
  };
  for (const auto& f : stack) {
    if (!evaluate(f, value_of))
      throw ExternalSolverError(ExternalSolverError::Kind::Parse,
                                "external model fails internal replay");
  }
  return v;
}

std::optional<std::string> find_external_solver() {
  static const char* candidates[] = {"z3 -in", "cvc5 --quiet", "cvc4 --quiet",
                                     "mathsat", "yices-smt2"};
  const std::string probe =
      "(set-option :produce-models true)\n(set-logic QF_RDL)\n"
      "(declare-fun a () Real)\n(declare-fun b () Real)\n"
      "(assert (>= (- a b) 1.0))\n(check-sat)\n(exit)\n";
  for (const char* cmd : candidates) {
    try {
      ProcessResult res = run_process(cmd, probe);
      if (res.output.find("sat") == 0) return std::string(cmd);
    } catch (const ExternalSolverError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace mplreach
