// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mplreach/maxplus.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <optional>
#include <stdexcept>

namespace mplreach {

std::string to_string(const Rat& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) {
    s += '/';
    s += std::to_string(r.denominator());
  }
  return s;
}

std::optional<Rat> parse_rat(std::string_view text) {
  auto parse_int = [](std::string_view t) -> std::optional<std::int64_t> {
    std::int64_t v = 0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rat(*n);
  }
  auto num = parse_int(text.substr(0, slash));
  auto den = parse_int(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  return Rat(*num, *den);
}

const Rat& MaxPlusScalar::value() const {
  assert(finite_ && "value() on epsilon");
  return v_;
}

MaxPlusScalar operator+(const MaxPlusScalar& a, const MaxPlusScalar& b) {
  if (a.is_epsilon()) return b;
  if (b.is_epsilon()) return a;
  return a.v_ < b.v_ ? b : a;
}

MaxPlusScalar operator*(const MaxPlusScalar& a, const MaxPlusScalar& b) {
  if (a.is_epsilon() || b.is_epsilon()) return MaxPlusScalar::epsilon();
  return MaxPlusScalar(a.v_ + b.v_);
}

bool operator==(const MaxPlusScalar& a, const MaxPlusScalar& b) {
  if (a.finite_ != b.finite_) return false;
  return !a.finite_ || a.v_ == b.v_;
}

bool operator<(const MaxPlusScalar& a, const MaxPlusScalar& b) {
  if (a.is_epsilon()) return b.is_finite();
  if (b.is_epsilon()) return false;
  return a.v_ < b.v_;
}

std::string to_string(const MaxPlusScalar& s) {
  return s.is_epsilon() ? "-inf" : to_string(s.value());
}

MaxPlusMatrix::MaxPlusMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("matrix dimensions must be positive");
}

MaxPlusMatrix MaxPlusMatrix::identity(int n) {
  MaxPlusMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(0);
  return m;
}

MaxPlusMatrix MaxPlusMatrix::from_rows(
    std::initializer_list<std::initializer_list<MaxPlusScalar>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  MaxPlusMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c)
      throw std::invalid_argument("ragged row in matrix literal");
    int j = 0;
    for (const auto& v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

const MaxPlusScalar& MaxPlusMatrix::at(int i, int j) const {
  assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
  return e_[static_cast<std::size_t>(i) * cols_ + j];
}

MaxPlusScalar& MaxPlusMatrix::at(int i, int j) {
  assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
  return e_[static_cast<std::size_t>(i) * cols_ + j];
}

MaxPlusMatrix operator*(const MaxPlusMatrix& a, const MaxPlusMatrix& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("max-plus product: dimension mismatch");
  MaxPlusMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const MaxPlusScalar& aik = a.at(i, k);
      if (aik.is_epsilon()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
      }
    }
  }
  return c;
}

bool operator==(const MaxPlusMatrix& a, const MaxPlusMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

MaxPlusMatrix pow(const MaxPlusMatrix& a, int k) {
  if (!a.is_square()) throw std::invalid_argument("pow: matrix must be square");
  if (k < 1) throw std::invalid_argument("pow: exponent must be >= 1");
  MaxPlusMatrix r = a;
  for (int i = 1; i < k; ++i) r = r * a;
  return r;
}

std::vector<Rat> apply(const MaxPlusMatrix& a, std::span<const Rat> x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw std::invalid_argument("apply: dimension mismatch");
  std::vector<Rat> y;
  y.reserve(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    bool any = false;
    Rat best;
    for (int j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_epsilon()) continue;
      Rat v = a.at(i, j).value() + x[j];
      if (!any || best < v) best = v, any = true;
    }
    if (!any) throw std::invalid_argument("apply: row with no finite entry");
    y.push_back(best);
  }
  return y;
}

bool is_regular(const MaxPlusMatrix& a) {
  for (int i = 0; i < a.rows(); ++i) {
    bool any = false;
    for (int j = 0; j < a.cols() && !any; ++j) any = a.at(i, j).is_finite();
    if (!any) return false;
  }
  return true;
}

namespace {

// Precedence graph adjacency: out[j] lists i for each finite A(i,j)
// (edge j -> i).
std::vector<std::vector<int>> precedence_out(const MaxPlusMatrix& a) {
  std::vector<std::vector<int>> out(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j).is_finite()) out[j].push_back(i);
  return out;
}

bool reaches_all(const std::vector<std::vector<int>>& out, int n) {
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : out[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace

bool is_irreducible(const MaxPlusMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("is_irreducible: square only");
  int n = a.rows();
  if (n == 1) return true;
  auto out = precedence_out(a);
  std::vector<std::vector<int>> in(n);
  for (int j = 0; j < n; ++j)
    for (int i : out[j]) in[i].push_back(j);
  return reaches_all(out, n) && reaches_all(in, n);
}

Rat eigenvalue(const MaxPlusMatrix& a) {
  if (!a.is_square() || !is_irreducible(a))
    throw std::invalid_argument("eigenvalue: irreducible square matrix required");
  int n = a.rows();
  // Karp: D_k = A ⊗ D_{k-1} starting from a single finite source entry;
  // lambda = max_v min_k (D_n(v) - D_k(v)) / (n - k) over finite entries.
  std::vector<std::vector<MaxPlusScalar>> d(n + 1,
                                            std::vector<MaxPlusScalar>(n));
  d[0][0] = Rat(0);
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) {
      MaxPlusScalar best;  // epsilon
      for (int j = 0; j < n; ++j) {
        best = best + a.at(i, j) * d[k - 1][j];
      }
      d[k][i] = best;
    }
  }
  bool have = false;
  Rat lambda;
  for (int v = 0; v < n; ++v) {
    if (d[n][v].is_epsilon()) continue;
    bool have_min = false;
    Rat m;
    for (int k = 0; k < n; ++k) {
      if (d[k][v].is_epsilon()) continue;
      Rat cand = (d[n][v].value() - d[k][v].value()) / Rat(n - k);
      if (!have_min || cand < m) m = cand, have_min = true;
    }
    if (!have_min) continue;
    if (!have || lambda < m) lambda = m, have = true;
  }
  if (!have) throw std::invalid_argument("eigenvalue: no finite circuit");
  return lambda;
}

namespace {

// If p == shift ⊗ q entrywise (same epsilon pattern, uniform finite shift),
// returns the shift.
std::optional<Rat> uniform_shift(const MaxPlusMatrix& p,
                                 const MaxPlusMatrix& q) {
  bool have = false;
  Rat shift;
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      const auto& x = p.at(i, j);
      const auto& y = q.at(i, j);
      if (x.is_epsilon() != y.is_epsilon()) return std::nullopt;
      if (x.is_epsilon()) continue;
      Rat d = x.value() - y.value();
      if (!have) shift = d, have = true;
      else if (d != shift) return std::nullopt;
    }
  }
  if (!have) return std::nullopt;  // all-epsilon matrices carry no shift
  return shift;
}

}  // namespace

SpectralProfile transient_cyclicity(const MaxPlusMatrix& a, int cap) {
  if (!a.is_square() || !is_irreducible(a))
    throw std::invalid_argument(
        "transient_cyclicity: irreducible square matrix required");
  if (cap < 2) throw std::invalid_argument("transient_cyclicity: cap too small");

  std::vector<MaxPlusMatrix> powers;  // powers[k-1] = A^k
  powers.push_back(a);
  for (int p = 2; p <= cap; ++p) {
    powers.push_back(powers.back() * a);
    // Largest q first: the first matching power pair is (k0, c) with both
    // components minimal (a match at smaller q or with larger c cannot
    // appear at an earlier p; see the periodicity identity).
    for (int q = p - 1; q >= 1; --q) {
      auto shift = uniform_shift(powers[p - 1], powers[q - 1]);
      if (shift) {
        int c = p - q;
        return SpectralProfile{*shift / Rat(c), q, c};
      }
    }
  }
  throw CapExceeded("transient_cyclicity: no periodicity within cap=" +
                    std::to_string(cap));
}

int completeness_threshold(const SpectralProfile& p) { return p.k0 + p.c - 1; }

}  // namespace mplreach
