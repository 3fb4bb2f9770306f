// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "mplreach/errors.hpp"
#include "mplreach/rational.hpp"

namespace mplreach {

/// Element of the max-plus semiring: a finite rational or epsilon (-inf).
/// `operator+` is the semiring sum (max), `operator*` the semiring product
/// (ordinary addition). Epsilon is neutral for + and absorbing for *.
///
/// Epsilon is a distinct variant, never an encoded large-negative number.
class MaxPlusScalar {
 public:
  /// Default-constructed scalar is epsilon.
  constexpr MaxPlusScalar() = default;
  MaxPlusScalar(Rat v) : finite_(true), v_(std::move(v)) {}
  MaxPlusScalar(int v) : MaxPlusScalar(Rat(v)) {}

  static MaxPlusScalar epsilon() { return MaxPlusScalar(); }

  bool is_epsilon() const { return !finite_; }
  bool is_finite() const { return finite_; }

  /// Finite value; undefined for epsilon (asserted).
  const Rat& value() const;

  friend MaxPlusScalar operator+(const MaxPlusScalar& a,
                                 const MaxPlusScalar& b);  // max
  friend MaxPlusScalar operator*(const MaxPlusScalar& a,
                                 const MaxPlusScalar& b);  // plus

  friend bool operator==(const MaxPlusScalar& a, const MaxPlusScalar& b);
  /// Total order with epsilon below every finite value.
  friend bool operator<(const MaxPlusScalar& a, const MaxPlusScalar& b);

 private:
  bool finite_ = false;
  Rat v_{};
};

std::string to_string(const MaxPlusScalar& s);

/// Dense matrix over the max-plus semiring. Entries default to epsilon.
/// Indices are 0-based.
class MaxPlusMatrix {
 public:
  MaxPlusMatrix(int rows, int cols);
  /// Max-plus identity: 0 on the diagonal, epsilon elsewhere.
  static MaxPlusMatrix identity(int n);
  static MaxPlusMatrix from_rows(
      std::initializer_list<std::initializer_list<MaxPlusScalar>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const MaxPlusScalar& at(int i, int j) const;
  MaxPlusScalar& at(int i, int j);

  /// Max-plus matrix product; throws std::invalid_argument on a dimension
  /// mismatch.
  friend MaxPlusMatrix operator*(const MaxPlusMatrix& a,
                                 const MaxPlusMatrix& b);

  friend bool operator==(const MaxPlusMatrix& a, const MaxPlusMatrix& b);

 private:
  int rows_, cols_;
  std::vector<MaxPlusScalar> e_;
};

/// k-th max-plus power, k >= 1. k = 0 is rejected: no supported algorithm
/// needs the identity power and it is ambiguous for non-regular matrices.
MaxPlusMatrix pow(const MaxPlusMatrix& a, int k);

/// A ⊗ x for a finite real-valued state vector. Requires a regular matrix so
/// every component of the result is finite.
std::vector<Rat> apply(const MaxPlusMatrix& a, std::span<const Rat> x);

/// Every row has at least one finite entry.
bool is_regular(const MaxPlusMatrix& a);

/// True iff the precedence graph (edge j -> i of weight A(i,j) for each
/// finite entry) is strongly connected.
bool is_irreducible(const MaxPlusMatrix& a);

/// Max-plus eigenvalue of an irreducible matrix: the maximum cycle mean of
/// the precedence graph, computed with Karp's algorithm in exact arithmetic.
/// Throws std::invalid_argument for reducible input.
Rat eigenvalue(const MaxPlusMatrix& a);

/// Spectral data of an irreducible matrix. The defining identity is
///   A^(k0+c) = (lambda * c) ⊗ A^(k0)
/// entrywise, with (k0, c) minimal: no valid pair has a smaller c, and k0 is
/// the least transient for that c.
struct SpectralProfile {
  Rat lambda;
  int k0 = 0;
  int c = 1;
};

/// Finds the profile by iterating memoized powers of A and testing the
/// uniform-shift equality of each new power against all stored earlier ones.
/// Throws CapExceeded if no periodicity appears within `cap` powers.
SpectralProfile transient_cyclicity(const MaxPlusMatrix& a, int cap = 2000);

/// Bound beyond which bounded-reachability verdicts cannot change for an
/// irreducible system: k0 + c - 1.
int completeness_threshold(const SpectralProfile& p);

}  // namespace mplreach
