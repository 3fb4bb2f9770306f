// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "mplreach/dbm.hpp"
#include "mplreach/maxplus.hpp"

namespace mplreach {

/// Matrix text format: first line `n`, then n lines of n whitespace-separated
/// tokens. `-inf` or `.` denotes epsilon; any other token is an integer or a
/// rational `p/q`. Throws ParseError with a line reference on bad input.
MaxPlusMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const MaxPlusMatrix& a);

/// Set text format: one constraint per line, `x<i> - x<j> <op> c` with op in
/// {>=, >, <=, <, =} (`=` is sugar for the two non-strict directions).
/// Variables are 1-indexed; `x0` is permitted only with `allow_x0`. Blank
/// lines and `#` comments are skipped. The dimension comes from the caller.
Dbm read_set(std::istream& in, int n, bool allow_x0 = false);
void write_set(std::ostream& out, const Dbm& d);

MaxPlusMatrix read_matrix_file(const std::string& path);
Dbm read_set_file(const std::string& path, int n, bool allow_x0 = false);

}  // namespace mplreach
