// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace mplreach {

/// Exact rational arithmetic used throughout the library. No floating
/// point enters any algebraic, set-geometric, or satisfiability path.
using Rat = boost::rational<std::int64_t>;

/// Renders `3`, `-7`, `13/2`. Integral values drop the denominator.
std::string to_string(const Rat& r);

/// Accepts `12`, `-3`, `p/q` (q > 0 after normalization). Returns nullopt on
/// malformed input or division by zero.
std::optional<Rat> parse_rat(std::string_view text);

inline bool is_integral(const Rat& r) { return r.denominator() == 1; }

}  // namespace mplreach
