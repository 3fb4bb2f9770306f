// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mplreach/pwa.hpp"

#include <stdexcept>

namespace mplreach {

namespace {

struct Enumerator {
  const MaxPlusMatrix& a;
  const Deadline& deadline;
  int n;
  std::vector<std::vector<int>> fin;  // finite column indices per row
  std::vector<int> g;
  std::vector<PwaRegion>& out;
  std::uint64_t nodes = 0;

  void expand(int row, const Dbm& current) {
    if ((++nodes & 0xFF) == 0) deadline.check("pwa_generate");
    if (row == n) {
      std::vector<Rat> offsets;
      offsets.reserve(n);
      for (int i = 0; i < n; ++i) offsets.push_back(a.at(i, g[i]).value());
      out.push_back(PwaRegion{g, current, std::move(offsets)});
      return;
    }
    for (int cand : fin[row]) {
      Dbm next = current;
      bool alive = true;
      const Rat& base = a.at(row, cand).value();
      for (int j : fin[row]) {
        if (j == cand) continue;
        // x_{cand} - x_j >= A(row, j) - A(row, cand), in upper-bound form.
        if (!next.tighten_close(j + 1, cand + 1,
                                Bound::le(base - a.at(row, j).value()))) {
          alive = false;
          break;
        }
      }
      if (alive) {
        g[row] = cand;
        expand(row + 1, next);
      }
    }
  }
};

}  // namespace

PwaSystem pwa_generate(const MaxPlusMatrix& a, const Deadline& deadline) {
  if (!a.is_square())
    throw std::invalid_argument("pwa_generate: matrix must be square");
  if (!is_regular(a))
    throw std::invalid_argument("pwa_generate: matrix must be regular");
  const int n = a.rows();
  std::vector<std::vector<int>> fin(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.at(i, j).is_finite()) fin[i].push_back(j);

  PwaSystem sys{a, {}};
  Enumerator en{a, deadline, n, std::move(fin), std::vector<int>(n),
                sys.regions};
  en.expand(0, Dbm(n));
  return sys;
}

}  // namespace mplreach
