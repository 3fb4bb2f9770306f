// Copyright (c) mplreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "mplreach/dbm.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "mplreach/maxplus.hpp"  // to_string(Rat)

namespace mplreach {

std::string to_string(const Bound& b) {
  if (b.is_inf) return "inf";
  return std::string(b.strict ? "< " : "<= ") + to_string(b.value);
}

Dbm::Dbm(int n, bool allow_x0)
    : n_(n), allow_x0_(allow_x0),
      b_(static_cast<std::size_t>(n + 1) * (n + 1)) {
  if (n <= 0) throw std::invalid_argument("Dbm: dimension must be positive");
  for (int i = 0; i <= n_; ++i) b_[idx(i, i)] = Bound::le(Rat(0));
}

void Dbm::check_index(int i, int j) const {
  if (i < 0 || j < 0 || i > n_ || j > n_ || i == j)
    throw std::invalid_argument("Dbm: bad constraint indices");
  if ((i == 0 || j == 0) && !allow_x0_)
    throw std::invalid_argument(
        "Dbm: single-variable constraint without the x0 flag");
}

void Dbm::tighten(int i, int j, const Bound& b) {
  check_index(i, j);
  Bound& cur = b_[idx(i, j)];
  if (b < cur) cur = b;
}

void Dbm::add_constraint(int i, int j, Rel rel, const Rat& c) {
  switch (rel) {
    case Rel::Le: tighten(i, j, Bound::le(c)); break;
    case Rel::Lt: tighten(i, j, Bound::lt(c)); break;
    case Rel::Ge: tighten(j, i, Bound::le(-c)); break;
    case Rel::Gt: tighten(j, i, Bound::lt(-c)); break;
    case Rel::Eq:
      tighten(i, j, Bound::le(c));
      tighten(j, i, Bound::le(-c));
      break;
  }
}

std::optional<Dbm> Dbm::canonical() const {
  Dbm d = *this;
  const int m = n_ + 1;
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      const Bound& ik = d.b_[d.idx(i, k)];
      if (ik.is_inf) continue;
      for (int j = 0; j < m; ++j) {
        Bound via = ik + d.b_[d.idx(k, j)];
        Bound& cur = d.b_[d.idx(i, j)];
        if (via < cur) cur = via;
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    if (d.b_[d.idx(i, i)] < Bound::le(Rat(0))) return std::nullopt;
  }
  return d;
}

bool Dbm::tighten_close(int i, int j, const Bound& nb) {
  check_index(i, j);
  if (!(nb < b_[idx(i, j)])) return true;  // no-op, still closed
  b_[idx(i, j)] = nb;
  const int m = n_ + 1;
  // One-constraint incremental closure: all shortened paths go through the
  // (i, j) entry.
  for (int p = 0; p <= n_; ++p) {
    const Bound& pi = b_[idx(p, i)];
    if (pi.is_inf) continue;
    Bound pj = pi + nb;
    for (int q = 0; q < m; ++q) {
      Bound via = pj + b_[idx(j, q)];
      Bound& cur = b_[idx(p, q)];
      if (via < cur) cur = via;
    }
  }
  for (int p = 0; p < m; ++p)
    if (b_[idx(p, p)] < Bound::le(Rat(0))) return false;
  return true;
}

bool Dbm::contains(std::span<const Rat> point) const {
  if (static_cast<int>(point.size()) != n_)
    throw std::invalid_argument("contains: point dimension mismatch");
  auto val = [&](int i) { return i == 0 ? Rat(0) : point[i - 1]; };
  for (int i = 0; i <= n_; ++i) {
    for (int j = 0; j <= n_; ++j) {
      if (i == j) continue;
      const Bound& b = b_[idx(i, j)];
      if (b.is_inf) continue;
      Rat diff = val(i) - val(j);
      if (b.strict ? !(diff < b.value) : !(diff <= b.value)) return false;
    }
  }
  return true;
}

std::vector<DbmConstraint> Dbm::constraints() const {
  std::vector<DbmConstraint> out;
  for (int i = 0; i <= n_; ++i)
    for (int j = 0; j <= n_; ++j)
      if (i != j && !b_[idx(i, j)].is_inf)
        out.push_back({i, j, b_[idx(i, j)]});
  return out;
}

std::optional<Dbm> intersect(const Dbm& d1, const Dbm& d2) {
  if (d1.dim() != d2.dim())
    throw std::invalid_argument("intersect: dimension mismatch");
  Dbm r(d1.dim(), d1.x0_allowed() || d2.x0_allowed());
  for (int i = 0; i <= d1.dim(); ++i) {
    for (int j = 0; j <= d1.dim(); ++j) {
      if (i == j) continue;
      const Bound& a = d1.bound(i, j);
      const Bound& b = d2.bound(i, j);
      const Bound& tight = a < b ? a : b;
      if (!tight.is_inf) r.tighten(i, j, tight);
    }
  }
  return r.canonical();
}

std::optional<Dbm> image_affine(const Dbm& d, std::span<const int> g,
                                std::span<const Rat> a) {
  const int n = d.dim();
  if (static_cast<int>(g.size()) != n || static_cast<int>(a.size()) != n)
    throw std::invalid_argument("image_affine: dimension mismatch");
  Dbm r(n, d.x0_allowed());
  auto src = [&](int i) { return i == 0 ? 0 : g[i - 1] + 1; };
  auto off = [&](int i) { return i == 0 ? Rat(0) : a[i - 1]; };
  for (int i = 0; i <= n; ++i) {
    if (i == 0 && !d.x0_allowed()) continue;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      if (j == 0 && !d.x0_allowed()) continue;
      // x'_i - x'_j = x_{g_i} - x_{g_j} + a_i - a_j
      Bound b = src(i) == src(j) ? Bound::le(Rat(0)) : d.bound(src(i), src(j));
      if (b.is_inf) continue;
      b.value += off(i) - off(j);
      r.tighten(i, j, b);
    }
  }
  // Closure of d transfers: triangle inequalities hold entrywise, so r is
  // already canonical and non-empty.
  return r;
}

std::optional<Dbm> preimage_affine(const Dbm& d, std::span<const int> g,
                                   std::span<const Rat> a) {
  const int n = d.dim();
  if (static_cast<int>(g.size()) != n || static_cast<int>(a.size()) != n)
    throw std::invalid_argument("preimage_affine: dimension mismatch");
  Dbm r(n, d.x0_allowed());
  auto src = [&](int i) { return i == 0 ? 0 : g[i - 1] + 1; };
  auto off = [&](int i) { return i == 0 ? Rat(0) : a[i - 1]; };
  for (const DbmConstraint& c : d.constraints()) {
    // x'_i - x'_j <= v becomes x_{g_i} - x_{g_j} <= v - a_i + a_j.
    Bound b = c.bound;
    b.value += off(c.j) - off(c.i);
    int si = src(c.i), sj = src(c.j);
    if (si == sj) {
      // Degenerate constraint 0 <= v': either trivially true or empty.
      bool ok = b.strict ? Rat(0) < b.value : Rat(0) <= b.value;
      if (!ok) return std::nullopt;
      continue;
    }
    r.tighten(si, sj, b);
  }
  return r.canonical();
}

bool dbm_subset(const Dbm& inner, const Dbm& outer) {
  if (inner.dim() != outer.dim())
    throw std::invalid_argument("dbm_subset: dimension mismatch");
  for (int i = 0; i <= inner.dim(); ++i) {
    for (int j = 0; j <= inner.dim(); ++j) {
      if (i == j) continue;
      const Bound& o = outer.bound(i, j);
      if (o.is_inf) continue;
      const Bound& in = inner.bound(i, j);
      if (o < in) return false;
    }
  }
  return true;
}

std::vector<Rat> sample_point(const Dbm& d, std::mt19937_64& rng) {
  const int n = d.dim();
  std::vector<Rat> x(n);
  auto val = [&](int i) { return i == 0 ? Rat(0) : x[i - 1]; };
  auto rand_small = [&](int lo, int hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    std::int64_t num = lo + static_cast<std::int64_t>(rng() % span);
    std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 4);
    return Rat(num, den);
  };
  for (int i = 1; i <= n; ++i) {
    // Interval for x_i from x0 and already-assigned variables; closure of d
    // guarantees the partial assignment always extends.
    Bound ub = Bound::inf();   // x_i - ? <= ...
    Bound lb = Bound::inf();   // ? - x_i <= ...  (negated lower bound)
    Rat ub_base, lb_base;
    for (int j = 0; j < i; ++j) {
      const Bound& u = d.bound(i, j);
      if (!u.is_inf) {
        Bound cand{false, u.value + val(j), u.strict};
        if (ub.is_inf || cand.value < ub_base ||
            (cand.value == ub_base && cand.strict && !ub.strict)) {
          ub = cand;
          ub_base = cand.value;
        }
      }
      const Bound& l = d.bound(j, i);
      if (!l.is_inf) {
        Bound cand{false, val(j) - l.value, l.strict};
        if (lb.is_inf || lb_base < cand.value ||
            (cand.value == lb_base && cand.strict && !lb.strict)) {
          lb = cand;
          lb_base = cand.value;
        }
      }
    }
    if (ub.is_inf && lb.is_inf) {
      x[i - 1] = rand_small(-16, 16);
    } else if (ub.is_inf) {
      x[i - 1] = lb_base + Rat(1) + rand_small(0, 8);
    } else if (lb.is_inf) {
      x[i - 1] = ub_base - Rat(1) - rand_small(0, 8);
    } else if (lb_base == ub_base) {
      if (lb.strict || ub.strict)
        throw std::logic_error("sample_point: degenerate strict interval");
      x[i - 1] = lb_base;
    } else if (ub_base < lb_base) {
      throw std::logic_error("sample_point: empty interval (DBM not canonical?)");
    } else {
      x[i - 1] = (lb_base + ub_base) / Rat(2);
    }
  }
  assert(d.contains(x));
  return x;
}

bool DbmUnion::contains(std::span<const Rat> point) const {
  return std::any_of(parts.begin(), parts.end(),
                     [&](const Dbm& p) { return p.contains(point); });
}

DbmUnion reduce_union(DbmUnion u) {
  std::vector<Dbm> kept;
  for (std::size_t i = 0; i < u.parts.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < u.parts.size() && !subsumed; ++j) {
      if (i == j) continue;
      // Keep the earlier part when two are equal.
      if (dbm_subset(u.parts[i], u.parts[j]) &&
          !(j > i && dbm_subset(u.parts[j], u.parts[i]))) {
        subsumed = true;
      }
    }
    if (!subsumed) kept.push_back(std::move(u.parts[i]));
  }
  return DbmUnion{std::move(kept)};
}

}  // namespace mplreach
