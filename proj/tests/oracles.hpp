#pragma once

// Independent reference computations used to check the library in tests.
// Nothing here calls into the Smith/Hermite code paths being tested.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "arl/group.hpp"

namespace oracle {

using arl::Integer;
using arl::IntMatrix;
using arl::Vector;

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.range(-bound, bound);
  return m;
}

// Plain Laplace expansion; fine for the <= 4x4 minors used here.
inline Integer laplace_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(i - 1, cc++) = m(i, c);
    Integer term = m(0, j) * laplace_det(minor);
    acc += (j % 2 == 0) ? term : Integer(-term);
  }
  return acc;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Determinantal divisors: gcd of all k x k minors. The Smith diagonal is d_k = D_k / D_{k-1}.
inline Vector smith_diagonal_by_minors(const IntMatrix& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  Vector diag;
  Integer prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& a : rs)
      for (const auto& b : cs) g = gcd(g, laplace_det(m.select_rows(a).select_columns(b)));
    if (g == 0) {
      while (diag.size() < r) diag.push_back(0);
      return diag;
    }
    diag.push_back(g / prev);
    prev = g;
  }
  return diag;
}

inline std::vector<Vector> elements(const arl::FinAbGroup& g) { return arl::enumerate_elements(g); }

inline Vector apply_reduced(const IntMatrix& m, const arl::FinAbGroup& target, const Vector& x) {
  return target.reduce(m.apply(x));
}

inline Integer kernel_order(const arl::GroupHom& f) {
  Integer n = 0;
  for (const auto& x : elements(f.source()))
    if (arl::Element(f.target(), f.matrix().apply(x)).is_zero()) ++n;
  return n;
}

inline std::set<Vector> image_set(const arl::GroupHom& f) {
  std::set<Vector> s;
  for (const auto& x : elements(f.source())) s.insert(apply_reduced(f.matrix(), f.target(), x));
  return s;
}

// |Q[m]| for every m up to `up_to`, where Q = target / subset (subset a subgroup).
// Finite abelian groups are determined by these counts.
inline std::vector<Integer> torsion_profile_of_quotient(const arl::FinAbGroup& target, const std::set<Vector>& sub,
                                                        long up_to) {
  std::vector<Integer> counts;
  const auto all = elements(target);
  for (long m = 1; m <= up_to; ++m) {
    Integer n = 0;
    for (const auto& x : all) {
      Vector y = x;
      for (auto& c : y) c *= m;
      if (sub.count(target.reduce(y))) ++n;
    }
    counts.push_back(n / Integer(sub.size()));
  }
  return counts;
}

inline std::vector<Integer> torsion_profile(const arl::FinAbGroup& g, long up_to) {
  std::vector<Integer> counts;
  for (long m = 1; m <= up_to; ++m) {
    Integer n = 1;
    for (const auto& d : g.invariant_factors()) n *= gcd(d, Integer(m));
    counts.push_back(n);
  }
  return counts;
}

}  // namespace oracle
