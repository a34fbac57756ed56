#pragma once

#include <optional>

#include "arl/matrix.hpp"

namespace arl {

// Full-rank sublattices of Z^k, stored as column-style lower-triangular
// Hermite bases: H(i,j) = 0 for j > i, H(i,i) > 0, 0 <= H(i,j) < H(i,i) for j < i.
// The basis is unique, so lattice equality is matrix equality.

/// Hermite basis of the lattice spanned by the columns of `generators`.
/// Throws Error(InfiniteGroup) if the span is not of full rank.
IntMatrix hermite_basis(const IntMatrix& generators);

/// y with H y = x, or nullopt if x is not in the lattice.
std::optional<Vector> solve_lower(const IntMatrix& hermite, const Vector& x);

bool lattice_contains(const IntMatrix& hermite, const Vector& x);
bool lattice_contains(const IntMatrix& hermite, const IntMatrix& vectors);

/// {x in Z^k : M x in T}; M is m x k, T an m x m Hermite basis.
IntMatrix lattice_preimage(const IntMatrix& M, const IntMatrix& target_hermite);

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

/// Index [Z^k : L].
Integer lattice_index(const IntMatrix& hermite);

/// outer / inner for inner ⊆ outer, in invariant-factor coordinates.
struct Subquotient {
  Vector factors;       // nontrivial invariant factors, d_1 | d_2 | ...
  IntMatrix lifts;      // k x q: column j is a lift of generator j into Z^k
  IntMatrix coord_map;  // q x k: coordinates of x = outer * a are coord_map * a
  IntMatrix outer;

  /// Coordinates (reduced) of x in outer / inner; throws if x is not in outer.
  Vector coords(const Vector& x) const;
};

Subquotient subquotient(const IntMatrix& outer_hermite, const IntMatrix& inner_hermite);

}  // namespace arl
