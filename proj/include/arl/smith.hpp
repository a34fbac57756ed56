#pragma once

#include <optional>

#include "arl/matrix.hpp"

namespace arl {

/// D = U * M * V with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

/// Smith form together with the inverses of the transforms and the rank.
struct SmithDecomposition {
  IntMatrix U, U_inv;
  IntMatrix D;
  IntMatrix V, V_inv;
  std::size_t rank = 0;

  Vector diagonal() const;
};

// Pivot rule: nonzero entry of least absolute value in the active block, ties
// to the lowest (row, col). Results are bit-for-bit reproducible.
SmithDecomposition smith_decomposition(const IntMatrix& M);
SmithForm smith_normal_form(const IntMatrix& M);

/// Some integer solution of A x = b, if one exists.
std::optional<Vector> solve_integral(const IntMatrix& A, const Vector& b);

/// Columns spanning the integer kernel {x : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A);

}  // namespace arl
