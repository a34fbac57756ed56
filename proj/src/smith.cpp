#include "arl/smith.hpp"

#include <utility>

namespace arl {

namespace {

// Working state: A = U * M * V is maintained after every elementary step.
struct Reducer {
  IntMatrix A, U, U_inv, V, V_inv;

  explicit Reducer(const IntMatrix& M)
      : A(M),
        U(IntMatrix::identity(M.rows())),
        U_inv(IntMatrix::identity(M.rows())),
        V(IntMatrix::identity(M.cols())),
        V_inv(IntMatrix::identity(M.cols())) {}

  // row i += c * row t
  void add_row(std::size_t i, std::size_t t, const Integer& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) += c * A(t, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) += c * U(t, j);
    for (std::size_t k = 0; k < U_inv.rows(); ++k) U_inv(k, t) -= c * U_inv(k, i);
  }

  // col j += c * col t
  void add_col(std::size_t j, std::size_t t, const Integer& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < A.rows(); ++i) A(i, j) += c * A(i, t);
    for (std::size_t i = 0; i < V.rows(); ++i) V(i, j) += c * V(i, t);
    for (std::size_t k = 0; k < V_inv.cols(); ++k) V_inv(t, k) -= c * V_inv(j, k);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(a, j), A(b, j));
    for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (std::size_t k = 0; k < U_inv.rows(); ++k) std::swap(U_inv(k, a), U_inv(k, b));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
    for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
    for (std::size_t k = 0; k < V_inv.cols(); ++k) std::swap(V_inv(a, k), V_inv(b, k));
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = -A(i, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
    for (std::size_t k = 0; k < U_inv.rows(); ++k) U_inv(k, i) = -U_inv(k, i);
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < A.rows(); ++i)
      for (std::size_t j = t; j < A.cols(); ++j) {
        if (A(i, j) == 0) continue;
        Integer a = abs(A(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  // Returns false when the active block starting at t is zero.
  bool reduce_block(std::size_t t) {
    for (;;) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) return false;
      swap_rows(t, pi);
      swap_cols(t, pj);
      const Integer p = A(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < A.rows(); ++i) {
        if (A(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), p.get_mpz_t());
        add_row(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < A.cols(); ++j) {
        if (A(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), p.get_mpz_t());
        add_col(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < A.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < A.cols(); ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), p.get_mpz_t())) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (A(t, t) < 0) negate_row(t);
    return true;
  }
};

}  // namespace

Vector SmithDecomposition::diagonal() const {
  const std::size_t k = std::min(D.rows(), D.cols());
  Vector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = D(i, i);
  return d;
}

SmithDecomposition smith_decomposition(const IntMatrix& M) {
  Reducer r(M);
  const std::size_t k = std::min(M.rows(), M.cols());
  std::size_t rank = 0;
  for (std::size_t t = 0; t < k; ++t) {
    if (!r.reduce_block(t)) break;
    ++rank;
  }
  SmithDecomposition out;
  out.U = std::move(r.U);
  out.U_inv = std::move(r.U_inv);
  out.D = std::move(r.A);
  out.V = std::move(r.V);
  out.V_inv = std::move(r.V_inv);
  out.rank = rank;
  return out;
}

SmithForm smith_normal_form(const IntMatrix& M) {
  auto s = smith_decomposition(M);
  return SmithForm{std::move(s.U), std::move(s.D), std::move(s.V)};
}

std::optional<Vector> solve_integral(const IntMatrix& A, const Vector& b) {
  const auto s = smith_decomposition(A);
  const Vector c = s.U.apply(b);
  Vector y(A.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), s.D(i, i).get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

IntMatrix integer_kernel(const IntMatrix& A) {
  const auto s = smith_decomposition(A);
  std::vector<std::size_t> cols;
  for (std::size_t j = s.rank; j < A.cols(); ++j) cols.push_back(j);
  return s.V.select_columns(cols);
}

}  // namespace arl
