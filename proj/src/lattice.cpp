#include "arl/lattice.hpp"

#include <stdexcept>

#include "arl/errors.hpp"
#include "arl/smith.hpp"

namespace arl {

namespace {

// (col_a, col_b) <- (s col_a + t col_b, -(b/g) col_a + (a/g) col_b), determinant 1.
void combine_columns(IntMatrix& G, std::size_t ca, std::size_t cb, std::size_t row) {
  const Integer a = G(row, ca), b = G(row, cb);
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const Integer bg = b / g, ag = a / g;
  for (std::size_t i = 0; i < G.rows(); ++i) {
    Integer x = G(i, ca), y = G(i, cb);
    G(i, ca) = s * x + t * y;
    G(i, cb) = ag * y - bg * x;
  }
}

}  // namespace

IntMatrix hermite_basis(const IntMatrix& generators) {
  const std::size_t k = generators.rows();
  const std::size_t m = generators.cols();
  if (m < k) throw Error(ErrorKind::InfiniteGroup, "lattice generators do not span full rank");
  IntMatrix G = generators;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (G(i, j) == 0) continue;
      if (G(i, i) == 0) {
        for (std::size_t r = 0; r < k; ++r) std::swap(G(r, i), G(r, j));
        continue;
      }
      combine_columns(G, i, j, i);
    }
    if (G(i, i) == 0) throw Error(ErrorKind::InfiniteGroup, "lattice generators do not span full rank");
    if (G(i, i) < 0)
      for (std::size_t r = 0; r < k; ++r) G(r, i) = -G(r, i);
    for (std::size_t j = 0; j < i; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), G(i, j).get_mpz_t(), G(i, i).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t r = i; r < k; ++r) G(r, j) -= q * G(r, i);
    }
  }
  std::vector<std::size_t> first(k);
  for (std::size_t i = 0; i < k; ++i) first[i] = i;
  return G.select_columns(first);
}

std::optional<Vector> solve_lower(const IntMatrix& H, const Vector& x) {
  const std::size_t k = H.rows();
  if (x.size() != k) throw std::invalid_argument("solve_lower: length mismatch");
  Vector y(k);
  for (std::size_t i = 0; i < k; ++i) {
    Integer acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= H(i, j) * y[j];
    if (!mpz_divisible_p(acc.get_mpz_t(), H(i, i).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[i].get_mpz_t(), acc.get_mpz_t(), H(i, i).get_mpz_t());
  }
  return y;
}

bool lattice_contains(const IntMatrix& H, const Vector& x) { return solve_lower(H, x).has_value(); }

bool lattice_contains(const IntMatrix& H, const IntMatrix& vectors) {
  for (std::size_t j = 0; j < vectors.cols(); ++j)
    if (!lattice_contains(H, vectors.column(j))) return false;
  return true;
}

IntMatrix lattice_preimage(const IntMatrix& M, const IntMatrix& T) {
  const std::size_t m = M.rows();
  const std::size_t k = M.cols();
  if (T.rows() != m) throw std::invalid_argument("lattice_preimage: shape mismatch");
  const IntMatrix K = integer_kernel(M.hconcat(T.scaled(-1)));
  const Integer det = lattice_index(T);
  IntMatrix gens(k, K.cols() + k);
  for (std::size_t j = 0; j < K.cols(); ++j)
    for (std::size_t i = 0; i < k; ++i) gens(i, j) = K(i, j);
  for (std::size_t i = 0; i < k; ++i) gens(i, K.cols() + i) = det;
  return hermite_basis(gens);
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  return hermite_basis(a * lattice_preimage(a, b));
}

Integer lattice_index(const IntMatrix& H) {
  Integer d = 1;
  for (std::size_t i = 0; i < H.rows(); ++i) d *= H(i, i);
  return d;
}

Vector Subquotient::coords(const Vector& x) const {
  auto a = solve_lower(outer, x);
  if (!a) throw std::invalid_argument("element outside the subquotient's outer lattice");
  Vector c = coord_map.apply(*a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], factors[i]);
  return c;
}

Subquotient subquotient(const IntMatrix& outer, const IntMatrix& inner) {
  const std::size_t k = outer.rows();
  IntMatrix C(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto col = solve_lower(outer, inner.column(j));
    if (!col) throw std::invalid_argument("subquotient: inner lattice not contained in outer");
    C.set_column(j, *col);
  }
  const auto s = smith_decomposition(C);
  Subquotient q;
  q.outer = outer;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i)
    if (s.D(i, i) != 1) {
      keep.push_back(i);
      q.factors.push_back(s.D(i, i));
    }
  q.lifts = outer * s.U_inv.select_columns(keep);
  q.coord_map = s.U.select_rows(keep);
  return q;
}

}  // namespace arl
