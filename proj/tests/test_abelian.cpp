#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arl/group.hpp"
#include "arl/smith.hpp"
#include "oracles.hpp"

using namespace arl;

namespace {

FinAbGroup random_group(oracle::Rng& rng, long max_factor = 12) {
  // build from random cyclic pieces, then canonicalize
  const std::size_t k = static_cast<std::size_t>(rng.range(0, 3));
  Vector d;
  for (std::size_t i = 0; i < k; ++i) d.push_back(rng.range(2, max_factor));
  if (d.empty()) return FinAbGroup::trivial();
  return canonicalize(IntMatrix::diagonal(d));
}

GroupHom random_hom(oracle::Rng& rng, const FinAbGroup& s, const FinAbGroup& t) {
  IntMatrix m(t.rank(), s.rank());
  for (std::size_t i = 0; i < t.rank(); ++i)
    for (std::size_t j = 0; j < s.rank(); ++j) {
      const Integer& e = t.invariant_factors()[i];
      m(i, j) = rng.range(0, 20) * (e / gcd(e, s.invariant_factors()[j]));
    }
  return GroupHom(s, t, m);
}

}  // namespace

TEST_CASE("smith form of small fixed matrices") {
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).D == IntMatrix{{1, 0}, {0, 6}});
  CHECK(oracle::smith_diagonal_by_minors(IntMatrix{{2, 0}, {0, 3}}) == Vector{1, 6});
  CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
  CHECK(smith_normal_form(IntMatrix(2, 2)).D == IntMatrix(2, 2));
}

TEST_CASE("smith round trip against determinantal divisors") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(rng.range(1, 4));
    const auto c = static_cast<std::size_t>(rng.range(1, 4));
    const IntMatrix M = oracle::random_matrix(rng, r, c, 10);
    const auto s = smith_decomposition(M);
    REQUIRE(s.U * M * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    CHECK(s.U * s.U_inv == IntMatrix::identity(r));
    CHECK(s.V * s.V_inv == IntMatrix::identity(c));
    CHECK(s.diagonal() == oracle::smith_diagonal_by_minors(M));
  }
}

TEST_CASE("bareiss determinant agrees with cofactor expansion") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.range(1, 4));
    const IntMatrix M = oracle::random_matrix(rng, n, n, 6);
    CHECK(M.determinant() == oracle::laplace_det(M));
  }
}

TEST_CASE("integral solving and kernels") {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix A = oracle::random_matrix(rng, 3, 4, 5);
    Vector x(4);
    for (auto& v : x) v = rng.range(-5, 5);
    const Vector b = A.apply(x);
    auto y = solve_integral(A, b);
    REQUIRE(y);
    CHECK(A.apply(*y) == b);
    const IntMatrix K = integer_kernel(A);
    CHECK((A * K).is_zero());
  }
  CHECK_FALSE(solve_integral(IntMatrix{{2}}, Vector{1}));
}

TEST_CASE("hermite basis is canonical") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix gens = oracle::random_matrix(rng, 3, 5, 6).hconcat(IntMatrix::identity(3).scaled(rng.range(1, 9)));
    const IntMatrix H = hermite_basis(gens);
    // permuting and adding generators must not change the basis
    IntMatrix shuffled = gens.select_columns({7, 2, 0, 5, 1, 3, 6, 4}).hconcat(gens * IntMatrix::identity(8).select_columns({0}));
    CHECK(hermite_basis(shuffled) == H);
    CHECK(lattice_contains(H, gens));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (j > i) CHECK(H(i, j) == 0);
        if (j < i) CHECK((H(i, j) >= 0 && H(i, j) < H(i, i)));
      }
  }
  CHECK_THROWS_AS(hermite_basis(IntMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(IntMatrix::diagonal({2, 4})).invariant_factors() == Vector{2, 4});
  CHECK(canonicalize(IntMatrix{{2, 0}, {0, 3}}).invariant_factors() == Vector{6});
  CHECK(canonicalize(IntMatrix::identity(2)).is_trivial());
  try {
    canonicalize(IntMatrix{{2, 0}, {0, 0}});
    FAIL("expected InfiniteGroup");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfiniteGroup);
  }
  oracle::Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const FinAbGroup g = random_group(rng, 30);
    CHECK(canonicalize(g.relation_lattice()).invariant_factors() == g.invariant_factors());
  }
}

TEST_CASE("constructors validate") {
  CHECK_THROWS_AS(FinAbGroup(Vector{4, 2}), Error);
  CHECK_THROWS_AS(FinAbGroup(Vector{1}), Error);
  try {
    FinAbGroup(Vector{6}, 3UL);
    FAIL("expected NotLPrimary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLPrimary);
  }
  const FinAbGroup z2(Vector{2}), z4(Vector{4});
  CHECK_THROWS_AS(GroupHom(z2, z4, IntMatrix{{1}}), Error);
  CHECK_NOTHROW(GroupHom(z2, z4, IntMatrix{{2}}));
  CHECK_THROWS_AS(GroupHom(z2, z4, IntMatrix{{1, 0}}), Error);
  CHECK_THROWS_AS(FinAbGroup(Vector{2, 4}, std::nullopt, {{"s", IntMatrix{{0, 1}, {1, 0}}}}), Error);
}

TEST_CASE("kernel, image, cokernel of fixed maps") {
  const FinAbGroup z4(Vector{4});
  const GroupHom times2 = GroupHom::scalar(z4, 2);
  CHECK(kernel(times2).group.invariant_factors() == Vector{2});
  CHECK(image(times2).group.invariant_factors() == Vector{2});
  CHECK(cokernel(times2).group.invariant_factors() == Vector{2});
  CHECK(oracle::kernel_order(times2) == 2);
  CHECK(oracle::image_set(times2).size() == 2);

  const FinAbGroup z6(Vector{6});
  const auto id = GroupHom::identity(z6);
  CHECK(kernel(id).group.is_trivial());
  CHECK(image(id).group.invariant_factors() == Vector{6});
  CHECK(cokernel(id).group.is_trivial());

  const auto zero = GroupHom::zero(FinAbGroup(Vector{3}), FinAbGroup(Vector{5}));
  CHECK(kernel(zero).group.invariant_factors() == Vector{3});
  CHECK(image(zero).group.is_trivial());
  CHECK(cokernel(zero).group.invariant_factors() == Vector{5});
}

TEST_CASE("kernel, image, cokernel against enumeration") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const FinAbGroup s = random_group(rng), t = random_group(rng);
    const GroupHom f = random_hom(rng, s, t);
    const auto k = kernel(f), im = image(f);
    const auto q = cokernel(f);
    CHECK(k.group.order() == oracle::kernel_order(f));
    CHECK(im.group.order() == Integer(oracle::image_set(f).size()));
    CHECK(k.group.order() * im.group.order() == s.order());
    CHECK(f.after(k.inclusion).is_zero());
    CHECK(q.projection.after(f).is_zero());
    CHECK(k.inclusion.is_injective());
    CHECK(im.inclusion.is_injective());
    CHECK(q.projection.is_surjective());
    CHECK(oracle::torsion_profile(q.group, 24) == oracle::torsion_profile_of_quotient(t, oracle::image_set(f), 24));
    // cokernel of the kernel inclusion recovers the image
    CHECK(cokernel(k.inclusion).group.invariant_factors() == im.group.invariant_factors());
    CHECK(is_exact_at(k.inclusion, f));
    CHECK(is_exact_at(f, q.projection));
  }
}

TEST_CASE("quotient by an integer") {
  CHECK(quotient_by_integer(FinAbGroup(Vector{8}), 4).group.invariant_factors() == Vector{4});
  CHECK(quotient_by_integer(FinAbGroup(Vector{2, 12}), 1).group.is_trivial());
  CHECK(quotient_by_integer(canonicalize(IntMatrix::diagonal({3, 9})), 3).group.invariant_factors() == Vector{3, 3});
  oracle::Rng rng(4);
  for (int trial = 0; trial < 80; ++trial) {
    const FinAbGroup g = random_group(rng);
    const long n = rng.range(1, 12);
    const auto q = quotient_by_integer(g, n);
    CHECK(q.group.annihilated_by(n));
    const auto mult = GroupHom::scalar(g, n);
    CHECK(oracle::torsion_profile(q.group, 24) == oracle::torsion_profile_of_quotient(g, oracle::image_set(mult), 24));
    CHECK(is_exact_at(mult, q.projection));
  }
}

TEST_CASE("exactness") {
  const FinAbGroup z2(Vector{2}), z4(Vector{4});
  const GroupHom incl(z2, z4, IntMatrix{{2}});
  const GroupHom proj(z4, z2, IntMatrix{{1}});
  CHECK(is_exact_at(incl, proj));
  CHECK_FALSE(is_exact_at(GroupHom::identity(z2), GroupHom::identity(z2)));
  CHECK_FALSE(is_exact_at(GroupHom::zero(z4, z4), GroupHom::zero(z4, z4)));
  try {
    is_exact_at(GroupHom::identity(z2), GroupHom::identity(z4));
    FAIL("expected CompositionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CompositionMismatch);
  }
}

TEST_CASE("operators are transported and checked") {
  const IntMatrix swap{{0, 1}, {1, 0}};
  const FinAbGroup g(Vector{3, 3}, 3UL, {{"Frob", swap}});
  const FinAbGroup z3(Vector{3}, 3UL, {{"Frob", IntMatrix{{1}}}});
  CHECK_NOTHROW(GroupHom(g, z3, IntMatrix{{1, 1}}));
  CHECK_THROWS_AS(GroupHom(g, z3, IntMatrix{{1, 0}}), Error);
  const auto k = kernel(GroupHom(g, z3, IntMatrix{{1, 1}}));
  REQUIRE(k.group.operators().count("Frob"));
  CHECK(k.group.operators().at("Frob") == IntMatrix{{2}});
  const auto ds = direct_sum(g, z3);
  CHECK(ds.group.operators().count("Frob"));
  CHECK(ds.proj1.after(ds.inj1) == GroupHom::identity(g));
}

TEST_CASE("direct sums") {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const FinAbGroup a = random_group(rng), b = random_group(rng);
    const auto s = direct_sum(a, b);
    CHECK(s.group.order() == a.order() * b.order());
    CHECK(s.proj1.after(s.inj1) == GroupHom::identity(a));
    CHECK(s.proj2.after(s.inj2) == GroupHom::identity(b));
    CHECK(s.proj2.after(s.inj1).is_zero());
    CHECK(s.proj1.after(s.inj2).is_zero());
    CHECK((s.inj1.after(s.proj1) + s.inj2.after(s.proj2)) == GroupHom::identity(s.group));
  }
  const auto lp = direct_sum(FinAbGroup::l_primary(2, {3}), FinAbGroup::l_primary(2, {1, 2}));
  CHECK(lp.group.invariant_factors() == Vector{2, 4, 8});
  CHECK_THROWS_AS(direct_sum(FinAbGroup::l_primary(2, {1}), FinAbGroup::l_primary(3, {1})), Error);
}

TEST_CASE("subgroup lattice operations") {
  const FinAbGroup g(Vector{4, 8});
  const auto a = Subgroup::generated_by(g, IntMatrix{{2}, {0}});
  const auto b = Subgroup::generated_by(g, IntMatrix{{0}, {4}});
  CHECK((a + b).order() == 4);
  CHECK(a.intersect(b).is_zero());
  CHECK(Subgroup::multiple(g, 2).order() == 8);
  CHECK(Subgroup::whole(g).contains(a));
  CHECK_FALSE(a.contains(b));
}
