#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arl/tower_ops.hpp"
#include "samples.hpp"

using namespace arl;

TEST_CASE("shift and natural maps") {
  const Tower F = sample::zl(2, 6);
  const Tower S = shift(F, 2);
  CHECK(S.level(0) == F.level(2));
  CHECK(S.transition(1) == F.transition(3));
  CHECK(shift(shift(F, 1), 2).levelwise_equal(shift(F, 3)));

  CHECK(natural_map(F, 0).levelwise_equal(identity_hom(F)));
  const TowerHom n1 = natural_map(F, 1);
  CHECK(n1.at(0).matrix() == IntMatrix{{1}});
  CHECK(n1.at(0).source().invariant_factors() == Vector{4});
  CHECK(n1.at(0).is_surjective());

  CHECK(natural_map(sample::constant(2, 1, 0), 1).is_zero());

  // natural_map(F, a+b) = natural_map(F, a) o natural_map(F[a], b)
  CHECK(compose(natural_map(F, 1), natural_map(shift(F, 1), 2)).levelwise_equal(natural_map(F, 3)));
}

TEST_CASE("generative towers extend on demand") {
  const Tower F = sample::zl(3, 2);
  const Tower E = F.extended(9);
  CHECK(E.size() >= 9);
  CHECK(E.level(8).invariant_factors() == Vector{Integer(19683)});
  CHECK(sample::times_l(2, 3).extended(7).size() >= 7);
  CHECK(sample::constant(2, 1, 1, 3).require(5).size() >= 5);
  CHECK_THROWS_AS(Tower(2, {FinAbGroup::l_primary(2, {1})}, {}).require(3), Error);
}

TEST_CASE("tower construction rejects bad data") {
  const FinAbGroup a = FinAbGroup::l_primary(2, {1});
  const FinAbGroup b = FinAbGroup::l_primary(3, {1});
  CHECK_THROWS_AS(Tower(2, {a, b}, {GroupHom::zero(b, a)}), Error);
  CHECK_THROWS_AS(Tower(2, {a, a}, {}), Error);
  CHECK_THROWS_AS(Tower(2, {a}, {}, TailRule::zero_tail(3)), Error);
}

TEST_CASE("zero systems") {
  auto z = is_zero_system(sample::constant(2, 1, 0), 4);
  CHECK(z.verdict == Verdict::Yes);
  CHECK(z.radius == 1);

  auto y = is_zero_system(sample::zl(2), 4);
  CHECK(y.verdict == Verdict::No);

  auto w = is_zero_system(sample::short_zero(3, 3), 4);
  CHECK(w.verdict == Verdict::Yes);
  CHECK(w.radius == 4);
  CHECK(w.tail_certified);

  CHECK(is_zero_system(trivial_tower(5), 0).verdict == Verdict::Yes);
  CHECK(is_zero_system(trivial_tower(5), 0).radius == 0);

  // identity on a constant tower: images never die
  CHECK(is_zero_system(sample::constant(2, 1, 1, 5), 2).verdict == Verdict::No);
}

TEST_CASE("zero radius certificates vanish the natural map") {
  const Tower N = sample::short_zero(2, 2);
  const auto z = is_zero_system(N, 5);
  REQUIRE(z.verdict == Verdict::Yes);
  CHECK(natural_map(N.extended(8), z.radius).is_zero());
  if (z.radius > 0) CHECK_FALSE(natural_map(N, z.radius - 1).is_zero());
}

TEST_CASE("l-adic systems") {
  CHECK(is_l_adic(sample::zl(2)).verdict == Verdict::Yes);
  CHECK(is_l_adic(sample::constant(3, 1, 1)).verdict == Verdict::Yes);
  auto r = is_l_adic(sample::times_l(2));
  CHECK(r.verdict == Verdict::No);
  CHECK(r.level == 0);
  CHECK(is_l_adic(sample::constant(2, 2, 1)).verdict == Verdict::No);  // l^1 does not kill Z/4
  CHECK(is_l_adic(trivial_tower(2)).verdict == Verdict::Yes);

  // |F_{n+1}| >= |F_n| for l-adic towers
  const Tower M = to_tower(ZlModule(2, {1, 3}, 2), 7);
  for (std::size_t n = 1; n < M.size(); ++n) CHECK(M.level(n).order() >= M.level(n - 1).order());
}

TEST_CASE("levelwise kernels, images, cokernels") {
  const Tower F = sample::zl(2, 5);
  const auto K = levelwise_kernel(identity_hom(F));
  for (std::size_t n = 0; n < K.tower.size(); ++n) CHECK(K.tower.level(n).is_trivial());

  const auto I = levelwise_image(natural_map(F, 1));
  CHECK(I.tower.levelwise_isomorphic(F));

  const auto C = levelwise_cokernel(zero_hom(F, F));
  CHECK(C.tower.levelwise_isomorphic(F));

  // kernel -> source -> cokernel is exact at every level
  const TowerHom f = scale(identity_hom(F), 2);
  const auto Kf = levelwise_kernel(f);
  const auto Cf = levelwise_cokernel(f);
  for (std::size_t n = 0; n < Kf.tower.size(); ++n) {
    CHECK(is_exact_at(Kf.inclusion.at(n), f.at(n)));
    CHECK(is_exact_at(f.at(n), Cf.projection.at(n)));
  }
  // cokernel of multiplication by l is the constant Z/l tower with identities
  for (std::size_t n = 0; n < Cf.tower.size(); ++n) CHECK(Cf.tower.level(n).invariant_factors() == Vector{2});
  CHECK(is_zero_system(Cf.tower, 4).verdict == Verdict::No);
}

TEST_CASE("mod_power") {
  const Tower F = sample::zl(3, 5);
  const auto Q0 = mod_power(F, 0);
  for (std::size_t n = 0; n < Q0.tower.size(); ++n) CHECK(Q0.tower.level(n).is_trivial());
  const auto Q1 = mod_power(F, 1);
  CHECK(Q1.tower.levelwise_equal(sample::constant(3, 1, 1, 5)));
  const Tower A = sample::constant(3, 1, 1, 5);
  CHECK(mod_power(A, 1).tower.levelwise_equal(A));
}

TEST_CASE("direct sums") {
  const Tower F = sample::zl(2, 5);
  const auto S = direct_sum(F, trivial_tower(2, 5));
  CHECK(S.tower.levelwise_equal(F));

  const auto LL = direct_sum(F, to_tower(ZlModule(2, {2}, 0), 5));
  CHECK(is_l_adic(LL.tower).verdict == Verdict::Yes);

  const auto LN = direct_sum(F, sample::constant(2, 1, 0, 5));
  CHECK(is_l_adic(LN.tower).verdict == Verdict::No);

  CHECK_THROWS_AS(direct_sum(F, sample::zl(3, 5)), Error);
}

TEST_CASE("levelwise epimorphism from l-adic onto a zero system forces triviality") {
  // Z/l^{n+1} -> Z/l for n <= 2 is onto but the target is not trivial, so no such
  // morphism of towers exists: the squares fail to commute.
  const Tower L = sample::zl(2, 4);
  const Tower N = sample::short_zero(2, 2);
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < 4; ++n) {
    IntMatrix m(N.extended(4).level(n).rank(), 1);
    if (m.rows() == 1) m(0, 0) = 1;
    maps.emplace_back(L.level(n), N.extended(4).level(n), m);
  }
  CHECK_THROWS_AS(TowerHom(L, N.extended(4), maps), Error);
}
