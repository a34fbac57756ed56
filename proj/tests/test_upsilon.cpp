#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arl/limits.hpp"
#include "samples.hpp"

using namespace arl;

namespace {

const HyperNat h = HyperNat::symbol("h");

Tower l_plus_zero(Prime l, std::size_t top, std::size_t levels = 7) {
  return direct_sum(sample::zl(l, levels), sample::short_zero(l, top)).tower;
}

}  // namespace

TEST_CASE("hypernatural arithmetic") {
  CHECK(hn_compare(h, HyperNat(1000000)) == HyperOrder::GT);
  CHECK(hn_compare(HyperNat(7), h) == HyperOrder::LT);
  CHECK(hn_sub(HyperNat::parse("h+d1"), h) == HyperNat::symbol("d1"));
  CHECK(hn_compare(h, HyperNat::symbol("d1")) == HyperOrder::Incomparable);
  CHECK(hn_compare(HyperNat::parse("h-1"), h) == HyperOrder::LT);
  CHECK(hn_compare(HyperNat::parse("h+d1"), HyperNat::parse("d1+h")) == HyperOrder::EQ);
  CHECK(hn_sub(h, HyperNat(1)).to_string() == "h-1");
  CHECK_THROWS_AS(hn_sub(HyperNat(1), h), Error);
  CHECK_THROWS_AS(hn_sub(HyperNat(2), HyperNat(3)), Error);
  CHECK(hn_add(HyperNat::parse("h+d1+d2"), HyperNat(2)).to_string() == "d1+d2+h+2");
}

TEST_CASE("hypernatural parsing") {
  CHECK(HyperNat::parse("42") == HyperNat(42));
  CHECK(HyperNat::parse(" h - 1 ").to_string() == "h-1");
  CHECK(HyperNat::parse("h+d1+d2-3").offset() == -3);
  CHECK(HyperNat::parse("h").is_infinite());
  CHECK_FALSE(HyperNat::parse("5").is_infinite());
  CHECK_THROWS_AS(HyperNat::parse(""), Error);
  CHECK_THROWS_AS(HyperNat::parse("h+"), Error);
  CHECK_THROWS_AS(HyperNat::parse("1-h"), Error);
  CHECK_THROWS_AS(HyperNat::parse("2-5"), Error);
  CHECK_THROWS_AS(HyperNat::parse("h*2"), Error);
}

TEST_CASE("upsilon objects") {
  const Tower F = sample::zl(2, 6);
  const UpsilonObj U = upsilon(F, h, 4);
  CHECK(U.index.to_string() == "h-1");
  CHECK(U.marker == h);
  CHECK(U.quotient(0).is_trivial());
  CHECK(U.quotient(1).invariant_factors() == Vector{2});
  CHECK(U.quotient(3).invariant_factors() == Vector{8});

  const UpsilonObj V = upsilon(l_plus_zero(2, 2), h, 5);
  CHECK(V.base.levelwise_equal(U.base.prefix(std::min(U.base.size(), V.base.size()))) ==
        V.base.prefix(std::min(U.base.size(), V.base.size())).levelwise_equal(U.base));
  CHECK(V.base.levelwise_isomorphic(U.base));

  const UpsilonObj T = upsilon(trivial_tower(3, 4), h, 3);
  CHECK(T.quotient(2).is_trivial());

  CHECK_THROWS_AS(upsilon(F, HyperNat(5), 4), Error);
  try {
    upsilon(F, HyperNat(5), 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FiniteIndex);
  }
}

TEST_CASE("choice of the stable-image shift does not matter") {
  const Tower F = l_plus_zero(3, 1, 8);
  const auto s = stable_image_bound(F, 5);
  REQUIRE(s.has_value());
  const UpsilonObj a = upsilon(F, h, 5, *s);
  const UpsilonObj b = upsilon(F, h, 5, *s + 2);
  CHECK(a.base.levelwise_equal(b.base));
}

TEST_CASE("upsilon on morphisms") {
  const Tower F = sample::zl(2, 6);
  const UpsilonHom id = upsilon_mor(ar_identity(F), h, 3);
  CHECK(id.is_isomorphism());
  CHECK(id.rep.levelwise_equal(identity_hom(id.source.base).prefix(id.rep.size())));

  const UpsilonHom two = upsilon_mor(sample::times(F, 2), h, 3);
  CHECK_FALSE(two.is_zero());
  CHECK_FALSE(two.is_isomorphism());
  CHECK(two.rep.at(2).matrix() == IntMatrix{{2}});

  // a morphism through a zero system
  const Tower N = sample::constant(2, 1, 0, 6);
  const auto S = direct_sum(F, N);
  const ARMor through = ar_compose(ar_from_hom(S.inj2), ar_from_hom(S.proj2));
  CHECK(upsilon_mor(through, h, 4).is_zero());

  // further-shifted representatives give the same map
  const ARMor f = sample::times(F, 3);
  CHECK(upsilon_mor(f, h, 3).rep.levelwise_equal(upsilon_mor(ar_reshift(f, 2), h, 3).rep));

  // functoriality
  const ARMor g = sample::times(F, 2);
  const UpsilonHom gf = upsilon_mor(ar_compose(g, f), h, 3);
  const TowerHom composed = compose(upsilon_mor(g, h, 3).rep, upsilon_mor(f, h, 3).rep);
  const std::size_t k = std::min(gf.rep.size(), composed.size());
  CHECK(gf.rep.prefix(k).levelwise_equal(composed.prefix(k)));
}

TEST_CASE("psi, star and phi") {
  const Tower F = sample::zl(3, 6);
  const Tower P = psi(upsilon(F, h, 3));
  CHECK(P.prefix(5).levelwise_equal(F.prefix(5)));
  CHECK(P.certificates().l_adic);

  const Tower C = sample::constant(3, 1, 1, 5);
  CHECK(psi(upsilon(C, h, 3)).prefix(4).levelwise_equal(C.prefix(4)));
  CHECK(psi(upsilon(trivial_tower(3, 3), h, 2)).level(0).is_trivial());

  const Tower N = sample::short_zero(3, 2);
  CHECK(star_tower(N).levelwise_equal(N));
  CHECK(star_tower(N).certificates().star);
  CHECK(is_zero_system(star_tower(N), 4).radius == is_zero_system(N, 4).radius);

  const PhiIso phi = phi_iso(F, h, 3);
  CHECK(ar_is_isomorphism(phi.iso, 3).verdict == Verdict::Yes);
  CHECK(ar_equal(phi.iso, ar_identity(F), 2) == Verdict::Yes);

  const Tower FN = l_plus_zero(3, 2, 8);
  const PhiIso q = phi_iso(FN, h, 5);
  CHECK(ar_is_isomorphism(q.iso, 5).verdict == Verdict::Yes);
  CHECK(ar_is_isomorphism(q.inverse, 5).verdict == Verdict::Yes);
  CHECK(ar_equal(ar_compose(q.inverse, q.iso), ar_identity(q.iso.source), 8) == Verdict::Yes);

  const PhiIso t = phi_iso(trivial_tower(2, 3), h, 2);
  CHECK(ar_is_isomorphism(t.iso, 2).verdict == Verdict::Yes);
}

TEST_CASE("right exactness") {
  const Tower F = sample::zl(2, 8);
  CHECK(check_right_exact(ar_identity(F), ar_zero(F, trivial_tower(2, 8)), h, 3));

  // 0 -> Z/l^{n+1} --l--> Z/l^{n+1} -> Z/l -> 0
  const Tower C = sample::constant(2, 1, 1, 8);
  std::vector<GroupHom> red;
  for (std::size_t n = 0; n < 8; ++n) red.emplace_back(F.level(n), C.level(n), IntMatrix{{1}});
  const ARMor g = ar_from_hom(TowerHom(F, C, red));
  CHECK(check_right_exact(sample::times(F, 2), g, h, 3));

  // not exact: the composite is nonzero
  CHECK_THROWS_AS(check_right_exact(ar_identity(F), g, h, 3), Error);
}

TEST_CASE("faithfulness") {
  const Tower F = sample::zl(2, 6);
  auto a = faithfulness_check(ar_identity(F), h, 3);
  CHECK(a.upsilon_iso);
  CHECK(a.ar_iso == Verdict::Yes);
  CHECK(a.holds);

  auto b = faithfulness_check(sample::times(F, 2), h, 3);
  CHECK_FALSE(b.upsilon_zero);
  CHECK(b.ar_zero == Verdict::No);
  CHECK(b.holds);

  const auto S = direct_sum(F, sample::short_zero(2, 3));
  auto c = faithfulness_check(ar_from_hom(S.proj1), h, 5);
  CHECK(c.upsilon_iso);
  CHECK(c.ar_iso == Verdict::Yes);
  CHECK(c.holds);
}

TEST_CASE("limits") {
  CHECK(limit(sample::zl(2)) == ZlModule(2, {}, 1));
  CHECK(limit(sample::constant(3, 1, 1)) == ZlModule(3, {1}, 0));
  CHECK(limit(trivial_tower(2)).is_zero());
  // Z/l^{min(2,n+1)} + Z/l^{n+1}
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr;
  for (unsigned long n = 0; n < 6; ++n) {
    lv.push_back(FinAbGroup::l_primary(2, {std::min(2ul, n + 1), n + 1}));
    if (n > 0) tr.emplace_back(lv[n], lv[n - 1], IntMatrix::identity(lv[n].rank()));
  }
  CHECK(limit(Tower(2, lv, tr)).to_string() == "Z/l^2 + Zl^1");
  CHECK_THROWS_AS(limit(sample::times_l(2)), Error);
  CHECK_THROWS_AS(limit(Tower(2, {FinAbGroup::l_primary(2, {1})}, {})), Error);
}

TEST_CASE("to_tower and round trips") {
  const Tower A = to_tower(ZlModule(2, {}, 1), 5);
  CHECK(A.levelwise_equal(sample::zl(2, 5)));
  const Tower B = to_tower(ZlModule(3, {2}, 0), 4);
  CHECK(B.level(0).invariant_factors() == Vector{3});
  CHECK(B.level(1).invariant_factors() == Vector{9});
  CHECK(B.level(3).invariant_factors() == Vector{9});
  CHECK(to_tower(ZlModule::zero(5)).level(2).is_trivial());

  for (Prime l : {2u, 3u})
    for (unsigned long a = 1; a <= 3; ++a)
      for (std::size_t rho = 0; rho <= 2; ++rho) {
        const ZlModule M(l, {a, a + 1}, rho);
        CHECK(limit(to_tower(M)) == M);
      }
}

TEST_CASE("tensor with Z_l") {
  CHECK(tensor_zl(upsilon(sample::zl(2), h, 3)) == ZlModule(2, {}, 1));
  CHECK(tensor_zl(upsilon(sample::constant(2, 1, 1), h, 3)) == ZlModule(2, {1}, 0));
  CHECK(tensor_zl(upsilon(l_plus_zero(3, 2, 8), h, 5)) == ZlModule(3, {}, 1));
  CHECK(rank_ql(ZlModule(2, {5}, 2)) == 2);
  CHECK(rank_ql(ZlModule(2, {}, 1)) == 1);
  CHECK(rank_ql(ZlModule::zero(2)) == 0);
}

TEST_CASE("comparison") {
  OperatorMap frob{{"Frob", IntMatrix{{5}}}};
  const ZlModule M(2, {}, 1, frob);
  const auto a = comparison_check(to_tower(M, 6), h, 3);
  CHECK(a.isomorphic);
  CHECK(a.left == a.right);

  const auto b = comparison_check(l_plus_zero(3, 2, 8), h, 5);
  CHECK(b.isomorphic);
  CHECK(b.left == ZlModule(3, {}, 1));

  const auto c = comparison_check(trivial_tower(2, 4), h, 3);
  CHECK(c.isomorphic);
  CHECK(c.left.is_zero());
}

TEST_CASE("torsion criterion") {
  const auto a = ladic_iff_torsionfree(ZlModule(2, {1}, 1), ZlModule(2, {}, 2));
  CHECK(a.l_adic);
  CHECK(a.verdict);

  const auto b = ladic_iff_torsionfree(ZlModule(3, {}, 1), ZlModule(3, {1}, 0));
  CHECK_FALSE(b.l_adic);
  CHECK(b.verdict);
  REQUIRE(b.witness_level.has_value());

  const auto c = ladic_iff_torsionfree(ZlModule::zero(2), ZlModule::zero(2));
  CHECK(c.l_adic);
  CHECK(c.verdict);
  CHECK(c.tower.level(3).is_trivial());
}
