#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arl/random.hpp"
#include "arl/tower_file.hpp"

using namespace arl;

namespace {

constexpr std::uint64_t kSeed = 99;
const HyperNat h = HyperNat::symbol("h");

GenParams small() {
  GenParams p;
  p.levels = 6;
  return p;
}

std::size_t common(const Tower& a, const Tower& b) { return std::min(a.size(), b.size()); }

}  // namespace

TEST_CASE("shifts compose") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng(kSeed, 1, i);
    const Tower F = random_ar_l_adic(rng, small()).F.extended(10);
    const auto a = static_cast<std::size_t>(rng.range(0, 2)), b = static_cast<std::size_t>(rng.range(0, 2));
    const Tower x = shift(shift(F, a), b), y = shift(F, a + b);
    CHECK(x.prefix(common(x, y)).levelwise_equal(y.prefix(common(x, y))));
    const TowerHom lhs = compose(natural_map(F, a), natural_map(shift(F, a), b));
    CHECK(lhs.levelwise_equal(natural_map(F, a + b)));
  }
}

TEST_CASE("kernel and cokernel sequences are exact") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng(kSeed, 2, i);
    const GenParams p = small();
    const Prime l = random_prime(rng, p);
    const ZlModule a = random_zl_module(rng, l, p), b = random_zl_module(rng, l, p);
    const TowerHom f = zl_map_tower(a, b, random_zl_map(rng, a, b), p.levels);
    const auto K = levelwise_kernel(f);
    const auto C = levelwise_cokernel(f);
    for (std::size_t n = 0; n < f.size(); ++n) {
      CHECK(is_exact_at(K.inclusion.at(n), f.at(n)));
      CHECK(is_exact_at(f.at(n), C.projection.at(n)));
      CHECK(K.inclusion.at(n).is_injective());
      CHECK(C.projection.at(n).is_surjective());
    }
  }
}

TEST_CASE("extensions are levelwise exact and AR-isomorphic to their quotient") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng(kSeed, 3, i);
    const Extension E = random_extension(rng, random_prime(rng, small()), small());
    for (std::size_t n = 0; n < E.incl.size(); ++n) {
      CHECK(E.incl.at(n).is_injective());
      CHECK(is_exact_at(E.incl.at(n), E.proj.at(n)));
      CHECK(E.proj.at(n).is_surjective());
    }
    CHECK(ar_is_isomorphism(ar_from_hom(E.proj), 6).verdict == Verdict::Yes);
  }
}

TEST_CASE("l-adic towers grow") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng(kSeed, 4, i);
    const Tower L = to_tower(random_zl_module(rng, 3, small()), 7);
    CHECK(is_l_adic(L).verdict == Verdict::Yes);
    for (std::size_t n = 1; n < L.size(); ++n) CHECK(L.level(n).order() >= L.level(n - 1).order());
  }
}

TEST_CASE("AR composition is associative and unital") {
  for (std::uint64_t i = 0; i < 25; ++i) {
    Rng rng(kSeed, 5, i);
    const GenParams p = small();
    const Prime l = random_prime(rng, p);
    const ZlModule M = random_zl_module(rng, l, p);
    const Tower F = to_tower(M, p.levels);
    auto endo = [&] {
      ARMor m = ar_from_hom(zl_map_tower(M, M, random_zl_map(rng, M, M), p.levels));
      if (rng.chance(1, 2)) m = ar_reshift(m, 1);
      return m;
    };
    const ARMor f = endo(), g = endo(), k = endo();
    CHECK(ar_equal(ar_compose(k, ar_compose(g, f)), ar_compose(ar_compose(k, g), f), 4) == Verdict::Yes);
    CHECK(ar_equal(ar_compose(ar_identity(F), f), f, 4) == Verdict::Yes);
    CHECK(ar_equal(ar_compose(f, ar_identity(F)), f, 4) == Verdict::Yes);
  }
}

TEST_CASE("morphisms between l-adic towers have unique shift-0 representatives") {
  for (std::uint64_t i = 0; i < 25; ++i) {
    Rng rng(kSeed, 6, i);
    const GenParams p = small();
    const Prime l = random_prime(rng, p);
    const ZlModule a = random_zl_module(rng, l, p), b = random_zl_module(rng, l, p);
    const TowerHom f = zl_map_tower(a, b, random_zl_map(rng, a, b), p.levels);
    const TowerHom g = zl_map_tower(a, b, random_zl_map(rng, a, b), p.levels);
    const bool equal = f.levelwise_equal(g);
    CHECK((ar_equal(ar_from_hom(f), ar_from_hom(g), 0) == Verdict::Yes) == equal);
    // a further shifted representative comes back to f
    const TowerHom back = shift_zero_representative(ar_reshift(ar_from_hom(f), 2), p.levels);
    const std::size_t k = std::min(back.size(), f.size());
    CHECK(back.prefix(k).levelwise_equal(f.prefix(k)));
  }
}

TEST_CASE("canonical replacement is idempotent and an AR-isomorphism") {
  for (std::uint64_t i = 0; i < 25; ++i) {
    Rng rng(kSeed, 7, i);
    const ARInstance I = random_ar_l_adic(rng, small());
    const CanonicalLAdic c = canonical_l_adic(I.F, 6);
    CHECK(is_l_adic(c.G).verdict == Verdict::Yes);
    CHECK(ar_is_isomorphism(c.iso, 6).verdict == Verdict::Yes);
    const CanonicalLAdic again = canonical_l_adic(c.G, 6);
    CHECK(again.r + again.ml_bound == 0);
    CHECK(again.G.prefix(common(again.G, c.G)).levelwise_isomorphic(c.G.prefix(common(again.G, c.G))));
    CHECK(limit(c.G).same_shape(I.lambda));
  }
}

TEST_CASE("upsilon is additive and functorial") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(kSeed, 8, i);
    GenParams p = small();
    p.primes = {2};
    const ARInstance A = random_ar_l_adic(rng, p), B = random_ar_l_adic(rng, p);
    const UpsilonObj ua = upsilon(A.F, h, 6), ub = upsilon(B.F, h, 6);
    const UpsilonObj us = upsilon(direct_sum(A.F, B.F).tower, h, 6);
    for (std::size_t k = 1; k <= 4; ++k)
      CHECK(us.quotient(k).invariant_factors() ==
            direct_sum(ua.quotient(k), ub.quotient(k)).group.invariant_factors());

    const ZlModule M = A.lambda;
    const ARMor f = ar_from_hom(zl_map_tower(M, M, random_zl_map(rng, M, M), p.levels));
    const ARMor g = ar_from_hom(zl_map_tower(M, M, random_zl_map(rng, M, M), p.levels));
    const TowerHom lhs = upsilon_mor(ar_compose(g, f), h, 4).rep;
    const TowerHom rhs = compose(upsilon_mor(g, h, 4).rep, upsilon_mor(f, h, 4).rep);
    const std::size_t k = std::min(lhs.size(), rhs.size());
    CHECK(lhs.prefix(k).levelwise_equal(rhs.prefix(k)));
  }
}

TEST_CASE("limits and towers are inverse") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng(kSeed, 9, i);
    GenParams p;
    p.max_exp = 5;
    p.max_torsion = 3;
    p.max_rank = 3;
    const Prime l = random_prime(rng, p);
    const ZlModule M = random_zl_module(rng, l, p);
    const Tower T = to_tower(M, 8);
    CHECK(limit(T) == M);
    CHECK(to_tower(limit(T), 8).levelwise_isomorphic(T));
    // the free rank is the eventual growth of log_l |L_n|
    const Integer big = T.level(7).order() / T.level(6).order();
    Integer expect = 1;
    for (std::size_t r = 0; r < rank_ql(M); ++r) expect *= l;
    CHECK(big == expect);
    CHECK(ZlModule::parse(M.to_string(), l).same_shape(M));
  }
}

TEST_CASE("tower files round trip") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(kSeed, 10, i);
    const ARInstance I = random_ar_l_adic(rng, small());
    const Tower F = I.F.extended(6).prefix(6);
    const std::string text = dump_tower_file(F.prime(), {{"t", F}}, 6);
    const TowerFile back = parse_tower_file(text);
    const Tower& G = back.tower("t");
    CHECK(G.size() == 6);
    CHECK(G.prefix(6).levelwise_equal(F.prefix(6)));
  }
}

TEST_CASE("hypernatural terms") {
  const std::vector<std::string> names{"h", "d1", "d2"};
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(kSeed, 11, i);
    auto term = [&] {
      std::map<std::string, unsigned long> c;
      for (const auto& n : names) c[n] = static_cast<unsigned long>(rng.range(0, 2));
      bool inf = false;
      for (auto& kv : c) inf = inf || kv.second > 0;
      return HyperNat(Integer(rng.range(inf ? -3 : 0, 5)), c);
    };
    const HyperNat a = term(), b = term();
    CHECK(HyperNat::parse(a.to_string()) == a);
    CHECK(hn_sub(hn_add(a, b), b) == a);
    const HyperOrder ab = hn_compare(a, b), ba = hn_compare(b, a);
    if (ab == HyperOrder::LT) CHECK(ba == HyperOrder::GT);
    if (ab == HyperOrder::EQ) CHECK(a == b);
    if (ab == HyperOrder::Incomparable) CHECK(ba == HyperOrder::Incomparable);
    if (a.is_infinite() && !b.is_infinite()) CHECK(ab == HyperOrder::GT);
  }
}
