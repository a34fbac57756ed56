#include "arl/random.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace arl {

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

long Rng::range(long lo, long hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

Prime random_prime(Rng& rng, const GenParams& p) {
  return p.primes[static_cast<std::size_t>(rng.range(0, static_cast<long>(p.primes.size()) - 1))];
}

ZlModule random_zl_module(Rng& rng, Prime l, const GenParams& p) {
  std::vector<unsigned long> torsion;
  const long k = rng.range(0, static_cast<long>(p.max_torsion));
  for (long i = 0; i < k; ++i) torsion.push_back(static_cast<unsigned long>(rng.range(1, static_cast<long>(p.max_exp))));
  std::sort(torsion.begin(), torsion.end());
  const auto rho = static_cast<std::size_t>(rng.range(0, static_cast<long>(p.max_rank)));
  return ZlModule(l, torsion, rho);
}

namespace {

Integer lpow(Prime l, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), l, e);
  return r;
}

// Exponent of generator i: its torsion exponent, or 0 for a free generator.
unsigned long gen_exp(const ZlModule& m, std::size_t i) { return i < m.torsion().size() ? m.torsion()[i] : 0; }

GroupHom random_group_hom(Rng& rng, const FinAbGroup& s, const FinAbGroup& t, Prime l) {
  IntMatrix m(t.rank(), s.rank());
  const auto se = s.exponents(), te = t.exponents();
  for (std::size_t i = 0; i < t.rank(); ++i)
    for (std::size_t j = 0; j < s.rank(); ++j) {
      const unsigned long gap = te[i] > se[j] ? te[i] - se[j] : 0;
      m(i, j) = Integer(rng.range(0, static_cast<long>(l * l))) * lpow(l, gap);
    }
  return GroupHom(s, t, m);
}

FinAbGroup random_small_group(Rng& rng, Prime l, const GenParams& p) {
  const long cap = static_cast<long>(std::max<unsigned long>(p.zero_order, 1));
  const long e1 = rng.range(1, std::min(4L, cap));
  std::vector<unsigned long> e{static_cast<unsigned long>(e1)};
  if (cap - e1 >= 1 && rng.chance(1, 2)) e.push_back(static_cast<unsigned long>(rng.range(1, cap - e1)));
  return FinAbGroup::l_primary(l, e);
}

Extension build_extension(const Tower& N0, const Tower& G0, const std::vector<IntMatrix>& twists, std::size_t k) {
  const Tower G = G0.require(k);
  const Tower N = N0.require(k);
  std::vector<DirectSum> ds;
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, incl, proj;
  for (std::size_t n = 0; n < k; ++n) {
    ds.push_back(direct_sum(N.level(n), G.level(n)));
    lv.push_back(ds[n].group);
    incl.push_back(ds[n].inj1);
    proj.push_back(ds[n].proj2);
    if (n == 0) continue;
    GroupHom u = ds[n - 1].inj1.after(N.transition(n)).after(ds[n].proj1) +
                 ds[n - 1].inj2.after(G.transition(n)).after(ds[n].proj2);
    if (n - 1 < twists.size())
      u = u + ds[n - 1].inj1.after(GroupHom(G.level(n), N.level(n - 1), twists[n - 1])).after(ds[n].proj2);
    tr.push_back(u);
  }
  std::optional<TailProfile> profile;
  if (G.profile()) {
    TailProfile q = *G.profile();
    q.start = std::max(q.start, N.tail().start);
    if (q.start < k) profile = q;
  }
  Tower::Extender ext = [N0, G0, twists](std::size_t m) { return build_extension(N0, G0, twists, m).F; };
  Tower F(G.prime(), std::move(lv), std::move(tr), TailRule::derived(TailRule::Kind::Derived, {N0, G0}, 0, "extension"),
          profile, ext);
  TowerHom::Extender iext = [N0, G0, twists](std::size_t m) { return build_extension(N0, G0, twists, m).incl; };
  TowerHom::Extender pext = [N0, G0, twists](std::size_t m) { return build_extension(N0, G0, twists, m).proj; };
  return Extension{N, F, G, TowerHom(N, F, std::move(incl), iext), TowerHom(F, G, std::move(proj), pext)};
}

Extension extension_of(Rng& rng, const Tower& G, const GenParams& p) {
  const Prime l = G.prime();
  const Tower N = random_zero_system(rng, l, p, true);
  const std::size_t s = N.tail().start;
  const Tower Ge = G.require(s + 2);
  std::vector<IntMatrix> twists;
  for (std::size_t n = 0; n < s; ++n)
    twists.push_back(random_group_hom(rng, Ge.level(n + 1), N.level(n), l).matrix());
  return build_extension(N, G, twists, std::max(p.levels, s + 1));
}

}  // namespace

IntMatrix random_zl_map(Rng& rng, const ZlModule& lambda, const ZlModule& mu) {
  const Prime l = lambda.prime();
  IntMatrix a(mu.generator_count(), lambda.generator_count());
  for (std::size_t i = 0; i < mu.generator_count(); ++i)
    for (std::size_t j = 0; j < lambda.generator_count(); ++j) {
      const unsigned long b = gen_exp(mu, i), c = gen_exp(lambda, j);
      if (b == 0 && c != 0) continue;  // torsion cannot reach a free generator
      const unsigned long gap = (b != 0 && c != 0 && b > c) ? b - c : 0;
      a(i, j) = Integer(rng.range(0, static_cast<long>(l * l))) * lpow(l, gap);
    }
  return a;
}

TowerHom zl_map_tower(const ZlModule& lambda, const ZlModule& mu, const IntMatrix& a, std::size_t levels) {
  const Tower A = to_tower(lambda, levels), B = to_tower(mu, levels);
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < levels; ++n) maps.emplace_back(A.level(n), B.level(n), a);
  return TowerHom(A, B, std::move(maps),
                  [lambda, mu, a](std::size_t k) { return zl_map_tower(lambda, mu, a, k); });
}

Tower random_zero_system(Rng& rng, Prime l, const GenParams& p, bool zero_tail_only) {
  const long max_r = static_cast<long>(p.max_radius);
  if (!zero_tail_only && max_r >= 1 && rng.chance(1, 4)) {
    const auto a = static_cast<unsigned long>(rng.range(1, std::min(3L, max_r)));
    return constant_tower(l, FinAbGroup::l_primary(l, {a}), IntMatrix{{static_cast<long>(l)}}, p.levels);
  }
  const auto s = static_cast<std::size_t>(rng.range(0, max_r));
  if (s == 0) return trivial_tower(l, 1);
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr;
  for (std::size_t n = 0; n < s; ++n) {
    lv.push_back(random_small_group(rng, l, p));
    if (n > 0) tr.push_back(random_group_hom(rng, lv[n], lv[n - 1], l));
  }
  return Tower(l, std::move(lv), std::move(tr), TailRule::zero_tail(s));
}

Extension random_extension(Rng& rng, Prime l, const GenParams& p) {
  return extension_of(rng, to_tower(random_zl_module(rng, l, p), p.levels), p);
}

ARInstance random_ar_l_adic(Rng& rng, const GenParams& p, bool with_operator) {
  const Prime l = random_prime(rng, p);
  ZlModule M = random_zl_module(rng, l, p);
  if (with_operator && !M.is_zero())
    M = ZlModule(l, M.torsion(), M.free_rank(), {{"Frob", random_zl_map(rng, M, M)}});
  const Tower L = to_tower(M, p.levels);
  std::function<std::pair<Tower, std::string>(int)> make = [&](int depth) -> std::pair<Tower, std::string> {
    switch (rng.range(0, depth == 0 ? 3 : 2)) {
      case 0:
        return {L, "l-adic"};
      case 1:
        return {direct_sum(L, random_zero_system(rng, l, p)).tower, "l-adic+zero"};
      case 2:
        return {extension_of(rng, L, p).F, "extension"};
      default: {
        const auto k = static_cast<std::size_t>(rng.range(1, 2));
        auto inner = make(depth + 1);
        return {shift(inner.first, k), "shift" + std::to_string(k) + "(" + inner.second + ")"};
      }
    }
  };
  auto [F, recipe] = make(0);
  return {F, M, recipe + " over " + M.to_string() + ", l=" + std::to_string(l)};
}

namespace {

struct Decorated {
  Tower tower;
  TowerHom into;    // base -> decorated
  TowerHom out_of;  // decorated -> base
  std::string how;
};

// The base tower, or the base plus a zero system, with the canonical maps.
Decorated decorate(Rng& rng, const Tower& base, const GenParams& p) {
  if (rng.chance(1, 2)) return {base, identity_hom(base), identity_hom(base), ""};
  const TowerSum S = direct_sum(base, random_zero_system(rng, base.prime(), p));
  return {S.tower, S.inj1, S.proj1, "+zero"};
}

}  // namespace

MorInstance random_ar_morphism(Rng& rng, const GenParams& p) {
  const Prime l = random_prime(rng, p);
  const ZlModule M1 = random_zl_module(rng, l, p);
  ZlModule M2 = rng.chance(1, 2) ? M1 : random_zl_module(rng, l, p);
  IntMatrix a;
  std::string kind;
  switch (rng.range(0, 3)) {
    case 0:
      kind = "zero";
      a = IntMatrix(M2.generator_count(), M1.generator_count());
      break;
    case 1: {
      M2 = M1;
      long c = rng.range(1, static_cast<long>(l * l));
      if (c % static_cast<long>(l) == 0) ++c;
      kind = "unit " + std::to_string(c);
      a = IntMatrix::identity(M1.generator_count()).scaled(Integer(c));
      break;
    }
    case 2: {
      M2 = M1;
      const auto e = static_cast<unsigned long>(rng.range(1, 2));
      kind = "l^" + std::to_string(e);
      a = IntMatrix::identity(M1.generator_count()).scaled(lpow(l, e));
      break;
    }
    default:
      kind = "random";
      a = random_zl_map(rng, M1, M2);
  }
  const TowerHom h = zl_map_tower(M1, M2, a, p.levels);
  std::string recipe = kind + " " + M1.to_string() + " -> " + M2.to_string();
  TowerHom f = h;
  if (rng.chance(1, 3)) {
    const Extension E = extension_of(rng, h.source(), p);
    f = compose(f, E.proj);
    recipe = "extension " + recipe;
  } else {
    const Decorated src = decorate(rng, h.source(), p);
    f = compose(f, src.out_of);
    recipe = src.how + " " + recipe;
  }
  const Decorated tgt = decorate(rng, h.target(), p);
  f = compose(tgt.into, f);
  recipe += tgt.how;
  ARMor m = ar_from_hom(f);
  if (rng.chance(1, 3)) {
    m = ar_reshift(m, 1);
    recipe += " reshifted";
  }
  return {m, recipe + ", l=" + std::to_string(l)};
}

ExactInstance random_right_exact(Rng& rng, const GenParams& p) {
  const Prime l = random_prime(rng, p);
  const ZlModule M1 = random_zl_module(rng, l, p);
  const ZlModule M2 = random_zl_module(rng, l, p);
  const IntMatrix a = random_zl_map(rng, M1, M2);
  const TowerHom h = zl_map_tower(M1, M2, a, p.levels);
  const LevelwiseQuotient C = levelwise_cokernel(h);
  const Decorated dF = decorate(rng, h.source(), p);
  const Decorated dG = decorate(rng, h.target(), p);
  const Decorated dH = decorate(rng, C.tower, p);
  const TowerHom f = compose(dG.into, compose(h, dF.out_of));
  const TowerHom g = compose(dH.into, compose(C.projection, dG.out_of));
  return {ar_from_hom(f), ar_from_hom(g),
          M1.to_string() + dF.how + " -> " + M2.to_string() + dG.how + " -> coker" + dH.how + ", l=" +
              std::to_string(l)};
}

std::vector<ZlModule> all_modules(Prime l, unsigned long max_exp, std::size_t max_torsion, std::size_t max_rank) {
  std::vector<std::vector<unsigned long>> tors{{}};
  std::vector<std::vector<unsigned long>> frontier{{}};
  for (std::size_t k = 1; k <= max_torsion; ++k) {
    std::vector<std::vector<unsigned long>> next;
    for (const auto& t : frontier)
      for (unsigned long e = t.empty() ? 1 : t.back(); e <= max_exp; ++e) {
        auto u = t;
        u.push_back(e);
        next.push_back(u);
      }
    tors.insert(tors.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<ZlModule> out;
  for (const auto& t : tors)
    for (std::size_t r = 0; r <= max_rank; ++r) out.emplace_back(l, t, r);
  return out;
}

}  // namespace arl
