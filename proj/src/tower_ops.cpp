#include "arl/tower_ops.hpp"

#include <algorithm>
#include <cstdlib>

namespace arl {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidTower, msg); }

std::vector<std::size_t> kept_coordinates(const FinAbGroup& g, const Integer& n) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (gcd(g.invariant_factors()[i], n) != 1) keep.push_back(i);
  return keep;
}

std::optional<TailProfile> shifted_profile(const std::optional<TailProfile>& p, std::size_t r) {
  if (!p) return std::nullopt;
  TailProfile q = *p;
  q.start = p->start > r ? p->start - r : 0;
  for (auto& c : q.offsets) c += r;
  return q;
}

bool is_zero_tail(const Tower& F) { return F.tail().kind == TailRule::Kind::ZeroTail; }

}  // namespace

// ---------------------------------------------------------------- basic towers

Tower constant_tower(Prime l, const FinAbGroup& g0, const IntMatrix& transition, std::size_t levels) {
  if (levels == 0) invalid("a tower needs at least one level");
  const FinAbGroup g = g0.with_prime(l);
  if (g.is_trivial()) return trivial_tower(l, levels);
  const GroupHom u(g, g, transition);
  std::vector<FinAbGroup> lv(levels, g);
  std::vector<GroupHom> tr(levels - 1, u);
  std::optional<TailProfile> profile;
  if (u.is_surjective()) profile = TailProfile{0, g.exponents(), {}};
  auto ext = [l, g, transition](std::size_t m) { return constant_tower(l, g, transition, m); };
  return Tower(l, std::move(lv), std::move(tr), TailRule::derived(TailRule::Kind::Derived, {}, 0, "constant"), profile,
               ext);
}

Tower trivial_tower(Prime l, std::size_t levels) {
  if (levels == 0) invalid("a tower needs at least one level");
  const FinAbGroup z = FinAbGroup::trivial(l);
  return Tower(l, std::vector<FinAbGroup>(levels, z), std::vector<GroupHom>(levels - 1, GroupHom::identity(z)),
               TailRule::zero_tail(0));
}

Tower shift(const Tower& F0, std::size_t r) {
  if (r == 0) return F0;
  const Tower F = F0.extended(r + 1);
  if (F.size() <= r) invalid("cannot shift a tower with " + std::to_string(F.size()) + " levels by " + std::to_string(r));
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr;
  for (std::size_t n = r; n < F.size(); ++n) {
    lv.push_back(F.level(n));
    if (n > r) tr.push_back(F.transition(n));
  }
  Certificates c;
  c.zero_radius = F.certificates().zero_radius;
  c.ml_bound = F.certificates().ml_bound;
  c.star = F.certificates().star;
  Tower::Extender ext;
  if (F.generative()) ext = [F, r](std::size_t m) { return shift(F.extended(m + r), r); };
  TailRule tail = is_zero_tail(F) ? TailRule::zero_tail(F.tail().start > r ? F.tail().start - r : 0)
                                  : TailRule::derived(TailRule::Kind::Shift, {F}, r);
  return Tower(F.prime(), std::move(lv), std::move(tr), std::move(tail), shifted_profile(F.profile(), r), ext)
      .with_certificates(c);
}

TowerHom natural_map(const Tower& F0, std::size_t r) {
  if (r == 0) return identity_hom(F0);
  const Tower F = F0.extended(r + 1);
  const Tower S = shift(F, r);
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < S.size(); ++n) maps.push_back(F.composite(n, r));
  TowerHom::Extender ext;
  if (F.generative()) ext = [F, r](std::size_t m) { return natural_map(F.extended(m + r), r); };
  return TowerHom(S, F, std::move(maps), ext);
}

TowerHom identity_hom(const Tower& F) {
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < F.size(); ++n) maps.push_back(GroupHom::identity(F.level(n)));
  TowerHom::Extender ext;
  if (F.generative()) ext = [F](std::size_t m) { return identity_hom(F.extended(m)); };
  return TowerHom(F, F, std::move(maps), ext);
}

TowerHom zero_hom(const Tower& F, const Tower& G) {
  const std::size_t k = std::min(F.size(), G.size());
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < k; ++n) maps.push_back(GroupHom::zero(F.level(n), G.level(n)));
  TowerHom::Extender ext;
  if (F.generative() && G.generative())
    ext = [F, G](std::size_t m) { return zero_hom(F.extended(m), G.extended(m)); };
  return TowerHom(F, G, std::move(maps), ext);
}

TowerHom compose(const TowerHom& g, const TowerHom& f) {
  const std::size_t k = std::min(f.size(), g.size());
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < k; ++n) maps.push_back(g.at(n).after(f.at(n)));
  TowerHom::Extender ext;
  if (f.generative() && g.generative())
    ext = [f, g](std::size_t m) { return compose(g.extended(m), f.extended(m)); };
  return TowerHom(f.source(), g.target(), std::move(maps), ext);
}

TowerHom add(const TowerHom& f, const TowerHom& g) {
  const std::size_t k = std::min(f.size(), g.size());
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < k; ++n) maps.push_back(f.at(n) + g.at(n));
  TowerHom::Extender ext;
  if (f.generative() && g.generative()) ext = [f, g](std::size_t m) { return add(f.extended(m), g.extended(m)); };
  return TowerHom(f.source(), f.target(), std::move(maps), ext);
}

TowerHom subtract(const TowerHom& f, const TowerHom& g) {
  const std::size_t k = std::min(f.size(), g.size());
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < k; ++n) maps.push_back(f.at(n) - g.at(n));
  TowerHom::Extender ext;
  if (f.generative() && g.generative())
    ext = [f, g](std::size_t m) { return subtract(f.extended(m), g.extended(m)); };
  return TowerHom(f.source(), f.target(), std::move(maps), ext);
}

TowerHom scale(const TowerHom& f, const Integer& c) {
  std::vector<GroupHom> maps;
  for (const auto& h : f.maps()) maps.emplace_back(h.source(), h.target(), h.matrix().scaled(c));
  TowerHom::Extender ext;
  if (f.generative()) ext = [f, c](std::size_t m) { return scale(f.extended(m), c); };
  return TowerHom(f.source(), f.target(), std::move(maps), ext);
}

TowerHom shift(const TowerHom& f0, std::size_t r) {
  if (r == 0) return f0;
  const TowerHom f = f0.extended(r + 1);
  if (f.size() <= r) invalid("cannot shift a morphism with " + std::to_string(f.size()) + " levels by " + std::to_string(r));
  std::vector<GroupHom> maps(f.maps().begin() + static_cast<std::ptrdiff_t>(r), f.maps().end());
  TowerHom::Extender ext;
  if (f.generative()) ext = [f, r](std::size_t m) { return shift(f.extended(m + r), r); };
  return TowerHom(shift(f.source(), r), shift(f.target(), r), std::move(maps), ext);
}

// ------------------------------------------------------- kernels and friends

LevelwiseSub levelwise_kernel(const TowerHom& f) {
  std::vector<SubgroupPresentation> P;
  for (std::size_t n = 0; n < f.size(); ++n) P.push_back(Subgroup::kernel_of(f.at(n)).present());
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, incl;
  for (std::size_t n = 0; n < P.size(); ++n) {
    lv.push_back(P[n].group());
    incl.push_back(P[n].inclusion());
    if (n > 0) tr.push_back(restrict_hom(f.source().transition(n), P[n], P[n - 1]));
  }
  Tower::Extender ext;
  TowerHom::Extender hext;
  if (f.generative()) {
    ext = [f](std::size_t m) { return levelwise_kernel(f.extended(m)).tower; };
    hext = [f](std::size_t m) { return levelwise_kernel(f.extended(m)).inclusion; };
  }
  TailRule tail = TailRule::derived(TailRule::Kind::Derived, {f.source(), f.target()}, 0, "kernel");
  std::optional<TailProfile> profile;
  if (is_zero_tail(f.source()) && f.source().tail().start < lv.size()) {
    tail = TailRule::zero_tail(f.source().tail().start);
    profile = TailProfile{tail.start, {}, {}};
  } else if (!f.generative()) {
    tail = TailRule::truncated();
  }
  Tower K(f.source().prime(), std::move(lv), std::move(tr), std::move(tail), profile, ext);
  return {K, TowerHom(K, f.source(), std::move(incl), hext)};
}

LevelwiseSub levelwise_image(const TowerHom& f) {
  std::vector<SubgroupPresentation> P;
  for (std::size_t n = 0; n < f.size(); ++n) P.push_back(Subgroup::image_of(f.at(n)).present());
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, incl;
  for (std::size_t n = 0; n < P.size(); ++n) {
    lv.push_back(P[n].group());
    incl.push_back(P[n].inclusion());
    if (n > 0) tr.push_back(restrict_hom(f.target().transition(n), P[n], P[n - 1]));
  }
  Tower::Extender ext;
  TowerHom::Extender hext;
  if (f.generative()) {
    ext = [f](std::size_t m) { return levelwise_image(f.extended(m)).tower; };
    hext = [f](std::size_t m) { return levelwise_image(f.extended(m)).inclusion; };
  }
  TailRule tail = TailRule::derived(TailRule::Kind::Derived, {f.source(), f.target()}, 0, "image");
  std::optional<TailProfile> profile;
  std::optional<std::size_t> zs;
  if (is_zero_tail(f.source())) zs = f.source().tail().start;
  if (is_zero_tail(f.target())) zs = std::min(zs.value_or(f.target().tail().start), f.target().tail().start);
  if (zs && *zs < lv.size()) {
    tail = TailRule::zero_tail(*zs);
    profile = TailProfile{*zs, {}, {}};
  } else if (!f.generative()) {
    tail = TailRule::truncated();
  }
  Tower I(f.target().prime(), std::move(lv), std::move(tr), std::move(tail), profile, ext);
  return {I, TowerHom(I, f.target(), std::move(incl), hext)};
}

LevelwiseQuotient levelwise_cokernel(const TowerHom& f) {
  std::vector<QuotientPresentation> Q;
  for (std::size_t n = 0; n < f.size(); ++n) Q.push_back(Subgroup::image_of(f.at(n)).quotient());
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, proj;
  for (std::size_t n = 0; n < Q.size(); ++n) {
    lv.push_back(Q[n].group());
    proj.push_back(Q[n].projection());
    if (n > 0) tr.push_back(induced_on_quotients(f.target().transition(n), Q[n], Q[n - 1]));
  }
  Tower::Extender ext;
  TowerHom::Extender hext;
  if (f.generative()) {
    ext = [f](std::size_t m) { return levelwise_cokernel(f.extended(m)).tower; };
    hext = [f](std::size_t m) { return levelwise_cokernel(f.extended(m)).projection; };
  }
  TailRule tail = TailRule::derived(TailRule::Kind::Derived, {f.source(), f.target()}, 0, "cokernel");
  std::optional<TailProfile> profile;
  if (is_zero_tail(f.target()) && f.target().tail().start < lv.size()) {
    tail = TailRule::zero_tail(f.target().tail().start);
    profile = TailProfile{tail.start, {}, {}};
  } else if (!f.generative()) {
    tail = TailRule::truncated();
  }
  Tower C(f.target().prime(), std::move(lv), std::move(tr), std::move(tail), profile, ext);
  return {C, TowerHom(f.target().prefix(C.size()), C, std::move(proj), hext)};
}

LevelwiseQuotient mod_power(const Tower& F, std::size_t k) {
  const Integer lk = ipow(Integer(F.prime()), k);
  std::vector<QuotientObject> Q;
  std::vector<std::vector<std::size_t>> keep;
  for (std::size_t n = 0; n < F.size(); ++n) {
    Q.push_back(quotient_by_integer(F.level(n), lk));
    keep.push_back(kept_coordinates(F.level(n), lk));
  }
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, proj;
  for (std::size_t n = 0; n < Q.size(); ++n) {
    lv.push_back(Q[n].group);
    proj.push_back(Q[n].projection);
    if (n > 0)
      tr.emplace_back(Q[n].group, Q[n - 1].group,
                      F.transition(n).matrix().select_rows(keep[n - 1]).select_columns(keep[n]));
  }
  std::optional<TailProfile> profile;
  if (F.profile()) {
    TailProfile p;
    p.start = F.profile()->start;
    if (k > 0) {
      for (auto a : F.profile()->torsion) p.torsion.push_back(std::min<unsigned long>(a, k));
      for (auto c : F.profile()->offsets) {
        p.torsion.push_back(k);
        if (k > c + 1) p.start = std::max<std::size_t>(p.start, k - 1 - c);
      }
      std::sort(p.torsion.begin(), p.torsion.end());
    }
    profile = p;
  }
  Tower::Extender ext;
  if (F.generative()) ext = [F, k](std::size_t m) { return mod_power(F.extended(m), k).tower; };
  TailRule tail = k == 0 ? TailRule::zero_tail(0) : TailRule::derived(TailRule::Kind::ModPower, {F}, k);
  if (is_zero_tail(F)) tail = TailRule::zero_tail(F.tail().start);
  if (profile && profile->start >= lv.size()) profile.reset();
  Tower M(F.prime(), std::move(lv), std::move(tr), std::move(tail), profile, ext);
  TowerHom::Extender hext;
  if (F.generative()) hext = [F, k](std::size_t m) { return mod_power(F.extended(m), k).projection; };
  return {M, TowerHom(F, M, std::move(proj), hext)};
}

TowerSum direct_sum(const Tower& F0, const Tower& G0) {
  if (F0.prime() != G0.prime()) throw Error(ErrorKind::PrimeMismatch, "direct sum of towers over different primes");
  const std::size_t want = std::max(F0.size(), G0.size());
  const Tower F = F0.extended(want), G = G0.extended(want);
  const std::size_t k = std::min(F.size(), G.size());
  std::vector<DirectSum> S;
  for (std::size_t n = 0; n < k; ++n) S.push_back(arl::direct_sum(F.level(n), G.level(n)));
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, i1, i2, p1, p2;
  for (std::size_t n = 0; n < k; ++n) {
    lv.push_back(S[n].group);
    i1.push_back(S[n].inj1);
    i2.push_back(S[n].inj2);
    p1.push_back(S[n].proj1);
    p2.push_back(S[n].proj2);
    if (n > 0) {
      IntMatrix m = S[n - 1].inj1.matrix() * F.transition(n).matrix() * S[n].proj1.matrix() +
                    S[n - 1].inj2.matrix() * G.transition(n).matrix() * S[n].proj2.matrix();
      tr.emplace_back(S[n].group, S[n - 1].group, m);
    }
  }
  std::optional<TailProfile> profile;
  if (F.profile() && G.profile()) {
    TailProfile p;
    p.start = std::max(F.profile()->start, G.profile()->start);
    p.torsion = F.profile()->torsion;
    p.torsion.insert(p.torsion.end(), G.profile()->torsion.begin(), G.profile()->torsion.end());
    std::sort(p.torsion.begin(), p.torsion.end());
    p.offsets = F.profile()->offsets;
    p.offsets.insert(p.offsets.end(), G.profile()->offsets.begin(), G.profile()->offsets.end());
    std::sort(p.offsets.begin(), p.offsets.end());
    if (p.start < k) profile = p;
  }
  TailRule tail = TailRule::derived(TailRule::Kind::Sum, {F, G});
  if (is_zero_tail(F) && is_zero_tail(G)) tail = TailRule::zero_tail(std::max(F.tail().start, G.tail().start));
  const bool gen = F.generative() && G.generative();
  Tower::Extender ext;
  if (gen) ext = [F, G](std::size_t m) { return direct_sum(F.extended(m), G.extended(m)).tower; };
  if (tail.kind == TailRule::Kind::ZeroTail && tail.start >= k) tail = TailRule::derived(TailRule::Kind::Sum, {F, G});
  if (!gen && tail.kind != TailRule::Kind::ZeroTail) tail = TailRule::truncated();
  Certificates c;
  c.l_adic = F.certificates().l_adic && G.certificates().l_adic;
  Tower T = Tower(F.prime(), std::move(lv), std::move(tr), std::move(tail), profile, ext).with_certificates(c);

  auto piece = [&](int which) {
    TowerHom::Extender hx;
    if (gen)
      hx = [F, G, which](std::size_t m) {
        auto s = direct_sum(F.extended(m), G.extended(m));
        switch (which) {
          case 0: return s.inj1;
          case 1: return s.inj2;
          case 2: return s.proj1;
          default: return s.proj2;
        }
      };
    return hx;
  };
  return {T,
          TowerHom(F.prefix(k), T, std::move(i1), piece(0)),
          TowerHom(G.prefix(k), T, std::move(i2), piece(1)),
          TowerHom(T, F.prefix(k), std::move(p1), piece(2)),
          TowerHom(T, G.prefix(k), std::move(p2), piece(3))};
}

TowerHom direct_sum(const TowerHom& f, const TowerHom& g) {
  const auto S = direct_sum(f.source(), g.source());
  const auto T = direct_sum(f.target(), g.target());
  const std::size_t k = std::min({f.size(), g.size(), S.tower.size(), T.tower.size()});
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < k; ++n) {
    IntMatrix m = T.inj1.at(n).matrix() * f.at(n).matrix() * S.proj1.at(n).matrix() +
                  T.inj2.at(n).matrix() * g.at(n).matrix() * S.proj2.at(n).matrix();
    maps.emplace_back(S.tower.level(n), T.tower.level(n), m);
  }
  TowerHom::Extender ext;
  if (f.generative() && g.generative())
    ext = [f, g](std::size_t m) { return direct_sum(f.extended(m), g.extended(m)); };
  return TowerHom(S.tower, T.tower, std::move(maps), ext);
}

// ---------------------------------------------------------------- predicates

std::size_t default_bound(const Tower& F) {
  if (const char* env = std::getenv("ARL_DEFAULT_BOUND")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return F.top();
}

std::size_t observation_levels(const Tower& F, std::size_t bound) {
  std::size_t w = std::max(F.size(), 2 * bound + 4);
  if (F.profile()) w = std::max(w, F.profile()->start + bound + 3);
  return w;
}

ZeroSystemResult is_zero_system(const Tower& F0, std::size_t bound) {
  ZeroSystemResult res;
  const auto& prof = F0.profile();
  if (prof && !prof->is_zero()) {
    const Tower F = F0.extended(prof->start + 1);
    res.verdict = Verdict::No;
    res.level = prof->start;
    res.tail_certified = true;
    res.levels_checked = F.size();
    res.detail = "transitions are onto a nonzero group from level " + std::to_string(prof->start) + " on";
    return res;
  }
  if (prof) {
    // F_n = 0 for n >= p, so F[p] -> F vanishes; look for the least radius.
    const std::size_t p = prof->start;
    const Tower F = F0.extended(p + 1);
    for (std::size_t r = 0; r <= p; ++r) {
      bool zero = true;
      for (std::size_t n = 0; n + r < std::min(p, F.size()) && zero; ++n) zero = F.composite(n, r).is_zero();
      if (zero) {
        res.verdict = Verdict::Yes;
        res.radius = r;
        res.tail_certified = true;
        res.levels_checked = F.size();
        res.detail = "levels vanish from " + std::to_string(p) + " on";
        return res;
      }
    }
  }
  if (auto r = F0.certificates().zero_radius) {
    res.verdict = Verdict::Yes;
    res.radius = *r;
    res.detail = "certificate";
    return res;
  }
  const Tower F = F0.extended(observation_levels(F0, bound));
  res.levels_checked = F.size();
  for (std::size_t r = 0; r <= bound && r < F.size(); ++r) {
    bool zero = true;
    for (std::size_t n = 0; n + r < F.size() && zero; ++n) zero = F.composite(n, r).is_zero();
    if (zero) {
      res.verdict = Verdict::Yes;
      res.radius = r;
      res.detail = "composites vanish through level " + std::to_string(F.top());
      return res;
    }
  }
  for (std::size_t n = 0; n < F.size(); ++n) {
    std::optional<Subgroup> prev;
    for (std::size_t r = 0; n + r < F.size(); ++r) {
      Subgroup im = Subgroup::image_of(F.composite(n, r));
      if (prev && *prev == im && !im.is_zero()) {
        res.verdict = Verdict::No;
        res.level = n;
        res.detail = "image in level " + std::to_string(n) + " stabilizes at a nonzero subgroup";
        return res;
      }
      prev = im;
    }
  }
  res.detail = "no vanishing radius up to the bound";
  return res;
}

LAdicResult is_l_adic(const Tower& F0, std::size_t levels) {
  LAdicResult res;
  const auto& prof = F0.profile();
  std::size_t want = levels ? levels : std::max<std::size_t>(F0.size(), 12);
  if (prof) {
    std::size_t s = prof->start;
    for (auto a : prof->torsion) s = std::max<std::size_t>(s, a);
    want = std::max(want, s + 2);
  }
  const Tower F = F0.extended(want);
  res.levels_checked = F.size();
  const Integer l(F.prime());
  Integer lp = 1;
  for (std::size_t n = 0; n < F.size(); ++n) {
    lp *= l;  // l^{n+1}
    if (!F.level(n).annihilated_by(lp)) {
      res.verdict = Verdict::No;
      res.level = n;
      res.detail = "l^" + std::to_string(n + 1) + " does not annihilate F_" + std::to_string(n);
      return res;
    }
    if (n + 1 < F.size()) {
      const auto q = quotient_by_integer(F.level(n + 1), lp);
      const IntMatrix m = F.transition(n + 1).matrix() * q.projection.matrix().transpose();
      const GroupHom induced(q.group, F.level(n), m);
      if (!induced.is_isomorphism()) {
        res.verdict = Verdict::No;
        res.level = n;
        res.detail = "F_" + std::to_string(n + 1) + "/l^" + std::to_string(n + 1) + " -> F_" + std::to_string(n) +
                     " is not an isomorphism";
        return res;
      }
    }
  }
  res.verdict = Verdict::Yes;
  if (prof && prof->l_adic_shape() && F.size() > prof->start + 1) {
    res.tail_certified = true;
    res.detail = "tail profile is l-adic from level " + std::to_string(prof->start);
  } else if (prof) {
    res.verdict = Verdict::No;
    res.level = prof->start;
    res.detail = "tail profile grows faster than l^{n+1}";
  } else {
    res.detail = "checked through level " + std::to_string(F.top());
  }
  return res;
}

}  // namespace arl
