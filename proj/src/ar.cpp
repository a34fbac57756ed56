#include "arl/ar.hpp"

#include <algorithm>

namespace arl {

namespace {

void check_endpoints(const Tower& a, const Tower& b, const char* what) {
  if (a.prime() != b.prime() || !a.levelwise_isomorphic(b))
    throw Error(ErrorKind::CompositionMismatch, what);
}

// Stable images, the l-adic quotient G^{(r)} and the epimorphism F[r+s] -> G^{(r)},
// all computed from one (already extended) tower T.
struct CanonicalParts {
  std::vector<SubgroupPresentation> P;  // P[k] presents im(T_{k+s} -> T_k)
  std::vector<std::vector<std::size_t>> keep;
  Tower G;
  TowerHom pi;
};

std::vector<std::size_t> kept(const FinAbGroup& g, const Integer& n) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (gcd(g.invariant_factors()[i], n) != 1) keep.push_back(i);
  return keep;
}

CanonicalParts canonical_parts(const Tower& T, std::size_t s, std::size_t r) {
  if (T.size() <= s + r) throw Error(ErrorKind::NotARladic, "tower too short for the requested shifts");
  CanonicalParts c;
  for (std::size_t k = 0; k + s < T.size(); ++k) c.P.push_back(Subgroup::image_of(T.composite(k, s)).present());
  const std::size_t levels = c.P.size() - r;
  const Integer l(T.prime());
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, pi;
  Integer lp = 1;
  for (std::size_t n = 0; n < levels; ++n) {
    lp *= l;
    const auto& Pn = c.P[n + r];
    c.keep.push_back(kept(Pn.group(), lp));
    lv.push_back(quotient_by_integer(Pn.group(), lp).group);
    if (n > 0) {
      const GroupHom u = restrict_hom(T.transition(n + r), c.P[n + r], c.P[n + r - 1]);
      tr.emplace_back(lv[n], lv[n - 1], u.matrix().select_rows(c.keep[n - 1]).select_columns(c.keep[n]));
    }
    const GroupHom to_image = T.composite(n + r, s);
    IntMatrix m(Pn.group().rank(), to_image.source().rank());
    for (std::size_t j = 0; j < m.cols(); ++j) m.set_column(j, Pn.coords(to_image.matrix().column(j)));
    pi.emplace_back(T.level(n + r + s), lv[n], m.select_rows(c.keep[n]));
  }
  std::optional<TailProfile> profile;
  if (const auto& p = T.profile()) {
    TailProfile q;
    q.start = p->start > r ? p->start - r : 0;
    for (auto a : p->torsion) q.start = std::max<std::size_t>(q.start, a > 0 ? a - 1 : 0);
    q.torsion = p->torsion;
    q.offsets.assign(p->offsets.size(), 0);
    if (q.start < levels) profile = q;
  }
  Tower::Extender ext;
  TowerHom::Extender hext;
  if (T.generative()) {
    ext = [T, s, r](std::size_t m) { return canonical_parts(T.extended(m + r + s), s, r).G; };
    hext = [T, s, r](std::size_t m) { return canonical_parts(T.extended(m + r + s), s, r).pi; };
  }
  c.G = Tower(T.prime(), std::move(lv), std::move(tr), TailRule::derived(TailRule::Kind::Derived, {T}, r, "canonical"),
              profile, ext);
  c.pi = TowerHom(shift(T, r + s), c.G, std::move(pi), hext);
  return c;
}

// G[t] -> F lifting through the stable images; nullopt if some level is not well defined.
std::optional<TowerHom> canonical_inverse(const Tower& T, const CanonicalParts& c, std::size_t s, std::size_t r,
                                          std::size_t t) {
  if (c.G.size() <= t) return std::nullopt;
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n + t < c.G.size(); ++n) {
    const IntMatrix lift = c.P[n + t + r].inclusion().matrix().select_columns(c.keep[n + t]);
    const IntMatrix m = T.composite(n, t + r).matrix() * lift;
    try {
      maps.emplace_back(c.G.level(n + t), T.level(n), m);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  TowerHom::Extender ext;
  if (T.generative())
    ext = [T, s, r, t](std::size_t m) {
      const Tower Te = T.extended(m + t + r + s);
      auto h = canonical_inverse(Te, canonical_parts(Te, s, r), s, r, t);
      if (!h) throw Error(ErrorKind::NotARladic, "inverse stopped being well defined after extension");
      return *h;
    };
  return TowerHom(shift(c.G, t), T, std::move(maps), ext);
}

}  // namespace

ARMor ARMor::extended(std::size_t levels) const {
  ARMor m = *this;
  m.rep = rep.extended(levels);
  return m;
}

ARMor ar_from_hom(const TowerHom& f) { return ARMor{f.source(), f.target(), 0, f}; }
ARMor ar_identity(const Tower& F) { return ar_from_hom(identity_hom(F)); }
ARMor ar_zero(const Tower& F, const Tower& G) { return ar_from_hom(zero_hom(F, G)); }

ARMor ar_reshift(const ARMor& f, std::size_t q) {
  if (q < f.shift) throw Error(ErrorKind::CompositionMismatch, "cannot lower the shift of an AR morphism");
  if (q == f.shift) return f;
  const std::size_t d = q - f.shift;
  const Tower F = f.source.extended(f.rep.size() + q);
  const TowerHom nat = shift(natural_map(F, d), f.shift);
  return ARMor{f.source, f.target, q, compose(f.rep, nat)};
}

ARMor ar_compose(const ARMor& g, const ARMor& f) {
  check_endpoints(f.target, g.source, "target of f is not the source of g");
  const TowerHom fs = shift(f.rep.extended(g.rep.size() + g.shift), g.shift);
  return ARMor{f.source, g.target, f.shift + g.shift, compose(g.rep, fs)};
}

ARMor ar_subtract(const ARMor& f, const ARMor& g) {
  const std::size_t q = std::max(f.shift, g.shift);
  const ARMor a = ar_reshift(f, q), b = ar_reshift(g, q);
  return ARMor{f.source, f.target, q, subtract(a.rep, b.rep)};
}

Verdict ar_equal(const ARMor& f0, const ARMor& g0, std::size_t bound) {
  check_endpoints(f0.source, g0.source, "AR morphisms have different sources");
  check_endpoints(f0.target, g0.target, "AR morphisms have different targets");
  const std::size_t q0 = std::max(f0.shift, g0.shift);
  const std::size_t want = observation_levels(f0.target, bound) + bound + q0;
  const ARMor f = f0.extended(want), g = g0.extended(want);
  for (std::size_t q = q0; q <= q0 + bound; ++q) {
    const ARMor a = ar_reshift(f, q), b = ar_reshift(g, q);
    const std::size_t k = std::min(a.rep.size(), b.rep.size());
    if (k == 0) break;
    if (a.rep.prefix(k).levelwise_equal(b.rep.prefix(k))) return Verdict::Yes;
  }
  const ARMor d = ar_subtract(f, g);
  const auto z = is_zero_system(levelwise_image(d.rep).tower, bound);
  return z.verdict;
}

ZeroSystemResult is_ar_zero_object(const Tower& F, std::size_t bound) { return is_zero_system(F, bound); }

ZeroSystemResult ar_is_zero(const ARMor& f, std::size_t bound) {
  const ARMor e = f.extended(observation_levels(f.target, bound));
  return is_zero_system(levelwise_image(e.rep).tower, bound);
}

IsoResult ar_is_isomorphism(const ARMor& f, std::size_t bound) {
  const ARMor e = f.extended(observation_levels(f.target, bound));
  IsoResult res;
  res.kernel = is_zero_system(levelwise_kernel(e.rep).tower, bound);
  res.cokernel = is_zero_system(levelwise_cokernel(e.rep).tower, bound);
  if (res.kernel.verdict == Verdict::Yes && res.cokernel.verdict == Verdict::Yes)
    res.verdict = Verdict::Yes;
  else if (res.kernel.verdict == Verdict::No || res.cokernel.verdict == Verdict::No)
    res.verdict = Verdict::No;
  else
    res.verdict = Verdict::Unknown;
  return res;
}

std::optional<std::size_t> stable_image_bound(const Tower& F0, std::size_t bound) {
  if (F0.certificates().ml_bound) return F0.certificates().ml_bound;
  const Tower F = F0.extended(observation_levels(F0, bound));
  const std::size_t top = F.top();
  const std::size_t p = F.profile() ? std::min(F.profile()->start, top + 1) : top + 1;
  std::vector<std::vector<IntMatrix>> img(p);
  for (std::size_t m = 0; m < p; ++m)
    for (std::size_t s = 0; m + s <= top; ++s) img[m].push_back(Subgroup::image_of(F.composite(m, s)).lattice());
  for (std::size_t s = 0; s <= std::min(bound, top); ++s) {
    bool ok = true;
    for (std::size_t m = 0; m < p && ok; ++m)
      for (std::size_t t = s + 1; m + t <= top && ok; ++t) ok = img[m][t] == img[m][s];
    if (ok && (s == 0 || s + 1 <= top)) return s;
  }
  return std::nullopt;
}

LevelwiseSub stable_image_tower(const Tower& F0, std::size_t s) {
  const Tower F = F0.extended(s + 1);
  if (F.size() <= s) throw Error(ErrorKind::InvalidTower, "tower too short for stable images at shift " + std::to_string(s));
  std::vector<SubgroupPresentation> P;
  for (std::size_t n = 0; n + s < F.size(); ++n) P.push_back(Subgroup::image_of(F.composite(n, s)).present());
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr, incl;
  for (std::size_t n = 0; n < P.size(); ++n) {
    lv.push_back(P[n].group());
    incl.push_back(P[n].inclusion());
    if (n > 0) tr.push_back(restrict_hom(F.transition(n), P[n], P[n - 1]));
  }
  Tower::Extender ext;
  TowerHom::Extender hext;
  if (F.generative()) {
    ext = [F, s](std::size_t m) { return stable_image_tower(F.extended(m + s), s).tower; };
    hext = [F, s](std::size_t m) { return stable_image_tower(F.extended(m + s), s).inclusion; };
  }
  TailRule tail = TailRule::derived(TailRule::Kind::Derived, {F}, s, "stable-image");
  std::optional<TailProfile> profile;
  if (F.profile() && F.profile()->start < lv.size()) profile = F.profile();
  if (F.tail().kind == TailRule::Kind::ZeroTail) {
    const std::size_t z = F.tail().start > s ? F.tail().start - s : 0;
    if (z < lv.size()) {
      tail = TailRule::zero_tail(z);
      profile = TailProfile{z, {}, {}};
    }
  }
  if (!F.generative() && tail.kind != TailRule::Kind::ZeroTail) tail = TailRule::truncated();
  Tower S(F.prime(), std::move(lv), std::move(tr), std::move(tail), profile, ext);
  return {S, TowerHom(S, F, std::move(incl), hext)};
}

CanonicalLAdic canonical_l_adic(const Tower& F, std::size_t bound, std::optional<std::size_t> ml_override) {
  std::size_t s = 0;
  if (ml_override) {
    s = *ml_override;
  } else {
    auto sb = stable_image_bound(F, bound);
    if (!sb) throw Error(ErrorKind::NotARladic, "stable images do not stabilize within shift " + std::to_string(bound));
    s = *sb;
  }
  const std::size_t window = observation_levels(F, bound);
  const Tower T = F.extended(window + 2 * bound + s + 2);
  if (T.size() <= s) throw Error(ErrorKind::NotARladic, "tower too short to form stable images");
  for (std::size_t r = 0; r <= bound && r + s < T.size(); ++r) {
    CanonicalParts parts = canonical_parts(T, s, r);
    if (is_l_adic(parts.G).verdict != Verdict::Yes) continue;
    const auto z = is_zero_system(levelwise_kernel(parts.pi).tower, bound);
    if (z.verdict != Verdict::Yes) continue;
    for (std::size_t t = 0; t <= 2 * bound + 2; ++t) {
      auto psi = canonical_inverse(T, parts, s, r, t);
      if (!psi) continue;
      Certificates c;
      c.l_adic = true;
      c.ml_bound = 0;
      CanonicalLAdic out;
      out.G = parts.G.with_certificates(c);
      out.iso = ARMor{F, out.G, r + s, parts.pi};
      out.inverse = ARMor{out.G, F, t, *psi};
      out.ml_bound = s;
      out.r = r;
      out.kernel_radius = z.radius;
      out.kernel_tail_certified = z.tail_certified;
      return out;
    }
  }
  throw Error(ErrorKind::NotARladic, "no l-adic replacement with r <= " + std::to_string(bound));
}

CanonicalQuotient canonical_quotient(const Tower& F, std::size_t s, std::size_t r, std::size_t levels) {
  CanonicalParts parts = canonical_parts(F.extended(levels + r + s), s, r);
  return {parts.G, parts.pi};
}

ARCertificate certify_ar_l_adic(const Tower& F, std::size_t bound) {
  ARCertificate res;
  const auto s = stable_image_bound(F, bound);
  if (!s) {
    res.verdict = Verdict::No;
    res.detail = "images im(F_{n+s} -> F_n) do not stabilize for s <= " + std::to_string(bound);
    return res;
  }
  try {
    res.witness = canonical_l_adic(F, bound, s);
    res.verdict = Verdict::Yes;
    res.detail = "epimorphism F[" + std::to_string(res.witness->iso.shift) + "] -> G with zero-system kernel";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotARladic) throw;
    res.verdict = Verdict::Unknown;
    res.detail = e.what();
  }
  return res;
}

bool kernel_bound_check(const Tower& N0, const Tower& F0, const Tower& G0, const TowerHom& incl0,
                        const TowerHom& proj0, std::size_t r, std::size_t m, std::size_t n) {
  const std::size_t top = r + m + n;
  auto violated = [](const std::string& why) -> bool { throw Error(ErrorKind::PreconditionViolated, why); };
  const Tower N = N0.extended(top + 1), F = F0.extended(top + 1), G = G0.extended(top + 1);
  const TowerHom incl = incl0.extended(top + 1), proj = proj0.extended(top + 1);
  if (F.size() <= top || N.size() <= top || G.size() <= top || incl.size() <= top || proj.size() <= top)
    violated("towers do not reach level " + std::to_string(top));
  for (std::size_t k = 0; k <= top; ++k) {
    if (!incl.at(k).is_injective()) violated("N -> F is not injective at level " + std::to_string(k));
    if (!proj.at(k).is_surjective()) violated("F -> G is not surjective at level " + std::to_string(k));
    if (!is_exact_at(incl.at(k), proj.at(k))) violated("sequence is not exact at level " + std::to_string(k));
  }
  const auto lad = is_l_adic(G.prefix(top + 1), top + 1);
  if (lad.verdict == Verdict::No) violated("G is not l-adic at level " + std::to_string(lad.level));
  for (std::size_t k = 0; k + r <= top; ++k)
    if (!N.composite(k, r).is_zero())
      violated("N[" + std::to_string(r) + "] -> N is nonzero at level " + std::to_string(k));
  const Subgroup K = Subgroup::kernel_of(F.composite(n, r + m));
  const Subgroup im = Subgroup::image_of(F.composite(m + n, r), K);
  const Subgroup target = Subgroup::multiple(F.level(m + n), ipow(Integer(F.prime()), n + 1));
  return target.contains(im);
}

std::optional<std::size_t> factorization_radius(const Tower& F0, std::size_t bound) {
  const Tower F = F0.extended(observation_levels(F0, bound));
  const Integer l(F.prime());
  for (std::size_t r = 0; r <= bound && r < F.size(); ++r) {
    bool ok = true;
    for (std::size_t m = r; m < F.size() && ok; ++m) {
      const GroupHom c = F.composite(m - r, r);
      ok = c.target().reduce_rows(c.matrix().scaled(ipow(l, m + 1))).is_zero();
    }
    if (ok) return r;
  }
  return std::nullopt;
}

}  // namespace arl
