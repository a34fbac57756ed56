#include "arl/limits.hpp"

#include <algorithm>

namespace arl {

Tower to_tower(const ZlModule& lambda, std::size_t levels) {
  levels = std::max<std::size_t>(levels, 1);
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr;
  for (std::size_t n = 0; n < levels; ++n) {
    lv.push_back(lambda.level(n));
    if (n > 0) tr.emplace_back(lv[n], lv[n - 1], IntMatrix::identity(lambda.generator_count()));
  }
  Tower t(lambda.prime(), std::move(lv), std::move(tr), TailRule::eventually_l_adic(0, lambda));
  Certificates c = t.certificates();
  c.l_adic = true;
  c.ml_bound = 0;
  return t.with_certificates(c);
}

namespace {

struct Split {
  std::vector<unsigned long> torsion;
  std::size_t free = 0;
};

Split split_level(const Tower& L, std::size_t n) {
  Split s;
  for (auto e : L.level(n).exponents()) {
    if (e == n + 1)
      ++s.free;
    else
      s.torsion.push_back(e);
  }
  return s;
}

}  // namespace

ZlModule limit(const Tower& L0, std::size_t max_levels) {
  const Prime l = L0.prime();
  const auto lad = is_l_adic(L0);
  if (lad.verdict == Verdict::No)
    throw Error(ErrorKind::NotLAdic, "tower is not l-adic at level " + std::to_string(lad.level));
  std::size_t top = 0;
  if (const auto& p = L0.profile(); p && p->l_adic_shape()) {
    std::size_t need = p->start + 2;
    for (auto a : p->torsion) need = std::max<std::size_t>(need, a + 1);
    top = std::max(need, L0.top());
  } else {
    // Read the answer off the highest represented levels; torsion shows up as free
    // until the level exceeds its exponent, so low levels are never trusted.
    Tower L = L0.extended(std::min<std::size_t>(std::max<std::size_t>(L0.size(), 8), max_levels));
    for (;;) {
      if (L.size() >= 2) {
        const Split a = split_level(L, L.top() - 1), b = split_level(L, L.top());
        if (a.free == b.free && a.torsion == b.torsion) break;
      }
      if (!L.generative() || L.size() >= max_levels)
        throw Error(ErrorKind::NonStabilizing,
                    "the two highest levels disagree up to level " + std::to_string(L.top()));
      L = L.extended(L.size() + 1);
    }
    top = L.top();
  }
  const Tower L = L0.require(top + 1);
  const Split s = split_level(L, top);
  // Operators are known modulo l^{n+1} at the highest level n that carries them.
  OperatorMap ops;
  std::optional<unsigned long> precision;
  for (std::size_t n = top + 1; n-- > 0;)
    if (!L.level(n).operators().empty()) {
      ops = L.level(n).operators();
      precision = n + 1;
      break;
    }
  ZlModule out(l, s.torsion, s.free, ops, precision);
  for (std::size_t n = 0; n <= top; ++n)
    if (out.level(n).invariant_factors() != L.level(n).invariant_factors())
      throw Error(ErrorKind::NonStabilizing, "reconstruction differs from the tower at level " + std::to_string(n));
  return out;
}

ZlModule tensor_zl(const UpsilonObj& U) { return limit(psi(U)); }

ComparisonReport comparison_check(const Tower& T, const HyperNat& h, std::size_t bound) {
  ComparisonReport rep;
  const UpsilonObj U = upsilon(T, h, bound);
  rep.ml_bound = U.ml_bound;
  rep.r = U.r;
  rep.left = tensor_zl(U);
  const std::size_t levels = std::max(U.base.size(), observation_levels(T, bound));
  const CanonicalQuotient up = canonical_quotient(T, U.ml_bound, U.r + 1, levels);
  const CanonicalQuotient here = canonical_quotient(T, U.ml_bound, U.r, levels + 1);
  rep.right = limit(up.G);
  rep.same_form = rep.left.same_shape(rep.right);
  // The transition of the stable-image tower induces G^{(r+1)} -> G^{(r)}; it has to be an
  // operator-compatible isomorphism at the level the limits were read from.
  const std::size_t k = std::min(up.G.top(), here.G.top());
  try {
    const GroupHom u = T.extended(k + U.r + U.ml_bound + 2).transition(k + U.r + U.ml_bound + 1);
    const GroupHom phi = factor_through_surjection(up.pi.at(k), here.pi.at(k).after(u));
    rep.operators_match = phi.is_isomorphism();
  } catch (const Error& e) {
    rep.detail = e.what();
  }
  if (rep.left.operators().size() != rep.right.operators().size()) rep.operators_match = false;
  rep.isomorphic = rep.same_form && rep.operators_match;
  if (rep.detail.empty() && !rep.isomorphic)
    rep.detail = "left " + rep.left.to_string() + " vs right " + rep.right.to_string();
  return rep;
}

namespace {

// Lambda[l^{n+1}] with the transitions induced by multiplication by l.
Tower torsion_points_tower(const ZlModule& M, std::size_t levels) {
  const Prime l = M.prime();
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr;
  for (std::size_t n = 0; n < levels; ++n) {
    lv.push_back(M.torsion_points(n + 1));
    if (n > 0) {
      IntMatrix m(M.torsion().size(), M.torsion().size());
      for (std::size_t i = 0; i < M.torsion().size(); ++i) m(i, i) = M.torsion()[i] >= n + 1 ? Integer(1) : Integer(l);
      tr.emplace_back(lv[n], lv[n - 1], m);
    }
  }
  TailRule tail = M.is_torsion_free() ? TailRule::zero_tail(0)
                                      : TailRule::derived(TailRule::Kind::Derived, {}, 0, "torsion-points");
  Tower::Extender ext;
  if (!M.is_torsion_free()) ext = [M](std::size_t k) { return torsion_points_tower(M, k); };
  return Tower(l, std::move(lv), std::move(tr), tail, std::nullopt, ext);
}

}  // namespace

TorsionCriterion ladic_iff_torsionfree(const ZlModule& lambda_i, const ZlModule& lambda_next, std::size_t levels) {
  if (lambda_i.prime() != lambda_next.prime())
    throw Error(ErrorKind::PrimeMismatch, "modules over different primes");
  TorsionCriterion res;
  res.tower = direct_sum(to_tower(lambda_i, levels), torsion_points_tower(lambda_next, levels)).tower;
  const LAdicResult lad = is_l_adic(res.tower, levels);
  res.l_adic = lad.verdict == Verdict::Yes;
  res.torsion_free = lambda_next.is_torsion_free();
  res.verdict = lad.verdict != Verdict::Unknown && res.l_adic == res.torsion_free;
  if (lad.verdict == Verdict::No) res.witness_level = lad.level;
  res.detail = lad.detail;
  return res;
}

}  // namespace arl
