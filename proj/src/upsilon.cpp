#include "arl/upsilon.hpp"

#include <sstream>

namespace arl {

FinAbGroup UpsilonObj::quotient(std::size_t k) const {
  if (k == 0) return FinAbGroup::trivial(base.prime());
  return base.require(k).level(k - 1);
}

FinAbGroup UpsilonObj::level(const HyperNat& t) const {
  auto v = t.finite_value();
  if (!v) throw Error(ErrorKind::Usage, "level " + t.to_string() + " is infinite and only available through quotients");
  return base.require(v->get_ui() + 1).level(v->get_ui());
}

std::string UpsilonObj::to_string() const {
  std::ostringstream os;
  os << "Upsilon[" << marker.to_string() << "] = star level " << index.to_string() << " of " << base.to_string();
  return os.str();
}

UpsilonObj upsilon(const Tower& F, const HyperNat& h, std::size_t bound, std::optional<std::size_t> ml_override) {
  if (!h.is_infinite()) throw Error(ErrorKind::FiniteIndex, "index " + h.to_string() + " is finite");
  const CanonicalLAdic c = canonical_l_adic(F, bound, ml_override);
  return UpsilonObj{c.G, hn_sub(h, HyperNat(1)), h, c.ml_bound, c.r};
}

bool UpsilonHom::is_isomorphism() const {
  for (const auto& m : rep.maps())
    if (!m.is_isomorphism()) return false;
  return true;
}

TowerHom shift_zero_representative(const ARMor& f0, std::size_t levels) {
  const ARMor f = f0.extended(levels);
  const std::size_t t = f.shift;
  const Tower src = f.source.extended(f.rep.size() + t);
  std::vector<GroupHom> maps;
  for (std::size_t n = 0; n < f.rep.size() && n + t < src.size(); ++n)
    maps.push_back(factor_through_surjection(src.composite(n, t), f.rep.at(n)));
  TowerHom::Extender ext;
  if (f.rep.generative()) ext = [f](std::size_t k) { return shift_zero_representative(f, k); };
  return TowerHom(src, f.target, std::move(maps), ext);
}

UpsilonHom upsilon_mor(const ARMor& f, const HyperNat& h, std::size_t bound) {
  if (!h.is_infinite()) throw Error(ErrorKind::FiniteIndex, "index " + h.to_string() + " is finite");
  const CanonicalLAdic c1 = canonical_l_adic(f.source, bound);
  const CanonicalLAdic c2 = canonical_l_adic(f.target, bound);
  const ARMor m = ar_compose(c2.iso, ar_compose(f, c1.inverse));
  const HyperNat index = hn_sub(h, HyperNat(1));
  UpsilonObj u1{c1.G, index, h, c1.ml_bound, c1.r};
  UpsilonObj u2{c2.G, index, h, c2.ml_bound, c2.r};
  return {u1, u2, shift_zero_representative(m, observation_levels(c1.G, bound))};
}

Tower psi(const UpsilonObj& U) {
  Certificates c = U.base.certificates();
  c.l_adic = true;
  return U.base.with_certificates(c);
}

Tower star_tower(const Tower& F) {
  Certificates c = F.certificates();
  c.star = true;
  return F.with_certificates(c);
}

PhiIso phi_iso(const Tower& F, const HyperNat& h, std::size_t bound) {
  const UpsilonObj U = upsilon(F, h, bound);
  const CanonicalLAdic c = canonical_l_adic(F, bound);
  const Tower P = psi(U);
  const Tower S = star_tower(F);
  return {ARMor{P, S, c.inverse.shift, c.inverse.rep}, ARMor{S, P, c.iso.shift, c.iso.rep}};
}

namespace {

void require_yes(const ZeroSystemResult& z, const std::string& what) {
  if (z.verdict != Verdict::Yes)
    throw Error(ErrorKind::PreconditionViolated,
                "sequence is not AR-exact: " + what + " is " + to_string(z.verdict) + " as a zero system" +
                    (z.verdict == Verdict::No ? " (level " + std::to_string(z.level) + ")" : ""));
}

}  // namespace

bool check_right_exact(const ARMor& f0, const ARMor& g0, const HyperNat& h, std::size_t bound, std::size_t levels) {
  const std::size_t window = std::max(observation_levels(g0.target, bound), levels) + f0.shift + g0.shift;
  const ARMor f = f0.extended(window);
  const ARMor g = g0.extended(window);
  require_yes(ar_is_zero(ar_compose(g, f), bound), "the composite");
  require_yes(is_zero_system(levelwise_cokernel(g.rep).tower, bound), "the cokernel of the second map");
  const TowerHom fb = shift(f.rep, g.shift);
  const LevelwiseSub K = levelwise_kernel(g.rep);
  const LevelwiseQuotient Q = levelwise_cokernel(fb);
  require_yes(is_zero_system(levelwise_image(compose(Q.projection, K.inclusion)).tower, bound), "the homology");

  const UpsilonHom uf = upsilon_mor(f, h, bound);
  const UpsilonHom ug = upsilon_mor(g, h, bound);
  const TowerHom a = uf.rep.require(levels);
  const TowerHom b = ug.rep.require(levels);
  for (std::size_t n = 0; n < levels; ++n)
    if (!is_exact_at(a.at(n), b.at(n)) || !b.at(n).is_surjective()) return false;
  return true;
}

FaithfulnessReport faithfulness_check(const ARMor& f, const HyperNat& h, std::size_t bound) {
  FaithfulnessReport r;
  const UpsilonHom u = upsilon_mor(f, h, bound);
  r.upsilon_zero = u.is_zero();
  r.upsilon_iso = u.is_isomorphism();
  r.ar_zero = ar_is_zero(f, bound).verdict;
  r.ar_iso = ar_is_isomorphism(f, bound).verdict;
  const bool zero_ok = r.ar_zero != Verdict::Unknown && r.upsilon_zero == (r.ar_zero == Verdict::Yes);
  const bool iso_ok = !r.upsilon_iso || r.ar_iso == Verdict::Yes;
  r.holds = zero_ok && iso_ok;
  return r;
}

}  // namespace arl
