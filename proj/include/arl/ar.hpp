#pragma once

#include <optional>
#include <string>

#include "arl/tower_ops.hpp"

namespace arl {

/// Morphism F -> G in the Artin-Rees category, represented by rep : F[shift] -> G.
struct ARMor {
  Tower source;
  Tower target;
  std::size_t shift = 0;
  TowerHom rep;

  /// Extends the representative to at least `levels` levels when possible.
  ARMor extended(std::size_t levels) const;
};

ARMor ar_from_hom(const TowerHom& f);
ARMor ar_identity(const Tower& F);
ARMor ar_zero(const Tower& F, const Tower& G);
/// The same AR class represented at a larger shift q >= f.shift.
ARMor ar_reshift(const ARMor& f, std::size_t q);
/// g o f; shifts add. Throws CompositionMismatch when target(f) != source(g).
ARMor ar_compose(const ARMor& g, const ARMor& f);
ARMor ar_subtract(const ARMor& f, const ARMor& g);

/// Yes when representatives agree after a common shift <= max(shifts) + bound.
Verdict ar_equal(const ARMor& f, const ARMor& g, std::size_t bound);

ZeroSystemResult is_ar_zero_object(const Tower& F, std::size_t bound);
/// Whether f is zero in AR: its image is a zero system.
ZeroSystemResult ar_is_zero(const ARMor& f, std::size_t bound);

struct IsoResult {
  Verdict verdict = Verdict::Unknown;
  ZeroSystemResult kernel;
  ZeroSystemResult cokernel;
};

IsoResult ar_is_isomorphism(const ARMor& f, std::size_t bound);

/// Least s <= bound with im(F_{n+s+k} -> F_n) = im(F_{n+s} -> F_n) for all represented n, k.
std::optional<std::size_t> stable_image_bound(const Tower& F, std::size_t bound);
/// Level n is im(F_{n+s} -> F_n), with the inclusion into F.
LevelwiseSub stable_image_tower(const Tower& F, std::size_t s);

struct CanonicalLAdic {
  Tower G;              // l-adic, G_n = F'_{n+r} / l^{n+1} with F' the stable image tower
  ARMor iso;            // F -> G, shift ml_bound + r, levelwise onto
  ARMor inverse;        // G -> F
  std::size_t ml_bound = 0;
  std::size_t r = 0;
  std::size_t kernel_radius = 0;
  bool kernel_tail_certified = false;
};

/// Throws NotARladic when no replacement is found within the bound. `ml_override`
/// forces the stable-image shift (it must be at least the true bound).
CanonicalLAdic canonical_l_adic(const Tower& F, std::size_t bound, std::optional<std::size_t> ml_override = {});

struct CanonicalQuotient {
  Tower G;      // G_n = F'_{n+r} / l^{n+1}
  TowerHom pi;  // F[r+s] -> G, levelwise onto
};

/// The quotient G^{(r)} for a given stable-image shift s, without any search.
CanonicalQuotient canonical_quotient(const Tower& F, std::size_t s, std::size_t r, std::size_t levels);

struct ARCertificate {
  Verdict verdict = Verdict::Unknown;
  std::optional<CanonicalLAdic> witness;
  std::size_t level = 0;
  std::string detail;
};

ARCertificate certify_ar_l_adic(const Tower& F, std::size_t bound);

/// For 0 -> N -> F -> G -> 0: is im[ker(F_{r+m+n} -> F_n) -> F_{m+n}] inside l^{n+1} F_{m+n}?
/// Throws PreconditionViolated naming the failing level.
bool kernel_bound_check(const Tower& N, const Tower& F, const Tower& G, const TowerHom& incl, const TowerHom& proj,
                        std::size_t r, std::size_t m, std::size_t n);

/// Least r <= bound such that F_m -> F_{m-r} kills l^{m+1} F_m for every represented m >= r.
std::optional<std::size_t> factorization_radius(const Tower& F, std::size_t bound);

}  // namespace arl
