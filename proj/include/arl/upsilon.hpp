#pragma once

#include <optional>
#include <string>

#include "arl/ar.hpp"
#include "arl/hypernat.hpp"

namespace arl {

/// Upsilon_h F in normal form: the canonical l-adic tower G seen at the infinite
/// level h-1, an object annihilated by l^h. Its quotient by l^k is G_{k-1}.
struct UpsilonObj {
  Tower base;
  HyperNat index;   // h-1
  HyperNat marker;  // h
  std::size_t ml_bound = 0;
  std::size_t r = 0;

  /// U / l^k for finite k >= 0.
  FinAbGroup quotient(std::size_t k) const;
  /// The base level at a finite index; infinite levels are symbolic and throw Usage.
  FinAbGroup level(const HyperNat& t) const;
  std::string to_string() const;
};

/// Throws FiniteIndex for finite h and NotARladic when no normal form is found.
UpsilonObj upsilon(const Tower& F, const HyperNat& h, std::size_t bound,
                   std::optional<std::size_t> ml_override = std::nullopt);

struct UpsilonHom {
  UpsilonObj source;
  UpsilonObj target;
  TowerHom rep;  // shift-0 morphism of the canonical l-adic towers
  bool is_zero() const { return rep.is_zero(); }
  bool is_isomorphism() const;
};

/// The shift-0 morphism between l-adic towers in the AR class of f. Throws InvalidHom
/// when the source is not l-adic enough for the lift to exist.
TowerHom shift_zero_representative(const ARMor& f, std::size_t levels);

UpsilonHom upsilon_mor(const ARMor& f, const HyperNat& h, std::size_t bound);

/// (U / l^{n+1})_n, an l-adic tower.
Tower psi(const UpsilonObj& U);
/// Levelwise the same tower, marked as the star of F.
Tower star_tower(const Tower& F);

struct PhiIso {
  ARMor iso;      // psi(upsilon(F)) -> star(F)
  ARMor inverse;  // star(F) -> psi(upsilon(F))
};

PhiIso phi_iso(const Tower& F, const HyperNat& h, std::size_t bound);

/// F -> G -> H -> 0 exact in AR (f : F -> G, g : G -> H); checks that the Upsilon images are exact
/// on the finite quotients at levels 0..levels-1. Throws PreconditionViolated if the input is not AR-exact.
bool check_right_exact(const ARMor& f, const ARMor& g, const HyperNat& h, std::size_t bound, std::size_t levels = 7);

struct FaithfulnessReport {
  bool upsilon_zero = false;
  bool upsilon_iso = false;
  Verdict ar_zero = Verdict::Unknown;
  Verdict ar_iso = Verdict::Unknown;
  bool holds = false;
};

FaithfulnessReport faithfulness_check(const ARMor& f, const HyperNat& h, std::size_t bound);

}  // namespace arl
