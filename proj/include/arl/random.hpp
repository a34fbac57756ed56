#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arl/limits.hpp"

namespace arl {

/// Deterministic generator; every instance is a function of (seed, stream, case index).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi] by rejection, identical on every platform.
  long range(long lo, long hi);
  bool chance(unsigned num, unsigned den) { return range(0, static_cast<long>(den) - 1) < static_cast<long>(num); }

 private:
  std::mt19937_64 engine_;
};

struct GenParams {
  std::vector<Prime> primes = {2, 3};
  std::size_t levels = 8;          // prefix length of generated towers
  unsigned long max_exp = 3;       // torsion exponents of random modules
  std::size_t max_torsion = 2;     // number of torsion summands
  std::size_t max_rank = 2;        // free rank
  std::size_t max_radius = 4;      // zero systems die after this many levels
  unsigned long zero_order = 6;    // l-exponent of the order of zero-system levels
};

Prime random_prime(Rng& rng, const GenParams& p);
ZlModule random_zl_module(Rng& rng, Prime l, const GenParams& p);
/// A Z_l-linear map lambda -> mu as a matrix on generators (torsion entries scaled to be well defined).
IntMatrix random_zl_map(Rng& rng, const ZlModule& lambda, const ZlModule& mu);
/// The shift-0 tower morphism to_tower(lambda) -> to_tower(mu) given by a Z_l-linear matrix.
TowerHom zl_map_tower(const ZlModule& lambda, const ZlModule& mu, const IntMatrix& a, std::size_t levels);

/// Zero system: either a ZeroTail prefix of random groups or a constant Z/l^a with multiplication by l.
Tower random_zero_system(Rng& rng, Prime l, const GenParams& p, bool zero_tail_only = false);

struct Extension {
  Tower N, F, G;
  TowerHom incl, proj;
};

/// 0 -> N -> F -> G -> 0 with F_n = N_n + G_n and transitions twisted by random maps G_{n+1} -> N_n.
Extension random_extension(Rng& rng, Prime l, const GenParams& p);

struct ARInstance {
  Tower F;
  ZlModule lambda;  // the limit of any l-adic replacement of F
  std::string recipe;
};

ARInstance random_ar_l_adic(Rng& rng, const GenParams& p, bool with_operator = false);

struct MorInstance {
  ARMor f;
  std::string recipe;
};

/// Morphisms between AR-l-adic towers: zero, unit, l-multiples and random maps, padded with zero systems.
MorInstance random_ar_morphism(Rng& rng, const GenParams& p);

struct ExactInstance {
  ARMor f, g;
  std::string recipe;
};

/// F -> G -> H -> 0 exact in AR, built from a cokernel of l-adic towers padded with zero systems.
ExactInstance random_right_exact(Rng& rng, const GenParams& p);

/// Every module with torsion exponents <= max_exp, at most max_torsion summands and free rank <= max_rank.
std::vector<ZlModule> all_modules(Prime l, unsigned long max_exp, std::size_t max_torsion, std::size_t max_rank);

}  // namespace arl
