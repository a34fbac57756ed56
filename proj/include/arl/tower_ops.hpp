#pragma once

#include <optional>
#include <string>

#include "arl/tower.hpp"

namespace arl {

// ------------------------------------------------------------ constructions

/// Every level g, every transition given by `transition` (an endomorphism of g).
Tower constant_tower(Prime l, const FinAbGroup& g, const IntMatrix& transition, std::size_t levels);
/// Trivial groups at every level.
Tower trivial_tower(Prime l, std::size_t levels = 1);

/// F[r]: level n is F_{n+r}.
Tower shift(const Tower& F, std::size_t r);
/// F[r] -> F, level n the composite F_{n+r} -> F_n.
TowerHom natural_map(const Tower& F, std::size_t r);

TowerHom identity_hom(const Tower& F);
TowerHom zero_hom(const Tower& F, const Tower& G);
/// Levelwise g o f.
TowerHom compose(const TowerHom& g, const TowerHom& f);
TowerHom add(const TowerHom& f, const TowerHom& g);
TowerHom subtract(const TowerHom& f, const TowerHom& g);
TowerHom scale(const TowerHom& f, const Integer& c);
/// f[r] : F[r] -> G[r].
TowerHom shift(const TowerHom& f, std::size_t r);

struct LevelwiseSub {
  Tower tower;
  TowerHom inclusion;
};

struct LevelwiseQuotient {
  Tower tower;
  TowerHom projection;
};

LevelwiseSub levelwise_kernel(const TowerHom& f);
LevelwiseSub levelwise_image(const TowerHom& f);
LevelwiseQuotient levelwise_cokernel(const TowerHom& f);

/// Levelwise F_n / l^k F_n.
LevelwiseQuotient mod_power(const Tower& F, std::size_t k);

struct TowerSum {
  Tower tower;
  TowerHom inj1, inj2, proj1, proj2;
};

TowerSum direct_sum(const Tower& F, const Tower& G);
/// f (+) g : F1 (+) F2 -> G1 (+) G2, with the sums from direct_sum().
TowerHom direct_sum(const TowerHom& f, const TowerHom& g);

// --------------------------------------------------------------- predicates

/// ARL_DEFAULT_BOUND if set, otherwise the prefix length L.
std::size_t default_bound(const Tower& F);

/// Number of levels inspected when a generative tower is examined with a search bound.
std::size_t observation_levels(const Tower& F, std::size_t bound);

struct ZeroSystemResult {
  Verdict verdict = Verdict::Unknown;
  std::size_t radius = 0;        // Yes: F[radius] -> F vanishes
  std::size_t level = 0;         // No: a level with a stabilized nonzero image
  bool tail_certified = false;   // true when the tail rule forces the answer beyond the prefix
  std::size_t levels_checked = 0;
  std::string detail;
};

ZeroSystemResult is_zero_system(const Tower& F, std::size_t bound);

struct LAdicResult {
  Verdict verdict = Verdict::Unknown;
  std::size_t level = 0;  // No: first failing level
  bool tail_certified = false;
  std::size_t levels_checked = 0;
  std::string detail;
};

/// l^{n+1} F_n = 0 and F_{n+1}/l^{n+1} -> F_n is an isomorphism. `levels` = 0 picks a default window.
LAdicResult is_l_adic(const Tower& F, std::size_t levels = 0);

}  // namespace arl
