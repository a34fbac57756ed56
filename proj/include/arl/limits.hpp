#pragma once

#include <optional>
#include <string>

#include "arl/upsilon.hpp"
#include "arl/zl_module.hpp"

namespace arl {

/// (Lambda / l^{n+1})_n with the canonical projections; l-adic, EventuallyLAdic(0, Lambda) tail.
Tower to_tower(const ZlModule& lambda, std::size_t levels = 8);

/// lim L_n for an l-adic tower. Throws NotLAdic, or NonStabilizing when `max_levels`
/// levels do not show two consecutive levels with the same torsion and free part.
ZlModule limit(const Tower& L, std::size_t max_levels = 64);

/// Upsilon_h F tensor Z_l, which is lim psi(U).
ZlModule tensor_zl(const UpsilonObj& U);

struct ComparisonReport {
  ZlModule left;   // tensor_zl(upsilon(T, h))
  ZlModule right;  // lim G^{(r+1)}, the replacement one step further up
  bool same_form = false;
  bool operators_match = false;
  bool isomorphic = false;
  std::size_t ml_bound = 0;
  std::size_t r = 0;
  std::string detail;
};

/// Both sides of the comparison of the image over an infinite gap with the Z_l-limit.
ComparisonReport comparison_check(const Tower& T, const HyperNat& h, std::size_t bound);

struct TorsionCriterion {
  Tower tower;  // H_n = Lambda_i / l^{n+1} + Lambda_next[l^{n+1}]
  bool l_adic = false;
  bool torsion_free = false;
  bool verdict = false;  // l_adic == torsion_free
  std::optional<std::size_t> witness_level;
  std::string detail;
};

TorsionCriterion ladic_iff_torsionfree(const ZlModule& lambda_i, const ZlModule& lambda_next, std::size_t levels = 8);

}  // namespace arl
