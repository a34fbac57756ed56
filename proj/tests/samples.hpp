#pragma once
// Small hand-built towers shared by the unit tests.

#include "arl/limits.hpp"

namespace sample {

using namespace arl;

inline Tower zl(Prime l, std::size_t levels = 6) { return to_tower(ZlModule(l, {}, 1), levels); }

inline Tower constant(Prime l, unsigned long e, long transition, std::size_t levels = 6) {
  return constant_tower(l, FinAbGroup::l_primary(l, {e}), IntMatrix{{transition}}, levels);
}

// F_n = Z/l^{n+1}, every transition multiplication by l.
inline Tower times_l(Prime l, std::size_t levels = 6) {
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr;
  for (std::size_t n = 0; n < levels; ++n) {
    lv.push_back(FinAbGroup::l_primary(l, {static_cast<unsigned long>(n + 1)}));
    if (n > 0) tr.emplace_back(lv[n], lv[n - 1], IntMatrix{{static_cast<long>(l)}});
  }
  return Tower(l, lv, tr, TailRule::derived(TailRule::Kind::Derived, {}, 0, "times-l"), std::nullopt,
               [l](std::size_t k) { return times_l(l, k); });
}

// Z/l at levels 0..top with identity maps, trivial from top+1 on.
inline Tower short_zero(Prime l, std::size_t top) {
  std::vector<FinAbGroup> lv;
  std::vector<GroupHom> tr;
  for (std::size_t n = 0; n <= top; ++n) {
    lv.push_back(FinAbGroup::l_primary(l, {1}));
    if (n > 0) tr.push_back(GroupHom::identity(lv[n]));
  }
  return Tower(l, lv, tr, TailRule::zero_tail(top + 1));
}

// Multiplication by c as a shift-0 AR morphism.
inline ARMor times(const Tower& F, long c) { return ar_from_hom(scale(identity_hom(F), Integer(c))); }

}  // namespace sample
