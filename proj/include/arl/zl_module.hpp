#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arl/group.hpp"

namespace arl {

/// Finitely generated Z_l-module Z/l^{a_1} + ... + Z/l^{a_k} + Z_l^rho, a_1 <= ... <= a_k.
/// Generators are ordered torsion first (ascending), then the free part.
class ZlModule {
 public:
  ZlModule() = default;
  ZlModule(Prime l, std::vector<unsigned long> torsion, std::size_t free_rank, OperatorMap operators = {},
           std::optional<unsigned long> precision = std::nullopt);

  static ZlModule zero(Prime l) { return ZlModule(l, {}, 0); }

  Prime prime() const noexcept { return l_; }
  const std::vector<unsigned long>& torsion() const noexcept { return torsion_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  std::size_t generator_count() const noexcept { return torsion_.size() + free_rank_; }
  bool is_zero() const noexcept { return generator_count() == 0; }
  bool is_torsion_free() const noexcept { return torsion_.empty(); }

  /// Operator matrices on the generators; when precision() is set they are known modulo l^precision.
  const OperatorMap& operators() const noexcept { return operators_; }
  const std::optional<unsigned long>& precision() const noexcept { return precision_; }

  /// Lambda / l^{n+1}: exponents min(a_i, n+1) then n+1 for each free generator.
  FinAbGroup level(std::size_t n) const;
  std::vector<unsigned long> level_exponents(std::size_t n) const;

  /// Lambda[l^m] as an abstract group: Z/l^{min(a_i, m)}.
  FinAbGroup torsion_points(unsigned long m) const;

  ZlModule without_operators() const { return ZlModule(l_, torsion_, free_rank_); }

  /// Equality of canonical forms, operators compared modulo the common precision.
  bool operator==(const ZlModule& other) const;
  bool same_shape(const ZlModule& other) const {
    return l_ == other.l_ && torsion_ == other.torsion_ && free_rank_ == other.free_rank_;
  }

  /// "Z/l^2 + Z/l + Zl^3", "0" for the zero module. Torsion is printed ascending.
  std::string to_string() const;
  static ZlModule parse(const std::string& text, Prime l);

 private:
  Prime l_ = 2;
  std::vector<unsigned long> torsion_;
  std::size_t free_rank_ = 0;
  OperatorMap operators_;
  std::optional<unsigned long> precision_;
};

/// Q_l-dimension of Lambda tensor Q_l.
inline std::size_t rank_ql(const ZlModule& m) { return m.free_rank(); }

}  // namespace arl
