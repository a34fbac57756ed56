#pragma once

#include <map>
#include <optional>
#include <string>

#include "arl/integer.hpp"

namespace arl {

/// offset + sum c_s * s over declared infinite symbols s (h, d1, d2, ...), c_s >= 0.
/// A term without symbols is an ordinary natural number and must be >= 0.
class HyperNat {
 public:
  HyperNat() = default;
  HyperNat(long value);  // NOLINT(google-explicit-constructor)
  HyperNat(Integer offset, std::map<std::string, unsigned long> coefficients);

  static HyperNat symbol(const std::string& name);
  /// Grammar: term := atom (('+'|'-') atom)*, atom := symbol | integer.
  static HyperNat parse(const std::string& text);

  const Integer& offset() const noexcept { return offset_; }
  const std::map<std::string, unsigned long>& coefficients() const noexcept { return coef_; }
  bool is_infinite() const noexcept { return !coef_.empty(); }
  std::optional<Integer> finite_value() const;

  /// The same term with every symbol renamed to `name` (coefficients added up).
  HyperNat renamed(const std::string& name) const;

  bool operator==(const HyperNat&) const = default;
  std::string to_string() const;

 private:
  Integer offset_ = 0;
  std::map<std::string, unsigned long> coef_;  // only positive coefficients are stored
};

enum class HyperOrder { LT, EQ, GT, Incomparable };
const char* to_string(HyperOrder o);

HyperNat hn_add(const HyperNat& a, const HyperNat& b);
/// Throws NegativeResult when a - b is not a valid term.
HyperNat hn_sub(const HyperNat& a, const HyperNat& b);
HyperOrder hn_compare(const HyperNat& a, const HyperNat& b);

}  // namespace arl
