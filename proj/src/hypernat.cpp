#include "arl/hypernat.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "arl/errors.hpp"

namespace arl {

HyperNat::HyperNat(long value) : offset_(value) {
  if (value < 0) throw Error(ErrorKind::NegativeResult, "finite hypernatural below zero");
}

HyperNat::HyperNat(Integer offset, std::map<std::string, unsigned long> coefficients) : offset_(std::move(offset)) {
  for (auto& [name, c] : coefficients)
    if (c > 0) coef_.emplace(name, c);
  if (coef_.empty() && offset_ < 0) throw Error(ErrorKind::NegativeResult, "finite hypernatural below zero");
}

HyperNat HyperNat::symbol(const std::string& name) { return HyperNat(0, {{name, 1}}); }

std::optional<Integer> HyperNat::finite_value() const {
  if (is_infinite()) return std::nullopt;
  return offset_;
}

HyperNat HyperNat::renamed(const std::string& name) const {
  unsigned long total = 0;
  for (const auto& [s, c] : coef_) total += c;
  return HyperNat(offset_, {{name, total}});
}

std::string HyperNat::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : coef_) {
    for (unsigned long k = 0; k < c; ++k) {
      os << (first ? "" : "+") << name;
      first = false;
    }
  }
  if (first) return offset_.get_str();
  if (offset_ > 0) os << '+' << offset_.get_str();
  if (offset_ < 0) os << '-' << Integer(-offset_).get_str();
  return os.str();
}

HyperNat HyperNat::parse(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> HyperNat {
    throw Error(ErrorKind::Parse, "bad index '" + text + "' at offset " + std::to_string(pos) + ": " + why);
  };
  Integer offset = 0;
  std::map<std::string, long> coef;
  int sign = 1;
  skip();
  if (pos == text.size()) return fail("empty expression");
  for (;;) {
    skip();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t b = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      Integer v(text.substr(b, pos - b));
      offset += sign > 0 ? v : Integer(-v);
    } else if (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      std::size_t b = pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
      coef[text.substr(b, pos - b)] += sign;
    } else {
      return fail("expected a symbol or an integer");
    }
    skip();
    if (pos == text.size()) break;
    if (text[pos] == '+')
      sign = 1;
    else if (text[pos] == '-')
      sign = -1;
    else
      return fail("expected '+' or '-'");
    ++pos;
  }
  std::map<std::string, unsigned long> c;
  for (const auto& [name, v] : coef) {
    if (v < 0) return fail("symbol '" + name + "' has a negative coefficient");
    if (v > 0) c.emplace(name, static_cast<unsigned long>(v));
  }
  if (c.empty() && offset < 0) return fail("finite value is negative");
  return HyperNat(offset, c);
}

const char* to_string(HyperOrder o) {
  switch (o) {
    case HyperOrder::LT: return "LT";
    case HyperOrder::EQ: return "EQ";
    case HyperOrder::GT: return "GT";
    case HyperOrder::Incomparable: return "Incomparable";
  }
  return "?";
}

HyperNat hn_add(const HyperNat& a, const HyperNat& b) {
  auto c = a.coefficients();
  for (const auto& [name, v] : b.coefficients()) c[name] += v;
  return HyperNat(a.offset() + b.offset(), c);
}

HyperNat hn_sub(const HyperNat& a, const HyperNat& b) {
  auto c = a.coefficients();
  for (const auto& [name, v] : b.coefficients()) {
    auto it = c.find(name);
    if (it == c.end() || it->second < v)
      throw Error(ErrorKind::NegativeResult, a.to_string() + " - " + b.to_string() + " is not a hypernatural");
    it->second -= v;
  }
  Integer off = a.offset() - b.offset();
  bool infinite = false;
  for (const auto& [name, v] : c) infinite = infinite || v > 0;
  if (!infinite && off < 0)
    throw Error(ErrorKind::NegativeResult, a.to_string() + " - " + b.to_string() + " is negative");
  return HyperNat(off, c);
}

HyperOrder hn_compare(const HyperNat& a, const HyperNat& b) {
  std::set<std::string> names;
  for (const auto& kv : a.coefficients()) names.insert(kv.first);
  for (const auto& kv : b.coefficients()) names.insert(kv.first);
  bool up = false, down = false;
  for (const auto& n : names) {
    auto ia = a.coefficients().find(n);
    auto ib = b.coefficients().find(n);
    const unsigned long ca = ia == a.coefficients().end() ? 0 : ia->second;
    const unsigned long cb = ib == b.coefficients().end() ? 0 : ib->second;
    if (ca > cb) up = true;
    if (ca < cb) down = true;
  }
  if (up && down) return HyperOrder::Incomparable;
  if (up) return HyperOrder::GT;
  if (down) return HyperOrder::LT;
  if (a.offset() < b.offset()) return HyperOrder::LT;
  if (a.offset() > b.offset()) return HyperOrder::GT;
  return HyperOrder::EQ;
}

}  // namespace arl
