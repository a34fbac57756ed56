#include "arl/zl_module.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace arl {

namespace {

// Torsion rows mod l^{a_i}; free rows mod l^precision when a precision is known.
IntMatrix reduce_operator(const IntMatrix& m, Prime l, const std::vector<unsigned long>& torsion,
                          std::optional<unsigned long> precision) {
  IntMatrix r = m;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::optional<Integer> mod;
    if (i < torsion.size())
      mod = ipow(Integer(l), torsion[i]);
    else if (precision)
      mod = ipow(Integer(l), *precision);
    if (!mod) continue;
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = mod_floor(r(i, j), *mod);
  }
  return r;
}

}  // namespace

ZlModule::ZlModule(Prime l, std::vector<unsigned long> torsion, std::size_t free_rank, OperatorMap operators,
                   std::optional<unsigned long> precision)
    : l_(l), torsion_(std::move(torsion)), free_rank_(free_rank), precision_(precision) {
  if (!is_prime(l_)) throw Error(ErrorKind::InvalidHom, std::to_string(l_) + " is not prime");
  for (auto a : torsion_)
    if (a == 0) throw Error(ErrorKind::InvalidHom, "torsion exponents must be at least 1");
  std::sort(torsion_.begin(), torsion_.end());
  const std::size_t g = generator_count();
  for (auto& [label, m] : operators) {
    if (m.rows() != g || m.cols() != g) throw Error(ErrorKind::InvalidHom, "operator '" + label + "' has the wrong shape");
    IntMatrix r = reduce_operator(m, l_, torsion_, precision_);
    for (std::size_t j = 0; j < torsion_.size(); ++j) {
      for (std::size_t i = torsion_.size(); i < g; ++i)
        if (r(i, j) != 0) throw Error(ErrorKind::InvalidHom, "operator '" + label + "' maps torsion to the free part");
      for (std::size_t i = 0; i < torsion_.size(); ++i) {
        Integer v = r(i, j) * ipow(Integer(l_), torsion_[j]);
        if (mod_floor(v, ipow(Integer(l_), torsion_[i])) != 0)
          throw Error(ErrorKind::InvalidHom, "operator '" + label + "' is not compatible with the torsion");
      }
    }
    operators_.emplace(label, std::move(r));
  }
}

std::vector<unsigned long> ZlModule::level_exponents(std::size_t n) const {
  std::vector<unsigned long> e;
  for (auto a : torsion_) e.push_back(std::min<unsigned long>(a, n + 1));
  for (std::size_t i = 0; i < free_rank_; ++i) e.push_back(n + 1);
  return e;
}

FinAbGroup ZlModule::level(std::size_t n) const {
  Vector f;
  for (auto e : level_exponents(n)) f.push_back(ipow(Integer(l_), e));
  OperatorMap ops;
  if (!precision_ || n + 1 <= *precision_) ops = operators_;
  return FinAbGroup(std::move(f), l_, std::move(ops));
}

FinAbGroup ZlModule::torsion_points(unsigned long m) const {
  std::vector<unsigned long> e;
  for (auto a : torsion_) e.push_back(std::min(a, m));
  return FinAbGroup::l_primary(l_, e);
}

bool ZlModule::operator==(const ZlModule& o) const {
  if (!same_shape(o)) return false;
  if (operators_.size() != o.operators_.size()) return false;
  std::optional<unsigned long> p = precision_;
  if (o.precision_) p = p ? std::min(*p, *o.precision_) : o.precision_;
  for (const auto& [label, m] : operators_) {
    auto it = o.operators_.find(label);
    if (it == o.operators_.end()) return false;
    if (reduce_operator(m, l_, torsion_, p) != reduce_operator(it->second, l_, torsion_, p)) return false;
  }
  return true;
}

std::string ZlModule::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto a : torsion_) {
    os << (first ? "" : " + ") << "Z/l";
    if (a != 1) os << '^' << a;
    first = false;
  }
  if (free_rank_ > 0) os << (first ? "" : " + ") << "Zl^" << free_rank_;
  return os.str();
}

ZlModule ZlModule::parse(const std::string& text, Prime l) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty Z_l-module expression");
  if (s == "0") return ZlModule(l, {}, 0);
  std::vector<unsigned long> torsion;
  std::size_t free_rank = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Parse, "cannot parse Z_l-module '" + text + "' at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_exponent = [&]() -> unsigned long {
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      std::size_t begin = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (begin == pos) fail("expected an exponent");
      return std::stoul(s.substr(begin, pos - begin));
    }
    return 1;
  };
  for (;;) {
    if (s.compare(pos, 3, "Z/l") == 0) {
      pos += 3;
      unsigned long a = read_exponent();
      if (a == 0) fail("torsion exponent must be positive");
      torsion.push_back(a);
    } else if (s.compare(pos, 2, "Zl") == 0) {
      pos += 2;
      free_rank += read_exponent();
    } else if (s.compare(pos, 1, "0") == 0) {
      ++pos;
    } else {
      fail("expected 'Z/l', 'Zl' or '0'");
    }
    if (pos == s.size()) break;
    if (s[pos] != '+') fail("expected '+'");
    ++pos;
  }
  return ZlModule(l, std::move(torsion), free_rank);
}

}  // namespace arl
