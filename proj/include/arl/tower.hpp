#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arl/group.hpp"
#include "arl/zl_module.hpp"

namespace arl {

struct TailRule;

/// Symbolic shape of the tower beyond `start`: F_n is isomorphic to
/// (+) Z/l^{torsion_i} (+) (+) Z/l^{n+1+offsets_j} and every transition is onto.
struct TailProfile {
  std::size_t start = 0;
  std::vector<unsigned long> torsion;  // ascending
  std::vector<unsigned long> offsets;  // ascending

  bool is_zero() const { return torsion.empty() && offsets.empty(); }
  /// Shape of an l-adic system: offsets all zero, torsion fits from `start` on.
  bool l_adic_shape() const;
  std::vector<unsigned long> exponents_at(std::size_t n) const;
  bool operator==(const TailProfile&) const = default;
};


/// Facts attached to a tower once they have been verified.
struct Certificates {
  std::optional<std::size_t> zero_radius;
  bool l_adic = false;
  std::optional<std::size_t> ml_bound;
  std::optional<std::size_t> ar_shift;  // shift of a verified epimorphism onto an l-adic tower
  bool star = false;                     // produced by the star functor
};

/// Projective system (F_n, u_n : F_n -> F_{n-1}) of finite l-primary groups,
/// given by an explicit prefix F_0..F_L and a tail rule describing n > L.
class Tower {
 public:
  using Extender = std::function<Tower(std::size_t)>;

  Tower();
  /// transitions[k] is u_{k+1} : F_{k+1} -> F_k. Throws InvalidTower on inconsistent data.
  Tower(Prime l, std::vector<FinAbGroup> levels, std::vector<GroupHom> transitions);
  Tower(Prime l, std::vector<FinAbGroup> levels, std::vector<GroupHom> transitions, TailRule tail,
        std::optional<TailProfile> profile = std::nullopt, Extender extender = {});

  Prime prime() const;
  /// Number of represented levels, L + 1.
  std::size_t size() const;
  std::size_t top() const { return size() - 1; }

  const FinAbGroup& level(std::size_t n) const;
  /// u_n : F_n -> F_{n-1}, n >= 1.
  const GroupHom& transition(std::size_t n) const;
  /// The composite F_{n+r} -> F_n (identity for r = 0).
  GroupHom composite(std::size_t n, std::size_t r) const;

  const TailRule& tail() const;
  const std::optional<TailProfile>& profile() const;
  const Certificates& certificates() const;
  Tower with_certificates(Certificates c) const;

  /// True if more levels can be produced on demand.
  bool generative() const;
  /// A tower with at least `levels` represented levels when generative; otherwise *this.
  Tower extended(std::size_t levels) const;
  /// Extends and throws InvalidTower when the tower cannot reach `levels`.
  Tower require(std::size_t levels) const;
  /// The first `levels` levels, keeping tail, profile and extender.
  Tower prefix(std::size_t levels) const;

  /// Same groups and transition matrices on all common represented levels.
  bool levelwise_equal(const Tower& other) const;
  /// Same invariant factors on all common represented levels.
  bool levelwise_isomorphic(const Tower& other) const;

  std::string to_string() const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

/// How the tower continues beyond its prefix.
struct TailRule {
  enum class Kind { Truncated, ZeroTail, EventuallyLAdic, Shift, Sum, ModPower, Derived };
  Kind kind = Kind::Truncated;
  std::size_t start = 0;           // ZeroTail, EventuallyLAdic
  std::optional<ZlModule> module;  // EventuallyLAdic
  std::size_t amount = 0;          // Shift amount, ModPower exponent
  std::string operation;           // Derived: name of the levelwise construction
  std::vector<Tower> parents;

  static TailRule truncated() { return {}; }
  static TailRule zero_tail(std::size_t s) {
    TailRule t;
    t.kind = Kind::ZeroTail;
    t.start = s;
    return t;
  }
  static TailRule eventually_l_adic(std::size_t s, ZlModule m) {
    TailRule t;
    t.kind = Kind::EventuallyLAdic;
    t.start = s;
    t.module = std::move(m);
    return t;
  }
  static TailRule derived(Kind kind, std::vector<Tower> parents, std::size_t amount = 0, std::string op = {}) {
    TailRule t;
    t.kind = kind;
    t.parents = std::move(parents);
    t.amount = amount;
    t.operation = std::move(op);
    return t;
  }

  std::string describe() const;
};

const char* to_string(TailRule::Kind kind);

/// Levelwise morphism of towers with commuting squares.
class TowerHom {
 public:
  using Extender = std::function<TowerHom(std::size_t)>;

  TowerHom() = default;
  /// Validates shapes and commutativity on every represented level.
  TowerHom(Tower source, Tower target, std::vector<GroupHom> maps, Extender extender = {});

  const Tower& source() const noexcept { return source_; }
  const Tower& target() const noexcept { return target_; }
  std::size_t size() const noexcept { return maps_.size(); }
  const GroupHom& at(std::size_t n) const;
  const std::vector<GroupHom>& maps() const noexcept { return maps_; }

  bool generative() const { return static_cast<bool>(extender_); }
  TowerHom extended(std::size_t levels) const;
  TowerHom require(std::size_t levels) const;
  TowerHom prefix(std::size_t levels) const;

  bool is_zero() const;
  bool levelwise_equal(const TowerHom& other) const;

 private:
  Tower source_;
  Tower target_;
  std::vector<GroupHom> maps_;
  Extender extender_;
};

enum class Verdict { Yes, No, Unknown };
const char* to_string(Verdict v);

}  // namespace arl
