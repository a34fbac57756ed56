#include "arl/tower.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace arl {

struct Tower::Data {
  Prime l = 2;
  std::vector<FinAbGroup> levels;
  std::vector<GroupHom> transitions;
  TailRule tail;
  std::optional<TailProfile> profile;
  Extender extender;
  Certificates certs;

  mutable std::mutex mu;
  mutable std::optional<Tower> cache;
  mutable std::map<std::pair<std::size_t, std::size_t>, GroupHom> composites;

  std::shared_ptr<Data> copy() const {
    auto d = std::make_shared<Data>();
    d->l = l;
    d->levels = levels;
    d->transitions = transitions;
    d->tail = tail;
    d->profile = profile;
    d->extender = extender;
    d->certs = certs;
    return d;
  }
};

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidTower, msg); }

Tower generate_from_rule(Prime l, std::vector<FinAbGroup> levels, std::vector<GroupHom> transitions,
                         const TailRule& tail, std::size_t want) {
  while (levels.size() < want) {
    const std::size_t n = levels.size();
    if (tail.kind == TailRule::Kind::ZeroTail) {
      levels.push_back(FinAbGroup::trivial(l));
    } else {
      levels.push_back(tail.module->level(n));
    }
    const FinAbGroup& src = levels[n];
    const FinAbGroup& dst = levels[n - 1];
    IntMatrix m(dst.rank(), src.rank());
    if (tail.kind == TailRule::Kind::EventuallyLAdic)
      for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) m(i, i) = 1;
    transitions.emplace_back(src, dst, m);
  }
  return Tower(l, std::move(levels), std::move(transitions), tail);
}

}  // namespace

bool TailProfile::l_adic_shape() const {
  if (std::any_of(offsets.begin(), offsets.end(), [](unsigned long c) { return c != 0; })) return false;
  for (auto a : torsion)
    if (a > start + 1) return false;
  return true;
}

std::vector<unsigned long> TailProfile::exponents_at(std::size_t n) const {
  std::vector<unsigned long> e = torsion;
  for (auto c : offsets) e.push_back(n + 1 + c);
  std::sort(e.begin(), e.end());
  return e;
}

const char* to_string(TailRule::Kind kind) {
  switch (kind) {
    case TailRule::Kind::Truncated: return "Truncated";
    case TailRule::Kind::ZeroTail: return "ZeroTail";
    case TailRule::Kind::EventuallyLAdic: return "EventuallyLAdic";
    case TailRule::Kind::Shift: return "ShiftOf";
    case TailRule::Kind::Sum: return "SumOf";
    case TailRule::Kind::ModPower: return "QuotientOf";
    case TailRule::Kind::Derived: return "Derived";
  }
  return "?";
}

std::string TailRule::describe() const {
  std::ostringstream os;
  os << arl::to_string(kind);
  switch (kind) {
    case Kind::ZeroTail: os << '(' << start << ')'; break;
    case Kind::EventuallyLAdic: os << '(' << start << ", " << module->to_string() << ')'; break;
    case Kind::Shift: os << '(' << amount << ')'; break;
    case Kind::ModPower: os << "(l^" << amount << ')'; break;
    case Kind::Derived: os << '(' << operation << ')'; break;
    default: break;
  }
  return os.str();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

// --------------------------------------------------------------------- Tower

Tower::Tower() : Tower(2, {FinAbGroup::trivial(2)}, {}) {}

Tower::Tower(Prime l, std::vector<FinAbGroup> levels, std::vector<GroupHom> transitions)
    : Tower(l, std::move(levels), std::move(transitions), TailRule::truncated()) {}

Tower::Tower(Prime l, std::vector<FinAbGroup> levels, std::vector<GroupHom> transitions, TailRule tail,
             std::optional<TailProfile> profile, Extender extender)
    : d_(std::make_shared<Data>()) {
  if (!is_prime(l)) invalid(std::to_string(l) + " is not prime");
  if (levels.empty()) invalid("a tower needs at least one level");
  if (transitions.size() + 1 != levels.size())
    invalid("expected " + std::to_string(levels.size() - 1) + " transitions, got " + std::to_string(transitions.size()));
  d_->l = l;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const auto& g = levels[n];
    if (g.prime() && *g.prime() != l)
      throw Error(ErrorKind::PrimeMismatch, "level " + std::to_string(n) + " is over another prime");
    try {
      d_->levels.push_back(g.with_prime(l));
    } catch (const Error& e) {
      invalid("level " + std::to_string(n) + " is not " + std::to_string(l) + "-primary: " + g.to_string());
    }
  }
  for (std::size_t k = 0; k < transitions.size(); ++k) {
    const auto& u = transitions[k];
    if (!u.source().same_underlying_group(d_->levels[k + 1]) || !u.target().same_underlying_group(d_->levels[k]))
      invalid("transition u_" + std::to_string(k + 1) + " does not map level " + std::to_string(k + 1) + " to level " +
              std::to_string(k));
    try {
      d_->transitions.emplace_back(d_->levels[k + 1], d_->levels[k], u.matrix());
    } catch (const Error& e) {
      invalid("transition u_" + std::to_string(k + 1) + ": " + e.what());
    }
  }
  const std::size_t L = d_->levels.size() - 1;
  if (tail.kind == TailRule::Kind::ZeroTail) {
    if (tail.start > L + 1) invalid("zero tail starts beyond L+1");
    for (std::size_t n = tail.start; n <= L; ++n)
      if (!d_->levels[n].is_trivial()) invalid("zero tail requires level " + std::to_string(n) + " to be trivial");
    if (!profile) profile = TailProfile{tail.start, {}, {}};
  } else if (tail.kind == TailRule::Kind::EventuallyLAdic) {
    if (!tail.module) invalid("l-adic tail without a module");
    if (tail.module->prime() != l) throw Error(ErrorKind::PrimeMismatch, "tail module is over another prime");
    if (tail.start > L) invalid("l-adic tail must start at a represented level (start <= L)");
    for (std::size_t n = tail.start; n <= L; ++n) {
      if (d_->levels[n].invariant_factors() != tail.module->level(n).invariant_factors())
        invalid("level " + std::to_string(n) + " is not " + tail.module->to_string() + " mod l^" + std::to_string(n + 1));
      if (n > tail.start) {
        const IntMatrix& m = d_->transitions[n - 1].matrix();
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != (i == j ? 1 : 0))
              invalid("transition u_" + std::to_string(n) + " is not the canonical projection");
      }
    }
    if (!profile) {
      std::size_t start = tail.start;
      for (auto a : tail.module->torsion()) start = std::max<std::size_t>(start, a - 1);
      profile = TailProfile{start, tail.module->torsion(), std::vector<unsigned long>(tail.module->free_rank(), 0)};
    }
  }
  if (profile) {
    for (std::size_t n = profile->start; n <= L; ++n) {
      auto e = d_->levels[n].exponents();
      if (e != profile->exponents_at(n)) invalid("level " + std::to_string(n) + " does not match the tail profile");
    }
  }
  if (!extender && (tail.kind == TailRule::Kind::ZeroTail || tail.kind == TailRule::Kind::EventuallyLAdic)) {
    extender = [l, lv = d_->levels, tr = d_->transitions, tail](std::size_t want) {
      return generate_from_rule(l, lv, tr, tail, want);
    };
  }
  d_->tail = std::move(tail);
  d_->profile = std::move(profile);
  d_->extender = std::move(extender);
}

Prime Tower::prime() const { return d_->l; }
std::size_t Tower::size() const { return d_->levels.size(); }

const FinAbGroup& Tower::level(std::size_t n) const {
  if (n >= size()) invalid("level " + std::to_string(n) + " is not represented (L = " + std::to_string(top()) + ")");
  return d_->levels[n];
}

const GroupHom& Tower::transition(std::size_t n) const {
  if (n == 0 || n >= size()) invalid("transition u_" + std::to_string(n) + " is not represented");
  return d_->transitions[n - 1];
}

GroupHom Tower::composite(std::size_t n, std::size_t r) const {
  if (n + r >= size()) invalid("composite from level " + std::to_string(n + r) + " is not represented");
  {
    std::lock_guard<std::mutex> lock(d_->mu);
    auto it = d_->composites.find({n, r});
    if (it != d_->composites.end()) return it->second;
  }
  IntMatrix m = IntMatrix::identity(level(n + r).rank());
  for (std::size_t k = n + r; k > n; --k) m = level(k - 1).reduce_rows(transition(k).matrix() * m);
  GroupHom h(level(n + r), level(n), m);
  std::lock_guard<std::mutex> lock(d_->mu);
  d_->composites.emplace(std::make_pair(n, r), h);
  return h;
}

const TailRule& Tower::tail() const { return d_->tail; }
const std::optional<TailProfile>& Tower::profile() const { return d_->profile; }
const Certificates& Tower::certificates() const { return d_->certs; }

Tower Tower::with_certificates(Certificates c) const {
  Tower t;
  t.d_ = d_->copy();
  t.d_->certs = std::move(c);
  return t;
}

bool Tower::generative() const { return static_cast<bool>(d_->extender); }

Tower Tower::extended(std::size_t levels) const {
  if (size() >= levels || !d_->extender) return *this;
  std::lock_guard<std::mutex> lock(d_->mu);
  if (d_->cache && d_->cache->size() >= levels) return *d_->cache;
  Tower t = d_->extender(std::max(levels, size()));
  if (t.size() < levels) invalid("extender produced too few levels");
  auto fresh = t.d_->copy();
  if (!fresh->extender) fresh->extender = d_->extender;
  fresh->certs = d_->certs;
  t.d_ = std::move(fresh);
  d_->cache = t;
  return t;
}

Tower Tower::require(std::size_t levels) const {
  Tower t = extended(levels);
  if (t.size() < levels)
    invalid("tower is truncated at level " + std::to_string(top()) + " but level " + std::to_string(levels - 1) +
            " is needed");
  return t;
}

Tower Tower::prefix(std::size_t levels) const {
  if (levels == 0 || levels > size()) invalid("prefix length out of range");
  if (levels == size()) return *this;
  Tower t;
  t.d_ = d_->copy();
  t.d_->levels.resize(levels);
  t.d_->transitions.resize(levels - 1);
  if (!t.d_->extender) t.d_->tail = TailRule::truncated();
  return t;
}

bool Tower::levelwise_equal(const Tower& o) const {
  if (prime() != o.prime()) return false;
  const std::size_t k = std::min(size(), o.size());
  for (std::size_t n = 0; n < k; ++n) {
    if (!(level(n) == o.level(n))) return false;
    if (n > 0 && transition(n).matrix() != o.transition(n).matrix()) return false;
  }
  return true;
}

bool Tower::levelwise_isomorphic(const Tower& o) const {
  if (prime() != o.prime()) return false;
  const std::size_t k = std::min(size(), o.size());
  for (std::size_t n = 0; n < k; ++n)
    if (!level(n).same_underlying_group(o.level(n))) return false;
  return true;
}

std::string Tower::to_string() const {
  std::ostringstream os;
  os << "l=" << prime() << " tail=" << tail().describe();
  for (std::size_t n = 0; n < size(); ++n) os << "\n  F_" << n << " = " << level(n).to_string();
  return os.str();
}

// ------------------------------------------------------------------ TowerHom

namespace {

struct HomMemo {
  std::mutex mu;
  std::optional<TowerHom> value;
};

}  // namespace

TowerHom::TowerHom(Tower source, Tower target, std::vector<GroupHom> maps, Extender extender)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.prime() != target_.prime()) throw Error(ErrorKind::PrimeMismatch, "towers over different primes");
  if (maps.empty()) invalid("a tower morphism needs at least one level");
  if (maps.size() > source_.size() || maps.size() > target_.size())
    invalid("tower morphism has more levels than its source or target");
  for (std::size_t n = 0; n < maps.size(); ++n) {
    const auto& f = maps[n];
    if (!f.source().same_underlying_group(source_.level(n)) || !f.target().same_underlying_group(target_.level(n)))
      invalid("level " + std::to_string(n) + " of the morphism has the wrong endpoints");
    try {
      maps_.emplace_back(source_.level(n), target_.level(n), f.matrix());
    } catch (const Error& e) {
      invalid("level " + std::to_string(n) + " of the morphism: " + e.what());
    }
  }
  for (std::size_t n = 0; n + 1 < maps_.size(); ++n) {
    const auto lhs = target_.transition(n + 1).after(maps_[n + 1]);
    const auto rhs = maps_[n].after(source_.transition(n + 1));
    if (!(lhs == rhs)) invalid("square at level " + std::to_string(n + 1) + " does not commute");
  }
  if (extender) {
    auto memo = std::make_shared<HomMemo>();
    extender_ = [memo, ext = std::move(extender)](std::size_t m) {
      std::lock_guard<std::mutex> lock(memo->mu);
      if (memo->value && memo->value->size() >= m) return *memo->value;
      TowerHom h = ext(m);
      memo->value = h;
      return h;
    };
  }
}

const GroupHom& TowerHom::at(std::size_t n) const {
  if (n >= maps_.size()) invalid("morphism level " + std::to_string(n) + " is not represented");
  return maps_[n];
}

TowerHom TowerHom::extended(std::size_t levels) const {
  if (size() >= levels || !extender_) return *this;
  TowerHom h = extender_(levels);
  if (!h.extender_) h.extender_ = extender_;
  return h;
}

TowerHom TowerHom::require(std::size_t levels) const {
  TowerHom h = extended(levels);
  if (h.size() < levels) invalid("morphism is truncated below level " + std::to_string(levels - 1));
  return h;
}

TowerHom TowerHom::prefix(std::size_t levels) const {
  if (levels == 0 || levels > size()) invalid("prefix length out of range");
  TowerHom h = *this;
  h.maps_.resize(levels);
  return h;
}

bool TowerHom::is_zero() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const GroupHom& f) { return f.is_zero(); });
}

bool TowerHom::levelwise_equal(const TowerHom& o) const {
  const std::size_t k = std::min(size(), o.size());
  for (std::size_t n = 0; n < k; ++n)
    if (!(maps_[n] == o.maps_[n])) return false;
  return true;
}

}  // namespace arl
