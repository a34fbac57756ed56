#include "arl/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "arl/smith.hpp"

namespace arl {

namespace {

IntMatrix reduce_rows_mod(IntMatrix m, const Vector& d) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), d[i]);
  return m;
}

// Column j of M, scaled by the order of source generator j, must vanish in the target.
bool well_defined(const IntMatrix& M, const Vector& src, const Vector& tgt) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      Integer v = M(i, j) * src[j];
      if (!mpz_divisible_p(v.get_mpz_t(), tgt[i].get_mpz_t())) return false;
    }
  return true;
}

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

std::optional<Prime> common_prime(const FinAbGroup& a, const FinAbGroup& b) {
  if (a.prime() && b.prime() && *a.prime() != *b.prime())
    throw Error(ErrorKind::PrimeMismatch, "groups over different primes");
  return a.prime() ? a.prime() : b.prime();
}

}  // namespace

// ---------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(Vector factors, std::optional<Prime> prime, OperatorMap operators)
    : factors_(std::move(factors)), prime_(prime) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw Error(ErrorKind::InvalidHom, "invariant factor below 2: " + factors_[i].get_str());
    if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()))
      throw Error(ErrorKind::InvalidHom, "invariant factors do not form a divisibility chain");
    if (prime_ && !is_power_of(factors_[i], *prime_))
      throw Error(ErrorKind::NotLPrimary,
                  "factor " + factors_[i].get_str() + " is not a power of " + std::to_string(*prime_));
  }
  for (auto& [label, m] : operators) {
    if (m.rows() != rank() || m.cols() != rank())
      throw Error(ErrorKind::InvalidHom, "operator '" + label + "' has the wrong shape");
    IntMatrix r = reduce_rows_mod(m, factors_);
    if (!well_defined(r, factors_, factors_))
      throw Error(ErrorKind::InvalidHom, "operator '" + label + "' is not compatible with the relations");
    operators_.emplace(label, std::move(r));
  }
}

FinAbGroup FinAbGroup::trivial(std::optional<Prime> prime) { return FinAbGroup(Vector{}, prime); }

FinAbGroup FinAbGroup::cyclic(const Integer& n, std::optional<Prime> prime) {
  if (n == 1) return trivial(prime);
  return FinAbGroup(Vector{n}, prime);
}

FinAbGroup FinAbGroup::l_primary(Prime l, std::vector<unsigned long> exponents) {
  std::sort(exponents.begin(), exponents.end());
  Vector f;
  for (auto e : exponents)
    if (e > 0) f.push_back(ipow(Integer(l), e));
  return FinAbGroup(std::move(f), l);
}

Integer FinAbGroup::order() const {
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

std::vector<unsigned long> FinAbGroup::exponents() const {
  if (!prime_) throw Error(ErrorKind::NotLPrimary, "group has no prime attached");
  std::vector<unsigned long> e;
  for (const auto& d : factors_) e.push_back(valuation(d, *prime_));
  return e;
}

bool FinAbGroup::annihilated_by(const Integer& n) const {
  for (const auto& d : factors_)
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
  return true;
}

FinAbGroup FinAbGroup::with_prime(Prime l) const { return FinAbGroup(factors_, l, operators_); }

FinAbGroup FinAbGroup::with_operators(OperatorMap ops) const { return FinAbGroup(factors_, prime_, std::move(ops)); }

FinAbGroup FinAbGroup::without_operators() const {
  FinAbGroup g = *this;
  g.operators_.clear();
  return g;
}

Vector FinAbGroup::reduce(Vector c) const {
  if (c.size() != factors_.size()) throw std::invalid_argument("coordinate vector has the wrong length");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], factors_[i]);
  return c;
}

IntMatrix FinAbGroup::reduce_rows(IntMatrix m) const { return reduce_rows_mod(std::move(m), factors_); }

bool FinAbGroup::operator==(const FinAbGroup& o) const {
  return factors_ == o.factors_ && prime_ == o.prime_ && operators_ == o.operators_;
}

std::string FinAbGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " + Z/" : "Z/") << factors_[i].get_str();
  return os.str();
}

bool Element::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Integer& c) { return c == 0; });
}

std::vector<Vector> enumerate_elements(const FinAbGroup& g, std::size_t limit) {
  if (g.order() > limit) throw std::invalid_argument("group too large to enumerate");
  std::vector<Vector> out;
  Vector x(g.rank(), Integer(0));
  for (;;) {
    out.push_back(x);
    std::size_t i = g.rank();
    while (i > 0) {
      --i;
      if (++x[i] < g.invariant_factors()[i]) break;
      x[i] = 0;
      if (i == 0) return out;
    }
    if (g.rank() == 0) return out;
  }
}

// ------------------------------------------------------------------ GroupHom

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)) {
  common_prime(source_, target_);
  if (matrix.rows() != target_.rank() || matrix.cols() != source_.rank())
    throw Error(ErrorKind::InvalidHom, "matrix shape " + std::to_string(matrix.rows()) + "x" +
                                           std::to_string(matrix.cols()) + " does not match " +
                                           std::to_string(target_.rank()) + "x" + std::to_string(source_.rank()));
  matrix_ = target_.reduce_rows(std::move(matrix));
  if (!well_defined(matrix_, source_.invariant_factors(), target_.invariant_factors()))
    throw Error(ErrorKind::InvalidHom, "matrix does not respect the source relations");
  for (const auto& [label, s] : source_.operators()) {
    auto it = target_.operators().find(label);
    if (it == target_.operators().end()) continue;
    if (target_.reduce_rows(matrix_ * s) != target_.reduce_rows(it->second * matrix_))
      throw Error(ErrorKind::InvalidHom, "hom does not commute with operator '" + label + "'");
  }
}

GroupHom GroupHom::identity(const FinAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.rank())); }

GroupHom GroupHom::zero(const FinAbGroup& s, const FinAbGroup& t) { return GroupHom(s, t, IntMatrix(t.rank(), s.rank())); }

GroupHom GroupHom::scalar(const FinAbGroup& g, const Integer& c) {
  return GroupHom(g, g, IntMatrix::identity(g.rank()).scaled(c));
}

Vector GroupHom::apply(const Vector& x) const { return target_.reduce(matrix_.apply(x)); }

bool GroupHom::is_injective() const { return Subgroup::kernel_of(*this).is_zero(); }
bool GroupHom::is_surjective() const { return Subgroup::image_of(*this).is_whole(); }
bool GroupHom::is_isomorphism() const { return is_injective() && is_surjective(); }

GroupHom GroupHom::after(const GroupHom& other) const {
  if (!other.target_.same_underlying_group(source_))
    throw Error(ErrorKind::CompositionMismatch, "cannot compose: " + other.target_.to_string() + " vs " + source_.to_string());
  return GroupHom(other.source_, target_, matrix_ * other.matrix_);
}

GroupHom GroupHom::operator+(const GroupHom& o) const {
  if (!source_.same_underlying_group(o.source_) || !target_.same_underlying_group(o.target_))
    throw Error(ErrorKind::CompositionMismatch, "sum of homs with different endpoints");
  return GroupHom(source_, target_, matrix_ + o.matrix_);
}

GroupHom GroupHom::operator-(const GroupHom& o) const {
  if (!source_.same_underlying_group(o.source_) || !target_.same_underlying_group(o.target_))
    throw Error(ErrorKind::CompositionMismatch, "difference of homs with different endpoints");
  return GroupHom(source_, target_, matrix_ - o.matrix_);
}

bool GroupHom::operator==(const GroupHom& o) const {
  return source_.same_underlying_group(o.source_) && target_.same_underlying_group(o.target_) && matrix_ == o.matrix_;
}

// ------------------------------------------------------------------ Subgroup

Subgroup Subgroup::whole(const FinAbGroup& g) { return Subgroup(g, IntMatrix::identity(g.rank())); }

Subgroup Subgroup::zero(const FinAbGroup& g) { return Subgroup(g, g.relation_lattice()); }

Subgroup Subgroup::generated_by(const FinAbGroup& g, const IntMatrix& gens) {
  return Subgroup(g, hermite_basis(gens.hconcat(g.relation_lattice())));
}

Subgroup Subgroup::image_of(const GroupHom& f) { return generated_by(f.target(), f.matrix()); }

Subgroup Subgroup::image_of(const GroupHom& f, const Subgroup& s) {
  return generated_by(f.target(), f.matrix() * s.lattice());
}

Subgroup Subgroup::kernel_of(const GroupHom& f) {
  return Subgroup(f.source(), lattice_preimage(f.matrix(), f.target().relation_lattice()));
}

Subgroup Subgroup::preimage(const GroupHom& f, const Subgroup& t) {
  return Subgroup(f.source(), lattice_preimage(f.matrix(), t.lattice()));
}

Subgroup Subgroup::multiple(const FinAbGroup& g, const Integer& n) {
  return generated_by(g, IntMatrix::identity(g.rank()).scaled(n));
}

bool Subgroup::contains(const Vector& x) const { return lattice_contains(lattice_, x); }
bool Subgroup::contains(const Subgroup& o) const { return lattice_contains(lattice_, o.lattice_); }
bool Subgroup::is_zero() const { return lattice_ == ambient_.relation_lattice(); }
bool Subgroup::is_whole() const { return lattice_ == IntMatrix::identity(ambient_.rank()); }

Integer Subgroup::order() const { return ambient_.order() / lattice_index(lattice_); }

Subgroup Subgroup::operator+(const Subgroup& o) const {
  return Subgroup(ambient_, hermite_basis(lattice_.hconcat(o.lattice_)));
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
  return Subgroup(ambient_, lattice_intersection(lattice_, o.lattice_));
}

SubgroupPresentation Subgroup::present() const {
  SubgroupPresentation p;
  p.sq_ = subquotient(lattice_, ambient_.relation_lattice());
  OperatorMap ops;
  for (const auto& [label, m] : ambient_.operators()) {
    const IntMatrix moved = m * lattice_;
    if (!lattice_contains(lattice_, moved)) continue;
    IntMatrix r(p.sq_.factors.size(), p.sq_.factors.size());
    for (std::size_t j = 0; j < r.cols(); ++j) r.set_column(j, p.sq_.coords(m.apply(p.sq_.lifts.column(j))));
    ops.emplace(label, std::move(r));
  }
  p.group_ = FinAbGroup(p.sq_.factors, ambient_.prime(), std::move(ops));
  p.inclusion_ = GroupHom(p.group_, ambient_, p.sq_.lifts);
  return p;
}

QuotientPresentation Subgroup::quotient() const {
  QuotientPresentation q;
  const std::size_t k = ambient_.rank();
  const Subquotient sq = subquotient(IntMatrix::identity(k), lattice_);
  OperatorMap ops;
  for (const auto& [label, m] : ambient_.operators()) {
    if (!lattice_contains(lattice_, m * lattice_)) continue;
    IntMatrix r(sq.factors.size(), sq.factors.size());
    for (std::size_t j = 0; j < r.cols(); ++j) r.set_column(j, sq.coords(m.apply(sq.lifts.column(j))));
    ops.emplace(label, std::move(r));
  }
  q.group_ = FinAbGroup(sq.factors, ambient_.prime(), std::move(ops));
  q.projection_ = GroupHom(ambient_, q.group_, sq.coord_map);
  q.lifts_ = ambient_.reduce_rows(sq.lifts);
  return q;
}

Vector SubgroupPresentation::coords(const Vector& x) const { return sq_.coords(x); }

GroupHom restrict_hom(const GroupHom& f, const SubgroupPresentation& src, const SubgroupPresentation& tgt) {
  IntMatrix m(tgt.group().rank(), src.group().rank());
  for (std::size_t j = 0; j < m.cols(); ++j)
    m.set_column(j, tgt.coords(f.matrix().apply(src.inclusion().matrix().column(j))));
  return GroupHom(src.group(), tgt.group(), m);
}

GroupHom induced_on_quotients(const GroupHom& f, const QuotientPresentation& src, const QuotientPresentation& tgt) {
  IntMatrix m(tgt.group().rank(), src.group().rank());
  for (std::size_t j = 0; j < m.cols(); ++j)
    m.set_column(j, tgt.projection().apply(f.matrix().apply(src.lifts().column(j))));
  return GroupHom(src.group(), tgt.group(), m);
}

// ------------------------------------------------------------- constructions

GroupHom factor_through_surjection(const GroupHom& p, const GroupHom& q) {
  if (!p.source().same_underlying_group(q.source()))
    throw Error(ErrorKind::CompositionMismatch, "maps to factor have different sources");
  const FinAbGroup& B = p.target();
  const IntMatrix system = p.matrix().hconcat(B.relation_lattice());
  IntMatrix m(q.target().rank(), B.rank());
  for (std::size_t j = 0; j < B.rank(); ++j) {
    Vector e(B.rank(), Integer(0));
    e[j] = 1;
    auto x = solve_integral(system, e);
    if (!x) throw Error(ErrorKind::InvalidHom, "map to factor through is not onto");
    x->resize(p.source().rank());
    m.set_column(j, q.matrix().apply(*x));
  }
  GroupHom phi(B, q.target(), m);
  if (!(phi.after(p) == q)) throw Error(ErrorKind::InvalidHom, "map does not factor through the surjection");
  return phi;
}

FinAbGroup canonicalize(const IntMatrix& relations) {
  const auto s = smith_decomposition(relations);
  if (s.rank < relations.rows())
    throw Error(ErrorKind::InfiniteGroup, "presentation has free rank " + std::to_string(relations.rows() - s.rank));
  Vector f;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) f.push_back(s.D(i, i));
  return FinAbGroup(std::move(f));
}

Subobject kernel(const GroupHom& f) {
  auto p = Subgroup::kernel_of(f).present();
  return {p.group(), p.inclusion()};
}

Subobject image(const GroupHom& f) {
  auto p = Subgroup::image_of(f).present();
  return {p.group(), p.inclusion()};
}

QuotientObject cokernel(const GroupHom& f) {
  auto q = Subgroup::image_of(f).quotient();
  return {q.group(), q.projection()};
}

QuotientObject quotient_by_integer(const FinAbGroup& g, const Integer& n) {
  if (n < 1) throw std::invalid_argument("quotient_by_integer requires N >= 1");
  std::vector<std::size_t> keep;
  Vector f;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Integer d = gcd(g.invariant_factors()[i], n);
    if (d != 1) {
      keep.push_back(i);
      f.push_back(d);
    }
  }
  OperatorMap ops;
  for (const auto& [label, m] : g.operators()) ops.emplace(label, m.select_rows(keep).select_columns(keep));
  FinAbGroup q(std::move(f), g.prime(), std::move(ops));
  IntMatrix proj = IntMatrix::identity(g.rank()).select_rows(keep);
  return {q, GroupHom(g, q, proj)};
}

bool is_exact_at(const GroupHom& f, const GroupHom& g) {
  if (!f.target().same_underlying_group(g.source()))
    throw Error(ErrorKind::CompositionMismatch, "target of f differs from source of g");
  return Subgroup::image_of(f).lattice() == Subgroup::kernel_of(g).lattice();
}

DirectSum direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  const auto prime = common_prime(a, b);
  const std::size_t ka = a.rank(), kb = b.rank(), k = ka + kb;
  Vector factors;
  IntMatrix inj(0, 0), proj(0, 0);  // inj: new x old coords, proj: old x new coords

  Vector concat = a.invariant_factors();
  concat.insert(concat.end(), b.invariant_factors().begin(), b.invariant_factors().end());
  std::vector<std::size_t> order = iota(0, k);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return concat[x] < concat[y]; });
  bool chain = true;
  for (std::size_t i = 1; i < k; ++i)
    if (!mpz_divisible_p(concat[order[i]].get_mpz_t(), concat[order[i - 1]].get_mpz_t())) chain = false;

  if (chain) {
    inj = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      inj(i, order[i]) = 1;
      factors.push_back(concat[order[i]]);
    }
    proj = inj.transpose();
  } else {
    const auto s = smith_decomposition(IntMatrix::diagonal(concat));
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i)
      if (s.D(i, i) != 1) {
        keep.push_back(i);
        factors.push_back(s.D(i, i));
      }
    inj = s.U.select_rows(keep);
    proj = s.U_inv.select_columns(keep);
  }

  const auto first = iota(0, ka), second = iota(ka, k);
  FinAbGroup bare(factors, prime);
  GroupHom inj1(a.without_operators(), bare, inj.select_columns(first));
  GroupHom inj2(b.without_operators(), bare, inj.select_columns(second));
  GroupHom proj1(bare, a.without_operators(), proj.select_rows(first));
  GroupHom proj2(bare, b.without_operators(), proj.select_rows(second));

  OperatorMap ops;
  for (const auto& [label, ma] : a.operators()) {
    auto it = b.operators().find(label);
    if (it == b.operators().end()) continue;
    IntMatrix m = inj1.matrix() * ma * proj1.matrix() + inj2.matrix() * it->second * proj2.matrix();
    ops.emplace(label, std::move(m));
  }
  FinAbGroup sum(factors, prime, std::move(ops));
  return {sum, GroupHom(a, sum, inj1.matrix()), GroupHom(b, sum, inj2.matrix()), GroupHom(sum, a, proj1.matrix()),
          GroupHom(sum, b, proj2.matrix())};
}

}  // namespace arl
