#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arl/errors.hpp"
#include "arl/lattice.hpp"
#include "arl/matrix.hpp"

namespace arl {

/// Named endomorphisms (e.g. "Frob") acting on a group, by generator images.
using OperatorMap = std::map<std::string, IntMatrix>;

/// Finite abelian group Z/d_1 + ... + Z/d_k in invariant-factor form,
/// d_i >= 2 and d_i | d_{i+1}. With a prime set, every d_i is a power of it.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(Vector factors, std::optional<Prime> prime = std::nullopt,
                      OperatorMap operators = {});

  static FinAbGroup trivial(std::optional<Prime> prime = std::nullopt);
  static FinAbGroup cyclic(const Integer& n, std::optional<Prime> prime = std::nullopt);
  /// Z/l^{e_1} + ... with the exponents sorted; zero exponents are dropped.
  static FinAbGroup l_primary(Prime l, std::vector<unsigned long> exponents);

  const Vector& invariant_factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  bool is_trivial() const noexcept { return factors_.empty(); }
  Integer order() const;
  const std::optional<Prime>& prime() const noexcept { return prime_; }
  const OperatorMap& operators() const noexcept { return operators_; }

  /// Exponents of the factors when l-primary (requires prime()).
  std::vector<unsigned long> exponents() const;

  /// True iff n * G = 0.
  bool annihilated_by(const Integer& n) const;

  FinAbGroup with_prime(Prime l) const;
  FinAbGroup with_operators(OperatorMap ops) const;
  FinAbGroup without_operators() const;

  IntMatrix relation_lattice() const { return IntMatrix::diagonal(factors_); }
  Vector reduce(Vector coords) const;
  IntMatrix reduce_rows(IntMatrix m) const;  // row i reduced mod d_i

  bool operator==(const FinAbGroup& other) const;
  bool same_underlying_group(const FinAbGroup& other) const { return factors_ == other.factors_; }

  std::string to_string() const;

 private:
  Vector factors_;
  std::optional<Prime> prime_;
  OperatorMap operators_;
};

/// Element with coordinates reduced modulo the invariant factors.
struct Element {
  Element(FinAbGroup g, Vector c) : group(std::move(g)), coords(group.reduce(std::move(c))) {}
  FinAbGroup group;
  Vector coords;
  bool is_zero() const;
};

/// Every element of a (small) group, in lexicographic coordinate order.
std::vector<Vector> enumerate_elements(const FinAbGroup& g, std::size_t limit = 1u << 20);

/// Homomorphism on the chosen generators: column j is the image of generator j.
class GroupHom {
 public:
  GroupHom() = default;
  /// Validates well-definedness and operator equivariance on shared labels.
  GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix);

  static GroupHom identity(const FinAbGroup& g);
  static GroupHom zero(const FinAbGroup& source, const FinAbGroup& target);
  static GroupHom scalar(const FinAbGroup& g, const Integer& c);

  const FinAbGroup& source() const noexcept { return source_; }
  const FinAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  Vector apply(const Vector& x) const;

  bool is_zero() const { return matrix_.is_zero(); }
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const;

  /// this ∘ other.
  GroupHom after(const GroupHom& other) const;
  GroupHom operator+(const GroupHom& other) const;
  GroupHom operator-(const GroupHom& other) const;

  bool operator==(const GroupHom& other) const;

 private:
  FinAbGroup source_;
  FinAbGroup target_;
  IntMatrix matrix_;
};

class SubgroupPresentation;
class QuotientPresentation;

/// Subgroup of an ambient group, as a lattice in Z^k containing the relations.
class Subgroup {
 public:
  static Subgroup whole(const FinAbGroup& g);
  static Subgroup zero(const FinAbGroup& g);
  static Subgroup generated_by(const FinAbGroup& g, const IntMatrix& generators);
  static Subgroup image_of(const GroupHom& f);
  static Subgroup image_of(const GroupHom& f, const Subgroup& s);
  static Subgroup kernel_of(const GroupHom& f);
  static Subgroup preimage(const GroupHom& f, const Subgroup& t);
  static Subgroup multiple(const FinAbGroup& g, const Integer& n);

  const FinAbGroup& ambient() const noexcept { return ambient_; }
  const IntMatrix& lattice() const noexcept { return lattice_; }

  bool contains(const Vector& x) const;
  bool contains(const Subgroup& other) const;
  bool is_zero() const;
  bool is_whole() const;
  Integer order() const;

  Subgroup operator+(const Subgroup& other) const;
  Subgroup intersect(const Subgroup& other) const;
  bool operator==(const Subgroup& other) const { return lattice_ == other.lattice_; }

  SubgroupPresentation present() const;
  QuotientPresentation quotient() const;

 private:
  Subgroup(FinAbGroup ambient, IntMatrix lattice) : ambient_(std::move(ambient)), lattice_(std::move(lattice)) {}

  FinAbGroup ambient_;
  IntMatrix lattice_;
};

/// A subgroup as a group of its own, with inclusion and coordinate map.
class SubgroupPresentation {
 public:
  const FinAbGroup& group() const noexcept { return group_; }
  const GroupHom& inclusion() const noexcept { return inclusion_; }
  /// Coordinates of an ambient element lying in the subgroup.
  Vector coords(const Vector& ambient_element) const;

 private:
  friend class Subgroup;
  FinAbGroup group_;
  GroupHom inclusion_;
  Subquotient sq_;
};

/// ambient / subgroup, with the projection and generator lifts.
class QuotientPresentation {
 public:
  const FinAbGroup& group() const noexcept { return group_; }
  const GroupHom& projection() const noexcept { return projection_; }
  /// k x q matrix, column j an ambient lift of quotient generator j.
  const IntMatrix& lifts() const noexcept { return lifts_; }

 private:
  friend class Subgroup;
  FinAbGroup group_;
  GroupHom projection_;
  IntMatrix lifts_;
};

/// f restricted to subgroups with f(src) ⊆ tgt.
GroupHom restrict_hom(const GroupHom& f, const SubgroupPresentation& src, const SubgroupPresentation& tgt);
/// Map induced on quotients when f carries the source subgroup into the target subgroup.
GroupHom induced_on_quotients(const GroupHom& f, const QuotientPresentation& src, const QuotientPresentation& tgt);

struct Subobject {
  FinAbGroup group;
  GroupHom inclusion;
};

struct QuotientObject {
  FinAbGroup group;
  GroupHom projection;
};

/// The phi with phi o p = q, for p onto; throws InvalidHom if q does not kill ker p.
GroupHom factor_through_surjection(const GroupHom& p, const GroupHom& q);

/// Z^n / column-span(relations) in invariant-factor form.
FinAbGroup canonicalize(const IntMatrix& relations);

Subobject kernel(const GroupHom& f);
Subobject image(const GroupHom& f);
QuotientObject cokernel(const GroupHom& f);

/// G / N G; coordinatewise, so generator j of the quotient is the image of generator j of G.
QuotientObject quotient_by_integer(const FinAbGroup& g, const Integer& n);

/// im f == ker g; throws CompositionMismatch when target(f) != source(g).
bool is_exact_at(const GroupHom& f, const GroupHom& g);

struct DirectSum {
  FinAbGroup group;
  GroupHom inj1, inj2, proj1, proj2;
};

DirectSum direct_sum(const FinAbGroup& a, const FinAbGroup& b);

}  // namespace arl
