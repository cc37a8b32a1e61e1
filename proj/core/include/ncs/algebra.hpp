#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncs/presentation.hpp"
#include "ncs/scalar.hpp"

namespace ncs {

/// Canonical monomial: exponents of the generators in fixed order.  Every
/// stored monomial is fully reduced (ordering phases absorbed into scalars,
/// reduction rules applied).
struct Monomial {
  ExponentArray exps{};

  [[nodiscard]] int degree() const noexcept {
    int d = 0;
    for (auto e : exps) d += e;
    return d;
  }
  [[nodiscard]] bool is_identity() const noexcept {
    for (auto e : exps)
      if (e != 0) return false;
    return true;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

/// Graded-lexicographic order (degree first, then exponent arrays).
bool monomial_less(const Monomial& a, const Monomial& b) noexcept;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Per-pair signed degree vector of a monomial (length = pair count).  This is
/// the fine grading that drives exchange phases.
std::vector<int> pair_degree(const Presentation& pres, const Monomial& m);

/// Degree of a monomial in the acting torus's weight lattice (length = torus
/// rank).  Coarser than pair_degree: several pairs may share a weight.
std::vector<int> torus_weight_degree(const Presentation& pres, const Monomial& m);

/// Phase exponent picked up when the product of two canonical monomials is
/// reordered into canonical form: m1 * m2 = mu^phase * canonical(m1+m2).
long long reorder_phase(const Presentation& pres, const Monomial& m1, const Monomial& m2);

/// Element of a coordinate algebra in canonical form: a sorted term list of
/// (reduced monomial, exact scalar).  Value type; the presentation is shared
/// immutable state identified by pointer.
class AlgebraElement {
 public:
  explicit AlgebraElement(const Presentation& pres) : pres_(&pres) {}

  static AlgebraElement zero(const Presentation& pres) { return AlgebraElement(pres); }
  static AlgebraElement one(const Presentation& pres);
  static AlgebraElement from_scalar(const Presentation& pres, Scalar value);
  static AlgebraElement generator(const Presentation& pres, int index);
  static AlgebraElement from_monomial(const Presentation& pres, const Monomial& m, Scalar value);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] const std::vector<std::pair<Monomial, Scalar>>& terms() const noexcept {
    return terms_;
  }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool is_scalar() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_identity());
  }
  /// Maximum total degree over the terms (0 for the zero element).
  [[nodiscard]] int degree() const noexcept;
  /// Coefficient of a monomial (zero scalar when absent).
  [[nodiscard]] Scalar coefficient(const Monomial& m) const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { a += b; return a; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { a -= b; return a; }
  friend AlgebraElement operator-(const AlgebraElement& a);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  AlgebraElement& operator*=(const AlgebraElement& other);
  friend AlgebraElement operator*(const Scalar& s, AlgebraElement a);
  AlgebraElement& scale(const Scalar& s);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.pres_ == b.pres_ && a.terms_ == b.terms_;
  }

  /// The *-involution: reverses monomials, conjugates generators and scalars.
  [[nodiscard]] AlgebraElement adjoint() const;

  [[nodiscard]] bool is_torus_homogeneous() const;
  /// Torus weight degree of a homogeneous element (DomainError when mixed,
  /// zero vector for the zero element).
  [[nodiscard]] std::vector<int> torus_degree() const;
  /// Splits into torus-homogeneous components, keyed by weight degree.
  [[nodiscard]] std::vector<std::pair<std::vector<int>, AlgebraElement>> split_by_torus_degree()
      const;
  /// Splits into components homogeneous for the fine per-pair grading; finer
  /// than split_by_torus_degree, useful for grading-aware linear algebra.
  [[nodiscard]] std::vector<std::pair<std::vector<int>, AlgebraElement>> split_by_pair_degree()
      const;

  /// Commutative specialisation mu = 1, as an element over the classical
  /// companion presentation.
  [[nodiscard]] AlgebraElement classical_limit() const;

  [[nodiscard]] std::string to_string() const;

  /// Replaces the term list wholesale (terms must be reduced monomials; they
  /// are sorted and zero coefficients dropped).
  static AlgebraElement from_terms(const Presentation& pres,
                                   std::vector<std::pair<Monomial, Scalar>> terms);

 private:
  const Presentation* pres_;
  std::vector<std::pair<Monomial, Scalar>> terms_;
};

/// Accumulates (monomial, scalar) contributions and produces a canonical
/// sorted term list; the workhorse behind products and reductions.
class TermAccumulator {
 public:
  void add(const Monomial& m, Scalar value);
  [[nodiscard]] std::vector<std::pair<Monomial, Scalar>> finalize_sorted();

 private:
  std::unordered_map<Monomial, Scalar, MonomialHash> map_;
};

/// Reduces (possibly unreduced) exponents into the accumulator, applying the
/// presentation's rewrite rules exhaustively.
void reduce_into(TermAccumulator& acc, const Presentation& pres, const ExponentArray& raw,
                 Scalar value);

/// Canonical form of an arbitrary word of generator indices times a scalar.
AlgebraElement word_product(const Presentation& pres, std::span<const int> letters, Scalar coeff);

/// Canonical-form identity map over the operation surface: elements are kept
/// canonical by construction, so this re-asserts and returns the input.
AlgebraElement normal_form(const AlgebraElement& e);

/// All reduced monomials with total degree <= max_degree, optionally filtered
/// to one per-pair torus degree; graded-lexicographically sorted.
std::vector<Monomial> graded_basis(const Presentation& pres, int max_degree,
                                   const std::optional<std::vector<int>>& torus_filter = {});

/// The invariant generators of the 4-sphere subalgebra inside the deformed
/// 7-sphere algebra.
struct InvariantGenerators {
  AlgebraElement alpha;
  AlgebraElement beta;
  AlgebraElement x;
};
InvariantGenerators invariant_generators();

/// Checks the 4-sphere presentation relations (with lambda = mu^2) on the
/// invariant generators inside the 7-sphere algebra; returns per-relation
/// outcomes.
struct RelationCheck {
  std::string relation;
  bool holds = false;
};
std::vector<RelationCheck> invariant_relation_check();

/// *-homomorphism from the 4-sphere algebra onto the invariant subalgebra of
/// the 7-sphere algebra.
AlgebraElement include_into_s7(const AlgebraElement& s4_element);

}  // namespace ncs
