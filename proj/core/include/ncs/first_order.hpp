#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ncs/algebra.hpp"
#include "ncs/numeric.hpp"
#include "ncs/presentation.hpp"

namespace ncs {

/// Word of delta-symbols: [g1, g2, ...] stands for (delta g1)(delta g2)....
/// Delta-words have no exchange relations among themselves; algebra elements
/// pass through a delta-symbol with the same phase as through its generator.
struct DeltaWord {
  std::vector<int> letters;
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(letters.size()); }
  friend bool operator==(const DeltaWord& a, const DeltaWord& b) = default;
  friend bool operator<(const DeltaWord& a, const DeltaWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  }
};

struct DeltaWordHash {
  std::size_t operator()(const DeltaWord& w) const noexcept;
};

/// Element of the universal delta-calculus over a coordinate algebra: a sum of
/// delta-words with right algebra coefficients, canonically ordered.  The
/// calculus of a sphere is this module modulo the sub-bimodule generated by
/// the delta of its defining relation (see delta_relation_generators).
class FirstOrderElement {
 public:
  explicit FirstOrderElement(const Presentation& pres) : pres_(&pres) {}
  static FirstOrderElement zero(const Presentation& pres) { return FirstOrderElement(pres); }
  static FirstOrderElement from_algebra(AlgebraElement value);
  static FirstOrderElement from_term(DeltaWord word, AlgebraElement coefficient);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] const std::vector<std::pair<DeltaWord, AlgebraElement>>& terms() const noexcept {
    return terms_;
  }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest delta-word length present (0 for pure algebra elements).
  [[nodiscard]] int degree() const noexcept;
  [[nodiscard]] bool is_degree_homogeneous() const noexcept;

  FirstOrderElement& operator+=(const FirstOrderElement& other);
  FirstOrderElement& operator-=(const FirstOrderElement& other);
  friend FirstOrderElement operator+(FirstOrderElement a, const FirstOrderElement& b) {
    a += b;
    return a;
  }
  friend FirstOrderElement operator-(FirstOrderElement a, const FirstOrderElement& b) {
    a -= b;
    return a;
  }
  friend FirstOrderElement operator-(const FirstOrderElement& a);
  friend FirstOrderElement operator*(const FirstOrderElement& a, const FirstOrderElement& b);
  friend FirstOrderElement operator*(const Scalar& s, FirstOrderElement a);
  friend FirstOrderElement operator*(const AlgebraElement& a, const FirstOrderElement& b);
  friend FirstOrderElement operator*(const FirstOrderElement& a, const AlgebraElement& b);
  friend bool operator==(const FirstOrderElement& a, const FirstOrderElement& b) {
    return a.pres_ == b.pres_ && a.terms_ == b.terms_;
  }

  /// Graded involution: (delta a)* = delta(a*), (xy)* = (-1)^(|x||y|) y* x*.
  [[nodiscard]] FirstOrderElement adjoint() const;

  [[nodiscard]] std::string to_string() const;

 private:
  void add_term(DeltaWord word, AlgebraElement coefficient);
  const Presentation* pres_;
  std::vector<std::pair<DeltaWord, AlgebraElement>> terms_;  // sorted by word
};

/// The derivation a -> delta a on algebra elements (only; delta does not act
/// on forms).  Satisfies Leibniz exactly on relation-free presentations and
/// modulo the relation ideal on spheres.
FirstOrderElement fo_delta(const AlgebraElement& value);

/// Formal Leibniz differentials of the presentation's defining relations:
/// the generators of the sub-bimodule one quotients by.  For a sphere this is
/// the single element delta(sum_i z_i z_i^*) expanded letterwise.
std::vector<FirstOrderElement> delta_relation_generators(const Presentation& pres);

enum class QuotientVerdict {
  Zero,       ///< certified member of the relation sub-bimodule
  Nonzero,    ///< certified by a numeric representation witness
  Undecided,  ///< neither certificate found within the budget
};

struct QuotientZeroReport {
  QuotientVerdict verdict = QuotientVerdict::Undecided;
  int degree_bound = 0;       ///< coefficient-degree bound used for the search
  double witness_norm = 0.0;  ///< largest numeric evaluation seen (Nonzero only)
  std::string detail;
};

/// Tri-state zero test in the quotient calculus: exact-zero fast path, then a
/// certified membership search against the relation sub-bimodule, then a
/// numeric nonzero witness through the Clifford-times-torus representation.
QuotientZeroReport fo_is_zero_in_quotient(const FirstOrderElement& element,
                                          int coefficient_degree_cap = 10);

/// Numeric representation of the delta-calculus: a delta-symbol becomes
/// Clifford multiplication by the tangentially-projected gradient of its
/// coordinate function, tensored with the generator's torus unitary.  Exact
/// representation of the quotient calculus at theta = 2/modulus, so a clearly
/// nonzero evaluation certifies a nonzero element.
class DiracEvaluator {
 public:
  explicit DiracEvaluator(const Presentation& pres, int modulus = 6);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] int dimension() const noexcept { return dimension_; }
  [[nodiscard]] int ambient_dimension() const noexcept {
    return static_cast<int>(gammas_.size());
  }
  [[nodiscard]] const ComplexMatrix& gamma(int k) const { return gammas_.at(k); }

  [[nodiscard]] ComplexMatrix evaluate(const FirstOrderElement& element,
                                       const SpherePoint& point) const;
  [[nodiscard]] ComplexMatrix evaluate_algebra(const AlgebraElement& element,
                                               const SpherePoint& point) const;

 private:
  [[nodiscard]] ComplexMatrix algebra_letter(int gen, const SpherePoint& point) const;
  [[nodiscard]] ComplexMatrix delta_letter(int gen, const SpherePoint& point) const;

  const Presentation* pres_;
  TorusRep torus_;
  std::vector<ComplexMatrix> gammas_;  ///< ambient Clifford generators
  std::vector<int> central_slot_;
  bool tangential_ = true;  ///< project gradients onto the sphere's tangent space
  int dimension_ = 0;
};

/// Pauli-ladder (Jordan-Wigner) Clifford generators for R^n: n hermitian
/// matrices of size 2^ceil(n/2) with g_a g_b + g_b g_a = 2 delta_ab.
std::vector<ComplexMatrix> clifford_generators(int n);

}  // namespace ncs
