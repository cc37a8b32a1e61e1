#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncs/algebra.hpp"
#include "ncs/first_order.hpp"
#include "ncs/numeric.hpp"
#include "ncs/presentation.hpp"

namespace ncs {

/// Element of the exterior (graded) differential calculus over a coordinate
/// algebra: a sum of anticommuting differential words with right algebra
/// coefficients.  A word is a set of generators (repeated symbols square to
/// zero), stored as a bitmask and read in ascending generator order; two
/// symbols exchange with a sign and the same deformation phase as their
/// generators, and algebra letters pass a symbol exactly as they pass its
/// generator.  The calculus of a sphere is the quotient by the ideal
/// generated by the differential of its defining relation.
class ExteriorElement {
 public:
  explicit ExteriorElement(const Presentation& pres) : pres_(&pres) {}
  static ExteriorElement zero(const Presentation& pres) { return ExteriorElement(pres); }
  static ExteriorElement from_algebra(AlgebraElement value);
  static ExteriorElement from_term(std::uint32_t word, AlgebraElement coefficient);
  /// Canonicalizes an arbitrary sequence of differential symbols (letters may
  /// repeat, in which case the result is zero) times a coefficient.
  static ExteriorElement from_letters(const Presentation& pres, const std::vector<int>& letters,
                                      AlgebraElement coefficient);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] const std::vector<std::pair<std::uint32_t, AlgebraElement>>& terms()
      const noexcept {
    return terms_;
  }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest word length present (0 for pure algebra elements).
  [[nodiscard]] int degree() const noexcept;
  [[nodiscard]] bool is_degree_homogeneous() const noexcept;
  /// The component of the given word length.
  [[nodiscard]] ExteriorElement degree_part(int degree) const;

  ExteriorElement& operator+=(const ExteriorElement& other);
  ExteriorElement& operator-=(const ExteriorElement& other);
  friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) {
    a += b;
    return a;
  }
  friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) {
    a -= b;
    return a;
  }
  friend ExteriorElement operator-(const ExteriorElement& a);
  friend ExteriorElement operator*(const ExteriorElement& a, const ExteriorElement& b);
  friend ExteriorElement operator*(const Scalar& s, ExteriorElement a);
  friend ExteriorElement operator*(const AlgebraElement& a, const ExteriorElement& b);
  friend ExteriorElement operator*(const ExteriorElement& a, const AlgebraElement& b);
  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) {
    return a.pres_ == b.pres_ && a.terms_ == b.terms_;
  }

  /// Graded involution: (d a)* = d(a*), (xy)* = (-1)^(|x||y|) y* x*.
  [[nodiscard]] ExteriorElement adjoint() const;

  [[nodiscard]] std::string to_string() const;

 private:
  void add_term(std::uint32_t word, AlgebraElement coefficient);
  const Presentation* pres_;
  std::vector<std::pair<std::uint32_t, AlgebraElement>> terms_;  // sorted by (length, mask)
};

/// The exterior differential.  A graded derivation squaring to zero: exactly
/// on relation-free presentations, modulo the relation ideal on spheres.
ExteriorElement ext_d(const ExteriorElement& value);
ExteriorElement ext_d(const AlgebraElement& value);

/// Differentials of the presentation's defining relations: the generators of
/// the graded ideal one quotients by (d R for a sphere relation R).
std::vector<ExteriorElement> d_relation_generators(const Presentation& pres);

/// Value of an exterior element at a classical point: one torus-algebra
/// matrix per subset of an oriented orthonormal tangent frame.  Products
/// wedge the frame legs and multiply the matrix legs.
struct ExteriorValue {
  int frame_dimension = 0;
  std::vector<ComplexMatrix> component;  ///< indexed by frame-subset mask

  [[nodiscard]] double norm_inf() const;
  ExteriorValue& operator+=(const ExteriorValue& other);
  ExteriorValue& operator-=(const ExteriorValue& other);
  friend ExteriorValue operator+(ExteriorValue a, const ExteriorValue& b) { a += b; return a; }
  friend ExteriorValue operator-(ExteriorValue a, const ExteriorValue& b) { a -= b; return a; }
  friend ExteriorValue operator*(const ExteriorValue& a, const ExteriorValue& b);
};

/// Oriented orthonormal frame of the tangent space at a classical point; the
/// ambient orientation with the inward radius first fixes the sign of every
/// frame, so Hodge duality is consistent across points.
struct TangentFrame {
  std::vector<double> base_point;            ///< ambient coordinates
  std::vector<std::vector<double>> vectors;  ///< orthonormal tangent vectors

  [[nodiscard]] int ambient_dimension() const { return static_cast<int>(base_point.size()); }
  [[nodiscard]] int dimension() const { return static_cast<int>(vectors.size()); }
  static TangentFrame build(const Presentation& pres, const SpherePoint& point);
};

/// Classical per-generator data at a framed point: the value of each
/// coordinate function and the frame components of its differential
/// (tangentially projected on spheres).
struct FrameCovectors {
  std::vector<std::complex<double>> amplitude;              ///< per generator
  std::vector<std::vector<std::complex<double>>> covector;  ///< per generator, per frame vector
};
FrameCovectors frame_covectors(const Presentation& pres, const SpherePoint& point,
                               const TangentFrame& frame);

/// Split numeric evaluation of the exterior calculus: a differential symbol
/// becomes the tangential gradient of its coordinate function (expanded over
/// the frame) tensored with the generator's torus unitary.  An exact
/// representation of the quotient calculus at theta = 2/modulus, so a clearly
/// nonzero evaluation certifies a nonzero element.
class ExteriorPointEvaluator {
 public:
  explicit ExteriorPointEvaluator(const Presentation& pres, int modulus = 6);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] int torus_dimension() const noexcept { return torus_.dimension; }

  [[nodiscard]] ExteriorValue evaluate(const ExteriorElement& element,
                                       const SpherePoint& point) const;

 private:
  const Presentation* pres_;
  TorusRep torus_;
};

/// Tri-state zero test in the quotient calculus: exact-zero fast path, then a
/// certified membership search against the relation ideal, then a numeric
/// nonzero witness through the split evaluation.
QuotientZeroReport ext_is_zero_in_quotient(const ExteriorElement& element,
                                           int coefficient_degree_cap = 10);

}  // namespace ncs
