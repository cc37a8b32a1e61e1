#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncs/algebra.hpp"
#include "ncs/exterior.hpp"
#include "ncs/numeric.hpp"
#include "ncs/presentation.hpp"
#include "ncs/scalar.hpp"

namespace ncs {

/// Exponents (a, b) of the two torus generators u, v (with u v = mu v u)
/// attached to a term by the splitting homomorphism.
struct TorusWord {
  int a = 0;
  int b = 0;

  friend bool operator==(const TorusWord& x, const TorusWord& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const TorusWord& x, const TorusWord& y) { return !(x == y); }
  friend bool operator<(const TorusWord& x, const TorusWord& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
  friend TorusWord operator+(const TorusWord& x, const TorusWord& y) {
    return TorusWord{x.a + y.a, x.b + y.b};
  }
};

/// One classical-leg term: coefficient times a wedge of coordinate
/// differentials (the generator subset `mask`, read in ascending order) times
/// a commutative monomial in the coordinate functions.
struct SplitTerm {
  std::uint32_t mask = 0;
  Monomial monomial;
  Scalar coefficient;
};

/// All classical-leg terms tensored with one torus word u^a v^b.
struct SplitPart {
  TorusWord word;
  std::vector<SplitTerm> terms;  ///< sorted by (mask length, mask, monomial)
};

/// Image of a differential form under the splitting homomorphism: a sum of
/// classical differential forms on the undeformed sphere, each tensored with
/// a torus word.  The classical legs commute (coordinate functions) or
/// anticommute (their differentials); every deformation phase lives in the
/// torus leg and has already been folded into the scalar coefficients, so
/// sums and products here are exact.
class SplitForm {
 public:
  explicit SplitForm(const Presentation& pres) : pres_(&pres) {}
  static SplitForm zero(const Presentation& pres) { return SplitForm(pres); }

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] const std::vector<SplitPart>& parts() const noexcept { return parts_; }
  [[nodiscard]] bool is_zero() const noexcept { return parts_.empty(); }

  /// Accumulates one term into the part holding `word`, keeping canonical
  /// order and dropping cancelled terms.
  void add_term(const TorusWord& word, std::uint32_t mask, const Monomial& monomial,
                Scalar coefficient);

  SplitForm& operator+=(const SplitForm& other);
  SplitForm& operator-=(const SplitForm& other);
  friend SplitForm operator+(SplitForm x, const SplitForm& y) {
    x += y;
    return x;
  }
  friend SplitForm operator-(SplitForm x, const SplitForm& y) {
    x -= y;
    return x;
  }
  friend SplitForm operator*(const SplitForm& x, const SplitForm& y);
  friend bool operator==(const SplitForm& x, const SplitForm& y);
  friend bool operator!=(const SplitForm& x, const SplitForm& y) { return !(x == y); }

  [[nodiscard]] std::string to_string() const;

 private:
  const Presentation* pres_;
  std::vector<SplitPart> parts_;  ///< sorted by word
};

/// Splitting homomorphism: each generator maps to its classical coordinate
/// function tensored with the torus word given by its weight, conjugate
/// generators picking up the phase that makes the map a *-homomorphism.
/// Multiplicative and compatible with the differential by construction.
SplitForm split(const AlgebraElement& element);
SplitForm split(const ExteriorElement& element);

/// Exterior differential on the classical leg (the torus leg is constant):
/// the split of d(x) equals split_d(split(x)) exactly.
SplitForm split_d(const SplitForm& form);

/// Sign of e_S wedge e_{S^c} relative to e_{1..d}: parity of the inversions
/// between the subset and its complement.
int complement_sign(std::uint32_t subset, int frame_dimension);

/// Numeric value of one torus part at a classical point: one complex number
/// per subset of the tangent frame.
struct EvaluatedPart {
  TorusWord word;
  std::vector<std::complex<double>> component;  ///< indexed by frame-subset mask
};

/// Value of a split form at a classical point of the sphere: classical legs
/// evaluated against an oriented orthonormal tangent frame, torus legs kept
/// as words with their deformation phases applied numerically.
struct PointEvaluation {
  int frame_dimension = 0;
  double theta = 0.0;                ///< deformation angle; mu = exp(i pi theta)
  std::vector<EvaluatedPart> parts;  ///< sorted by word

  /// mu^k at this evaluation's deformation angle.
  [[nodiscard]] std::complex<double> phase(long long k) const;
  [[nodiscard]] double norm_inf() const;

  PointEvaluation& operator+=(const PointEvaluation& other);
  PointEvaluation& operator-=(const PointEvaluation& other);
  friend PointEvaluation operator+(PointEvaluation x, const PointEvaluation& y) {
    x += y;
    return x;
  }
  friend PointEvaluation operator-(PointEvaluation x, const PointEvaluation& y) {
    x -= y;
    return x;
  }
  /// Wedge on the frame legs, torus-word collection (with its numeric phase)
  /// on the torus legs.
  friend PointEvaluation operator*(const PointEvaluation& x, const PointEvaluation& y);
};

PointEvaluation evaluate_at(const SplitForm& form, const SpherePoint& point, int modulus = 6);
PointEvaluation evaluate_at(const SplitForm& form, const TangentFrame& frame,
                            const FrameCovectors& covectors, const Rational& theta);

/// Hodge star of the orthonormal oriented frame, applied per subset.
PointEvaluation hodge_star_at(const PointEvaluation& value);

/// Conjugation: frame components conjugated, torus words inverted with the
/// phase of the torus *-structure.  (No grading sign; this is the "bar" that
/// enters the hermitian pairing, not the graded involution.)
PointEvaluation conjugate_at(const PointEvaluation& value);

/// Hermitian pairing of two evaluated forms: the frame contraction
/// sum_S conj(x_S) y_S per torus-word pair, words combined as (w_x)* w_y.
/// Equals the full-frame component of conjugate_at(x) * hodge_star_at(y).
std::vector<std::pair<TorusWord, std::complex<double>>> hermitian_pair_at(
    const PointEvaluation& x, const PointEvaluation& y);

/// Anti-selfduality residual of the field strength of a projection matrix:
/// the maximum over sample points, matrix entries, torus words and frame
/// subsets of |star F + F| where F = p (dp)^2.
struct AsdReport {
  double max_residual = 0.0;   ///< largest |star F + F| component seen
  double max_component = 0.0;  ///< largest |F| component seen (scale reference)
  double tolerance = 0.0;
  bool pass = false;
  std::vector<double> per_point;  ///< max residual at each sample point
};

AsdReport asd_residual(const std::vector<std::vector<AlgebraElement>>& projection, int samples,
                       unsigned seed, double tolerance, int modulus = 6);

}  // namespace ncs
