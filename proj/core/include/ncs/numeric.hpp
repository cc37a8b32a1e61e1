#pragma once

#include <complex>
#include <random>
#include <span>
#include <vector>

#include "ncs/algebra.hpp"
#include "ncs/presentation.hpp"
#include "ncs/scalar.hpp"

namespace ncs {

/// Small dense complex matrix used by the numeric oracles.  Self-contained so
/// the public headers carry no third-party linear-algebra dependency; all the
/// matrices involved are tiny (at most 96x96 after tensor products).
class ComplexMatrix {
 public:
  using Complex = std::complex<double>;

  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ComplexMatrix identity(int n);

  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  Complex& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Complex& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { a += b; return a; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { a -= b; return a; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const Complex& s, ComplexMatrix m);

  [[nodiscard]] ComplexMatrix adjoint() const;
  [[nodiscard]] Complex trace() const;
  /// Largest entry magnitude; the distance measure used by the numeric tests.
  [[nodiscard]] double norm_inf() const;
  /// Integer power for a unitary matrix; negative exponents use the adjoint.
  [[nodiscard]] ComplexMatrix unitary_power(int k) const;
  static ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

/// Finite-dimensional clock-and-shift representation of the acting torus at
/// the rational deformation value theta = 2/modulus (mu = exp(2*pi*i/modulus)).
/// Every conjugate pair p is assigned a unitary word t_p with
/// t_p t_q = mu^(Q[p][q]) t_q t_p, verified at construction.
struct TorusRep {
  int modulus = 6;
  int dimension = 1;
  std::vector<ComplexMatrix> pair_word;  ///< per conjugate pair

  [[nodiscard]] Rational theta() const { return Rational(2, modulus); }
  [[nodiscard]] std::complex<double> mu() const;

  /// Builds the representation for a presentation whose torus lattice is
  /// either zero (trivial rep, dimension 1) or the rank-two symplectic form
  /// scaled by an integer (clock and shift on C^modulus).
  static TorusRep build(const Presentation& pres, int modulus = 6);
};

/// A point of the classical (mu = 1) manifold underlying a presentation: one
/// complex amplitude per conjugate pair and one real value per central
/// self-adjoint generator, satisfying the presentation's sphere relations.
struct SpherePoint {
  std::vector<std::complex<double>> pair_value;
  std::vector<double> central_value;
};

/// Uniform-ish random point on the classical manifold of a preset family
/// (7-sphere, 4-sphere, SU(2), torus; plane presets get unconstrained
/// Gaussian amplitudes).
SpherePoint random_sphere_point(const Presentation& pres, std::mt19937& rng);

/// Pushes a 7-sphere point through the classical fibration onto the 4-sphere.
SpherePoint s4_point_from_s7(const SpherePoint& point);

/// Split evaluation of algebra elements: each generator becomes its classical
/// amplitude at a point times its torus unitary, an exact *-homomorphism at
/// theta = 2/modulus.  Equality of evaluations at several random points is the
/// numeric equality oracle; a single clearly-nonzero evaluation certifies that
/// an element is nonzero in the deformed algebra.
class NumericEvaluator {
 public:
  explicit NumericEvaluator(const Presentation& pres, int modulus = 6);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] const TorusRep& rep() const noexcept { return rep_; }

  /// Value of one generator: classical amplitude times torus unitary.
  [[nodiscard]] ComplexMatrix generator_matrix(int gen, const SpherePoint& point) const;
  /// Evaluation of a canonical-form element.
  [[nodiscard]] ComplexMatrix evaluate(const AlgebraElement& element,
                                       const SpherePoint& point) const;
  /// Evaluation of a free word in the given letter order (no canonical
  /// reordering): the independent cross-check of the phase bookkeeping.
  [[nodiscard]] ComplexMatrix evaluate_word(std::span<const int> letters, const Scalar& coeff,
                                            const SpherePoint& point) const;

 private:
  const Presentation* pres_;
  TorusRep rep_;
  std::vector<int> central_slot_;  ///< generator -> index into central_value
};

/// True when the element evaluates below `tolerance` (sup-norm) at
/// `point_count` seeded random points.
bool numerically_zero(const AlgebraElement& element, int point_count, unsigned seed,
                      double tolerance);

}  // namespace ncs
