#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncs/algebra.hpp"
#include "ncs/first_order.hpp"

namespace ncs {

/// Column vector of algebra elements over one presentation.  Pairings
/// contract with the star on the left argument, so kets form a right module.
class KetVector {
 public:
  KetVector(const Presentation& pres, int size);
  static KetVector from_components(const Presentation& pres,
                                   std::vector<AlgebraElement> components);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(components_.size()); }
  [[nodiscard]] const AlgebraElement& at(int index) const { return components_.at(index); }
  [[nodiscard]] AlgebraElement& at(int index) { return components_.at(index); }
  [[nodiscard]] bool is_zero() const;

  KetVector& operator+=(const KetVector& other);
  KetVector& operator-=(const KetVector& other);
  friend KetVector operator+(KetVector a, const KetVector& b) { a += b; return a; }
  friend KetVector operator-(KetVector a, const KetVector& b) { a -= b; return a; }
  /// Componentwise right multiplication (the right module action).
  friend KetVector operator*(KetVector ket, const AlgebraElement& value);
  friend KetVector operator*(const Scalar& s, KetVector ket);
  friend bool operator==(const KetVector& a, const KetVector& b) {
    return a.pres_ == b.pres_ && a.components_ == b.components_;
  }
  friend bool operator!=(const KetVector& a, const KetVector& b) { return !(a == b); }

 private:
  const Presentation* pres_;
  std::vector<AlgebraElement> components_;
};

/// Hermitian pairing <x|y> = sum_i x_i^* y_i.
AlgebraElement bra_ket(const KetVector& x, const KetVector& y);

/// One-form pairing <x|delta y> = sum_i x_i^* delta(y_i).
FirstOrderElement bra_delta_ket(const KetVector& x, const KetVector& y);

/// Kronecker tensor product: component I of x tensor y at linear index
/// i*size(y)+j equals x_i * y_j.
KetVector tensor(const KetVector& x, const KetVector& y);

/// The two orthonormal generating kets of the instanton bundle over the
/// 7-sphere, and the deformed pair that conjugates the basic projection into
/// its twisted form.
std::pair<KetVector, KetVector> psi_kets();
std::pair<KetVector, KetVector> psi_tilde_kets();

/// Unnormalised symmetrised ket: the sum of all distinct tensor arrangements
/// of (n-k+1) first kets and (k-1) second kets; k runs over 1..n+1.
KetVector symmetrized_ket(int n, int k);

/// Orthonormal symmetrised kets: symmetrized_ket(n, k) scaled by
/// 1/sqrt(binom(n, k-1)).
std::vector<KetVector> phi_kets(int n);

/// Dense rectangular matrix of algebra elements over one presentation.
class AlgebraMatrix {
 public:
  AlgebraMatrix(const Presentation& pres, int rows, int cols);
  static AlgebraMatrix identity(const Presentation& pres, int size);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] int rows() const noexcept { return rows_; }
  [[nodiscard]] int cols() const noexcept { return cols_; }
  [[nodiscard]] const AlgebraElement& at(int row, int col) const;
  [[nodiscard]] AlgebraElement& at(int row, int col);

  AlgebraMatrix& operator+=(const AlgebraMatrix& other);
  AlgebraMatrix& operator-=(const AlgebraMatrix& other);
  friend AlgebraMatrix operator+(AlgebraMatrix a, const AlgebraMatrix& b) { a += b; return a; }
  friend AlgebraMatrix operator-(AlgebraMatrix a, const AlgebraMatrix& b) { a -= b; return a; }
  friend AlgebraMatrix operator*(const AlgebraMatrix& a, const AlgebraMatrix& b);
  friend AlgebraMatrix operator*(const Scalar& s, AlgebraMatrix a);
  friend bool operator==(const AlgebraMatrix& a, const AlgebraMatrix& b) {
    return a.pres_ == b.pres_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const AlgebraMatrix& a, const AlgebraMatrix& b) { return !(a == b); }

  /// Conjugate transpose (entrywise star).
  [[nodiscard]] AlgebraMatrix adjoint() const;
  [[nodiscard]] AlgebraElement trace() const;
  [[nodiscard]] bool is_zero() const;

 private:
  const Presentation* pres_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<AlgebraElement> entries_;  // row-major
};

/// Expresses an element of the 7-sphere algebra as a polynomial in the
/// invariant generators, i.e. as an element of the 4-sphere algebra.  The
/// result is certified by mapping it back through the inclusion and comparing
/// exactly; nullopt when the element does not lie in the invariant subalgebra
/// within the degree cap.  A negative cap picks ceil(degree/2).
std::optional<AlgebraElement> rewrite_to_invariant(const AlgebraElement& ambient,
                                                   int degree_cap = -1);

/// Reusable form of rewrite_to_invariant: keeps one membership solver per
/// torus-weight class alive across calls, so long computations that rewrite
/// many elements (descent certificates, curvature traces) share the setup
/// cost.  Candidate polynomials are capped at the given degree over the
/// 4-sphere generators.
class InvariantRewriter {
 public:
  explicit InvariantRewriter(int degree_cap);
  InvariantRewriter(InvariantRewriter&&) noexcept;
  InvariantRewriter& operator=(InvariantRewriter&&) noexcept;
  ~InvariantRewriter();

  [[nodiscard]] int degree_cap() const noexcept;
  std::optional<AlgebraElement> rewrite(const AlgebraElement& ambient);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Projection matrix with entries certified to lie in the 4-sphere algebra:
/// construction rewrites every entry through the invariant generators and
/// fails hard when a rewrite or its certificate does not hold.
struct ProjectionMatrix {
  int n = 0;
  AlgebraMatrix entries;  ///< 4^n x 4^n over the 4-sphere presentation
};

/// The rank-(n+1) instanton projection: the sum of the symmetrised-ket
/// rank-one projections, assembled square-root-free from unnormalised kets
/// and rational normalisations, with entries rewritten over the 4-sphere.
ProjectionMatrix projection(int n);

/// The twisted form of the basic projection, built from the deformed kets.
ProjectionMatrix twisted_projection();

/// Equivalence of the basic projection with its twisted form through the
/// partial isometry v = u~ u*.
struct EquivalenceReport {
  bool isometry = false;            ///< u* u = I_2
  bool twisted_isometry = false;    ///< u~* u~ = I_2
  bool conjugates_projection = false;  ///< v* v equals the basic projection
  bool conjugates_twisted = false;     ///< v v* equals the twisted projection
  bool classical_limits_agree = false; ///< at mu = 1 the two projections match
  bool passed = false;
};
EquivalenceReport projection_equivalence_check();

/// The four basic one-form pairings between the generating kets.
struct GaugePairings {
  FirstOrderElement p11;  ///< <psi_1|delta psi_1>
  FirstOrderElement p12;  ///< <psi_1|delta psi_2>
  FirstOrderElement p21;  ///< <psi_2|delta psi_1>
  FirstOrderElement p22;  ///< <psi_2|delta psi_2>
};
GaugePairings gauge_pairings();

/// Connection one-form of the Grassmann connection: the (n+1)x(n+1) matrix
/// A_kl = <phi_k|delta phi_l> of one-forms over the 7-sphere (0-based
/// indices).
class ConnectionMatrix {
 public:
  ConnectionMatrix(const Presentation& pres, int size);

  [[nodiscard]] const Presentation& presentation() const noexcept { return *pres_; }
  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] const FirstOrderElement& at(int row, int col) const;
  [[nodiscard]] FirstOrderElement& at(int row, int col);

 private:
  const Presentation* pres_;
  int size_ = 0;
  std::vector<FirstOrderElement> entries_;  // row-major
};
ConnectionMatrix grassmann_connection(int n);

/// Decomposes the connection one-form over the spin-n/2 ladder matrices with
/// the three one-forms extracted from the basic connection, and certifies
/// that the residual (a multiple of the trace pairing) vanishes in the
/// quotient calculus.
struct Su2Report {
  int n = 0;
  int entries_exact = 0;     ///< entries matching the ladder decomposition exactly
  int entries_quotient = 0;  ///< residuals certified zero in the quotient calculus
  bool passed = false;
  std::string detail;
};
Su2Report su2_decomposition_report(int n);
bool su2_valuedness_check(int n);

/// Module picture: sections p|f> with 4-sphere coefficients f correspond to
/// coequivariant tuples (<phi_k|f>)_k of 7-sphere elements.
KetVector section_from_coefficients(const ProjectionMatrix& p, const KetVector& coefficients);
std::vector<AlgebraElement> map_from_section(int n, const KetVector& section);
KetVector section_from_map(int n, const std::vector<AlgebraElement>& values);

}  // namespace ncs
