#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ncs/error.hpp"

namespace ncs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of Q(i): re + im*i with exact rational parts.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational real, Rational imag)
      : re(std::move(real)), im(std::move(imag)) {}
  explicit GaussianRational(long value) : re(value) {}
  explicit GaussianRational(Rational value) : re(std::move(value)) {}

  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] GaussianRational conjugate() const { return {re, -im}; }

  GaussianRational& operator+=(const GaussianRational& other);
  GaussianRational& operator-=(const GaussianRational& other);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
    a += b;
    return a;
  }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
    a -= b;
    return a;
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  /// Exact division; requires divisor nonzero.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// One summand coeff * mu^exponent * sqrt(radicand); radicand is squarefree
/// and >= 1 (radicand 1 means no root factor).
struct ScalarTerm {
  std::int32_t mu_exponent = 0;
  std::uint32_t radicand = 1;
  GaussianRational coeff;

  friend bool key_less(const ScalarTerm& a, const ScalarTerm& b) {
    return a.mu_exponent != b.mu_exponent ? a.mu_exponent < b.mu_exponent
                                          : a.radicand < b.radicand;
  }

  friend bool operator==(const ScalarTerm& a, const ScalarTerm& b) {
    return a.mu_exponent == b.mu_exponent && a.radicand == b.radicand &&
           a.coeff == b.coeff;
  }
};

/// Exact coefficient ring: finite sums of Gaussian-rational multiples of
/// Laurent monomials mu^k times square roots of squarefree positive integers.
/// mu is the formal deformation unitary of modulus one (mu-bar = mu^-1).
/// Terms are kept sorted by (mu exponent, radicand) with no zero summands.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(long value);
  explicit Scalar(const Rational& value);
  explicit Scalar(GaussianRational value);

  static Scalar zero() { return Scalar{}; }
  static Scalar one() { return Scalar{1}; }
  static Scalar i();
  static Scalar mu_power(std::int32_t exponent);
  /// sqrt of a positive integer, with square factors extracted exactly
  /// (sqrt_integer(12) == 2*sqrt(3)).
  static Scalar sqrt_integer(std::uint64_t value);
  /// Exact square root of a positive rational p/q: sqrt(p/q) = sqrt(p*q)/q.
  static Scalar sqrt_rational(const Rational& value);

  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool is_one() const;
  /// True when the scalar is a single summand c*mu^k*sqrt(d).
  [[nodiscard]] bool is_single_term() const noexcept { return terms_.size() == 1; }
  /// True when the scalar lies in Q (single term, mu^0, radicand 1, real).
  [[nodiscard]] bool is_rational() const;
  /// Value as a rational; requires is_rational().
  [[nodiscard]] Rational rational_value() const;

  [[nodiscard]] const std::vector<ScalarTerm>& terms() const noexcept { return terms_; }

  /// Complex conjugation: i -> -i, mu^k -> mu^-k, sqrt(d) -> sqrt(d).
  [[nodiscard]] Scalar conjugate() const;
  /// Substitutes mu = 1 (the commutative specialisation), exactly.
  [[nodiscard]] Scalar specialize_mu_one() const;
  /// Numeric value with mu = exp(i*pi*theta) for rational theta.
  [[nodiscard]] std::complex<double> eval(const Rational& theta) const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
  friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Deterministic total order (for canonical sorting of term lists).
  [[nodiscard]] int compare(const Scalar& other) const;

  [[nodiscard]] std::string to_string() const;

 private:
  void add_term(ScalarTerm term);
  std::vector<ScalarTerm> terms_;
};

/// Formal quotient of two scalars with nonzero denominator, normalised so the
/// denominator's lexicographically-largest term is the constant 1.  Scalars
/// with several distinct mu exponents need not have a Scalar inverse, so
/// division lives here.
class ScalarFraction {
 public:
  ScalarFraction() : num_(Scalar::zero()), den_(Scalar::one()) {}
  explicit ScalarFraction(Scalar value) : num_(std::move(value)), den_(Scalar::one()) {}
  ScalarFraction(Scalar numerator, Scalar denominator);

  [[nodiscard]] const Scalar& numerator() const noexcept { return num_; }
  [[nodiscard]] const Scalar& denominator() const noexcept { return den_; }
  [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the denominator normalised to exactly 1.
  [[nodiscard]] bool is_plain() const { return den_.is_one(); }

  [[nodiscard]] ScalarFraction conjugate() const { return {num_.conjugate(), den_.conjugate()}; }

  ScalarFraction& operator+=(const ScalarFraction& other);
  ScalarFraction& operator-=(const ScalarFraction& other);
  ScalarFraction& operator*=(const ScalarFraction& other);
  ScalarFraction& operator/=(const ScalarFraction& other);
  friend ScalarFraction operator+(ScalarFraction a, const ScalarFraction& b) { a += b; return a; }
  friend ScalarFraction operator-(ScalarFraction a, const ScalarFraction& b) { a -= b; return a; }
  friend ScalarFraction operator*(ScalarFraction a, const ScalarFraction& b) { a *= b; return a; }
  friend ScalarFraction operator/(ScalarFraction a, const ScalarFraction& b) { a /= b; return a; }
  friend ScalarFraction operator-(ScalarFraction a) { a.num_ = -a.num_; return a; }
  /// Equality by exact cross-multiplication.
  friend bool operator==(const ScalarFraction& a, const ScalarFraction& b);

  [[nodiscard]] std::complex<double> eval(const Rational& theta) const;
  [[nodiscard]] std::string to_string() const;

 private:
  void normalize();
  Scalar num_;
  Scalar den_;
};

/// Canonical form of a scalar (the representation invariant re-asserted; the
/// identity map on well-formed values, exposed for the operation surface).
Scalar scalar_normalize(const Scalar& s);

/// Common factor extractable from every term of one or more scalars: a
/// positive rational (gcd of the Gaussian numerators over the lcm of the
/// denominators) together with the minimal mu exponent.  Dividing by a content
/// is always exact; it keeps entries small during fraction-free elimination.
struct ScalarContent {
  Rational rational = Rational(1);
  std::int32_t mu_shift = 0;
};
[[nodiscard]] ScalarContent scalar_content(const Scalar& s);
[[nodiscard]] ScalarContent content_gcd(const ScalarContent& a, const ScalarContent& b);
[[nodiscard]] Scalar scalar_divide_content(const Scalar& s, const ScalarContent& content);

/// Complex conjugation.
Scalar scalar_conjugate(const Scalar& s);

/// Exact inverse.  Requires s != 0 (DomainError otherwise).  For elements of
/// a pure root extension of Q(i) (a single mu power times integer roots) the
/// result is rationalised to have denominator 1; otherwise the denominator
/// carries the residual mu-polynomial.
ScalarFraction scalar_invert(const Scalar& s);

/// Numeric evaluation at mu = exp(i*pi*theta).
std::complex<double> scalar_eval_numeric(const Scalar& s, const Rational& theta);

/// Extracts the largest square factor: value = root^2 * squarefree.
struct SquarefreeFactorization {
  std::uint64_t root = 1;
  std::uint64_t squarefree = 1;
};
SquarefreeFactorization factor_squarefree(std::uint64_t value);

}  // namespace ncs
