#include "ncs/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace ncs {

// ---------------------------------------------------------------- Gaussian

GaussianRational& GaussianRational::operator+=(const GaussianRational& other) {
  re += other.re;
  im += other.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& other) {
  re -= other.re;
  im -= other.im;
  return *this;
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) raise(ErrorKind::DomainError, "division by zero Gaussian rational");
  const Rational norm = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

namespace {

int compare_rational(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_gaussian(const GaussianRational& a, const GaussianRational& b) {
  if (int c = compare_rational(a.re, b.re); c != 0) return c;
  return compare_rational(a.im, b.im);
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(long value) {
  if (value != 0) terms_.push_back({0, 1, GaussianRational(value)});
}

Scalar::Scalar(const Rational& value) {
  if (value != 0) terms_.push_back({0, 1, GaussianRational(value)});
}

Scalar::Scalar(GaussianRational value) {
  if (!value.is_zero()) terms_.push_back({0, 1, std::move(value)});
}

Scalar Scalar::i() {
  Scalar s;
  s.terms_.push_back({0, 1, GaussianRational(Rational(0), Rational(1))});
  return s;
}

Scalar Scalar::mu_power(std::int32_t exponent) {
  Scalar s;
  s.terms_.push_back({exponent, 1, GaussianRational(1)});
  return s;
}

Scalar Scalar::sqrt_integer(std::uint64_t value) {
  if (value == 0) return Scalar::zero();
  const auto f = factor_squarefree(value);
  Scalar s;
  s.terms_.push_back({0, static_cast<std::uint32_t>(f.squarefree),
                      GaussianRational(Rational(BigInt(f.root)))});
  return s;
}

Scalar Scalar::sqrt_rational(const Rational& value) {
  if (value < 0) raise(ErrorKind::DomainError, "square root of a negative rational");
  if (value == 0) return Scalar::zero();
  const BigInt p = numerator(value);
  const BigInt q = denominator(value);
  if (p > BigInt(UINT64_MAX) || q > BigInt(UINT64_MAX))
    raise(ErrorKind::DomainError, "square-root argument too large");
  const auto pu = p.convert_to<std::uint64_t>();
  const auto qu = q.convert_to<std::uint64_t>();
  // sqrt(p/q) = sqrt(p*q) / q
  Scalar root = sqrt_integer(pu * qu);
  Scalar scale{Rational(1, BigInt(qu))};
  return root * scale;
}

bool Scalar::is_one() const {
  return terms_.size() == 1 && terms_[0].mu_exponent == 0 && terms_[0].radicand == 1 &&
         terms_[0].coeff == GaussianRational(1);
}

bool Scalar::is_rational() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_[0].mu_exponent == 0 && terms_[0].radicand == 1 &&
         terms_[0].coeff.im == 0;
}

Rational Scalar::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational()) raise(ErrorKind::DomainError, "scalar is not rational");
  return terms_[0].coeff.re;
}

void Scalar::add_term(ScalarTerm term) {
  if (term.coeff.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), term,
                             [](const ScalarTerm& a, const ScalarTerm& b) { return key_less(a, b); });
  if (it != terms_.end() && it->mu_exponent == term.mu_exponent && it->radicand == term.radicand) {
    it->coeff += term.coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(term));
  }
}

Scalar& Scalar::operator+=(const Scalar& other) {
  for (const auto& t : other.terms_) add_term(t);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  for (const auto& t : other.terms_) add_term({t.mu_exponent, t.radicand, -t.coeff});
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      const std::uint64_t rad_product =
          static_cast<std::uint64_t>(ta.radicand) * static_cast<std::uint64_t>(tb.radicand);
      const auto f = factor_squarefree(rad_product);
      GaussianRational coeff = ta.coeff * tb.coeff;
      if (f.root != 1) coeff = coeff * GaussianRational(Rational(BigInt(f.root)));
      out.add_term({ta.mu_exponent + tb.mu_exponent, static_cast<std::uint32_t>(f.squarefree),
                    std::move(coeff)});
    }
  }
  return out;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  *this = *this * other;
  return *this;
}

Scalar operator-(const Scalar& a) {
  Scalar out = a;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Scalar Scalar::conjugate() const {
  Scalar out;
  for (const auto& t : terms_) out.add_term({-t.mu_exponent, t.radicand, t.coeff.conjugate()});
  return out;
}

Scalar Scalar::specialize_mu_one() const {
  Scalar out;
  for (const auto& t : terms_) out.add_term({0, t.radicand, t.coeff});
  return out;
}

std::complex<double> Scalar::eval(const Rational& theta) const {
  std::complex<double> total{0.0, 0.0};
  for (const auto& t : terms_) {
    const std::complex<double> coeff{t.coeff.re.convert_to<double>(),
                                     t.coeff.im.convert_to<double>()};
    const double angle =
        std::numbers::pi * (theta * Rational(t.mu_exponent)).convert_to<double>();
    const std::complex<double> phase = std::polar(1.0, angle);
    total += coeff * phase * std::sqrt(static_cast<double>(t.radicand));
  }
  return total;
}

int Scalar::compare(const Scalar& other) const {
  const std::size_t n = std::min(terms_.size(), other.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = terms_[k];
    const auto& b = other.terms_[k];
    if (a.mu_exponent != b.mu_exponent) return a.mu_exponent < b.mu_exponent ? -1 : 1;
    if (a.radicand != b.radicand) return a.radicand < b.radicand ? -1 : 1;
    if (int c = compare_gaussian(a.coeff, b.coeff); c != 0) return c;
  }
  if (terms_.size() != other.terms_.size()) return terms_.size() < other.terms_.size() ? -1 : 1;
  return 0;
}

namespace {

/// Renders c * mu^k * sqrt(d) as a product of grammar tokens.
std::string term_to_string(const ScalarTerm& t) {
  std::vector<std::string> factors;
  std::string coeff;
  const bool has_im = t.coeff.im != 0;
  const bool has_re = t.coeff.re != 0;
  if (has_re && has_im) {
    coeff = "(" + rational_to_string(t.coeff.re) +
            (t.coeff.im > 0 ? "+" : "-") +
            rational_to_string(abs(t.coeff.im)) + "*i)";
  } else if (has_im) {
    if (t.coeff.im == 1) {
      coeff = "i";
    } else if (t.coeff.im == -1) {
      coeff = "-i";
    } else {
      coeff = rational_to_string(t.coeff.im) + "*i";
    }
  } else {
    coeff = rational_to_string(t.coeff.re);
  }
  const bool coeff_is_unit = (coeff == "1" || coeff == "-1");
  const bool has_factors = (t.mu_exponent != 0 || t.radicand != 1);
  if (!coeff_is_unit || !has_factors) factors.push_back(coeff);
  if (t.mu_exponent != 0) {
    factors.push_back(t.mu_exponent == 1 ? "mu" : "mu^" + std::to_string(t.mu_exponent));
  }
  if (t.radicand != 1) factors.push_back("sqrt(" + std::to_string(t.radicand) + ")");
  std::string out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k > 0) out += "*";
    out += factors[k];
  }
  if (coeff_is_unit && has_factors && coeff == "-1") out = "-" + out;
  return out;
}

}  // namespace

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    std::string piece = term_to_string(terms_[k]);
    if (k == 0) {
      out = piece;
    } else if (!piece.empty() && piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

// ---------------------------------------------------------------- fractions

ScalarFraction::ScalarFraction(Scalar numerator, Scalar denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) raise(ErrorKind::DomainError, "zero denominator");
  normalize();
}

void ScalarFraction::normalize() {
  if (num_.is_zero()) {
    den_ = Scalar::one();
    return;
  }
  // Scale both parts so the denominator's largest term becomes the constant 1:
  // for leading term c*mu^k*sqrt(d), multiply by (1/(c*d)) * mu^-k * sqrt(d).
  const ScalarTerm& lead = den_.terms().back();
  if (lead.mu_exponent == 0 && lead.radicand == 1 && lead.coeff == GaussianRational(1)) return;
  GaussianRational c = GaussianRational(1) / lead.coeff;
  if (lead.radicand != 1) c = c * GaussianRational(Rational(1, BigInt(lead.radicand)));
  Scalar scale = Scalar::mu_power(-lead.mu_exponent);
  if (lead.radicand != 1) scale *= Scalar::sqrt_integer(lead.radicand);
  scale *= Scalar(std::move(c));
  num_ *= scale;
  den_ *= scale;
}

ScalarFraction& ScalarFraction::operator+=(const ScalarFraction& other) {
  num_ = num_ * other.den_ + other.num_ * den_;
  den_ = den_ * other.den_;
  if (num_.is_zero()) den_ = Scalar::one();
  normalize();
  return *this;
}

ScalarFraction& ScalarFraction::operator-=(const ScalarFraction& other) {
  num_ = num_ * other.den_ - other.num_ * den_;
  den_ = den_ * other.den_;
  if (num_.is_zero()) den_ = Scalar::one();
  normalize();
  return *this;
}

ScalarFraction& ScalarFraction::operator*=(const ScalarFraction& other) {
  num_ *= other.num_;
  den_ *= other.den_;
  if (num_.is_zero()) den_ = Scalar::one();
  normalize();
  return *this;
}

ScalarFraction& ScalarFraction::operator/=(const ScalarFraction& other) {
  if (other.num_.is_zero()) raise(ErrorKind::DomainError, "division by zero fraction");
  num_ *= other.den_;
  den_ *= other.num_;
  if (num_.is_zero()) den_ = Scalar::one();
  normalize();
  return *this;
}

bool operator==(const ScalarFraction& a, const ScalarFraction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::complex<double> ScalarFraction::eval(const Rational& theta) const {
  return num_.eval(theta) / den_.eval(theta);
}

std::string ScalarFraction::to_string() const {
  if (is_plain()) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

// ---------------------------------------------------------------- operations

Scalar scalar_normalize(const Scalar& s) { return s; }

ScalarContent scalar_content(const Scalar& s) {
  if (s.is_zero()) return ScalarContent{};
  BigInt num_gcd = 0;
  BigInt den_lcm = 1;
  std::int32_t mu_min = s.terms().front().mu_exponent;
  for (const auto& term : s.terms()) {
    mu_min = std::min(mu_min, term.mu_exponent);
    for (const Rational* part : {&term.coeff.re, &term.coeff.im}) {
      if (*part == 0) continue;
      num_gcd = boost::multiprecision::gcd(num_gcd,
                                           BigInt(boost::multiprecision::abs(numerator(*part))));
      den_lcm = boost::multiprecision::lcm(den_lcm, BigInt(denominator(*part)));
    }
  }
  if (num_gcd == 0) num_gcd = 1;
  return ScalarContent{Rational(num_gcd, den_lcm), mu_min};
}

ScalarContent content_gcd(const ScalarContent& a, const ScalarContent& b) {
  const BigInt num = boost::multiprecision::gcd(BigInt(numerator(a.rational)),
                                                BigInt(numerator(b.rational)));
  const BigInt den = boost::multiprecision::lcm(BigInt(denominator(a.rational)),
                                                BigInt(denominator(b.rational)));
  return ScalarContent{Rational(num, den), std::min(a.mu_shift, b.mu_shift)};
}

Scalar scalar_divide_content(const Scalar& s, const ScalarContent& content) {
  if (content.rational == 0) raise(ErrorKind::DomainError, "zero content divisor");
  const GaussianRational inv(Rational(1) / content.rational);
  Scalar factor;
  factor = Scalar(inv);
  factor *= Scalar::mu_power(-content.mu_shift);
  return s * factor;
}

Scalar scalar_conjugate(const Scalar& s) { return s.conjugate(); }

std::complex<double> scalar_eval_numeric(const Scalar& s, const Rational& theta) {
  return s.eval(theta);
}

namespace {

/// Flips the sign of every term whose radicand the prime divides.
Scalar galois_flip(const Scalar& s, std::uint32_t prime) {
  Scalar out;
  for (const auto& t : s.terms()) {
    Scalar piece = Scalar::mu_power(t.mu_exponent);
    if (t.radicand != 1) piece *= Scalar::sqrt_integer(t.radicand);
    GaussianRational c = t.coeff;
    if (t.radicand % prime == 0) c = -c;
    piece *= Scalar(c);
    out += piece;
  }
  return out;
}

std::uint32_t smallest_prime_factor(std::uint32_t n) {
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

}  // namespace

ScalarFraction scalar_invert(const Scalar& s) {
  if (s.is_zero()) raise(ErrorKind::DomainError, "inverse of zero scalar");

  // Factor out the lowest mu power so the remainder has exponent-0 terms.
  const std::int32_t k0 = s.terms().front().mu_exponent;
  Scalar reduced = s * Scalar::mu_power(-k0);

  const bool mu_free = std::all_of(reduced.terms().begin(), reduced.terms().end(),
                                   [](const ScalarTerm& t) { return t.mu_exponent == 0; });
  if (!mu_free) {
    // Residual mu-polynomial: the inverse is a genuine fraction.
    return {Scalar::mu_power(-k0), reduced};
  }

  // Pure root extension of Q(i): rationalise by successive Galois conjugates,
  // eliminating one radicand prime at a time, then clear the imaginary part.
  Scalar numerator = Scalar::one();
  Scalar value = reduced;
  for (;;) {
    std::uint32_t prime = 0;
    for (const auto& t : value.terms()) {
      if (t.radicand != 1) {
        prime = smallest_prime_factor(t.radicand);
        break;
      }
    }
    if (prime == 0) break;
    const Scalar flipped = galois_flip(value, prime);
    numerator *= flipped;
    value *= flipped;
  }
  if (value.is_zero()) raise(ErrorKind::InternalCheckFailed, "rationalisation annihilated a nonzero scalar");
  // value is now a single Gaussian rational (radicand 1, mu^0).
  GaussianRational g = value.terms().front().coeff;
  if (g.im != 0) {
    numerator *= Scalar(g.conjugate());
    g = g * g.conjugate();
  }
  numerator *= Scalar(GaussianRational(1) / g);
  numerator *= Scalar::mu_power(-k0);
  return ScalarFraction{numerator};
}

SquarefreeFactorization factor_squarefree(std::uint64_t value) {
  if (value == 0) raise(ErrorKind::DomainError, "squarefree factorisation of zero");
  SquarefreeFactorization out;
  std::uint64_t n = value;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::uint32_t count = 0;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
    for (std::uint32_t k = 0; k + 1 < count; k += 2) out.root *= p;
    if (count % 2 == 1) out.squarefree *= p;
  }
  out.squarefree *= n;  // leftover prime factor (or 1)
  return out;
}

}  // namespace ncs
