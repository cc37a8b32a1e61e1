#include <complex>
#include <random>

#include "doctest.h"
#include "ncs/scalar.hpp"

using namespace ncs;

namespace {

Scalar random_scalar(std::mt19937& rng, bool allow_zero = true, int max_terms = 3) {
  static const std::uint32_t radicands[] = {1, 1, 2, 3, 5, 6, 10};
  std::uniform_int_distribution<int> term_count(allow_zero ? 0 : 1, max_terms);
  std::uniform_int_distribution<int> mu(-4, 4);
  std::uniform_int_distribution<int> rad_ix(0, 6);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> coin(0, 3);
  Scalar out;
  const int n = term_count(rng);
  for (int t = 0; t < n; ++t) {
    Scalar piece = Scalar::mu_power(mu(rng));
    piece *= Scalar::sqrt_integer(radicands[rad_ix(rng)]);
    Rational re{num(rng), den(rng)};
    Rational im = (coin(rng) == 0) ? Rational(num(rng), den(rng)) : Rational(0);
    piece *= Scalar(GaussianRational{re, im});
    out += piece;
  }
  return out;
}

constexpr double kTol = 1e-12;

bool approx_equal(std::complex<double> a, std::complex<double> b, double tol = kTol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

}  // namespace

TEST_CASE("commutative ring axioms hold on random triples") {
  std::mt19937 rng(20250815);
  for (int trial = 0; trial < 1000; ++trial) {
    const Scalar a = random_scalar(rng);
    const Scalar b = random_scalar(rng);
    const Scalar c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + Scalar::zero() == a);
    CHECK(a * Scalar::one() == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("conjugation is an involutive ring map") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Scalar a = random_scalar(rng);
    const Scalar b = random_scalar(rng);
    CHECK(a.conjugate().conjugate() == a);
    CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
    CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
  }
  CHECK(Scalar::mu_power(3).conjugate() == Scalar::mu_power(-3));
  CHECK(Scalar::i().conjugate() == -Scalar::i());
  CHECK(Scalar::sqrt_integer(2).conjugate() == Scalar::sqrt_integer(2));
}

TEST_CASE("square-root arithmetic reduces radicands eagerly") {
  CHECK(Scalar::sqrt_integer(2) * Scalar::sqrt_integer(8) == Scalar{4});
  CHECK(Scalar::sqrt_integer(12) == Scalar{2} * Scalar::sqrt_integer(3));
  CHECK(Scalar::sqrt_integer(6) * Scalar::sqrt_integer(10) ==
        Scalar{2} * Scalar::sqrt_integer(15));
  CHECK(Scalar::sqrt_rational(Rational{9, 4}) == Scalar{Rational{3, 2}});
  CHECK(Scalar::sqrt_rational(Rational{1, 2}) ==
        Scalar{Rational{1, 2}} * Scalar::sqrt_integer(2));
  CHECK(Scalar::i() * Scalar::i() == Scalar{-1});
  CHECK(Scalar::mu_power(3) * Scalar::mu_power(-3) == Scalar::one());
}

TEST_CASE("inversion produces exact two-sided inverses") {
  std::mt19937 rng(1234);
  int done = 0;
  while (done < 200) {
    const Scalar s = random_scalar(rng, /*allow_zero=*/false, 2);
    if (s.is_zero()) continue;
    ++done;
    const ScalarFraction inv = scalar_invert(s);
    const ScalarFraction product = inv * ScalarFraction{s};
    CHECK(product == ScalarFraction{Scalar::one()});
  }
}

TEST_CASE("inversion rationalises pure root extensions") {
  // 1/(1+sqrt(2)) = sqrt(2) - 1
  const Scalar s = Scalar::one() + Scalar::sqrt_integer(2);
  const ScalarFraction inv = scalar_invert(s);
  CHECK(inv.is_plain());
  CHECK(inv.numerator() == Scalar::sqrt_integer(2) - Scalar::one());
  // 1/(sqrt(2)+sqrt(3)) = sqrt(3) - sqrt(2)
  const ScalarFraction inv2 = scalar_invert(Scalar::sqrt_integer(2) + Scalar::sqrt_integer(3));
  CHECK(inv2.is_plain());
  CHECK(inv2.numerator() == Scalar::sqrt_integer(3) - Scalar::sqrt_integer(2));
  // Single-term inverses stay single terms: 1/(2 mu^3 sqrt(2)) = mu^-3 sqrt(2)/4.
  const ScalarFraction inv3 =
      scalar_invert(Scalar{2} * Scalar::mu_power(3) * Scalar::sqrt_integer(2));
  CHECK(inv3.is_plain());
  CHECK(inv3.numerator() ==
        Scalar{Rational{1, 4}} * Scalar::mu_power(-3) * Scalar::sqrt_integer(2));
  // A genuine mu-polynomial keeps a denominator but still inverts.
  const Scalar poly = Scalar::one() + Scalar::mu_power(1);
  const ScalarFraction inv4 = scalar_invert(poly);
  CHECK(inv4 * ScalarFraction{poly} == ScalarFraction{Scalar::one()});
  CHECK_THROWS_AS((void)scalar_invert(Scalar::zero()), Error);
}

TEST_CASE("numeric evaluation is a ring map at theta = 1/3") {
  std::mt19937 rng(99);
  const Rational theta{1, 3};
  for (int trial = 0; trial < 300; ++trial) {
    const Scalar a = random_scalar(rng);
    const Scalar b = random_scalar(rng);
    CHECK(approx_equal((a * b).eval(theta), a.eval(theta) * b.eval(theta)));
    CHECK(approx_equal((a + b).eval(theta), a.eval(theta) + b.eval(theta)));
    CHECK(approx_equal(a.conjugate().eval(theta), std::conj(a.eval(theta))));
  }
  // mu evaluates on the unit circle at angle pi/3.
  const auto mu = Scalar::mu_power(1).eval(theta);
  CHECK(approx_equal(mu, std::polar(1.0, std::acos(-1.0) / 3.0)));
  // mu^6 = 1 numerically at theta = 1/3.
  CHECK(approx_equal(Scalar::mu_power(6).eval(theta), {1.0, 0.0}));
}

TEST_CASE("mu = 1 specialisation collapses phases only") {
  const Scalar s = Scalar::mu_power(2) * Scalar::sqrt_integer(3) +
                   Scalar::mu_power(-2) * Scalar::sqrt_integer(3);
  CHECK(s.specialize_mu_one() == Scalar{2} * Scalar::sqrt_integer(3));
  const Scalar cancel = Scalar::mu_power(1) - Scalar::mu_power(-1);
  CHECK(cancel.specialize_mu_one().is_zero());
}

TEST_CASE("fractions normalise to a monic denominator and compare exactly") {
  const Scalar den = Scalar{3} * Scalar::mu_power(2);
  const ScalarFraction f{Scalar{6}, den};
  CHECK(f.is_plain());  // single-term denominators clear entirely
  CHECK(f.numerator() == Scalar{2} * Scalar::mu_power(-2));
  const ScalarFraction g{Scalar::one(), Scalar::one() + Scalar::mu_power(1)};
  const ScalarFraction h{Scalar::mu_power(-1), Scalar::mu_power(-1) + Scalar::one()};
  CHECK(g == h);
  CHECK((g - h).is_zero());
  CHECK_THROWS_AS(ScalarFraction(Scalar::one(), Scalar::zero()), Error);
}

TEST_CASE("scalar rendering round-trips simple values") {
  CHECK(Scalar::zero().to_string() == "0");
  CHECK(Scalar::one().to_string() == "1");
  CHECK((-Scalar::one()).to_string() == "-1");
  CHECK(Scalar::i().to_string() == "i");
  CHECK(Scalar::mu_power(-2).to_string() == "mu^-2");
  CHECK((Scalar{3} * Scalar::sqrt_integer(2)).to_string() == "3*sqrt(2)");
  CHECK((Scalar{Rational{1, 2}} + Scalar::mu_power(1)).to_string() == "1/2 + mu");
}
