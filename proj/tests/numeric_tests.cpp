#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ncs/algebra.hpp"
#include "ncs/numeric.hpp"
#include "ncs/presentation.hpp"
#include "test_helpers.hpp"

using namespace ncs;
using ncs::testing::random_element;
using ncs::testing::random_word;

namespace {
constexpr double kTol = 1e-9;
}

TEST_CASE("torus words reproduce the exchange phases") {
  const auto& s7 = Presentation::s7();
  const TorusRep rep = TorusRep::build(s7);
  REQUIRE(rep.dimension == 6);
  const auto mu = rep.mu();
  CHECK(std::abs(mu - std::polar(1.0, std::numbers::pi / 3.0)) < 1e-14);
  const auto& q = s7.pair_matrix();
  for (int p = 0; p < 4; ++p)
    for (int r = 0; r < 4; ++r) {
      const ComplexMatrix lhs = rep.pair_word[p] * rep.pair_word[r];
      const ComplexMatrix rhs = std::pow(mu, q[p][r]) * (rep.pair_word[r] * rep.pair_word[p]);
      CHECK((lhs - rhs).norm_inf() < 1e-12);
    }
}

TEST_CASE("split evaluation is a *-homomorphism") {
  std::mt19937 rng(2024);
  const Presentation* presets[] = {&Presentation::s7(), &Presentation::s4(),
                                   &Presentation::t2()};
  for (const Presentation* p : presets) {
    const NumericEvaluator eval(*p);
    for (int trial = 0; trial < 70; ++trial) {
      const SpherePoint pt = random_sphere_point(*p, rng);
      const AlgebraElement a = random_element(rng, *p);
      const AlgebraElement b = random_element(rng, *p);
      const ComplexMatrix ea = eval.evaluate(a, pt);
      const ComplexMatrix eb = eval.evaluate(b, pt);
      CHECK((eval.evaluate(a * b, pt) - ea * eb).norm_inf() < kTol);
      CHECK((eval.evaluate(a + b, pt) - (ea + eb)).norm_inf() < kTol);
      CHECK((eval.evaluate(a.adjoint(), pt) - ea.adjoint()).norm_inf() < kTol);
    }
  }
}

TEST_CASE("evaluation in original letter order matches canonical form") {
  // The canonicaliser reorders letters and accumulates mu phases; evaluating
  // the raw word letter-by-letter must land on the same matrix.
  std::mt19937 rng(2025);
  const Presentation* presets[] = {&Presentation::s7(), &Presentation::s4()};
  for (const Presentation* p : presets) {
    const NumericEvaluator eval(*p);
    for (int trial = 0; trial < 100; ++trial) {
      const auto word = random_word(rng, *p, 6);
      const AlgebraElement canonical = word_product(*p, word, Scalar::one());
      const SpherePoint pt = random_sphere_point(*p, rng);
      const ComplexMatrix raw = eval.evaluate_word(word, Scalar::one(), pt);
      const ComplexMatrix reduced = eval.evaluate(canonical, pt);
      CHECK((raw - reduced).norm_inf() < kTol);
    }
  }
}

TEST_CASE("the inclusion of the 4-sphere commutes with evaluation") {
  std::mt19937 rng(2026);
  const auto& s4 = Presentation::s4();
  const auto& s7 = Presentation::s7();
  const NumericEvaluator eval4(s4);
  const NumericEvaluator eval7(s7);
  for (int trial = 0; trial < 60; ++trial) {
    const SpherePoint p7 = random_sphere_point(s7, rng);
    const SpherePoint p4 = s4_point_from_s7(p7);
    const AlgebraElement a = random_element(rng, s4, 3, 3);
    const ComplexMatrix via_s4 = eval4.evaluate(a, p4);
    const ComplexMatrix via_s7 = eval7.evaluate(include_into_s7(a), p7);
    CHECK((via_s4 - via_s7).norm_inf() < kTol);
  }
}

TEST_CASE("frozen exchange phase shows up in matrices") {
  const auto& s7 = Presentation::s7();
  const NumericEvaluator eval(s7);
  std::mt19937 rng(7);
  const SpherePoint pt = random_sphere_point(s7, rng);
  const AlgebraElement z1 = AlgebraElement::generator(s7, 0);
  const AlgebraElement z3 = AlgebraElement::generator(s7, 2);
  const ComplexMatrix lhs = eval.evaluate(z3, pt) * eval.evaluate(z1, pt);
  const ComplexMatrix rhs =
      std::polar(1.0, -std::numbers::pi / 3.0) * (eval.evaluate(z1, pt) * eval.evaluate(z3, pt));
  CHECK((lhs - rhs).norm_inf() < 1e-12);
}

TEST_CASE("numeric zero detection certifies nonzero elements") {
  const auto& s7 = Presentation::s7();
  CHECK(numerically_zero(AlgebraElement::zero(s7), 5, 99, kTol));
  CHECK(!numerically_zero(AlgebraElement::generator(s7, 0), 5, 99, kTol));
  // An exactly-cancelling combination evaluates to zero everywhere.
  const AlgebraElement z1 = AlgebraElement::generator(s7, 0);
  const AlgebraElement z3 = AlgebraElement::generator(s7, 2);
  const AlgebraElement comm = z3 * z1 - Scalar::mu_power(-1) * (z1 * z3);
  CHECK(comm.is_zero());
  CHECK(numerically_zero(comm, 5, 99, kTol));
}

TEST_CASE("sphere samples satisfy the defining constraints") {
  std::mt19937 rng(31337);
  const auto& s4 = Presentation::s4();
  for (int k = 0; k < 50; ++k) {
    const SpherePoint p = random_sphere_point(s4, rng);
    const double radius = std::norm(p.pair_value[0]) + std::norm(p.pair_value[1]) +
                          p.central_value[0] * p.central_value[0];
    CHECK(std::abs(radius - 1.0) < 1e-12);
  }
  const NumericEvaluator eval(s4);
  // The central generator x evaluates to a real multiple of the identity.
  const SpherePoint p = random_sphere_point(s4, rng);
  const ComplexMatrix ex = eval.evaluate(AlgebraElement::generator(s4, 4), p);
  CHECK(std::abs(ex(0, 0).imag()) < 1e-15);
  CHECK((ex - ex.adjoint()).norm_inf() < 1e-14);
}
