#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "ncs/algebra.hpp"
#include "ncs/error.hpp"
#include "ncs/exterior.hpp"
#include "ncs/numeric.hpp"
#include "ncs/presentation.hpp"
#include "ncs/scalar.hpp"
#include "ncs/splitting.hpp"
#include "test_helpers.hpp"

using namespace ncs;

namespace {

ExteriorElement random_exterior(std::mt19937& rng, const Presentation& pres, int max_terms = 2,
                                int max_symbols = 2, int max_word = 3) {
  std::uniform_int_distribution<int> term_count(1, max_terms);
  std::uniform_int_distribution<int> symbol_count(0, max_symbols);
  std::uniform_int_distribution<int> letter(0, pres.generator_count() - 1);
  ExteriorElement out = ExteriorElement::zero(pres);
  const int n = term_count(rng);
  for (int t = 0; t < n; ++t) {
    std::uint32_t mask = 0;
    const int symbols = symbol_count(rng);
    for (int s = 0; s < symbols; ++s) mask |= 1u << letter(rng);
    out += ExteriorElement::from_term(mask, testing::random_element(rng, pres, 2, max_word));
  }
  return out;
}

/// The rank-one projection of the basic instanton bundle, written over the
/// invariant coordinate algebra.
std::vector<std::vector<AlgebraElement>> instanton_projection() {
  const Presentation& pres = Presentation::s4();
  const auto A = AlgebraElement::generator(pres, 0);
  const auto B = AlgebraElement::generator(pres, 1);
  const auto As = AlgebraElement::generator(pres, 2);
  const auto Bs = AlgebraElement::generator(pres, 3);
  const auto X = AlgebraElement::generator(pres, 4);
  const auto one = AlgebraElement::one(pres);
  const auto zero = AlgebraElement::zero(pres);
  const Scalar half{Rational{1, 2}};
  const Scalar mhalf{Rational{-1, 2}};
  const Scalar mu = Scalar::mu_power(1);
  const Scalar mu_bar = Scalar::mu_power(-1);

  std::vector<std::vector<AlgebraElement>> p(4, std::vector<AlgebraElement>(4, zero));
  p[0][0] = half * (one + X);
  p[0][2] = half * A;
  p[0][3] = half * B;
  p[1][1] = half * (one + X);
  p[1][2] = (mhalf * mu) * Bs;
  p[1][3] = (half * mu_bar) * As;
  p[2][0] = half * As;
  p[2][1] = (mhalf * mu_bar) * B;
  p[2][2] = half * (one - X);
  p[3][0] = half * Bs;
  p[3][1] = (half * mu) * A;
  p[3][3] = half * (one - X);
  return p;
}

double eval_distance(const SplitForm& x, const SplitForm& y, const SpherePoint& point) {
  PointEvaluation diff = evaluate_at(x, point);
  diff -= evaluate_at(y, point);
  return diff.norm_inf();
}

}  // namespace

TEST_CASE("splitting of single generators") {
  const Presentation& s4 = Presentation::s4();
  const Presentation& s7 = Presentation::s7();

  SUBCASE("invariant algebra letters carry their weight words") {
    const auto sa = split(AlgebraElement::generator(s4, 0));
    REQUIRE(sa.parts().size() == 1);
    CHECK(sa.parts()[0].word == TorusWord{1, -1});
    REQUIRE(sa.parts()[0].terms.size() == 1);
    CHECK(sa.parts()[0].terms[0].mask == 0);
    CHECK(sa.parts()[0].terms[0].coefficient == Scalar{1});

    const auto sb = split(AlgebraElement::generator(s4, 1));
    CHECK(sb.parts()[0].word == TorusWord{1, 1});

    const auto sx = split(AlgebraElement::generator(s4, 4));
    CHECK(sx.parts()[0].word == TorusWord{0, 0});
  }

  SUBCASE("conjugate letters pick up the torus star phase") {
    const auto sas = split(AlgebraElement::generator(s4, 2));  // weight (-1, 1)
    REQUIRE(sas.parts().size() == 1);
    CHECK(sas.parts()[0].word == TorusWord{-1, 1});
    CHECK(sas.parts()[0].terms[0].coefficient == Scalar::mu_power(1));

    const auto sbs = split(AlgebraElement::generator(s4, 3));  // weight (-1, -1)
    CHECK(sbs.parts()[0].word == TorusWord{-1, -1});
    CHECK(sbs.parts()[0].terms[0].coefficient == Scalar::mu_power(-1));

    // Ambient sphere letters have a torus weight on one axis only, so their
    // star phase is trivial.
    for (int g = 4; g < 8; ++g) {
      const auto sz = split(AlgebraElement::generator(s7, g));
      CHECK(sz.parts()[0].terms[0].coefficient == Scalar{1});
    }
  }

  SUBCASE("differential symbols keep the word of their generator") {
    const auto sda = split(ext_d(AlgebraElement::generator(s4, 0)));
    REQUIRE(sda.parts().size() == 1);
    CHECK(sda.parts()[0].word == TorusWord{1, -1});
    CHECK(sda.parts()[0].terms[0].mask == 1u);
    CHECK(sda.parts()[0].terms[0].monomial.is_identity());
  }
}

TEST_CASE("splitting identifies the sphere identity at classical points") {
  std::mt19937 rng(2026);

  SUBCASE("invariant sphere") {
    const Presentation& pres = Presentation::s4();
    const auto X = AlgebraElement::generator(pres, 4);
    // x*x reduces to 1 - a a* - b b* in the algebra; the split of the reduced
    // form and the square of the split agree on the sphere.
    const SplitForm direct = split(X) * split(X);
    const SplitForm reduced = split(X * X);
    CHECK(direct != reduced);  // distinct as free classical polynomials
    for (int k = 0; k < 50; ++k) {
      const SpherePoint point = random_sphere_point(pres, rng);
      CHECK(eval_distance(direct, reduced, point) <= 1e-12);
    }
  }

  SUBCASE("ambient sphere") {
    const Presentation& pres = Presentation::s7();
    const auto z4 = AlgebraElement::generator(pres, 3);
    const auto z4s = AlgebraElement::generator(pres, 7);
    const SplitForm direct = split(z4) * split(z4s);
    const SplitForm reduced = split(z4 * z4s);
    CHECK(direct != reduced);
    for (int k = 0; k < 50; ++k) {
      const SpherePoint point = random_sphere_point(pres, rng);
      CHECK(eval_distance(direct, reduced, point) <= 1e-12);
    }
  }

  SUBCASE("tangential differential of the sphere identity") {
    const Presentation& pres = Presentation::s4();
    const auto X = AlgebraElement::generator(pres, 4);
    // d(x^2) computed after reduction against 2 x dx: equal only because the
    // defining function is constant on the sphere and gradients are projected
    // onto the tangent space.
    const SplitForm lhs = split(ext_d(X * X));
    const SplitForm rhs = split_d(split(X) * split(X));
    CHECK(lhs != rhs);
    for (int k = 0; k < 50; ++k) {
      const SpherePoint point = random_sphere_point(pres, rng);
      CHECK(eval_distance(lhs, rhs, point) <= 1e-12);
    }
  }
}

TEST_CASE("splitting is an exact homomorphism on the relation-free algebra") {
  const Presentation& pres = Presentation::r2n(2);
  std::mt19937 rng(401);
  for (int k = 0; k < 200; ++k) {
    const auto x = testing::random_element(rng, pres, 2, 3);
    const auto y = testing::random_element(rng, pres, 2, 3);
    CHECK(split(x * y) == split(x) * split(y));
  }
}

TEST_CASE("splitting commutes with the differential exactly off the sphere") {
  const Presentation& pres = Presentation::r2n(2);
  std::mt19937 rng(402);
  for (int k = 0; k < 200; ++k) {
    const auto w = random_exterior(rng, pres);
    CHECK(split(ext_d(w)) == split_d(split(w)));
  }
}

TEST_CASE("splitting is multiplicative at classical points of the spheres") {
  std::mt19937 rng(403);
  for (const Presentation* pres : {&Presentation::s4(), &Presentation::s7()}) {
    for (int k = 0; k < 100; ++k) {
      const auto x = testing::random_element(rng, *pres, 2, 3);
      const auto y = testing::random_element(rng, *pres, 2, 3);
      const SplitForm product = split(x) * split(y);
      const SplitForm joined = split(x * y);
      const SpherePoint point = random_sphere_point(*pres, rng);
      CHECK(eval_distance(product, joined, point) <= 1e-9);

      // The pointwise product of evaluations agrees with the evaluated
      // symbolic product.
      PointEvaluation direct = evaluate_at(split(x), point) * evaluate_at(split(y), point);
      direct -= evaluate_at(product, point);
      CHECK(direct.norm_inf() <= 1e-9);
    }
  }
}

TEST_CASE("splitting commutes with the differential at classical points") {
  std::mt19937 rng(404);
  for (const Presentation* pres : {&Presentation::s4(), &Presentation::s7()}) {
    for (int k = 0; k < 100; ++k) {
      const auto w = random_exterior(rng, *pres);
      const SplitForm lhs = split(ext_d(w));
      const SplitForm rhs = split_d(split(w));
      const SpherePoint point = random_sphere_point(*pres, rng);
      CHECK(eval_distance(lhs, rhs, point) <= 1e-9);
    }
  }
}

TEST_CASE("classical differential squares to zero on split forms") {
  const Presentation& pres = Presentation::s4();
  std::mt19937 rng(405);
  for (int k = 0; k < 50; ++k) {
    const SplitForm form = split(random_exterior(rng, pres));
    CHECK(split_d(split_d(form)).is_zero());
  }
}

TEST_CASE("splitting matches the ambient splitting through the inclusion") {
  const Presentation& s4 = Presentation::s4();
  const Presentation& s7 = Presentation::s7();
  std::mt19937 rng(406);
  for (int k = 0; k < 25; ++k) {
    const auto element = testing::random_element(rng, s4, 3, 2);
    const SplitForm inner = split(element);
    const SplitForm outer = split(include_into_s7(element));
    const SpherePoint ambient = random_sphere_point(s7, rng);
    const SpherePoint base = s4_point_from_s7(ambient);

    const PointEvaluation lhs = evaluate_at(inner, base);
    const PointEvaluation rhs = evaluate_at(outer, ambient);
    // Bodies of different frame dimension: compare scalar (empty-subset)
    // components per torus word.
    REQUIRE(lhs.parts.size() == rhs.parts.size());
    for (std::size_t i = 0; i < lhs.parts.size(); ++i) {
      CHECK(lhs.parts[i].word == rhs.parts[i].word);
      CHECK(std::abs(lhs.parts[i].component[0] - rhs.parts[i].component[0]) <= 1e-10);
    }
  }
}

TEST_CASE("hodge star on frame subsets") {
  PointEvaluation value;
  value.frame_dimension = 4;
  value.theta = 1.0 / 3.0;
  value.parts.push_back(EvaluatedPart{TorusWord{0, 0}, std::vector<std::complex<double>>(16, 0.0)});
  auto& comp = value.parts[0].component;

  SUBCASE("star of the first coordinate plane is the second") {
    comp[0b0011] = 1.0;
    const PointEvaluation dual = hodge_star_at(value);
    CHECK(dual.parts[0].component[0b1100] == std::complex<double>(1.0));
    for (std::uint32_t s = 0; s < 16; ++s)
      if (s != 0b1100) CHECK(dual.parts[0].component[s] == std::complex<double>(0.0));
  }

  SUBCASE("star exchanges the unit and the volume form") {
    comp[0b0000] = 2.0;
    const PointEvaluation dual = hodge_star_at(value);
    CHECK(dual.parts[0].component[0b1111] == std::complex<double>(2.0));
    CHECK(hodge_star_at(dual).parts[0].component[0b0000] == std::complex<double>(2.0));
  }

  SUBCASE("one-form signs") {
    comp[0b0001] = 1.0;  // e1 -> +e234
    const PointEvaluation dual = hodge_star_at(value);
    CHECK(dual.parts[0].component[0b1110] == std::complex<double>(1.0));
    comp[0b0001] = 0.0;
    comp[0b0010] = 1.0;  // e2 -> -e134
    const PointEvaluation dual2 = hodge_star_at(value);
    CHECK(dual2.parts[0].component[0b1101] == std::complex<double>(-1.0));
  }

  SUBCASE("star squares to the identity in middle degree") {
    std::mt19937 rng(407);
    std::uniform_real_distribution<double> coin(-1.0, 1.0);
    for (std::uint32_t s = 0; s < 16; ++s)
      comp[s] = (std::popcount(s) == 2) ? std::complex<double>(coin(rng), coin(rng)) : 0.0;
    const PointEvaluation twice = hodge_star_at(hodge_star_at(value));
    for (std::uint32_t s = 0; s < 16; ++s)
      CHECK(std::abs(twice.parts[0].component[s] - comp[s]) == 0.0);
  }
}

TEST_CASE("hodge star of split two-forms squares to the identity") {
  const Presentation& pres = Presentation::s4();
  std::mt19937 rng(408);
  const auto A = AlgebraElement::generator(pres, 0);
  const auto B = AlgebraElement::generator(pres, 1);
  const SplitForm form = split(ext_d(A) * ext_d(B));
  for (int k = 0; k < 20; ++k) {
    const SpherePoint point = random_sphere_point(pres, rng);
    const PointEvaluation value = evaluate_at(form, point);
    PointEvaluation diff = hodge_star_at(hodge_star_at(value));
    diff -= value;
    CHECK(diff.norm_inf() <= 1e-12);
    CHECK(value.norm_inf() > 1e-6);  // the sample form is not degenerate
  }
}

TEST_CASE("hermitian pairing of evaluated forms") {
  const Presentation& pres = Presentation::s4();
  std::mt19937 rng(409);
  const auto A = AlgebraElement::generator(pres, 0);
  const auto B = AlgebraElement::generator(pres, 1);
  const auto X = AlgebraElement::generator(pres, 4);

  SUBCASE("the central coordinate has positive norm") {
    const SplitForm dx = split(ext_d(X));
    for (int k = 0; k < 20; ++k) {
      const SpherePoint point = random_sphere_point(pres, rng);
      const auto pairing = hermitian_pair_at(evaluate_at(dx, point), evaluate_at(dx, point));
      REQUIRE(pairing.size() == 1);
      CHECK(pairing[0].first == TorusWord{0, 0});
      CHECK(pairing[0].second.real() > 1e-6);
      CHECK(std::abs(pairing[0].second.imag()) <= 1e-12);
    }
  }

  SUBCASE("pairing of coordinate differentials matches the frame contraction") {
    for (int k = 0; k < 20; ++k) {
      const SpherePoint point = random_sphere_point(pres, rng);
      const TangentFrame frame = TangentFrame::build(pres, point);
      const FrameCovectors data = frame_covectors(pres, point, frame);
      const auto pairing =
          hermitian_pair_at(evaluate_at(split(ext_d(A)), point), evaluate_at(split(ext_d(B)), point));
      REQUIRE(pairing.size() == 1);
      CHECK(pairing[0].first == TorusWord{0, 2});
      std::complex<double> expected = 0.0;
      for (int t = 0; t < frame.dimension(); ++t)
        expected += std::conj(data.covector[0][t]) * data.covector[1][t];
      CHECK(std::abs(pairing[0].second - expected) <= 1e-12);
    }
  }

  SUBCASE("positivity and hermitian symmetry for random forms") {
    for (int k = 0; k < 50; ++k) {
      const auto wx = random_exterior(rng, pres, 2, 1, 2);
      const auto wy = random_exterior(rng, pres, 2, 1, 2);
      const SpherePoint point = random_sphere_point(pres, rng);
      const PointEvaluation vx = evaluate_at(split(wx), point);
      const PointEvaluation vy = evaluate_at(split(wy), point);

      const auto self = hermitian_pair_at(vx, vx);
      for (const auto& [word, value] : self) {
        if (word == TorusWord{0, 0}) {
          CHECK(value.real() >= -1e-12);
          CHECK(std::abs(value.imag()) <= 1e-9);
        }
      }

      // <x,y>* = <y,x>: the adjoint inverts each torus word with the phase
      // of the torus star structure.
      const auto xy = hermitian_pair_at(vx, vy);
      const auto yx = hermitian_pair_at(vy, vx);
      for (const auto& [word, value] : xy) {
        const TorusWord flipped{-word.a, -word.b};
        std::complex<double> partner = 0.0;
        for (const auto& [w2, v2] : yx)
          if (w2 == flipped) partner = v2;
        const std::complex<double> phase = vx.phase(-static_cast<long long>(word.a) * word.b);
        CHECK(std::abs(std::conj(value) * phase - partner) <= 1e-9);
      }
    }
  }

  SUBCASE("pairing equals the top component of conj wedge star") {
    for (int k = 0; k < 50; ++k) {
      const auto wx = random_exterior(rng, pres, 2, 1, 2);
      const auto wy = random_exterior(rng, pres, 2, 1, 2);
      const SpherePoint point = random_sphere_point(pres, rng);
      const PointEvaluation vx = evaluate_at(split(wx), point);
      const PointEvaluation vy = evaluate_at(split(wy), point);

      const auto pairing = hermitian_pair_at(vx, vy);
      const PointEvaluation wedge = conjugate_at(vx) * hodge_star_at(vy);
      const std::uint32_t full = (1u << wedge.frame_dimension) - 1u;
      for (const auto& [word, value] : pairing) {
        std::complex<double> top = 0.0;
        for (const auto& part : wedge.parts)
          if (part.word == word) top = part.component[full];
        CHECK(std::abs(top - value) <= 1e-9);
      }
    }
  }
}

TEST_CASE("field strength of the basic instanton is anti-selfdual") {
  const auto p = instanton_projection();

  SUBCASE("the matrix is an exact projection") {
    const Presentation& pres = Presentation::s4();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        AlgebraElement square = AlgebraElement::zero(pres);
        for (int k = 0; k < 4; ++k) square += p[i][k] * p[k][j];
        CHECK(square == p[i][j]);
        CHECK(p[j][i].adjoint() == p[i][j]);
      }
    }
  }

  SUBCASE("random points") {
    const AsdReport report = asd_residual(p, 100, 12345u, 1e-9);
    CHECK(report.pass);
    CHECK(report.max_residual <= 1e-9);
    CHECK(report.max_component > 0.05);  // the field strength itself is far from zero
    CHECK(report.per_point.size() == 100);
  }

  SUBCASE("pole point") {
    const Presentation& pres = Presentation::s4();
    std::vector<std::vector<ExteriorElement>> dp;
    for (int i = 0; i < 4; ++i) {
      dp.emplace_back();
      for (int j = 0; j < 4; ++j) dp[i].push_back(ext_d(p[i][j]));
    }
    SpherePoint pole;
    pole.pair_value = {0.0, 0.0};
    pole.central_value = {1.0};
    double residual = 0.0;
    double scale = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        ExteriorElement entry = ExteriorElement::zero(pres);
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) entry += p[i][k] * (dp[k][l] * dp[l][j]);
        const PointEvaluation value = evaluate_at(split(entry), pole);
        PointEvaluation sum = hodge_star_at(value);
        sum += value;
        residual = std::max(residual, sum.norm_inf());
        scale = std::max(scale, value.norm_inf());
      }
    }
    CHECK(residual <= 1e-9);
    CHECK(scale > 0.01);
  }

  SUBCASE("the trivial projection has zero field strength") {
    const Presentation& pres = Presentation::s4();
    std::vector<std::vector<AlgebraElement>> identity(
        4, std::vector<AlgebraElement>(4, AlgebraElement::zero(pres)));
    for (int i = 0; i < 4; ++i) identity[i][i] = AlgebraElement::one(pres);
    const AsdReport report = asd_residual(identity, 10, 7u, 1e-9);
    CHECK(report.pass);
    CHECK(report.max_residual == 0.0);
    CHECK(report.max_component == 0.0);
  }

  SUBCASE("a perturbed matrix fails the check") {
    auto broken = instanton_projection();
    broken[0][3] = broken[0][3] + broken[0][3];  // doubles one off-diagonal entry
    const AsdReport report = asd_residual(broken, 10, 99u, 1e-9);
    CHECK_FALSE(report.pass);
    CHECK(report.max_residual > 1e-3);
  }
}

TEST_CASE("complement sign conventions") {
  CHECK(complement_sign(0b0000, 4) == 1);
  CHECK(complement_sign(0b1111, 4) == 1);
  CHECK(complement_sign(0b0011, 4) == 1);
  CHECK(complement_sign(0b1100, 4) == 1);
  CHECK(complement_sign(0b0101, 4) == -1);
  CHECK(complement_sign(0b0001, 4) == 1);
  CHECK(complement_sign(0b0010, 4) == -1);
}
