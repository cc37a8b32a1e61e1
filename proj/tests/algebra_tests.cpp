#include <random>

#include "doctest.h"
#include "ncs/algebra.hpp"
#include "ncs/error.hpp"
#include "test_helpers.hpp"

using namespace ncs;
using ncs::testing::random_element;
using ncs::testing::random_word;

namespace {

AlgebraElement gen(const Presentation& p, int ix) { return AlgebraElement::generator(p, ix); }

}  // namespace

TEST_CASE("reordering phases match the defining exchange relations") {
  const auto& s7 = Presentation::s7();
  // z3 z1 = mu^-1 z1 z3  (q13 = 1)
  CHECK(gen(s7, 2) * gen(s7, 0) ==
        Scalar::mu_power(-1) * (gen(s7, 0) * gen(s7, 2)));
  // z1 z2 commute (q12 = 0)
  CHECK(gen(s7, 0) * gen(s7, 1) == gen(s7, 1) * gen(s7, 0));
  // z1* z3 = mu^-1 z3 z1*  (conjugates flip the phase sign)
  CHECK(gen(s7, 4) * gen(s7, 2) == Scalar::mu_power(-1) * (gen(s7, 2) * gen(s7, 4)));
  // z1 z1* commute (degree-zero pair)
  CHECK(gen(s7, 0) * gen(s7, 4) == gen(s7, 4) * gen(s7, 0));

  const auto& s4 = Presentation::s4();
  // a b = mu^2 b a
  CHECK(gen(s4, 0) * gen(s4, 1) == Scalar::mu_power(2) * (gen(s4, 1) * gen(s4, 0)));
  // x is central
  CHECK(gen(s4, 4) * gen(s4, 0) == gen(s4, 0) * gen(s4, 4));

  const auto& t2 = Presentation::t2();
  // u v = mu v u
  CHECK(gen(t2, 0) * gen(t2, 1) == Scalar::mu_power(1) * (gen(t2, 1) * gen(t2, 0)));
  // u u* = 1
  CHECK(gen(t2, 0) * gen(t2, 2) == AlgebraElement::one(t2));
}

TEST_CASE("sphere relations reduce to the identity") {
  const auto& s7 = Presentation::s7();
  AlgebraElement sum = AlgebraElement::zero(s7);
  for (int mu = 0; mu < 4; ++mu) sum += gen(s7, mu) * gen(s7, mu + 4);
  CHECK(sum == AlgebraElement::one(s7));
  // And with the conjugate ordering, which is phase-free for these pairs.
  AlgebraElement sum2 = AlgebraElement::zero(s7);
  for (int mu = 0; mu < 4; ++mu) sum2 += gen(s7, mu + 4) * gen(s7, mu);
  CHECK(sum2 == AlgebraElement::one(s7));

  const auto& s4 = Presentation::s4();
  const AlgebraElement lhs = gen(s4, 0) * gen(s4, 2) + gen(s4, 1) * gen(s4, 3) +
                             gen(s4, 4) * gen(s4, 4);
  CHECK(lhs == AlgebraElement::one(s4));
}

TEST_CASE("multiplication is associative on random elements") {
  std::mt19937 rng(42);
  const Presentation* presets[] = {&Presentation::s7(), &Presentation::s4(),
                                   &Presentation::r2n(3), &Presentation::su2()};
  for (int trial = 0; trial < 500; ++trial) {
    const Presentation& p = *presets[trial % 4];
    const AlgebraElement a = random_element(rng, p);
    const AlgebraElement b = random_element(rng, p);
    const AlgebraElement c = random_element(rng, p);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("canonicalisation is a homomorphism on free words") {
  std::mt19937 rng(43);
  const Presentation* presets[] = {&Presentation::s7(), &Presentation::s4(),
                                   &Presentation::t2(), &Presentation::r2n(2)};
  for (int trial = 0; trial < 500; ++trial) {
    const Presentation& p = *presets[trial % 4];
    auto w1 = random_word(rng, p, 4);
    auto w2 = random_word(rng, p, 4);
    auto joined = w1;
    joined.insert(joined.end(), w2.begin(), w2.end());
    CHECK(word_product(p, joined, Scalar::one()) ==
          word_product(p, w1, Scalar::one()) * word_product(p, w2, Scalar::one()));
  }
}

TEST_CASE("the involution is antimultiplicative and involutive") {
  std::mt19937 rng(44);
  const Presentation* presets[] = {&Presentation::s7(), &Presentation::s4(),
                                   &Presentation::t2()};
  for (int trial = 0; trial < 300; ++trial) {
    const Presentation& p = *presets[trial % 3];
    const AlgebraElement a = random_element(rng, p);
    const AlgebraElement b = random_element(rng, p);
    CHECK((a * b).adjoint() == b.adjoint() * a.adjoint());
    CHECK(a.adjoint().adjoint() == a);
    CHECK((a + b).adjoint() == a.adjoint() + b.adjoint());
  }
  const auto& s7 = Presentation::s7();
  // (z1 z3)* = mu^-1 z1* z3*
  CHECK((gen(s7, 0) * gen(s7, 2)).adjoint() ==
        Scalar::mu_power(-1) * (gen(s7, 4) * gen(s7, 6)));
}

TEST_CASE("torus degrees add under multiplication") {
  std::mt19937 rng(45);
  const auto& s7 = Presentation::s7();
  for (int trial = 0; trial < 200; ++trial) {
    const auto w1 = random_word(rng, s7, 4);
    const auto w2 = random_word(rng, s7, 4);
    const auto a = word_product(s7, w1, Scalar::one());
    const auto b = word_product(s7, w2, Scalar::one());
    if (a.is_zero() || b.is_zero()) continue;
    auto da = a.torus_degree();
    auto db = b.torus_degree();
    const auto ab = a * b;
    if (ab.is_zero()) continue;
    auto dab = ab.torus_degree();
    for (std::size_t k = 0; k < da.size(); ++k) CHECK(dab[k] == da[k] + db[k]);
  }
  // Frozen example: z1 z3* has fine pair degree (1,0,-1,0) and weight (1,-1).
  const auto m = gen(s7, 0) * gen(s7, 6);
  REQUIRE(m.terms().size() == 1);
  CHECK(pair_degree(s7, m.terms()[0].first) == std::vector<int>{1, 0, -1, 0});
  CHECK(s7.reported_degree(pair_degree(s7, m.terms()[0].first)) ==
        std::vector<int>{1, 0, -1, 0});
  CHECK(m.torus_degree() == std::vector<int>{1, -1});
}

TEST_CASE("graded bases enumerate reduced monomials") {
  const auto& s4 = Presentation::s4();
  const auto inv_basis = graded_basis(s4, 2, std::vector<int>{0, 0});
  REQUIRE(inv_basis.size() == 4);  // 1, x, a a*, b b*
  CHECK(inv_basis[0].is_identity());
  // Degree bound respected and every monomial reduced.
  const auto all2 = graded_basis(s4, 2);
  for (const auto& m : all2) {
    CHECK(m.degree() <= 2);
    CHECK(m.exps[4] <= 1);  // x^2 never appears in reduced form
  }
  const auto& s7 = Presentation::s7();
  CHECK(graded_basis(s7, 1).size() == 9);
  for (const auto& m : graded_basis(s7, 4)) {
    CHECK(!(m.exps[3] > 0 && m.exps[7] > 0));  // rule left side absent
  }
}

TEST_CASE("invariant generators satisfy the 4-sphere relations") {
  for (const auto& check : invariant_relation_check()) {
    INFO(check.relation);
    CHECK(check.holds);
  }
}

TEST_CASE("inclusion of the 4-sphere algebra is a *-homomorphism") {
  std::mt19937 rng(46);
  const auto& s4 = Presentation::s4();
  for (int trial = 0; trial < 200; ++trial) {
    const AlgebraElement a = random_element(rng, s4, 2, 3);
    const AlgebraElement b = random_element(rng, s4, 2, 3);
    CHECK(include_into_s7(a * b) == include_into_s7(a) * include_into_s7(b));
    CHECK(include_into_s7(a.adjoint()) == include_into_s7(a).adjoint());
    CHECK(include_into_s7(a + b) == include_into_s7(a) + include_into_s7(b));
  }
  // Weight degrees of the invariant generators under the rank-two torus whose
  // deformation produces the seven-sphere phases: both monomials of alpha sit
  // in weight (1,-1), both of beta in (1,1), and x is weight-neutral.
  const auto inv = invariant_generators();
  CHECK(inv.alpha.torus_degree() == std::vector<int>{1, -1});
  CHECK(inv.beta.torus_degree() == std::vector<int>{1, 1});
  CHECK(inv.x.torus_degree() == std::vector<int>{0, 0});
  // The finer per-pair grading separates alpha's two monomials, while x is
  // already homogeneous of fine degree zero.
  CHECK(inv.alpha.split_by_pair_degree().size() == 2);
  CHECK(inv.x.split_by_pair_degree().size() == 1);
}

TEST_CASE("classical limit lands in the commutative companion") {
  const auto& s7 = Presentation::s7();
  const AlgebraElement lhs = (gen(s7, 2) * gen(s7, 0)).classical_limit();
  const AlgebraElement rhs = (gen(s7, 0) * gen(s7, 2)).classical_limit();
  CHECK(lhs == rhs);
  CHECK(lhs.presentation().commutative());
  // The commutator z3 z1 - z1 z3 = (mu^-1 - 1) z1 z3 is nonzero before the
  // limit and vanishes at mu = 1.
  const AlgebraElement comm = gen(s7, 2) * gen(s7, 0) - gen(s7, 0) * gen(s7, 2);
  CHECK(!comm.is_zero());
  CHECK(comm.classical_limit().is_zero());
}

TEST_CASE("phase-constraint solving recovers the exchange matrix") {
  const auto report = solve_phase_constraints();
  CHECK(report.consistent);
  const std::vector<std::vector<int>> expected = {
      {0, 0, 1, 1}, {0, 0, 1, 1}, {-1, -1, 0, 0}, {-1, -1, 0, 0}};
  CHECK(report.matrix == expected);
  CHECK(report.matrix == Presentation::s7().pair_matrix());
  for (const auto& row : report.constraints) CHECK(row.satisfied);

  const auto perturbed = solve_phase_constraints_perturbed(0, 1, 1);
  CHECK(!perturbed.consistent);
  bool some_violated = false;
  for (const auto& row : perturbed.constraints) some_violated |= !row.satisfied;
  CHECK(some_violated);
}

TEST_CASE("presentation mismatches are rejected") {
  const auto a = AlgebraElement::one(Presentation::s7());
  const auto b = AlgebraElement::one(Presentation::s4());
  CHECK_THROWS_AS((void)(a * b), Error);
}
