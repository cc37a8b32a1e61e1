#include "ncs/oracle.hpp"

#include <algorithm>
#include <utility>

#include "ncs/error.hpp"
#include "ncs/linear.hpp"

namespace ncs {

namespace {

int max_term_degree(const AlgebraElement& element) {
  int degree = 0;
  for (const auto& [m, s] : element.terms()) degree = std::max(degree, m.degree());
  return degree;
}

using MonomialSolver = SpanSolver<Monomial, MonomialHash>;

MonomialSolver::RowVec to_row(MonomialSolver& solver, const AlgebraElement& element) {
  MonomialSolver::RowVec row;
  row.reserve(element.terms().size());
  for (const auto& [m, s] : element.terms()) row.emplace_back(solver.intern_key(m), s);
  return row;
}

struct SandwichSource {
  Monomial left;
  int generator_index;
  Monomial right;
};

}  // namespace

bool is_central(const AlgebraElement& element) {
  const Presentation& pres = element.presentation();
  for (int g = 0; g < pres.generator_count(); ++g) {
    const AlgebraElement gen = AlgebraElement::generator(pres, g);
    if (!(element * gen == gen * element)) return false;
  }
  return true;
}

MembershipCertificate ideal_membership(const AlgebraElement& target,
                                       std::span<const AlgebraElement> generators,
                                       int degree_bound) {
  MembershipCertificate cert;
  cert.degree_bound = degree_bound;
  if (target.is_zero()) {
    cert.status = MembershipStatus::Member;
    cert.verified = true;
    return cert;
  }
  const Presentation& pres = target.presentation();
  for (const auto& g : generators) {
    if (&g.presentation() != &pres)
      raise(ErrorKind::PresentationMismatch, "ideal generators over a different presentation");
  }

  MonomialSolver solver;
  std::vector<SandwichSource> sources;
  std::vector<const AlgebraElement*> source_elements;
  std::vector<AlgebraElement> sandwich_storage;

  for (int gi = 0; gi < static_cast<int>(generators.size()); ++gi) {
    const AlgebraElement& g = generators[gi];
    if (g.is_zero()) continue;
    const int room = degree_bound - max_term_degree(g);
    if (room < 0) continue;
    const bool central = is_central(g);
    const auto words = graded_basis(pres, room);
    for (const Monomial& left : words) {
      if (central && !left.is_identity()) break;  // graded_basis lists identity first
      const AlgebraElement left_elem =
          left.is_identity() ? AlgebraElement::one(pres)
                             : AlgebraElement::from_monomial(pres, left, Scalar::one());
      const AlgebraElement left_g = left_elem * g;
      const int left_deg = left.degree();
      for (const Monomial& right : words) {
        if (left_deg + right.degree() > room) continue;
        AlgebraElement sandwich =
            right.is_identity()
                ? left_g
                : left_g * AlgebraElement::from_monomial(pres, right, Scalar::one());
        if (sandwich.is_zero()) continue;
        sandwich_storage.push_back(std::move(sandwich));
        sources.push_back(SandwichSource{left, gi, right});
      }
    }
  }

  // Interning after storage keeps row column ids stable.
  std::vector<MonomialSolver::RowVec> rows;
  rows.reserve(sandwich_storage.size());
  for (const auto& element : sandwich_storage) rows.push_back(to_row(solver, element));
  for (auto& row : rows) solver.add_source(std::move(row));
  source_elements.reserve(sandwich_storage.size());
  for (const auto& element : sandwich_storage) source_elements.push_back(&element);

  auto witness = solver.solve_membership(to_row(solver, target));
  if (!witness.has_value()) return cert;

  // Re-verify exactly: sum_j beta_j * sandwich_j == alpha * target.
  AlgebraElement recombined = AlgebraElement::zero(pres);
  for (const auto& [src, beta] : witness->combination)
    recombined += beta * *source_elements[src];
  if (!(recombined == witness->multiplier * target)) {
    raise(ErrorKind::InternalCheckFailed, "membership certificate failed recombination");
  }

  cert.status = MembershipStatus::Member;
  cert.verified = true;
  for (auto& [src, beta] : witness->combination) {
    cert.combination.push_back(IdealCombinationTerm{
        sources[src].left, sources[src].generator_index, sources[src].right,
        ScalarFraction(std::move(beta), witness->multiplier)});
  }
  return cert;
}

MembershipCertificate ideal_membership(const AlgebraElement& target,
                                       const AlgebraElement& generator, int degree_bound) {
  return ideal_membership(target, std::span<const AlgebraElement>(&generator, 1), degree_bound);
}

}  // namespace ncs
