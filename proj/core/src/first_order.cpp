#include "ncs/first_order.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>

#include "crossing.hpp"
#include "ncs/error.hpp"
#include "ncs/linear.hpp"

namespace ncs {

namespace {

/// Phase for a whole monomial crossing a whole delta-word, left to right.
long long monomial_cross_word(const Presentation& pres, const Monomial& m, const DeltaWord& w) {
  return detail::monomial_cross_letters(pres, m, w.letters);
}

/// Formal letterwise differential of a single monomial: sum over letter
/// positions of mu^(prefix crossing) * delta(letter) * (rest of the word).
/// Works on raw exponent arrays, before any reduction.
FirstOrderElement formal_delta_monomial(const Presentation& pres, const ExponentArray& exps,
                                        const Scalar& coeff) {
  FirstOrderElement out(pres);
  detail::for_each_letter_derivative(
      pres, exps, [&](int g, const ExponentArray& rest, long long prefix, int multiplicity) {
        Scalar piece = coeff * Scalar(static_cast<long>(multiplicity));
        if (prefix != 0) piece = piece * Scalar::mu_power(static_cast<int>(prefix));
        out += FirstOrderElement::from_term(
            DeltaWord{{g}},
            AlgebraElement::from_monomial(pres, Monomial{rest}, std::move(piece)));
      });
  return out;
}

}  // namespace

std::size_t DeltaWordHash::operator()(const DeltaWord& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ w.letters.size();
  for (int v : w.letters) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// -------------------------------------------------------- FirstOrderElement

FirstOrderElement FirstOrderElement::from_algebra(AlgebraElement value) {
  FirstOrderElement out(value.presentation());
  out.add_term(DeltaWord{}, std::move(value));
  return out;
}

FirstOrderElement FirstOrderElement::from_term(DeltaWord word, AlgebraElement coefficient) {
  FirstOrderElement out(coefficient.presentation());
  out.add_term(std::move(word), std::move(coefficient));
  return out;
}

int FirstOrderElement::degree() const noexcept {
  int deg = 0;
  for (const auto& [w, c] : terms_) deg = std::max(deg, w.degree());
  return deg;
}

bool FirstOrderElement::is_degree_homogeneous() const noexcept {
  for (const auto& [w, c] : terms_)
    if (w.degree() != terms_.front().first.degree()) return false;
  return true;
}

void FirstOrderElement::add_term(DeltaWord word, AlgebraElement coefficient) {
  if (coefficient.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), word,
                             [](const auto& entry, const DeltaWord& w) { return entry.first < w; });
  if (it != terms_.end() && it->first == word) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, {std::move(word), std::move(coefficient)});
  }
}

FirstOrderElement& FirstOrderElement::operator+=(const FirstOrderElement& other) {
  if (pres_ != other.pres_)
    raise(ErrorKind::PresentationMismatch, "adding forms over different presentations");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

FirstOrderElement& FirstOrderElement::operator-=(const FirstOrderElement& other) {
  if (pres_ != other.pres_)
    raise(ErrorKind::PresentationMismatch, "subtracting forms over different presentations");
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

FirstOrderElement operator-(const FirstOrderElement& a) {
  FirstOrderElement out(*a.pres_);
  for (const auto& [w, c] : a.terms_) out.terms_.emplace_back(w, -c);
  return out;
}

FirstOrderElement operator*(const FirstOrderElement& a, const FirstOrderElement& b) {
  if (a.pres_ != b.pres_)
    raise(ErrorKind::PresentationMismatch, "multiplying forms over different presentations");
  const Presentation& pres = *a.pres_;
  FirstOrderElement out(pres);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      DeltaWord joined;
      joined.letters.reserve(wa.letters.size() + wb.letters.size());
      joined.letters.insert(joined.letters.end(), wa.letters.begin(), wa.letters.end());
      joined.letters.insert(joined.letters.end(), wb.letters.begin(), wb.letters.end());
      // The left coefficient crosses the right word, one monomial at a time.
      for (const auto& [m, s] : ca.terms()) {
        const long long phase = monomial_cross_word(pres, m, wb);
        Scalar piece = s;
        if (phase != 0) piece = piece * Scalar::mu_power(static_cast<int>(phase));
        AlgebraElement coefficient =
            AlgebraElement::from_monomial(pres, m, std::move(piece)) * cb;
        out.add_term(joined, std::move(coefficient));
      }
    }
  }
  return out;
}

FirstOrderElement operator*(const Scalar& s, FirstOrderElement a) {
  FirstOrderElement out(*a.pres_);
  for (auto& [w, c] : a.terms_) {
    AlgebraElement scaled = s * c;
    if (!scaled.is_zero()) out.terms_.emplace_back(w, std::move(scaled));
  }
  return out;
}

FirstOrderElement operator*(const AlgebraElement& a, const FirstOrderElement& b) {
  return FirstOrderElement::from_algebra(a) * b;
}

FirstOrderElement operator*(const FirstOrderElement& a, const AlgebraElement& b) {
  return a * FirstOrderElement::from_algebra(b);
}

FirstOrderElement FirstOrderElement::adjoint() const {
  const Presentation& pres = *pres_;
  FirstOrderElement out(pres);
  for (const auto& [w, c] : terms_) {
    const int d = w.degree();
    // (delta g1 ... delta gd * a)* = (-1)^(d(d-1)/2) a* delta(gd*) ... delta(g1*)
    DeltaWord conj_word;
    conj_word.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      conj_word.letters.push_back(pres.generator(*it).conjugate);
    const bool negate = (d * (d - 1) / 2) % 2 == 1;
    const AlgebraElement cstar = c.adjoint();
    for (const auto& [m, s] : cstar.terms()) {
      const long long phase = monomial_cross_word(pres, m, conj_word);
      Scalar piece = negate ? -s : s;
      if (phase != 0) piece = piece * Scalar::mu_power(static_cast<int>(phase));
      out.add_term(conj_word, AlgebraElement::from_monomial(pres, m, std::move(piece)));
    }
  }
  return out;
}

std::string FirstOrderElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string word;
    for (int letter : w.letters) {
      if (!word.empty()) word += "*";
      word += "delta(" + pres_->generator(letter).name + ")";
    }
    if (word.empty()) {
      out += c.to_string();
    } else {
      out += word + "*(" + c.to_string() + ")";
    }
  }
  return out;
}

// ------------------------------------------------------------------ fo_delta

FirstOrderElement fo_delta(const AlgebraElement& value) {
  const Presentation& pres = value.presentation();
  FirstOrderElement out(pres);
  for (const auto& [m, s] : value.terms()) out += formal_delta_monomial(pres, m.exps, s);
  return out;
}

std::vector<FirstOrderElement> delta_relation_generators(const Presentation& pres) {
  std::vector<FirstOrderElement> out;
  for (const auto& rel : pres.sphere_relations()) {
    FirstOrderElement gen = formal_delta_monomial(pres, rel.lhs, Scalar::one());
    for (const auto& [exps, coeff] : rel.rhs)
      gen -= formal_delta_monomial(pres, exps, coeff);
    if (!gen.is_zero()) out.push_back(std::move(gen));
  }
  return out;
}

// -------------------------------------------------------- quotient zero test

namespace {

struct FirstOrderKey {
  DeltaWord word;
  Monomial monomial;
  friend bool operator==(const FirstOrderKey& a, const FirstOrderKey& b) = default;
};

struct FirstOrderKeyHash {
  std::size_t operator()(const FirstOrderKey& k) const noexcept {
    return DeltaWordHash{}(k.word) * 1000003u ^ MonomialHash{}(k.monomial);
  }
};

using FirstOrderSolver = SpanSolver<FirstOrderKey, FirstOrderKeyHash>;

FirstOrderSolver::RowVec to_row(FirstOrderSolver& solver, const FirstOrderElement& element) {
  FirstOrderSolver::RowVec row;
  for (const auto& [w, c] : element.terms())
    for (const auto& [m, s] : c.terms())
      row.emplace_back(solver.intern_key(FirstOrderKey{w, m}), s);
  return FirstOrderSolver::normalized(std::move(row));
}

/// All delta-words of the given length over the presentation's generators.
void enumerate_delta_words(const Presentation& pres, int length, DeltaWord& scratch,
                           std::vector<DeltaWord>& out) {
  if (length == 0) {
    out.push_back(scratch);
    return;
  }
  for (int g = 0; g < pres.generator_count(); ++g) {
    scratch.letters.push_back(g);
    enumerate_delta_words(pres, length - 1, scratch, out);
    scratch.letters.pop_back();
  }
}

}  // namespace

namespace {

std::vector<int> delta_word_fine_degree(const Presentation& pres, const DeltaWord& w) {
  std::vector<int> deg(static_cast<std::size_t>(pres.pair_count()), 0);
  for (int letter : w.letters) {
    const GeneratorInfo& info = pres.generator(letter);
    if (info.pair >= 0) deg[info.pair] += info.pair_sign;
  }
  return deg;
}

std::vector<int> add_degrees(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

}  // namespace

QuotientZeroReport fo_is_zero_in_quotient(const FirstOrderElement& element,
                                          int coefficient_degree_cap) {
  QuotientZeroReport report;
  if (element.is_zero()) {
    report.verdict = QuotientVerdict::Zero;
    report.detail = "identically zero";
    return report;
  }
  const Presentation& pres = element.presentation();
  const auto relation_deltas = delta_relation_generators(pres);

  // Every spanning element of the relation sub-bimodule has at least one
  // delta-symbol, so a nonzero pure-algebra component survives the quotient.
  int coeff_degree = 0;
  bool has_degree_zero_part = false;
  for (const auto& [w, c] : element.terms()) {
    if (w.degree() == 0) has_degree_zero_part = true;
    coeff_degree = std::max(coeff_degree, c.degree());
  }
  if (relation_deltas.empty() || has_degree_zero_part) {
    report.verdict = QuotientVerdict::Nonzero;
    report.detail = relation_deltas.empty()
                        ? "universal calculus has no relation sub-bimodule"
                        : "nonzero pure-algebra component";
    return report;
  }

  const int bound = std::min(coeff_degree + 2, coefficient_degree_cap);
  report.degree_bound = bound;

  // Fine degrees present in the target, grouped by delta-word length.  The
  // relation differentials and the rewrite rules both preserve the fine
  // grading, so only spanning elements hitting one of these degrees matter --
  // and their degree is known before any product is formed.
  std::vector<int> target_lengths;
  std::vector<std::vector<int>> target_degrees;
  for (const auto& [w, c] : element.terms()) {
    if (std::find(target_lengths.begin(), target_lengths.end(), w.degree()) ==
        target_lengths.end())
      target_lengths.push_back(w.degree());
    const auto word_deg = delta_word_fine_degree(pres, w);
    for (const auto& [m, s] : c.terms()) {
      auto deg = add_degrees(word_deg, pair_degree(pres, m));
      if (std::find(target_degrees.begin(), target_degrees.end(), deg) == target_degrees.end())
        target_degrees.push_back(std::move(deg));
    }
  }

  // Monomial pool up to the degree bound, grouped by fine degree.
  std::unordered_map<std::string, std::vector<Monomial>> basis_by_degree;
  const auto degree_key = [](const std::vector<int>& deg) {
    std::string key;
    for (int v : deg) key += std::to_string(v) + ",";
    return key;
  };
  for (const auto& m : graded_basis(pres, bound))
    basis_by_degree[degree_key(pair_degree(pres, m))].push_back(m);

  std::vector<std::vector<int>> rel_degrees;
  for (const auto& rel : relation_deltas) {
    const auto& [w0, c0] = rel.terms().front();
    rel_degrees.push_back(
        add_degrees(delta_word_fine_degree(pres, w0), pair_degree(pres, c0.terms().front().first)));
  }

  FirstOrderSolver solver;
  std::vector<FirstOrderElement> span_storage;
  for (int d : target_lengths) {
    for (int left_len = 0; left_len <= d - 1; ++left_len) {
      std::vector<DeltaWord> lefts;
      std::vector<DeltaWord> rights;
      DeltaWord scratch;
      enumerate_delta_words(pres, left_len, scratch, lefts);
      enumerate_delta_words(pres, d - 1 - left_len, scratch, rights);
      for (std::size_t r = 0; r < relation_deltas.size(); ++r) {
        for (const auto& wl : lefts) {
          const auto left_deg = add_degrees(delta_word_fine_degree(pres, wl), rel_degrees[r]);
          std::optional<FirstOrderElement> left_part;
          for (const auto& wr : rights) {
            const auto outer_deg = add_degrees(left_deg, delta_word_fine_degree(pres, wr));
            // Which monomial degrees complete this to a target degree?
            std::vector<const std::vector<Monomial>*> pools;
            for (const auto& want : target_degrees) {
              std::vector<int> need(want.size());
              for (std::size_t k = 0; k < want.size(); ++k) need[k] = want[k] - outer_deg[k];
              if (auto it = basis_by_degree.find(degree_key(need)); it != basis_by_degree.end())
                pools.push_back(&it->second);
            }
            if (pools.empty()) continue;
            if (!left_part)
              left_part = FirstOrderElement::from_term(wl, AlgebraElement::one(pres)) *
                          relation_deltas[r];
            const FirstOrderElement with_right =
                *left_part * FirstOrderElement::from_term(wr, AlgebraElement::one(pres));
            for (const auto* pool : pools) {
              for (const auto& m : *pool) {
                FirstOrderElement span_elem =
                    with_right * AlgebraElement::from_monomial(pres, m, Scalar::one());
                if (!span_elem.is_zero()) span_storage.push_back(std::move(span_elem));
              }
            }
          }
        }
      }
    }
  }

  for (const auto& e : span_storage) {
    auto row = to_row(solver, e);
    solver.add_source(std::move(row));
  }

  const auto witness = solver.solve_membership(to_row(solver, element));
  if (witness.has_value()) {
    // Machine-check the certificate before claiming zero.
    FirstOrderElement recombined = FirstOrderElement::zero(pres);
    for (const auto& [src, beta] : witness->combination)
      recombined += beta * span_storage[static_cast<std::size_t>(src)];
    if (!(recombined == witness->multiplier * element))
      raise(ErrorKind::InternalCheckFailed, "quotient certificate failed recombination");
    report.verdict = QuotientVerdict::Zero;
    report.detail = "member of the relation sub-bimodule";
    return report;
  }

  // Exact membership failed within the degree bound; look for a numeric
  // nonzero witness through the representation that kills the sub-bimodule.
  const DiracEvaluator dirac(pres);
  std::mt19937 rng(0xD1AC);
  double best = 0.0;
  for (int k = 0; k < 8; ++k) {
    const SpherePoint point = random_sphere_point(pres, rng);
    best = std::max(best, dirac.evaluate(element, point).norm_inf());
  }
  report.witness_norm = best;
  if (best > 1e-7) {
    report.verdict = QuotientVerdict::Nonzero;
    report.detail = "numeric representation witness";
  } else {
    report.verdict = QuotientVerdict::Undecided;
    report.detail = "no certificate within budget";
  }
  return report;
}

// ------------------------------------------------------------ Dirac evaluator

std::vector<ComplexMatrix> clifford_generators(int n) {
  const int qubits = (n + 1) / 2;
  const int dim = 1 << qubits;
  ComplexMatrix sx(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  ComplexMatrix sy(2, 2);
  sy(0, 1) = {0.0, -1.0};
  sy(1, 0) = {0.0, 1.0};
  ComplexMatrix sz(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const ComplexMatrix id2 = ComplexMatrix::identity(2);

  std::vector<ComplexMatrix> out;
  for (int a = 0; a < n; ++a) {
    const int slot = a / 2;
    ComplexMatrix m = ComplexMatrix::identity(1);
    for (int q = 0; q < qubits; ++q) {
      const ComplexMatrix* factor = &id2;
      if (q < slot) factor = &sz;
      else if (q == slot) factor = (a % 2 == 0) ? &sx : &sy;
      m = ComplexMatrix::kronecker(m, *factor);
    }
    out.push_back(std::move(m));
  }
  // Construction self-check: the anticommutation relations.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      ComplexMatrix anti = out[a] * out[b] + out[b] * out[a];
      if (a == b) anti -= std::complex<double>(2.0, 0.0) * ComplexMatrix::identity(dim);
      if (anti.norm_inf() > 1e-12)
        raise(ErrorKind::InternalCheckFailed, "Clifford generators fail anticommutation");
    }
  return out;
}

DiracEvaluator::DiracEvaluator(const Presentation& pres, int modulus)
    : pres_(&pres), torus_(TorusRep::build(pres, modulus)) {
  central_slot_.assign(pres.generator_count(), -1);
  int next = 0;
  for (int g = 0; g < pres.generator_count(); ++g)
    if (pres.generator(g).pair < 0) central_slot_[g] = next++;
  const int ambient = 2 * pres.pair_count() + next;
  gammas_ = clifford_generators(ambient);
  tangential_ = !pres.sphere_relations().empty();
  dimension_ = gammas_.front().rows() * torus_.dimension;
}

namespace {

std::vector<double> real_coordinates(const Presentation& pres, const SpherePoint& point,
                                     const std::vector<int>& central_slot) {
  std::vector<double> x(2 * pres.pair_count(), 0.0);
  for (int p = 0; p < pres.pair_count(); ++p) {
    x[2 * p] = point.pair_value.at(p).real();
    x[2 * p + 1] = point.pair_value.at(p).imag();
  }
  for (int g = 0; g < pres.generator_count(); ++g)
    if (central_slot[g] >= 0) x.push_back(point.central_value.at(central_slot[g]));
  return x;
}

}  // namespace

ComplexMatrix DiracEvaluator::algebra_letter(int gen, const SpherePoint& point) const {
  const GeneratorInfo& info = pres_->generator(gen);
  const int gdim = gammas_.front().rows();
  std::complex<double> amplitude;
  ComplexMatrix torus_part;
  if (info.pair < 0) {
    amplitude = point.central_value.at(central_slot_[gen]);
    torus_part = ComplexMatrix::identity(torus_.dimension);
  } else {
    amplitude = info.pair_sign > 0 ? point.pair_value.at(info.pair)
                                   : std::conj(point.pair_value.at(info.pair));
    const ComplexMatrix& word = torus_.pair_word[info.pair];
    torus_part = info.pair_sign > 0 ? word : word.adjoint();
  }
  return amplitude * ComplexMatrix::kronecker(ComplexMatrix::identity(gdim), torus_part);
}

ComplexMatrix DiracEvaluator::delta_letter(int gen, const SpherePoint& point) const {
  const GeneratorInfo& info = pres_->generator(gen);
  const std::vector<double> x = real_coordinates(*pres_, point, central_slot_);
  const int ambient = static_cast<int>(gammas_.size());

  // Complex gradient of the coordinate function of this generator.
  std::vector<std::complex<double>> grad(ambient, 0.0);
  if (info.pair < 0) {
    int slot = 2 * pres_->pair_count() + central_slot_[gen];
    grad[slot] = 1.0;
  } else {
    grad[2 * info.pair] = 1.0;
    grad[2 * info.pair + 1] = info.pair_sign > 0 ? std::complex<double>(0.0, 1.0)
                                                 : std::complex<double>(0.0, -1.0);
  }
  if (tangential_) {
    std::complex<double> radial = 0.0;
    for (int k = 0; k < ambient; ++k) radial += x[k] * grad[k];
    for (int k = 0; k < ambient; ++k) grad[k] -= radial * x[k];
  }

  const int gdim = gammas_.front().rows();
  ComplexMatrix clifford(gdim, gdim);
  for (int k = 0; k < ambient; ++k) {
    if (grad[k] == 0.0) continue;
    clifford += grad[k] * gammas_[k];
  }

  ComplexMatrix torus_part;
  if (info.pair < 0) {
    torus_part = ComplexMatrix::identity(torus_.dimension);
  } else {
    const ComplexMatrix& word = torus_.pair_word[info.pair];
    torus_part = info.pair_sign > 0 ? word : word.adjoint();
  }
  return ComplexMatrix::kronecker(clifford, torus_part);
}

ComplexMatrix DiracEvaluator::evaluate_algebra(const AlgebraElement& element,
                                               const SpherePoint& point) const {
  ComplexMatrix acc(dimension_, dimension_);
  for (const auto& [m, coeff] : element.terms()) {
    ComplexMatrix prod = ComplexMatrix::identity(dimension_);
    for (int g = 0; g < pres_->generator_count(); ++g)
      for (int rep = 0; rep < m.exps[g]; ++rep) prod = prod * algebra_letter(g, point);
    acc += coeff.eval(Rational(2, torus_.modulus)) * prod;
  }
  return acc;
}

ComplexMatrix DiracEvaluator::evaluate(const FirstOrderElement& element,
                                       const SpherePoint& point) const {
  if (&element.presentation() != pres_)
    raise(ErrorKind::PresentationMismatch, "evaluating form over a different presentation");
  ComplexMatrix acc(dimension_, dimension_);
  for (const auto& [w, c] : element.terms()) {
    ComplexMatrix prod = ComplexMatrix::identity(dimension_);
    for (int letter : w.letters) prod = prod * delta_letter(letter, point);
    acc += prod * evaluate_algebra(c, point);
  }
  return acc;
}

}  // namespace ncs
