#include "ncs/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
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

std::vector<int> letters_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int g = 0; mask != 0; ++g, mask >>= 1)
    if (mask & 1u) out.push_back(g);
  return out;
}

bool word_order(std::uint32_t a, std::uint32_t b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  return a < b;
}

/// Canonicalizes a sequence of differential symbols by insertion sort,
/// accumulating the exchange sign and deformation phase.  Returns false for a
/// repeated symbol (the term is zero).
bool sort_letters(const Presentation& pres, std::vector<int>& letters, bool& negate,
                  long long& phase) {
  negate = false;
  phase = 0;
  for (std::size_t i = 1; i < letters.size(); ++i) {
    int j = static_cast<int>(i);
    while (j > 0 && letters[j - 1] > letters[j]) {
      // d(a) d(b) = -mu^B(a,b) d(b) d(a) with a = letters[j-1], b = letters[j].
      phase += detail::cross_phase(pres, letters[j - 1], letters[j]);
      negate = !negate;
      std::swap(letters[j - 1], letters[j]);
      --j;
    }
    if (j > 0 && letters[j - 1] == letters[j]) return false;
  }
  return true;
}

Scalar sign_phase_scalar(bool negate, long long phase) {
  Scalar s = negate ? -Scalar::one() : Scalar::one();
  if (phase != 0) s = s * Scalar::mu_power(static_cast<int>(phase));
  return s;
}

}  // namespace

// ---------------------------------------------------------- ExteriorElement

ExteriorElement ExteriorElement::from_algebra(AlgebraElement value) {
  ExteriorElement out(value.presentation());
  out.add_term(0, std::move(value));
  return out;
}

ExteriorElement ExteriorElement::from_term(std::uint32_t word, AlgebraElement coefficient) {
  ExteriorElement out(coefficient.presentation());
  out.add_term(word, std::move(coefficient));
  return out;
}

ExteriorElement ExteriorElement::from_letters(const Presentation& pres,
                                              const std::vector<int>& letters,
                                              AlgebraElement coefficient) {
  std::vector<int> sorted = letters;
  bool negate = false;
  long long phase = 0;
  if (!sort_letters(pres, sorted, negate, phase)) return ExteriorElement::zero(pres);
  std::uint32_t mask = 0;
  for (int g : sorted) mask |= 1u << g;
  ExteriorElement out(pres);
  out.add_term(mask, sign_phase_scalar(negate, phase) * std::move(coefficient));
  return out;
}

int ExteriorElement::degree() const noexcept {
  int deg = 0;
  for (const auto& [w, c] : terms_) deg = std::max(deg, std::popcount(w));
  return deg;
}

bool ExteriorElement::is_degree_homogeneous() const noexcept {
  for (const auto& [w, c] : terms_)
    if (std::popcount(w) != std::popcount(terms_.front().first)) return false;
  return true;
}

ExteriorElement ExteriorElement::degree_part(int degree) const {
  ExteriorElement out(*pres_);
  for (const auto& [w, c] : terms_)
    if (std::popcount(w) == degree) out.terms_.emplace_back(w, c);
  return out;
}

void ExteriorElement::add_term(std::uint32_t word, AlgebraElement coefficient) {
  if (coefficient.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), word,
      [](const auto& entry, std::uint32_t w) { return word_order(entry.first, w); });
  if (it != terms_.end() && it->first == word) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, {word, std::move(coefficient)});
  }
}

ExteriorElement& ExteriorElement::operator+=(const ExteriorElement& other) {
  if (pres_ != other.pres_)
    raise(ErrorKind::PresentationMismatch, "adding forms over different presentations");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

ExteriorElement& ExteriorElement::operator-=(const ExteriorElement& other) {
  if (pres_ != other.pres_)
    raise(ErrorKind::PresentationMismatch, "subtracting forms over different presentations");
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

ExteriorElement operator-(const ExteriorElement& a) {
  ExteriorElement out(*a.pres_);
  for (const auto& [w, c] : a.terms_) out.terms_.emplace_back(w, -c);
  return out;
}

ExteriorElement operator*(const ExteriorElement& a, const ExteriorElement& b) {
  if (a.pres_ != b.pres_)
    raise(ErrorKind::PresentationMismatch, "multiplying forms over different presentations");
  const Presentation& pres = *a.pres_;
  ExteriorElement out(pres);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      if ((wa & wb) != 0) continue;  // repeated symbol
      // Exchange sign and phase for merging the two sorted words.
      const auto la = letters_of(wa);
      const auto lb = letters_of(wb);
      bool negate = false;
      long long word_phase = 0;
      for (int x : la)
        for (int y : lb)
          if (x > y) {
            negate = !negate;
            word_phase += detail::cross_phase(pres, x, y);
          }
      const Scalar word_factor = sign_phase_scalar(negate, word_phase);
      // The left coefficient crosses the right word, one monomial at a time.
      for (const auto& [m, s] : ca.terms()) {
        const long long phase = detail::monomial_cross_letters(pres, m, lb);
        Scalar piece = s * word_factor;
        if (phase != 0) piece = piece * Scalar::mu_power(static_cast<int>(phase));
        AlgebraElement coefficient =
            AlgebraElement::from_monomial(pres, m, std::move(piece)) * cb;
        out.add_term(wa | wb, std::move(coefficient));
      }
    }
  }
  return out;
}

ExteriorElement operator*(const Scalar& s, ExteriorElement a) {
  ExteriorElement out(*a.pres_);
  for (auto& [w, c] : a.terms_) {
    AlgebraElement scaled = s * c;
    if (!scaled.is_zero()) out.terms_.emplace_back(w, std::move(scaled));
  }
  return out;
}

ExteriorElement operator*(const AlgebraElement& a, const ExteriorElement& b) {
  return ExteriorElement::from_algebra(a) * b;
}

ExteriorElement operator*(const ExteriorElement& a, const AlgebraElement& b) {
  return a * ExteriorElement::from_algebra(b);
}

ExteriorElement ExteriorElement::adjoint() const {
  const Presentation& pres = *pres_;
  ExteriorElement out(pres);
  for (const auto& [w, c] : terms_) {
    const auto letters = letters_of(w);
    const int d = static_cast<int>(letters.size());
    // (d g1 ... d gd * a)* = (-1)^(d(d-1)/2) a* d(gd*) ... d(g1*), then the
    // conjugated reversed word is resorted and the coefficient crosses it.
    std::vector<int> conj;
    conj.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      conj.push_back(pres.generator(*it).conjugate);
    bool negate = false;
    long long word_phase = 0;
    if (!sort_letters(pres, conj, negate, word_phase)) continue;
    if ((d * (d - 1) / 2) % 2 == 1) negate = !negate;
    std::uint32_t mask = 0;
    for (int g : conj) mask |= 1u << g;
    const Scalar word_factor = sign_phase_scalar(negate, word_phase);
    const AlgebraElement cstar = c.adjoint();
    for (const auto& [m, s] : cstar.terms()) {
      const long long phase = detail::monomial_cross_letters(pres, m, conj);
      Scalar piece = s * word_factor;
      if (phase != 0) piece = piece * Scalar::mu_power(static_cast<int>(phase));
      out.add_term(mask, AlgebraElement::from_monomial(pres, m, std::move(piece)));
    }
  }
  return out;
}

std::string ExteriorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string word;
    for (int letter : letters_of(w)) {
      if (!word.empty()) word += "^";
      word += "d(" + pres_->generator(letter).name + ")";
    }
    if (word.empty()) {
      out += c.to_string();
    } else {
      out += word + "*(" + c.to_string() + ")";
    }
  }
  return out;
}

// -------------------------------------------------------------------- ext_d

namespace {

/// Formal letterwise differential of a raw exponent word into the exterior
/// calculus, d landing in front: sum_j mu^prefix d(g_j) (word minus g_j).
ExteriorElement formal_d_monomial(const Presentation& pres, const ExponentArray& exps,
                                  const Scalar& coeff) {
  ExteriorElement out(pres);
  detail::for_each_letter_derivative(
      pres, exps, [&](int g, const ExponentArray& rest, long long prefix, int multiplicity) {
        Scalar piece = coeff * Scalar(static_cast<long>(multiplicity));
        if (prefix != 0) piece = piece * Scalar::mu_power(static_cast<int>(prefix));
        out += ExteriorElement::from_term(
            1u << g, AlgebraElement::from_monomial(pres, Monomial{rest}, std::move(piece)));
      });
  return out;
}

}  // namespace

ExteriorElement ext_d(const AlgebraElement& value) {
  const Presentation& pres = value.presentation();
  ExteriorElement out(pres);
  for (const auto& [m, s] : value.terms()) out += formal_d_monomial(pres, m.exps, s);
  return out;
}

ExteriorElement ext_d(const ExteriorElement& value) {
  const Presentation& pres = value.presentation();
  ExteriorElement out(pres);
  for (const auto& [w, c] : value.terms()) {
    // d(w * c) = (-1)^|w| w * d(c): the word is closed, and d passes it with
    // the graded sign before differentiating the coefficient.
    ExteriorElement dc = ext_d(c);
    const bool negate = (std::popcount(w) % 2) == 1;
    for (const auto& [dw, cc] : dc.terms()) {
      if ((w & dw) != 0) continue;
      const auto single = letters_of(dw);
      // Merge the fresh symbol into the existing word from the right.
      bool merge_negate = false;
      long long merge_phase = 0;
      for (int x : letters_of(w))
        if (x > single.front()) {
          merge_negate = !merge_negate;
          merge_phase += detail::cross_phase(pres, x, single.front());
        }
      if (negate) merge_negate = !merge_negate;
      out += ExteriorElement::from_term(w | dw,
                                        sign_phase_scalar(merge_negate, merge_phase) * cc);
    }
  }
  return out;
}

std::vector<ExteriorElement> d_relation_generators(const Presentation& pres) {
  std::vector<ExteriorElement> out;
  for (const auto& rel : pres.sphere_relations()) {
    ExteriorElement gen = formal_d_monomial(pres, rel.lhs, Scalar::one());
    for (const auto& [exps, coeff] : rel.rhs) gen -= formal_d_monomial(pres, exps, coeff);
    if (!gen.is_zero()) out.push_back(std::move(gen));
  }
  return out;
}

// ------------------------------------------------------------ ExteriorValue

double ExteriorValue::norm_inf() const {
  double best = 0.0;
  for (const auto& m : component) best = std::max(best, m.norm_inf());
  return best;
}

ExteriorValue& ExteriorValue::operator+=(const ExteriorValue& other) {
  if (frame_dimension != other.frame_dimension || component.size() != other.component.size())
    raise(ErrorKind::InvalidArgument, "adding values over different frames");
  for (std::size_t k = 0; k < component.size(); ++k) component[k] += other.component[k];
  return *this;
}

ExteriorValue& ExteriorValue::operator-=(const ExteriorValue& other) {
  if (frame_dimension != other.frame_dimension || component.size() != other.component.size())
    raise(ErrorKind::InvalidArgument, "subtracting values over different frames");
  for (std::size_t k = 0; k < component.size(); ++k) component[k] -= other.component[k];
  return *this;
}

ExteriorValue operator*(const ExteriorValue& a, const ExteriorValue& b) {
  if (a.frame_dimension != b.frame_dimension)
    raise(ErrorKind::InvalidArgument, "multiplying values over different frames");
  ExteriorValue out;
  out.frame_dimension = a.frame_dimension;
  const int tdim = a.component.front().rows();
  out.component.assign(a.component.size(), ComplexMatrix(tdim, tdim));
  for (std::uint32_t s = 0; s < a.component.size(); ++s) {
    if (a.component[s].norm_inf() == 0.0) continue;
    for (std::uint32_t t = 0; t < b.component.size(); ++t) {
      if ((s & t) != 0) continue;
      if (b.component[t].norm_inf() == 0.0) continue;
      // Sign of sorting the concatenation of the two index sets.
      int inversions = 0;
      for (int x : letters_of(s))
        for (int y : letters_of(t))
          if (x > y) ++inversions;
      ComplexMatrix prod = a.component[s] * b.component[t];
      if (inversions % 2 == 1) prod = std::complex<double>(-1.0, 0.0) * prod;
      out.component[s | t] += prod;
    }
  }
  return out;
}

// ------------------------------------------------------------- TangentFrame

namespace {

std::vector<double> ambient_coordinates(const Presentation& pres, const SpherePoint& point,
                                        const std::vector<int>& central_slot) {
  std::vector<double> x(2 * static_cast<std::size_t>(pres.pair_count()), 0.0);
  for (int p = 0; p < pres.pair_count(); ++p) {
    x[2 * p] = point.pair_value.at(p).real();
    x[2 * p + 1] = point.pair_value.at(p).imag();
  }
  for (int g = 0; g < pres.generator_count(); ++g)
    if (central_slot[g] >= 0) x.push_back(point.central_value.at(central_slot[g]));
  return x;
}

std::vector<int> central_slots(const Presentation& pres) {
  std::vector<int> slots(pres.generator_count(), -1);
  int next = 0;
  for (int g = 0; g < pres.generator_count(); ++g)
    if (pres.generator(g).pair < 0) slots[g] = next++;
  return slots;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

/// Determinant by Gaussian elimination with partial pivoting.
double determinant(std::vector<std::vector<double>> m) {
  const int n = static_cast<int>(m.size());
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace

TangentFrame TangentFrame::build(const Presentation& pres, const SpherePoint& point) {
  TangentFrame frame;
  const auto slots = central_slots(pres);
  frame.base_point = ambient_coordinates(pres, point, slots);
  const int k = static_cast<int>(frame.base_point.size());
  const bool on_sphere = !pres.sphere_relations().empty();

  std::vector<std::vector<double>> rejected;  // directions to project out
  if (on_sphere) {
    std::vector<double> radial = frame.base_point;
    const double norm = std::sqrt(dot(radial, radial));
    if (norm < 1e-9) raise(ErrorKind::InvalidArgument, "point too close to the origin");
    for (double& v : radial) v /= norm;
    rejected.push_back(std::move(radial));
  }

  const int want = on_sphere ? k - 1 : k;
  for (int axis = 0; axis < k && static_cast<int>(frame.vectors.size()) < want; ++axis) {
    std::vector<double> v(k, 0.0);
    v[axis] = 1.0;
    for (const auto& r : rejected) {
      const double c = dot(v, r);
      for (int j = 0; j < k; ++j) v[j] -= c * r[j];
    }
    for (const auto& e : frame.vectors) {
      const double c = dot(v, e);
      for (int j = 0; j < k; ++j) v[j] -= c * e[j];
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 1e-6) continue;
    for (double& x : v) x /= norm;
    frame.vectors.push_back(std::move(v));
  }
  if (static_cast<int>(frame.vectors.size()) != want)
    raise(ErrorKind::InternalCheckFailed, "degenerate tangent frame");

  // Pin the orientation: with the outward radius first, the full ambient
  // basis must be positively oriented.
  std::vector<std::vector<double>> columns;
  if (on_sphere) {
    std::vector<double> radial = frame.base_point;
    const double norm = std::sqrt(dot(radial, radial));
    for (double& v : radial) v /= norm;
    columns.push_back(std::move(radial));
  }
  for (const auto& e : frame.vectors) columns.push_back(e);
  std::vector<std::vector<double>> mat(k, std::vector<double>(k, 0.0));
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < k; ++r) mat[r][c] = columns[c][r];
  // Orient with the inward radius first: this choice of sphere orientation
  // makes the field strength of the basic instanton bundle anti-selfdual.
  if (determinant(std::move(mat)) > 0.0)
    for (double& v : frame.vectors.back()) v = -v;
  return frame;
}

FrameCovectors frame_covectors(const Presentation& pres, const SpherePoint& point,
                               const TangentFrame& frame) {
  const auto slots = central_slots(pres);
  const auto& x = frame.base_point;
  const int k = static_cast<int>(x.size());
  const int fdim = frame.dimension();
  const bool tangential = !pres.sphere_relations().empty();

  FrameCovectors data;
  data.amplitude.resize(pres.generator_count());
  data.covector.resize(pres.generator_count());
  for (int g = 0; g < pres.generator_count(); ++g) {
    const GeneratorInfo& info = pres.generator(g);
    std::vector<std::complex<double>> grad(k, 0.0);
    if (info.pair < 0) {
      data.amplitude[g] = point.central_value.at(slots[g]);
      grad[2 * pres.pair_count() + slots[g]] = 1.0;
    } else {
      const auto z = point.pair_value.at(info.pair);
      data.amplitude[g] = info.pair_sign > 0 ? z : std::conj(z);
      grad[2 * info.pair] = 1.0;
      grad[2 * info.pair + 1] =
          info.pair_sign > 0 ? std::complex<double>(0.0, 1.0) : std::complex<double>(0.0, -1.0);
    }
    if (tangential) {
      std::complex<double> radial = 0.0;
      for (int j = 0; j < k; ++j) radial += x[j] * grad[j];
      const double norm2 = dot(x, x);
      for (int j = 0; j < k; ++j) grad[j] -= radial * x[j] / norm2;
    }
    data.covector[g].assign(fdim, 0.0);
    for (int a = 0; a < fdim; ++a) {
      std::complex<double> comp = 0.0;
      for (int j = 0; j < k; ++j) comp += grad[j] * frame.vectors[a][j];
      data.covector[g][a] = comp;
    }
  }
  return data;
}

// -------------------------------------------------- ExteriorPointEvaluator

ExteriorPointEvaluator::ExteriorPointEvaluator(const Presentation& pres, int modulus)
    : pres_(&pres), torus_(TorusRep::build(pres, modulus)) {}

ExteriorValue ExteriorPointEvaluator::evaluate(const ExteriorElement& element,
                                               const SpherePoint& point) const {
  if (&element.presentation() != pres_)
    raise(ErrorKind::PresentationMismatch, "evaluating form over a different presentation");
  const Presentation& pres = *pres_;
  const TangentFrame frame = TangentFrame::build(pres, point);
  const int fdim = frame.dimension();
  const int tdim = torus_.dimension;

  ExteriorValue acc;
  acc.frame_dimension = fdim;
  acc.component.assign(1u << fdim, ComplexMatrix(tdim, tdim));

  // Per-generator data: classical amplitude and frame covector, plus the
  // generator's torus unitary.
  const FrameCovectors classical = frame_covectors(pres, point, frame);
  const auto& amplitude = classical.amplitude;
  const auto& covector = classical.covector;
  std::vector<ComplexMatrix> torus_word(pres.generator_count());
  for (int g = 0; g < pres.generator_count(); ++g) {
    const GeneratorInfo& info = pres.generator(g);
    if (info.pair < 0) {
      torus_word[g] = ComplexMatrix::identity(tdim);
    } else {
      const ComplexMatrix& word = torus_.pair_word[info.pair];
      torus_word[g] = info.pair_sign > 0 ? word : word.adjoint();
    }
  }

  const auto letter_value = [&](int g) {
    ExteriorValue v;
    v.frame_dimension = fdim;
    v.component.assign(1u << fdim, ComplexMatrix(tdim, tdim));
    for (int a = 0; a < fdim; ++a)
      v.component[1u << a] = covector[g][a] * torus_word[g];
    return v;
  };

  for (const auto& [w, c] : element.terms()) {
    // Torus-and-amplitude value of the coefficient.
    ComplexMatrix cval(tdim, tdim);
    for (const auto& [m, s] : c.terms()) {
      ComplexMatrix prod = ComplexMatrix::identity(tdim);
      std::complex<double> amp = s.eval(Rational(2, torus_.modulus));
      for (int g = 0; g < pres.generator_count(); ++g)
        for (int rep = 0; rep < m.exps[g]; ++rep) {
          amp *= amplitude[g];
          prod = prod * torus_word[g];
        }
      cval += amp * prod;
    }
    ExteriorValue term;
    term.frame_dimension = fdim;
    term.component.assign(1u << fdim, ComplexMatrix(tdim, tdim));
    term.component[0] = cval;
    // Multiply from the left in reverse word order: w = g1 g2 ... gd.
    const auto letters = letters_of(w);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      term = letter_value(*it) * term;
    acc += term;
  }
  return acc;
}

// ------------------------------------------------------- quotient zero test

namespace {

struct ExteriorKey {
  std::uint32_t word = 0;
  Monomial monomial;
  friend bool operator==(const ExteriorKey& a, const ExteriorKey& b) = default;
};

struct ExteriorKeyHash {
  std::size_t operator()(const ExteriorKey& k) const noexcept {
    return std::hash<std::uint32_t>{}(k.word) * 1000003u ^ MonomialHash{}(k.monomial);
  }
};

using ExteriorSolver = SpanSolver<ExteriorKey, ExteriorKeyHash>;

ExteriorSolver::RowVec to_row(ExteriorSolver& solver, const ExteriorElement& element) {
  ExteriorSolver::RowVec row;
  for (const auto& [w, c] : element.terms())
    for (const auto& [m, s] : c.terms())
      row.emplace_back(solver.intern_key(ExteriorKey{w, m}), s);
  return ExteriorSolver::normalized(std::move(row));
}

std::vector<int> word_fine_degree(const Presentation& pres, std::uint32_t w) {
  std::vector<int> deg(static_cast<std::size_t>(pres.pair_count()), 0);
  for (int letter : letters_of(w)) {
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

QuotientZeroReport ext_is_zero_in_quotient(const ExteriorElement& element,
                                           int coefficient_degree_cap) {
  QuotientZeroReport report;
  if (element.is_zero()) {
    report.verdict = QuotientVerdict::Zero;
    report.detail = "identically zero";
    return report;
  }
  const Presentation& pres = element.presentation();
  const auto relation_ds = d_relation_generators(pres);

  int coeff_degree = 0;
  bool has_degree_zero_part = false;
  for (const auto& [w, c] : element.terms()) {
    if (w == 0) has_degree_zero_part = true;
    coeff_degree = std::max(coeff_degree, c.degree());
  }
  if (relation_ds.empty() || has_degree_zero_part) {
    report.verdict = QuotientVerdict::Nonzero;
    report.detail = relation_ds.empty() ? "universal calculus has no relation ideal"
                                        : "nonzero pure-algebra component";
    return report;
  }

  const int bound = std::min(coeff_degree + 2, coefficient_degree_cap);
  report.degree_bound = bound;

  std::vector<int> target_lengths;
  std::vector<std::vector<int>> target_degrees;
  for (const auto& [w, c] : element.terms()) {
    const int len = std::popcount(w);
    if (std::find(target_lengths.begin(), target_lengths.end(), len) == target_lengths.end())
      target_lengths.push_back(len);
    const auto word_deg = word_fine_degree(pres, w);
    for (const auto& [m, s] : c.terms()) {
      auto deg = add_degrees(word_deg, pair_degree(pres, m));
      if (std::find(target_degrees.begin(), target_degrees.end(), deg) == target_degrees.end())
        target_degrees.push_back(std::move(deg));
    }
  }

  std::unordered_map<std::string, std::vector<Monomial>> basis_by_degree;
  const auto degree_key = [](const std::vector<int>& deg) {
    std::string key;
    for (int v : deg) key += std::to_string(v) + ",";
    return key;
  };
  for (const auto& m : graded_basis(pres, bound))
    basis_by_degree[degree_key(pair_degree(pres, m))].push_back(m);

  std::vector<std::vector<int>> rel_degrees;
  for (const auto& rel : relation_ds) {
    const auto& [w0, c0] = rel.terms().front();
    rel_degrees.push_back(add_degrees(word_fine_degree(pres, w0),
                                      pair_degree(pres, c0.terms().front().first)));
  }

  const std::uint32_t full = (1u << pres.generator_count()) - 1u;
  ExteriorSolver solver;
  std::vector<ExteriorElement> span_storage;
  for (int d : target_lengths) {
    for (std::uint32_t wl = 0; wl <= full; ++wl) {
      if (std::popcount(wl) > d - 1) continue;
      const int right_len = d - 1 - std::popcount(wl);
      for (std::size_t r = 0; r < relation_ds.size(); ++r) {
        const auto left_deg = add_degrees(word_fine_degree(pres, wl), rel_degrees[r]);
        std::optional<ExteriorElement> left_part;
        for (std::uint32_t wr = 0; wr <= full; ++wr) {
          if (std::popcount(wr) != right_len) continue;
          const auto outer_deg = add_degrees(left_deg, word_fine_degree(pres, wr));
          std::vector<const std::vector<Monomial>*> pools;
          for (const auto& want : target_degrees) {
            std::vector<int> need(want.size());
            for (std::size_t k = 0; k < want.size(); ++k) need[k] = want[k] - outer_deg[k];
            if (auto it = basis_by_degree.find(degree_key(need)); it != basis_by_degree.end())
              pools.push_back(&it->second);
          }
          if (pools.empty()) continue;
          if (!left_part)
            left_part = ExteriorElement::from_term(wl, AlgebraElement::one(pres)) *
                        relation_ds[r];
          const ExteriorElement with_right =
              *left_part * ExteriorElement::from_term(wr, AlgebraElement::one(pres));
          if (with_right.is_zero()) continue;
          for (const auto* pool : pools) {
            for (const auto& m : *pool) {
              ExteriorElement span_elem =
                  with_right * AlgebraElement::from_monomial(pres, m, Scalar::one());
              if (!span_elem.is_zero()) span_storage.push_back(std::move(span_elem));
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
    ExteriorElement recombined = ExteriorElement::zero(pres);
    for (const auto& [src, beta] : witness->combination)
      recombined += beta * span_storage[static_cast<std::size_t>(src)];
    if (!(recombined == witness->multiplier * element))
      raise(ErrorKind::InternalCheckFailed, "quotient certificate failed recombination");
    report.verdict = QuotientVerdict::Zero;
    report.detail = "member of the relation ideal";
    return report;
  }

  const ExteriorPointEvaluator evaluator(pres);
  std::mt19937 rng(0xE87E);
  double best = 0.0;
  for (int k = 0; k < 8; ++k) {
    const SpherePoint point = random_sphere_point(pres, rng);
    best = std::max(best, evaluator.evaluate(element, point).norm_inf());
  }
  report.witness_norm = best;
  if (best > 1e-7) {
    report.verdict = QuotientVerdict::Nonzero;
    report.detail = "numeric split-evaluation witness";
  } else {
    report.verdict = QuotientVerdict::Undecided;
    report.detail = "no certificate within budget";
  }
  return report;
}

}  // namespace ncs
