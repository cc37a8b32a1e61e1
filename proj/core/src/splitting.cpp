#include "ncs/splitting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include "ncs/error.hpp"

namespace ncs {

namespace {

using Complex = std::complex<double>;

/// Torus word of each generator: its signed weight in the splitting lattice.
std::vector<TorusWord> generator_words(const Presentation& pres) {
  if (pres.torus_rank() != 2)
    raise(ErrorKind::DomainError, "splitting requires a rank-2 torus: " + pres.name());
  const auto& weights = pres.torus_weights();
  std::vector<TorusWord> words(pres.generator_count());
  for (int g = 0; g < pres.generator_count(); ++g) {
    const GeneratorInfo& info = pres.generator(g);
    if (info.pair < 0) continue;  // central: trivial word
    const auto& w = weights.at(info.pair);
    words[g] = TorusWord{info.pair_sign * w.at(0), info.pair_sign * w.at(1)};
  }
  return words;
}

/// mu-exponent a generator contributes on top of its normal-ordered torus
/// word: conjugate generators carry the phase of the torus *-structure,
/// (u^a v^b)* = mu^{-ab} u^{-a} v^{-b}.
long long letter_phase(const GeneratorInfo& info, const TorusWord& word) {
  if (info.pair_sign >= 0) return 0;
  return -static_cast<long long>(word.a) * word.b;
}

bool term_less(const SplitTerm& x, const SplitTerm& y) {
  const int lx = std::popcount(x.mask);
  const int ly = std::popcount(y.mask);
  if (lx != ly) return lx < ly;
  if (x.mask != y.mask) return x.mask < y.mask;
  return monomial_less(x.monomial, y.monomial);
}

bool term_place_equal(const SplitTerm& x, const SplitTerm& y) {
  return x.mask == y.mask && x.monomial == y.monomial;
}

/// Parity sign of merging two disjoint ascending subsets: (-1)^{#(s,t): s>t}.
int merge_sign(std::uint32_t s, std::uint32_t t) {
  int inversions = 0;
  for (std::uint32_t rest = t; rest != 0; rest &= rest - 1) {
    const int bit = std::countr_zero(rest);
    inversions += std::popcount(s >> (bit + 1));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

// ----------------------------------------------------------------- SplitForm

void SplitForm::add_term(const TorusWord& word, std::uint32_t mask, const Monomial& monomial,
                         Scalar coefficient) {
  if (coefficient.is_zero()) return;
  auto part = std::lower_bound(parts_.begin(), parts_.end(), word,
                               [](const SplitPart& p, const TorusWord& w) { return p.word < w; });
  if (part == parts_.end() || !(part->word == word))
    part = parts_.insert(part, SplitPart{word, {}});

  SplitTerm probe{mask, monomial, Scalar::zero()};
  auto& terms = part->terms;
  auto it = std::lower_bound(terms.begin(), terms.end(), probe, term_less);
  if (it != terms.end() && term_place_equal(*it, probe)) {
    it->coefficient = it->coefficient + coefficient;
    if (it->coefficient.is_zero()) {
      terms.erase(it);
      if (terms.empty()) parts_.erase(part);
    }
  } else {
    terms.insert(it, SplitTerm{mask, monomial, std::move(coefficient)});
  }
}

SplitForm& SplitForm::operator+=(const SplitForm& other) {
  if (pres_ != other.pres_)
    raise(ErrorKind::PresentationMismatch, "adding split forms over different presentations");
  for (const SplitPart& part : other.parts_)
    for (const SplitTerm& term : part.terms)
      add_term(part.word, term.mask, term.monomial, term.coefficient);
  return *this;
}

SplitForm& SplitForm::operator-=(const SplitForm& other) {
  if (pres_ != other.pres_)
    raise(ErrorKind::PresentationMismatch, "subtracting split forms over different presentations");
  for (const SplitPart& part : other.parts_)
    for (const SplitTerm& term : part.terms)
      add_term(part.word, term.mask, term.monomial, -term.coefficient);
  return *this;
}

SplitForm operator*(const SplitForm& x, const SplitForm& y) {
  if (x.pres_ != y.pres_)
    raise(ErrorKind::PresentationMismatch, "multiplying split forms over different presentations");
  SplitForm out(*x.pres_);
  for (const SplitPart& px : x.parts_) {
    for (const SplitPart& py : y.parts_) {
      // Torus-word collection: (u^a v^b)(u^a' v^b') = mu^{-b a'} u^{a+a'} v^{b+b'}.
      const long long collect = -static_cast<long long>(px.word.b) * py.word.a;
      const TorusWord word = px.word + py.word;
      for (const SplitTerm& tx : px.terms) {
        for (const SplitTerm& ty : py.terms) {
          if ((tx.mask & ty.mask) != 0) continue;  // repeated differential
          Monomial product = tx.monomial;
          for (int g = 0; g < kMaxGenerators; ++g)
            product.exps[g] = static_cast<std::uint8_t>(product.exps[g] + ty.monomial.exps[g]);
          Scalar coeff = tx.coefficient * ty.coefficient *
                         Scalar::mu_power(static_cast<std::int32_t>(collect));
          if (merge_sign(tx.mask, ty.mask) < 0) coeff = -coeff;
          out.add_term(word, tx.mask | ty.mask, product, std::move(coeff));
        }
      }
    }
  }
  return out;
}

bool operator==(const SplitForm& x, const SplitForm& y) {
  if (x.pres_ != y.pres_ || x.parts_.size() != y.parts_.size()) return false;
  for (std::size_t i = 0; i < x.parts_.size(); ++i) {
    const SplitPart& px = x.parts_[i];
    const SplitPart& py = y.parts_[i];
    if (!(px.word == py.word) || px.terms.size() != py.terms.size()) return false;
    for (std::size_t j = 0; j < px.terms.size(); ++j) {
      const SplitTerm& tx = px.terms[j];
      const SplitTerm& ty = py.terms[j];
      if (!term_place_equal(tx, ty) || !(tx.coefficient == ty.coefficient)) return false;
    }
  }
  return true;
}

std::string SplitForm::to_string() const {
  if (parts_.empty()) return "0";
  std::ostringstream out;
  bool first_part = true;
  for (const SplitPart& part : parts_) {
    if (!first_part) out << " + ";
    first_part = false;
    out << "(";
    bool first_term = true;
    for (const SplitTerm& term : part.terms) {
      if (!first_term) out << " + ";
      first_term = false;
      out << term.coefficient.to_string();
      for (std::uint32_t rest = term.mask; rest != 0; rest &= rest - 1)
        out << " d" << pres_->generator(std::countr_zero(rest)).name;
      for (int g = 0; g < pres_->generator_count(); ++g)
        for (int e = 0; e < term.monomial.exps[g]; ++e) out << " " << pres_->generator(g).name;
    }
    out << ") (x) u^" << part.word.a << " v^" << part.word.b;
  }
  return out.str();
}

// --------------------------------------------------------------------- split

SplitForm split(const ExteriorElement& element) {
  const Presentation& pres = element.presentation();
  const std::vector<TorusWord> words = generator_words(pres);

  SplitForm out(pres);
  for (const auto& [mask, coefficient] : element.terms()) {
    for (const auto& [monomial, scalar] : coefficient.terms()) {
      // Letters in canonical order: differential symbols (ascending), then
      // algebra letters (ascending, with multiplicity).  Collect each torus
      // word to the right: passing v^b over u^a' costs mu^{-b a'}, and
      // conjugate letters carry their *-structure phase.
      TorusWord total{};
      long long phase = 0;
      long long b_sum = 0;
      const auto take_letter = [&](int g) {
        const TorusWord& w = words[g];
        phase += letter_phase(pres.generator(g), w);
        phase -= b_sum * w.a;
        b_sum += w.b;
        total = total + w;
      };
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
        take_letter(std::countr_zero(rest));
      for (int g = 0; g < pres.generator_count(); ++g)
        for (int e = 0; e < monomial.exps[g]; ++e) take_letter(g);
      out.add_term(total, mask, monomial,
                   scalar * Scalar::mu_power(static_cast<std::int32_t>(phase)));
    }
  }
  return out;
}

SplitForm split(const AlgebraElement& element) {
  return split(ExteriorElement::from_algebra(element));
}

SplitForm split_d(const SplitForm& form) {
  const Presentation& pres = form.presentation();
  SplitForm out(pres);
  for (const SplitPart& part : form.parts()) {
    for (const SplitTerm& term : part.terms) {
      for (int g = 0; g < pres.generator_count(); ++g) {
        const int mult = term.monomial.exps[g];
        if (mult == 0) continue;
        if ((term.mask >> g) & 1u) continue;  // repeated differential
        Monomial reduced = term.monomial;
        reduced.exps[g] = static_cast<std::uint8_t>(mult - 1);
        // Insert the new differential at its ascending slot: one classical
        // sign per smaller symbol already present.
        Scalar coeff = term.coefficient * Scalar{mult};
        const int below = std::popcount(term.mask & ((1u << g) - 1u));
        if (below % 2 != 0) coeff = Scalar::zero() - coeff;
        out.add_term(part.word, term.mask | (1u << g), reduced, std::move(coeff));
      }
    }
  }
  return out;
}

int complement_sign(std::uint32_t subset, int frame_dimension) {
  const std::uint32_t full = (frame_dimension >= 32) ? ~0u : ((1u << frame_dimension) - 1u);
  return merge_sign(subset, full & ~subset);
}

// ---------------------------------------------------------------- evaluation

PointEvaluation evaluate_at(const SplitForm& form, const TangentFrame& frame,
                            const FrameCovectors& covectors, const Rational& theta) {
  const Presentation& pres = form.presentation();
  const int fdim = frame.dimension();
  const std::size_t size = 1u << fdim;

  PointEvaluation out;
  out.frame_dimension = fdim;
  out.theta = theta.convert_to<double>();
  out.parts.reserve(form.parts().size());

  std::vector<Complex> wedge(size);
  std::vector<Complex> next(size);
  for (const SplitPart& part : form.parts()) {
    EvaluatedPart evaluated{part.word, std::vector<Complex>(size, 0.0)};
    for (const SplitTerm& term : part.terms) {
      Complex base = term.coefficient.eval(theta);
      for (int g = 0; g < pres.generator_count(); ++g)
        for (int e = 0; e < term.monomial.exps[g]; ++e) base *= covectors.amplitude[g];
      if (term.mask == 0) {
        evaluated.component[0] += base;
        continue;
      }
      std::fill(wedge.begin(), wedge.end(), Complex(0.0));
      wedge[0] = base;
      for (std::uint32_t rest = term.mask; rest != 0; rest &= rest - 1) {
        const int g = std::countr_zero(rest);
        std::fill(next.begin(), next.end(), Complex(0.0));
        for (std::uint32_t s = 0; s < size; ++s) {
          if (wedge[s] == Complex(0.0)) continue;
          for (int t = 0; t < fdim; ++t) {
            if ((s >> t) & 1u) continue;
            const Complex leg = covectors.covector[g][t];
            if (leg == Complex(0.0)) continue;
            const int sign = (std::popcount(s >> (t + 1)) % 2 == 0) ? 1 : -1;
            next[s | (1u << t)] += static_cast<double>(sign) * wedge[s] * leg;
          }
        }
        wedge.swap(next);
      }
      for (std::uint32_t s = 0; s < size; ++s) evaluated.component[s] += wedge[s];
    }
    out.parts.push_back(std::move(evaluated));
  }
  return out;
}

PointEvaluation evaluate_at(const SplitForm& form, const SpherePoint& point, int modulus) {
  const Presentation& pres = form.presentation();
  const TangentFrame frame = TangentFrame::build(pres, point);
  const FrameCovectors covectors = frame_covectors(pres, point, frame);
  return evaluate_at(form, frame, covectors, Rational(2, modulus));
}

std::complex<double> PointEvaluation::phase(long long k) const {
  const double angle = std::acos(-1.0) * theta * static_cast<double>(k);
  return Complex(std::cos(angle), std::sin(angle));
}

double PointEvaluation::norm_inf() const {
  double best = 0.0;
  for (const EvaluatedPart& part : parts)
    for (const Complex& value : part.component) best = std::max(best, std::abs(value));
  return best;
}

namespace {

void accumulate_part(PointEvaluation& target, const TorusWord& word, std::vector<Complex> component,
                     double sign = 1.0) {
  auto it = std::lower_bound(
      target.parts.begin(), target.parts.end(), word,
      [](const EvaluatedPart& p, const TorusWord& w) { return p.word < w; });
  if (it == target.parts.end() || !(it->word == word)) {
    if (sign != 1.0)
      for (Complex& value : component) value *= sign;
    target.parts.insert(it, EvaluatedPart{word, std::move(component)});
    return;
  }
  for (std::size_t s = 0; s < component.size(); ++s) it->component[s] += sign * component[s];
}

void check_compatible(const PointEvaluation& x, const PointEvaluation& y, const char* what) {
  if (x.frame_dimension != y.frame_dimension || x.theta != y.theta)
    raise(ErrorKind::PresentationMismatch,
          std::string(what) + ": point evaluations with different frames");
}

}  // namespace

PointEvaluation& PointEvaluation::operator+=(const PointEvaluation& other) {
  check_compatible(*this, other, "adding");
  for (const EvaluatedPart& part : other.parts) accumulate_part(*this, part.word, part.component);
  return *this;
}

PointEvaluation& PointEvaluation::operator-=(const PointEvaluation& other) {
  check_compatible(*this, other, "subtracting");
  for (const EvaluatedPart& part : other.parts)
    accumulate_part(*this, part.word, part.component, -1.0);
  return *this;
}

PointEvaluation operator*(const PointEvaluation& x, const PointEvaluation& y) {
  check_compatible(x, y, "multiplying");
  const int fdim = x.frame_dimension;
  const std::size_t size = 1u << fdim;

  PointEvaluation out;
  out.frame_dimension = fdim;
  out.theta = x.theta;
  for (const EvaluatedPart& px : x.parts) {
    for (const EvaluatedPart& py : y.parts) {
      // Torus-word collection phase mu^{-b a'} multiplies the whole product.
      const Complex collect = x.phase(-static_cast<long long>(px.word.b) * py.word.a);
      std::vector<Complex> component(size, 0.0);
      for (std::uint32_t s = 0; s < size; ++s) {
        if (px.component[s] == Complex(0.0)) continue;
        const Complex left = collect * px.component[s];
        for (std::uint32_t t = 0; t < size; ++t) {
          if ((s & t) != 0 || py.component[t] == Complex(0.0)) continue;
          const double sign = static_cast<double>(merge_sign(s, t));
          component[s | t] += sign * left * py.component[t];
        }
      }
      accumulate_part(out, px.word + py.word, std::move(component));
    }
  }
  return out;
}

PointEvaluation hodge_star_at(const PointEvaluation& value) {
  const int fdim = value.frame_dimension;
  const std::uint32_t full = (1u << fdim) - 1u;
  PointEvaluation out;
  out.frame_dimension = fdim;
  out.theta = value.theta;
  out.parts.reserve(value.parts.size());
  for (const EvaluatedPart& part : value.parts) {
    EvaluatedPart dual{part.word, std::vector<Complex>(part.component.size(), 0.0)};
    for (std::uint32_t s = 0; s <= full; ++s)
      dual.component[full & ~s] =
          static_cast<double>(complement_sign(s, fdim)) * part.component[s];
    out.parts.push_back(std::move(dual));
  }
  return out;
}

PointEvaluation conjugate_at(const PointEvaluation& value) {
  PointEvaluation out;
  out.frame_dimension = value.frame_dimension;
  out.theta = value.theta;
  for (const EvaluatedPart& part : value.parts) {
    const Complex factor =
        value.phase(-static_cast<long long>(part.word.a) * part.word.b);
    std::vector<Complex> component(part.component.size());
    for (std::size_t s = 0; s < component.size(); ++s)
      component[s] = factor * std::conj(part.component[s]);
    accumulate_part(out, TorusWord{-part.word.a, -part.word.b}, std::move(component));
  }
  return out;
}

std::vector<std::pair<TorusWord, std::complex<double>>> hermitian_pair_at(
    const PointEvaluation& x, const PointEvaluation& y) {
  check_compatible(x, y, "pairing");
  std::vector<std::pair<TorusWord, Complex>> out;
  for (const EvaluatedPart& px : x.parts) {
    for (const EvaluatedPart& py : y.parts) {
      // (u^a v^b)* u^a' v^b' = mu^{-ab + b a'} u^{a'-a} v^{b'-b}.
      const TorusWord word{py.word.a - px.word.a, py.word.b - px.word.b};
      const Complex factor = x.phase(-static_cast<long long>(px.word.a) * px.word.b +
                                     static_cast<long long>(px.word.b) * py.word.a);
      Complex sum = 0.0;
      for (std::size_t s = 0; s < px.component.size(); ++s)
        sum += std::conj(px.component[s]) * py.component[s];
      const Complex value = factor * sum;
      auto it = std::lower_bound(out.begin(), out.end(), word,
                                 [](const auto& entry, const TorusWord& w) {
                                   return entry.first < w;
                                 });
      if (it == out.end() || !(it->first == word))
        out.insert(it, {word, value});
      else
        it->second += value;
    }
  }
  return out;
}

// ----------------------------------------------------------------------- asd

AsdReport asd_residual(const std::vector<std::vector<AlgebraElement>>& projection, int samples,
                       unsigned seed, double tolerance, int modulus) {
  if (projection.empty()) raise(ErrorKind::InvalidArgument, "empty projection matrix");
  const std::size_t n = projection.size();
  const Presentation& pres = projection.front().front().presentation();
  for (const auto& row : projection) {
    if (row.size() != n) raise(ErrorKind::InvalidArgument, "projection matrix is not square");
    for (const AlgebraElement& entry : row)
      if (&entry.presentation() != &pres)
        raise(ErrorKind::PresentationMismatch, "projection entries over mixed presentations");
  }

  // Field strength F = p (dp)^2, computed once symbolically.
  std::vector<std::vector<ExteriorElement>> dp(n, std::vector<ExteriorElement>());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dp[i].push_back(ext_d(projection[i][j]));

  std::vector<std::vector<ExteriorElement>> dp2(n, std::vector<ExteriorElement>());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ExteriorElement sum = ExteriorElement::zero(pres);
      for (std::size_t k = 0; k < n; ++k) sum += dp[i][k] * dp[k][j];
      dp2[i].push_back(std::move(sum));
    }

  std::vector<SplitForm> field;
  field.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ExteriorElement sum = ExteriorElement::zero(pres);
      for (std::size_t k = 0; k < n; ++k) sum += projection[i][k] * dp2[k][j];
      field.push_back(split(sum));
    }

  AsdReport report;
  report.tolerance = tolerance;
  report.per_point.reserve(static_cast<std::size_t>(samples));
  const Rational theta(2, modulus);
  std::mt19937 rng(seed);
  for (int sample = 0; sample < samples; ++sample) {
    const SpherePoint point = random_sphere_point(pres, rng);
    const TangentFrame frame = TangentFrame::build(pres, point);
    const FrameCovectors covectors = frame_covectors(pres, point, frame);
    double point_max = 0.0;
    for (const SplitForm& entry : field) {
      const PointEvaluation value = evaluate_at(entry, frame, covectors, theta);
      PointEvaluation residual = hodge_star_at(value);
      residual += value;
      point_max = std::max(point_max, residual.norm_inf());
      report.max_component = std::max(report.max_component, value.norm_inf());
    }
    report.per_point.push_back(point_max);
    report.max_residual = std::max(report.max_residual, point_max);
  }
  report.pass = report.max_residual <= tolerance;
  return report;
}

}  // namespace ncs
