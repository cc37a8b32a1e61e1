#include "ncs/algebra.hpp"

#include <algorithm>
#include <cstring>
#include <initializer_list>

#include "ncs/error.hpp"

namespace ncs {

bool monomial_less(const Monomial& a, const Monomial& b) noexcept {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return a.exps < b.exps;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t lo;
  std::uint64_t hi;
  static_assert(sizeof(m.exps) == 16);
  std::memcpy(&lo, m.exps.data(), 8);
  std::memcpy(&hi, m.exps.data() + 8, 8);
  std::uint64_t h = lo * 0x9E3779B97F4A7C15ull;
  h ^= hi + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 31;
  return static_cast<std::size_t>(h);
}

std::vector<int> pair_degree(const Presentation& pres, const Monomial& m) {
  std::vector<int> deg(pres.pair_count(), 0);
  const int n = pres.generator_count();
  for (int g = 0; g < n; ++g) {
    if (m.exps[g] == 0) continue;
    const auto& info = pres.generator(g);
    if (info.pair >= 0) deg[info.pair] += info.pair_sign * m.exps[g];
  }
  return deg;
}

std::vector<int> torus_weight_degree(const Presentation& pres, const Monomial& m) {
  const auto& weights = pres.torus_weights();
  std::vector<int> deg(pres.torus_rank(), 0);
  const int n = pres.generator_count();
  for (int g = 0; g < n; ++g) {
    if (m.exps[g] == 0) continue;
    const auto& info = pres.generator(g);
    if (info.pair < 0) continue;
    for (int s = 0; s < pres.torus_rank(); ++s)
      deg[s] += info.pair_sign * m.exps[g] * weights[info.pair][s];
  }
  return deg;
}

long long reorder_phase(const Presentation& pres, const Monomial& m1, const Monomial& m2) {
  if (pres.commutative()) return 0;
  const int n = pres.generator_count();
  const int pairs = pres.pair_count();
  const auto& q = pres.pair_matrix();
  // suffix[c]: signed pair degree of m1 restricted to generator indices > k.
  int suffix[kMaxGenerators] = {};
  long long total = 0;
  for (int k = n - 1; k >= 0; --k) {
    const auto& info = pres.generator(k);
    if (m2.exps[k] != 0 && info.pair >= 0) {
      long long dot = 0;
      for (int c = 0; c < pairs; ++c) {
        if (suffix[c] != 0) dot += static_cast<long long>(suffix[c]) * q[c][info.pair];
      }
      total += static_cast<long long>(m2.exps[k]) * info.pair_sign * dot;
    }
    if (m1.exps[k] != 0 && info.pair >= 0) suffix[info.pair] += info.pair_sign * m1.exps[k];
  }
  return total;
}

// ------------------------------------------------------------- accumulation

void TermAccumulator::add(const Monomial& m, Scalar value) {
  if (value.is_zero()) return;
  auto [it, inserted] = map_.try_emplace(m, std::move(value));
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) map_.erase(it);
  }
}

std::vector<std::pair<Monomial, Scalar>> TermAccumulator::finalize_sorted() {
  std::vector<std::pair<Monomial, Scalar>> out;
  out.reserve(map_.size());
  for (auto& [m, s] : map_) {
    if (!s.is_zero()) out.emplace_back(m, std::move(s));
  }
  map_.clear();
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return monomial_less(a.first, b.first); });
  return out;
}

void reduce_into(TermAccumulator& acc, const Presentation& pres, const ExponentArray& raw,
                 Scalar value) {
  if (value.is_zero()) return;
  const auto& rules = pres.rules();
  if (rules.empty()) {
    acc.add(Monomial{raw}, std::move(value));
    return;
  }
  std::vector<std::pair<ExponentArray, Scalar>> work;
  work.emplace_back(raw, std::move(value));
  while (!work.empty()) {
    auto [mono, coeff] = std::move(work.back());
    work.pop_back();
    const ReductionRule* hit = nullptr;
    for (const auto& rule : rules) {
      const bool applies = (rule.gen_a == rule.gen_b) ? mono[rule.gen_a] >= 2
                                                      : (mono[rule.gen_a] >= 1 && mono[rule.gen_b] >= 1);
      if (applies) {
        hit = &rule;
        break;
      }
    }
    if (hit == nullptr) {
      acc.add(Monomial{mono}, std::move(coeff));
      continue;
    }
    // Rewrite the ordered word as mu^psi * (g_a g_b) * rest by commuting one
    // copy of g_a and then one copy of g_b to the front, collecting the
    // exchange phase of every crossing.
    const auto& q = pres.pair_matrix();
    const auto cross = [&](int moving, int fixed) -> long long {
      const GeneratorInfo& gm = pres.generator(moving);
      const GeneratorInfo& gf = pres.generator(fixed);
      if (gm.pair < 0 || gf.pair < 0) return 0;
      return static_cast<long long>(gf.pair_sign) * gm.pair_sign * q[gf.pair][gm.pair];
    };
    long long psi = 0;
    for (int h = 0; h < hit->gen_a; ++h)
      if (mono[h] != 0) psi += static_cast<long long>(mono[h]) * cross(hit->gen_a, h);
    ExponentArray base = mono;
    base[hit->gen_a] -= 1;
    for (int h = 0; h < hit->gen_b; ++h)
      if (base[h] != 0) psi += static_cast<long long>(base[h]) * cross(hit->gen_b, h);
    base[hit->gen_b] -= 1;
    const Monomial rest{base};
    for (const auto& [radd, rscal] : hit->replacement) {
      const long long join = reorder_phase(pres, Monomial{radd}, rest);
      ExponentArray next = base;
      for (int g = 0; g < kMaxGenerators; ++g) {
        const int sum = next[g] + radd[g];
        if (sum > 255) raise(ErrorKind::DomainError, "monomial exponent overflow");
        next[g] = static_cast<std::uint8_t>(sum);
      }
      Scalar piece = coeff * rscal;
      const long long total = psi + join;
      if (total != 0) piece = piece * Scalar::mu_power(static_cast<int>(total));
      work.emplace_back(next, std::move(piece));
    }
  }
}

// ------------------------------------------------------------ AlgebraElement

AlgebraElement AlgebraElement::one(const Presentation& pres) {
  return from_scalar(pres, Scalar::one());
}

AlgebraElement AlgebraElement::from_scalar(const Presentation& pres, Scalar value) {
  AlgebraElement e(pres);
  if (!value.is_zero()) e.terms_.emplace_back(Monomial{}, std::move(value));
  return e;
}

AlgebraElement AlgebraElement::generator(const Presentation& pres, int index) {
  if (index < 0 || index >= pres.generator_count())
    raise(ErrorKind::InvalidArgument, "generator index out of range");
  Monomial m;
  m.exps[index] = 1;
  AlgebraElement e(pres);
  e.terms_.emplace_back(m, Scalar::one());
  return e;
}

AlgebraElement AlgebraElement::from_monomial(const Presentation& pres, const Monomial& m,
                                             Scalar value) {
  TermAccumulator acc;
  reduce_into(acc, pres, m.exps, std::move(value));
  AlgebraElement e(pres);
  e.terms_ = acc.finalize_sorted();
  return e;
}

AlgebraElement AlgebraElement::from_terms(const Presentation& pres,
                                          std::vector<std::pair<Monomial, Scalar>> terms) {
  TermAccumulator acc;
  for (auto& [m, s] : terms) reduce_into(acc, pres, m.exps, std::move(s));
  AlgebraElement e(pres);
  e.terms_ = acc.finalize_sorted();
  return e;
}

int AlgebraElement::degree() const noexcept {
  int d = 0;
  for (const auto& [m, s] : terms_) d = std::max(d, m.degree());
  return d;
}

Scalar AlgebraElement::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const auto& term, const Monomial& key) {
                               return monomial_less(term.first, key);
                             });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar::zero();
}

namespace {

void check_same_presentation(const AlgebraElement& a, const AlgebraElement& b) {
  if (&a.presentation() != &b.presentation())
    raise(ErrorKind::PresentationMismatch, "operands belong to different presentations");
}

}  // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  check_same_presentation(*this, other);
  std::vector<std::pair<Monomial, Scalar>> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto ia = terms_.begin();
  auto ib = other.terms_.begin();
  while (ia != terms_.end() && ib != other.terms_.end()) {
    if (ia->first == ib->first) {
      Scalar s = ia->second + ib->second;
      if (!s.is_zero()) merged.emplace_back(ia->first, std::move(s));
      ++ia;
      ++ib;
    } else if (monomial_less(ia->first, ib->first)) {
      merged.push_back(*ia++);
    } else {
      merged.push_back(*ib++);
    }
  }
  merged.insert(merged.end(), ia, terms_.end());
  merged.insert(merged.end(), ib, other.terms_.end());
  terms_ = std::move(merged);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  *this += -other;
  return *this;
}

AlgebraElement operator-(const AlgebraElement& a) {
  AlgebraElement out = a;
  for (auto& [m, s] : out.terms_) s = -s;
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  check_same_presentation(a, b);
  const Presentation& pres = a.presentation();
  TermAccumulator acc;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const long long phase = reorder_phase(pres, ma, mb);
      ExponentArray raw;
      for (int g = 0; g < kMaxGenerators; ++g) {
        const int sum = ma.exps[g] + mb.exps[g];
        if (sum > 255) raise(ErrorKind::DomainError, "monomial exponent overflow");
        raw[g] = static_cast<std::uint8_t>(sum);
      }
      Scalar coeff = ca * cb;
      if (phase != 0) coeff *= Scalar::mu_power(static_cast<std::int32_t>(phase));
      reduce_into(acc, pres, raw, std::move(coeff));
    }
  }
  AlgebraElement out(pres);
  out.terms_ = acc.finalize_sorted();
  return out;
}

AlgebraElement& AlgebraElement::operator*=(const AlgebraElement& other) {
  *this = *this * other;
  return *this;
}

AlgebraElement operator*(const Scalar& s, AlgebraElement a) {
  a.scale(s);
  return a;
}

AlgebraElement& AlgebraElement::scale(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
  return *this;
}

AlgebraElement AlgebraElement::adjoint() const {
  const Presentation& pres = *pres_;
  TermAccumulator acc;
  std::vector<int> letters;
  for (const auto& [m, c] : terms_) {
    // (g_1^{e_1} ... g_k^{e_k})* = conj(g_k)^{e_k} ... conj(g_1)^{e_1}
    letters.clear();
    for (int g = pres.generator_count() - 1; g >= 0; --g) {
      for (int rep = 0; rep < m.exps[g]; ++rep) letters.push_back(pres.generator(g).conjugate);
    }
    const AlgebraElement piece = word_product(pres, letters, c.conjugate());
    for (const auto& [pm, ps] : piece.terms()) acc.add(pm, ps);
  }
  AlgebraElement out(pres);
  out.terms_ = acc.finalize_sorted();
  return out;
}

bool AlgebraElement::is_torus_homogeneous() const {
  if (terms_.size() <= 1) return true;
  const auto first = torus_weight_degree(*pres_, terms_[0].first);
  for (std::size_t k = 1; k < terms_.size(); ++k)
    if (torus_weight_degree(*pres_, terms_[k].first) != first) return false;
  return true;
}

std::vector<int> AlgebraElement::torus_degree() const {
  if (terms_.empty()) return std::vector<int>(pres_->torus_rank(), 0);
  if (!is_torus_homogeneous())
    raise(ErrorKind::DomainError, "element is not torus-homogeneous");
  return torus_weight_degree(*pres_, terms_[0].first);
}

namespace {

template <typename DegreeFn>
std::vector<std::pair<std::vector<int>, AlgebraElement>> split_terms_by(
    const Presentation& pres, const std::vector<std::pair<Monomial, Scalar>>& terms,
    DegreeFn&& degree_of) {
  std::vector<std::pair<std::vector<int>, std::vector<std::pair<Monomial, Scalar>>>> buckets;
  for (const auto& [m, s] : terms) {
    auto deg = degree_of(m);
    auto it = std::find_if(buckets.begin(), buckets.end(),
                           [&](const auto& entry) { return entry.first == deg; });
    if (it == buckets.end()) {
      buckets.emplace_back(std::move(deg), std::vector<std::pair<Monomial, Scalar>>{});
      it = buckets.end() - 1;
    }
    it->second.emplace_back(m, s);
  }
  std::sort(buckets.begin(), buckets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::vector<int>, AlgebraElement>> out;
  out.reserve(buckets.size());
  for (auto& [deg, bucket_terms] : buckets)
    out.emplace_back(std::move(deg),
                     AlgebraElement::from_terms(pres, std::move(bucket_terms)));
  return out;
}

}  // namespace

std::vector<std::pair<std::vector<int>, AlgebraElement>> AlgebraElement::split_by_torus_degree()
    const {
  return split_terms_by(*pres_, terms_,
                        [&](const Monomial& m) { return torus_weight_degree(*pres_, m); });
}

std::vector<std::pair<std::vector<int>, AlgebraElement>> AlgebraElement::split_by_pair_degree()
    const {
  return split_terms_by(*pres_, terms_,
                        [&](const Monomial& m) { return pair_degree(*pres_, m); });
}

AlgebraElement AlgebraElement::classical_limit() const {
  const Presentation& cl = pres_->classical();
  AlgebraElement out(cl);
  std::vector<std::pair<Monomial, Scalar>> terms;
  for (const auto& [m, s] : terms_) {
    Scalar spec = s.specialize_mu_one();
    if (!spec.is_zero()) terms.emplace_back(m, std::move(spec));
  }
  return from_terms(cl, std::move(terms));
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, s] : terms_) {
    std::string coeff = s.to_string();
    const bool multi = s.terms().size() > 1;
    std::string body;
    for (int g = 0; g < pres_->generator_count(); ++g) {
      if (m.exps[g] == 0) continue;
      if (!body.empty()) body += "*";
      body += pres_->generator(g).name;
      if (m.exps[g] > 1) body += "^" + std::to_string(static_cast<int>(m.exps[g]));
    }
    std::string piece;
    if (body.empty()) {
      piece = multi ? "(" + coeff + ")" : coeff;
    } else if (multi) {
      piece = "(" + coeff + ")*" + body;
    } else if (coeff == "1") {
      piece = body;
    } else if (coeff == "-1") {
      piece = "-" + body;
    } else {
      piece = coeff + "*" + body;
    }
    if (first) {
      out = piece;
      first = false;
    } else if (!piece.empty() && piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

// ------------------------------------------------------------ free functions

AlgebraElement word_product(const Presentation& pres, std::span<const int> letters, Scalar coeff) {
  // Fold letters left to right, tracking the phase of moving each new letter
  // into its canonical slot past the higher-index letters already present.
  ExponentArray acc{};
  long long phase = 0;
  const auto& q = pres.pair_matrix();
  for (int letter : letters) {
    if (letter < 0 || letter >= pres.generator_count())
      raise(ErrorKind::InvalidArgument, "letter index out of range");
    const auto& info = pres.generator(letter);
    if (info.pair >= 0 && !pres.commutative()) {
      long long dot = 0;
      for (int g = letter + 1; g < pres.generator_count(); ++g) {
        if (acc[g] == 0) continue;
        const auto& gi = pres.generator(g);
        if (gi.pair < 0) continue;
        dot += static_cast<long long>(acc[g]) * gi.pair_sign * q[gi.pair][info.pair];
      }
      phase += info.pair_sign * dot;
    }
    if (acc[letter] == 255) raise(ErrorKind::DomainError, "monomial exponent overflow");
    acc[letter] += 1;
  }
  if (phase != 0) coeff *= Scalar::mu_power(static_cast<std::int32_t>(phase));
  return AlgebraElement::from_monomial(pres, Monomial{acc}, std::move(coeff));
}

AlgebraElement normal_form(const AlgebraElement& e) { return e; }

namespace {

void enumerate_basis(const Presentation& pres, int gen, Monomial& current, int remaining,
                     const std::optional<std::vector<int>>& torus_filter,
                     std::vector<Monomial>& out) {
  if (gen == pres.generator_count()) {
    if (torus_filter && pair_degree(pres, current) != *torus_filter) return;
    out.push_back(current);
    return;
  }
  int cap = remaining;
  // Respect reduction rules: a reduced monomial never contains a full rule
  // left side.
  for (const auto& rule : pres.rules()) {
    if (rule.gen_a == rule.gen_b && rule.gen_a == gen) cap = std::min(cap, 1);
  }
  for (int e = 0; e <= cap; ++e) {
    bool blocked = false;
    if (e > 0) {
      for (const auto& rule : pres.rules()) {
        if (rule.gen_a == rule.gen_b) continue;
        const int other = (rule.gen_a == gen) ? rule.gen_b : (rule.gen_b == gen ? rule.gen_a : -1);
        if (other >= 0 && other < gen && current.exps[other] > 0) blocked = true;
      }
    }
    if (blocked) break;
    current.exps[gen] = static_cast<std::uint8_t>(e);
    enumerate_basis(pres, gen + 1, current, remaining - e, torus_filter, out);
  }
  current.exps[gen] = 0;
}

}  // namespace

std::vector<Monomial> graded_basis(const Presentation& pres, int max_degree,
                                   const std::optional<std::vector<int>>& torus_filter) {
  if (max_degree < 0) raise(ErrorKind::InvalidArgument, "negative degree bound");
  if (torus_filter && static_cast<int>(torus_filter->size()) != pres.pair_count())
    raise(ErrorKind::InvalidArgument, "torus filter has wrong length");
  std::vector<Monomial> out;
  Monomial current;
  enumerate_basis(pres, 0, current, max_degree, torus_filter, out);
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

// ------------------------------------------------- invariant 4-sphere data

InvariantGenerators invariant_generators() {
  const Presentation& s7 = Presentation::s7();
  auto mono = [&](std::initializer_list<int> letters, long num) {
    std::vector<int> ls(letters);
    return word_product(s7, ls, Scalar{num});
  };
  InvariantGenerators inv{AlgebraElement::zero(s7), AlgebraElement::zero(s7),
                          AlgebraElement::zero(s7)};
  // alpha = 2 (z1 z3* + z2 z4*)
  inv.alpha = mono({0, 6}, 2) + mono({1, 7}, 2);
  // beta = 2 (-z1 z4 + z2 z3)
  inv.beta = mono({0, 3}, -2) + mono({1, 2}, 2);
  // x = z1 z1* + z2 z2* - z3 z3* - z4 z4*
  inv.x = mono({0, 4}, 1) + mono({1, 5}, 1) + mono({2, 6}, -1) + mono({3, 7}, -1);
  return inv;
}

std::vector<RelationCheck> invariant_relation_check() {
  const auto [alpha, beta, x] = invariant_generators();
  const Scalar mu2 = Scalar::mu_power(2);
  const Scalar mu_bar2 = Scalar::mu_power(-2);
  const AlgebraElement alpha_star = alpha.adjoint();
  const AlgebraElement beta_star = beta.adjoint();
  const AlgebraElement one = AlgebraElement::one(alpha.presentation());

  std::vector<RelationCheck> checks;
  auto record = [&](std::string name, const AlgebraElement& difference) {
    checks.push_back({std::move(name), difference.is_zero()});
  };
  record("a b = mu^2 b a", alpha * beta - mu2 * (beta * alpha));
  record("a b* = mu^-2 b* a", alpha * beta_star - mu_bar2 * (beta_star * alpha));
  record("a a* = a* a", alpha * alpha_star - alpha_star * alpha);
  record("b b* = b* b", beta * beta_star - beta_star * beta);
  record("x a = a x", x * alpha - alpha * x);
  record("x b = b x", x * beta - beta * x);
  record("x = x*", x - x.adjoint());
  record("a a* + b b* + x^2 = 1", alpha * alpha_star + beta * beta_star + x * x - one);
  return checks;
}

AlgebraElement include_into_s7(const AlgebraElement& s4_element) {
  if (&s4_element.presentation() != &Presentation::s4())
    raise(ErrorKind::PresentationMismatch, "inclusion expects a 4-sphere element");
  const auto [alpha, beta, x] = invariant_generators();
  const AlgebraElement images[5] = {alpha, beta, alpha.adjoint(), beta.adjoint(), x};
  const Presentation& s7 = Presentation::s7();
  AlgebraElement out = AlgebraElement::zero(s7);
  for (const auto& [m, c] : s4_element.terms()) {
    AlgebraElement piece = AlgebraElement::from_scalar(s7, c);
    for (int g = 0; g < 5; ++g) {
      for (int rep = 0; rep < m.exps[g]; ++rep) piece *= images[g];
    }
    out += piece;
  }
  return out;
}

}  // namespace ncs
