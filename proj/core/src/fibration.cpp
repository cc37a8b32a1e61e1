#include "ncs/fibration.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <memory>
#include <utility>

#include "ncs/error.hpp"
#include "ncs/linear.hpp"

namespace ncs {

namespace {

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational{0};
  BigInt num{1};
  BigInt den{1};
  for (int j = 1; j <= k; ++j) {
    num *= n - k + j;
    den *= j;
  }
  return Rational{num, den};
}

/// Exact division in the coefficient ring: the quotient q with q * den == num,
/// or nullopt when num is not a multiple of den.  Multi-term denominators are
/// supported when they are Laurent polynomials in the deformation unitary
/// (no root factors), which covers every denominator the span solver produces
/// for the rewriting problems in this file.
std::optional<Scalar> laurent_divide(const Scalar& num, const Scalar& den) {
  if (den.is_zero()) raise(ErrorKind::DomainError, "scalar division by zero");
  if (num.is_zero()) return Scalar::zero();
  if (den.is_single_term()) {
    const ScalarFraction inverse = scalar_invert(den);
    if (!inverse.is_plain()) return std::nullopt;
    return num * inverse.numerator();
  }
  for (const auto& term : den.terms())
    if (term.radicand != 1) return std::nullopt;

  // Split the numerator into parts with a common root factor; each part must
  // be divisible by the root-free denominator on its own.
  std::map<std::uint32_t, std::map<std::int32_t, GaussianRational>> parts;
  for (const auto& term : num.terms()) parts[term.radicand][term.mu_exponent] = term.coeff;

  const auto& den_terms = den.terms();
  const std::int32_t den_top = den_terms.back().mu_exponent;
  const std::int32_t den_bottom = den_terms.front().mu_exponent;
  const GaussianRational den_lead = den_terms.back().coeff;

  Scalar out = Scalar::zero();
  for (auto& [radicand, remainder] : parts) {
    const std::int32_t floor_exp = remainder.begin()->first - den_bottom;
    while (!remainder.empty()) {
      const auto top = std::prev(remainder.end());
      const std::int32_t exp_q = top->first - den_top;
      if (exp_q < floor_exp) return std::nullopt;
      const GaussianRational coeff_q = top->second / den_lead;
      for (const auto& term : den_terms) {
        auto& slot = remainder[exp_q + term.mu_exponent];
        slot -= coeff_q * term.coeff;
        if (slot.is_zero()) remainder.erase(exp_q + term.mu_exponent);
      }
      Scalar piece{coeff_q};
      piece = piece * Scalar::mu_power(exp_q);
      if (radicand != 1) piece = piece * Scalar::sqrt_integer(radicand);
      out += piece;
    }
  }
  return out;
}

/// Solves coinvariant-subalgebra membership one torus-weight class at a time,
/// caching the candidate monomials and the elimination state per class.
class RewriteEngine {
 public:
  explicit RewriteEngine(int degree_cap) : s4_(Presentation::s4()), cap_(degree_cap) {}

  std::optional<AlgebraElement> rewrite(const AlgebraElement& ambient) {
    AlgebraElement out = AlgebraElement::zero(s4_);
    for (const auto& [weight, part] : ambient.split_by_torus_degree()) {
      auto rewritten = rewrite_part(weight, part);
      if (!rewritten) return std::nullopt;
      out += *rewritten;
    }
    return out;
  }

 private:
  struct ClassData {
    std::vector<Monomial> candidates;
    SpanSolver<Monomial, MonomialHash> solver;
  };

  ClassData& class_for(const std::vector<int>& weight, int da, int db) {
    auto it = classes_.find(weight);
    if (it != classes_.end()) return it->second;
    ClassData data;
    data.candidates = graded_basis(s4_, cap_, std::vector<int>{da, db});
    for (const Monomial& m : data.candidates) {
      const AlgebraElement image =
          include_into_s7(AlgebraElement::from_monomial(s4_, m, Scalar::one()));
      SpanSolver<Monomial, MonomialHash>::RowVec row;
      row.reserve(image.terms().size());
      for (const auto& [mono, coeff] : image.terms())
        row.emplace_back(data.solver.intern_key(mono), coeff);
      data.solver.add_source(std::move(row));
    }
    return classes_.emplace(weight, std::move(data)).first->second;
  }

  std::optional<AlgebraElement> rewrite_part(const std::vector<int>& weight,
                                             const AlgebraElement& part) {
    // Invariant generators carry weights (1,-1), (1,1) and (0,0), so a class
    // is reachable only when the weight coordinates have an even sum, and the
    // reachable class has a unique per-pair degree signature.
    if (((weight[0] + weight[1]) & 1) != 0) return std::nullopt;
    const int da = (weight[0] - weight[1]) / 2;
    const int db = (weight[0] + weight[1]) / 2;
    ClassData& data = class_for(weight, da, db);

    SpanSolver<Monomial, MonomialHash>::RowVec target;
    target.reserve(part.terms().size());
    for (const auto& [mono, coeff] : part.terms())
      target.emplace_back(data.solver.intern_key(mono), coeff);
    const auto witness = data.solver.solve_membership(std::move(target));
    if (!witness) return std::nullopt;

    AlgebraElement out = AlgebraElement::zero(s4_);
    for (const auto& [index, beta] : witness->combination) {
      const auto coeff = laurent_divide(beta, witness->multiplier);
      if (!coeff) return std::nullopt;
      if (!coeff->is_zero())
        out += AlgebraElement::from_monomial(s4_, data.candidates.at(index), *coeff);
    }
    if (include_into_s7(out) != part)
      raise(ErrorKind::InternalCheckFailed,
            "invariant rewrite certificate failed: the inclusion of the result "
            "does not reproduce the input");
    return out;
  }

  const Presentation& s4_;
  int cap_;
  std::map<std::vector<int>, ClassData> classes_;
};

KetVector make_ket(std::vector<std::pair<int, Scalar>> entries) {
  const Presentation& s7 = Presentation::s7();
  std::vector<AlgebraElement> components;
  components.reserve(entries.size());
  for (auto& [gen, coeff] : entries)
    components.push_back(coeff * AlgebraElement::generator(s7, gen));
  return KetVector::from_components(s7, std::move(components));
}

/// Symmetrised kets at every level up to n: level[m][k-1] is the sum of all
/// distinct arrangements of (m-k+1) first and (k-1) second kets, built by the
/// binomial recursion on the leading tensor slot.
std::vector<KetVector> symmetrized_level(int n) {
  auto [psi1, psi2] = psi_kets();
  std::vector<KetVector> level{psi1, psi2};
  for (int m = 2; m <= n; ++m) {
    std::vector<KetVector> next;
    next.reserve(static_cast<std::size_t>(m) + 1);
    for (int k = 1; k <= m + 1; ++k) {
      KetVector acc(Presentation::s7(), 1 << (2 * m));
      if (k <= m) acc += tensor(psi1, level[static_cast<std::size_t>(k) - 1]);
      if (k >= 2) acc += tensor(psi2, level[static_cast<std::size_t>(k) - 2]);
      next.push_back(std::move(acc));
    }
    level = std::move(next);
  }
  return level;
}

void check_positive_rank(int n) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "the representation label must be at least 1");
  if (n > 12) raise(ErrorKind::InvalidArgument, "representation label too large");
}

/// Assembles sum_k weight_k |kets_k><kets_k| and rewrites every entry over
/// the 4-sphere, certifying each rewrite through the inclusion.
AlgebraMatrix assemble_projection(const std::vector<KetVector>& kets,
                                  const std::vector<Scalar>& weights, int degree_cap) {
  const Presentation& s4 = Presentation::s4();
  const int dim = kets.front().size();
  RewriteEngine engine(degree_cap);
  AlgebraMatrix out(s4, dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      AlgebraElement ambient = AlgebraElement::zero(Presentation::s7());
      for (std::size_t k = 0; k < kets.size(); ++k)
        ambient += weights[k] * (kets[k].at(i) * kets[k].at(j).adjoint());
      auto entry = engine.rewrite(ambient);
      if (!entry)
        raise(ErrorKind::InternalCheckFailed,
              "projection entry does not lie in the invariant subalgebra");
      out.at(i, j) = *entry;
      if (j > i) out.at(j, i) = entry->adjoint();
    }
  }
  return out;
}

}  // namespace

// ----------------------------------------------------------------- KetVector

KetVector::KetVector(const Presentation& pres, int size) : pres_(&pres) {
  if (size < 0) raise(ErrorKind::InvalidArgument, "negative ket size");
  components_.assign(static_cast<std::size_t>(size), AlgebraElement::zero(pres));
}

KetVector KetVector::from_components(const Presentation& pres,
                                     std::vector<AlgebraElement> components) {
  KetVector out(pres, 0);
  for (const auto& c : components)
    if (&c.presentation() != &pres)
      raise(ErrorKind::PresentationMismatch, "ket component over a different presentation");
  out.components_ = std::move(components);
  return out;
}

bool KetVector::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const AlgebraElement& c) { return c.is_zero(); });
}

namespace {
void check_compatible(const KetVector& a, const KetVector& b) {
  if (&a.presentation() != &b.presentation())
    raise(ErrorKind::PresentationMismatch, "kets over different presentations");
  if (a.size() != b.size()) raise(ErrorKind::InvalidArgument, "ket size mismatch");
}
}  // namespace

KetVector& KetVector::operator+=(const KetVector& other) {
  check_compatible(*this, other);
  for (int i = 0; i < size(); ++i) components_[static_cast<std::size_t>(i)] += other.at(i);
  return *this;
}

KetVector& KetVector::operator-=(const KetVector& other) {
  check_compatible(*this, other);
  for (int i = 0; i < size(); ++i) components_[static_cast<std::size_t>(i)] -= other.at(i);
  return *this;
}

KetVector operator*(KetVector ket, const AlgebraElement& value) {
  for (int i = 0; i < ket.size(); ++i) ket.at(i) *= value;
  return ket;
}

KetVector operator*(const Scalar& s, KetVector ket) {
  for (int i = 0; i < ket.size(); ++i) ket.at(i).scale(s);
  return ket;
}

AlgebraElement bra_ket(const KetVector& x, const KetVector& y) {
  check_compatible(x, y);
  AlgebraElement out = AlgebraElement::zero(x.presentation());
  for (int i = 0; i < x.size(); ++i) out += x.at(i).adjoint() * y.at(i);
  return out;
}

FirstOrderElement bra_delta_ket(const KetVector& x, const KetVector& y) {
  check_compatible(x, y);
  FirstOrderElement out = FirstOrderElement::zero(x.presentation());
  for (int i = 0; i < x.size(); ++i) out += x.at(i).adjoint() * fo_delta(y.at(i));
  return out;
}

KetVector tensor(const KetVector& x, const KetVector& y) {
  if (&x.presentation() != &y.presentation())
    raise(ErrorKind::PresentationMismatch, "kets over different presentations");
  KetVector out(x.presentation(), x.size() * y.size());
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < y.size(); ++j) out.at(i * y.size() + j) = x.at(i) * y.at(j);
  return out;
}

// ------------------------------------------------------------ standard kets

std::pair<KetVector, KetVector> psi_kets() {
  const Scalar one = Scalar::one();
  const Scalar minus{-1};
  KetVector k1 = make_ket({{0, one}, {5, minus}, {2, one}, {7, minus}});
  KetVector k2 = make_ket({{1, one}, {4, one}, {3, one}, {6, one}});
  return {std::move(k1), std::move(k2)};
}

std::pair<KetVector, KetVector> psi_tilde_kets() {
  const Scalar one = Scalar::one();
  const Scalar mu = Scalar::mu_power(1);
  KetVector k1 = make_ket({{0, one}, {5, Scalar{-1} * mu}, {2, one}, {7, Scalar{-1}}});
  KetVector k2 = make_ket({{1, one}, {4, mu}, {3, one}, {6, one}});
  return {std::move(k1), std::move(k2)};
}

KetVector symmetrized_ket(int n, int k) {
  check_positive_rank(n);
  if (k < 1 || k > n + 1) raise(ErrorKind::InvalidArgument, "ket label out of range");
  return symmetrized_level(n)[static_cast<std::size_t>(k) - 1];
}

std::vector<KetVector> phi_kets(int n) {
  check_positive_rank(n);
  std::vector<KetVector> level = symmetrized_level(n);
  for (int k = 1; k <= n + 1; ++k) {
    const Scalar norm = Scalar::sqrt_rational(Rational{1} / binomial(n, k - 1));
    level[static_cast<std::size_t>(k) - 1] =
        norm * std::move(level[static_cast<std::size_t>(k) - 1]);
  }
  return level;
}

// -------------------------------------------------------------- AlgebraMatrix

AlgebraMatrix::AlgebraMatrix(const Presentation& pres, int rows, int cols)
    : pres_(&pres), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) raise(ErrorKind::InvalidArgument, "negative matrix shape");
  entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                  AlgebraElement::zero(pres));
}

AlgebraMatrix AlgebraMatrix::identity(const Presentation& pres, int size) {
  AlgebraMatrix out(pres, size, size);
  for (int i = 0; i < size; ++i) out.at(i, i) = AlgebraElement::one(pres);
  return out;
}

const AlgebraElement& AlgebraMatrix::at(int row, int col) const {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
    raise(ErrorKind::InvalidArgument, "matrix index out of range");
  return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(col)];
}

AlgebraElement& AlgebraMatrix::at(int row, int col) {
  return const_cast<AlgebraElement&>(std::as_const(*this).at(row, col));
}

namespace {
void check_same_shape(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  if (&a.presentation() != &b.presentation())
    raise(ErrorKind::PresentationMismatch, "matrices over different presentations");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    raise(ErrorKind::InvalidArgument, "matrix shape mismatch");
}
}  // namespace

AlgebraMatrix& AlgebraMatrix::operator+=(const AlgebraMatrix& other) {
  check_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

AlgebraMatrix& AlgebraMatrix::operator-=(const AlgebraMatrix& other) {
  check_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

AlgebraMatrix operator*(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  if (&a.presentation() != &b.presentation())
    raise(ErrorKind::PresentationMismatch, "matrices over different presentations");
  if (a.cols() != b.rows()) raise(ErrorKind::InvalidArgument, "matrix shape mismatch");
  AlgebraMatrix out(a.presentation(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const AlgebraElement& left = a.at(i, k);
      if (left.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const AlgebraElement& right = b.at(k, j);
        if (right.is_zero()) continue;
        out.at(i, j) += left * right;
      }
    }
  return out;
}

AlgebraMatrix operator*(const Scalar& s, AlgebraMatrix a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a.at(i, j).scale(s);
  return a;
}

AlgebraMatrix AlgebraMatrix::adjoint() const {
  AlgebraMatrix out(*pres_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).adjoint();
  return out;
}

AlgebraElement AlgebraMatrix::trace() const {
  if (rows_ != cols_) raise(ErrorKind::InvalidArgument, "trace of a non-square matrix");
  AlgebraElement out = AlgebraElement::zero(*pres_);
  for (int i = 0; i < rows_; ++i) out += at(i, i);
  return out;
}

bool AlgebraMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const AlgebraElement& e) { return e.is_zero(); });
}

// ------------------------------------------------------------------ rewrites

std::optional<AlgebraElement> rewrite_to_invariant(const AlgebraElement& ambient,
                                                   int degree_cap) {
  if (&ambient.presentation() != &Presentation::s7())
    raise(ErrorKind::InvalidArgument, "rewrite expects an element of the 7-sphere algebra");
  const int cap = degree_cap >= 0 ? degree_cap : (ambient.degree() + 1) / 2;
  RewriteEngine engine(cap);
  return engine.rewrite(ambient);
}

struct InvariantRewriter::Impl {
  explicit Impl(int cap) : engine(cap), degree_cap(cap) {}
  RewriteEngine engine;
  int degree_cap;
};

InvariantRewriter::InvariantRewriter(int degree_cap) {
  if (degree_cap < 0) raise(ErrorKind::InvalidArgument, "negative rewrite degree cap");
  impl_ = std::make_unique<Impl>(degree_cap);
}
InvariantRewriter::InvariantRewriter(InvariantRewriter&&) noexcept = default;
InvariantRewriter& InvariantRewriter::operator=(InvariantRewriter&&) noexcept = default;
InvariantRewriter::~InvariantRewriter() = default;

int InvariantRewriter::degree_cap() const noexcept { return impl_->degree_cap; }

std::optional<AlgebraElement> InvariantRewriter::rewrite(const AlgebraElement& ambient) {
  if (&ambient.presentation() != &Presentation::s7())
    raise(ErrorKind::InvalidArgument, "rewrite expects an element of the 7-sphere algebra");
  return impl_->engine.rewrite(ambient);
}

// --------------------------------------------------------------- projections

ProjectionMatrix projection(int n) {
  check_positive_rank(n);
  std::vector<KetVector> kets = symmetrized_level(n);
  std::vector<Scalar> weights;
  weights.reserve(kets.size());
  for (int k = 1; k <= n + 1; ++k)
    weights.push_back(Scalar{Rational{1} / binomial(n, k - 1)});
  return ProjectionMatrix{n, assemble_projection(kets, weights, n)};
}

ProjectionMatrix twisted_projection() {
  auto [k1, k2] = psi_tilde_kets();
  const std::vector<KetVector> kets{std::move(k1), std::move(k2)};
  const std::vector<Scalar> weights{Scalar::one(), Scalar::one()};
  return ProjectionMatrix{1, assemble_projection(kets, weights, 1)};
}

namespace {
AlgebraMatrix include_matrix(const AlgebraMatrix& over_s4) {
  AlgebraMatrix out(Presentation::s7(), over_s4.rows(), over_s4.cols());
  for (int i = 0; i < over_s4.rows(); ++i)
    for (int j = 0; j < over_s4.cols(); ++j) out.at(i, j) = include_into_s7(over_s4.at(i, j));
  return out;
}

AlgebraMatrix kets_as_columns(const std::vector<KetVector>& kets) {
  AlgebraMatrix out(kets.front().presentation(), kets.front().size(),
                    static_cast<int>(kets.size()));
  for (std::size_t c = 0; c < kets.size(); ++c)
    for (int r = 0; r < kets[c].size(); ++r) out.at(r, static_cast<int>(c)) = kets[c].at(r);
  return out;
}

bool classical_limits_match(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!(a.at(i, j).classical_limit() == b.at(i, j).classical_limit())) return false;
  return true;
}
}  // namespace

EquivalenceReport projection_equivalence_check() {
  const Presentation& s7 = Presentation::s7();
  auto [p1, p2] = psi_kets();
  auto [t1, t2] = psi_tilde_kets();
  const AlgebraMatrix u = kets_as_columns({p1, p2});
  const AlgebraMatrix ut = kets_as_columns({t1, t2});

  EquivalenceReport report;
  report.isometry = u.adjoint() * u == AlgebraMatrix::identity(s7, 2);
  report.twisted_isometry = ut.adjoint() * ut == AlgebraMatrix::identity(s7, 2);

  const AlgebraMatrix v = ut * u.adjoint();
  const ProjectionMatrix basic = projection(1);
  const ProjectionMatrix twisted = twisted_projection();
  report.conjugates_projection = v.adjoint() * v == include_matrix(basic.entries);
  report.conjugates_twisted = v * v.adjoint() == include_matrix(twisted.entries);
  report.classical_limits_agree = classical_limits_match(basic.entries, twisted.entries);
  report.passed = report.isometry && report.twisted_isometry && report.conjugates_projection &&
                  report.conjugates_twisted && report.classical_limits_agree;
  return report;
}

// --------------------------------------------------------------- connections

GaugePairings gauge_pairings() {
  auto [k1, k2] = psi_kets();
  return GaugePairings{bra_delta_ket(k1, k1), bra_delta_ket(k1, k2), bra_delta_ket(k2, k1),
                       bra_delta_ket(k2, k2)};
}

ConnectionMatrix::ConnectionMatrix(const Presentation& pres, int size)
    : pres_(&pres), size_(size) {
  if (size < 0) raise(ErrorKind::InvalidArgument, "negative matrix size");
  entries_.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size),
                  FirstOrderElement::zero(pres));
}

const FirstOrderElement& ConnectionMatrix::at(int row, int col) const {
  if (row < 0 || row >= size_ || col < 0 || col >= size_)
    raise(ErrorKind::InvalidArgument, "matrix index out of range");
  return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(size_) +
                  static_cast<std::size_t>(col)];
}

FirstOrderElement& ConnectionMatrix::at(int row, int col) {
  return const_cast<FirstOrderElement&>(std::as_const(*this).at(row, col));
}

ConnectionMatrix grassmann_connection(int n) {
  check_positive_rank(n);
  const std::vector<KetVector> kets = symmetrized_level(n);
  std::vector<Scalar> norms;
  norms.reserve(kets.size());
  for (int k = 0; k <= n; ++k)
    norms.push_back(Scalar::sqrt_rational(Rational{1} / binomial(n, k)));
  ConnectionMatrix out(Presentation::s7(), n + 1);
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l)
      out.at(k, l) = (norms[static_cast<std::size_t>(k)] * norms[static_cast<std::size_t>(l)]) *
                     bra_delta_ket(kets[static_cast<std::size_t>(k)],
                                   kets[static_cast<std::size_t>(l)]);
  return out;
}

Su2Report su2_decomposition_report(int n) {
  check_positive_rank(n);
  const ConnectionMatrix connection = grassmann_connection(n);
  const GaugePairings pairings = gauge_pairings();
  const FirstOrderElement cartan_form = pairings.p11 - pairings.p22;

  Su2Report report;
  report.n = n;
  bool ok = true;
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) {
      FirstOrderElement expected = FirstOrderElement::zero(Presentation::s7());
      if (l == k + 1)
        expected += Scalar::sqrt_rational(Rational{(k + 1) * (n - k)}) * pairings.p12;
      if (l == k - 1)
        expected += Scalar::sqrt_rational(Rational{k * (n - k + 1)}) * pairings.p21;
      if (l == k && n != 2 * k) expected += Scalar{Rational{n - 2 * k, 2}} * cartan_form;
      const FirstOrderElement residual = connection.at(k, l) - expected;
      if (residual.is_zero()) {
        ++report.entries_exact;
        continue;
      }
      const QuotientZeroReport zero = fo_is_zero_in_quotient(residual);
      if (zero.verdict == QuotientVerdict::Zero) {
        ++report.entries_quotient;
      } else {
        ok = false;
      }
    }
  }
  const int total = (n + 1) * (n + 1);
  report.passed = ok && report.entries_exact + report.entries_quotient == total;
  report.detail = "ladder decomposition: " + std::to_string(report.entries_exact) + " exact, " +
                  std::to_string(report.entries_quotient) + " zero in the quotient, of " +
                  std::to_string(total) + " entries";
  return report;
}

bool su2_valuedness_check(int n) { return su2_decomposition_report(n).passed; }

// -------------------------------------------------------------- module maps

KetVector section_from_coefficients(const ProjectionMatrix& p, const KetVector& coefficients) {
  if (&coefficients.presentation() != &Presentation::s4())
    raise(ErrorKind::InvalidArgument, "coefficients must live over the 4-sphere algebra");
  if (coefficients.size() != p.entries.rows())
    raise(ErrorKind::InvalidArgument, "coefficient ket length mismatch");
  KetVector out(Presentation::s4(), coefficients.size());
  for (int i = 0; i < coefficients.size(); ++i)
    for (int j = 0; j < coefficients.size(); ++j)
      out.at(i) += p.entries.at(i, j) * coefficients.at(j);
  return out;
}

std::vector<AlgebraElement> map_from_section(int n, const KetVector& section) {
  check_positive_rank(n);
  if (&section.presentation() != &Presentation::s4())
    raise(ErrorKind::InvalidArgument, "sections carry 4-sphere coefficients");
  if (section.size() != (1 << (2 * n)))
    raise(ErrorKind::InvalidArgument, "section length mismatch");
  KetVector ambient(Presentation::s7(), section.size());
  for (int i = 0; i < section.size(); ++i) ambient.at(i) = include_into_s7(section.at(i));
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (const KetVector& phi : phi_kets(n)) out.push_back(bra_ket(phi, ambient));
  return out;
}

KetVector section_from_map(int n, const std::vector<AlgebraElement>& values) {
  check_positive_rank(n);
  if (static_cast<int>(values.size()) != n + 1)
    raise(ErrorKind::InvalidArgument, "expected one value per basis vector");
  for (const AlgebraElement& v : values)
    if (&v.presentation() != &Presentation::s7())
      raise(ErrorKind::InvalidArgument, "map values live over the 7-sphere algebra");

  const std::vector<KetVector> phis = phi_kets(n);
  const int dim = 1 << (2 * n);
  int cap = 1;
  KetVector out(Presentation::s4(), dim);
  std::vector<AlgebraElement> ambient;
  ambient.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    AlgebraElement component = AlgebraElement::zero(Presentation::s7());
    for (int k = 0; k <= n; ++k)
      component += phis[static_cast<std::size_t>(k)].at(i) * values[static_cast<std::size_t>(k)];
    cap = std::max(cap, (component.degree() + 1) / 2);
    ambient.push_back(std::move(component));
  }
  RewriteEngine engine(cap);
  for (int i = 0; i < dim; ++i) {
    auto entry = engine.rewrite(ambient[static_cast<std::size_t>(i)]);
    if (!entry)
      raise(ErrorKind::DomainError,
            "map values do not assemble into a section with 4-sphere coefficients");
    out.at(i) = std::move(*entry);
  }
  return out;
}

}  // namespace ncs
