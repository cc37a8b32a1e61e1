#include "ncs/numeric.hpp"

#include <cmath>
#include <numbers>

#include "ncs/error.hpp"

namespace ncs {

// ------------------------------------------------------------ ComplexMatrix

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    raise(ErrorKind::InvalidArgument, "matrix shape mismatch in addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    raise(ErrorKind::InvalidArgument, "matrix shape mismatch in subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) raise(ErrorKind::InvalidArgument, "matrix shape mismatch in product");
  ComplexMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const std::complex<double> aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(const std::complex<double>& s, ComplexMatrix m) {
  for (auto& v : m.data_) v *= s;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

std::complex<double> ComplexMatrix::trace() const {
  std::complex<double> t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::norm_inf() const {
  double best = 0.0;
  for (const auto& v : data_) best = std::max(best, std::abs(v));
  return best;
}

ComplexMatrix ComplexMatrix::unitary_power(int k) const {
  if (rows_ != cols_) raise(ErrorKind::InvalidArgument, "power of a non-square matrix");
  ComplexMatrix base = k >= 0 ? *this : adjoint();
  ComplexMatrix out = identity(rows_);
  for (int step = 0; step < std::abs(k); ++step) out = out * base;
  return out;
}

ComplexMatrix ComplexMatrix::kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) {
      const std::complex<double> aij = a(i, j);
      if (aij == 0.0) continue;
      for (int r = 0; r < b.rows_; ++r)
        for (int c = 0; c < b.cols_; ++c) out(i * b.rows_ + r, j * b.cols_ + c) = aij * b(r, c);
    }
  return out;
}

// ----------------------------------------------------------------- TorusRep

std::complex<double> TorusRep::mu() const {
  return std::polar(1.0, 2.0 * std::numbers::pi / modulus);
}

namespace {

bool lattice_is_zero(const std::vector<std::vector<int>>& lattice) {
  for (const auto& row : lattice)
    for (int v : row)
      if (v != 0) return false;
  return true;
}

}  // namespace

TorusRep TorusRep::build(const Presentation& pres, int modulus) {
  TorusRep rep;
  rep.modulus = modulus;
  const auto& lattice = pres.torus_lattice_matrix();
  const auto& weights = pres.torus_weights();
  const int rank = pres.torus_rank();

  if (lattice_is_zero(lattice)) {
    rep.dimension = 1;
    rep.pair_word.assign(pres.pair_count(), ComplexMatrix::identity(1));
  } else if (rank == 2 && lattice[0][0] == 0 && lattice[1][1] == 0 &&
             lattice[0][1] == -lattice[1][0]) {
    const int scale = lattice[0][1];
    const int n = modulus;
    rep.dimension = n;
    ComplexMatrix clock(n, n);
    ComplexMatrix shift(n, n);
    const std::complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / n);
    for (int k = 0; k < n; ++k) {
      clock(k, k) = std::pow(omega, k);
      shift((k + 1) % n, k) = 1.0;
    }
    // clock^scale and shift satisfy U V = mu^scale V U.
    const ComplexMatrix u = clock.unitary_power(scale);
    for (int p = 0; p < pres.pair_count(); ++p) {
      const ComplexMatrix part_u = u.unitary_power(weights[p][0]);
      const ComplexMatrix part_v = shift.unitary_power(weights[p][1]);
      rep.pair_word.push_back(part_u * part_v);
    }
  } else {
    raise(ErrorKind::DomainError,
          "no finite torus representation implemented for this lattice: " + pres.name());
  }

  // Construction self-check: commutation phases reproduce the pair matrix and
  // every word is unitary.
  const auto& q = pres.pair_matrix();
  const std::complex<double> mu = rep.mu();
  for (int p = 0; p < pres.pair_count(); ++p) {
    const ComplexMatrix unit_check =
        rep.pair_word[p] * rep.pair_word[p].adjoint() - ComplexMatrix::identity(rep.dimension);
    if (unit_check.norm_inf() > 1e-12)
      raise(ErrorKind::InternalCheckFailed, "torus word is not unitary");
    for (int r = 0; r < pres.pair_count(); ++r) {
      const ComplexMatrix lhs = rep.pair_word[p] * rep.pair_word[r];
      const ComplexMatrix rhs =
          std::pow(mu, q[p][r]) * (rep.pair_word[r] * rep.pair_word[p]);
      if ((lhs - rhs).norm_inf() > 1e-12)
        raise(ErrorKind::InternalCheckFailed, "torus words violate the phase matrix");
    }
  }
  return rep;
}

// -------------------------------------------------------------- SpherePoint

namespace {

std::complex<double> random_gaussian(std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return {dist(rng), dist(rng)};
}

SpherePoint random_unit_vector(int pairs, std::mt19937& rng) {
  SpherePoint point;
  double norm2 = 0.0;
  for (int p = 0; p < pairs; ++p) {
    point.pair_value.push_back(random_gaussian(rng));
    norm2 += std::norm(point.pair_value.back());
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : point.pair_value) v *= inv;
  return point;
}

}  // namespace

SpherePoint s4_point_from_s7(const SpherePoint& point) {
  const auto& z = point.pair_value;
  SpherePoint out;
  out.pair_value = {2.0 * (z[0] * std::conj(z[2]) + z[1] * std::conj(z[3])),
                    2.0 * (-z[0] * z[3] + z[1] * z[2])};
  out.central_value = {std::norm(z[0]) + std::norm(z[1]) - std::norm(z[2]) - std::norm(z[3])};
  return out;
}

SpherePoint random_sphere_point(const Presentation& pres, std::mt19937& rng) {
  const std::string& name = pres.name();
  if (name == "s7" || name == "s7_classical") return random_unit_vector(4, rng);
  if (name == "s4" || name == "s4_classical")
    return s4_point_from_s7(random_unit_vector(4, rng));
  if (name == "su2" || name == "su2_classical") return random_unit_vector(2, rng);
  if (name == "t2" || name == "t2_classical") {
    SpherePoint point;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int p = 0; p < pres.pair_count(); ++p)
      point.pair_value.push_back(std::polar(1.0, angle(rng)));
    return point;
  }
  if (!pres.sphere_relations().empty())
    raise(ErrorKind::DomainError, "no classical point sampler for " + name);
  SpherePoint point;
  for (int p = 0; p < pres.pair_count(); ++p) point.pair_value.push_back(random_gaussian(rng));
  point.central_value.assign(static_cast<std::size_t>(pres.generator_count()) -
                                 2 * pres.pair_count(),
                             0.5);
  return point;
}

// --------------------------------------------------------- NumericEvaluator

NumericEvaluator::NumericEvaluator(const Presentation& pres, int modulus)
    : pres_(&pres), rep_(TorusRep::build(pres, modulus)) {
  central_slot_.assign(pres.generator_count(), -1);
  int next = 0;
  for (int g = 0; g < pres.generator_count(); ++g)
    if (pres.generator(g).pair < 0) central_slot_[g] = next++;
}

ComplexMatrix NumericEvaluator::generator_matrix(int gen, const SpherePoint& point) const {
  const GeneratorInfo& info = pres_->generator(gen);
  if (info.pair < 0) {
    const double value = point.central_value.at(central_slot_[gen]);
    return std::complex<double>(value, 0.0) * ComplexMatrix::identity(rep_.dimension);
  }
  const std::complex<double> amplitude = info.pair_sign > 0
                                             ? point.pair_value.at(info.pair)
                                             : std::conj(point.pair_value.at(info.pair));
  const ComplexMatrix& word = rep_.pair_word[info.pair];
  return amplitude * (info.pair_sign > 0 ? word : word.adjoint());
}

ComplexMatrix NumericEvaluator::evaluate(const AlgebraElement& element,
                                         const SpherePoint& point) const {
  if (&element.presentation() != pres_)
    raise(ErrorKind::PresentationMismatch, "evaluating element of a different presentation");
  ComplexMatrix acc(rep_.dimension, rep_.dimension);
  for (const auto& [m, coeff] : element.terms()) {
    ComplexMatrix prod = ComplexMatrix::identity(rep_.dimension);
    for (int g = 0; g < pres_->generator_count(); ++g) {
      if (m.exps[g] == 0) continue;
      const ComplexMatrix base = generator_matrix(g, point);
      for (int rep = 0; rep < m.exps[g]; ++rep) prod = prod * base;
    }
    acc += coeff.eval(Rational(2, rep_.modulus)) * prod;
  }
  return acc;
}

ComplexMatrix NumericEvaluator::evaluate_word(std::span<const int> letters, const Scalar& coeff,
                                              const SpherePoint& point) const {
  ComplexMatrix prod = ComplexMatrix::identity(rep_.dimension);
  for (int letter : letters) prod = prod * generator_matrix(letter, point);
  return coeff.eval(Rational(2, rep_.modulus)) * prod;
}

bool numerically_zero(const AlgebraElement& element, int point_count, unsigned seed,
                      double tolerance) {
  if (element.is_zero()) return true;
  const NumericEvaluator evaluator(element.presentation());
  std::mt19937 rng(seed);
  for (int k = 0; k < point_count; ++k) {
    const SpherePoint point = random_sphere_point(element.presentation(), rng);
    if (evaluator.evaluate(element, point).norm_inf() > tolerance) return false;
  }
  return true;
}

}  // namespace ncs
