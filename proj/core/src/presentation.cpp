#include "ncs/presentation.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "ncs/error.hpp"

namespace ncs {

namespace {

std::deque<std::unique_ptr<Presentation>>& interned_store() {
  static std::deque<std::unique_ptr<Presentation>> store;
  return store;
}

std::mutex& intern_mutex() {
  static std::mutex m;
  return m;
}

ExponentArray exps(std::initializer_list<std::pair<int, int>> entries) {
  ExponentArray e{};
  for (const auto& [gen, count] : entries) e[gen] = static_cast<std::uint8_t>(count);
  return e;
}

}  // namespace

struct PresentationBuilder {
  Presentation p;

  PresentationBuilder& named(std::string n) {
    p.name_ = std::move(n);
    return *this;
  }
  PresentationBuilder& generators(std::vector<GeneratorInfo> g, int pairs) {
    p.gens_ = std::move(g);
    p.num_pairs_ = pairs;
    return *this;
  }
  PresentationBuilder& pair_matrix(std::vector<std::vector<int>> q) {
    p.pair_q_ = std::move(q);
    return *this;
  }
  PresentationBuilder& rule(int a, int b, std::vector<std::pair<ExponentArray, Scalar>> rhs) {
    p.rules_.push_back({a, b, std::move(rhs)});
    return *this;
  }
  PresentationBuilder& torus(int rank, std::vector<std::vector<int>> weights,
                             std::vector<std::vector<int>> lattice) {
    p.torus_rank_ = rank;
    p.torus_weights_ = std::move(weights);
    p.torus_lattice_q_ = std::move(lattice);
    return *this;
  }
  PresentationBuilder& reported(int length, std::vector<std::vector<int>> embedding = {}) {
    p.reported_degree_length_ = length;
    p.reported_embedding_ = std::move(embedding);
    return *this;
  }

  const Presentation& intern() {
    p.finalize();
    std::lock_guard<std::mutex> lock(intern_mutex());
    interned_store().push_back(std::make_unique<Presentation>(std::move(p)));
    return *interned_store().back();
  }
};

void Presentation::finalize() {
  if (static_cast<int>(gens_.size()) > kMaxGenerators)
    raise(ErrorKind::InternalCheckFailed, "too many generators in presentation " + name_);

  commutative_ = true;
  for (const auto& row : pair_q_)
    for (int v : row)
      if (v != 0) commutative_ = false;

  // Antisymmetry of the phase matrix.
  for (int i = 0; i < num_pairs_; ++i)
    for (int j = 0; j < num_pairs_; ++j)
      if (pair_q_[i][j] != -pair_q_[j][i])
        raise(ErrorKind::InternalCheckFailed, "phase matrix not antisymmetric in " + name_);

  // Conjugation must be an involution compatible with pair data.
  for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
    const auto& info = gens_[g];
    if (gens_.at(info.conjugate).conjugate != g)
      raise(ErrorKind::InternalCheckFailed, "conjugation is not an involution in " + name_);
    if (info.pair >= 0 && gens_.at(info.conjugate).pair != info.pair)
      raise(ErrorKind::InternalCheckFailed, "conjugate generator in a different pair in " + name_);
  }

  // The splitting torus weights must reproduce the pair phase matrix.
  if (!torus_weights_.empty()) {
    for (int pq = 0; pq < num_pairs_; ++pq) {
      for (int qq = 0; qq < num_pairs_; ++qq) {
        long long acc = 0;
        for (int s = 0; s < torus_rank_; ++s)
          for (int t = 0; t < torus_rank_; ++t)
            acc += static_cast<long long>(torus_weights_[pq][s]) * torus_lattice_q_[s][t] *
                   torus_weights_[qq][t];
        if (acc != pair_q_[pq][qq])
          raise(ErrorKind::InternalCheckFailed,
                "torus weights inconsistent with phase matrix in " + name_);
      }
    }
  }

  // Reduction-rule left sides must be phase-central (their per-pair degree
  // vector vanishes), which makes the rewriting confluent.
  for (const auto& r : rules_) {
    std::vector<int> deg(num_pairs_, 0);
    for (int g : {r.gen_a, r.gen_b}) {
      const auto& info = gens_.at(g);
      if (info.pair >= 0) deg[info.pair] += info.pair_sign;
    }
    for (int v : deg)
      if (v != 0)
        raise(ErrorKind::InternalCheckFailed, "reduction rule lhs not central in " + name_);
  }
}

int Presentation::find_generator(std::string_view token) const {
  for (int g = 0; g < static_cast<int>(gens_.size()); ++g)
    if (gens_[g].name == token) return g;
  return -1;
}

long long Presentation::phase_pairing(const std::vector<int>& d1,
                                      const std::vector<int>& d2) const {
  long long acc = 0;
  for (int i = 0; i < num_pairs_; ++i) {
    if (d1[i] == 0) continue;
    for (int j = 0; j < num_pairs_; ++j)
      acc += static_cast<long long>(d1[i]) * pair_q_[i][j] * d2[j];
  }
  return acc;
}

std::vector<Presentation::SphereRelation> Presentation::sphere_relations() const {
  std::vector<SphereRelation> out;
  for (const auto& r : rules_) {
    SphereRelation rel;
    rel.lhs = ExponentArray{};
    rel.lhs[r.gen_a] += 1;
    rel.lhs[r.gen_b] += 1;
    rel.rhs = r.replacement;
    out.push_back(std::move(rel));
  }
  return out;
}

std::vector<int> Presentation::reported_degree(const std::vector<int>& pair_degree) const {
  if (reported_embedding_.empty()) return pair_degree;
  std::vector<int> out(reported_degree_length_, 0);
  for (int p = 0; p < num_pairs_; ++p)
    for (int c = 0; c < reported_degree_length_; ++c)
      out[c] += pair_degree[p] * reported_embedding_[p][c];
  return out;
}

const Presentation& Presentation::classical() const {
  if (commutative_) return *this;
  std::lock_guard<std::mutex> lock(intern_mutex());
  if (classical_ != nullptr) return *classical_;
  auto copy = std::make_unique<Presentation>(*this);
  copy->name_ = name_ + "_classical";
  for (auto& row : copy->pair_q_)
    for (auto& v : row) v = 0;
  for (auto& row : copy->torus_lattice_q_)
    for (auto& v : row) v = 0;
  copy->commutative_ = true;
  copy->classical_ = copy.get();
  interned_store().push_back(std::move(copy));
  classical_ = interned_store().back().get();
  return *classical_;
}

// ------------------------------------------------------------------ presets

const Presentation& Presentation::s7() {
  static const Presentation& instance = [] {
    PresentationBuilder b;
    std::vector<GeneratorInfo> gens;
    for (int i = 0; i < 4; ++i)
      gens.push_back({"z" + std::to_string(i + 1), i + 4, i, +1});
    for (int i = 0; i < 4; ++i)
      gens.push_back({"z" + std::to_string(i + 1) + "*", i, i, -1});
    b.named("s7").generators(std::move(gens), 4);
    b.pair_matrix({{0, 0, 1, 1}, {0, 0, 1, 1}, {-1, -1, 0, 0}, {-1, -1, 0, 0}});
    b.rule(3, 7,
           {{exps({}), Scalar{1}},
            {exps({{0, 1}, {4, 1}}), Scalar{-1}},
            {exps({{1, 1}, {5, 1}}), Scalar{-1}},
            {exps({{2, 1}, {6, 1}}), Scalar{-1}}});
    b.torus(2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}}, {{0, 1}, {-1, 0}});
    b.reported(4);
    return std::cref(b.intern());
  }();
  return instance;
}

const Presentation& Presentation::s4() {
  static const Presentation& instance = [] {
    PresentationBuilder b;
    std::vector<GeneratorInfo> gens = {
        {"a", 2, 0, +1}, {"b", 3, 1, +1}, {"a*", 0, 0, -1}, {"b*", 1, 1, -1}, {"x", 4, -1, 0},
    };
    b.named("s4").generators(std::move(gens), 2);
    b.pair_matrix({{0, 2}, {-2, 0}});
    b.rule(4, 4,
           {{exps({}), Scalar{1}},
            {exps({{0, 1}, {2, 1}}), Scalar{-1}},
            {exps({{1, 1}, {3, 1}}), Scalar{-1}}});
    b.torus(2, {{1, -1}, {1, 1}}, {{0, 1}, {-1, 0}});
    // Degrees are reported through the embedding into the 7-sphere lattice:
    // the first pair maps to e1 - e3, the second to e1 + e4.
    b.reported(4, {{1, 0, -1, 0}, {1, 0, 0, 1}});
    return std::cref(b.intern());
  }();
  return instance;
}

const Presentation& Presentation::su2() {
  static const Presentation& instance = [] {
    PresentationBuilder b;
    std::vector<GeneratorInfo> gens = {
        {"w1", 2, 0, +1}, {"w2", 3, 1, +1}, {"w1*", 0, 0, -1}, {"w2*", 1, 1, -1},
    };
    b.named("su2").generators(std::move(gens), 2);
    b.pair_matrix({{0, 0}, {0, 0}});
    b.rule(0, 2, {{exps({}), Scalar{1}}, {exps({{1, 1}, {3, 1}}), Scalar{-1}}});
    b.torus(2, {{0, 0}, {0, 0}}, {{0, 0}, {0, 0}});
    b.reported(2);
    return std::cref(b.intern());
  }();
  return instance;
}

const Presentation& Presentation::t2() {
  static const Presentation& instance = [] {
    PresentationBuilder b;
    std::vector<GeneratorInfo> gens = {
        {"u", 2, 0, +1}, {"v", 3, 1, +1}, {"u*", 0, 0, -1}, {"v*", 1, 1, -1},
    };
    b.named("t2").generators(std::move(gens), 2);
    b.pair_matrix({{0, 1}, {-1, 0}});
    b.rule(0, 2, {{exps({}), Scalar{1}}});
    b.rule(1, 3, {{exps({}), Scalar{1}}});
    b.torus(2, {{1, 0}, {0, 1}}, {{0, 1}, {-1, 0}});
    b.reported(2);
    return std::cref(b.intern());
  }();
  return instance;
}

const Presentation& Presentation::r2n(int n) {
  if (n < 1 || n > kMaxGenerators / 2)
    raise(ErrorKind::InvalidArgument, "r2n preset supports 1 <= n <= 8");
  static std::map<int, const Presentation*> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  PresentationBuilder b;
  std::vector<GeneratorInfo> gens;
  for (int i = 0; i < n; ++i) gens.push_back({"z" + std::to_string(i + 1), n + i, i, +1});
  for (int i = 0; i < n; ++i) gens.push_back({"z" + std::to_string(i + 1) + "*", i, i, -1});
  std::vector<std::vector<int>> q(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = (i < j) ? 1 : (i > j ? -1 : 0);
  std::vector<std::vector<int>> weights;
  for (int i = 0; i < n; ++i) {
    std::vector<int> w(n, 0);
    w[i] = 1;
    weights.push_back(std::move(w));
  }
  b.named("r2n:" + std::to_string(n)).generators(std::move(gens), n);
  auto lattice = q;
  b.pair_matrix(std::move(q));
  b.torus(n, std::move(weights), std::move(lattice));
  b.reported(n);
  const Presentation& made = b.intern();
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(n, &made);
  return made;
}

const Presentation& Presentation::from_token(std::string_view token) {
  if (token == "s7") return s7();
  if (token == "s4") return s4();
  if (token == "su2") return su2();
  if (token == "t2") return t2();
  if (token.starts_with("r2n:")) {
    int n = 0;
    const auto* begin = token.data() + 4;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, n);
    if (ec == std::errc{} && ptr == end) return r2n(n);
  }
  raise(ErrorKind::InvalidArgument, "unknown preset '" + std::string(token) + "'");
}

// ---------------------------------------------------- phase-constraint solve

namespace {

struct LinearRow {
  std::array<Rational, 6> lhs{};
  Rational rhs{0};
  std::string description;
};

// Unknown order: q12 q13 q14 q23 q24 q34.
std::vector<LinearRow> base_constraint_rows() {
  std::vector<LinearRow> rows;
  auto row = [](std::initializer_list<int> coeffs, int rhs, std::string desc) {
    LinearRow r;
    int k = 0;
    for (int c : coeffs) r.lhs[k++] = Rational(c);
    r.rhs = Rational(rhs);
    r.description = std::move(desc);
    return r;
  };
  rows.push_back(row({0, 1, 0, 0, 0, 0}, 1, "defining deformation phase: q13 = 1"));
  rows.push_back(row({0, 1, 1, 0, 0, -1}, 2,
                     "subalgebra relation a b = mu^2 b a: q13 + q14 - q34 = 2"));
  rows.push_back(row({-1, -1, 1, 0, 0, 0}, 0,
                     "invariant subalgebra closure, component 1: -q12 - q13 + q14 = 0"));
  rows.push_back(row({-1, 0, 0, -1, 1, 0}, 0,
                     "invariant subalgebra closure, component 2: -q12 - q23 + q24 = 0"));
  rows.push_back(row({0, -1, 0, 1, 0, 1}, 0,
                     "invariant subalgebra closure, component 3: -q13 + q23 + q34 = 0"));
  rows.push_back(row({0, 0, -1, 0, 1, -1}, 0,
                     "invariant subalgebra closure, component 4: -q14 + q24 - q34 = 0"));
  return rows;
}

PhaseConstraintReport solve_rows(std::vector<LinearRow> rows) {
  PhaseConstraintReport report;

  // Incremental rational elimination; rows that conflict with the span of the
  // earlier ones are recorded and skipped, so a solution always exists.
  std::vector<LinearRow> echelon;
  std::vector<bool> conflicted(rows.size(), false);
  for (std::size_t rix = 0; rix < rows.size(); ++rix) {
    LinearRow r = rows[rix];
    for (const auto& e : echelon) {
      int pivot = -1;
      for (int k = 0; k < 6; ++k)
        if (e.lhs[k] != 0) {
          pivot = k;
          break;
        }
      if (pivot < 0) continue;
      if (r.lhs[pivot] == 0) continue;
      const Rational factor = r.lhs[pivot] / e.lhs[pivot];
      for (int k = 0; k < 6; ++k) r.lhs[k] -= factor * e.lhs[k];
      r.rhs -= factor * e.rhs;
    }
    const bool lhs_zero =
        std::all_of(r.lhs.begin(), r.lhs.end(), [](const Rational& v) { return v == 0; });
    if (lhs_zero) {
      if (r.rhs != 0) conflicted[rix] = true;
      continue;
    }
    echelon.push_back(std::move(r));
  }

  // Back-substitute; free unknowns default to zero.
  std::array<Rational, 6> solution{};
  for (auto it = echelon.rbegin(); it != echelon.rend(); ++it) {
    int pivot = -1;
    for (int k = 0; k < 6; ++k)
      if (it->lhs[k] != 0) {
        pivot = k;
        break;
      }
    Rational value = it->rhs;
    for (int k = pivot + 1; k < 6; ++k) value -= it->lhs[k] * solution[k];
    solution[pivot] = value / it->lhs[pivot];
  }

  static constexpr int kPairIndex[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  report.matrix.assign(4, std::vector<int>(4, 0));
  for (int u = 0; u < 6; ++u) {
    const Rational& v = solution[u];
    if (denominator(v) != 1)
      raise(ErrorKind::InternalCheckFailed, "non-integer phase constraint solution");
    const int value = numerator(v).convert_to<int>();
    report.matrix[kPairIndex[u][0]][kPairIndex[u][1]] = value;
    report.matrix[kPairIndex[u][1]][kPairIndex[u][0]] = -value;
  }

  report.consistent = true;
  for (std::size_t rix = 0; rix < rows.size(); ++rix) {
    Rational acc{0};
    for (int k = 0; k < 6; ++k) acc += rows[rix].lhs[k] * solution[k];
    const bool ok = (acc == rows[rix].rhs) && !conflicted[rix];
    report.constraints.push_back({rows[rix].description, ok});
    if (!ok) report.consistent = false;
  }
  return report;
}

}  // namespace

PhaseConstraintReport solve_phase_constraints() { return solve_rows(base_constraint_rows()); }

PhaseConstraintReport solve_phase_constraints_perturbed(int i, int j, int forced_value) {
  if (i < 0 || j < 0 || i >= 4 || j >= 4 || i == j)
    raise(ErrorKind::InvalidArgument, "perturbed entry must name distinct pairs 0..3");
  if (i > j) {
    std::swap(i, j);
    forced_value = -forced_value;
  }
  static constexpr int kUnknownOf[4][4] = {
      {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  LinearRow forced;
  forced.lhs[kUnknownOf[i][j]] = Rational(1);
  forced.rhs = Rational(forced_value);
  forced.description = "forced entry: q" + std::to_string(i + 1) + std::to_string(j + 1) +
                       " = " + std::to_string(forced_value);
  auto rows = base_constraint_rows();
  rows.insert(rows.begin(), std::move(forced));
  return solve_rows(rows);
}

}  // namespace ncs
