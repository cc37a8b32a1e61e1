#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ncs/scalar.hpp"

namespace ncs {

/// Hard cap on generators per presentation (r2n:8 uses all 16 slots).
inline constexpr int kMaxGenerators = 16;

/// Exponent slots of a canonical monomial, in fixed generator order.
using ExponentArray = std::array<std::uint8_t, kMaxGenerators>;

struct GeneratorInfo {
  std::string name;    ///< token name rendered/parsed by the CLI ("z1", "a", "x", ...)
  int conjugate = 0;   ///< index of the adjoint generator (self for self-adjoint)
  int pair = -1;       ///< complex-pair index, -1 for self-adjoint central generators
  int pair_sign = 0;   ///< +1 unbarred member, -1 conjugate member, 0 central
};

/// Rewrite rule whose left-hand side gen_a * gen_b is a central monomial;
/// monomials divisible by it are replaced by the stored sum.
struct ReductionRule {
  int gen_a = 0;
  int gen_b = 0;
  std::vector<std::pair<ExponentArray, Scalar>> replacement;
};

/// Immutable description of one coordinate algebra: generators, the
/// antisymmetric integer matrix driving the reordering phases
/// (a·b = mu^{deg(a)^T Q deg(b)} b·a for homogeneous a, b), reduction rules,
/// and the data of the torus splitting.  Instances are interned singletons;
/// elements compare presentations by pointer identity.
class Presentation {
 public:
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int generator_count() const noexcept { return static_cast<int>(gens_.size()); }
  [[nodiscard]] const GeneratorInfo& generator(int index) const { return gens_.at(index); }
  [[nodiscard]] const std::vector<GeneratorInfo>& generators() const noexcept { return gens_; }
  /// Index of a generator by token name, or -1.
  [[nodiscard]] int find_generator(std::string_view token) const;

  [[nodiscard]] int pair_count() const noexcept { return num_pairs_; }
  /// Antisymmetric phase matrix over complex pairs.
  [[nodiscard]] const std::vector<std::vector<int>>& pair_matrix() const noexcept { return pair_q_; }

  /// Phase pairing of two per-pair degree vectors: d1^T Q d2.
  [[nodiscard]] long long phase_pairing(const std::vector<int>& d1,
                                        const std::vector<int>& d2) const;

  [[nodiscard]] bool commutative() const noexcept { return commutative_; }
  [[nodiscard]] const std::vector<ReductionRule>& rules() const noexcept { return rules_; }

  /// Defining relations as elements of the free *-algebra: for each reduction
  /// rule, the pair (lhs exponents, replacement); used to derive differential
  /// ideals.  lhs - rhs generates the ideal divided out of the free algebra.
  struct SphereRelation {
    ExponentArray lhs{};
    std::vector<std::pair<ExponentArray, Scalar>> rhs;
  };
  [[nodiscard]] std::vector<SphereRelation> sphere_relations() const;

  /// Rank of the lattice the splitting torus words live in.
  [[nodiscard]] int torus_rank() const noexcept { return torus_rank_; }
  /// Weight of each complex pair in the splitting torus lattice.
  [[nodiscard]] const std::vector<std::vector<int>>& torus_weights() const noexcept {
    return torus_weights_;
  }
  /// Phase matrix of the splitting torus lattice itself.
  [[nodiscard]] const std::vector<std::vector<int>>& torus_lattice_matrix() const noexcept {
    return torus_lattice_q_;
  }

  /// Length of the reported grading tuple (4 for the 7-sphere family; the
  /// 4-sphere reports through its embedding so its tuple is also length 4).
  [[nodiscard]] int reported_degree_length() const noexcept { return reported_degree_length_; }
  /// Per-pair degree -> reported tuple (identity unless an embedding is set).
  [[nodiscard]] std::vector<int> reported_degree(const std::vector<int>& pair_degree) const;

  /// Commutative companion presentation (all phases zero, same relations);
  /// the classical leg of the splitting.  Self for commutative presets.
  [[nodiscard]] const Presentation& classical() const;

  // ---- preset registry ----
  static const Presentation& s7();    ///< deformed 7-sphere coordinate algebra
  static const Presentation& s4();    ///< deformed 4-sphere coordinate algebra
  static const Presentation& su2();   ///< the (undeformed) structure Hopf algebra
  static const Presentation& t2();    ///< noncommutative 2-torus
  static const Presentation& r2n(int n);  ///< deformed complex n-space, 1 <= n <= 8
  /// Lookup by CLI preset token: "s7", "s4", "su2", "t2", "r2n:<n>".
  static const Presentation& from_token(std::string_view token);

 private:
  Presentation() = default;
  void finalize();

  std::string name_;
  std::vector<GeneratorInfo> gens_;
  int num_pairs_ = 0;
  std::vector<std::vector<int>> pair_q_;
  std::vector<ReductionRule> rules_;
  bool commutative_ = true;
  int torus_rank_ = 0;
  std::vector<std::vector<int>> torus_weights_;
  std::vector<std::vector<int>> torus_lattice_q_;
  int reported_degree_length_ = 0;
  std::vector<std::vector<int>> reported_embedding_;  // per pair, empty = identity
  mutable const Presentation* classical_ = nullptr;

  friend struct PresentationBuilder;
};

/// Result of deriving the 7-sphere phase matrix from the structural
/// constraints (closure of the invariant subalgebra, the 4-sphere relation
/// phase, and the normalisation of the defining deformation phase).
struct PhaseConstraintReport {
  struct Row {
    std::string description;
    bool satisfied = false;
  };
  std::vector<std::vector<int>> matrix;  ///< solved antisymmetric 4x4 matrix
  std::vector<Row> constraints;
  bool consistent = false;
};

/// Solves the integer constraint system for the 7-sphere phase matrix.
/// With no perturbation the unique solution is the block matrix
/// [[0,0,1,1],[0,0,1,1],[-1,-1,0,0],[-1,-1,0,0]].  A forced value for one
/// entry (e.g. q12 = 1) demonstrates inconsistency in the report.
PhaseConstraintReport solve_phase_constraints();
PhaseConstraintReport solve_phase_constraints_perturbed(int i, int j, int forced_value);

}  // namespace ncs
