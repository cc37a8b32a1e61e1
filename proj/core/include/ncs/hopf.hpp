#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ncs/algebra.hpp"
#include "ncs/fibration.hpp"
#include "ncs/first_order.hpp"
#include "ncs/presentation.hpp"

namespace ncs {

/// Lexicographic order on tuples of reduced monomials.
struct MonomialTupleLess {
  bool operator()(const std::vector<Monomial>& a, const std::vector<Monomial>& b) const noexcept;
};

/// Sum of scalar-weighted tuples of reduced monomials, one leg per declared
/// presentation: the working representation of elements of two- and
/// three-fold tensor products (P (x) P, P (x) H, and the triple products of
/// the colinearity identities).  Legs combine over the ground scalars, so a
/// permutation or a linear substitution of one leg never touches the others;
/// products within a leg use that leg's algebra (phases and reductions
/// included).
class TensorElement {
 public:
  using Key = std::vector<Monomial>;
  using TermMap = std::map<Key, Scalar, MonomialTupleLess>;

  explicit TensorElement(std::vector<const Presentation*> legs);
  /// 1 (x) ... (x) 1 over the given legs.
  static TensorElement unit(std::vector<const Presentation*> legs);
  /// Tensor product of algebra elements, one factor per leg.
  static TensorElement simple(const std::vector<AlgebraElement>& factors);

  [[nodiscard]] int leg_count() const noexcept { return static_cast<int>(legs_.size()); }
  [[nodiscard]] const Presentation& leg(int index) const;
  [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] int term_count() const noexcept { return static_cast<int>(terms_.size()); }

  /// Adds value * (key[0] (x) key[1] (x) ...); monomials must be reduced.
  void add_term(Key key, const Scalar& value);

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { a += b; return a; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { a -= b; return a; }
  friend TensorElement operator-(const TensorElement& a);
  friend TensorElement operator*(const Scalar& s, TensorElement a);
  /// Legwise product; both operands must carry the same legs.
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  friend bool operator==(const TensorElement& a, const TensorElement& b);
  friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

  /// Multiplies one leg by an algebra element from the left / right.
  [[nodiscard]] TensorElement leg_multiplied_left(int leg, const AlgebraElement& a) const;
  [[nodiscard]] TensorElement leg_multiplied_right(int leg, const AlgebraElement& a) const;
  /// Multiplies legs `leg` and `leg + 1` (same presentation) into one leg.
  [[nodiscard]] TensorElement legs_merged(int leg) const;
  /// Reorders legs: result leg i is input leg positions[i].
  [[nodiscard]] TensorElement legs_permuted(const std::vector<int>& positions) const;
  /// Applies a scalar-linear map to one leg, splicing the legs of the image
  /// tensor in place of that leg.
  [[nodiscard]] TensorElement leg_mapped(
      int leg, const std::function<TensorElement(const Monomial&)>& image) const;
  /// Concatenates legs: a (x) b.
  friend TensorElement tensor_product(const TensorElement& a, const TensorElement& b);

  /// Multiplies all legs out (they must share one presentation).
  [[nodiscard]] AlgebraElement multiplied_out() const;
  /// For a two-leg tensor of the form 1 (x) e: the factor e; nullopt when any
  /// first-leg monomial differs from the identity.
  [[nodiscard]] std::optional<AlgebraElement> factor_right_of_unit() const;
  /// For a two-leg tensor: the distinct monomials of the chosen leg, each with
  /// the algebra-element sum it multiplies on the other leg.
  [[nodiscard]] std::vector<std::pair<Monomial, AlgebraElement>> grouped_by_leg(int leg) const;

  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<const Presentation*> legs_;
  TermMap terms_;
};

// ------------------------------------------------------ structure Hopf algebra

/// Comultiplication of the structure algebra, extended multiplicatively from
/// the fundamental matrix of generators; legs (su2, su2).
TensorElement hopf_coproduct(const AlgebraElement& h);
/// Counit: 1 on the first complex pair's letters, 0 on the second.
Scalar hopf_counit(const AlgebraElement& h);
/// Antipode: w1 <-> w1*, w2 -> -w2, w2* -> -w2*; an involution here.
AlgebraElement hopf_antipode(const AlgebraElement& h);
/// Vector-basis element r^{k,m,n} (k of either sign, m, n >= 0): the signed
/// monomial (-1)^n w1^k w2^m w2*^n, with w1^k meaning w1*^{-k} for k < 0.
AlgebraElement hopf_r_basis(int k, int m, int n);

// ------------------------------------------------------------------- coaction

/// Right coaction of the structure algebra on the 7-sphere algebra, as a
/// *-algebra map into legs (s7, su2); generators transform by the fundamental
/// block matrix.
TensorElement coaction(const AlgebraElement& p);
/// True iff coaction(p) == p (x) 1 exactly.
bool coinvariance_check(const AlgebraElement& p);
/// The left companion p -> S(p_(1)) (x) p_(0), legs (su2, s7).
TensorElement left_coaction(const AlgebraElement& p);

/// Lift of the canonical descent map to representatives: p' (x) p maps to
/// p' p_(0) (x) p_(1); input legs (s7, s7), output legs (s7, su2).
TensorElement canonical_map(const TensorElement& t);

// ----------------------------------------------------------- corepresentation

/// Matrix corepresentation on the normalised symmetric-power basis: entries
/// e_kl over the structure algebra with coaction(phi_l[J]) ==
/// sum_k phi_k[J] (x) e_kl for every component J.  Construction certifies that
/// expansion together with the comodule axioms (counit, comultiplication,
/// antipode inverse) and raises on any failure.
struct Corepresentation {
  int n = 0;
  std::vector<std::vector<AlgebraElement>> entries;  ///< (n+1) x (n+1), 0-based
  [[nodiscard]] const AlgebraElement& at(int k, int l) const;
};
Corepresentation corepresentation(int n);

// ------------------------------------------------------------ strong connection

/// The recursive splitting h -> ell(h) in P (x) P: base value 1 (x) 1, the
/// four index-shift rules on the vector basis, and linear extension.  Every
/// basis value is certified through the canonical map (its image must be
/// 1 (x) r) before it enters the cache.
class StrongConnection {
 public:
  StrongConnection();

  /// ell on the basis element r^{k,m,n} (cached).
  const TensorElement& ell_basis(int k, int m, int n);
  /// Linear extension to the whole structure algebra.
  TensorElement ell(const AlgebraElement& h);
  /// Connection one-form omega(h) = ell(h) - counit(h) 1 (x) 1.
  TensorElement omega(const AlgebraElement& h);
  /// Image of omega(h) in the delta-calculus: sum a (x) b -> sum a delta(b).
  FirstOrderElement omega_form(const AlgebraElement& h);

 private:
  const TensorElement& compute(int k, int m, int n);
  std::map<std::tuple<int, int, int>, TensorElement> cache_;
};

// ------------------------------------------------------------------- reports

/// Generator witnesses for surjectivity of the canonical map: the image of
/// ell at each structure-algebra generator must be 1 (x) generator, and the
/// unit maps to 1 (x) 1.
struct SurjectivityReport {
  std::vector<std::pair<std::string, bool>> witnesses;
  bool passed = false;
};
SurjectivityReport galois_surjectivity_witnesses();

/// Bounded-degree rank comparison for bijectivity of the descended canonical
/// map.  On the span of monomial pairs with total degree <= degree_bound:
/// the base-algebra relation vectors must map to zero exactly, the kernel
/// dimension must equal the relation-span rank (injectivity after descent),
/// and every product m * ell(r) fitting in the bound must hit m (x) r
/// (surjectivity witnesses on the component).
struct ComponentRankReport {
  int degree_bound = 0;
  int pair_dimension = 0;       ///< dim of the monomial-pair span
  int image_rank = 0;           ///< rank of the lifted canonical map on it
  int kernel_dimension = 0;     ///< pair_dimension - image_rank
  int relation_rank = 0;        ///< rank of the base-relation span
  int witnesses_checked = 0;    ///< surjectivity witnesses within the bound
  bool relations_in_kernel = false;
  bool kernel_matches_relations = false;
  bool witnesses_hit = false;
  bool isomorphism = false;
  std::string detail;
};
ComponentRankReport galois_bijectivity_on_component(int degree_bound);

/// Full strong-connection axiom sweep over the vector basis with
/// |k| + m + n <= max_degree: canonical-map witness, right and left
/// colinearity, multiplication collapse to the counit, and both strongness
/// memberships for every algebra monomial of degree <= max_degree (certified
/// by exact rewriting of the base-side leg plus vanishing of the
/// multiplication image).
struct AxiomOutcome {
  std::string name;
  int checked = 0;
  int failed = 0;
  bool passed = false;
};
struct StrongConnectionReport {
  int max_degree = 0;
  std::vector<AxiomOutcome> axioms;
  bool passed = false;
};
StrongConnectionReport strong_connection_axioms(int max_degree);

// ------------------------------------------------- induced module connections

/// Covariant derivative induced by the strong connection on the module of
/// coequivariant maps: value k is delta(map_k) + sum_l omega(e_kl) map_l in
/// P (x) P.  The result is certified coequivariant and valued in the
/// one-form bimodule of the base (second legs rewrite into the base algebra
/// and the multiplication image vanishes).
struct CovariantDerivative {
  int n = 0;
  std::vector<TensorElement> values;
  bool coequivariant = false;
  bool base_valued = false;
  bool passed = false;
};
CovariantDerivative nabla_omega(int n, const std::vector<AlgebraElement>& map_values);

/// Compares the strong-connection one-form, pushed through the quotient to
/// the delta-calculus, with the projective-module connection matrix: each
/// difference must vanish exactly or be a certified zero of the quotient.
bool compare_with_grassmannian(int n);

}  // namespace ncs
