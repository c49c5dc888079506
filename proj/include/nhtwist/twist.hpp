#pragma once

// Abelian twist deformations: star product on the function algebra,
// commutator tables of the quantum space-times, twisted coproducts and
// antipodes as beta-graded series, and the cocycle / Hopf-axiom checks.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nhtwist/diffrep.hpp"
#include "nhtwist/funcspace.hpp"
#include "nhtwist/liealg.hpp"
#include "nhtwist/tensor.hpp"

namespace nhtwist {

struct TwistSpec {
  int id = 5;
  AlgebraKind kind = AlgebraKind::nh_plus;
  TwistIndices indices{};
  int dim = 3;
};

inline constexpr int kDefaultMaxStarOrder = 32;

/// f * g together with the order n at which the n-th series tensor became
/// identically zero (every later term is then zero as well).
struct StarResult {
  SpaceFunction value;
  int witness_order = 0;
};

/// An algebra with a representation and an r-matrix.  Owns the star-product
/// caches, so an instance must not be shared between threads.
class TwistedAlgebra {
public:
  TwistedAlgebra(LieAlgebra alg, Representation rep, RMatrix r,
                 int max_order = kDefaultMaxStarOrder);
  explicit TwistedAlgebra(const TwistSpec& spec, int max_order = kDefaultMaxStarOrder);

  const LieAlgebra& algebra() const { return alg_; }
  const Representation& representation() const { return rep_; }
  const RMatrix& rmatrix() const { return r_; }
  int twist_id() const { return r_.id(); }
  Geometry geometry() const { return alg_.geometry(); }
  int dim() const { return alg_.dim(); }

  /// Coordinate 0 is t, 1..dim are x1..xd.
  SpaceFunction coordinate(int index) const;

  SpaceFunction star(const SpaceFunction& f, const SpaceFunction& g);
  StarResult star_with_witness(const SpaceFunction& f, const SpaceFunction& g);
  SpaceFunction star_commutator(const SpaceFunction& f, const SpaceFunction& g);

  struct SlotKey {
    Exponents x;
    int t = 0;
    int c = 0;
    int s = 0;
    friend auto operator<=>(const SlotKey&, const SlotKey&) = default;
  };

private:
  using SlotPair = std::pair<SlotKey, SlotKey>;
  using BiFunction = std::map<SlotPair, CoeffFunction>;
  using SlotImage = std::vector<std::pair<SlotKey, CoeffFunction>>;

  std::vector<std::pair<SlotKey, CoeffFunction>> split(const SpaceFunction& f) const;
  SpaceFunction slot_function(const SlotKey& k) const;
  const SlotImage& act(int gen, const SlotKey& k);
  BiFunction step(const BiFunction& x);
  const StarResult& star_monomials(const SlotKey& a, const SlotKey& b);

  LieAlgebra alg_;
  Representation rep_;
  RMatrix r_;
  int max_order_;
  std::map<std::pair<int, SlotKey>, SlotImage> action_cache_;
  std::map<SlotPair, StarResult> star_cache_;
};

/// Antisymmetric table [x_mu, x_nu]_* for mu < nu over (t, x1..xd).
struct CommTable {
  int twist = 0;
  std::string algebra;
  Geometry geometry = Geometry::flat;
  int dim = 3;
  std::map<std::pair<int, int>, SpaceFunction> entries;

  friend bool operator==(const CommTable&, const CommTable&) = default;
};

/// "t", "x1", ...
std::string coordinate_name(int index);

CommTable spacetime_table(TwistedAlgebra& tw);
CommTable spacetime_table(const TwistSpec& spec);

struct DegreeClassification {
  std::map<std::pair<int, int>, int> degrees;  // nonzero entries only
  std::optional<int> n;                        // empty: commutative
};

/// Joint (t, x) polynomial degree of the entries.  Flat tables only
/// (GeometryError otherwise); InhomogeneousError on mixed degrees.
DegreeClassification classify_degree(const CommTable& table);

/// [x_mu, x_nu] -> reflected both sides: rhs must pick up s_mu * s_nu.
bool reflection_invariant(const CommTable& table, Reflection which);

/// Every beta set to zero.
CommTable drop_betas(const CommTable& table);

/// Components by total beta degree 0..N.
struct GradedSeries {
  int arity = 1;
  std::vector<TensorPoly> components;
  bool exact = false;
  /// Degree of the first identically vanishing term of the generating series
  /// (coproduct) or 0 when exactness comes from a structural argument.
  int witness = -1;

  TensorPoly sum() const;
};

/// Delta(a) = sum_n i^n/n! ad_r^n (Delta0 a) through beta degree N.
GradedSeries twisted_coproduct(const LieAlgebra& alg, const RMatrix& r, int gen, int order);

/// u = m(id (x) S0)(F) through beta degree N.
TensorPoly twist_u(const LieAlgebra& alg, const RMatrix& r, int order);

/// S(a) = u S0(a) u^-1 through beta degree N.
GradedSeries twisted_antipode(const LieAlgebra& alg, const RMatrix& r, int gen, int order);

/// F = exp(i r) through beta degree N.
TensorPoly twist_element(const LieAlgebra& alg, const RMatrix& r, int order);

struct CocycleReport {
  /// F12 (Delta0 (x) 1)F - F23 (1 (x) Delta0)F, per beta degree 0..N.
  std::vector<TensorPoly> differences;
  bool left_normalized = false;   // (eps (x) 1)F = 1
  bool right_normalized = false;  // (1 (x) eps)F = 1

  bool cocycle_holds() const;
  bool passed() const { return cocycle_holds() && left_normalized && right_normalized; }
};

CocycleReport check_cocycle(const LieAlgebra& alg, const RMatrix& r, int order);

struct HopfAxiomFailure {
  std::string axiom;  // coassociativity | counit | antipode
  int generator;
  TensorPoly defect;
};

struct HopfReport {
  std::vector<HopfAxiomFailure> failures;
  /// Exactness flag of the twisted coproduct of each generator.
  std::vector<bool> coproduct_exact;

  bool passed() const { return failures.empty(); }
};

/// Coassociativity, both counit laws and both antipode laws for the twisted
/// coproduct / antipode of every generator, through beta degree N.
HopfReport check_hopf_axioms(const LieAlgebra& alg, const RMatrix& r, int order);

} // namespace nhtwist
