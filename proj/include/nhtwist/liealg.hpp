#pragma once

// Lie algebras given by sparse structure constants, the acceleration-enlarged
// Newton-Hooke / Galilei catalog, and wedge-form classical r-matrices.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhtwist/coeffring.hpp"

namespace nhtwist {

enum class GenKind : std::uint8_t { M, K, P, F, H, other };

struct Generator {
  GenKind kind = GenKind::other;
  int i = 0;  // 1-based; M uses i < j
  int j = 0;
  std::string name;

  static Generator rotation(int i, int j);
  static Generator boost(int i);
  static Generator translation(int i);
  static Generator acceleration(int i);
  static Generator hamiltonian();
  /// Recognizes M12 / M1_12, K1, P1, F1, H; anything else is kept as `other`.
  static Generator from_name(std::string_view name);

  friend bool operator==(const Generator& a, const Generator& b) { return a.name == b.name; }
};

enum class AlgebraKind : std::uint8_t { nh_plus, nh_minus, galilei_hat };

Geometry geometry_of(AlgebraKind k);
std::string_view to_string(AlgebraKind k);
/// Accepts nh_plus / nh+ / plus, nh_minus / nh- / minus, galilei_hat / galilei / flat.
AlgebraKind parse_algebra_kind(std::string_view s);

/// generator index -> coefficient
using LinComb = std::map<int, CoeffFunction>;

void add_to(LinComb& acc, int gen, const CoeffFunction& c);
void add_to(LinComb& acc, const LinComb& x, const CoeffFunction& scale);
bool is_zero(const LinComb& x);

class LieAlgebra {
public:
  LieAlgebra(std::string name, Geometry g, int dim, std::vector<Generator> gens);

  const std::string& name() const { return name_; }
  Geometry geometry() const { return geometry_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(int idx) const { return gens_.at(idx); }

  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;  // throws IndexError

  /// Sets [a, b] (and implicitly [b, a] = -[a, b]).
  void set_bracket(int a, int b, const LinComb& value);
  const LinComb& bracket(int a, int b) const;
  LinComb bracket(const LinComb& x, const LinComb& y) const;

  /// Nonzero brackets with a < b, the stored structure constants.
  std::map<std::pair<int, int>, LinComb> structure() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b);

private:
  std::string name_;
  Geometry geometry_;
  int dim_;
  std::vector<Generator> gens_;
  std::vector<LinComb> table_;  // size() x size(), antisymmetric
};

/// Full bracket table; [H, P_i] = +-(i/tau^2) K_i for NH, 0 for the flat case.
LieAlgebra make_algebra(AlgebraKind kind, int dim = 3);

struct JacobiViolation {
  int a, b, c;
  LinComb value;
};

/// [a,[b,c]] + [b,[c,a]] + [c,[a,b]] over all triples a < b < c.
std::vector<JacobiViolation> check_jacobi(const LieAlgebra& alg);

struct TwistIndices {
  std::array<int, 3> mkl{3, 1, 2};  // twists 4, 8, 9
  std::array<int, 2> ij{1, 2};      // twist 10
};

/// coeff * (a wedge b), a wedge b = a (x) b - b (x) a.
struct WedgeTerm {
  CoeffFunction coeff;
  int a;
  int b;
};

class RMatrix {
public:
  RMatrix() = default;
  RMatrix(int id, std::vector<WedgeTerm> terms);

  int id() const { return id_; }
  const std::vector<WedgeTerm>& terms() const { return terms_; }
  /// Distinct generators appearing in any wedge.
  std::vector<int> carriers() const;
  /// All beta symbols, in order of first appearance.
  std::vector<std::string> parameters() const;

private:
  int id_ = 0;
  std::vector<WedgeTerm> terms_;
};

/// Pairs of carriers with a nonzero bracket.
std::vector<std::pair<int, int>> non_commuting_carriers(const RMatrix& r, const LieAlgebra& alg);

/// Catalog r-matrix 1..10 with independent beta components (k < l).
/// Throws IndexError on bad fixed indices, NonAbelianCarrierError if the
/// carriers fail to commute in `alg`.
RMatrix make_rmatrix(int id, const TwistIndices& idx, const LieAlgebra& alg);

/// Builds an r-matrix from explicit wedges, orienting and merging terms.
RMatrix make_rmatrix(int id, const std::vector<WedgeTerm>& raw, const LieAlgebra& alg);

/// Human-readable catalog formula, e.g. "1/2 beta5^{kl} P_k ^ P_l".
std::string_view rmatrix_formula(int id);

std::string beta_name(int twist, int k, int l);
std::string beta_name(int twist);

std::string to_string(const LinComb& x, const LieAlgebra& alg);

} // namespace nhtwist
