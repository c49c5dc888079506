#pragma once

// Tensor powers of the universal enveloping algebra in the PBW basis.
// A basis element of U^{(x)n} is a tuple of PBW monomials, one per slot;
// each monomial is a non-decreasing word of generator indices.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nhtwist/coeffring.hpp"
#include "nhtwist/liealg.hpp"

namespace nhtwist {

/// Slots joined by kSlotSeparator; generator index g is stored as char(g).
using TensorKey = std::string;
inline constexpr char kSlotSeparator = '\xff';

std::vector<std::string_view> split_slots(std::string_view key);
TensorKey join_slots(const std::vector<std::string_view>& slots);

class TensorPoly {
public:
  using Terms = std::map<TensorKey, CoeffFunction>;

  TensorPoly(int arity, Geometry g) : arity_(arity), geometry_(g) {}

  /// 1 (x) 1 (x) ... (x) 1
  static TensorPoly unit(int arity, Geometry g);
  /// Single generator g placed in `slot`, units elsewhere.
  static TensorPoly generator(int arity, Geometry g, int slot, int gen);

  int arity() const { return arity_; }
  Geometry geometry() const { return geometry_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const TensorKey& key, const CoeffFunction& c);

  /// Highest beta degree among coefficients (-1 if zero).
  int max_beta_degree() const;
  TensorPoly beta_component(int degree) const;
  TensorPoly truncate_beta(int max_degree) const;
  TensorPoly map_coefficients(CoeffFunction (*fn)(const CoeffFunction&)) const;

  TensorPoly operator-() const;
  TensorPoly& operator+=(const TensorPoly& o);
  TensorPoly& operator-=(const TensorPoly& o);
  TensorPoly& operator*=(const Scalar& s);
  TensorPoly& operator*=(const CoeffFunction& c);

  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend TensorPoly operator*(TensorPoly a, const Scalar& s) { return a *= s; }
  friend TensorPoly operator*(const Scalar& s, TensorPoly a) { return a *= s; }
  friend bool operator==(const TensorPoly& a, const TensorPoly& b) {
    return a.arity_ == b.arity_ && a.geometry_ == b.geometry_ && a.terms_ == b.terms_;
  }

private:
  void check(const TensorPoly& o) const;

  int arity_;
  Geometry geometry_;
  Terms terms_;
};

/// PBW normal ordering and the Hopf-algebra maps of U(g) with primitive
/// coproduct.  Holds a product cache, so one instance per thread.
class Enveloping {
public:
  explicit Enveloping(const LieAlgebra& alg) : alg_(&alg) {}

  const LieAlgebra& algebra() const { return *alg_; }
  Geometry geometry() const { return alg_->geometry(); }

  /// Rewrites an arbitrary word into the PBW basis (arity-1 result).
  const TensorPoly& normal_order(const std::string& word);

  /// Slot-wise product; terms above `max_beta` total degree are dropped
  /// (max_beta < 0 keeps everything).
  TensorPoly multiply(const TensorPoly& a, const TensorPoly& b, int max_beta = -1);
  TensorPoly commutator(const TensorPoly& a, const TensorPoly& b, int max_beta = -1);

  /// sum_n factor^n / n! x^n through beta degree max_beta.
  TensorPoly exp_series(const TensorPoly& x, const Scalar& factor, int max_beta);

  /// Wedge expansion of r in U (x) U.
  TensorPoly from_rmatrix(const RMatrix& r) const;

  /// Places a tensor of arity k into the given slots of an arity-n tensor,
  /// filling the rest with units (r -> r_12, r_13, r_23, F -> F_12, ...).
  static TensorPoly embed(const TensorPoly& x, const std::vector<int>& slots, int arity);

  /// Primitive coproduct applied to one slot (arity grows by one).
  static TensorPoly coproduct0(const TensorPoly& x, int slot);
  /// Counit applied to one slot (arity shrinks by one).
  static TensorPoly counit(const TensorPoly& x, int slot);
  /// S0(g) = -g extended as an anti-automorphism, applied to one slot.
  TensorPoly antipode0(const TensorPoly& x, int slot);
  /// Multiplies adjacent slots `slot` and `slot + 1`.
  TensorPoly multiply_slots(const TensorPoly& x, int slot, int max_beta = -1);

private:
  const TensorPoly& monomial_product(const std::string& u, const std::string& v);

  const LieAlgebra* alg_;
  std::map<std::string, TensorPoly> ordered_;
};

/// [r12, r13] + [r12, r23] + [r13, r23]; zero iff r solves the CYBE.
TensorPoly schouten_cybe(const RMatrix& r, const LieAlgebra& alg);

/// Canonical text: "coef*(K1*P2 (x) H) + ...", units printed as 1.
std::string to_string(const TensorPoly& x, const LieAlgebra& alg);

} // namespace nhtwist
