#pragma once

// Exact coefficient ring: Gaussian rationals extended by formal deformation
// parameters (beta symbols), Laurent powers of tau, polynomial t and the
// geometry functions C = C(t/tau), S = S(t/tau).

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nhtwist {

using Rational = mpq_class;

/// re + im*i with exact rationals.
struct Scalar {
  Rational re{0};
  Rational im{0};

  Scalar() = default;
  Scalar(long v) : re(v) {}                           // NOLINT(implicit)
  Scalar(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static Scalar imag_unit() { return Scalar(0, 1); }
  static Scalar fraction(long num, long den);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Rational& q);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// i^n for any integer n.
Scalar imag_power(int n);

/// Prints `a+bi` style with exact fractions: "3/2", "-i", "(1/2+3*i)".
std::string to_string(const Scalar& s);

enum class Geometry : std::uint8_t { hyperbolic, trigonometric, flat };

std::string_view to_string(Geometry g);
Geometry parse_geometry(std::string_view s);

/// Interned name of a formal deformation parameter.  Ids are process-local;
/// canonical ordering always goes through the name.
class Symbol {
public:
  Symbol() = default;
  static Symbol intern(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const { return id_; }

  friend auto operator<=>(Symbol, Symbol) = default;

private:
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

/// Sorted by symbol id; exponents strictly positive.
using BetaMonomial = std::vector<std::pair<Symbol, int>>;

BetaMonomial beta_multiply(const BetaMonomial& a, const BetaMonomial& b);
int beta_degree(const BetaMonomial& b);

struct CoeffMonomial {
  BetaMonomial beta;
  int tau = 0;  // Laurent exponent
  int t = 0;
  int c = 0;
  int s = 0;    // 0 or 1 after normalization

  friend auto operator<=>(const CoeffMonomial&, const CoeffMonomial&) = default;
};

/// Rendering order: beta exponent vector (by symbol name), tau, t, C, S.
std::strong_ordering canonical_compare(const CoeffMonomial& a, const CoeffMonomial& b);

CoeffMonomial operator*(const CoeffMonomial& a, const CoeffMonomial& b);

class CoeffFunction {
public:
  using Terms = std::map<CoeffMonomial, Scalar>;

  explicit CoeffFunction(Geometry g = Geometry::flat) : geometry_(g) {}

  static CoeffFunction constant(Geometry g, const Scalar& v);
  static CoeffFunction monomial(Geometry g, const CoeffMonomial& m, const Scalar& v = Scalar(1));
  static CoeffFunction tau(Geometry g, int exponent = 1);
  static CoeffFunction time(Geometry g, int exponent = 1);
  static CoeffFunction cosine(Geometry g);  // C
  static CoeffFunction sine(Geometry g);    // S
  static CoeffFunction beta(Geometry g, std::string_view name);

  Geometry geometry() const { return geometry_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds v*m, rewriting S^2 into the C-form first.
  void add_term(const CoeffMonomial& m, const Scalar& v);

  /// Same ring element, relabelled geometry.  Throws if C/S would end up in flat.
  CoeffFunction with_geometry(Geometry g) const;

  /// Highest total beta degree among the terms, -1 for zero.
  int max_beta_degree() const;
  /// Terms of exactly the given beta degree.
  CoeffFunction beta_component(int degree) const;
  /// Drops all terms above the given beta degree.
  CoeffFunction truncate_beta(int max_degree) const;
  bool is_beta_free() const;

  CoeffFunction operator-() const;
  CoeffFunction& operator+=(const CoeffFunction& o);
  CoeffFunction& operator-=(const CoeffFunction& o);
  CoeffFunction& operator*=(const Scalar& s);

  friend CoeffFunction operator+(CoeffFunction a, const CoeffFunction& b) { return a += b; }
  friend CoeffFunction operator-(CoeffFunction a, const CoeffFunction& b) { return a -= b; }
  friend CoeffFunction operator*(const CoeffFunction& a, const CoeffFunction& b);
  friend CoeffFunction operator*(CoeffFunction a, const Scalar& s) { return a *= s; }
  friend CoeffFunction operator*(const Scalar& s, CoeffFunction a) { return a *= s; }
  friend bool operator==(const CoeffFunction& a, const CoeffFunction& b) {
    return a.geometry_ == b.geometry_ && a.terms_ == b.terms_;
  }

private:
  void check_same_geometry(const CoeffFunction& o) const;

  Geometry geometry_;
  Terms terms_;
};

CoeffFunction power(const CoeffFunction& a, int n);

/// Time derivative with dC = +-S/tau, dS = C/tau.
CoeffFunction d_dt(const CoeffFunction& a);

/// tau -> infinity via the formal Taylor series of C and S in u = t/tau.
/// The result is a flat-geometry function.
CoeffFunction limit_tau_infinity(const CoeffFunction& a);

/// Every beta symbol set to zero.
CoeffFunction drop_betas(const CoeffFunction& a);

/// Canonical text, parseable by the expression grammar.
std::string to_string(const CoeffFunction& a);
std::ostream& operator<<(std::ostream& os, const CoeffFunction& a);

namespace detail {
// Appends one signed term "coef*f1*f2" to a sum being rendered.
void append_term(std::string& out, const Scalar& coef, const std::vector<std::string>& factors);
// "beta1_1_2^2", "tau^-2", "t^3", "C^2", "S" for the non-trivial parts of m.
void monomial_factors(const CoeffMonomial& m, std::vector<std::string>& factors);
} // namespace detail

} // namespace nhtwist
