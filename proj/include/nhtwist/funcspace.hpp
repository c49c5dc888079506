#pragma once

// Polynomials in the spatial coordinates over the coefficient ring, and
// differential operators with coefficients kept left of all derivatives.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nhtwist/coeffring.hpp"

namespace nhtwist {

using Exponents = std::vector<int>;

/// Total degree first, then variable 1 before variable 2 (x1 ahead of x2).
struct DegLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

class SpaceFunction {
public:
  using Terms = std::map<Exponents, CoeffFunction, DegLexLess>;

  explicit SpaceFunction(int dim = 3, Geometry g = Geometry::flat) : dim_(dim), geometry_(g) {}

  static SpaceFunction constant(int dim, const CoeffFunction& c);
  static SpaceFunction constant(int dim, Geometry g, const Scalar& v);
  /// Coordinate 0 is t, coordinates 1..dim are x1..xd.
  static SpaceFunction coordinate(int dim, Geometry g, int index);
  static SpaceFunction monomial(int dim, const Exponents& x, const CoeffFunction& c);

  int dim() const { return dim_; }
  Geometry geometry() const { return geometry_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& x, const CoeffFunction& c);

  SpaceFunction operator-() const;
  SpaceFunction& operator+=(const SpaceFunction& o);
  SpaceFunction& operator-=(const SpaceFunction& o);
  SpaceFunction& operator*=(const Scalar& s);
  SpaceFunction& operator*=(const CoeffFunction& c);

  friend SpaceFunction operator+(SpaceFunction a, const SpaceFunction& b) { return a += b; }
  friend SpaceFunction operator-(SpaceFunction a, const SpaceFunction& b) { return a -= b; }
  friend SpaceFunction operator*(const SpaceFunction& a, const SpaceFunction& b);
  friend SpaceFunction operator*(SpaceFunction a, const Scalar& s) { return a *= s; }
  friend SpaceFunction operator*(const Scalar& s, SpaceFunction a) { return a *= s; }
  friend SpaceFunction operator*(const CoeffFunction& c, SpaceFunction a) { return a *= c; }
  friend bool operator==(const SpaceFunction& a, const SpaceFunction& b) {
    return a.dim_ == b.dim_ && a.geometry_ == b.geometry_ && a.terms_ == b.terms_;
  }

  void check_compatible(const SpaceFunction& o) const;

private:
  int dim_;
  Geometry geometry_;
  Terms terms_;
};

/// Applies fn to every coefficient; fn may change the geometry uniformly.
SpaceFunction map_coefficients(const SpaceFunction& f,
                               const std::function<CoeffFunction(const CoeffFunction&)>& fn);

SpaceFunction partial_t(const SpaceFunction& f);
/// d/dx_i, i in 1..dim.
SpaceFunction partial_x(const SpaceFunction& f, int i);

enum class Reflection { time, space };

/// t -> -t (odd t-degree and S flip sign) or x -> -x (odd x-degree flips).
SpaceFunction reflect(const SpaceFunction& f, Reflection which);

std::string to_string(const SpaceFunction& f);

/// Sum over derivative multi-indices (d_t, d_1..d_dim) of coefficient * d^alpha.
class DiffOp {
public:
  using Terms = std::map<Exponents, SpaceFunction, DegLexLess>;

  explicit DiffOp(int dim = 3, Geometry g = Geometry::flat) : dim_(dim), geometry_(g) {}

  static DiffOp identity(int dim, Geometry g);
  /// index 0 is d_t, 1..dim are d_1..d_dim.
  static DiffOp partial(int dim, Geometry g, int index);
  static DiffOp multiplication(const SpaceFunction& f);

  int dim() const { return dim_; }
  Geometry geometry() const { return geometry_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest derivative order present, -1 for the zero operator.
  int order() const;

  void add_term(const Exponents& derivs, const SpaceFunction& coeff);

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const Scalar& s);
  DiffOp& operator*=(const CoeffFunction& c);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Scalar& s) { return a *= s; }
  friend DiffOp operator*(const Scalar& s, DiffOp a) { return a *= s; }
  friend DiffOp operator*(const CoeffFunction& c, DiffOp a) { return a *= c; }
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return a.dim_ == b.dim_ && a.geometry_ == b.geometry_ && a.terms_ == b.terms_;
  }

  void check_compatible(const DiffOp& o) const;

private:
  int dim_;
  Geometry geometry_;
  Terms terms_;
};

SpaceFunction apply(const DiffOp& op, const SpaceFunction& f);
DiffOp compose(const DiffOp& a, const DiffOp& b);
DiffOp bracket(const DiffOp& a, const DiffOp& b);

/// Coefficient-wise map, e.g. the tau -> infinity limit of an operator.
DiffOp map_coefficients(const DiffOp& op,
                        const std::function<CoeffFunction(const CoeffFunction&)>& fn);

std::string to_string(const DiffOp& op);

} // namespace nhtwist
