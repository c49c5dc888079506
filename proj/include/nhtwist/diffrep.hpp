#pragma once

// First-order differential operators realizing the algebra on functions
// of (t, x1..xd).

#include <optional>
#include <string>
#include <vector>

#include "nhtwist/funcspace.hpp"
#include "nhtwist/liealg.hpp"

namespace nhtwist {

class Representation {
public:
  Representation(Geometry g, int dim, std::vector<DiffOp> images);

  Geometry geometry() const { return geometry_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(images_.size()); }
  const DiffOp& image(int gen) const { return images_.at(gen); }
  const std::vector<DiffOp>& images() const { return images_; }

  /// Image of a linear combination of generators.
  DiffOp image(const LinComb& x) const;

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.geometry_ == b.geometry_ && a.dim_ == b.dim_ && a.images_ == b.images_;
  }

private:
  Geometry geometry_;
  int dim_;
  std::vector<DiffOp> images_;
};

/// Standard image of a single generator, chosen by its kind:
///   H = i d_t, P_i = i C d_i, K_i = i tau S d_i, M_ij = i(x_i d_j - x_j d_i),
///   F_i = +-2 i tau^2 (C - 1) d_i; flat: P = i d, K = i t d, F = i t^2 d.
/// Throws StructureError for generators of unknown kind.
DiffOp standard_image(const Generator& g, Geometry geom, int dim);

Representation make_representation(const LieAlgebra& alg);

struct RepresentationViolation {
  int a;
  int b;
  DiffOp lhs;  // [rho(a), rho(b)]
  DiffOp rhs;  // rho([a, b])
};

/// All unordered pairs a < b.
std::vector<RepresentationViolation> check_representation(const Representation& rep,
                                                          const LieAlgebra& alg);

} // namespace nhtwist
