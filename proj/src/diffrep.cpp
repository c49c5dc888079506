#include "nhtwist/diffrep.hpp"

#include "nhtwist/errors.hpp"

namespace nhtwist {

Representation::Representation(Geometry g, int dim, std::vector<DiffOp> images)
    : geometry_(g), dim_(dim), images_(std::move(images)) {
  for (const auto& op : images_) {
    if (op.geometry() != g || op.dim() != dim) {
      throw StructureError("representation image has the wrong geometry or dimension");
    }
  }
}

DiffOp Representation::image(const LinComb& x) const {
  DiffOp out(dim_, geometry_);
  for (const auto& [g, c] : x) out += c * image(g);
  return out;
}

DiffOp standard_image(const Generator& g, Geometry geom, int dim) {
  const CoeffFunction i = CoeffFunction::constant(geom, Scalar::imag_unit());
  const bool flat = geom == Geometry::flat;
  auto d = [&](int idx) { return DiffOp::partial(dim, geom, idx); };
  auto check = [&](int idx) {
    if (idx < 1 || idx > dim) throw IndexError("generator index exceeds the dimension");
  };
  switch (g.kind) {
  case GenKind::H:
    return i * d(0);
  case GenKind::P:
    check(g.i);
    return flat ? i * d(g.i) : (i * CoeffFunction::cosine(geom)) * d(g.i);
  case GenKind::K:
    check(g.i);
    if (flat) return (i * CoeffFunction::time(geom)) * d(g.i);
    return (i * CoeffFunction::tau(geom) * CoeffFunction::sine(geom)) * d(g.i);
  case GenKind::F: {
    check(g.i);
    if (flat) return (i * CoeffFunction::time(geom, 2)) * d(g.i);
    const long sign = geom == Geometry::hyperbolic ? 2 : -2;
    const CoeffFunction c = CoeffFunction::tau(geom, 2) *
                            (CoeffFunction::cosine(geom) -
                             CoeffFunction::constant(geom, Scalar(1))) *
                            Scalar(0, sign);
    return c * d(g.i);
  }
  case GenKind::M: {
    check(g.i);
    check(g.j);
    const auto xi = SpaceFunction::coordinate(dim, geom, g.i);
    const auto xj = SpaceFunction::coordinate(dim, geom, g.j);
    DiffOp op = compose(DiffOp::multiplication(xi), d(g.j)) -
                compose(DiffOp::multiplication(xj), d(g.i));
    return op * Scalar::imag_unit();
  }
  case GenKind::other:
    break;
  }
  throw StructureError("no standard image for generator " + g.name);
}

Representation make_representation(const LieAlgebra& alg) {
  std::vector<DiffOp> images;
  images.reserve(alg.size());
  for (const auto& g : alg.generators()) {
    images.push_back(standard_image(g, alg.geometry(), alg.dim()));
  }
  return Representation(alg.geometry(), alg.dim(), std::move(images));
}

std::vector<RepresentationViolation> check_representation(const Representation& rep,
                                                          const LieAlgebra& alg) {
  if (rep.size() != alg.size() || rep.geometry() != alg.geometry() || rep.dim() != alg.dim()) {
    throw StructureError("representation does not match the algebra");
  }
  std::vector<RepresentationViolation> out;
  for (int a = 0; a < alg.size(); ++a) {
    for (int b = a + 1; b < alg.size(); ++b) {
      DiffOp lhs = bracket(rep.image(a), rep.image(b));
      DiffOp rhs = rep.image(alg.bracket(a, b));
      if (!(lhs == rhs)) out.push_back({a, b, std::move(lhs), std::move(rhs)});
    }
  }
  return out;
}

} // namespace nhtwist
