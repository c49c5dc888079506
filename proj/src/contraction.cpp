#include "nhtwist/contraction.hpp"

#include "nhtwist/errors.hpp"

namespace nhtwist {

std::string_view to_string(ContractionKind k) {
  switch (k) {
  case ContractionKind::tau_to_infinity: return "tau-infinity";
  case ContractionKind::f_to_zero: return "f-zero";
  case ContractionKind::both: return "both";
  }
  return "";
}

ContractionKind parse_contraction_kind(std::string_view s) {
  if (s == "tau-infinity" || s == "tau_to_infinity" || s == "tau") {
    return ContractionKind::tau_to_infinity;
  }
  if (s == "f-zero" || s == "f_to_zero" || s == "f") return ContractionKind::f_to_zero;
  if (s == "both") return ContractionKind::both;
  throw IndexError("unknown contraction '" + std::string(s) + "'");
}

bool survives_f_to_zero(int twist_id) { return twist_id >= 5 && twist_id <= 10; }

namespace {

std::string contracted_name(const std::string& name, ContractionKind kind) {
  if (kind == ContractionKind::tau_to_infinity) {
    if (name == "nh_plus" || name == "nh_minus") return "galilei_hat";
    return name + "_tau_inf";
  }
  if (name == "nh_plus" || name == "nh_minus") return name + "_ordinary";
  if (name == "galilei_hat") return "galilei";
  return name + "_f0";
}

LieAlgebra tau_limit(const LieAlgebra& alg) {
  if (alg.geometry() == Geometry::flat) {
    throw GeometryError("tau -> infinity needs a Newton-Hooke algebra");
  }
  LieAlgebra out(contracted_name(alg.name(), ContractionKind::tau_to_infinity), Geometry::flat,
                 alg.dim(), alg.generators());
  for (const auto& [pair, value] : alg.structure()) {
    LinComb limit;
    for (const auto& [g, c] : value) add_to(limit, g, limit_tau_infinity(c));
    out.set_bracket(pair.first, pair.second, limit);
  }
  return out;
}

std::vector<int> kept_generators(const LieAlgebra& alg) {
  std::vector<int> kept;
  for (int a = 0; a < alg.size(); ++a) {
    if (alg.generator(a).kind != GenKind::F) kept.push_back(a);
  }
  return kept;
}

LieAlgebra drop_accelerations(const LieAlgebra& alg) {
  const auto kept = kept_generators(alg);
  std::vector<Generator> gens;
  std::vector<int> renumber(alg.size(), -1);
  for (int a : kept) {
    renumber[a] = static_cast<int>(gens.size());
    gens.push_back(alg.generator(a));
  }
  LieAlgebra out(contracted_name(alg.name(), ContractionKind::f_to_zero), alg.geometry(),
                 alg.dim(), gens);
  for (const auto& [pair, value] : alg.structure()) {
    const int a = renumber[pair.first];
    const int b = renumber[pair.second];
    if (a < 0 || b < 0) continue;
    LinComb mapped;
    for (const auto& [g, c] : value) {
      if (renumber[g] < 0) throw StructureError("bracket of non-F generators produces F");
      add_to(mapped, renumber[g], c);
    }
    out.set_bracket(a, b, mapped);
  }
  return out;
}

} // namespace

LieAlgebra contract_algebra(const LieAlgebra& alg, ContractionKind kind) {
  switch (kind) {
  case ContractionKind::tau_to_infinity: return tau_limit(alg);
  case ContractionKind::f_to_zero: return drop_accelerations(alg);
  case ContractionKind::both: return drop_accelerations(tau_limit(alg));
  }
  throw StructureError("unknown contraction");
}

Representation contract_representation(const Representation& rep, const LieAlgebra& alg,
                                       ContractionKind kind) {
  if (rep.size() != alg.size()) throw StructureError("representation does not match algebra");
  std::vector<DiffOp> images = rep.images();
  Geometry g = rep.geometry();
  if (kind != ContractionKind::f_to_zero) {
    if (g == Geometry::flat) throw GeometryError("tau -> infinity needs a Newton-Hooke algebra");
    for (auto& op : images) {
      op = map_coefficients(op, [](const CoeffFunction& c) { return limit_tau_infinity(c); });
    }
    g = Geometry::flat;
  }
  if (kind != ContractionKind::tau_to_infinity) {
    std::vector<DiffOp> kept;
    for (int a : kept_generators(alg)) kept.push_back(std::move(images[a]));
    images = std::move(kept);
  }
  return Representation(g, rep.dim(), std::move(images));
}

CommTable contract_table(const CommTable& table, ContractionKind kind) {
  CommTable out = table;
  if (kind != ContractionKind::tau_to_infinity) {
    if (!survives_f_to_zero(table.twist)) {
      throw StructureError("twist " + std::to_string(table.twist) +
                           " involves F_i and does not survive F -> 0");
    }
  }
  if (kind != ContractionKind::f_to_zero) {
    if (table.geometry == Geometry::flat) {
      throw GeometryError("tau -> infinity needs a Newton-Hooke table");
    }
    for (auto& [pair, rhs] : out.entries) {
      rhs = map_coefficients(rhs, [](const CoeffFunction& c) { return limit_tau_infinity(c); });
    }
    out.geometry = Geometry::flat;
  }
  out.algebra = contracted_name(table.algebra, kind == ContractionKind::both
                                                   ? ContractionKind::tau_to_infinity
                                                   : kind);
  if (kind == ContractionKind::both) {
    out.algebra = contracted_name(out.algebra, ContractionKind::f_to_zero);
  }
  return out;
}

std::vector<SquareMismatch> check_commuting_square(const TwistSpec& spec) {
  if (spec.kind == AlgebraKind::galilei_hat) {
    throw GeometryError("commuting square starts from a Newton-Hooke algebra");
  }
  const CommTable contracted =
      contract_table(spacetime_table(spec), ContractionKind::tau_to_infinity);
  TwistSpec flat = spec;
  flat.kind = AlgebraKind::galilei_hat;
  const CommTable direct = spacetime_table(flat);
  std::vector<SquareMismatch> out;
  for (const auto& [pair, rhs] : direct.entries) {
    const auto it = contracted.entries.find(pair);
    SpaceFunction lhs = it == contracted.entries.end() ? SpaceFunction(direct.dim, Geometry::flat)
                                                      : it->second;
    if (!(lhs == rhs)) out.push_back({pair, std::move(lhs), rhs});
  }
  return out;
}

} // namespace nhtwist
