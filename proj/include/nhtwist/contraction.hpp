#pragma once

// tau -> infinity (Newton-Hooke -> Galilei) and F_i -> 0 contractions of
// algebras, representations and commutator tables.

#include <string_view>
#include <utility>
#include <vector>

#include "nhtwist/diffrep.hpp"
#include "nhtwist/liealg.hpp"
#include "nhtwist/twist.hpp"

namespace nhtwist {

enum class ContractionKind : std::uint8_t { tau_to_infinity, f_to_zero, both };

std::string_view to_string(ContractionKind k);
/// tau-infinity / tau_to_infinity, f-zero / f_to_zero, both.
ContractionKind parse_contraction_kind(std::string_view s);

/// Twists 5..10 avoid the F_i generators.
bool survives_f_to_zero(int twist_id);

LieAlgebra contract_algebra(const LieAlgebra& alg, ContractionKind kind);

/// Images of the contracted algebra's generators.
Representation contract_representation(const Representation& rep, const LieAlgebra& alg,
                                       ContractionKind kind);

/// f_to_zero only accepts tables of twists 5..10 (StructureError otherwise).
CommTable contract_table(const CommTable& table, ContractionKind kind);

struct SquareMismatch {
  std::pair<int, int> entry;
  SpaceFunction contracted;  // limit of the Newton-Hooke entry
  SpaceFunction direct;      // entry derived over the Galilei algebra
};

/// contract_table(spacetime_table(NH)) against spacetime_table(flat).
std::vector<SquareMismatch> check_commuting_square(const TwistSpec& spec);

} // namespace nhtwist
