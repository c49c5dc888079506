#pragma once

// Versioned JSON documents: algebra definition files (.alg) and commutator
// tables.  Expression payloads use the grammar of exprio.hpp.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nhtwist/diffrep.hpp"
#include "nhtwist/liealg.hpp"
#include "nhtwist/twist.hpp"

namespace nhtwist {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct LoadedAlgebra {
  LieAlgebra algebra;
  std::optional<Representation> representation;
  std::vector<RMatrix> twists;
};

/// Parses and verifies (Jacobi, representation, Abelian carriers).
/// Throws SyntaxError on malformed input, VerificationError on failed checks.
LoadedAlgebra load_algebra(std::string_view text);
LoadedAlgebra load_algebra_file(const std::filesystem::path& path);

/// Canonical document; twists are written as explicit wedge lists.
std::string export_algebra(const LieAlgebra& alg, const Representation* rep,
                           const std::vector<RMatrix>& twists);

/// "plus", "minus" or "none" for the flat geometry.
std::string_view sign_name(Geometry g);

Json table_to_json(const CommTable& table, const TwistIndices& indices);
CommTable table_from_json(const Json& doc);

/// Standalone LaTeX document.  Tables of the form X beta^{ab} are written in
/// the compact delta notation.
std::string table_to_latex(const CommTable& table);

/// Human-readable listing, one bracket per line.
std::string table_to_text(const CommTable& table);

std::string read_text_file(const std::filesystem::path& path);

/// $NHTWIST_FIXTURES if set, otherwise the fixtures directory of the source tree.
std::filesystem::path fixture_dir();
/// golden/<algebra>_twist<id>.json
std::filesystem::path golden_path(std::string_view algebra, int twist);

struct GoldenComparison {
  Json document;
  CommTable golden;
  /// Entries whose derived rhs differs from the fixture.
  std::vector<std::pair<int, int>> mismatched;

  bool matches() const { return mismatched.empty(); }
};

/// Loads the fixture for (table.algebra, table.twist) and compares entry-wise.
GoldenComparison compare_with_golden(const CommTable& derived);

} // namespace nhtwist
