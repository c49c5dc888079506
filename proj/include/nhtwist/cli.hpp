#pragma once

// Command-line front end.  Exit codes: 0 success, 1 verification or golden
// failure, 2 usage.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nhtwist/liealg.hpp"

namespace nhtwist::cli {

enum class Format : std::uint8_t { text, json, latex };

struct RunConfig {
  std::string command;
  std::optional<std::string> algebra;       // nh+, nh-, galilei, all
  std::optional<std::string> algebra_file;
  std::optional<std::string> sign;          // plus, minus, none
  std::string twist = "all";
  int dim = 3;
  TwistIndices indices{};
  int order = 4;
  Format format = Format::text;
  std::optional<std::string> out;
  std::vector<std::string> checks;
  std::string generator;
  std::string limit = "tau-infinity";
  bool golden = false;
  bool classify = false;
  bool antipode = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spacetime(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_contract(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_coproduct(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nhtwist::cli
