#include "nhtwist/cli.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nhtwist/contraction.hpp"
#include "nhtwist/documents.hpp"
#include "nhtwist/errors.hpp"
#include "nhtwist/exprio.hpp"
#include "nhtwist/tensor.hpp"
#include "nhtwist/twist.hpp"

namespace nhtwist::cli {

namespace {

class UsageError : public Error {
public:
  using Error::Error;
};

const std::vector<std::string> kAllChecks = {"jacobi", "representation", "abelian",  "cybe",
                                             "cocycle", "normalization", "hopf-axioms"};
const std::vector<std::string> kDefaultChecks = {"jacobi", "representation", "abelian", "cybe",
                                                 "normalization"};

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (!cfg.out) {
    out << text;
    return;
  }
  std::ofstream file(*cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + *cfg.out);
  file << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::vector<AlgebraKind> selected_kinds(const RunConfig& cfg, bool allow_all) {
  std::optional<AlgebraKind> from_sign;
  if (cfg.sign) {
    if (*cfg.sign == "plus") from_sign = AlgebraKind::nh_plus;
    else if (*cfg.sign == "minus") from_sign = AlgebraKind::nh_minus;
    else if (*cfg.sign == "none") from_sign = AlgebraKind::galilei_hat;
    else throw UsageError("--sign must be plus, minus or none");
  }
  if (cfg.algebra && *cfg.algebra == "all") {
    if (!allow_all) throw UsageError("this command takes a single algebra");
    if (from_sign) return {*from_sign};
    return {AlgebraKind::nh_plus, AlgebraKind::nh_minus, AlgebraKind::galilei_hat};
  }
  if (cfg.algebra) {
    const AlgebraKind k = parse_algebra_kind(*cfg.algebra);
    if (from_sign && *from_sign != k) throw UsageError("--sign contradicts --algebra");
    return {k};
  }
  if (from_sign) return {*from_sign};
  if (allow_all) return {AlgebraKind::nh_plus, AlgebraKind::nh_minus, AlgebraKind::galilei_hat};
  return {AlgebraKind::nh_plus};
}

AlgebraKind single_kind(const RunConfig& cfg) { return selected_kinds(cfg, false).front(); }

std::vector<int> selected_twists(const RunConfig& cfg) {
  if (cfg.twist == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int id = 0;
  try {
    std::size_t used = 0;
    id = std::stoi(cfg.twist, &used);
    if (used != cfg.twist.size()) id = 0;
  } catch (const std::exception&) {
    id = 0;
  }
  if (id < 1 || id > 10) throw UsageError("--twist must be 1..10 or all");
  return {id};
}

int single_twist(const RunConfig& cfg) {
  if (cfg.twist == "all") throw UsageError("this command takes a single --twist");
  return selected_twists(cfg).front();
}

bool is_default_indices(const TwistIndices& idx) {
  const TwistIndices d{};
  return idx.mkl == d.mkl && idx.ij == d.ij;
}

// ---------------------------------------------------------------- verify

struct CheckResult {
  std::string check;
  std::string algebra;
  int twist = 0;  // 0: algebra-level check
  bool passed = true;
  std::string counterexample;
};

struct Subject {
  LieAlgebra algebra;
  std::optional<Representation> representation;
  std::vector<RMatrix> twists;
};

bool wants(const std::vector<std::string>& checks, const std::string& name) {
  return std::find(checks.begin(), checks.end(), name) != checks.end();
}

std::vector<CheckResult> twist_checks(const LieAlgebra& alg, const RMatrix& r,
                                      const std::vector<std::string>& checks, int order) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool ok, std::string why) {
    out.push_back({name, alg.name(), r.id(), ok, ok ? std::string() : std::move(why)});
  };
  if (wants(checks, "abelian")) {
    const auto bad = non_commuting_carriers(r, alg);
    std::string why;
    if (!bad.empty()) {
      why = "[" + alg.generator(bad.front().first).name + ", " +
            alg.generator(bad.front().second).name + "] = " +
            to_string(alg.bracket(bad.front().first, bad.front().second), alg);
    }
    add("abelian", bad.empty(), why);
  }
  if (wants(checks, "cybe")) {
    const TensorPoly s = schouten_cybe(r, alg);
    add("cybe", s.is_zero(), s.is_zero() ? "" : to_string(s, alg));
  }
  if (wants(checks, "cocycle") || wants(checks, "normalization")) {
    if (wants(checks, "cocycle")) {
      const CocycleReport rep = check_cocycle(alg, r, order);
      std::string why;
      for (std::size_t n = 0; n < rep.differences.size(); ++n) {
        if (!rep.differences[n].is_zero()) {
          why = "degree " + std::to_string(n) + ": " + to_string(rep.differences[n], alg);
          break;
        }
      }
      add("cocycle", rep.cocycle_holds(), why);
      if (wants(checks, "normalization")) {
        add("normalization", rep.left_normalized && rep.right_normalized,
            std::string(rep.left_normalized ? "" : "(eps (x) 1)F != 1 ") +
                (rep.right_normalized ? "" : "(1 (x) eps)F != 1"));
      }
    } else {
      const TensorPoly f = twist_element(alg, r, order);
      const TensorPoly one = TensorPoly::unit(1, alg.geometry());
      const TensorPoly left = Enveloping::counit(f, 0);
      const TensorPoly right = Enveloping::counit(f, 1);
      add("normalization", left == one && right == one,
          "(eps (x) 1)F = " + to_string(left, alg) + ", (1 (x) eps)F = " + to_string(right, alg));
    }
  }
  if (wants(checks, "hopf-axioms")) {
    const HopfReport rep = check_hopf_axioms(alg, r, order);
    std::string why;
    if (!rep.failures.empty()) {
      const auto& f = rep.failures.front();
      why = f.axiom + " on " + alg.generator(f.generator).name + ": " + to_string(f.defect, alg);
    }
    add("hopf-axioms", rep.passed(), why);
  }
  return out;
}

std::vector<CheckResult> algebra_checks(const Subject& s, const std::vector<std::string>& checks) {
  std::vector<CheckResult> out;
  const LieAlgebra& alg = s.algebra;
  if (wants(checks, "jacobi")) {
    const auto bad = check_jacobi(alg);
    std::string why;
    if (!bad.empty()) {
      const auto& v = bad.front();
      why = "(" + alg.generator(v.a).name + ", " + alg.generator(v.b).name + ", " +
            alg.generator(v.c).name + "): " + to_string(v.value, alg);
    }
    out.push_back({"jacobi", alg.name(), 0, bad.empty(), why});
  }
  if (wants(checks, "representation") && s.representation) {
    const auto bad = check_representation(*s.representation, alg);
    std::string why;
    if (!bad.empty()) {
      const auto& v = bad.front();
      why = "[" + alg.generator(v.a).name + ", " + alg.generator(v.b).name +
            "]: " + to_string(v.lhs) + " != " + to_string(v.rhs);
    }
    out.push_back({"representation", alg.name(), 0, bad.empty(), why});
  }
  return out;
}

int report_verification(const RunConfig& cfg, std::ostream& out,
                        const std::vector<CheckResult>& results) {
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  if (cfg.format == Format::json) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["document"] = "verification_report";
    doc["order"] = cfg.order;
    doc["passed"] = ok;
    Json arr = Json::array();
    for (const auto& r : results) {
      Json e;
      e["check"] = r.check;
      e["algebra"] = r.algebra;
      if (r.twist > 0) e["twist"] = r.twist;
      e["passed"] = r.passed;
      if (!r.passed) e["counterexample"] = r.counterexample;
      arr.push_back(e);
    }
    doc["checks"] = arr;
    emit(cfg, out, dump(doc));
  } else {
    std::ostringstream ss;
    for (const auto& r : results) {
      ss << (r.passed ? "PASS " : "FAIL ") << r.check << " " << r.algebra;
      if (r.twist > 0) ss << " twist " << r.twist;
      if (!r.passed) ss << ": " << r.counterexample;
      ss << "\n";
    }
    ss << (ok ? "all checks passed" : "verification failed") << "\n";
    emit(cfg, out, ss.str());
  }
  return ok ? kExitOk : kExitFailure;
}

// ------------------------------------------------------------- spacetime

std::string format_classification(const DegreeClassification& c) {
  return c.n ? "n=" + std::to_string(*c.n) : std::string("n=none (commutative)");
}

Json classification_json(const DegreeClassification& c) {
  Json j;
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  Json degrees = Json::array();
  for (const auto& [pair, deg] : c.degrees) {
    degrees.push_back({{"lhs", {coordinate_name(pair.first), coordinate_name(pair.second)}},
                       {"degree", deg}});
  }
  j["degrees"] = degrees;
  return j;
}

std::string series_text(const GradedSeries& s, const LieAlgebra& alg, int order) {
  std::ostringstream ss;
  for (std::size_t n = 0; n < s.components.size(); ++n) {
    ss << "  [" << n << "] " << to_string(s.components[n], alg) << "\n";
  }
  ss << "  " << (s.exact ? "exact" : "truncated-at-" + std::to_string(order));
  if (s.exact && s.witness > 0) ss << " (term " << s.witness << " vanishes)";
  ss << "\n";
  return ss.str();
}

Json series_json(const GradedSeries& s, const LieAlgebra& alg, int order) {
  Json j;
  Json comps = Json::array();
  for (const auto& c : s.components) comps.push_back(to_string(c, alg));
  j["components"] = comps;
  j["exact"] = s.exact;
  j["flag"] = s.exact ? std::string("exact") : "truncated-at-" + std::to_string(order);
  if (s.exact) j["witness"] = s.witness;
  return j;
}

} // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> checks = cfg.checks.empty() ? kDefaultChecks : cfg.checks;
  if (checks.size() == 1 && checks.front() == "all") checks = kAllChecks;
  for (const auto& c : checks) {
    if (!wants(kAllChecks, c)) throw UsageError("unknown check '" + c + "'");
  }
  if (cfg.order < 0) throw UsageError("--order must be non-negative");

  std::vector<Subject> subjects;
  if (cfg.algebra_file) {
    std::optional<LoadedAlgebra> loaded;
    try {
      loaded = load_algebra_file(*cfg.algebra_file);
    } catch (const VerificationError& e) {
      CheckResult r{"load", *cfg.algebra_file, 0, false, e.what()};
      return report_verification(cfg, out, {r});
    }
    std::vector<RMatrix> twists;
    const auto wanted = selected_twists(cfg);
    for (auto& r : loaded->twists) {
      if (std::find(wanted.begin(), wanted.end(), r.id()) != wanted.end()) twists.push_back(r);
    }
    subjects.push_back({loaded->algebra, loaded->representation, twists});
  } else {
    for (AlgebraKind k : selected_kinds(cfg, true)) {
      LieAlgebra alg = make_algebra(k, cfg.dim);
      std::vector<RMatrix> twists;
      for (int id : selected_twists(cfg)) twists.push_back(make_rmatrix(id, cfg.indices, alg));
      Representation rep = make_representation(alg);
      subjects.push_back({std::move(alg), std::move(rep), std::move(twists)});
    }
  }

  std::vector<CheckResult> results;
  std::vector<std::future<std::vector<CheckResult>>> jobs;
  for (const auto& s : subjects) {
    auto part = algebra_checks(s, checks);
    results.insert(results.end(), part.begin(), part.end());
    for (const auto& r : s.twists) {
      jobs.push_back(std::async(std::launch::async, [&s, &r, &checks, order = cfg.order] {
        return twist_checks(s.algebra, r, checks, order);
      }));
    }
  }
  for (auto& j : jobs) {
    auto part = j.get();
    results.insert(results.end(), part.begin(), part.end());
  }
  (void)err;
  return report_verification(cfg, out, results);
}

int cmd_spacetime(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const TwistSpec spec{single_twist(cfg), single_kind(cfg), cfg.indices, cfg.dim};
  const CommTable table = spacetime_table(spec);

  std::optional<DegreeClassification> cls;
  if (cfg.classify) {
    if (table.geometry != Geometry::flat) {
      throw UsageError("--classify needs the flat algebra (--algebra galilei)");
    }
    cls = classify_degree(table);
  }

  std::optional<GoldenComparison> golden;
  if (cfg.golden) {
    if (cfg.dim != 3 || !is_default_indices(cfg.indices)) {
      throw UsageError("golden fixtures exist only for d=3 with the default indices");
    }
    golden = compare_with_golden(table);
  }

  if (cfg.format == Format::json) {
    Json doc = table_to_json(table, cfg.indices);
    if (cls) doc["classification"] = classification_json(*cls);
    if (golden) doc["golden"] = golden->matches() ? "match" : "mismatch";
    emit(cfg, out, dump(doc));
  } else if (cfg.format == Format::latex) {
    emit(cfg, out, table_to_latex(table));
  } else {
    std::string text = table_to_text(table);
    if (cls) text += format_classification(*cls) + "\n";
    if (golden) text += std::string("golden: ") + (golden->matches() ? "match" : "mismatch") + "\n";
    emit(cfg, out, text);
  }

  if (golden) {
    if (auto it = golden->document.find("expected_diff"); it != golden->document.end()) {
      err << "note: recorded expected diff: " << it->get<std::string>() << "\n";
    }
    for (const auto& pair : golden->mismatched) {
      auto g = golden->golden.entries.find(pair);
      err << "golden mismatch [" << coordinate_name(pair.first) << ", "
          << coordinate_name(pair.second) << "]: derived " << print_expr(table.entries.at(pair))
          << ", fixture "
          << (g == golden->golden.entries.end() ? std::string("0") : print_expr(g->second))
          << "\n";
    }
    if (!golden->matches()) return kExitFailure;
  }
  return kExitOk;
}

int cmd_contract(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ContractionKind kind = parse_contraction_kind(cfg.limit);
  const TwistSpec spec{single_twist(cfg), single_kind(cfg), cfg.indices, cfg.dim};
  if (spec.kind == AlgebraKind::galilei_hat && kind != ContractionKind::f_to_zero) {
    throw UsageError("tau -> infinity starts from a Newton-Hooke algebra");
  }
  if (kind != ContractionKind::tau_to_infinity && !survives_f_to_zero(spec.id)) {
    throw UsageError("twist " + std::to_string(spec.id) + " involves F_i and has no F -> 0 limit");
  }

  TwistedAlgebra source(spec);
  const CommTable before = spacetime_table(source);
  const CommTable after = contract_table(before, kind);

  const LieAlgebra calg = contract_algebra(source.algebra(), kind);
  TwistedAlgebra target(calg,
                        contract_representation(source.representation(), source.algebra(), kind),
                        make_rmatrix(spec.id, spec.indices, calg));
  const CommTable direct = spacetime_table(target);
  std::vector<SquareMismatch> square;
  for (const auto& [pair, rhs] : direct.entries) {
    const auto it = after.entries.find(pair);
    SpaceFunction lhs = it == after.entries.end() ? SpaceFunction(direct.dim, direct.geometry)
                                                  : it->second;
    if (!(lhs == rhs)) square.push_back({pair, std::move(lhs), rhs});
  }

  if (cfg.format == Format::json) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["document"] = "contraction";
    doc["limit"] = std::string(to_string(kind));
    doc["before"] = table_to_json(before, cfg.indices);
    doc["after"] = table_to_json(after, cfg.indices);
    Json mism = Json::array();
    for (const auto& m : square) {
      mism.push_back({{"lhs", {coordinate_name(m.entry.first), coordinate_name(m.entry.second)}},
                      {"contracted", print_expr(m.contracted)},
                      {"direct", print_expr(m.direct)}});
    }
    doc["square"] = {{"algebra", calg.name()}, {"holds", square.empty()}, {"mismatches", mism}};
    emit(cfg, out, dump(doc));
  } else if (cfg.format == Format::latex) {
    emit(cfg, out, table_to_latex(after));
  } else {
    std::ostringstream ss;
    ss << "before: " << table_to_text(before) << "after (" << to_string(kind)
       << "): " << table_to_text(after) << "commuting square with " << calg.name() << ": "
       << (square.empty() ? "holds" : "FAILS") << "\n";
    for (const auto& m : square) {
      ss << "  [" << coordinate_name(m.entry.first) << ", " << coordinate_name(m.entry.second)
         << "]: contracted " << print_expr(m.contracted) << ", direct " << print_expr(m.direct)
         << "\n";
    }
    emit(cfg, out, ss.str());
  }
  (void)err;
  return square.empty() ? kExitOk : kExitFailure;
}

int cmd_coproduct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.generator.empty()) throw UsageError("--generator is required");
  if (cfg.order < 0) throw UsageError("--order must be non-negative");
  const int id = single_twist(cfg);
  const LieAlgebra alg = make_algebra(single_kind(cfg), cfg.dim);
  const RMatrix r = make_rmatrix(id, cfg.indices, alg);
  const int gen = alg.index_of(cfg.generator);

  const GradedSeries cop = twisted_coproduct(alg, r, gen, cfg.order);
  std::optional<GradedSeries> anti;
  if (cfg.antipode) anti = twisted_antipode(alg, r, gen, cfg.order);

  if (cfg.format == Format::json) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["document"] = "coproduct";
    doc["twist"] = id;
    doc["algebra"] = alg.name();
    doc["generator"] = cfg.generator;
    doc["order"] = cfg.order;
    doc["coproduct"] = series_json(cop, alg, cfg.order);
    if (anti) doc["antipode"] = series_json(*anti, alg, cfg.order);
    emit(cfg, out, dump(doc));
  } else {
    std::ostringstream ss;
    ss << "Delta(" << cfg.generator << ") for twist " << id << " on " << alg.name()
       << ", beta degree <= " << cfg.order << "\n"
       << series_text(cop, alg, cfg.order);
    if (anti) ss << "S(" << cfg.generator << ")\n" << series_text(*anti, alg, cfg.order);
    emit(cfg, out, ss.str());
  }
  (void)err;
  return kExitOk;
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus, cfg.dim);
  Json rows = Json::array();
  std::ostringstream ss;
  for (int id = 1; id <= 10; ++id) {
    const RMatrix r = make_rmatrix(id, cfg.indices, alg);
    std::string carriers;
    Json carr = Json::array();
    for (int g : r.carriers()) {
      carr.push_back(alg.generator(g).name);
      carriers += (carriers.empty() ? "" : ",") + alg.generator(g).name;
    }
    const std::string mark = survives_f_to_zero(id) ? "survives F->0" : "involves F_i";
    const std::size_t params = r.parameters().size();
    rows.push_back({{"id", id},
                    {"formula", std::string(rmatrix_formula(id))},
                    {"carriers", carr},
                    {"parameters", params},
                    {"class", mark}});
    ss << id << "\t" << rmatrix_formula(id) << "\tcarriers " << carriers << "\tparameters "
       << params << "\t" << mark << "\n";
  }
  if (cfg.format == Format::json) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["document"] = "catalog";
    doc["dimension"] = cfg.dim;
    doc["rmatrices"] = rows;
    emit(cfg, out, dump(doc));
  } else {
    emit(cfg, out, ss.str());
  }
  (void)err;
  return kExitOk;
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const LieAlgebra alg = make_algebra(single_kind(cfg), cfg.dim);
  const Representation rep = make_representation(alg);
  std::vector<RMatrix> twists;
  for (int id : selected_twists(cfg)) twists.push_back(make_rmatrix(id, cfg.indices, alg));
  emit(cfg, out, export_algebra(alg, &rep, twists));
  (void)err;
  return kExitOk;
}

namespace {

std::vector<int> split_ints(const std::string& s, std::size_t n, const std::string& flag) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError(flag + " expects " + std::to_string(n) + " comma-separated integers");
    }
  }
  if (v.size() != n) {
    throw UsageError(flag + " expects " + std::to_string(n) + " comma-separated integers");
  }
  return v;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted acceleration-enlarged Newton-Hooke Hopf algebras", "nhtwist"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  std::string indices;
  std::string ij;
  std::string checks;

  auto common = [&](CLI::App* sub, bool with_twist) {
    sub->add_option("--algebra", cfg.algebra, "nh+, nh-, galilei");
    sub->add_option("--sign", cfg.sign, "plus, minus or none");
    if (with_twist) sub->add_option("--twist", cfg.twist, "twist id 1..10");
    sub->add_option("--dim", cfg.dim, "space dimension")->check(CLI::Range(1, 9));
    sub->add_option("--indices", indices, "fixed m,k,l for twists 4, 8, 9");
    sub->add_option("--ij", ij, "fixed i,j for twist 10");
    sub->add_option("--out", cfg.out, "write output to a file");
  };

  auto* verify = app.add_subcommand("verify", "run verification checks");
  common(verify, true);
  verify->add_option("--algebra-file", cfg.algebra_file, "algebra definition file")
      ->check(CLI::ExistingFile);
  verify->add_option("--checks", checks,
                     "comma list of jacobi, representation, abelian, cybe, cocycle, "
                     "normalization, hopf-axioms, or all");
  verify->add_option("--order", cfg.order, "series order N");
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* spacetime = app.add_subcommand("spacetime", "derive a commutator table");
  common(spacetime, true);
  spacetime->add_flag("--golden", cfg.golden, "compare against the golden fixture");
  spacetime->add_flag("--classify", cfg.classify, "append the degree classification");
  spacetime->add_option("--format", format)->check(CLI::IsMember({"text", "json", "latex"}));

  auto* contract = app.add_subcommand("contract", "contract a commutator table");
  common(contract, true);
  contract->add_option("--limit", cfg.limit, "tau-infinity, f-zero or both")
      ->check(CLI::IsMember({"tau-infinity", "f-zero", "both"}));
  contract->add_option("--format", format)->check(CLI::IsMember({"text", "json", "latex"}));

  auto* coproduct = app.add_subcommand("coproduct", "twisted coproduct series");
  common(coproduct, true);
  coproduct->add_option("--generator", cfg.generator, "generator name")->required();
  coproduct->add_option("--order", cfg.order, "series order N");
  coproduct->add_flag("--antipode", cfg.antipode, "also expand the twisted antipode");
  coproduct->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* catalog = app.add_subcommand("catalog", "list the r-matrices");
  catalog->add_option("--dim", cfg.dim, "space dimension")->check(CLI::Range(2, 9));
  catalog->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  catalog->add_option("--out", cfg.out, "write output to a file");

  auto* exporter = app.add_subcommand("export", "write an algebra definition file");
  common(exporter, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!indices.empty()) {
      auto v = split_ints(indices, 3, "--indices");
      cfg.indices.mkl = {v[0], v[1], v[2]};
    }
    if (!ij.empty()) {
      auto v = split_ints(ij, 2, "--ij");
      cfg.indices.ij = {v[0], v[1]};
    }
    if (!checks.empty()) {
      std::stringstream ss(checks);
      std::string part;
      while (std::getline(ss, part, ',')) cfg.checks.push_back(part);
    }
    cfg.format = format == "json" ? Format::json : format == "latex" ? Format::latex : Format::text;

    if (verify->parsed()) return cfg.command = "verify", cmd_verify(cfg, out, err);
    if (spacetime->parsed()) return cfg.command = "spacetime", cmd_spacetime(cfg, out, err);
    if (contract->parsed()) return cfg.command = "contract", cmd_contract(cfg, out, err);
    if (coproduct->parsed()) return cfg.command = "coproduct", cmd_coproduct(cfg, out, err);
    if (catalog->parsed()) return cfg.command = "catalog", cmd_catalog(cfg, out, err);
    if (exporter->parsed()) return cfg.command = "export", cmd_export(cfg, out, err);
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const TruncationError& e) {
    err << "truncated: " << e.what() << "\n";
    return kExitFailure;
  } catch (const DivergentLimitError& e) {
    err << "divergent limit: " << e.what() << "\n";
    return kExitFailure;
  } catch (const SyntaxError& e) {
    err << "error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("nhtwist");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace nhtwist::cli
