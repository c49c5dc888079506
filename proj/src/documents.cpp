#include "nhtwist/documents.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nhtwist/errors.hpp"
#include "nhtwist/exprio.hpp"

namespace nhtwist {

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw SyntaxError(msg, 1, 1); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = line_column(text, byte);
    throw SyntaxError("malformed JSON document", line, col);
  }
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) malformed(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) malformed(where + "." + key + " must be a string");
  return v.get<std::string>();
}

int int_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_integer()) malformed(where + "." + key + " must be an integer");
  return v.get<int>();
}

void check_version(const Json& doc) {
  if (int_field(doc, "format_version", "document") != kFormatVersion) {
    malformed("unsupported format_version");
  }
}

// Re-raises expression errors with the offending field in the message.
template <class F>
auto in_field(const std::string& where, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ContextError& e) {
    throw ContextError(where + ": " + e.what(), e.line(), e.column());
  } catch (const SyntaxError& e) {
    throw SyntaxError(where + ": " + e.what(), e.line(), e.column());
  }
}

int generator_index(const LieAlgebra& alg, const std::string& name, const std::string& where) {
  if (auto idx = alg.find(name)) return *idx;
  malformed(where + ": unknown generator '" + name + "'");
}

TwistIndices parse_indices(const Json& obj, const std::string& where) {
  TwistIndices idx;
  if (!obj.is_object()) malformed(where + " must be an object");
  if (auto it = obj.find("mkl"); it != obj.end()) {
    if (!it->is_array() || it->size() != 3) malformed(where + ".mkl must hold three indices");
    for (int k = 0; k < 3; ++k) idx.mkl[k] = (*it)[k].get<int>();
  }
  if (auto it = obj.find("ij"); it != obj.end()) {
    if (!it->is_array() || it->size() != 2) malformed(where + ".ij must hold two indices");
    for (int k = 0; k < 2; ++k) idx.ij[k] = (*it)[k].get<int>();
  }
  return idx;
}

std::string lincomb_text(const LinComb& x, const LieAlgebra& alg) { return to_string(x, alg); }

} // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedAlgebra load_algebra(std::string_view text) {
  const Json doc = parse_json(text);
  check_version(doc);
  const std::string name = string_field(doc, "name", "document");
  const Geometry geom = [&] {
    try {
      return parse_geometry(string_field(doc, "geometry", "document"));
    } catch (const GeometryError& e) {
      malformed(e.what());
    }
  }();
  const int dim = int_field(doc, "dimension", "document");
  if (dim < 1 || dim > 9) malformed("dimension must be between 1 and 9");

  const Json& gens_json = field(doc, "generators", "document");
  if (!gens_json.is_array()) malformed("generators must be an array");
  std::vector<Generator> gens;
  for (const auto& g : gens_json) {
    if (!g.is_string()) malformed("generator names must be strings");
    gens.push_back(Generator::from_name(g.get<std::string>()));
  }
  LieAlgebra alg = [&] {
    try {
      return LieAlgebra(name, geom, dim, gens);
    } catch (const StructureError& e) {
      malformed(e.what());
    }
  }();

  const Json& brackets = field(doc, "brackets", "document");
  if (!brackets.is_array()) malformed("brackets must be an array");
  std::map<std::pair<int, int>, bool> seen;
  for (std::size_t k = 0; k < brackets.size(); ++k) {
    const std::string where = "brackets[" + std::to_string(k) + "]";
    const Json& b = brackets[k];
    int a = generator_index(alg, string_field(b, "lhs", where), where);
    int c = generator_index(alg, string_field(b, "rhs", where), where);
    if (a == c) malformed(where + ": bracket of a generator with itself");
    const std::string result = string_field(b, "result", where);
    LinComb value = in_field(where + ".result", [&] { return parse_lincomb(result, alg); });
    if (a > c) {
      std::swap(a, c);
      LinComb neg;
      for (const auto& [g, coef] : value) neg.emplace(g, -coef);
      value = std::move(neg);
    }
    if (!seen.emplace(std::make_pair(a, c), true).second) {
      malformed(where + ": duplicate bracket");
    }
    alg.set_bracket(a, c, value);
  }

  if (auto bad = check_jacobi(alg); !bad.empty()) {
    const auto& v = bad.front();
    throw VerificationError("Jacobi identity fails for (" + alg.generator(v.a).name + ", " +
                            alg.generator(v.b).name + ", " + alg.generator(v.c).name +
                            "): " + to_string(v.value, alg));
  }

  LoadedAlgebra out{alg, std::nullopt, {}};
  if (auto it = doc.find("representation"); it != doc.end()) {
    if (!it->is_object()) malformed("representation must be an object");
    std::vector<DiffOp> images;
    for (const auto& g : alg.generators()) {
      const std::string where = "representation." + g.name;
      auto img = it->find(g.name);
      if (img == it->end()) malformed(where + " is missing");
      if (!img->is_string()) malformed(where + " must be a string");
      const std::string src = img->get<std::string>();
      images.push_back(in_field(where, [&] { return parse_operator(src, dim, geom); }));
    }
    if (it->size() != alg.generators().size()) malformed("representation names unknown generators");
    Representation rep(geom, dim, std::move(images));
    if (auto bad = check_representation(rep, alg); !bad.empty()) {
      const auto& v = bad.front();
      throw VerificationError("representation violates [" + alg.generator(v.a).name + ", " +
                              alg.generator(v.b).name + "]: " + to_string(v.lhs) + " != " +
                              to_string(v.rhs));
    }
    out.representation = std::move(rep);
  }

  if (auto it = doc.find("twists"); it != doc.end()) {
    if (!it->is_array()) malformed("twists must be an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "twists[" + std::to_string(k) + "]";
      const Json& t = (*it)[k];
      const int id = int_field(t, "id", where);
      try {
        if (auto w = t.find("wedges"); w != t.end()) {
          if (!w->is_array()) malformed(where + ".wedges must be an array");
          std::vector<WedgeTerm> raw;
          for (std::size_t j = 0; j < w->size(); ++j) {
            const std::string wwhere = where + ".wedges[" + std::to_string(j) + "]";
            const Json& e = (*w)[j];
            const std::string coeff = string_field(e, "coeff", wwhere);
            raw.push_back({in_field(wwhere + ".coeff",
                                    [&] { return parse_coefficient(coeff, geom); }),
                           generator_index(alg, string_field(e, "a", wwhere), wwhere),
                           generator_index(alg, string_field(e, "b", wwhere), wwhere)});
          }
          out.twists.push_back(make_rmatrix(id, raw, alg));
        } else {
          TwistIndices idx;
          if (auto ix = t.find("indices"); ix != t.end()) idx = parse_indices(*ix, where + ".indices");
          out.twists.push_back(make_rmatrix(id, idx, alg));
        }
      } catch (const NonAbelianCarrierError& e) {
        throw VerificationError(where + ": " + e.what());
      } catch (const IndexError& e) {
        throw VerificationError(where + ": " + e.what());
      }
    }
  }
  return out;
}

LoadedAlgebra load_algebra_file(const std::filesystem::path& path) {
  return load_algebra(read_text_file(path));
}

std::string export_algebra(const LieAlgebra& alg, const Representation* rep,
                           const std::vector<RMatrix>& twists) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["name"] = alg.name();
  doc["geometry"] = std::string(to_string(alg.geometry()));
  doc["dimension"] = alg.dim();
  Json gens = Json::array();
  for (const auto& g : alg.generators()) gens.push_back(g.name);
  doc["generators"] = gens;
  Json brackets = Json::array();
  for (const auto& [pair, value] : alg.structure()) {
    Json b;
    b["lhs"] = alg.generator(pair.first).name;
    b["rhs"] = alg.generator(pair.second).name;
    b["result"] = lincomb_text(value, alg);
    brackets.push_back(b);
  }
  doc["brackets"] = brackets;
  if (rep) {
    Json images = Json::object();
    for (int a = 0; a < alg.size(); ++a) images[alg.generator(a).name] = print_expr(rep->image(a));
    doc["representation"] = images;
  }
  if (!twists.empty()) {
    Json list = Json::array();
    for (const auto& r : twists) {
      Json t;
      t["id"] = r.id();
      Json wedges = Json::array();
      for (const auto& w : r.terms()) {
        Json e;
        e["coeff"] = print_expr(w.coeff);
        e["a"] = alg.generator(w.a).name;
        e["b"] = alg.generator(w.b).name;
        wedges.push_back(e);
      }
      t["wedges"] = wedges;
      list.push_back(t);
    }
    doc["twists"] = list;
  }
  return doc.dump(2) + "\n";
}

// ------------------------------------------------------------------ tables

std::string_view sign_name(Geometry g) {
  switch (g) {
  case Geometry::hyperbolic: return "plus";
  case Geometry::trigonometric: return "minus";
  case Geometry::flat: return "none";
  }
  return "";
}

Json table_to_json(const CommTable& table, const TwistIndices& indices) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["document"] = "commutator_table";
  doc["twist"] = table.twist;
  doc["algebra"] = table.algebra;
  doc["geometry"] = std::string(to_string(table.geometry));
  doc["sign"] = std::string(sign_name(table.geometry));
  doc["dimension"] = table.dim;
  doc["indices"] = {{"mkl", indices.mkl}, {"ij", indices.ij}};
  Json entries = Json::array();
  for (const auto& [pair, rhs] : table.entries) {
    Json e;
    e["lhs"] = {coordinate_name(pair.first), coordinate_name(pair.second)};
    e["rhs"] = print_expr(rhs);
    e["geometry"] = doc["geometry"];
    e["twist"] = table.twist;
    e["sign"] = doc["sign"];
    entries.push_back(e);
  }
  doc["entries"] = entries;
  return doc;
}

CommTable table_from_json(const Json& doc) {
  check_version(doc);
  CommTable table;
  table.twist = int_field(doc, "twist", "document");
  table.algebra = string_field(doc, "algebra", "document");
  try {
    table.geometry = parse_geometry(string_field(doc, "geometry", "document"));
  } catch (const GeometryError& e) {
    malformed(e.what());
  }
  table.dim = int_field(doc, "dimension", "document");
  auto coordinate = [&](const Json& v, const std::string& where) {
    if (!v.is_string()) malformed(where + " must name a coordinate");
    const std::string s = v.get<std::string>();
    if (s == "t") return 0;
    if (s.size() > 1 && s[0] == 'x') {
      try {
        const int k = std::stoi(s.substr(1));
        if (k >= 1 && k <= table.dim && s == "x" + std::to_string(k)) return k;
      } catch (const std::exception&) {
      }
    }
    malformed(where + ": unknown coordinate '" + s + "'");
  };
  const Json& entries = field(doc, "entries", "document");
  if (!entries.is_array()) malformed("entries must be an array");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = "entries[" + std::to_string(k) + "]";
    const Json& e = entries[k];
    const Json& lhs = field(e, "lhs", where);
    if (!lhs.is_array() || lhs.size() != 2) malformed(where + ".lhs must hold two coordinates");
    int mu = coordinate(lhs[0], where + ".lhs");
    int nu = coordinate(lhs[1], where + ".lhs");
    if (mu == nu) malformed(where + ": [x, x] is not a table entry");
    const std::string src = string_field(e, "rhs", where);
    SpaceFunction rhs =
        in_field(where + ".rhs", [&] { return parse_function(src, table.dim, table.geometry); });
    if (mu > nu) {
      std::swap(mu, nu);
      rhs = -rhs;
    }
    if (!table.entries.emplace(std::make_pair(mu, nu), rhs).second) {
      malformed(where + ": duplicate entry");
    }
  }
  for (int mu = 0; mu <= table.dim; ++mu) {
    for (int nu = mu + 1; nu <= table.dim; ++nu) {
      table.entries.try_emplace(std::make_pair(mu, nu), SpaceFunction(table.dim, table.geometry));
    }
  }
  return table;
}

namespace {

// f = X * s with s appearing exactly once in every term; returns X.
std::optional<SpaceFunction> strip_symbol(const SpaceFunction& f, Symbol s) {
  if (f.is_zero()) return std::nullopt;
  SpaceFunction out(f.dim(), f.geometry());
  for (const auto& [x, c] : f.terms()) {
    CoeffFunction stripped(f.geometry());
    for (const auto& [m, v] : c.terms()) {
      CoeffMonomial rest = m;
      auto it = std::find_if(rest.beta.begin(), rest.beta.end(),
                             [&](const auto& p) { return p.first == s; });
      if (it == rest.beta.end() || it->second != 1) return std::nullopt;
      rest.beta.erase(it);
      stripped.add_term(rest, v);
    }
    out.add_term(x, stripped);
  }
  return out;
}

std::string coordinate_latex(int mu) { return mu == 0 ? "t" : "x_{" + std::to_string(mu) + "}"; }

std::string bracket_latex(int mu, int nu) {
  return "[" + coordinate_latex(mu) + ", " + coordinate_latex(nu) + "]_{\\star}";
}

} // namespace

std::string table_to_latex(const CommTable& table) {
  std::vector<std::string> lines;
  bool time_zero = true;
  for (int a = 1; a <= table.dim; ++a) {
    if (!table.entries.at({0, a}).is_zero()) time_zero = false;
  }
  if (time_zero) {
    lines.push_back("[t, x_a]_{\\star} &= 0");
  } else {
    for (int a = 1; a <= table.dim; ++a) {
      lines.push_back(bracket_latex(0, a) + " &= " + print_latex(table.entries.at({0, a})));
    }
  }

  bool space_zero = true;
  std::optional<SpaceFunction> common;
  bool compact = table.dim >= 2;
  for (int a = 1; a <= table.dim; ++a) {
    for (int b = a + 1; b <= table.dim; ++b) {
      const SpaceFunction& e = table.entries.at({a, b});
      if (!e.is_zero()) space_zero = false;
      if (!compact) continue;
      auto x = strip_symbol(e, Symbol::intern(beta_name(table.twist, a, b)));
      if (!x || (common && !(*common == *x))) {
        compact = false;
        continue;
      }
      common = std::move(x);
    }
  }
  if (space_zero) {
    lines.push_back("[x_a, x_b]_{\\star} &= 0");
  } else if (compact && common) {
    const SpaceFunction half = *common * Scalar::fraction(1, 2);
    std::string factor = print_latex(half);
    const bool single = half.terms().size() == 1 && half.terms().begin()->second.size() == 1;
    if (factor == "1") factor.clear();
    else if (factor == "-1") factor = "-";
    else if (!single) factor = "\\left(" + factor + "\\right)";
    if (!factor.empty() && factor != "-") factor += " ";
    lines.push_back("[x_a, x_b]_{\\star} &= " + factor + "\\beta_{" + std::to_string(table.twist) +
                    "}^{kl} (\\delta_{ak}\\delta_{bl} - \\delta_{al}\\delta_{bk})");
  } else {
    for (int a = 1; a <= table.dim; ++a) {
      for (int b = a + 1; b <= table.dim; ++b) {
        const SpaceFunction& e = table.entries.at({a, b});
        if (!e.is_zero()) lines.push_back(bracket_latex(a, b) + " &= " + print_latex(e));
      }
    }
  }

  std::string out;
  out += "\\documentclass{article}\n";
  out += "\\usepackage{amsmath}\n";
  out += "\\begin{document}\n";
  out += "% twist " + std::to_string(table.twist) + ", " + table.algebra + " (" +
         std::string(to_string(table.geometry)) + ")\n";
  out += "\\begin{align*}\n";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    out += lines[k];
    out += k + 1 < lines.size() ? " \\\\\n" : "\n";
  }
  out += "\\end{align*}\n";
  out += "\\end{document}\n";
  return out;
}

std::string table_to_text(const CommTable& table) {
  std::string out = "twist " + std::to_string(table.twist) + " on " + table.algebra + " (" +
                    std::string(to_string(table.geometry)) + ", d=" + std::to_string(table.dim) +
                    ")\n";
  for (const auto& [pair, rhs] : table.entries) {
    out += "[" + coordinate_name(pair.first) + ", " + coordinate_name(pair.second) +
           "] = " + print_expr(rhs) + "\n";
  }
  return out;
}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("NHTWIST_FIXTURES"); env && *env) return env;
  return NHTWIST_FIXTURE_DIR;
}

std::filesystem::path golden_path(std::string_view algebra, int twist) {
  return fixture_dir() / "golden" /
         (std::string(algebra) + "_twist" + std::to_string(twist) + ".json");
}

GoldenComparison compare_with_golden(const CommTable& derived) {
  const auto path = golden_path(derived.algebra, derived.twist);
  GoldenComparison out;
  out.document = parse_json(read_text_file(path));
  out.golden = table_from_json(out.document);
  if (out.golden.geometry != derived.geometry || out.golden.dim != derived.dim) {
    throw StructureError("golden " + path.string() + " does not describe this table");
  }
  for (const auto& [pair, rhs] : derived.entries) {
    auto it = out.golden.entries.find(pair);
    if (it == out.golden.entries.end() || !(it->second == rhs)) out.mismatched.push_back(pair);
  }
  return out;
}

} // namespace nhtwist
