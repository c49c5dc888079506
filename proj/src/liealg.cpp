#include "nhtwist/liealg.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nhtwist/errors.hpp"

namespace nhtwist {

// -------------------------------------------------------------- Generator

namespace {

std::string index_pair_name(char prefix, int i, int j) {
  if (i < 10 && j < 10) return std::string(1, prefix) + std::to_string(i) + std::to_string(j);
  return std::string(1, prefix) + std::to_string(i) + "_" + std::to_string(j);
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

} // namespace

Generator Generator::rotation(int i, int j) {
  return Generator{GenKind::M, i, j, index_pair_name('M', i, j)};
}
Generator Generator::boost(int i) { return Generator{GenKind::K, i, 0, "K" + std::to_string(i)}; }
Generator Generator::translation(int i) {
  return Generator{GenKind::P, i, 0, "P" + std::to_string(i)};
}
Generator Generator::acceleration(int i) {
  return Generator{GenKind::F, i, 0, "F" + std::to_string(i)};
}
Generator Generator::hamiltonian() { return Generator{GenKind::H, 0, 0, "H"}; }

Generator Generator::from_name(std::string_view name) {
  Generator g{GenKind::other, 0, 0, std::string(name)};
  if (name == "H") {
    g.kind = GenKind::H;
    return g;
  }
  if (name.size() < 2) return g;
  const std::string_view rest = name.substr(1);
  switch (name[0]) {
  case 'K':
  case 'P':
  case 'F':
    if (auto v = parse_int(rest); v && *v > 0) {
      g.kind = name[0] == 'K' ? GenKind::K : (name[0] == 'P' ? GenKind::P : GenKind::F);
      g.i = *v;
    }
    break;
  case 'M': {
    int i = 0;
    int j = 0;
    if (auto us = rest.find('_'); us != std::string_view::npos) {
      auto a = parse_int(rest.substr(0, us));
      auto b = parse_int(rest.substr(us + 1));
      if (!a || !b) return g;
      i = *a;
      j = *b;
    } else if (rest.size() == 2 && std::isdigit(rest[0]) && std::isdigit(rest[1])) {
      i = rest[0] - '0';
      j = rest[1] - '0';
    } else {
      return g;
    }
    if (i > 0 && j > i) {
      g.kind = GenKind::M;
      g.i = i;
      g.j = j;
    }
    break;
  }
  default:
    break;
  }
  return g;
}

// ---------------------------------------------------------- AlgebraKind

Geometry geometry_of(AlgebraKind k) {
  switch (k) {
  case AlgebraKind::nh_plus: return Geometry::hyperbolic;
  case AlgebraKind::nh_minus: return Geometry::trigonometric;
  case AlgebraKind::galilei_hat: return Geometry::flat;
  }
  return Geometry::flat;
}

std::string_view to_string(AlgebraKind k) {
  switch (k) {
  case AlgebraKind::nh_plus: return "nh_plus";
  case AlgebraKind::nh_minus: return "nh_minus";
  case AlgebraKind::galilei_hat: return "galilei_hat";
  }
  return "?";
}

AlgebraKind parse_algebra_kind(std::string_view s) {
  if (s == "nh_plus" || s == "nh+" || s == "plus") return AlgebraKind::nh_plus;
  if (s == "nh_minus" || s == "nh-" || s == "minus") return AlgebraKind::nh_minus;
  if (s == "galilei_hat" || s == "galilei" || s == "flat") return AlgebraKind::galilei_hat;
  throw IndexError("unknown algebra '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- LinComb

void add_to(LinComb& acc, int gen, const CoeffFunction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(gen, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void add_to(LinComb& acc, const LinComb& x, const CoeffFunction& scale) {
  for (const auto& [g, c] : x) add_to(acc, g, c * scale);
}

bool is_zero(const LinComb& x) { return x.empty(); }

std::string to_string(const LinComb& x, const LieAlgebra& alg) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : x) {
    // each coefficient term times the generator name
    for (const auto& [m, v] : c.terms()) {
      std::vector<std::string> factors;
      detail::monomial_factors(m, factors);
      factors.push_back(alg.generator(g).name);
      detail::append_term(out, v, factors);
    }
  }
  return out;
}

// ------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(std::string name, Geometry g, int dim, std::vector<Generator> gens)
    : name_(std::move(name)), geometry_(g), dim_(dim), gens_(std::move(gens)) {
  if (gens_.size() >= 255) throw StructureError("too many generators");
  for (std::size_t a = 0; a < gens_.size(); ++a) {
    for (std::size_t b = a + 1; b < gens_.size(); ++b) {
      if (gens_[a].name == gens_[b].name) {
        throw StructureError("duplicate generator " + gens_[a].name);
      }
    }
  }
  table_.resize(gens_.size() * gens_.size());
}

std::optional<int> LieAlgebra::find(std::string_view name) const {
  for (std::size_t a = 0; a < gens_.size(); ++a) {
    if (gens_[a].name == name) return static_cast<int>(a);
  }
  return std::nullopt;
}

int LieAlgebra::index_of(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  throw IndexError("unknown generator '" + std::string(name) + "' in " + name_);
}

void LieAlgebra::set_bracket(int a, int b, const LinComb& value) {
  if (a == b) throw StructureError("[a, a] is always zero");
  const auto n = static_cast<std::size_t>(size());
  LinComb neg;
  for (const auto& [g, c] : value) {
    if (c.geometry() != geometry_) throw GeometryError("structure constant geometry mismatch");
    neg.emplace(g, -c);
  }
  LinComb clean;
  for (const auto& [g, c] : value) add_to(clean, g, c);
  table_[a * n + b] = std::move(clean);
  LinComb clean_neg;
  for (const auto& [g, c] : neg) add_to(clean_neg, g, c);
  table_[b * n + a] = std::move(clean_neg);
}

const LinComb& LieAlgebra::bracket(int a, int b) const {
  return table_.at(static_cast<std::size_t>(a) * gens_.size() + b);
}

LinComb LieAlgebra::bracket(const LinComb& x, const LinComb& y) const {
  LinComb out;
  for (const auto& [a, ca] : x) {
    for (const auto& [b, cb] : y) {
      if (a == b) continue;
      const LinComb& ab = bracket(a, b);
      if (ab.empty()) continue;
      add_to(out, ab, ca * cb);
    }
  }
  return out;
}

std::map<std::pair<int, int>, LinComb> LieAlgebra::structure() const {
  std::map<std::pair<int, int>, LinComb> out;
  for (int a = 0; a < size(); ++a) {
    for (int b = a + 1; b < size(); ++b) {
      const auto& v = bracket(a, b);
      if (!v.empty()) out.emplace(std::make_pair(a, b), v);
    }
  }
  return out;
}

bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
  return a.name_ == b.name_ && a.geometry_ == b.geometry_ && a.dim_ == b.dim_ &&
         a.gens_ == b.gens_ && a.table_ == b.table_;
}

// ---------------------------------------------------------------- catalog

namespace {

class CatalogBuilder {
public:
  CatalogBuilder(const LieAlgebra& alg, AlgebraKind kind) : alg_(alg), kind_(kind) {}

  LinComb bracket(const Generator& x, const Generator& y) const {
    if (auto r = rule(x, y)) return *r;
    if (auto r = rule(y, x)) {
      LinComb neg;
      for (const auto& [g, c] : *r) neg.emplace(g, -c);
      return neg;
    }
    return {};
  }

private:
  CoeffFunction k(const Scalar& v) const { return CoeffFunction::constant(alg_.geometry(), v); }
  static Scalar I(long n = 1) { return Scalar(0, n); }
  static int delta(int a, int b) { return a == b ? 1 : 0; }

  // i*c*V_n for V in {K,P,F}, or i*c*M_pq with M_qp = -M_pq.
  void add_vector(LinComb& out, GenKind kind, int n, long c) const {
    if (c == 0) return;
    std::string name = kind == GenKind::K ? "K" : (kind == GenKind::P ? "P" : "F");
    add_to(out, alg_.index_of(name + std::to_string(n)), k(I(c)));
  }

  void add_rotation(LinComb& out, int p, int q, long c) const {
    if (c == 0 || p == q) return;
    if (p > q) {
      std::swap(p, q);
      c = -c;
    }
    add_to(out, alg_.index_of(Generator::rotation(p, q).name), k(I(c)));
  }

  std::optional<LinComb> rule(const Generator& x, const Generator& y) const {
    LinComb out;
    if (x.kind == GenKind::M && y.kind == GenKind::M) {
      const int i = x.i, j = x.j, kk = y.i, l = y.j;
      // i(d_il M_jk - d_jl M_ik + d_jk M_il - d_ik M_jl)
      add_rotation(out, j, kk, delta(i, l));
      add_rotation(out, i, kk, -delta(j, l));
      add_rotation(out, i, l, delta(j, kk));
      add_rotation(out, j, l, -delta(i, kk));
      return out;
    }
    if (x.kind == GenKind::M &&
        (y.kind == GenKind::K || y.kind == GenKind::P || y.kind == GenKind::F)) {
      // i(d_jk V_i - d_ik V_j)
      add_vector(out, y.kind, x.i, delta(x.j, y.i));
      add_vector(out, y.kind, x.j, -delta(x.i, y.i));
      return out;
    }
    if (x.kind == GenKind::K && y.kind == GenKind::H) {
      add_vector(out, GenKind::P, x.i, -1);
      return out;
    }
    if (x.kind == GenKind::H && y.kind == GenKind::P) {
      if (kind_ == AlgebraKind::galilei_hat) return out;
      const long sign = kind_ == AlgebraKind::nh_plus ? 1 : -1;
      const int kidx = alg_.index_of("K" + std::to_string(y.i));
      add_to(out, kidx, CoeffFunction::tau(alg_.geometry(), -2) * I(sign));
      return out;
    }
    if (x.kind == GenKind::H && y.kind == GenKind::F) {
      add_vector(out, GenKind::K, y.i, 2);
      return out;
    }
    return std::nullopt;
  }

  const LieAlgebra& alg_;
  AlgebraKind kind_;
};

} // namespace

LieAlgebra make_algebra(AlgebraKind kind, int dim) {
  if (dim < 2) throw IndexError("dimension must be at least 2");
  std::vector<Generator> gens;
  for (int i = 1; i <= dim; ++i) {
    for (int j = i + 1; j <= dim; ++j) gens.push_back(Generator::rotation(i, j));
  }
  for (int i = 1; i <= dim; ++i) gens.push_back(Generator::boost(i));
  for (int i = 1; i <= dim; ++i) gens.push_back(Generator::translation(i));
  for (int i = 1; i <= dim; ++i) gens.push_back(Generator::acceleration(i));
  gens.push_back(Generator::hamiltonian());

  LieAlgebra alg(std::string(to_string(kind)), geometry_of(kind), dim, gens);
  CatalogBuilder builder(alg, kind);
  for (int a = 0; a < alg.size(); ++a) {
    for (int b = a + 1; b < alg.size(); ++b) {
      alg.set_bracket(a, b, builder.bracket(alg.generator(a), alg.generator(b)));
    }
  }
  return alg;
}

std::vector<JacobiViolation> check_jacobi(const LieAlgebra& alg) {
  std::vector<JacobiViolation> out;
  auto unit = [&](int g) {
    LinComb x;
    x.emplace(g, CoeffFunction::constant(alg.geometry(), Scalar(1)));
    return x;
  };
  const int n = alg.size();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        LinComb sum;
        const auto one = CoeffFunction::constant(alg.geometry(), Scalar(1));
        add_to(sum, alg.bracket(unit(a), alg.bracket(b, c)), one);
        add_to(sum, alg.bracket(unit(b), alg.bracket(c, a)), one);
        add_to(sum, alg.bracket(unit(c), alg.bracket(a, b)), one);
        if (!sum.empty()) out.push_back({a, b, c, std::move(sum)});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- RMatrix

RMatrix::RMatrix(int id, std::vector<WedgeTerm> terms) : id_(id), terms_(std::move(terms)) {}

std::vector<int> RMatrix::carriers() const {
  std::vector<int> out;
  for (const auto& w : terms_) {
    for (int g : {w.a, w.b}) {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> RMatrix::parameters() const {
  std::vector<std::string> out;
  for (const auto& w : terms_) {
    for (const auto& [m, v] : w.coeff.terms()) {
      for (const auto& [sym, e] : m.beta) {
        if (std::find(out.begin(), out.end(), sym.name()) == out.end()) out.push_back(sym.name());
      }
    }
  }
  return out;
}

std::vector<std::pair<int, int>> non_commuting_carriers(const RMatrix& r, const LieAlgebra& alg) {
  std::vector<std::pair<int, int>> out;
  const auto carriers = r.carriers();
  for (std::size_t p = 0; p < carriers.size(); ++p) {
    for (std::size_t q = p + 1; q < carriers.size(); ++q) {
      if (!alg.bracket(carriers[p], carriers[q]).empty()) {
        out.emplace_back(carriers[p], carriers[q]);
      }
    }
  }
  return out;
}

std::string beta_name(int twist, int k, int l) {
  return "beta" + std::to_string(twist) + "_" + std::to_string(k) + "_" + std::to_string(l);
}

std::string beta_name(int twist) { return "beta" + std::to_string(twist); }

RMatrix make_rmatrix(int id, const std::vector<WedgeTerm>& raw, const LieAlgebra& alg) {
  // orient every wedge as a < b and merge
  std::map<std::pair<int, int>, CoeffFunction> merged;
  for (const auto& w : raw) {
    if (w.a == w.b) continue;  // a ^ a = 0
    if (w.a < 0 || w.b < 0 || w.a >= alg.size() || w.b >= alg.size()) {
      throw IndexError("wedge carrier out of range");
    }
    auto key = w.a < w.b ? std::make_pair(w.a, w.b) : std::make_pair(w.b, w.a);
    CoeffFunction c = w.a < w.b ? w.coeff : -w.coeff;
    auto [it, inserted] = merged.try_emplace(key, c);
    if (!inserted) it->second += c;
  }
  std::vector<WedgeTerm> terms;
  for (auto& [key, c] : merged) {
    if (!c.is_zero()) terms.push_back({c, key.first, key.second});
  }
  RMatrix r(id, std::move(terms));
  if (auto bad = non_commuting_carriers(r, alg); !bad.empty()) {
    throw NonAbelianCarrierError("carriers " + alg.generator(bad.front().first).name + " and " +
                                 alg.generator(bad.front().second).name + " do not commute in " +
                                 alg.name());
  }
  return r;
}

RMatrix make_rmatrix(int id, const TwistIndices& idx, const LieAlgebra& alg) {
  const Geometry g = alg.geometry();
  const int d = alg.dim();
  std::vector<WedgeTerm> raw;
  auto half = [&](const std::string& beta) {
    return CoeffFunction::beta(g, beta) * Scalar::fraction(1, 2);
  };
  // (1/2) beta^{kl} A_k ^ B_l with beta antisymmetric, expanded over k < l
  auto antisymmetric = [&](const char* a, const char* b) {
    for (int k = 1; k <= d; ++k) {
      for (int l = k + 1; l <= d; ++l) {
        const auto beta = beta_name(id, k, l);
        raw.push_back({half(beta), alg.index_of(a + std::to_string(k)),
                       alg.index_of(b + std::to_string(l))});
        raw.push_back({-half(beta), alg.index_of(a + std::to_string(l)),
                       alg.index_of(b + std::to_string(k))});
      }
    }
  };
  auto fixed = [&](const char* a) {
    const auto [m, k, l] = idx.mkl;
    for (int v : {m, k, l}) {
      if (v < 1 || v > d) throw IndexError("fixed index out of range");
    }
    if (m == k || m == l || k == l) {
      throw IndexError("fixed indices must satisfy m != k, l and k != l");
    }
    CoeffFunction coeff = CoeffFunction::beta(g, beta_name(id));
    int rot = 0;
    if (k < l) {
      rot = alg.index_of(Generator::rotation(k, l).name);
    } else {
      rot = alg.index_of(Generator::rotation(l, k).name);
      coeff = -coeff;
    }
    raw.push_back({coeff, alg.index_of(a + std::to_string(m)), rot});
  };

  switch (id) {
  case 1: antisymmetric("F", "F"); break;
  case 2: antisymmetric("F", "P"); break;
  case 3: antisymmetric("K", "F"); break;
  case 4: fixed("F"); break;
  case 5: antisymmetric("P", "P"); break;
  case 6: antisymmetric("K", "P"); break;
  case 7: antisymmetric("K", "K"); break;
  case 8: fixed("K"); break;
  case 9: fixed("P"); break;
  case 10: {
    const auto [i, j] = idx.ij;
    if (i < 1 || j < 1 || i > d || j > d || i == j) {
      throw IndexError("twist 10 needs distinct indices i != j");
    }
    CoeffFunction coeff = CoeffFunction::beta(g, beta_name(10));
    int rot = 0;
    if (i < j) {
      rot = alg.index_of(Generator::rotation(i, j).name);
    } else {
      rot = alg.index_of(Generator::rotation(j, i).name);
      coeff = -coeff;
    }
    raw.push_back({coeff, rot, alg.index_of("H")});
    break;
  }
  default:
    throw IndexError("twist id must be in 1..10");
  }
  return make_rmatrix(id, raw, alg);
}

std::string_view rmatrix_formula(int id) {
  switch (id) {
  case 1: return "1/2 beta1^{kl} F_k ^ F_l";
  case 2: return "1/2 beta2^{kl} F_k ^ P_l";
  case 3: return "1/2 beta3^{kl} K_k ^ F_l";
  case 4: return "beta4 F_m ^ M_kl";
  case 5: return "1/2 beta5^{kl} P_k ^ P_l";
  case 6: return "1/2 beta6^{kl} K_k ^ P_l";
  case 7: return "1/2 beta7^{kl} K_k ^ K_l";
  case 8: return "beta8 K_m ^ M_kl";
  case 9: return "beta9 P_m ^ M_kl";
  case 10: return "beta10 M_ij ^ H";
  default: return "";
  }
}

} // namespace nhtwist
