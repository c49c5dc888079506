#include "nhtwist/coeffring.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "nhtwist/errors.hpp"

namespace nhtwist {

// ---------------------------------------------------------------- Scalar

Scalar Scalar::fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.is_real()) {
    re *= o.re;
    im *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Rational& q) {
  re /= q;
  im /= q;
  return *this;
}

Scalar imag_power(int n) {
  switch (((n % 4) + 4) % 4) {
  case 0: return Scalar(1);
  case 1: return Scalar(0, 1);
  case 2: return Scalar(-1);
  default: return Scalar(0, -1);
  }
}

std::string to_string(const Scalar& s) {
  if (s.is_real()) return s.re.get_str();
  std::string imag;
  Rational mag = abs(s.im);
  imag = (mag == 1) ? "i" : mag.get_str() + "*i";
  if (sgn(s.re) == 0) return (sgn(s.im) < 0 ? "-" : "") + imag;
  return "(" + s.re.get_str() + (sgn(s.im) < 0 ? "-" : "+") + imag + ")";
}

// -------------------------------------------------------------- Geometry

std::string_view to_string(Geometry g) {
  switch (g) {
  case Geometry::hyperbolic: return "hyperbolic";
  case Geometry::trigonometric: return "trigonometric";
  case Geometry::flat: return "flat";
  }
  return "?";
}

Geometry parse_geometry(std::string_view s) {
  if (s == "hyperbolic") return Geometry::hyperbolic;
  if (s == "trigonometric") return Geometry::trigonometric;
  if (s == "flat") return Geometry::flat;
  throw GeometryError("unknown geometry '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- Symbol

namespace {

struct SymbolRegistry {
  std::mutex mu;
  std::deque<std::string> names{""};
  std::unordered_map<std::string, std::uint32_t> ids;
};

SymbolRegistry& registry() {
  static SymbolRegistry r;
  return r;
}

} // namespace

Symbol Symbol::intern(std::string_view name) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto it = reg.ids.find(std::string(name));
  if (it != reg.ids.end()) return Symbol(it->second);
  auto id = static_cast<std::uint32_t>(reg.names.size());
  reg.names.emplace_back(name);
  reg.ids.emplace(std::string(name), id);
  return Symbol(id);
}

const std::string& Symbol::name() const {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  // deque never relocates existing elements
  return reg.names[id_];
}

BetaMonomial beta_multiply(const BetaMonomial& a, const BetaMonomial& b) {
  BetaMonomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

int beta_degree(const BetaMonomial& b) {
  int d = 0;
  for (const auto& [sym, e] : b) d += e;
  return d;
}

// ------------------------------------------------------- CoeffMonomial

namespace {

std::strong_ordering compare_beta_by_name(const BetaMonomial& a, const BetaMonomial& b) {
  // Dense lexicographic comparison of exponent vectors indexed by name order.
  std::vector<std::pair<std::string, int>> na;
  std::vector<std::pair<std::string, int>> nb;
  for (const auto& [s, e] : a) na.emplace_back(s.name(), e);
  for (const auto& [s, e] : b) nb.emplace_back(s.name(), e);
  std::sort(na.begin(), na.end());
  std::sort(nb.begin(), nb.end());
  auto i = na.begin();
  auto j = nb.begin();
  while (i != na.end() || j != nb.end()) {
    if (j == nb.end() || (i != na.end() && i->first < j->first)) {
      return std::strong_ordering::greater;  // a has positive exponent where b has 0
    }
    if (i == na.end() || j->first < i->first) return std::strong_ordering::less;
    if (i->second != j->second) return i->second <=> j->second;
    ++i;
    ++j;
  }
  return std::strong_ordering::equal;
}

} // namespace

std::strong_ordering canonical_compare(const CoeffMonomial& a, const CoeffMonomial& b) {
  if (a.beta != b.beta) {
    auto c = compare_beta_by_name(a.beta, b.beta);
    if (c != 0) return c;
  }
  if (a.tau != b.tau) return a.tau <=> b.tau;
  if (a.t != b.t) return a.t <=> b.t;
  if (a.c != b.c) return a.c <=> b.c;
  return a.s <=> b.s;
}

CoeffMonomial operator*(const CoeffMonomial& a, const CoeffMonomial& b) {
  CoeffMonomial m;
  m.beta = a.beta.empty() ? b.beta : (b.beta.empty() ? a.beta : beta_multiply(a.beta, b.beta));
  m.tau = a.tau + b.tau;
  m.t = a.t + b.t;
  m.c = a.c + b.c;
  m.s = a.s + b.s;
  return m;
}

// ------------------------------------------------------- CoeffFunction

CoeffFunction CoeffFunction::constant(Geometry g, const Scalar& v) {
  CoeffFunction f(g);
  f.add_term(CoeffMonomial{}, v);
  return f;
}

CoeffFunction CoeffFunction::monomial(Geometry g, const CoeffMonomial& m, const Scalar& v) {
  CoeffFunction f(g);
  f.add_term(m, v);
  return f;
}

CoeffFunction CoeffFunction::tau(Geometry g, int exponent) {
  CoeffMonomial m;
  m.tau = exponent;
  return monomial(g, m);
}

CoeffFunction CoeffFunction::time(Geometry g, int exponent) {
  CoeffMonomial m;
  m.t = exponent;
  return monomial(g, m);
}

CoeffFunction CoeffFunction::cosine(Geometry g) {
  CoeffMonomial m;
  m.c = 1;
  return monomial(g, m);
}

CoeffFunction CoeffFunction::sine(Geometry g) {
  CoeffMonomial m;
  m.s = 1;
  return monomial(g, m);
}

CoeffFunction CoeffFunction::beta(Geometry g, std::string_view name) {
  CoeffMonomial m;
  m.beta.emplace_back(Symbol::intern(name), 1);
  return monomial(g, m);
}

void CoeffFunction::add_term(const CoeffMonomial& m, const Scalar& v) {
  if (v.is_zero()) return;
  if (m.t < 0 || m.c < 0 || m.s < 0) throw GeometryError("negative exponent on t, C or S");
  if (geometry_ == Geometry::flat && (m.c != 0 || m.s != 0)) {
    throw GeometryError("C and S are not defined in flat geometry");
  }
  if (m.s >= 2) {
    // S^2 -> C^2 - 1 (hyperbolic) or 1 - C^2 (trigonometric)
    CoeffMonomial lower = m;
    lower.s -= 2;
    CoeffMonomial raised = lower;
    raised.c += 2;
    if (geometry_ == Geometry::hyperbolic) {
      add_term(raised, v);
      add_term(lower, -v);
    } else {
      add_term(lower, v);
      add_term(raised, -v);
    }
    return;
  }
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoeffFunction CoeffFunction::with_geometry(Geometry g) const {
  CoeffFunction out(g);
  for (const auto& [m, v] : terms_) out.add_term(m, v);
  return out;
}

int CoeffFunction::max_beta_degree() const {
  int d = -1;
  for (const auto& [m, v] : terms_) d = std::max(d, beta_degree(m.beta));
  return d;
}

CoeffFunction CoeffFunction::beta_component(int degree) const {
  CoeffFunction out(geometry_);
  for (const auto& [m, v] : terms_) {
    if (beta_degree(m.beta) == degree) out.terms_.emplace(m, v);
  }
  return out;
}

CoeffFunction CoeffFunction::truncate_beta(int max_degree) const {
  CoeffFunction out(geometry_);
  for (const auto& [m, v] : terms_) {
    if (beta_degree(m.beta) <= max_degree) out.terms_.emplace(m, v);
  }
  return out;
}

bool CoeffFunction::is_beta_free() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.beta.empty(); });
}

void CoeffFunction::check_same_geometry(const CoeffFunction& o) const {
  if (geometry_ != o.geometry_) {
    throw GeometryError("geometry mismatch: " + std::string(to_string(geometry_)) + " vs " +
                        std::string(to_string(o.geometry_)));
  }
}

CoeffFunction CoeffFunction::operator-() const {
  CoeffFunction out(*this);
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

CoeffFunction& CoeffFunction::operator+=(const CoeffFunction& o) {
  check_same_geometry(o);
  for (const auto& [m, v] : o.terms_) add_term(m, v);
  return *this;
}

CoeffFunction& CoeffFunction::operator-=(const CoeffFunction& o) {
  check_same_geometry(o);
  for (const auto& [m, v] : o.terms_) add_term(m, -v);
  return *this;
}

CoeffFunction& CoeffFunction::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= s;
  return *this;
}

CoeffFunction operator*(const CoeffFunction& a, const CoeffFunction& b) {
  a.check_same_geometry(b);
  CoeffFunction out(a.geometry_);
  for (const auto& [ma, va] : a.terms_) {
    for (const auto& [mb, vb] : b.terms_) out.add_term(ma * mb, va * vb);
  }
  return out;
}

CoeffFunction power(const CoeffFunction& a, int n) {
  CoeffFunction out = CoeffFunction::constant(a.geometry(), Scalar(1));
  for (int k = 0; k < n; ++k) out = out * a;
  return out;
}

CoeffFunction d_dt(const CoeffFunction& a) {
  const Geometry g = a.geometry();
  CoeffFunction out(g);
  for (const auto& [m, v] : a.terms()) {
    if (m.t > 0) {
      CoeffMonomial d = m;
      d.t -= 1;
      out.add_term(d, v * Scalar(m.t));
    }
    if (g == Geometry::flat) continue;
    if (m.c > 0) {
      CoeffMonomial d = m;
      d.c -= 1;
      d.s += 1;
      d.tau -= 1;
      const long sign = (g == Geometry::hyperbolic) ? 1 : -1;
      out.add_term(d, v * Scalar(sign * m.c));
    }
    if (m.s > 0) {
      CoeffMonomial d = m;
      d.s -= 1;
      d.c += 1;
      d.tau -= 1;
      out.add_term(d, v);
    }
  }
  return out;
}

namespace {

// Coefficients of u^0..u^order in the formal series of C^c S^s.
std::vector<Rational> cs_series(Geometry g, int c, int s, int order) {
  std::vector<Rational> cser(order + 1, Rational(0));
  std::vector<Rational> sser(order + 1, Rational(0));
  Rational fact(1);
  for (int n = 0; n <= order; ++n) {
    if (n > 0) fact *= n;
    const int k = n / 2;
    Rational term = 1 / fact;
    if (g == Geometry::trigonometric && (k % 2 == 1)) term = -term;
    if (n % 2 == 0) cser[n] = term;
    else sser[n] = term;
  }
  auto mul = [order](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> z(order + 1, Rational(0));
    for (int i = 0; i <= order; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (int j = 0; i + j <= order; ++j) z[i + j] += x[i] * y[j];
    }
    return z;
  };
  std::vector<Rational> out(order + 1, Rational(0));
  out[0] = 1;
  for (int i = 0; i < c; ++i) out = mul(out, cser);
  for (int i = 0; i < s; ++i) out = mul(out, sser);
  return out;
}

} // namespace

CoeffFunction limit_tau_infinity(const CoeffFunction& a) {
  const Geometry g = a.geometry();
  int max_tau = 0;
  for (const auto& [m, v] : a.terms()) max_tau = std::max(max_tau, m.tau);
  // Terms of order u^j with j > tau-exponent fall below tau^0 and can be
  // discarded, so an expansion through max_tau is already exact.
  const int order = max_tau + 2;

  // (beta, tau, t) -> coefficient after substitution
  CoeffFunction expanded(Geometry::flat);
  std::map<std::pair<int, int>, std::vector<Rational>> cache;
  for (const auto& [m, v] : a.terms()) {
    if (g == Geometry::flat || (m.c == 0 && m.s == 0)) {
      CoeffMonomial r = m;
      expanded.add_term(r, v);
      continue;
    }
    auto key = std::make_pair(m.c, m.s);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, cs_series(g, m.c, m.s, order)).first;
    const auto& ser = it->second;
    for (int j = 0; j <= order; ++j) {
      if (sgn(ser[j]) == 0) continue;
      CoeffMonomial r;
      r.beta = m.beta;
      r.tau = m.tau - j;
      r.t = m.t + j;
      expanded.add_term(r, v * Scalar(ser[j]));
    }
  }

  CoeffFunction out(Geometry::flat);
  for (const auto& [m, v] : expanded.terms()) {
    if (m.tau > 0) {
      throw DivergentLimitError("tau -> infinity diverges: surviving term with tau^" +
                                std::to_string(m.tau) + " in " + to_string(a));
    }
    if (m.tau == 0) out.add_term(m, v);
  }
  return out;
}

CoeffFunction drop_betas(const CoeffFunction& a) {
  CoeffFunction out(a.geometry());
  for (const auto& [m, v] : a.terms()) {
    if (m.beta.empty()) out.add_term(m, v);
  }
  return out;
}

// ------------------------------------------------------------ rendering

namespace detail {

void append_term(std::string& out, const Scalar& coef, const std::vector<std::string>& factors) {
  bool negative = false;
  std::string head;
  if (coef.is_real()) {
    negative = sgn(coef.re) < 0;
    Rational mag = abs(coef.re);
    if (!(mag == 1 && !factors.empty())) head = mag.get_str();
  } else if (sgn(coef.re) == 0) {
    negative = sgn(coef.im) < 0;
    Rational mag = abs(coef.im);
    head = (mag == 1) ? "i" : mag.get_str() + "*i";
  } else {
    head = to_string(coef);
  }
  std::string body = head;
  for (const auto& f : factors) {
    if (!body.empty()) body += '*';
    body += f;
  }
  if (out.empty()) {
    out = (negative ? "-" : "") + body;
  } else {
    out += negative ? " - " : " + ";
    out += body;
  }
}

void monomial_factors(const CoeffMonomial& m, std::vector<std::string>& factors) {
  std::vector<std::pair<std::string, int>> betas;
  for (const auto& [sym, e] : m.beta) betas.emplace_back(sym.name(), e);
  std::sort(betas.begin(), betas.end());
  for (const auto& [name, e] : betas) {
    factors.push_back(e == 1 ? name : name + "^" + std::to_string(e));
  }
  if (m.tau != 0) factors.push_back(m.tau == 1 ? "tau" : "tau^" + std::to_string(m.tau));
  if (m.t != 0) factors.push_back(m.t == 1 ? "t" : "t^" + std::to_string(m.t));
  if (m.c != 0) factors.push_back(m.c == 1 ? "C" : "C^" + std::to_string(m.c));
  if (m.s != 0) factors.push_back(m.s == 1 ? "S" : "S^" + std::to_string(m.s));
}

} // namespace detail

std::string to_string(const CoeffFunction& a) {
  if (a.is_zero()) return "0";
  std::vector<const CoeffFunction::Terms::value_type*> order;
  for (const auto& kv : a.terms()) order.push_back(&kv);
  std::sort(order.begin(), order.end(),
            [](auto* x, auto* y) { return canonical_compare(x->first, y->first) < 0; });
  std::string out;
  for (const auto* kv : order) {
    std::vector<std::string> factors;
    detail::monomial_factors(kv->first, factors);
    detail::append_term(out, kv->second, factors);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const CoeffFunction& a) { return os << to_string(a); }

} // namespace nhtwist
