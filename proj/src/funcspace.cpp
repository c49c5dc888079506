#include "nhtwist/funcspace.hpp"

#include <algorithm>
#include <numeric>

#include "nhtwist/errors.hpp"

namespace nhtwist {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool DegLexLess::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

// ---------------------------------------------------------- SpaceFunction

SpaceFunction SpaceFunction::constant(int dim, const CoeffFunction& c) {
  SpaceFunction f(dim, c.geometry());
  f.add_term(Exponents(dim, 0), c);
  return f;
}

SpaceFunction SpaceFunction::constant(int dim, Geometry g, const Scalar& v) {
  return constant(dim, CoeffFunction::constant(g, v));
}

SpaceFunction SpaceFunction::coordinate(int dim, Geometry g, int index) {
  if (index < 0 || index > dim) throw IndexError("coordinate index out of range");
  if (index == 0) return constant(dim, CoeffFunction::time(g));
  Exponents x(dim, 0);
  x[index - 1] = 1;
  return monomial(dim, x, CoeffFunction::constant(g, Scalar(1)));
}

SpaceFunction SpaceFunction::monomial(int dim, const Exponents& x, const CoeffFunction& c) {
  SpaceFunction f(dim, c.geometry());
  f.add_term(x, c);
  return f;
}

void SpaceFunction::add_term(const Exponents& x, const CoeffFunction& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(x.size()) != dim_) throw StructureError("exponent vector has wrong length");
  if (c.geometry() != geometry_) throw StructureError("coefficient geometry mismatch");
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SpaceFunction::check_compatible(const SpaceFunction& o) const {
  if (dim_ != o.dim_) throw StructureError("dimension mismatch");
  if (geometry_ != o.geometry_) throw StructureError("geometry mismatch");
}

SpaceFunction SpaceFunction::operator-() const {
  SpaceFunction out(*this);
  for (auto& [x, c] : out.terms_) c = -c;
  return out;
}

SpaceFunction& SpaceFunction::operator+=(const SpaceFunction& o) {
  check_compatible(o);
  for (const auto& [x, c] : o.terms_) add_term(x, c);
  return *this;
}

SpaceFunction& SpaceFunction::operator-=(const SpaceFunction& o) {
  check_compatible(o);
  for (const auto& [x, c] : o.terms_) add_term(x, -c);
  return *this;
}

SpaceFunction& SpaceFunction::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [x, c] : terms_) c *= s;
  return *this;
}

SpaceFunction& SpaceFunction::operator*=(const CoeffFunction& k) {
  if (k.geometry() != geometry_) throw StructureError("coefficient geometry mismatch");
  Terms old = std::move(terms_);
  terms_.clear();
  for (const auto& [x, c] : old) add_term(x, c * k);
  return *this;
}

SpaceFunction operator*(const SpaceFunction& a, const SpaceFunction& b) {
  a.check_compatible(b);
  SpaceFunction out(a.dim_, a.geometry_);
  Exponents x(a.dim_);
  for (const auto& [xa, ca] : a.terms_) {
    for (const auto& [xb, cb] : b.terms_) {
      for (int i = 0; i < a.dim_; ++i) x[i] = xa[i] + xb[i];
      out.add_term(x, ca * cb);
    }
  }
  return out;
}

SpaceFunction map_coefficients(const SpaceFunction& f,
                               const std::function<CoeffFunction(const CoeffFunction&)>& fn) {
  std::vector<std::pair<Exponents, CoeffFunction>> mapped;
  for (const auto& [x, c] : f.terms()) mapped.emplace_back(x, fn(c));
  Geometry g = f.geometry();
  if (!mapped.empty()) {
    g = mapped.front().second.geometry();
  } else {
    g = fn(CoeffFunction(f.geometry())).geometry();
  }
  SpaceFunction out(f.dim(), g);
  for (const auto& [x, c] : mapped) out.add_term(x, c);
  return out;
}

SpaceFunction partial_t(const SpaceFunction& f) {
  SpaceFunction out(f.dim(), f.geometry());
  for (const auto& [x, c] : f.terms()) out.add_term(x, d_dt(c));
  return out;
}

SpaceFunction partial_x(const SpaceFunction& f, int i) {
  if (i < 1 || i > f.dim()) throw IndexError("derivative index out of range");
  SpaceFunction out(f.dim(), f.geometry());
  for (const auto& [x, c] : f.terms()) {
    const int e = x[i - 1];
    if (e == 0) continue;
    Exponents y = x;
    y[i - 1] = e - 1;
    out.add_term(y, c * Scalar(e));
  }
  return out;
}

SpaceFunction reflect(const SpaceFunction& f, Reflection which) {
  SpaceFunction out(f.dim(), f.geometry());
  for (const auto& [x, c] : f.terms()) {
    if (which == Reflection::space) {
      out.add_term(x, total_degree(x) % 2 ? -c : c);
      continue;
    }
    CoeffFunction r(c.geometry());
    for (const auto& [m, v] : c.terms()) r.add_term(m, (m.t + m.s) % 2 ? -v : v);
    out.add_term(x, r);
  }
  return out;
}

namespace {

void x_factors(const Exponents& x, std::vector<std::string>& factors, const char* prefix) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    std::string f = prefix + std::to_string(i + 1);
    if (x[i] != 1) f += "^" + std::to_string(x[i]);
    factors.push_back(std::move(f));
  }
}

// Renders sum_x coeff(x) * x^e with optional trailing operator factors.
void append_function(std::string& out, const SpaceFunction& f,
                     const std::vector<std::string>& trailing) {
  for (const auto& [x, c] : f.terms()) {
    std::vector<const CoeffFunction::Terms::value_type*> order;
    for (const auto& kv : c.terms()) order.push_back(&kv);
    std::sort(order.begin(), order.end(),
              [](auto* p, auto* q) { return canonical_compare(p->first, q->first) < 0; });
    for (const auto* kv : order) {
      std::vector<std::string> factors;
      detail::monomial_factors(kv->first, factors);
      x_factors(x, factors, "x");
      factors.insert(factors.end(), trailing.begin(), trailing.end());
      detail::append_term(out, kv->second, factors);
    }
  }
}

} // namespace

std::string to_string(const SpaceFunction& f) {
  if (f.is_zero()) return "0";
  std::string out;
  append_function(out, f, {});
  return out;
}

// ----------------------------------------------------------------- DiffOp

DiffOp DiffOp::identity(int dim, Geometry g) {
  DiffOp op(dim, g);
  op.add_term(Exponents(dim + 1, 0), SpaceFunction::constant(dim, g, Scalar(1)));
  return op;
}

DiffOp DiffOp::partial(int dim, Geometry g, int index) {
  if (index < 0 || index > dim) throw IndexError("derivative index out of range");
  DiffOp op(dim, g);
  Exponents d(dim + 1, 0);
  d[index] = 1;
  op.add_term(d, SpaceFunction::constant(dim, g, Scalar(1)));
  return op;
}

DiffOp DiffOp::multiplication(const SpaceFunction& f) {
  DiffOp op(f.dim(), f.geometry());
  op.add_term(Exponents(f.dim() + 1, 0), f);
  return op;
}

int DiffOp::order() const {
  int o = -1;
  for (const auto& [d, c] : terms_) o = std::max(o, total_degree(d));
  return o;
}

void DiffOp::add_term(const Exponents& derivs, const SpaceFunction& coeff) {
  if (coeff.is_zero()) return;
  if (static_cast<int>(derivs.size()) != dim_ + 1) {
    throw StructureError("derivative multi-index has wrong length");
  }
  if (coeff.dim() != dim_ || coeff.geometry() != geometry_) {
    throw StructureError("operator coefficient dimension/geometry mismatch");
  }
  auto [it, inserted] = terms_.try_emplace(derivs, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void DiffOp::check_compatible(const DiffOp& o) const {
  if (dim_ != o.dim_) throw StructureError("operator dimension mismatch");
  if (geometry_ != o.geometry_) throw StructureError("operator geometry mismatch");
}

DiffOp DiffOp::operator-() const {
  DiffOp out(*this);
  for (auto& [d, c] : out.terms_) c = -c;
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  check_compatible(o);
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  check_compatible(o);
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

DiffOp& DiffOp::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [d, c] : terms_) c *= s;
  return *this;
}

DiffOp& DiffOp::operator*=(const CoeffFunction& k) {
  Terms old = std::move(terms_);
  terms_.clear();
  for (auto& [d, c] : old) {
    c *= k;
    add_term(d, c);
  }
  return *this;
}

namespace {

SpaceFunction apply_derivatives(const Exponents& alpha, SpaceFunction f) {
  for (int k = 0; k < alpha[0] && !f.is_zero(); ++k) f = partial_t(f);
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    for (int k = 0; k < alpha[i] && !f.is_zero(); ++k) f = partial_x(f, static_cast<int>(i));
  }
  return f;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace

SpaceFunction apply(const DiffOp& op, const SpaceFunction& f) {
  if (op.dim() != f.dim() || op.geometry() != f.geometry()) {
    throw StructureError("operator and function disagree in dimension or geometry");
  }
  SpaceFunction out(f.dim(), f.geometry());
  for (const auto& [alpha, coeff] : op.terms()) {
    SpaceFunction df = apply_derivatives(alpha, f);
    if (!df.is_zero()) out += coeff * df;
  }
  return out;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  a.check_compatible(b);
  DiffOp out(a.dim(), a.geometry());
  const std::size_t n = static_cast<std::size_t>(a.dim()) + 1;
  for (const auto& [alpha, ca] : a.terms()) {
    // enumerate gamma <= alpha componentwise
    Exponents gamma(n, 0);
    while (true) {
      long weight = 1;
      for (std::size_t k = 0; k < n; ++k) weight *= binomial(alpha[k], gamma[k]);
      for (const auto& [beta, cb] : b.terms()) {
        SpaceFunction db = apply_derivatives(gamma, cb);
        if (db.is_zero()) continue;
        Exponents d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = alpha[k] - gamma[k] + beta[k];
        out.add_term(d, (ca * db) * Scalar(weight));
      }
      std::size_t k = 0;
      while (k < n && gamma[k] == alpha[k]) gamma[k++] = 0;
      if (k == n) break;
      ++gamma[k];
    }
  }
  return out;
}

DiffOp bracket(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

DiffOp map_coefficients(const DiffOp& op,
                        const std::function<CoeffFunction(const CoeffFunction&)>& fn) {
  Geometry g = fn(CoeffFunction(op.geometry())).geometry();
  DiffOp out(op.dim(), g);
  for (const auto& [d, c] : op.terms()) out.add_term(d, map_coefficients(c, fn));
  return out;
}

std::string to_string(const DiffOp& op) {
  if (op.is_zero()) return "0";
  std::string out;
  for (const auto& [d, c] : op.terms()) {
    std::vector<std::string> trailing;
    if (d[0] != 0) trailing.push_back(d[0] == 1 ? "d_t" : "d_t^" + std::to_string(d[0]));
    Exponents spatial(d.begin() + 1, d.end());
    x_factors(spatial, trailing, "d");
    append_function(out, c, trailing);
  }
  return out;
}

} // namespace nhtwist
