#include "nhtwist/tensor.hpp"

#include <algorithm>

#include "nhtwist/errors.hpp"

namespace nhtwist {

namespace {

inline unsigned char gen_byte(char c) { return static_cast<unsigned char>(c); }

inline char gen_char(int g) { return static_cast<char>(static_cast<unsigned char>(g)); }

int min_beta_degree(const CoeffFunction& c) {
  int d = -1;
  for (const auto& [m, v] : c.terms()) {
    const int b = beta_degree(m.beta);
    if (d < 0 || b < d) d = b;
  }
  return d;
}

} // namespace

std::vector<std::string_view> split_slots(std::string_view key) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = key.find(kSlotSeparator, start);
    if (pos == std::string_view::npos) {
      out.push_back(key.substr(start));
      return out;
    }
    out.push_back(key.substr(start, pos - start));
    start = pos + 1;
  }
}

TensorKey join_slots(const std::vector<std::string_view>& slots) {
  TensorKey key;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) key += kSlotSeparator;
    key += slots[i];
  }
  return key;
}

// ------------------------------------------------------------- TensorPoly

TensorPoly TensorPoly::unit(int arity, Geometry g) {
  TensorPoly x(arity, g);
  x.add_term(TensorKey(static_cast<std::size_t>(arity - 1), kSlotSeparator),
             CoeffFunction::constant(g, Scalar(1)));
  return x;
}

TensorPoly TensorPoly::generator(int arity, Geometry g, int slot, int gen) {
  std::vector<std::string> slots(arity);
  slots[slot] = std::string(1, gen_char(gen));
  std::vector<std::string_view> views(slots.begin(), slots.end());
  TensorPoly x(arity, g);
  x.add_term(join_slots(views), CoeffFunction::constant(g, Scalar(1)));
  return x;
}

void TensorPoly::add_term(const TensorKey& key, const CoeffFunction& c) {
  if (c.is_zero()) return;
  if (c.geometry() != geometry_) throw GeometryError("tensor coefficient geometry mismatch");
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int TensorPoly::max_beta_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, c.max_beta_degree());
  return d;
}

TensorPoly TensorPoly::beta_component(int degree) const {
  TensorPoly out(arity_, geometry_);
  for (const auto& [k, c] : terms_) out.add_term(k, c.beta_component(degree));
  return out;
}

TensorPoly TensorPoly::truncate_beta(int max_degree) const {
  TensorPoly out(arity_, geometry_);
  for (const auto& [k, c] : terms_) out.add_term(k, c.truncate_beta(max_degree));
  return out;
}

TensorPoly TensorPoly::map_coefficients(CoeffFunction (*fn)(const CoeffFunction&)) const {
  Geometry g = fn(CoeffFunction(geometry_)).geometry();
  TensorPoly out(arity_, g);
  for (const auto& [k, c] : terms_) out.add_term(k, fn(c));
  return out;
}

void TensorPoly::check(const TensorPoly& o) const {
  if (arity_ != o.arity_) throw StructureError("tensor arity mismatch");
  if (geometry_ != o.geometry_) throw GeometryError("tensor geometry mismatch");
}

TensorPoly TensorPoly::operator-() const {
  TensorPoly out(*this);
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
  check(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  check(o);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TensorPoly& TensorPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

TensorPoly& TensorPoly::operator*=(const CoeffFunction& k) {
  Terms old = std::move(terms_);
  terms_.clear();
  for (const auto& [key, c] : old) add_term(key, c * k);
  return *this;
}

// -------------------------------------------------------------- Enveloping

const TensorPoly& Enveloping::normal_order(const std::string& word) {
  if (auto it = ordered_.find(word); it != ordered_.end()) return it->second;

  std::size_t descent = word.size();
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (gen_byte(word[i]) > gen_byte(word[i + 1])) {
      descent = i;
      break;
    }
  }
  TensorPoly out(1, geometry());
  if (descent == word.size()) {
    out.add_term(word, CoeffFunction::constant(geometry(), Scalar(1)));
    return ordered_.emplace(word, std::move(out)).first->second;
  }
  // ... b a ... = ... a b ... + ... [b, a] ...
  std::string swapped = word;
  std::swap(swapped[descent], swapped[descent + 1]);
  out = normal_order(swapped);
  const LinComb& br = alg_->bracket(gen_byte(word[descent]), gen_byte(word[descent + 1]));
  for (const auto& [g, c] : br) {
    std::string shorter = word.substr(0, descent);
    shorter += gen_char(g);
    shorter += word.substr(descent + 2);
    TensorPoly part = normal_order(shorter);
    part *= c;
    out += part;
  }
  return ordered_.emplace(word, std::move(out)).first->second;
}

const TensorPoly& Enveloping::monomial_product(const std::string& u, const std::string& v) {
  if (u.empty()) return normal_order(v);
  if (v.empty()) return normal_order(u);
  return normal_order(u + v);
}

TensorPoly Enveloping::multiply(const TensorPoly& a, const TensorPoly& b, int max_beta) {
  if (a.arity() != b.arity()) throw StructureError("tensor arity mismatch");
  if (a.geometry() != b.geometry() || a.geometry() != geometry()) {
    throw GeometryError("tensor geometry mismatch");
  }
  const int n = a.arity();
  TensorPoly out(n, geometry());

  struct Prepared {
    std::vector<std::string> slots;
    const CoeffFunction* coeff;
    int min_degree;
  };
  auto prepare = [](const TensorPoly& x) {
    std::vector<Prepared> out;
    out.reserve(x.terms().size());
    for (const auto& [k, c] : x.terms()) {
      Prepared p;
      for (auto s : split_slots(k)) p.slots.emplace_back(s);
      p.coeff = &c;
      p.min_degree = min_beta_degree(c);
      out.push_back(std::move(p));
    }
    return out;
  };
  const auto pa = prepare(a);
  const auto pb = prepare(b);

  std::vector<const TensorPoly*> products(n);
  std::vector<std::string_view> keys(n);
  for (const auto& ta : pa) {
    for (const auto& tb : pb) {
      if (max_beta >= 0 && ta.min_degree + tb.min_degree > max_beta) continue;
      CoeffFunction coeff = (*ta.coeff) * (*tb.coeff);
      if (max_beta >= 0) coeff = coeff.truncate_beta(max_beta);
      if (coeff.is_zero()) continue;
      for (int s = 0; s < n; ++s) products[s] = &monomial_product(ta.slots[s], tb.slots[s]);

      // expand the tensor product of the per-slot results
      std::vector<TensorPoly::Terms::const_iterator> its(n);
      bool empty = false;
      for (int s = 0; s < n; ++s) {
        its[s] = products[s]->terms().begin();
        if (its[s] == products[s]->terms().end()) empty = true;
      }
      if (empty) continue;
      while (true) {
        CoeffFunction c = coeff;
        for (int s = 0; s < n; ++s) {
          keys[s] = its[s]->first;
          const auto& sc = its[s]->second;
          if (!(sc.size() == 1 && sc.terms().begin()->first == CoeffMonomial{} &&
                sc.terms().begin()->second == Scalar(1))) {
            c = c * sc;
          }
        }
        if (max_beta >= 0) c = c.truncate_beta(max_beta);
        out.add_term(join_slots(keys), c);
        int s = n - 1;
        while (s >= 0) {
          if (++its[s] != products[s]->terms().end()) break;
          its[s] = products[s]->terms().begin();
          --s;
        }
        if (s < 0) break;
      }
    }
  }
  return out;
}

TensorPoly Enveloping::commutator(const TensorPoly& a, const TensorPoly& b, int max_beta) {
  return multiply(a, b, max_beta) - multiply(b, a, max_beta);
}

TensorPoly Enveloping::exp_series(const TensorPoly& x, const Scalar& factor, int max_beta) {
  TensorPoly result = TensorPoly::unit(x.arity(), x.geometry());
  TensorPoly term = result;
  for (int n = 1; n <= max_beta; ++n) {
    term = multiply(term, x, max_beta);
    term *= factor;
    term *= Scalar::fraction(1, n);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

TensorPoly Enveloping::from_rmatrix(const RMatrix& r) const {
  TensorPoly out(2, geometry());
  for (const auto& w : r.terms()) {
    std::string ab{gen_char(w.a), kSlotSeparator, gen_char(w.b)};
    std::string ba{gen_char(w.b), kSlotSeparator, gen_char(w.a)};
    out.add_term(ab, w.coeff);
    out.add_term(ba, -w.coeff);
  }
  return out;
}

TensorPoly Enveloping::embed(const TensorPoly& x, const std::vector<int>& slots, int arity) {
  if (static_cast<int>(slots.size()) != x.arity()) throw StructureError("embed: slot count");
  TensorPoly out(arity, x.geometry());
  std::vector<std::string_view> target(arity);
  for (const auto& [k, c] : x.terms()) {
    auto parts = split_slots(k);
    std::fill(target.begin(), target.end(), std::string_view{});
    for (std::size_t i = 0; i < slots.size(); ++i) target[slots[i]] = parts[i];
    out.add_term(join_slots(target), c);
  }
  return out;
}

TensorPoly Enveloping::coproduct0(const TensorPoly& x, int slot) {
  TensorPoly out(x.arity() + 1, x.geometry());
  for (const auto& [k, c] : x.terms()) {
    auto parts = split_slots(k);
    const std::string_view w = parts[slot];
    if (w.size() > 20) throw StructureError("coproduct of a monomial of excessive degree");
    const unsigned long subsets = 1UL << w.size();
    for (unsigned long mask = 0; mask < subsets; ++mask) {
      std::string left;
      std::string right;
      for (std::size_t i = 0; i < w.size(); ++i) {
        ((mask >> i) & 1UL ? left : right) += w[i];
      }
      std::vector<std::string_view> slots;
      slots.reserve(parts.size() + 1);
      for (int s = 0; s < static_cast<int>(parts.size()); ++s) {
        if (s == slot) {
          slots.push_back(left);
          slots.push_back(right);
        } else {
          slots.push_back(parts[s]);
        }
      }
      out.add_term(join_slots(slots), c);
    }
  }
  return out;
}

TensorPoly Enveloping::counit(const TensorPoly& x, int slot) {
  if (x.arity() < 2) throw StructureError("counit would leave no slots");
  TensorPoly out(x.arity() - 1, x.geometry());
  for (const auto& [k, c] : x.terms()) {
    auto parts = split_slots(k);
    if (!parts[slot].empty()) continue;
    parts.erase(parts.begin() + slot);
    out.add_term(join_slots(parts), c);
  }
  return out;
}

TensorPoly Enveloping::antipode0(const TensorPoly& x, int slot) {
  TensorPoly out(x.arity(), x.geometry());
  for (const auto& [k, c] : x.terms()) {
    auto parts = split_slots(k);
    std::string reversed(parts[slot].rbegin(), parts[slot].rend());
    const Scalar sign = reversed.size() % 2 ? Scalar(-1) : Scalar(1);
    const TensorPoly& image = normal_order(reversed);
    for (const auto& [w, wc] : image.terms()) {
      std::vector<std::string_view> slots = parts;
      slots[slot] = w;
      out.add_term(join_slots(slots), (c * wc) * sign);
    }
  }
  return out;
}

TensorPoly Enveloping::multiply_slots(const TensorPoly& x, int slot, int max_beta) {
  if (slot + 1 >= x.arity()) throw StructureError("multiply_slots: no slot to the right");
  TensorPoly out(x.arity() - 1, x.geometry());
  for (const auto& [k, c] : x.terms()) {
    auto parts = split_slots(k);
    const TensorPoly& prod =
        monomial_product(std::string(parts[slot]), std::string(parts[slot + 1]));
    for (const auto& [w, wc] : prod.terms()) {
      std::vector<std::string_view> slots;
      for (int s = 0; s < static_cast<int>(parts.size()); ++s) {
        if (s == slot) slots.push_back(w);
        else if (s != slot + 1) slots.push_back(parts[s]);
      }
      CoeffFunction coeff = c * wc;
      if (max_beta >= 0) coeff = coeff.truncate_beta(max_beta);
      out.add_term(join_slots(slots), coeff);
    }
  }
  return out;
}

TensorPoly schouten_cybe(const RMatrix& r, const LieAlgebra& alg) {
  Enveloping env(alg);
  const TensorPoly rr = env.from_rmatrix(r);
  const TensorPoly r12 = Enveloping::embed(rr, {0, 1}, 3);
  const TensorPoly r13 = Enveloping::embed(rr, {0, 2}, 3);
  const TensorPoly r23 = Enveloping::embed(rr, {1, 2}, 3);
  return env.commutator(r12, r13) + env.commutator(r12, r23) + env.commutator(r13, r23);
}

std::string to_string(const TensorPoly& x, const LieAlgebra& alg) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    std::string slots;
    auto parts = split_slots(k);
    for (std::size_t s = 0; s < parts.size(); ++s) {
      if (s) slots += " (x) ";
      if (parts[s].empty()) {
        slots += "1";
        continue;
      }
      for (std::size_t i = 0; i < parts[s].size(); ++i) {
        if (i) slots += "*";
        slots += alg.generator(gen_byte(parts[s][i])).name;
      }
    }
    std::string coeff = to_string(c);
    bool negative = false;
    if (c.size() == 1 && coeff.front() == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    if (coeff == "1") out += "(" + slots + ")";
    else if (c.size() == 1) out += coeff + "*(" + slots + ")";
    else out += "(" + coeff + ")*(" + slots + ")";
  }
  return out;
}

} // namespace nhtwist
