#include "nhtwist/twist.hpp"

#include "nhtwist/errors.hpp"

namespace nhtwist {

namespace {

struct Parts {
  LieAlgebra alg;
  Representation rep;
  RMatrix r;
};

Parts build(const TwistSpec& spec) {
  LieAlgebra alg = make_algebra(spec.kind, spec.dim);
  Representation rep = make_representation(alg);
  RMatrix r = make_rmatrix(spec.id, spec.indices, alg);
  return {std::move(alg), std::move(rep), std::move(r)};
}

} // namespace

// ---------------------------------------------------------- TwistedAlgebra

TwistedAlgebra::TwistedAlgebra(LieAlgebra alg, Representation rep, RMatrix r, int max_order)
    : alg_(std::move(alg)), rep_(std::move(rep)), r_(std::move(r)), max_order_(max_order) {
  if (rep_.size() != alg_.size() || rep_.geometry() != alg_.geometry() ||
      rep_.dim() != alg_.dim()) {
    throw StructureError("representation does not match the algebra");
  }
  if (auto bad = non_commuting_carriers(r_, alg_); !bad.empty()) {
    throw NonAbelianCarrierError("twist carriers " + alg_.generator(bad.front().first).name +
                                 " and " + alg_.generator(bad.front().second).name +
                                 " do not commute");
  }
}

TwistedAlgebra::TwistedAlgebra(const TwistSpec& spec, int max_order)
    : TwistedAlgebra(
          [&] {
            Parts p = build(spec);
            return TwistedAlgebra(std::move(p.alg), std::move(p.rep), std::move(p.r), max_order);
          }()) {}

SpaceFunction TwistedAlgebra::coordinate(int index) const {
  if (index < 0 || index > dim()) throw IndexError("coordinate index out of range");
  return SpaceFunction::coordinate(dim(), geometry(), index);
}

std::vector<std::pair<TwistedAlgebra::SlotKey, CoeffFunction>>
TwistedAlgebra::split(const SpaceFunction& f) const {
  std::map<SlotKey, CoeffFunction> merged;
  for (const auto& [x, coeff] : f.terms()) {
    for (const auto& [m, v] : coeff.terms()) {
      SlotKey key{x, m.t, m.c, m.s};
      CoeffMonomial constant;
      constant.beta = m.beta;
      constant.tau = m.tau;
      auto c = CoeffFunction::monomial(geometry(), constant, v);
      auto [it, inserted] = merged.try_emplace(std::move(key), c);
      if (!inserted) it->second += c;
    }
  }
  std::vector<std::pair<SlotKey, CoeffFunction>> out;
  for (auto& [k, c] : merged) {
    if (!c.is_zero()) out.emplace_back(k, std::move(c));
  }
  return out;
}

SpaceFunction TwistedAlgebra::slot_function(const SlotKey& k) const {
  CoeffMonomial m;
  m.t = k.t;
  m.c = k.c;
  m.s = k.s;
  return SpaceFunction::monomial(dim(), k.x, CoeffFunction::monomial(geometry(), m));
}

const TwistedAlgebra::SlotImage& TwistedAlgebra::act(int gen, const SlotKey& k) {
  auto key = std::make_pair(gen, k);
  if (auto it = action_cache_.find(key); it != action_cache_.end()) return it->second;
  SlotImage image = split(apply(rep_.image(gen), slot_function(k)));
  return action_cache_.emplace(std::move(key), std::move(image)).first->second;
}

TwistedAlgebra::BiFunction TwistedAlgebra::step(const BiFunction& x) {
  BiFunction out;
  auto accumulate = [&](const SlotImage& left, const SlotImage& right, const CoeffFunction& c) {
    for (const auto& [k1, c1] : left) {
      const CoeffFunction c_left = c * c1;
      for (const auto& [k2, c2] : right) {
        CoeffFunction term = c_left * c2;
        auto [it, inserted] = out.try_emplace(SlotPair{k1, k2}, term);
        if (!inserted) it->second += term;
      }
    }
  };
  for (const auto& [keys, coeff] : x) {
    for (const auto& w : r_.terms()) {
      const CoeffFunction c = w.coeff * coeff;
      // (a (x) b - b (x) a) acting slot-wise
      const SlotImage& a1 = act(w.a, keys.first);
      if (!a1.empty()) {
        const SlotImage& b2 = act(w.b, keys.second);
        if (!b2.empty()) accumulate(a1, b2, c);
      }
      const SlotImage& b1 = act(w.b, keys.first);
      if (!b1.empty()) {
        const SlotImage& a2 = act(w.a, keys.second);
        if (!a2.empty()) accumulate(b1, a2, -c);
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

const StarResult& TwistedAlgebra::star_monomials(const SlotKey& a, const SlotKey& b) {
  SlotPair key{a, b};
  if (auto it = star_cache_.find(key); it != star_cache_.end()) return it->second;

  auto omega = [&](const BiFunction& x) {
    SpaceFunction out(dim(), geometry());
    for (const auto& [keys, c] : x) {
      out += c * (slot_function(keys.first) * slot_function(keys.second));
    }
    return out;
  };

  BiFunction term;
  term.emplace(key, CoeffFunction::constant(geometry(), Scalar(1)));
  StarResult result{omega(term), 0};
  for (int n = 1;; ++n) {
    if (n > max_order_) {
      throw TruncationError("star product series did not terminate by order " +
                            std::to_string(max_order_));
    }
    term = step(term);
    if (term.empty()) {
      result.witness_order = n;
      break;
    }
    const Scalar factor = Scalar(0, -1) * Scalar::fraction(1, n);
    for (auto& [k, c] : term) c *= factor;
    result.value += omega(term);
  }
  return star_cache_.emplace(std::move(key), std::move(result)).first->second;
}

StarResult TwistedAlgebra::star_with_witness(const SpaceFunction& f, const SpaceFunction& g) {
  if (f.dim() != dim() || g.dim() != dim()) throw StructureError("dimension mismatch");
  if (f.geometry() != geometry() || g.geometry() != geometry()) {
    throw GeometryError("function geometry differs from the twisted algebra");
  }
  StarResult out{SpaceFunction(dim(), geometry()), 0};
  const auto fs = split(f);
  const auto gs = split(g);
  for (const auto& [kf, cf] : fs) {
    for (const auto& [kg, cg] : gs) {
      const StarResult& part = star_monomials(kf, kg);
      out.value += (cf * cg) * part.value;
      out.witness_order = std::max(out.witness_order, part.witness_order);
    }
  }
  return out;
}

SpaceFunction TwistedAlgebra::star(const SpaceFunction& f, const SpaceFunction& g) {
  return star_with_witness(f, g).value;
}

SpaceFunction TwistedAlgebra::star_commutator(const SpaceFunction& f, const SpaceFunction& g) {
  return star(f, g) - star(g, f);
}

// ------------------------------------------------------------------ tables

std::string coordinate_name(int index) {
  return index == 0 ? "t" : "x" + std::to_string(index);
}

CommTable spacetime_table(TwistedAlgebra& tw) {
  CommTable table;
  table.twist = tw.twist_id();
  table.algebra = tw.algebra().name();
  table.geometry = tw.geometry();
  table.dim = tw.dim();
  for (int mu = 0; mu <= tw.dim(); ++mu) {
    for (int nu = mu + 1; nu <= tw.dim(); ++nu) {
      table.entries.emplace(std::make_pair(mu, nu),
                            tw.star_commutator(tw.coordinate(mu), tw.coordinate(nu)));
    }
  }
  return table;
}

CommTable spacetime_table(const TwistSpec& spec) {
  TwistedAlgebra tw(spec);
  return spacetime_table(tw);
}

DegreeClassification classify_degree(const CommTable& table) {
  if (table.geometry != Geometry::flat) {
    throw GeometryError("degree classification needs a flat (Galilei) table");
  }
  DegreeClassification out;
  for (const auto& [pair, rhs] : table.entries) {
    std::optional<int> degree;
    for (const auto& [x, coeff] : rhs.terms()) {
      for (const auto& [m, v] : coeff.terms()) {
        const int d = total_degree(x) + m.t;
        if (degree && *degree != d) {
          throw InhomogeneousError("entry [" + coordinate_name(pair.first) + ", " +
                                   coordinate_name(pair.second) + "] mixes degrees");
        }
        degree = d;
      }
    }
    if (!degree) continue;
    if (out.n && *out.n != *degree) throw InhomogeneousError("table mixes degrees");
    out.n = degree;
    out.degrees.emplace(pair, *degree);
  }
  return out;
}

bool reflection_invariant(const CommTable& table, Reflection which) {
  auto sign = [&](int mu) {
    const bool flips = which == Reflection::time ? mu == 0 : mu != 0;
    return flips ? -1 : 1;
  };
  for (const auto& [pair, rhs] : table.entries) {
    const long s = sign(pair.first) * sign(pair.second);
    if (!(reflect(rhs, which) == rhs * Scalar(s))) return false;
  }
  return true;
}

CommTable drop_betas(const CommTable& table) {
  CommTable out = table;
  for (auto& [pair, rhs] : out.entries) {
    rhs = map_coefficients(rhs, [](const CoeffFunction& c) { return drop_betas(c); });
  }
  return out;
}

// -------------------------------------------------------- tensor series

TensorPoly GradedSeries::sum() const {
  if (components.empty()) throw StructureError("empty series");
  TensorPoly out = components.front();
  for (std::size_t n = 1; n < components.size(); ++n) out += components[n];
  return out;
}

namespace {

// sum_n (i^n / n!) ad_r^n x through beta degree N.
TensorPoly adjoint_series(Enveloping& env, const TensorPoly& r, const TensorPoly& x, int order) {
  TensorPoly out = x.truncate_beta(order);
  TensorPoly term = out;
  for (int n = 1; n <= order; ++n) {
    term = env.commutator(r, term, order);
    term *= Scalar(0, 1) * Scalar::fraction(1, n);
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

// (1 + w)^-1 = sum_k (-w)^k with w of positive beta degree.
TensorPoly inverse_series(Enveloping& env, const TensorPoly& u, int order) {
  const TensorPoly one = TensorPoly::unit(u.arity(), u.geometry());
  const TensorPoly w = u - one;
  TensorPoly out = one;
  TensorPoly power = one;
  for (int k = 1; k <= order; ++k) {
    power = env.multiply(power, -w, order);
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

std::vector<TensorPoly> graded(const TensorPoly& x, int order) {
  std::vector<TensorPoly> out;
  for (int n = 0; n <= order; ++n) out.push_back(x.beta_component(n));
  return out;
}

void check_generator(const LieAlgebra& alg, int gen) {
  if (gen < 0 || gen >= alg.size()) throw IndexError("generator index out of range");
}

} // namespace

GradedSeries twisted_coproduct(const LieAlgebra& alg, const RMatrix& r, int gen, int order) {
  if (order < 0) throw IndexError("series order must be non-negative");
  check_generator(alg, gen);
  Enveloping env(alg);
  const TensorPoly rr = env.from_rmatrix(r);
  GradedSeries out;
  out.arity = 2;
  TensorPoly term =
      Enveloping::coproduct0(TensorPoly::generator(1, alg.geometry(), 0, gen), 0);
  out.components.push_back(term);
  for (int n = 1; n <= order + 1; ++n) {
    if (out.witness < 0) {
      term = env.commutator(rr, term);
      term *= Scalar(0, 1) * Scalar::fraction(1, n);
      if (term.is_zero()) out.witness = n;
    }
    if (n <= order) out.components.push_back(out.witness < 0 ? term : TensorPoly(2, alg.geometry()));
  }
  out.exact = out.witness >= 0;
  return out;
}

TensorPoly twist_element(const LieAlgebra& alg, const RMatrix& r, int order) {
  Enveloping env(alg);
  return env.exp_series(env.from_rmatrix(r), Scalar::imag_unit(), order);
}

TensorPoly twist_u(const LieAlgebra& alg, const RMatrix& r, int order) {
  Enveloping env(alg);
  const TensorPoly f = env.exp_series(env.from_rmatrix(r), Scalar::imag_unit(), order);
  return env.multiply_slots(env.antipode0(f, 1), 0, order);
}

GradedSeries twisted_antipode(const LieAlgebra& alg, const RMatrix& r, int gen, int order) {
  if (order < 0) throw IndexError("series order must be non-negative");
  check_generator(alg, gen);
  Enveloping env(alg);
  const TensorPoly u = twist_u(alg, r, order);
  const TensorPoly u_inv = inverse_series(env, u, order);
  const TensorPoly s0 = -TensorPoly::generator(1, alg.geometry(), 0, gen);
  const TensorPoly s = env.multiply(env.multiply(u, s0, order), u_inv, order);

  GradedSeries out;
  out.arity = 1;
  out.components = graded(s, order);
  // u = exp(i m(id (x) S0) r) when the carriers commute, and m(id (x) S0) r
  // vanishes for a wedge of commuting carriers, so u = 1 to all orders.
  const TensorPoly rr = env.from_rmatrix(r);
  if (non_commuting_carriers(r, alg).empty() &&
      env.multiply_slots(env.antipode0(rr, 1), 0).is_zero()) {
    out.exact = true;
    out.witness = 0;
  }
  return out;
}

bool CocycleReport::cocycle_holds() const {
  for (const auto& d : differences) {
    if (!d.is_zero()) return false;
  }
  return true;
}

CocycleReport check_cocycle(const LieAlgebra& alg, const RMatrix& r, int order) {
  if (order < 0) throw IndexError("series order must be non-negative");
  Enveloping env(alg);
  const TensorPoly f = env.exp_series(env.from_rmatrix(r), Scalar::imag_unit(), order);
  const TensorPoly f12 = Enveloping::embed(f, {0, 1}, 3);
  const TensorPoly f23 = Enveloping::embed(f, {1, 2}, 3);
  const TensorPoly lhs = env.multiply(f12, Enveloping::coproduct0(f, 0), order);
  const TensorPoly rhs = env.multiply(f23, Enveloping::coproduct0(f, 1), order);

  CocycleReport out;
  out.differences = graded(lhs - rhs, order);
  const TensorPoly one = TensorPoly::unit(1, alg.geometry());
  out.left_normalized = Enveloping::counit(f, 0) == one;
  out.right_normalized = Enveloping::counit(f, 1) == one;
  return out;
}

HopfReport check_hopf_axioms(const LieAlgebra& alg, const RMatrix& r, int order) {
  if (order < 0) throw IndexError("series order must be non-negative");
  Enveloping env(alg);
  const Geometry g = alg.geometry();
  const TensorPoly rr = env.from_rmatrix(r);
  const TensorPoly r12 = Enveloping::embed(rr, {0, 1}, 3);
  const TensorPoly r23 = Enveloping::embed(rr, {1, 2}, 3);
  const TensorPoly u = twist_u(alg, r, order);
  const TensorPoly u_inv = inverse_series(env, u, order);

  HopfReport out;
  for (int a = 0; a < alg.size(); ++a) {
    const GradedSeries series = twisted_coproduct(alg, r, a, order);
    out.coproduct_exact.push_back(series.exact);
    const TensorPoly delta = series.sum();
    const TensorPoly single = TensorPoly::generator(1, g, 0, a);

    // (Delta (x) id) Delta = (id (x) Delta) Delta
    const TensorPoly left = adjoint_series(env, r12, Enveloping::coproduct0(delta, 0), order);
    const TensorPoly right = adjoint_series(env, r23, Enveloping::coproduct0(delta, 1), order);
    if (!(left == right)) out.failures.push_back({"coassociativity", a, left - right});

    for (int slot : {0, 1}) {
      const TensorPoly c = Enveloping::counit(delta, slot);
      if (!(c == single)) out.failures.push_back({"counit", a, c - single});
    }

    // m(S (x) id) Delta(a) = m(id (x) S) Delta(a) = eps(a) = 0
    for (int slot : {0, 1}) {
      const TensorPoly us = Enveloping::embed(u, {slot}, 2);
      const TensorPoly us_inv = Enveloping::embed(u_inv, {slot}, 2);
      TensorPoly x = env.antipode0(delta, slot);
      x = env.multiply(env.multiply(us, x, order), us_inv, order);
      const TensorPoly m = env.multiply_slots(x, 0, order);
      if (!m.is_zero()) out.failures.push_back({"antipode", a, m});
    }
  }
  return out;
}

} // namespace nhtwist
