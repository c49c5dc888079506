#include <gtest/gtest.h>

#include <set>

#include "nhtwist/documents.hpp"
#include "nhtwist/errors.hpp"
#include "nhtwist/exprio.hpp"
#include "nhtwist/twist.hpp"

using namespace nhtwist;

namespace {

const AlgebraKind kKinds[] = {AlgebraKind::nh_plus, AlgebraKind::nh_minus,
                              AlgebraKind::galilei_hat};

SpaceFunction fn(const std::string& src, Geometry g) { return parse_function(src, 3, g); }

CommTable oracle_table(AlgebraKind k, int twist) {
  const auto path = fixture_dir() / "oracle" /
                    (std::string(to_string(k)) + "_twist" + std::to_string(twist) + ".json");
  return table_from_json(Json::parse(read_text_file(path)));
}

std::vector<SpaceFunction> monomials_up_to_two(TwistedAlgebra& tw) {
  std::vector<SpaceFunction> out{SpaceFunction::constant(3, tw.geometry(), Scalar(1))};
  for (int a = 0; a <= 3; ++a) out.push_back(tw.coordinate(a));
  for (int a = 0; a <= 3; ++a) {
    for (int b = a; b <= 3; ++b) out.push_back(tw.coordinate(a) * tw.coordinate(b));
  }
  return out;
}

} // namespace

TEST(StarProduct, TwistFiveCoordinates) {
  TwistedAlgebra tw(TwistSpec{5, AlgebraKind::nh_plus});
  const SpaceFunction x1 = tw.coordinate(1);
  const SpaceFunction x2 = tw.coordinate(2);
  EXPECT_EQ(tw.star(x1, x2) - x1 * x2, fn("i*beta5_1_2*C^2", Geometry::hyperbolic));
  const StarResult r = tw.star_with_witness(x1, x2);
  EXPECT_EQ(r.witness_order, 2);
}

TEST(StarProduct, TwistTenSpatialIsUndeformed) {
  TwistedAlgebra tw(TwistSpec{10, AlgebraKind::nh_minus});
  EXPECT_EQ(tw.star(tw.coordinate(1), tw.coordinate(2)), tw.coordinate(1) * tw.coordinate(2));
}

TEST(StarProduct, UnitIsNeutral) {
  for (AlgebraKind k : kKinds) {
    for (int id = 1; id <= 10; ++id) {
      TwistedAlgebra tw(TwistSpec{id, k});
      const SpaceFunction one = SpaceFunction::constant(3, tw.geometry(), Scalar(1));
      const SpaceFunction f = tw.coordinate(0) * tw.coordinate(1) * tw.coordinate(3);
      EXPECT_EQ(tw.star(f, one), f);
      EXPECT_EQ(tw.star(one, f), f);
    }
  }
}

TEST(StarProduct, TruncationErrorWhenOrderTooSmall) {
  TwistedAlgebra tw(TwistSpec{1, AlgebraKind::galilei_hat}, 1);
  EXPECT_THROW((void)tw.star(tw.coordinate(1), tw.coordinate(2)), TruncationError);
}

TEST(SpacetimeTable, MatchesIndependentSeriesOracle) {
  for (AlgebraKind k : kKinds) {
    for (int id = 1; id <= 10; ++id) {
      const CommTable derived = spacetime_table(TwistSpec{id, k});
      const CommTable oracle = oracle_table(k, id);
      EXPECT_EQ(derived.entries, oracle.entries) << to_string(k) << " twist " << id;
    }
  }
}

TEST(SpacetimeTable, PaperExamples) {
  const Geometry trig = Geometry::trigonometric;
  const CommTable t7 = spacetime_table(TwistSpec{7, AlgebraKind::nh_minus});
  EXPECT_EQ(t7.entries.at({1, 2}), fn("2*i*beta7_1_2*tau^2*S^2", trig));
  EXPECT_TRUE(t7.entries.at({0, 1}).is_zero());

  const CommTable t10 = spacetime_table(TwistSpec{10, AlgebraKind::nh_plus});
  EXPECT_EQ(t10.entries.at({0, 1}), fn("2*i*beta10*x2", Geometry::hyperbolic));
  EXPECT_EQ(t10.entries.at({0, 2}), fn("-2*i*beta10*x1", Geometry::hyperbolic));
  EXPECT_TRUE(t10.entries.at({0, 3}).is_zero());
  EXPECT_TRUE(t10.entries.at({1, 2}).is_zero());

  const CommTable t1 = spacetime_table(TwistSpec{1, AlgebraKind::galilei_hat});
  EXPECT_EQ(t1.entries.at({2, 3}), fn("2*i*beta1_2_3*t^4", Geometry::flat));
}

TEST(SpacetimeTable, ItemsTwoAndThreeAreTwiceThePrintedValue) {
  for (AlgebraKind k : kKinds) {
    for (int id : {2, 3}) {
      const CommTable derived = spacetime_table(TwistSpec{id, k});
      const GoldenComparison cmp = compare_with_golden(derived);
      ASSERT_FALSE(cmp.matches());
      for (const auto& [pair, rhs] : derived.entries) {
        SpaceFunction twice = cmp.golden.entries.at(pair) * Scalar(2);
        EXPECT_EQ(rhs, twice);
      }
    }
  }
}

TEST(SpacetimeTable, OtherItemsMatchGoldens) {
  for (AlgebraKind k : kKinds) {
    for (int id : {1, 4, 5, 6, 7, 8, 9, 10}) {
      EXPECT_TRUE(compare_with_golden(spacetime_table(TwistSpec{id, k})).matches())
          << to_string(k) << " twist " << id;
    }
  }
}

TEST(SpacetimeTable, AlternativeIndicesAndDimension) {
  TwistSpec spec{4, AlgebraKind::galilei_hat};
  spec.indices.mkl = {1, 2, 3};
  const CommTable t = spacetime_table(spec);
  EXPECT_EQ(t.entries.at({2, 3}), fn("0", Geometry::flat));
  EXPECT_EQ(t.entries.at({1, 2}), fn("-2*i*beta4*t^2*x3", Geometry::flat));
  spec = TwistSpec{5, AlgebraKind::galilei_hat, {}, 4};
  EXPECT_EQ(spacetime_table(spec).entries.size(), 10u);
}

TEST(Classification, FlatDegrees) {
  const std::map<int, int> expected{{1, 4}, {2, 2}, {3, 3}, {4, 3}, {5, 0},
                                    {6, 1}, {7, 2}, {8, 2}, {9, 1}, {10, 1}};
  for (const auto& [id, n] : expected) {
    const DegreeClassification c = classify_degree(spacetime_table(TwistSpec{id, AlgebraKind::galilei_hat}));
    ASSERT_TRUE(c.n.has_value());
    EXPECT_EQ(*c.n, n) << id;
  }
  EXPECT_THROW((void)classify_degree(spacetime_table(TwistSpec{5, AlgebraKind::nh_plus})),
               GeometryError);
  CommTable mixed = spacetime_table(TwistSpec{5, AlgebraKind::galilei_hat});
  mixed.entries.at({1, 2}) += fn("t", Geometry::flat);
  EXPECT_THROW((void)classify_degree(mixed), InhomogeneousError);
  EXPECT_FALSE(classify_degree(drop_betas(spacetime_table(TwistSpec{5, AlgebraKind::galilei_hat}))).n);
}

TEST(Reflection, TimeAndSpaceInvarianceSets) {
  std::set<int> time;
  std::set<int> space;
  for (int id = 1; id <= 10; ++id) {
    bool t_ok = true;
    bool s_ok = true;
    for (AlgebraKind k : {AlgebraKind::nh_plus, AlgebraKind::nh_minus}) {
      const CommTable table = spacetime_table(TwistSpec{id, k});
      t_ok = t_ok && reflection_invariant(table, Reflection::time);
      s_ok = s_ok && reflection_invariant(table, Reflection::space);
    }
    if (t_ok) time.insert(id);
    if (s_ok) space.insert(id);
  }
  EXPECT_EQ(time, (std::set<int>{1, 2, 4, 5, 7, 9}));
  EXPECT_EQ(space, (std::set<int>{1, 2, 3, 5, 6, 7, 10}));
}

TEST(Coproduct, TwistFivePrimitive) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  const RMatrix r = make_rmatrix(5, TwistIndices{}, alg);
  const int p1 = alg.index_of("P1");
  const GradedSeries s = twisted_coproduct(alg, r, p1, 0);
  EXPECT_TRUE(s.exact);
  EXPECT_EQ(s.sum(), Enveloping::coproduct0(TensorPoly::generator(1, alg.geometry(), 0, p1), 0));
}

TEST(Coproduct, TwistSixHamiltonian) {
  for (AlgebraKind k : {AlgebraKind::galilei_hat, AlgebraKind::nh_plus}) {
    const LieAlgebra alg = make_algebra(k);
    const RMatrix r = make_rmatrix(6, TwistIndices{}, alg);
    const GradedSeries s = twisted_coproduct(alg, r, alg.index_of("H"), 2);
    EXPECT_TRUE(s.exact);
    ASSERT_EQ(s.components.size(), 3u);
    EXPECT_TRUE(s.components[2].is_zero());
    std::set<std::pair<GenKind, GenKind>> shapes;
    for (const auto& [key, c] : s.components[1].terms()) {
      const auto slots = split_slots(key);
      ASSERT_EQ(slots.size(), 2u);
      ASSERT_EQ(slots[0].size(), 1u);
      ASSERT_EQ(slots[1].size(), 1u);
      shapes.insert({alg.generator(static_cast<unsigned char>(slots[0][0])).kind,
                     alg.generator(static_cast<unsigned char>(slots[1][0])).kind});
      EXPECT_EQ(c.max_beta_degree(), 1);
    }
    // Newton-Hooke: [P, H] is proportional to K, so K (x) K terms join the P (x) P ones.
    std::set<std::pair<GenKind, GenKind>> expected{{GenKind::P, GenKind::P}};
    if (k != AlgebraKind::galilei_hat) expected.insert({GenKind::K, GenKind::K});
    EXPECT_EQ(shapes, expected);
  }
}

TEST(Coproduct, TwistTenIsTruncated) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  const RMatrix r = make_rmatrix(10, TwistIndices{}, alg);
  const GradedSeries s = twisted_coproduct(alg, r, alg.index_of("P1"), 3);
  EXPECT_FALSE(s.exact);
  ASSERT_EQ(s.components.size(), 4u);
  for (const auto& c : s.components) EXPECT_FALSE(c.is_zero());
  const std::string first = to_string(s.components[1], alg);
  EXPECT_NE(first.find("K1"), std::string::npos);
  EXPECT_NE(first.find("P2"), std::string::npos);
}

TEST(Antipode, Examples) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  for (int id = 1; id <= 10; ++id) {
    const RMatrix r = make_rmatrix(id, TwistIndices{}, alg);
    const int h = alg.index_of("H");
    const GradedSeries s0 = twisted_antipode(alg, r, h, 0);
    EXPECT_EQ(s0.sum(), -TensorPoly::generator(1, alg.geometry(), 0, h));
  }
  const RMatrix r5 = make_rmatrix(5, TwistIndices{}, alg);
  const int p1 = alg.index_of("P1");
  for (int n : {1, 2, 4}) {
    const GradedSeries s = twisted_antipode(alg, r5, p1, n);
    EXPECT_TRUE(s.exact);
    EXPECT_EQ(s.sum(), -TensorPoly::generator(1, alg.geometry(), 0, p1));
  }
  const RMatrix r7 = make_rmatrix(7, TwistIndices{}, alg);
  const TensorPoly u = twist_u(alg, r7, 2);
  EXPECT_EQ(u, TensorPoly::unit(1, alg.geometry()));
  const GradedSeries s7 = twisted_antipode(alg, r7, alg.index_of("H"), 2);
  EXPECT_TRUE(s7.components[1].is_zero());
}

TEST(Cocycle, ExamplesAndNormalization) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  const CocycleReport r5 = check_cocycle(alg, make_rmatrix(5, TwistIndices{}, alg), 4);
  EXPECT_TRUE(r5.passed());
  EXPECT_EQ(r5.differences.size(), 5u);
  const CocycleReport r10 = check_cocycle(alg, make_rmatrix(10, TwistIndices{}, alg), 3);
  EXPECT_TRUE(r10.passed());
  for (int id = 1; id <= 10; ++id) {
    const CocycleReport rep = check_cocycle(alg, make_rmatrix(id, TwistIndices{}, alg), 1);
    EXPECT_TRUE(rep.left_normalized && rep.right_normalized) << id;
  }
}

TEST(Cocycle, NonAbelianProbeFails) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  const RMatrix r(0, {WedgeTerm{CoeffFunction::beta(alg.geometry(), "b"), alg.index_of("K1"),
                                alg.index_of("H")}});
  EXPECT_FALSE(check_cocycle(alg, r, 2).cocycle_holds());
}

TEST(HopfAxioms, TerminatingAndTruncated) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  const HopfReport r5 = check_hopf_axioms(alg, make_rmatrix(5, TwistIndices{}, alg), 3);
  EXPECT_TRUE(r5.passed());
  for (bool e : r5.coproduct_exact) EXPECT_TRUE(e);
  const HopfReport r10 = check_hopf_axioms(alg, make_rmatrix(10, TwistIndices{}, alg), 3);
  EXPECT_TRUE(r10.passed());
  EXPECT_FALSE(r10.coproduct_exact.at(alg.index_of("P1")));
}

TEST(UndeformedLimit, BetaZeroIsClassical) {
  for (AlgebraKind k : kKinds) {
    const LieAlgebra alg = make_algebra(k);
    for (int id = 1; id <= 10; ++id) {
      const CommTable t = drop_betas(spacetime_table(TwistSpec{id, k}));
      for (const auto& [pair, rhs] : t.entries) EXPECT_TRUE(rhs.is_zero());
      const RMatrix r = make_rmatrix(id, TwistIndices{}, alg);
      for (int g = 0; g < alg.size(); ++g) {
        const TensorPoly full = twisted_coproduct(alg, r, g, 2).sum();
        const TensorPoly classical = full.map_coefficients(&drop_betas);
        EXPECT_EQ(classical,
                  Enveloping::coproduct0(TensorPoly::generator(1, alg.geometry(), 0, g), 0));
      }
    }
  }
}

class StarProperties : public ::testing::TestWithParam<std::tuple<AlgebraKind, int>> {};

TEST_P(StarProperties, AssociativityAndJacobi) {
  const auto [kind, id] = GetParam();
  TwistedAlgebra tw(TwistSpec{id, kind});
  const auto mons = monomials_up_to_two(tw);
  for (const auto& f : mons) {
    for (const auto& g : mons) {
      const SpaceFunction fg = tw.star(f, g);
      for (const auto& h : mons) {
        ASSERT_EQ(tw.star(fg, h), tw.star(f, tw.star(g, h)));
      }
    }
  }
  auto br = [&](const SpaceFunction& a, const SpaceFunction& b) { return tw.star_commutator(a, b); };
  for (std::size_t i = 0; i < mons.size(); ++i) {
    for (std::size_t j = i + 1; j < mons.size(); ++j) {
      for (std::size_t l = j + 1; l < mons.size(); ++l) {
        const auto& f = mons[i];
        const auto& g = mons[j];
        const auto& h = mons[l];
        ASSERT_TRUE((br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))).is_zero());
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllTwists, StarProperties,
                         ::testing::Combine(::testing::Values(AlgebraKind::nh_plus,
                                                              AlgebraKind::nh_minus,
                                                              AlgebraKind::galilei_hat),
                                            ::testing::Range(1, 11)));
