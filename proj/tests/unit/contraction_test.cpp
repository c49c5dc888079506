#include <gtest/gtest.h>

#include "nhtwist/contraction.hpp"
#include "nhtwist/errors.hpp"
#include "nhtwist/exprio.hpp"

using namespace nhtwist;

namespace {

SpaceFunction flat(const std::string& src) { return parse_function(src, 3, Geometry::flat); }

} // namespace

TEST(Contraction, Kinds) {
  EXPECT_EQ(parse_contraction_kind("tau-infinity"), ContractionKind::tau_to_infinity);
  EXPECT_EQ(parse_contraction_kind("f_to_zero"), ContractionKind::f_to_zero);
  EXPECT_EQ(to_string(ContractionKind::both), "both");
  EXPECT_THROW((void)parse_contraction_kind("sideways"), Error);
  for (int id = 1; id <= 10; ++id) EXPECT_EQ(survives_f_to_zero(id), id >= 5);
}

TEST(Contraction, Algebras) {
  const LieAlgebra plus = make_algebra(AlgebraKind::nh_plus);
  EXPECT_EQ(contract_algebra(plus, ContractionKind::tau_to_infinity),
            make_algebra(AlgebraKind::galilei_hat));
  const LieAlgebra ordinary = contract_algebra(make_algebra(AlgebraKind::nh_minus),
                                               ContractionKind::f_to_zero);
  EXPECT_EQ(ordinary.size(), 10);
  EXPECT_FALSE(ordinary.find("F1").has_value());
  EXPECT_TRUE(check_jacobi(ordinary).empty());
  const LieAlgebra galilei = contract_algebra(plus, ContractionKind::both);
  EXPECT_EQ(galilei.name(), "galilei");
  EXPECT_EQ(galilei.size(), 10);
  EXPECT_EQ(galilei.geometry(), Geometry::flat);
  EXPECT_TRUE(is_zero(galilei.bracket(galilei.index_of("H"), galilei.index_of("P1"))));
}

TEST(Contraction, RepresentationsStayCompliant) {
  const LieAlgebra plus = make_algebra(AlgebraKind::nh_plus);
  const Representation rep = make_representation(plus);
  for (ContractionKind k :
       {ContractionKind::tau_to_infinity, ContractionKind::f_to_zero, ContractionKind::both}) {
    const LieAlgebra c = contract_algebra(plus, k);
    EXPECT_TRUE(check_representation(contract_representation(rep, plus, k), c).empty());
  }
}

TEST(Contraction, TableLimits) {
  const CommTable t1 =
      contract_table(spacetime_table(TwistSpec{1, AlgebraKind::nh_plus}), ContractionKind::tau_to_infinity);
  EXPECT_EQ(t1.entries.at({1, 2}), flat("2*i*beta1_1_2*t^4"));
  EXPECT_EQ(t1.algebra, "galilei_hat");
  const CommTable t3 = contract_table(spacetime_table(TwistSpec{3, AlgebraKind::nh_minus}),
                                      ContractionKind::tau_to_infinity);
  EXPECT_EQ(t3.entries.at({1, 3}), flat("2*i*beta3_1_3*t^3"));
  const CommTable before = spacetime_table(TwistSpec{10, AlgebraKind::nh_plus});
  const CommTable after = contract_table(before, ContractionKind::tau_to_infinity);
  EXPECT_EQ(after.entries.at({0, 1}), flat("2*i*beta10*x2"));
  EXPECT_EQ(after.entries.at({0, 2}), flat("-2*i*beta10*x1"));
}

TEST(Contraction, FToZeroRejectsAccelerationTwists) {
  for (int id = 1; id <= 4; ++id) {
    EXPECT_THROW((void)contract_table(spacetime_table(TwistSpec{id, AlgebraKind::nh_plus}),
                                      ContractionKind::f_to_zero),
                 StructureError);
  }
  const CommTable t = spacetime_table(TwistSpec{7, AlgebraKind::nh_plus});
  EXPECT_EQ(contract_table(t, ContractionKind::f_to_zero).entries, t.entries);
}

TEST(Contraction, FlatTableHasNoTauLimit) {
  EXPECT_THROW((void)contract_table(spacetime_table(TwistSpec{5, AlgebraKind::galilei_hat}),
                                    ContractionKind::tau_to_infinity),
               GeometryError);
}

TEST(Contraction, CommutingSquare) {
  for (AlgebraKind k : {AlgebraKind::nh_plus, AlgebraKind::nh_minus}) {
    for (int id = 1; id <= 10; ++id) {
      EXPECT_TRUE(check_commuting_square(TwistSpec{id, k}).empty()) << to_string(k) << " " << id;
    }
  }
  EXPECT_THROW((void)check_commuting_square(TwistSpec{5, AlgebraKind::galilei_hat}), GeometryError);
}
