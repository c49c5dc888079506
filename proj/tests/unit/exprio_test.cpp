#include <gtest/gtest.h>

#include <random>

#include "nhtwist/diffrep.hpp"
#include "nhtwist/errors.hpp"
#include "nhtwist/exprio.hpp"
#include "random_values.hpp"

using namespace nhtwist;

namespace {

const Geometry kGeometries[] = {Geometry::hyperbolic, Geometry::trigonometric, Geometry::flat};

} // namespace

TEST(Parse, OperatorExamples) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  const Representation rep = make_representation(alg);
  EXPECT_EQ(parse_operator("i*tau*S*d1", 3, Geometry::hyperbolic), rep.image(alg.index_of("K1")));
  EXPECT_EQ(parse_operator("2*i*tau^2*(C-1)*d1", 3, Geometry::hyperbolic),
            rep.image(alg.index_of("F1")));
  const ExprAST ast = parse_expr("i*tau*S*d1", ExprContext::operator_);
  EXPECT_TRUE(ast.has_derivative());
}

TEST(Parse, Rejections) {
  for (ExprContext ctx : {ExprContext::coefficient, ExprContext::function, ExprContext::operator_}) {
    EXPECT_THROW((void)parse_expr("x1^-2", ctx), SyntaxError);
  }
  EXPECT_NO_THROW((void)parse_expr("tau^-2", ExprContext::coefficient));
  EXPECT_THROW((void)parse_coefficient("d1", Geometry::flat), ContextError);
  EXPECT_THROW((void)parse_coefficient("x1", Geometry::flat), ContextError);
  EXPECT_THROW((void)parse_function("C", 3, Geometry::flat), ContextError);
  EXPECT_THROW((void)parse_function("x4", 3, Geometry::flat), ContextError);
  EXPECT_THROW((void)parse_operator("d1*x1", 3, Geometry::flat), ContextError);
  EXPECT_THROW((void)parse_function("1/0", 3, Geometry::flat), SyntaxError);
  EXPECT_THROW((void)parse_function("(x1", 3, Geometry::flat), SyntaxError);
  EXPECT_THROW((void)parse_function("", 3, Geometry::flat), SyntaxError);
}

TEST(Parse, ErrorPosition) {
  try {
    (void)parse_expr("x1 +\n  2*#", ExprContext::function);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
  }
  try {
    (void)parse_coefficient("tau*d_t", Geometry::hyperbolic);
    FAIL();
  } catch (const ContextError& e) {
    EXPECT_EQ(e.column(), 5u);
  }
}

TEST(Parse, LinearCombinations) {
  const LieAlgebra alg = make_algebra(AlgebraKind::nh_plus);
  const LinComb x = parse_lincomb("-i*M23 + 2*tau^-2*K1", alg);
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(to_string(x, alg), "-i*M23 + 2*tau^-2*K1");
  EXPECT_THROW((void)parse_lincomb("K1*P1", alg), ContextError);
  EXPECT_THROW((void)parse_lincomb("K1 + 1", alg), ContextError);
  EXPECT_THROW((void)parse_lincomb("Q1", alg), Error);
}

TEST(Print, ZeroAndAst) {
  EXPECT_EQ(print_expr(CoeffFunction(Geometry::flat)), "0");
  EXPECT_EQ(print_expr(parse_expr("2*i*tau^2*(C-1)*d1", ExprContext::operator_)),
            "2*i*tau^2*(C-1)*d1");
  EXPECT_EQ(print_expr(parse_expr("x1 - 3/4*t^2", ExprContext::function)), "x1 - 3/4*t^2");
}

TEST(Print, CatalogImagesRoundTrip) {
  for (AlgebraKind k : {AlgebraKind::nh_plus, AlgebraKind::nh_minus, AlgebraKind::galilei_hat}) {
    const LieAlgebra alg = make_algebra(k);
    const Representation rep = make_representation(alg);
    for (const DiffOp& op : rep.images()) {
      const std::string text = print_expr(op);
      EXPECT_EQ(print_expr(parse_expr(text, ExprContext::operator_)), text);
      EXPECT_EQ(parse_operator(text, 3, alg.geometry()), op);
    }
  }
}

TEST(Print, Latex) {
  const CoeffFunction c2 =
      parse_coefficient("2*i*beta5_1_2*C^2", Geometry::hyperbolic);
  const std::string latex = print_latex(c2);
  EXPECT_NE(latex.find("C^2_{+}"), std::string::npos);
  EXPECT_NE(latex.find("\\beta_{5}^{12}"), std::string::npos);
  EXPECT_NE(print_latex(parse_coefficient("C", Geometry::trigonometric)).find("C_{-}"),
            std::string::npos);
  EXPECT_EQ(latex_symbol("beta4"), "\\beta_{4}");
  EXPECT_EQ(latex_symbol("gamma"), "gamma");
}

TEST(Fuzz, ParsePrintRoundTrip) {
  std::mt19937 rng(2024);
  for (Geometry g : kGeometries) {
    for (int trial = 0; trial < 80; ++trial) {
      const CoeffFunction c = fuzz::random_coeff(rng, g, 4);
      ASSERT_EQ(parse_coefficient(print_expr(c), g), c) << print_expr(c);
      const SpaceFunction f = fuzz::random_function(rng, 3, g, 4);
      ASSERT_EQ(parse_function(print_expr(f), 3, g), f) << print_expr(f);
      const DiffOp op = fuzz::random_operator(rng, 3, g, 2);
      ASSERT_EQ(parse_operator(print_expr(op), 3, g), op) << print_expr(op);
      const std::string text = print_expr(f);
      ASSERT_EQ(print_expr(parse_expr(text, ExprContext::function)), text);
    }
  }
}

TEST(Fuzz, IllegalCharacterPosition) {
  std::mt19937 rng(99);
  const char illegal[] = {'#', '$', '@', '!', '?', ';', '&', '%', '[', '~'};
  std::uniform_int_distribution<int> pick(0, sizeof(illegal) - 1);
  for (Geometry g : kGeometries) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::string base = print_expr(fuzz::random_function(rng, 3, g, 3));
      std::uniform_int_distribution<std::size_t> at(0, base.size());
      const std::size_t pos = at(rng);
      std::string src = base;
      src.insert(src.begin() + static_cast<std::ptrdiff_t>(pos), illegal[pick(rng)]);
      try {
        (void)parse_expr(src, ExprContext::function);
        FAIL() << src;
      } catch (const ContextError&) {
        FAIL() << src;
      } catch (const SyntaxError& e) {
        ASSERT_EQ(e.line(), 1u) << src;
        ASSERT_EQ(e.column(), pos + 1) << src;
      }
    }
  }
}
