#pragma once

// Expression grammar shared by coefficients, functions, operators and
// generator linear combinations:
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' int]            (negative int only on tau)
//   atom   := rational | i | tau | t | C | S | x<k> | d_t | d<k>
//           | identifier | '(' expr ')'
//
// Printing and LaTeX rendering live here as well.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhtwist/coeffring.hpp"
#include "nhtwist/funcspace.hpp"
#include "nhtwist/liealg.hpp"

namespace nhtwist {

enum class ExprContext : std::uint8_t {
  coefficient,  // no x<k>, no derivatives
  function,     // no derivatives
  operator_,    // derivatives only as rightmost factors
  lincomb,      // identifiers may name generators; result linear in them
};

struct ExprNode {
  enum class Kind : std::uint8_t {
    number, imag, tau, time, cosine, sine, coordinate, d_time, d_space, symbol,
    sum, product, power, group,
  };

  Kind kind = Kind::number;
  Rational value;        // number
  int index = 0;         // coordinate / d_space
  int exponent = 1;      // power
  std::string name;      // symbol
  std::vector<ExprNode> children;
  std::vector<bool> negated;  // sum: sign of each child
  std::size_t line = 1;
  std::size_t column = 1;

  bool has_derivative() const;
};

using ExprAST = ExprNode;

/// Throws SyntaxError (malformed input) or ContextError (atom not allowed).
ExprAST parse_expr(std::string_view src, ExprContext ctx);

/// Renders the tree; sums inside parentheses are written without spaces,
/// matching the canonical kernel printers.
std::string print_expr(const ExprAST& ast);

CoeffFunction evaluate_coefficient(const ExprAST& ast, Geometry g);
SpaceFunction evaluate_function(const ExprAST& ast, int dim, Geometry g);
DiffOp evaluate_operator(const ExprAST& ast, int dim, Geometry g);
LinComb evaluate_lincomb(const ExprAST& ast, const LieAlgebra& alg);

CoeffFunction parse_coefficient(std::string_view src, Geometry g);
SpaceFunction parse_function(std::string_view src, int dim, Geometry g);
DiffOp parse_operator(std::string_view src, int dim, Geometry g);
LinComb parse_lincomb(std::string_view src, const LieAlgebra& alg);

std::string print_expr(const CoeffFunction& v);
std::string print_expr(const SpaceFunction& v);
std::string print_expr(const DiffOp& v);

/// LaTeX with C_{+-}, S_{+-} subscripts and beta_{n}^{kl} symbols.
std::string print_latex(const CoeffFunction& v);
std::string print_latex(const SpaceFunction& v);

/// "beta5_1_2" -> "\beta_{5}^{12}", "beta4" -> "\beta_{4}", other names verbatim.
std::string latex_symbol(std::string_view name);

} // namespace nhtwist
