#include "nhtwist/exprio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nhtwist/errors.hpp"

namespace nhtwist {

namespace {

enum class Tok : std::uint8_t { number, ident, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t pos = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  auto is_ident_start = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
  };
  auto is_ident = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  };

  while (pos < src.size()) {
    const char c = src[pos];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    std::size_t len = 1;
    if (is_digit(c)) {
      while (pos + len < src.size() && is_digit(src[pos + len])) ++len;
      if (pos + len < src.size() && src[pos + len] == '/') {
        ++len;
        if (pos + len >= src.size() || !is_digit(src[pos + len])) {
          throw SyntaxError("expected a denominator", line, col + len);
        }
        while (pos + len < src.size() && is_digit(src[pos + len])) ++len;
      }
      tok.type = Tok::number;
    } else if (is_ident_start(c)) {
      while (pos + len < src.size() && is_ident(src[pos + len])) ++len;
      tok.type = Tok::ident;
    } else {
      switch (c) {
      case '+': tok.type = Tok::plus; break;
      case '-': tok.type = Tok::minus; break;
      case '*': tok.type = Tok::star; break;
      case '^': tok.type = Tok::caret; break;
      case '(': tok.type = Tok::lparen; break;
      case ')': tok.type = Tok::rparen; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    tok.text = std::string(src.substr(pos, len));
    advance(len);
    out.push_back(std::move(tok));
  }
  Token end;
  end.type = Tok::end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

std::optional<int> digits_suffix(std::string_view s, std::size_t from) {
  if (s.size() <= from) return std::nullopt;
  int v = 0;
  for (std::size_t k = from; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
  }
  auto [ptr, ec] = std::from_chars(s.data() + from, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_derivative_atom(const ExprNode& n) {
  if (n.kind == ExprNode::Kind::d_time || n.kind == ExprNode::Kind::d_space) return true;
  return n.kind == ExprNode::Kind::power && is_derivative_atom(n.children.front());
}

class Parser {
public:
  Parser(std::string_view src, ExprContext ctx) : toks_(lex(src)), ctx_(ctx) {}

  ExprNode parse() {
    ExprNode out = sum();
    if (peek().type != Tok::end) fail("unexpected '" + peek().text + "'");
    return out;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }
  [[noreturn]] static void context_fail(const std::string& msg, const Token& at) {
    throw ContextError(msg, at.line, at.column);
  }

  static ExprNode located(ExprNode::Kind kind, const Token& at) {
    ExprNode n;
    n.kind = kind;
    n.line = at.line;
    n.column = at.column;
    return n;
  }

  ExprNode sum() {
    const Token& first = peek();
    ExprNode node = located(ExprNode::Kind::sum, first);
    bool negative = false;
    if (peek().type == Tok::minus) {
      next();
      negative = true;
    }
    node.children.push_back(term());
    node.negated.push_back(negative);
    while (peek().type == Tok::plus || peek().type == Tok::minus) {
      negative = next().type == Tok::minus;
      node.children.push_back(term());
      node.negated.push_back(negative);
    }
    if (node.children.size() == 1 && !node.negated.front()) return std::move(node.children.front());
    return node;
  }

  ExprNode term() {
    const Token& first = peek();
    ExprNode node = located(ExprNode::Kind::product, first);
    bool derivative_seen = false;
    while (true) {
      const Token& at = peek();
      ExprNode f = factor();
      if (derivative_seen && !is_derivative_atom(f)) {
        context_fail("derivatives must be the rightmost factors of a product", at);
      }
      derivative_seen = derivative_seen || f.has_derivative();
      node.children.push_back(std::move(f));
      if (peek().type != Tok::star) break;
      next();
    }
    if (node.children.size() == 1) return std::move(node.children.front());
    return node;
  }

  ExprNode factor() {
    ExprNode base = atom();
    if (peek().type != Tok::caret) return base;
    const Token& caret = next();
    bool negative = false;
    if (peek().type == Tok::minus) {
      if (base.kind != ExprNode::Kind::tau) fail("negative power is only allowed on tau");
      next();
      negative = true;
    }
    if (peek().type != Tok::number || peek().text.find('/') != std::string::npos) {
      fail("expected an integer exponent");
    }
    const Token& num = next();
    int e = 0;
    auto [ptr, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), e);
    if (ec != std::errc() || e > 10000) {
      throw SyntaxError("exponent out of range", num.line, num.column);
    }
    ExprNode node = located(ExprNode::Kind::power, caret);
    node.line = base.line;
    node.column = base.column;
    node.exponent = negative ? -e : e;
    node.children.push_back(std::move(base));
    return node;
  }

  ExprNode atom() {
    const Token& tok = peek();
    switch (tok.type) {
    case Tok::number: {
      next();
      ExprNode n = located(ExprNode::Kind::number, tok);
      n.value = Rational(tok.text);
      if (n.value.get_den() == 0) {
        throw SyntaxError("zero denominator", tok.line, tok.column);
      }
      n.value.canonicalize();
      return n;
    }
    case Tok::lparen: {
      next();
      ExprNode n = located(ExprNode::Kind::group, tok);
      n.children.push_back(sum());
      if (peek().type != Tok::rparen) fail("expected ')'");
      next();
      return n;
    }
    case Tok::ident:
      next();
      return identifier(tok);
    case Tok::end:
      fail("unexpected end of input");
    default:
      fail("unexpected '" + tok.text + "'");
    }
  }

  ExprNode identifier(const Token& tok) {
    const std::string& s = tok.text;
    using K = ExprNode::Kind;
    if (s == "i") return located(K::imag, tok);
    if (s == "tau") return located(K::tau, tok);
    if (s == "t") return located(K::time, tok);
    if (s == "C") return located(K::cosine, tok);
    if (s == "S") return located(K::sine, tok);
    if (s == "d_t") {
      require_operator(tok);
      return located(K::d_time, tok);
    }
    if (s.size() > 1 && s[0] == 'x') {
      if (auto k = digits_suffix(s, 1)) {
        if (ctx_ == ExprContext::coefficient || ctx_ == ExprContext::lincomb) {
          context_fail("coordinate " + s + " is not allowed in a coefficient", tok);
        }
        ExprNode n = located(K::coordinate, tok);
        n.index = *k;
        return n;
      }
    }
    if (s.size() > 1 && s[0] == 'd') {
      if (auto k = digits_suffix(s, 1)) {
        require_operator(tok);
        ExprNode n = located(K::d_space, tok);
        n.index = *k;
        return n;
      }
    }
    ExprNode n = located(K::symbol, tok);
    n.name = s;
    return n;
  }

  void require_operator(const Token& tok) const {
    if (ctx_ != ExprContext::operator_) {
      context_fail("derivative " + tok.text + " is only allowed in an operator", tok);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ExprContext ctx_;
};

// ---------------------------------------------------------------- printing

std::string print_node(const ExprNode& n, bool nested);

std::string print_sum(const ExprNode& n, bool nested) {
  std::string out;
  for (std::size_t k = 0; k < n.children.size(); ++k) {
    const std::string body = print_node(n.children[k], nested);
    if (k == 0) {
      out = (n.negated[k] ? "-" : "") + body;
    } else if (nested) {
      out += (n.negated[k] ? "-" : "+") + body;
    } else {
      out += (n.negated[k] ? " - " : " + ") + body;
    }
  }
  return out;
}

std::string print_node(const ExprNode& n, bool nested) {
  using K = ExprNode::Kind;
  switch (n.kind) {
  case K::number: return n.value.get_str();
  case K::imag: return "i";
  case K::tau: return "tau";
  case K::time: return "t";
  case K::cosine: return "C";
  case K::sine: return "S";
  case K::coordinate: return "x" + std::to_string(n.index);
  case K::d_time: return "d_t";
  case K::d_space: return "d" + std::to_string(n.index);
  case K::symbol: return n.name;
  case K::sum: return print_sum(n, nested);
  case K::product: {
    std::string out;
    for (const auto& c : n.children) {
      if (!out.empty()) out += '*';
      out += print_node(c, true);
    }
    return out;
  }
  case K::power:
    return print_node(n.children.front(), true) + "^" + std::to_string(n.exponent);
  case K::group:
    return "(" + print_node(n.children.front(), true) + ")";
  }
  return "";
}

// -------------------------------------------------------------- evaluation

[[noreturn]] void context_fail(const std::string& msg, const ExprNode& at) {
  throw ContextError(msg, at.line, at.column);
}

DiffOp eval_op(const ExprNode& n, int dim, Geometry g) {
  using K = ExprNode::Kind;
  auto coeff = [&](const CoeffFunction& c) { return c * DiffOp::identity(dim, g); };
  switch (n.kind) {
  case K::number: return coeff(CoeffFunction::constant(g, Scalar(n.value)));
  case K::imag: return coeff(CoeffFunction::constant(g, Scalar::imag_unit()));
  case K::tau: return coeff(CoeffFunction::tau(g));
  case K::time: return coeff(CoeffFunction::time(g));
  case K::cosine:
  case K::sine:
    if (g == Geometry::flat) context_fail("C and S are not available in flat geometry", n);
    return coeff(n.kind == K::cosine ? CoeffFunction::cosine(g) : CoeffFunction::sine(g));
  case K::coordinate:
    if (n.index < 1 || n.index > dim) context_fail("coordinate index exceeds the dimension", n);
    return DiffOp::multiplication(SpaceFunction::coordinate(dim, g, n.index));
  case K::d_time: return DiffOp::partial(dim, g, 0);
  case K::d_space:
    if (n.index < 1 || n.index > dim) context_fail("derivative index exceeds the dimension", n);
    return DiffOp::partial(dim, g, n.index);
  case K::symbol: return coeff(CoeffFunction::beta(g, n.name));
  case K::sum: {
    DiffOp out(dim, g);
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      DiffOp part = eval_op(n.children[k], dim, g);
      if (n.negated[k]) out -= part;
      else out += part;
    }
    return out;
  }
  case K::product: {
    DiffOp out = eval_op(n.children.front(), dim, g);
    for (std::size_t k = 1; k < n.children.size(); ++k) {
      out = compose(out, eval_op(n.children[k], dim, g));
    }
    return out;
  }
  case K::power: {
    const ExprNode& base = n.children.front();
    if (base.kind == K::tau) return coeff(CoeffFunction::tau(g, n.exponent));
    const DiffOp b = eval_op(base, dim, g);
    DiffOp out = DiffOp::identity(dim, g);
    for (int k = 0; k < n.exponent; ++k) out = compose(out, b);
    return out;
  }
  case K::group: return eval_op(n.children.front(), dim, g);
  }
  throw StructureError("unknown expression node");
}

bool is_identity_only(const DiffOp& op) {
  for (const auto& [alpha, c] : op.terms()) {
    if (total_degree(alpha) != 0) return false;
  }
  return true;
}

SpaceFunction function_part(const DiffOp& op) {
  SpaceFunction out(op.dim(), op.geometry());
  for (const auto& [alpha, c] : op.terms()) out += c;
  return out;
}

struct LinValue {
  CoeffFunction scalar;
  LinComb lin;
};

LinValue eval_lin(const ExprNode& n, const LieAlgebra& alg) {
  using K = ExprNode::Kind;
  const Geometry g = alg.geometry();
  switch (n.kind) {
  case K::symbol:
    if (auto idx = alg.find(n.name)) {
      LinValue v{CoeffFunction(g), {}};
      v.lin.emplace(*idx, CoeffFunction::constant(g, Scalar(1)));
      return v;
    }
    break;
  case K::sum: {
    LinValue out{CoeffFunction(g), {}};
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      LinValue part = eval_lin(n.children[k], alg);
      const CoeffFunction sign = CoeffFunction::constant(g, Scalar(n.negated[k] ? -1 : 1));
      out.scalar += sign * part.scalar;
      add_to(out.lin, part.lin, sign);
    }
    return out;
  }
  case K::product: {
    LinValue out = eval_lin(n.children.front(), alg);
    for (std::size_t k = 1; k < n.children.size(); ++k) {
      LinValue rhs = eval_lin(n.children[k], alg);
      if (!out.lin.empty() && !rhs.lin.empty()) {
        context_fail("product of generators in a linear combination", n.children[k]);
      }
      LinComb lin;
      add_to(lin, out.lin, rhs.scalar);
      add_to(lin, rhs.lin, out.scalar);
      out.scalar = out.scalar * rhs.scalar;
      out.lin = std::move(lin);
    }
    return out;
  }
  case K::power: {
    LinValue base = eval_lin(n.children.front(), alg);
    if (base.lin.empty()) break;
    if (n.exponent != 1) context_fail("power of a generator in a linear combination", n);
    return base;
  }
  case K::group: return eval_lin(n.children.front(), alg);
  default:
    break;
  }
  return LinValue{evaluate_coefficient(n, g), {}};
}

// ------------------------------------------------------------------- LaTeX

std::string latex_power(const std::string& base, int e) {
  if (e == 1) return base;
  const std::string exp = std::to_string(e);
  return base + "^" + (exp.size() == 1 ? exp : "{" + exp + "}");
}

std::string latex_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

// Signed scalar head; empty magnitude when it is a bare 1 before factors.
std::pair<bool, std::string> latex_scalar(const Scalar& s, bool has_factors) {
  if (s.is_real()) {
    const Rational mag = abs(s.re);
    return {sgn(s.re) < 0, (mag == 1 && has_factors) ? "" : latex_rational(mag)};
  }
  if (sgn(s.re) == 0) {
    const Rational mag = abs(s.im);
    return {sgn(s.im) < 0, mag == 1 ? "i" : latex_rational(mag) + "i"};
  }
  const Rational mag = abs(s.im);
  return {false, "(" + latex_rational(s.re) + (sgn(s.im) < 0 ? " - " : " + ") +
                     (mag == 1 ? "" : latex_rational(mag)) + "i)"};
}

void latex_monomial(const CoeffMonomial& m, Geometry g, std::vector<std::string>& out) {
  std::vector<std::pair<std::string, int>> betas;
  for (const auto& [sym, e] : m.beta) betas.emplace_back(sym.name(), e);
  std::sort(betas.begin(), betas.end());
  for (const auto& [name, e] : betas) {
    const std::string sym = latex_symbol(name);
    out.push_back(e == 1 ? sym : "(" + sym + ")^" + std::to_string(e));
  }
  if (m.tau != 0) out.push_back(latex_power("\\tau", m.tau));
  if (m.t != 0) out.push_back(latex_power("t", m.t));
  const std::string sub = g == Geometry::hyperbolic ? "_{+}" : "_{-}";
  if (m.c != 0) out.push_back(latex_power("C", m.c) + sub);
  if (m.s != 0) out.push_back(latex_power("S", m.s) + sub);
}

void latex_append(std::string& out, const Scalar& coef, const std::vector<std::string>& factors) {
  auto [negative, head] = latex_scalar(coef, !factors.empty());
  std::string body = head;
  for (const auto& f : factors) {
    if (!body.empty()) body += ' ';
    body += f;
  }
  if (out.empty()) out = (negative ? "-" : "") + body;
  else out += (negative ? " - " : " + ") + body;
}

} // namespace

bool ExprNode::has_derivative() const {
  if (kind == Kind::d_time || kind == Kind::d_space) return true;
  return std::any_of(children.begin(), children.end(),
                     [](const ExprNode& c) { return c.has_derivative(); });
}

ExprAST parse_expr(std::string_view src, ExprContext ctx) { return Parser(src, ctx).parse(); }

std::string print_expr(const ExprAST& ast) { return print_node(ast, false); }

CoeffFunction evaluate_coefficient(const ExprAST& ast, Geometry g) {
  const DiffOp op = eval_op(ast, 1, g);
  CoeffFunction out(g);
  for (const auto& [alpha, f] : op.terms()) {
    if (total_degree(alpha) != 0) context_fail("derivative in a coefficient", ast);
    for (const auto& [x, c] : f.terms()) {
      if (total_degree(x) != 0) context_fail("coordinate in a coefficient", ast);
      out += c;
    }
  }
  return out;
}

SpaceFunction evaluate_function(const ExprAST& ast, int dim, Geometry g) {
  const DiffOp op = eval_op(ast, dim, g);
  if (!is_identity_only(op)) context_fail("derivative in a function", ast);
  return function_part(op);
}

DiffOp evaluate_operator(const ExprAST& ast, int dim, Geometry g) { return eval_op(ast, dim, g); }

LinComb evaluate_lincomb(const ExprAST& ast, const LieAlgebra& alg) {
  LinValue v = eval_lin(ast, alg);
  if (!v.scalar.is_zero()) context_fail("constant term in a linear combination", ast);
  return v.lin;
}

CoeffFunction parse_coefficient(std::string_view src, Geometry g) {
  return evaluate_coefficient(parse_expr(src, ExprContext::coefficient), g);
}

SpaceFunction parse_function(std::string_view src, int dim, Geometry g) {
  return evaluate_function(parse_expr(src, ExprContext::function), dim, g);
}

DiffOp parse_operator(std::string_view src, int dim, Geometry g) {
  return evaluate_operator(parse_expr(src, ExprContext::operator_), dim, g);
}

LinComb parse_lincomb(std::string_view src, const LieAlgebra& alg) {
  return evaluate_lincomb(parse_expr(src, ExprContext::lincomb), alg);
}

std::string print_expr(const CoeffFunction& v) { return to_string(v); }
std::string print_expr(const SpaceFunction& v) { return to_string(v); }
std::string print_expr(const DiffOp& v) { return to_string(v); }

std::string latex_symbol(std::string_view name) {
  if (name.substr(0, 4) != "beta") return std::string(name);
  const std::string_view rest = name.substr(4);
  const auto first = rest.find('_');
  if (first == std::string_view::npos) {
    if (digits_suffix(rest, 0)) return "\\beta_{" + std::string(rest) + "}";
    return std::string(name);
  }
  const auto second = rest.find('_', first + 1);
  if (second == std::string_view::npos) return std::string(name);
  const std::string_view id = rest.substr(0, first);
  const std::string_view k = rest.substr(first + 1, second - first - 1);
  const std::string_view l = rest.substr(second + 1);
  if (!digits_suffix(id, 0) || !digits_suffix(k, 0) || !digits_suffix(l, 0)) {
    return std::string(name);
  }
  const std::string sep = (k.size() > 1 || l.size() > 1) ? "," : "";
  return "\\beta_{" + std::string(id) + "}^{" + std::string(k) + sep + std::string(l) + "}";
}

std::string print_latex(const CoeffFunction& v) {
  if (v.is_zero()) return "0";
  std::vector<std::pair<const CoeffMonomial*, const Scalar*>> terms;
  for (const auto& [m, s] : v.terms()) terms.emplace_back(&m, &s);
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return canonical_compare(*a.first, *b.first) < 0;
  });
  std::string out;
  for (const auto& [m, s] : terms) {
    std::vector<std::string> factors;
    latex_monomial(*m, v.geometry(), factors);
    latex_append(out, *s, factors);
  }
  return out;
}

std::string print_latex(const SpaceFunction& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [x, c] : v.terms()) {
    std::vector<std::pair<const CoeffMonomial*, const Scalar*>> terms;
    for (const auto& [m, s] : c.terms()) terms.emplace_back(&m, &s);
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      return canonical_compare(*a.first, *b.first) < 0;
    });
    for (const auto& [m, s] : terms) {
      std::vector<std::string> factors;
      latex_monomial(*m, v.geometry(), factors);
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] != 0) factors.push_back(latex_power("x_{" + std::to_string(k + 1) + "}", x[k]));
      }
      latex_append(out, *s, factors);
    }
  }
  return out;
}

} // namespace nhtwist
