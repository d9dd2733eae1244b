#include "gaq/parser.hpp"

#include <cctype>

#include "gaq/errors.hpp"

namespace gaq {

namespace {

struct Token {
  enum class Kind { Integer, Identifier, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, SourcePos origin) : text_(text), line_(origin.line), column_(origin.column) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    const std::size_t line = line_, column = column_;
    if (pos_ >= text_.size()) return {Token::Kind::End, "", line, column};
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        advance();
      }
      return {Token::Kind::Integer, s, line, column};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        s += text_[pos_];
        advance();
      }
      return {Token::Kind::Identifier, s, line, column};
    }
    if (std::string_view("+-*/^()&").find(c) != std::string_view::npos) {
      advance();
      return {Token::Kind::Symbol, std::string(1, c), line, column};
    }
    throw ParseError(line, column, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

class Parser {
 public:
  Parser(std::string_view text, SourcePos origin) : lexer_(text, origin) { current_ = lexer_.next(); }

  std::unique_ptr<AstNode> parse() {
    auto node = sum();
    if (current_.kind != Token::Kind::End) error("unexpected '" + current_.text + "'");
    return node;
  }

 private:
  using Node = std::unique_ptr<AstNode>;

  [[noreturn]] void error(const std::string& message) const {
    throw ParseError(current_.line, current_.column, message);
  }

  bool at(const char* symbol) const { return current_.kind == Token::Kind::Symbol && current_.text == symbol; }

  void expect(const char* symbol) {
    if (!at(symbol)) error(std::string("expected '") + symbol + "'");
    current_ = lexer_.next();
  }

  Node make(AstNode::Kind kind, const Token& at, Node left = nullptr, Node right = nullptr) {
    auto n = std::make_unique<AstNode>();
    n->kind = kind;
    n->line = at.line;
    n->column = at.column;
    n->left = std::move(left);
    n->right = std::move(right);
    return n;
  }

  Node sum() {
    Node node = product();
    while (at("+") || at("-")) {
      const Token op = current_;
      current_ = lexer_.next();
      node = make(op.text == "+" ? AstNode::Kind::Add : AstNode::Kind::Subtract, op, std::move(node), product());
    }
    return node;
  }

  Node product() {
    Node node = unary();
    while (at("*") || at("/") || at("&")) {
      const Token op = current_;
      current_ = lexer_.next();
      const auto kind = op.text == "*" ? AstNode::Kind::Multiply
                        : op.text == "/" ? AstNode::Kind::Divide
                                         : AstNode::Kind::Wedge;
      node = make(kind, op, std::move(node), unary());
    }
    return node;
  }

  Node unary() {
    if (at("-")) {
      const Token op = current_;
      current_ = lexer_.next();
      return make(AstNode::Kind::Negate, op, unary());
    }
    if (at("+")) {
      current_ = lexer_.next();
      return unary();
    }
    return power();
  }

  long integer_exponent() {
    const bool paren = at("(");
    if (paren) current_ = lexer_.next();
    bool negative = false;
    if (at("-")) {
      negative = true;
      current_ = lexer_.next();
    }
    if (current_.kind != Token::Kind::Integer) error("exponent must be an integer");
    if (current_.text.size() > 9) error("exponent is too large");
    long e = std::stol(current_.text);
    current_ = lexer_.next();
    if (paren) expect(")");
    return negative ? -e : e;
  }

  Node power() {
    Node base = primary();
    if (at("^")) {
      const Token op = current_;
      current_ = lexer_.next();
      Node n = make(AstNode::Kind::Power, op, std::move(base));
      n->exponent = integer_exponent();
      return n;
    }
    return base;
  }

  Node primary() {
    const Token tok = current_;
    if (tok.kind == Token::Kind::Integer) {
      current_ = lexer_.next();
      Node n = make(AstNode::Kind::Integer, tok);
      n->text = tok.text;
      return n;
    }
    if (tok.kind == Token::Kind::Identifier) {
      current_ = lexer_.next();
      if (tok.text == "i") return make(AstNode::Kind::Imaginary, tok);
      if (tok.text == "d" && at("(")) {
        current_ = lexer_.next();
        if (current_.kind != Token::Kind::Identifier) error("expected a coordinate inside d( )");
        Node n = make(AstNode::Kind::Differential, current_);
        n->text = current_.text;
        current_ = lexer_.next();
        expect(")");
        return n;
      }
      Node n = make(AstNode::Kind::Symbol, tok);
      n->text = tok.text;
      return n;
    }
    if (at("(")) {
      current_ = lexer_.next();
      Node n = sum();
      expect(")");
      return n;
    }
    if (tok.kind == Token::Kind::End) error("unexpected end of expression");
    error("unexpected '" + tok.text + "'");
  }

  Lexer lexer_;
  Token current_;
};

[[noreturn]] void fail(const AstNode& n, const std::string& message) { throw ParseError(n.line, n.column, message); }

}  // namespace

std::unique_ptr<AstNode> parse_ast(std::string_view text, SourcePos origin) { return Parser(text, origin).parse(); }

std::string to_string(const AstNode& n) {
  switch (n.kind) {
    case AstNode::Kind::Integer:
    case AstNode::Kind::Symbol:
      return n.text;
    case AstNode::Kind::Imaginary:
      return "i";
    case AstNode::Kind::Differential:
      return "d(" + n.text + ")";
    case AstNode::Kind::Negate:
      return "(-" + to_string(*n.left) + ")";
    case AstNode::Kind::Power:
      return "(" + to_string(*n.left) + "^" + (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent)) + ")";
    default:
      break;
  }
  const char* op = n.kind == AstNode::Kind::Add        ? " + "
                   : n.kind == AstNode::Kind::Subtract ? " - "
                   : n.kind == AstNode::Kind::Multiply ? "*"
                   : n.kind == AstNode::Kind::Divide   ? "/"
                                                       : "&";
  return "(" + to_string(*n.left) + op + to_string(*n.right) + ")";
}

DifferentialForm evaluate(const AstNode& n, const std::set<std::string>* allowed) {
  auto check_symbol = [&](const std::string& name) {
    if (allowed && !allowed->count(name)) fail(n, "unknown symbol '" + name + "'");
  };
  switch (n.kind) {
    case AstNode::Kind::Integer:
      return DifferentialForm::function(RationalExpr(Scalar(Rational(n.text))));
    case AstNode::Kind::Imaginary:
      return DifferentialForm::function(RationalExpr(Scalar::i()));
    case AstNode::Kind::Symbol:
      check_symbol(n.text);
      return DifferentialForm::function(RationalExpr::symbol(n.text));
    case AstNode::Kind::Differential:
      check_symbol(n.text);
      return DifferentialForm::differential(n.text);
    case AstNode::Kind::Negate:
      return -evaluate(*n.left, allowed);
    case AstNode::Kind::Power: {
      const DifferentialForm base = evaluate(*n.left, allowed);
      if (base.degree() != 0) fail(n, "power of a form");
      const RationalExpr f = base.as_function();
      if (n.exponent < 0 && f.is_zero()) fail(n, "division by zero");
      return DifferentialForm::function(f.pow(n.exponent));
    }
    default:
      break;
  }
  const DifferentialForm l = evaluate(*n.left, allowed);
  const DifferentialForm r = evaluate(*n.right, allowed);
  switch (n.kind) {
    case AstNode::Kind::Add:
    case AstNode::Kind::Subtract:
      if (l.degree() != r.degree() && !l.is_zero() && !r.is_zero()) fail(n, "adding forms of different degree");
      return n.kind == AstNode::Kind::Add ? l + r : l - r;
    case AstNode::Kind::Multiply:
      if (l.degree() != 0 && r.degree() != 0) fail(n, "use '&' to wedge two forms");
      return wedge(l, r);
    case AstNode::Kind::Wedge:
      return wedge(l, r);
    case AstNode::Kind::Divide: {
      if (r.degree() != 0) fail(n, "division by a form");
      const RationalExpr d = r.as_function();
      if (d.is_zero()) fail(*n.right, "division by zero");
      return (RationalExpr(1) / d) * l;
    }
    default:
      fail(n, "internal: unknown node");
  }
}

DifferentialForm parse_form(std::string_view text, const std::set<std::string>* allowed, SourcePos origin) {
  auto ast = parse_ast(text, origin);
  return evaluate(*ast, allowed);
}

RationalExpr parse_expression(std::string_view text, const std::set<std::string>* allowed, SourcePos origin) {
  auto ast = parse_ast(text, origin);
  const DifferentialForm w = evaluate(*ast, allowed);
  if (w.degree() != 0) throw ParseError(origin.line, origin.column, "expected a function, found a " +
                                                                        std::to_string(w.degree()) + "-form");
  return w.as_function();
}

Scalar parse_scalar(std::string_view text, SourcePos origin) {
  const std::set<std::string> none;
  const RationalExpr e = parse_expression(text, &none, origin);
  return *e.as_scalar();
}

}  // namespace gaq
