#ifndef GAQ_PARSER_HPP
#define GAQ_PARSER_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "gaq/differential_form.hpp"
#include "gaq/rational_expr.hpp"

namespace gaq {

// Grammar (lowest precedence first):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/' | '&') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-'] integer | '^' '(' ['-'] integer ')')?
//   primary := integer | 'i' | identifier | 'd' '(' identifier ')' | '(' sum ')'
// '&' is the wedge product; '*' also wedges when one side is a function.

struct AstNode {
  enum class Kind { Integer, Imaginary, Symbol, Differential, Negate, Add, Subtract, Multiply, Divide, Wedge, Power };
  Kind kind;
  std::string text;  ///< integer digits or identifier
  long exponent = 0;
  std::unique_ptr<AstNode> left;
  std::unique_ptr<AstNode> right;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Source position of the first character, for error reporting inside larger files.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

std::unique_ptr<AstNode> parse_ast(std::string_view text, SourcePos origin = {});
/// Fully parenthesized rendering of the tree.
std::string to_string(const AstNode& node);

/// When `allowed` is given, any other identifier is an "unknown symbol" error.
DifferentialForm evaluate(const AstNode& node, const std::set<std::string>* allowed = nullptr);

RationalExpr parse_expression(std::string_view text, const std::set<std::string>* allowed = nullptr,
                              SourcePos origin = {});
DifferentialForm parse_form(std::string_view text, const std::set<std::string>* allowed = nullptr,
                            SourcePos origin = {});
/// Integer or p/q literal with optional sign, or a Gaussian-rational
/// expression such as "1/2 - 3*i".
Scalar parse_scalar(std::string_view text, SourcePos origin = {});

}  // namespace gaq

#endif  // GAQ_PARSER_HPP
