#ifndef GAQ_RATIONAL_EXPR_HPP
#define GAQ_RATIONAL_EXPR_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "gaq/poly.hpp"
#include "gaq/scalar.hpp"

namespace gaq {

class RationalExpr;

/// Simultaneous substitution target -> replacement.
using Bindings = std::map<std::string, RationalExpr>;
/// Exact evaluation point.
using Point = std::map<std::string, Scalar>;

/// Multivariate rational function over Q(i) in canonical form.
///
/// The numerator and denominator are coprime and the denominator is monic
/// under graded-lex order, so two expressions are equal as functions iff
/// they are equal as representations. All symbols are real: conjugation acts
/// on coefficients only.
class RationalExpr {
 public:
  RationalExpr() : den_(1) {}
  RationalExpr(long value) : num_(value), den_(1) {}                 // NOLINT(google-explicit-constructor)
  RationalExpr(Scalar value) : num_(std::move(value)), den_(1) {}    // NOLINT(google-explicit-constructor)
  RationalExpr(Poly numerator) : num_(std::move(numerator)), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws DivisionByZero when the denominator is the zero polynomial.
  RationalExpr(Poly numerator, Poly denominator);

  static RationalExpr symbol(const std::string& name) { return RationalExpr(Poly::variable(name)); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<Scalar> as_scalar() const;

  std::set<std::string> variables() const;
  bool depends_on(std::string_view symbol) const { return num_.contains(symbol) || den_.contains(symbol); }
  /// True when no variable outside `allowed` occurs.
  bool only_depends_on(const std::set<std::string>& allowed) const;

  RationalExpr operator-() const;
  RationalExpr& operator+=(const RationalExpr& other);
  RationalExpr& operator-=(const RationalExpr& other);
  RationalExpr& operator*=(const RationalExpr& other);
  /// Throws DivisionByZero.
  RationalExpr& operator/=(const RationalExpr& other);

  friend RationalExpr operator+(RationalExpr a, const RationalExpr& b) { return a += b; }
  friend RationalExpr operator-(RationalExpr a, const RationalExpr& b) { return a -= b; }
  friend RationalExpr operator*(RationalExpr a, const RationalExpr& b) { return a *= b; }
  friend RationalExpr operator/(RationalExpr a, const RationalExpr& b) { return a /= b; }
  friend bool operator==(const RationalExpr& a, const RationalExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalExpr pow(long exponent) const;
  RationalExpr differentiate(std::string_view symbol) const;
  /// Throws PoleError when a denominator becomes identically zero.
  RationalExpr substitute(const Bindings& bindings) const;
  RationalExpr conjugate() const;
  /// Throws PoleError at a pole and UnboundSymbol for a missing coordinate.
  Scalar eval_at(const Point& point) const;
  /// Binds the given symbols to values, leaving the others symbolic.
  RationalExpr partial_eval(const Point& point) const;

  /// Canonical, re-parseable text.
  std::string str() const;

 private:
  struct Canonical {};
  RationalExpr(Poly numerator, Poly denominator, Canonical)
      : num_(std::move(numerator)), den_(std::move(denominator)) {}
  void normalize_denominator();

  Poly num_;
  Poly den_;
};

std::ostream& operator<<(std::ostream& os, const RationalExpr& e);

}  // namespace gaq

#endif  // GAQ_RATIONAL_EXPR_HPP
