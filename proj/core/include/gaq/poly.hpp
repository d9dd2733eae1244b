#ifndef GAQ_POLY_HPP
#define GAQ_POLY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaq/scalar.hpp"

namespace gaq {

/// Power product of named symbols, stored sorted by name with positive exponents.
class Monomial {
 public:
  using Power = std::pair<std::string, unsigned>;

  Monomial() = default;
  explicit Monomial(std::vector<Power> powers);
  static Monomial variable(std::string name, unsigned exponent = 1);

  const std::vector<Power>& powers() const noexcept { return powers_; }
  unsigned degree() const noexcept { return degree_; }
  unsigned degree(std::string_view symbol) const;
  bool is_one() const noexcept { return powers_.empty(); }

  bool divides(const Monomial& other) const;
  /// Precondition: divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial without(std::string_view symbol) const;
  /// Splits into (part over `symbols`, remainder).
  std::pair<Monomial, Monomial> split(const std::set<std::string>& symbols) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }

  std::string str() const;

 private:
  std::vector<Power> powers_;
  unsigned degree_ = 0;
};

/// Graded lexicographic order, symbols compared by name (earlier name = larger).
/// Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

/// Orders leading (largest) monomials first.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

/// Sparse multivariate polynomial over Q(i).
class Poly {
 public:
  using Terms = std::map<Monomial, Scalar, GrlexDescending>;

  Poly() = default;
  Poly(Scalar constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Scalar(constant)) {}  // NOLINT(google-explicit-constructor)
  static Poly variable(const std::string& name);
  static Poly term(Monomial monomial, Scalar coefficient);

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  /// Constant term (zero if absent).
  Scalar constant_term() const;
  std::optional<Scalar> as_constant() const;

  /// Precondition: non-zero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Scalar& leading_coefficient() const { return terms_.begin()->second; }

  std::set<std::string> variables() const;
  bool contains(std::string_view symbol) const;
  unsigned degree(std::string_view symbol) const;
  unsigned total_degree() const;

  void add_term(const Monomial& monomial, const Scalar& coefficient);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Scalar& factor);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly pow(unsigned exponent) const;
  Poly derivative(std::string_view symbol) const;
  Poly conj() const;
  /// Divides by the leading coefficient; zero stays zero.
  Poly monic() const;

  /// Univariate view: exponent of `symbol` -> coefficient polynomial.
  std::map<unsigned, Poly> coefficients_in(std::string_view symbol) const;
  static Poly from_coefficients(const std::string& symbol, const std::map<unsigned, Poly>& coefficients);
  /// Coefficients with respect to all monomials over `symbols`.
  std::map<Monomial, Poly, GrlexDescending> coefficients_over(const std::set<std::string>& symbols) const;

  /// Throws UnboundSymbol when a variable has no value.
  Scalar evaluate(const std::map<std::string, Scalar>& point) const;
  Poly partial_evaluate(const std::map<std::string, Scalar>& point) const;

  std::string str() const;

 private:
  friend void subtract_scaled_term(Poly& target, const Poly& source, const Monomial& shift,
                                   const Scalar& factor);
  Terms terms_;
};

/// target -= factor * shift * source
void subtract_scaled_term(Poly& target, const Poly& source, const Monomial& shift, const Scalar& factor);

/// Exact quotient a / b when b divides a, otherwise nullopt. Throws DivisionByZero on b = 0.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace gaq

#endif  // GAQ_POLY_HPP
