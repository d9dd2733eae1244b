#ifndef GAQ_VECTOR_FIELD_HPP
#define GAQ_VECTOR_FIELD_HPP

#include <map>
#include <string>
#include <string_view>

#include "gaq/rational_expr.hpp"

namespace gaq {

/// Name of the additive fiber coordinate; zeta = exp(i*phi) and Xi = d/dphi.
inline constexpr std::string_view kFiberSymbol = "phi";

/// First-order derivation sum_j X^j d/dx^j, components keyed by coordinate name.
class VectorField {
 public:
  using Components = std::map<std::string, RationalExpr>;

  VectorField() = default;
  explicit VectorField(Components components);
  static VectorField partial(const std::string& coordinate);

  const Components& components() const noexcept { return components_; }
  RationalExpr component(std::string_view coordinate) const;
  bool is_zero() const noexcept { return components_.empty(); }

  /// X(f).
  RationalExpr apply(const RationalExpr& f) const;
  /// Drops the given component (e.g. the fiber slot).
  VectorField without(std::string_view coordinate) const;
  VectorField substitute(const Bindings& bindings) const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const RationalExpr& f, const VectorField& x);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.components_ == b.components_; }

  /// "(b*c + 1)/a*D[c] + b*D[a]"; "0" for the zero field.
  std::string str() const;

 private:
  Components components_;
};

/// [X, Y]^j = X(Y^j) - Y(X^j).
VectorField bracket(const VectorField& x, const VectorField& y);

/// Sum_i coefficients[i] * fields[i].
VectorField combine(const std::vector<RationalExpr>& coefficients, const std::vector<VectorField>& fields);

}  // namespace gaq

#endif  // GAQ_VECTOR_FIELD_HPP
