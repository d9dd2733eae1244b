#ifndef GAQ_DIFFERENTIAL_FORM_HPP
#define GAQ_DIFFERENTIAL_FORM_HPP

#include <map>
#include <string>
#include <vector>

#include "gaq/rational_expr.hpp"
#include "gaq/vector_field.hpp"

namespace gaq {

/// Exterior form sum_I f_I dx^I with strictly increasing index tuples
/// (ordered by coordinate name).
class DifferentialForm {
 public:
  using Index = std::vector<std::string>;
  using Terms = std::map<Index, RationalExpr>;

  explicit DifferentialForm(int degree = 0) : degree_(degree) {}
  /// Accepts any index order; repeated names give zero.
  DifferentialForm(int degree, const std::vector<std::pair<Index, RationalExpr>>& terms);

  static DifferentialForm function(const RationalExpr& f);
  static DifferentialForm differential(const std::string& coordinate);

  int degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of dx^I for an index in any order (sign-adjusted).
  RationalExpr coefficient(const Index& index) const;
  /// The function of a 0-form.
  RationalExpr as_function() const;

  /// Single coefficient c with *this == c * other, when one exists.
  std::optional<RationalExpr> ratio_to(const DifferentialForm& other) const;

  DifferentialForm substitute(const Bindings& bindings) const;

  DifferentialForm operator-() const;
  /// Throws StructureError on a degree mismatch.
  DifferentialForm& operator+=(const DifferentialForm& other);
  DifferentialForm& operator-=(const DifferentialForm& other);
  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
  friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
  friend DifferentialForm operator*(const RationalExpr& f, const DifferentialForm& w);
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// "(b*c + 1)/a*d(a) - b*d(c)", wedges as "d(a)&d(b)".
  std::string str() const;

 private:
  void add(Index index, RationalExpr value);

  int degree_;
  Terms terms_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
/// d acts through partial derivatives in the listed coordinates.
DifferentialForm exterior_derivative(const DifferentialForm& w, const std::vector<std::string>& coordinates);
/// Throws StructureError for a 0-form.
DifferentialForm interior_product(const VectorField& x, const DifferentialForm& w);
/// Cartan formula i_X d + d i_X.
DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& w,
                                const std::vector<std::string>& coordinates);
/// Pairing of a 1-form with a field.
RationalExpr pairing(const DifferentialForm& w, const VectorField& x);
/// Pull back along old coordinate -> expression in the new coordinates.
DifferentialForm pullback(const DifferentialForm& w, const Bindings& map,
                          const std::vector<std::string>& new_coordinates);

}  // namespace gaq

#endif  // GAQ_DIFFERENTIAL_FORM_HPP
