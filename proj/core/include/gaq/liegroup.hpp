#ifndef GAQ_LIEGROUP_HPP
#define GAQ_LIEGROUP_HPP

#include <string>
#include <vector>

#include "gaq/differential_form.hpp"
#include "gaq/linalg.hpp"
#include "gaq/rational_expr.hpp"
#include "gaq/vector_field.hpp"

namespace gaq {

struct Coordinate {
  std::string name;
  Scalar identity;
};

/// Group law g'' = g' * g written in suffixed copies of the coordinates:
/// suffix 1 for the left factor g', suffix 2 for the right factor g.
class GroupLaw {
 public:
  /// Validates arity, suffix collisions and both unit laws (StructureError).
  GroupLaw(std::vector<Coordinate> coordinates, std::vector<RationalExpr> law);

  const std::vector<Coordinate>& coordinates() const noexcept { return coordinates_; }
  const std::vector<RationalExpr>& law() const noexcept { return law_; }
  std::size_t dimension() const noexcept { return coordinates_.size(); }
  std::vector<std::string> names() const;

  static std::string tagged(const std::string& name, int copy) { return name + std::to_string(copy); }
  std::vector<RationalExpr> symbols() const;
  std::vector<RationalExpr> tagged_symbols(int copy) const;
  std::vector<RationalExpr> identity() const;
  Point identity_point() const;
  /// Bindings name -> identity value for every coordinate.
  Bindings identity_bindings() const;

  /// m(left, right) for arbitrary coordinate expressions.
  std::vector<RationalExpr> compose(const std::vector<RationalExpr>& left,
                                    const std::vector<RationalExpr>& right) const;

 private:
  std::vector<Coordinate> coordinates_;
  std::vector<RationalExpr> law_;
};

struct AssociativityReport {
  bool passed = true;
  std::vector<RationalExpr> residuals;
};

/// m(m(x,y),z) - m(x,m(y,z)) in three copies of the coordinates.
AssociativityReport check_associativity(const GroupLaw& group);

/// Jacobian of the law in the right factor at the identity.
std::vector<VectorField> derive_left_fields(const GroupLaw& group);
/// Jacobian of the law in the left factor at the identity.
std::vector<VectorField> derive_right_fields(const GroupLaw& group);

/// 1-forms dual to `fields` over the listed coordinates (SingularSystem).
std::vector<DifferentialForm> dual_forms(const std::vector<VectorField>& fields,
                                         const std::vector<std::string>& coordinates);

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// Structure constants [X_i, X_j] = C_ij^k X_k.
class LieAlgebraData {
 public:
  LieAlgebraData(std::vector<std::string> labels, std::vector<Scalar> constants);
  static LieAlgebraData zero(std::vector<std::string> labels);

  std::size_t dimension() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const;
  void set(std::size_t i, std::size_t j, std::size_t k, Scalar value);
  LieAlgebraData negated() const;

  /// [u, v]^k = u^i v^j C_ij^k.
  Vector bracket(const Vector& u, const Vector& v) const;

  bool antisymmetric() const;
  /// Jacobi residual per (i, j, k, l); all zero for a Lie algebra.
  std::vector<Scalar> jacobi_residuals() const;
  bool satisfies_jacobi() const;

  friend bool operator==(const LieAlgebraData& a, const LieAlgebraData& b) {
    return a.labels_ == b.labels_ && a.constants_ == b.constants_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Scalar> constants_;
};

/// Expands brackets of basis fields in the basis (StructureError when an
/// expansion coefficient is not constant).
LieAlgebraData structure_constants(const std::vector<VectorField>& fields,
                                   const std::vector<std::string>& coordinates,
                                   const std::vector<std::string>& labels);

/// d theta^i + 1/2 C_jk^i theta^j ^ theta^k.
std::vector<DifferentialForm> maurer_cartan_residual(const std::vector<DifferentialForm>& forms,
                                                     const LieAlgebraData& c,
                                                     const std::vector<std::string>& coordinates);

/// theta^1 ^ ... ^ theta^n (StructureError on a zero wedge).
DifferentialForm haar_measure(const std::vector<DifferentialForm>& forms);

/// K_ij = C_ik^l C_jl^k.
ScalarMatrix killing_form(const LieAlgebraData& c);
/// Q^{lj} C_li^k + Q^{kl} C_li^j = 0 for all i, j, k.
bool is_ad_invariant(const LieAlgebraData& c, const ScalarMatrix& q);
/// Validates symmetry and ad-invariance of a caller-supplied Q.
ScalarMatrix casimir_coefficients(const LieAlgebraData& c, const ScalarMatrix& q);
/// scale * K^{-1}; throws SingularSystem for a degenerate Killing form.
ScalarMatrix casimir_from_killing(const LieAlgebraData& c, const Scalar& scale);
/// Q^{ij} x_i x_j.
RationalExpr casimir_function_on_dual(const ScalarMatrix& q, const std::vector<RationalExpr>& dual);

Matrix to_matrix(const ScalarMatrix& m);

}  // namespace gaq

#endif  // GAQ_LIEGROUP_HPP
