#ifndef GAQ_EXTENSION_HPP
#define GAQ_EXTENSION_HPP

#include <optional>
#include <string>
#include <vector>

#include "gaq/differential_form.hpp"
#include "gaq/liegroup.hpp"

namespace gaq {

struct LogTerm {
  Scalar coefficient;
  RationalExpr argument;
};

enum class FiberKind { Compact, PositiveReal };
std::string to_string(FiberKind kind);

/// lambda = rational + sum_k coefficient_k * log(argument_k).
class GeneratingFunction {
 public:
  GeneratingFunction() = default;
  explicit GeneratingFunction(RationalExpr rational, std::vector<LogTerm> logs = {});

  const RationalExpr& rational() const noexcept { return rational_; }
  const std::vector<LogTerm>& logs() const noexcept { return logs_; }
  bool has_logs() const noexcept { return !logs_.empty(); }
  bool is_zero() const noexcept { return rational_.is_zero() && logs_.empty(); }

  /// X.lambda; log terms contribute c (X.S)/S.
  RationalExpr derivative_along(const VectorField& x) const;
  DifferentialForm differential(const std::vector<std::string>& coordinates) const;
  /// Throws ModelError unless lambda(e) = 0.
  void check_vanishes_at(const Point& identity) const;
  /// Real coefficients give U(1), purely imaginary ones R+; mixed throws ModelError.
  FiberKind fiber_kind() const;

  std::string str() const;

 private:
  RationalExpr rational_;
  std::vector<LogTerm> logs_;
};

/// xi(g', g) in suffixed coordinates (1 = left factor, 2 = right factor).
struct TwoCocycle {
  RationalExpr expr;
};

/// xi(g',g) = lambda(g'*g) - lambda(g') - lambda(g); ModelError for log parts.
TwoCocycle coboundary_from_lambda(const GroupLaw& group, const GeneratingFunction& lambda);

struct CocycleReport {
  bool passed = true;
  RationalExpr residual;
};

/// xi(g1,g2) + xi(g1*g2,g3) - xi(g1,g2*g3) - xi(g2,g3).
CocycleReport cocycle_identity_check(const TwoCocycle& xi, const GroupLaw& group);

/// lambda0_i = (X^L_i . lambda)(e).
Vector gradient_at_identity(const GeneratingFunction& lambda, const GroupLaw& group);

/// Sum_i lambda0_i (g^i - e^i).
GeneratingFunction linear_representative(const GroupLaw& group, const Vector& lambda0);

class PseudoExtension {
 public:
  PseudoExtension(GroupLaw base, GeneratingFunction lambda, std::vector<std::string> labels,
                  std::optional<TwoCocycle> cocycle = std::nullopt);

  const GroupLaw& base() const noexcept { return base_; }
  const GeneratingFunction& lambda() const noexcept { return lambda_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::optional<TwoCocycle>& cocycle() const noexcept { return cocycle_; }
  FiberKind fiber_kind() const noexcept { return fiber_kind_; }
  std::size_t dimension() const noexcept { return base_.dimension(); }

  /// Base coordinates followed by the fiber.
  const std::vector<std::string>& coordinates() const noexcept { return coordinates_; }
  const std::vector<std::string>& base_coordinates() const noexcept { return base_coordinates_; }

  const std::vector<VectorField>& base_left() const noexcept { return base_left_; }
  const std::vector<VectorField>& base_right() const noexcept { return base_right_; }
  const std::vector<DifferentialForm>& left_forms() const noexcept { return left_forms_; }
  const LieAlgebraData& algebra() const noexcept { return algebra_; }

  const Vector& lambda0() const noexcept { return lambda0_; }
  const std::vector<VectorField>& left() const noexcept { return left_; }
  const std::vector<VectorField>& right() const noexcept { return right_; }
  const VectorField& xi() const noexcept { return xi_; }
  /// True when lambda is rational and no true cocycle was added.
  bool is_pure() const noexcept { return !cocycle_ && !lambda_.has_logs(); }

  /// Extended composition law with phi'' = phi' + phi + xi (rational lambda only).
  GroupLaw extended_law() const;

 private:
  GroupLaw base_;
  GeneratingFunction lambda_;
  std::vector<std::string> labels_;
  std::optional<TwoCocycle> cocycle_;
  FiberKind fiber_kind_;
  std::vector<std::string> base_coordinates_;
  std::vector<std::string> coordinates_;
  std::vector<VectorField> base_left_;
  std::vector<VectorField> base_right_;
  std::vector<DifferentialForm> left_forms_;
  LieAlgebraData algebra_;
  Vector lambda0_;
  std::vector<VectorField> left_;
  std::vector<VectorField> right_;
  VectorField xi_;
};

/// Fiber derivatives of the cocycle at the identity, for comparison with the
/// extended fields: returns (left, right) fiber coefficients per base index.
std::pair<Vector, Vector> fiber_coefficients_from_cocycle(const PseudoExtension& ext);

/// dphi + lambda0_i theta^i - dlambda.
DifferentialForm quantization_one_form(const PseudoExtension& ext);
/// The fiber member of the basis dual to (extended left fields, Xi).
DifferentialForm quantization_one_form_dual(const PseudoExtension& ext);

/// d Theta.
DifferentialForm presymplectic_form(const PseudoExtension& ext);
/// -1/2 lambda0_i C_jk^i theta^j ^ theta^k.
DifferentialForm presymplectic_from_algebra(const PseudoExtension& ext);

/// Expansion Y = sum_k c_k F_k + c_xi Xi of a field in an extended basis.
struct Decomposition {
  Vector coefficients;
  RationalExpr xi;
};
Decomposition decompose(const VectorField& y, const std::vector<VectorField>& basis,
                        const std::vector<std::string>& base_coordinates);

struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Decomposition computed;
  Decomposition expected;
  bool matches = false;
};

/// All pairs i < j; left expects C_ij^k (X_k + lambda0_k Xi), right the same
/// with -C, redefined right fields -C with no Xi part.
enum class BracketSide { Left, Right, RedefinedRight };
std::vector<BracketEntry> extended_bracket_table(const PseudoExtension& ext, BracketSide side);
bool xi_is_central(const PseudoExtension& ext);

/// X~^R_i + lambda0_i Xi.
std::vector<VectorField> redefine_right_operators(const PseudoExtension& ext);

/// Kernel of B_jk = lambda0_i C_jk^i, as RREF covectors.
std::vector<Vector> characteristic_subalgebra(const PseudoExtension& ext);
/// Constant combinations X of the extended left fields with i_X dTheta = 0.
std::vector<Vector> characteristic_subalgebra_from_form(const PseudoExtension& ext);

/// Sign of an expression valid for all nonzero real parameter values, when
/// it can be read off (even powers with uniformly signed coefficients).
std::optional<int> definite_sign(const RationalExpr& e);

struct OrbitDescriptor {
  RationalExpr casimir;
  std::optional<int> sign;
  std::string type;
  /// Component whose sign selects the sheet or nappe (empty for the origin
  /// and the one-sheet case).
  std::optional<RationalExpr> selector;
};

OrbitDescriptor orbit_classify(const Vector& lambda0, const ScalarMatrix& q);

}  // namespace gaq

#endif  // GAQ_EXTENSION_HPP
