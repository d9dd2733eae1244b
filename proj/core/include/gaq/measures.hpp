#ifndef GAQ_MEASURES_HPP
#define GAQ_MEASURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "gaq/polarization.hpp"

namespace gaq {

struct ModularData {
  std::vector<Scalar> kG;   ///< per original basis element
  std::vector<Scalar> kH;   ///< per subgroup generator
  std::vector<Scalar> kGH;  ///< kG - kH on subgroup generators
};

/// The subgroup is spanned by constant `generators`; the basis is completed
/// with standard vectors so the first p elements span H. Throws
/// StructureError when the generators do not close.
ModularData modular_constants(const LieAlgebraData& c, const std::vector<Vector>& generators);
ModularData modular_constants(const LieAlgebraData& c, const std::vector<std::size_t>& indices);

/// C_ij^l k_l for all i, j; zero for a character.
std::vector<Scalar> character_residuals(const LieAlgebraData& c, const std::vector<Scalar>& k);

struct QuotientMeasure {
  DifferentialForm form;
  /// Coefficient of d tau after pulling back to the chart, when the form
  /// reduces to a multiple of d tau.
  std::optional<RationalExpr> adapted_density;
};

/// i_{X_p} ... i_{X_1} Omega (StructureError on a zero result).
QuotientMeasure quotient_measure(const DifferentialForm& haar, const std::vector<VectorField>& generators,
                                 const Chart& chart, const std::vector<std::string>& chart_coordinates);

/// c with L_X form = c form, or nullopt when the defect is not proportional.
std::optional<RationalExpr> quasi_invariance_defect(const DifferentialForm& form, const VectorField& x,
                                                    const std::vector<std::string>& coordinates);

/// rho = prod_i x_i^{e_i} or a general expression.
struct RhoFunction {
  std::vector<std::pair<std::string, RationalExpr>> exponents;
  std::optional<RationalExpr> general;

  /// (X . rho) / rho.
  RationalExpr log_derivative(const VectorField& x) const;
  /// The rational function, when every exponent is an integer constant.
  std::optional<RationalExpr> expression() const;
  /// -(i/2) log rho; needs constant exponents.
  GeneratingFunction half_log() const;
  std::string str() const;
};

struct RhoSolve {
  std::optional<RhoFunction> rho;
  LinearSystem system;
};

/// Monomial ansatz over `coordinates`, exponents solved exactly with free
/// exponents set to zero.
RhoSolve rho_solve_monomial(const std::vector<VectorField>& subgroup_fields, const std::vector<Scalar>& k,
                            const std::vector<std::string>& coordinates);

/// X_i rho / rho - k_i per generator.
std::vector<RationalExpr> rho_verify(const RhoFunction& rho, const std::vector<VectorField>& subgroup_fields,
                                     const std::vector<Scalar>& k);

/// Exact evaluation of rho on the sample points; false when a value is not
/// a positive rational.
bool rho_positive(const RhoFunction& rho, const std::vector<Point>& samples);

/// X + m acting on functions.
struct FirstOrderOperator {
  VectorField field;
  RationalExpr multiplier;
};

FirstOrderOperator commutator(const FirstOrderOperator& a, const FirstOrderOperator& b);

/// (X^R_i, 1/2 (X^R_i . rho) / rho).
std::vector<FirstOrderOperator> corrected_right_fields(const std::vector<VectorField>& right, const RhoFunction& rho);

/// L^dagger for the inner product int conj(Phi) Psi w d tau.
ReducedOp formal_adjoint(const ReducedOp& op, const RationalExpr& weight, const std::string& tau);
bool anti_hermitian(const ReducedOp& op, const RationalExpr& weight, const std::string& tau);

/// |prefactor|^2 times the adapted density, in chart coordinates; nullopt
/// when a modulus cannot be written as a rational function.
std::optional<RationalExpr> wave_density(const WaveAnsatz& psi, const RationalExpr& adapted_density,
                                         const Chart& chart);

struct UnitarityVerdict {
  bool anti_hermitian = false;
  bool real_casimir = false;
  bool measure_falls = false;
  std::vector<std::string> reasons;
  bool unitary() const { return anti_hermitian && real_casimir && measure_falls; }
};

UnitarityVerdict unitarity_report(const std::vector<ReducedOp>& ops, const RationalExpr& weight, const std::string& tau,
                                  const CasimirScalar& casimir, const std::optional<RationalExpr>& density,
                                  const Chart& chart, const std::set<std::string>& coordinates);

}  // namespace gaq

#endif  // GAQ_MEASURES_HPP
