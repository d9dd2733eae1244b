#ifndef GAQ_POLARIZATION_HPP
#define GAQ_POLARIZATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "gaq/extension.hpp"

namespace gaq {

/// Subalgebra spanned by constant combinations of the extended left fields.
struct Polarization {
  std::vector<Vector> generators;
  /// Required eigenvalue of each generator on wave functions (0 = horizontal).
  Vector eigenvalues;
};

/// Canonical (RREF) form of the span, eigenvalues reset to zero.
Polarization normalized(const Polarization& p);
bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b);

struct PolarizationCheck {
  bool independent = true;
  bool contains_characteristic = true;
  bool closed = true;
  bool dimension_ok = true;
  /// dTheta vanishes: only closure is meaningful.
  bool degenerate = false;
  std::size_t expected_dimension = 0;
  std::vector<std::string> diagnostics;
  bool valid() const { return independent && contains_characteristic && closed && dimension_ok; }
};

PolarizationCheck validate_polarization(const Polarization& p, const PseudoExtension& ext,
                                        const std::vector<Vector>& characteristic);

/// Rank of the matrix dTheta(X~_j, X~_k).
std::size_t presymplectic_rank(const PseudoExtension& ext);

/// Exhaustive search over 2-planes through a 1-dimensional characteristic
/// subalgebra v0: candidates span{v0, e_p + nu e_q} and span{v0, e_q}.
struct PolarizationSearch {
  Vector v0;
  std::size_t p = 0;
  std::size_t q = 0;
  /// det[v0, v(nu), [v0, v(nu)]] as a polynomial in nu, and its monic form.
  Poly closure_polynomial;
  Poly monic_polynomial;
  std::optional<Scalar> discriminant;
  bool infinity_solution = false;
  /// Every plane through v0 closes (zero polynomial).
  bool degenerate_family = false;
  std::vector<Scalar> real_roots;
  std::vector<Scalar> complex_roots;
  /// Roots exist but are not in Q(i).
  bool irrational_roots = false;
  std::vector<Polarization> real;
  std::vector<Polarization> complex;
};

inline constexpr const char* kChartParameter = "nu";

/// Requires dimension 3 and a 1-dimensional characteristic subalgebra
/// (ModelError); the polynomial must have constant coefficients.
PolarizationSearch enumerate_polarizations_dim3(const PseudoExtension& ext, const std::vector<Vector>& characteristic);

/// Psi = zeta * prod(factors) * Phi(tau).
struct AnsatzFactor {
  enum class Kind { Exp, Power };
  Kind kind = Kind::Exp;
  /// Exp: the exponent R; Power: the base.
  RationalExpr argument;
  /// Power only.
  RationalExpr exponent;
  std::string str() const;
};

struct WaveAnsatz {
  std::vector<AnsatzFactor> factors;
  RationalExpr tau;
  std::vector<std::string> unknowns;
  std::string str() const;
};

/// X Psi = c0 Psi + c1 (Phi' slot).
struct AnsatzAction {
  RationalExpr c0;
  RationalExpr c1;
};

AnsatzAction apply_field_to_ansatz(const VectorField& x, const WaveAnsatz& psi);

/// Solves the unknown exponents from X_k Psi = eigenvalue_k Psi for every
/// generator. Throws ModelError when tau is not invariant or the system is
/// inconsistent.
WaveAnsatz solve_prefactor(const WaveAnsatz& templ, const Polarization& p, const PseudoExtension& ext);

/// Residuals c0 - eigenvalue and c1 per generator after solving.
std::vector<AnsatzAction> polarization_residuals(const WaveAnsatz& psi, const Polarization& p,
                                                 const PseudoExtension& ext);

/// Adapted chart: old coordinate -> expression in (kappa, tau, ...).
struct Chart {
  std::string kappa;
  std::string tau;
  Bindings bindings;
};

/// f(tau) D + g(tau) acting on Phi.
struct ReducedOp {
  RationalExpr f;
  RationalExpr g;
  friend bool operator==(const ReducedOp& a, const ReducedOp& b) { return a.f == b.f && a.g == b.g; }
  std::string str(const std::string& tau) const;
};

/// Throws ModelError when c0 or c1 depends on anything but tau and parameters.
ReducedOp reduce_operator(const VectorField& x, const WaveAnsatz& psi, const Chart& chart,
                          const std::set<std::string>& coordinates);

/// [A, B] as first-order operators in tau.
ReducedOp commutator(const ReducedOp& a, const ReducedOp& b, const std::string& tau);

/// d2 D^2 + d1 D + d0.
struct SecondOrderOp {
  RationalExpr d2;
  RationalExpr d1;
  RationalExpr d0;
  SecondOrderOp& operator+=(const SecondOrderOp& o);
};

SecondOrderOp compose(const ReducedOp& a, const ReducedOp& b, const std::string& tau);
/// Sum Q^{ij} op_i op_j.
SecondOrderOp compose_reduced(const std::vector<ReducedOp>& ops, const ScalarMatrix& q, const std::string& tau);

struct CasimirScalar {
  bool scalar = false;
  RationalExpr value;
  bool irreducible = false;
  bool unitary_compatible = false;
  std::string diagnostic;
};

CasimirScalar casimir_scalar_on_ansatz(const SecondOrderOp& op, const std::string& tau);

}  // namespace gaq

#endif  // GAQ_POLARIZATION_HPP
