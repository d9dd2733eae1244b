#ifndef GAQ_LINALG_HPP
#define GAQ_LINALG_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gaq/rational_expr.hpp"

namespace gaq {

// Gaussian elimination over the field of rational functions. Symbols that
// appear in entries (e.g. parameters) are treated as generic: a pivot such as
// alpha is assumed non-zero.

using Vector = std::vector<RationalExpr>;
using Matrix = std::vector<Vector>;

struct RowEchelon {
  Matrix rows;                       ///< reduced rows, zero rows dropped
  std::vector<std::size_t> pivots;   ///< pivot column of each row
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);
RationalExpr determinant(Matrix m);
/// Throws SingularSystem.
Matrix inverse(const Matrix& m);
Matrix transpose(const Matrix& m);
Matrix identity_matrix(std::size_t n);

/// Basis of {x : m x = 0}; one vector per free column with that entry set to 1.
std::vector<Vector> kernel(const Matrix& m, std::size_t columns);

/// A particular solution of m x = b (free unknowns set to zero), or nullopt.
std::optional<Vector> solve(const Matrix& m, const Vector& b, std::size_t columns);

/// Linear equations A u = b in the unknowns, extracted from requiring that
/// each expression vanish identically in the `coordinates`.
struct LinearSystem {
  Matrix coefficients;
  Vector rhs;
};

/// Throws StructureError when an expression is not linear in the unknowns.
LinearSystem identity_system(const std::vector<RationalExpr>& expressions,
                             const std::vector<std::string>& unknowns,
                             const std::set<std::string>& coordinates);

}  // namespace gaq

#endif  // GAQ_LINALG_HPP
