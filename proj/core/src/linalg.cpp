#include "gaq/linalg.hpp"

#include "gaq/errors.hpp"

namespace gaq {

RowEchelon rref(Matrix m) {
  RowEchelon out;
  if (m.empty()) return out;
  const std::size_t columns = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const RationalExpr inv = RationalExpr(1) / m[row][col];
    for (auto& entry : m[row]) entry *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const RationalExpr factor = m[r][col];
      for (std::size_t c = col; c < columns; ++c) {
        if (!m[row][c].is_zero()) m[r][c] -= factor * m[row][c];
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rows.size(); }

RationalExpr determinant(Matrix m) {
  const std::size_t n = m.size();
  RationalExpr det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return RationalExpr();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const RationalExpr inv = RationalExpr(1) / m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const RationalExpr factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

Matrix identity_matrix(std::size_t n) {
  Matrix id(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = RationalExpr(1);
  return id;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m.front().size(), Vector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix augmented = m;
  for (std::size_t i = 0; i < n; ++i) {
    if (augmented[i].size() != n) throw SingularSystem("inverse of a non-square matrix");
    augmented[i].resize(2 * n);
    augmented[i][n + i] = RationalExpr(1);
  }
  RowEchelon e = rref(std::move(augmented));
  if (e.rows.size() != n || e.pivots.back() != n - 1) throw SingularSystem("matrix is singular");
  Matrix out(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = e.rows[i][n + j];
  }
  return out;
}

std::vector<Vector> kernel(const Matrix& m, std::size_t columns) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vector v(columns);
    v[free] = RationalExpr(1);
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b, std::size_t columns) {
  Matrix augmented = m;
  for (std::size_t i = 0; i < augmented.size(); ++i) augmented[i].push_back(b[i]);
  RowEchelon e = rref(std::move(augmented));
  Vector x(columns);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == columns) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][columns];
  }
  return x;
}

LinearSystem identity_system(const std::vector<RationalExpr>& expressions,
                             const std::vector<std::string>& unknowns,
                             const std::set<std::string>& coordinates) {
  LinearSystem system;
  Bindings zero;
  for (const auto& u : unknowns) zero.emplace(u, RationalExpr());

  for (const auto& expr : expressions) {
    std::vector<RationalExpr> parts;  // constant part first, then one per unknown
    parts.push_back(expr.substitute(zero));
    for (const auto& u : unknowns) {
      RationalExpr coeff = expr.differentiate(u);
      for (const auto& v : unknowns) {
        if (coeff.depends_on(v)) throw StructureError("expression " + expr.str() + " is not linear in " + u);
      }
      parts.push_back(coeff);
    }
    Poly common(1);
    for (const auto& p : parts) {
      if (p.is_zero()) continue;
      common = *divide_exact(common * p.den(), gcd(common, p.den()));
    }
    std::vector<std::map<Monomial, Poly, GrlexDescending>> split;
    std::set<Monomial, GrlexDescending> monomials;
    for (const auto& p : parts) {
      Poly scaled = p.num() * *divide_exact(common, p.den());
      split.push_back(scaled.coefficients_over(coordinates));
      for (const auto& [m, c] : split.back()) monomials.insert(m);
    }
    for (const auto& m : monomials) {
      Vector row;
      for (std::size_t k = 1; k < split.size(); ++k) {
        auto it = split[k].find(m);
        row.push_back(it == split[k].end() ? RationalExpr() : RationalExpr(it->second));
      }
      auto it = split[0].find(m);
      system.rhs.push_back(it == split[0].end() ? RationalExpr() : -RationalExpr(it->second));
      system.coefficients.push_back(std::move(row));
    }
  }
  return system;
}

}  // namespace gaq
