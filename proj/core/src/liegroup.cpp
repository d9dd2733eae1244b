#include "gaq/liegroup.hpp"

#include <set>

#include "gaq/errors.hpp"

namespace gaq {

GroupLaw::GroupLaw(std::vector<Coordinate> coordinates, std::vector<RationalExpr> law)
    : coordinates_(std::move(coordinates)), law_(std::move(law)) {
  if (coordinates_.empty()) throw StructureError("group has no coordinates");
  if (law_.size() != coordinates_.size()) throw StructureError("law arity does not match coordinate count");
  std::set<std::string> plain;
  for (const auto& c : coordinates_) {
    if (!plain.insert(c.name).second) throw StructureError("duplicate coordinate " + c.name);
  }
  std::set<std::string> allowed;
  for (const auto& c : coordinates_) {
    for (int copy : {1, 2}) {
      const std::string t = tagged(c.name, copy);
      if (plain.count(t)) throw StructureError("coordinate " + t + " collides with a tagged copy");
      allowed.insert(t);
    }
  }
  for (std::size_t j = 0; j < law_.size(); ++j) {
    for (const auto& v : law_[j].variables()) {
      if (plain.count(v)) throw StructureError("law uses untagged coordinate " + v);
    }
  }
  const auto x = symbols();
  const auto e = identity();
  const auto right_unit = compose(x, e);
  const auto left_unit = compose(e, x);
  for (std::size_t j = 0; j < law_.size(); ++j) {
    if (!(right_unit[j] == x[j])) throw StructureError("right unit law fails for " + coordinates_[j].name);
    if (!(left_unit[j] == x[j])) throw StructureError("left unit law fails for " + coordinates_[j].name);
  }
}

std::vector<std::string> GroupLaw::names() const {
  std::vector<std::string> out;
  for (const auto& c : coordinates_) out.push_back(c.name);
  return out;
}

std::vector<RationalExpr> GroupLaw::symbols() const {
  std::vector<RationalExpr> out;
  for (const auto& c : coordinates_) out.push_back(RationalExpr::symbol(c.name));
  return out;
}

std::vector<RationalExpr> GroupLaw::tagged_symbols(int copy) const {
  std::vector<RationalExpr> out;
  for (const auto& c : coordinates_) out.push_back(RationalExpr::symbol(tagged(c.name, copy)));
  return out;
}

std::vector<RationalExpr> GroupLaw::identity() const {
  std::vector<RationalExpr> out;
  for (const auto& c : coordinates_) out.emplace_back(c.identity);
  return out;
}

Point GroupLaw::identity_point() const {
  Point out;
  for (const auto& c : coordinates_) out.emplace(c.name, c.identity);
  return out;
}

Bindings GroupLaw::identity_bindings() const {
  Bindings out;
  for (const auto& c : coordinates_) out.emplace(c.name, RationalExpr(c.identity));
  return out;
}

std::vector<RationalExpr> GroupLaw::compose(const std::vector<RationalExpr>& left,
                                            const std::vector<RationalExpr>& right) const {
  Bindings b;
  for (std::size_t i = 0; i < coordinates_.size(); ++i) {
    b.emplace(tagged(coordinates_[i].name, 1), left.at(i));
    b.emplace(tagged(coordinates_[i].name, 2), right.at(i));
  }
  std::vector<RationalExpr> out;
  for (const auto& m : law_) out.push_back(m.substitute(b));
  return out;
}

AssociativityReport check_associativity(const GroupLaw& group) {
  // Copies 1, 2 and 3 are renamed away from the law's own suffixes first.
  std::vector<RationalExpr> x, y, z;
  for (const auto& c : group.coordinates()) {
    x.push_back(RationalExpr::symbol(c.name + "_x"));
    y.push_back(RationalExpr::symbol(c.name + "_y"));
    z.push_back(RationalExpr::symbol(c.name + "_z"));
  }
  const auto lhs = group.compose(group.compose(x, y), z);
  const auto rhs = group.compose(x, group.compose(y, z));
  AssociativityReport report;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    report.residuals.push_back(lhs[j] - rhs[j]);
    if (!report.residuals.back().is_zero()) report.passed = false;
  }
  return report;
}

namespace {

std::vector<VectorField> derive_fields(const GroupLaw& group, int varying) {
  const int fixed = varying == 2 ? 1 : 2;
  Bindings at;
  for (const auto& c : group.coordinates()) {
    at.emplace(GroupLaw::tagged(c.name, fixed), RationalExpr::symbol(c.name));
    at.emplace(GroupLaw::tagged(c.name, varying), RationalExpr(c.identity));
  }
  std::vector<VectorField> fields;
  for (const auto& ci : group.coordinates()) {
    VectorField::Components comps;
    const std::string h = GroupLaw::tagged(ci.name, varying);
    for (std::size_t j = 0; j < group.dimension(); ++j) {
      try {
        comps.emplace(group.coordinates()[j].name, group.law()[j].differentiate(h).substitute(at));
      } catch (const PoleError&) {
        throw StructureError("law is singular at the identity");
      }
    }
    fields.emplace_back(std::move(comps));
  }
  return fields;
}

}  // namespace

std::vector<VectorField> derive_left_fields(const GroupLaw& group) { return derive_fields(group, 2); }
std::vector<VectorField> derive_right_fields(const GroupLaw& group) { return derive_fields(group, 1); }

std::vector<DifferentialForm> dual_forms(const std::vector<VectorField>& fields,
                                         const std::vector<std::string>& coordinates) {
  const std::size_t n = coordinates.size();
  if (fields.size() != n) throw StructureError("need one field per coordinate");
  Matrix mt(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) mt[k][i] = fields[i].component(coordinates[k]);
  }
  const Matrix t = inverse(mt);
  std::vector<DifferentialForm> forms;
  for (std::size_t j = 0; j < n; ++j) {
    DifferentialForm w(1);
    for (std::size_t k = 0; k < n; ++k) w += t[j][k] * DifferentialForm::differential(coordinates[k]);
    forms.push_back(std::move(w));
  }
  return forms;
}

LieAlgebraData::LieAlgebraData(std::vector<std::string> labels, std::vector<Scalar> constants)
    : labels_(std::move(labels)), constants_(std::move(constants)) {
  const std::size_t n = labels_.size();
  if (constants_.size() != n * n * n) throw StructureError("structure constants need n^3 entries");
}

LieAlgebraData LieAlgebraData::zero(std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  return LieAlgebraData(std::move(labels), std::vector<Scalar>(n * n * n, Scalar(0)));
}

const Scalar& LieAlgebraData::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t n = labels_.size();
  return constants_.at((i * n + j) * n + k);
}

void LieAlgebraData::set(std::size_t i, std::size_t j, std::size_t k, Scalar value) {
  const std::size_t n = labels_.size();
  constants_.at((i * n + j) * n + k) = std::move(value);
}

LieAlgebraData LieAlgebraData::negated() const {
  LieAlgebraData out = *this;
  for (auto& c : out.constants_) c = -c;
  return out;
}

Vector LieAlgebraData::bracket(const Vector& u, const Vector& v) const {
  const std::size_t n = dimension();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero()) continue;
      const RationalExpr uv = u[i] * v[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (!(*this)(i, j, k).is_zero()) out[k] += RationalExpr((*this)(i, j, k)) * uv;
      }
    }
  }
  return out;
}

bool LieAlgebraData::antisymmetric() const {
  const std::size_t n = dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!((*this)(i, j, k) + (*this)(j, i, k)).is_zero()) return false;
  return true;
}

std::vector<Scalar> LieAlgebraData::jacobi_residuals() const {
  const std::size_t n = dimension();
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Scalar r;
          for (std::size_t m = 0; m < n; ++m) {
            r += (*this)(i, j, m) * (*this)(m, k, l);
            r += (*this)(j, k, m) * (*this)(m, i, l);
            r += (*this)(k, i, m) * (*this)(m, j, l);
          }
          out.push_back(r);
        }
  return out;
}

bool LieAlgebraData::satisfies_jacobi() const {
  for (const auto& r : jacobi_residuals())
    if (!r.is_zero()) return false;
  return true;
}

LieAlgebraData structure_constants(const std::vector<VectorField>& fields,
                                   const std::vector<std::string>& coordinates,
                                   const std::vector<std::string>& labels) {
  const std::size_t n = fields.size();
  if (labels.size() != n) throw StructureError("one label per field required");
  const auto forms = dual_forms(fields, coordinates);
  LieAlgebraData c = LieAlgebraData::zero(labels);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorField b = bracket(fields[i], fields[j]);
      for (std::size_t k = 0; k < n; ++k) {
        const RationalExpr coeff = pairing(forms[k], b);
        auto value = coeff.as_scalar();
        if (!value) {
          throw StructureError("bracket [" + labels[i] + "," + labels[j] + "] has non-constant component " +
                               coeff.str() + " along " + labels[k]);
        }
        c.set(i, j, k, *value);
        c.set(j, i, k, -*value);
      }
    }
  }
  return c;
}

std::vector<DifferentialForm> maurer_cartan_residual(const std::vector<DifferentialForm>& forms,
                                                     const LieAlgebraData& c,
                                                     const std::vector<std::string>& coordinates) {
  const std::size_t n = forms.size();
  std::vector<DifferentialForm> out;
  for (std::size_t i = 0; i < n; ++i) {
    DifferentialForm r = exterior_derivative(forms[i], coordinates);
    // 1/2 sum_{j,k} C_jk^i theta^j theta^k = sum_{j<k} C_jk^i theta^j theta^k.
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (!c(j, k, i).is_zero()) r += RationalExpr(c(j, k, i)) * wedge(forms[j], forms[k]);
    out.push_back(std::move(r));
  }
  return out;
}

DifferentialForm haar_measure(const std::vector<DifferentialForm>& forms) {
  if (forms.empty()) throw StructureError("no forms");
  DifferentialForm out = forms.front();
  for (std::size_t i = 1; i < forms.size(); ++i) out = wedge(out, forms[i]);
  if (out.is_zero()) throw StructureError("degenerate volume form");
  return out;
}

ScalarMatrix killing_form(const LieAlgebraData& c) {
  const std::size_t n = c.dimension();
  ScalarMatrix k(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) k[i][j] += c(i, a, b) * c(j, b, a);
  return k;
}

bool is_ad_invariant(const LieAlgebraData& c, const ScalarMatrix& q) {
  const std::size_t n = c.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Scalar r;
        for (std::size_t l = 0; l < n; ++l) r += q[l][j] * c(l, i, k) + q[k][l] * c(l, i, j);
        if (!r.is_zero()) return false;
      }
  return true;
}

ScalarMatrix casimir_coefficients(const LieAlgebraData& c, const ScalarMatrix& q) {
  const std::size_t n = c.dimension();
  if (q.size() != n) throw StructureError("Casimir matrix has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].size() != n) throw StructureError("Casimir matrix has wrong size");
    for (std::size_t j = 0; j < i; ++j)
      if (!(q[i][j] == q[j][i])) throw StructureError("Casimir matrix is not symmetric");
  }
  if (!is_ad_invariant(c, q)) throw StructureError("Casimir matrix is not ad-invariant");
  return q;
}

ScalarMatrix casimir_from_killing(const LieAlgebraData& c, const Scalar& scale) {
  const Matrix inv = inverse(to_matrix(killing_form(c)));
  ScalarMatrix q(inv.size());
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (const auto& e : inv[i]) q[i].push_back(*e.as_scalar() * scale);
  return casimir_coefficients(c, q);
}

RationalExpr casimir_function_on_dual(const ScalarMatrix& q, const std::vector<RationalExpr>& dual) {
  RationalExpr out;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (!q[i][j].is_zero()) out += RationalExpr(q[i][j]) * dual[i] * dual[j];
  return out;
}

Matrix to_matrix(const ScalarMatrix& m) {
  Matrix out;
  for (const auto& row : m) {
    Vector r;
    for (const auto& e : row) r.emplace_back(e);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gaq
