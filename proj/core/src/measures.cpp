#include "gaq/measures.hpp"

#include "gaq/errors.hpp"

namespace gaq {

namespace {

std::vector<Scalar> constant_vector(const Vector& v) {
  std::vector<Scalar> out;
  for (const auto& e : v) {
    auto s = e.as_scalar();
    if (!s) throw StructureError("subgroup generator has a non-constant entry " + e.str());
    out.push_back(*s);
  }
  return out;
}

}  // namespace

ModularData modular_constants(const LieAlgebraData& c, const std::vector<Vector>& generators) {
  const std::size_t n = c.dimension();
  const std::size_t p = generators.size();
  Matrix basis;
  for (const auto& g : generators) {
    constant_vector(g);
    basis.push_back(g);
  }
  if (p > 0 && rank(basis) != p) throw StructureError("subgroup generators are dependent");
  for (std::size_t k = 0; k < n && basis.size() < n; ++k) {
    Vector e(n);
    e[k] = RationalExpr(1);
    Matrix trial = basis;
    trial.push_back(e);
    if (rank(trial) == trial.size()) basis = std::move(trial);
  }
  const Matrix inv = inverse(basis);
  // Structure constants in the adapted basis.
  auto adapted = [&](std::size_t i, std::size_t j) {
    const Vector w = c.bracket(basis[i], basis[j]);
    Vector x(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        if (!w[l].is_zero()) x[k] += w[l] * inv[l][k];
    return x;
  };
  ModularData m;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar k;
    for (std::size_t j = 0; j < n; ++j) k += c(i, j, j);
    m.kG.push_back(k);
  }
  for (std::size_t i = 0; i < p; ++i) {
    Scalar total, sub;
    for (std::size_t j = 0; j < n; ++j) {
      const Vector x = adapted(i, j);
      if (j < p) {
        for (std::size_t k = p; k < n; ++k)
          if (!x[k].is_zero()) throw StructureError("subgroup generators do not close under the bracket");
      }
      const Scalar d = *x[j].as_scalar();
      total += d;
      if (j < p) sub += d;
    }
    m.kH.push_back(sub);
    m.kGH.push_back(total - sub);
  }
  return m;
}

ModularData modular_constants(const LieAlgebraData& c, const std::vector<std::size_t>& indices) {
  std::vector<Vector> gens;
  for (auto i : indices) {
    Vector e(c.dimension());
    e.at(i) = RationalExpr(1);
    gens.push_back(e);
  }
  return modular_constants(c, gens);
}

std::vector<Scalar> character_residuals(const LieAlgebraData& c, const std::vector<Scalar>& k) {
  std::vector<Scalar> out;
  const std::size_t n = c.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar r;
      for (std::size_t l = 0; l < n; ++l) r += c(i, j, l) * k[l];
      out.push_back(r);
    }
  return out;
}

QuotientMeasure quotient_measure(const DifferentialForm& haar, const std::vector<VectorField>& generators,
                                 const Chart& chart, const std::vector<std::string>& chart_coordinates) {
  QuotientMeasure q{haar, std::nullopt};
  for (const auto& x : generators) q.form = interior_product(x, q.form);
  if (q.form.is_zero()) throw StructureError("quotient measure vanishes");
  const DifferentialForm pulled = pullback(q.form, chart.bindings, chart_coordinates);
  if (pulled.degree() == 1 && pulled.terms().size() == 1 && pulled.terms().begin()->first.front() == chart.tau) {
    q.adapted_density = pulled.terms().begin()->second;
  }
  return q;
}

std::optional<RationalExpr> quasi_invariance_defect(const DifferentialForm& form, const VectorField& x,
                                                    const std::vector<std::string>& coordinates) {
  const DifferentialForm l = lie_derivative(x, form, coordinates);
  if (l.is_zero()) return RationalExpr();
  return l.ratio_to(form);
}

RationalExpr RhoFunction::log_derivative(const VectorField& x) const {
  if (general) return x.apply(*general) / *general;
  RationalExpr out;
  for (const auto& [name, e] : exponents) {
    if (e.is_zero()) continue;
    const RationalExpr s = RationalExpr::symbol(name);
    out += e * x.apply(s) / s;
  }
  return out;
}

std::optional<RationalExpr> RhoFunction::expression() const {
  if (general) return general;
  RationalExpr out(1);
  for (const auto& [name, e] : exponents) {
    if (e.is_zero()) continue;
    auto s = e.as_scalar();
    if (!s || !s->is_integer()) return std::nullopt;
    out *= RationalExpr::symbol(name).pow(s->re().get_num().get_si());
  }
  return out;
}

GeneratingFunction RhoFunction::half_log() const {
  const Scalar factor(Rational(0), Rational(-1, 2));
  if (general) {
    if (general->is_one()) return GeneratingFunction();
    return GeneratingFunction(RationalExpr(), {{factor, *general}});
  }
  std::vector<LogTerm> logs;
  for (const auto& [name, e] : exponents) {
    if (e.is_zero()) continue;
    auto s = e.as_scalar();
    if (!s) throw ModelError("rho exponent is not constant: " + e.str());
    logs.push_back({factor * *s, RationalExpr::symbol(name)});
  }
  return GeneratingFunction(RationalExpr(), std::move(logs));
}

std::string RhoFunction::str() const {
  if (general) return general->str();
  if (auto e = expression()) return e->str();
  std::string out;
  for (const auto& [name, e] : exponents) {
    if (e.is_zero()) continue;
    out += (out.empty() ? "" : "*") + name + "^(" + e.str() + ")";
  }
  return out.empty() ? "1" : out;
}

RhoSolve rho_solve_monomial(const std::vector<VectorField>& subgroup_fields, const std::vector<Scalar>& k,
                            const std::vector<std::string>& coordinates) {
  std::vector<std::string> unknowns;
  for (const auto& x : coordinates) unknowns.push_back("e_" + x);
  std::vector<RationalExpr> equations;
  for (std::size_t i = 0; i < subgroup_fields.size(); ++i) {
    RationalExpr eq = -RationalExpr(k.at(i));
    for (std::size_t j = 0; j < coordinates.size(); ++j) {
      const RationalExpr s = RationalExpr::symbol(coordinates[j]);
      eq += RationalExpr::symbol(unknowns[j]) * subgroup_fields[i].apply(s) / s;
    }
    equations.push_back(eq);
  }
  RhoSolve r;
  const std::set<std::string> coords(coordinates.begin(), coordinates.end());
  r.system = identity_system(equations, unknowns, coords);
  std::optional<Vector> sol = r.system.coefficients.empty() ? std::optional<Vector>(Vector(unknowns.size()))
                                                            : solve(r.system.coefficients, r.system.rhs, unknowns.size());
  if (!sol) return r;
  RhoFunction rho;
  for (std::size_t j = 0; j < coordinates.size(); ++j) rho.exponents.emplace_back(coordinates[j], (*sol)[j]);
  r.rho = std::move(rho);
  return r;
}

std::vector<RationalExpr> rho_verify(const RhoFunction& rho, const std::vector<VectorField>& subgroup_fields,
                                     const std::vector<Scalar>& k) {
  std::vector<RationalExpr> out;
  for (std::size_t i = 0; i < subgroup_fields.size(); ++i)
    out.push_back(rho.log_derivative(subgroup_fields[i]) - RationalExpr(k.at(i)));
  return out;
}

bool rho_positive(const RhoFunction& rho, const std::vector<Point>& samples) {
  for (const auto& p : samples) {
    if (auto e = rho.expression()) {
      const Scalar v = e->eval_at(p);
      if (!v.is_real() || v.re() <= 0) return false;
      continue;
    }
    for (const auto& [name, ex] : rho.exponents) {
      if (ex.is_zero()) continue;
      auto s = ex.as_scalar();
      const Scalar v = RationalExpr::symbol(name).eval_at(p);
      if (!s || !s->is_real() || !v.is_real() || v.re() <= 0) return false;
    }
  }
  return true;
}

FirstOrderOperator commutator(const FirstOrderOperator& a, const FirstOrderOperator& b) {
  return {bracket(a.field, b.field), a.field.apply(b.multiplier) - b.field.apply(a.multiplier)};
}

std::vector<FirstOrderOperator> corrected_right_fields(const std::vector<VectorField>& right, const RhoFunction& rho) {
  std::vector<FirstOrderOperator> out;
  const RationalExpr half(Scalar(Rational(1, 2)));
  for (const auto& x : right) out.push_back({x, half * rho.log_derivative(x)});
  return out;
}

ReducedOp formal_adjoint(const ReducedOp& op, const RationalExpr& weight, const std::string& tau) {
  if (weight.is_zero()) throw ModelError("zero weight");
  const RationalExpr fb = op.f.conjugate();
  return {-fb, -(fb.differentiate(tau) + fb * weight.differentiate(tau) / weight) + op.g.conjugate()};
}

bool anti_hermitian(const ReducedOp& op, const RationalExpr& weight, const std::string& tau) {
  const ReducedOp adj = formal_adjoint(op, weight, tau);
  return adj.f == -op.f && adj.g == -op.g;
}

std::optional<RationalExpr> wave_density(const WaveAnsatz& psi, const RationalExpr& adapted_density,
                                         const Chart& chart) {
  RationalExpr out = adapted_density;
  for (const auto& f : psi.factors) {
    if (f.kind == AnsatzFactor::Kind::Exp) {
      if (!(f.argument + f.argument.conjugate()).is_zero()) return std::nullopt;
      continue;
    }
    if (f.exponent.is_zero()) continue;
    const RationalExpr base = f.argument.substitute(chart.bindings);
    if (!(base.conjugate() == base)) return std::nullopt;
    auto t = (f.exponent + f.exponent.conjugate()).as_scalar();
    if (!t || !t->is_integer()) return std::nullopt;
    out *= base.pow(t->re().get_num().get_si());
  }
  return out;
}

UnitarityVerdict unitarity_report(const std::vector<ReducedOp>& ops, const RationalExpr& weight, const std::string& tau,
                                  const CasimirScalar& casimir, const std::optional<RationalExpr>& density,
                                  const Chart& chart, const std::set<std::string>& coordinates) {
  UnitarityVerdict v;
  v.anti_hermitian = true;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!anti_hermitian(ops[i], weight, tau)) {
      v.anti_hermitian = false;
      v.reasons.push_back("generator " + std::to_string(i) + " is not anti-Hermitian");
    }
  }
  v.real_casimir = casimir.scalar && casimir.unitary_compatible;
  if (!v.real_casimir) v.reasons.push_back(casimir.scalar ? "Casimir scalar is not real" : "Casimir is not a scalar");
  if (!density) {
    v.reasons.push_back("wave-function density is not a rational function of the chart");
  } else {
    v.measure_falls = true;
    for (const auto& s : density->variables()) {
      if (s == chart.kappa || coordinates.count(s)) {
        v.measure_falls = false;
        v.reasons.push_back("measure does not fall to the quotient: density " + density->str());
        break;
      }
    }
  }
  return v;
}

}  // namespace gaq
