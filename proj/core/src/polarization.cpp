#include "gaq/polarization.hpp"

#include <gmpxx.h>

#include "gaq/errors.hpp"

namespace gaq {

namespace {

std::vector<Vector> span_rows(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return {};
  return rref(vectors).rows;
}

std::size_t rank_of(const std::vector<Vector>& vectors) { return vectors.empty() ? 0 : rank(vectors); }

bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  std::vector<Vector> extended = basis;
  extended.push_back(v);
  return rank_of(extended) == rank_of(basis);
}

std::string vector_str(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

}  // namespace

Polarization normalized(const Polarization& p) {
  Polarization out;
  out.generators = span_rows(p.generators);
  out.eigenvalues.assign(out.generators.size(), RationalExpr());
  return out;
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b) { return span_rows(a) == span_rows(b); }

std::size_t presymplectic_rank(const PseudoExtension& ext) {
  const DifferentialForm w = presymplectic_form(ext);
  const std::size_t n = ext.dimension();
  Matrix b(n, Vector(n));
  for (std::size_t j = 0; j < n; ++j) {
    const DifferentialForm ij = interior_product(ext.left()[j], w);
    for (std::size_t k = 0; k < n; ++k) b[j][k] = pairing(ij, ext.left()[k]);
  }
  return rank(b);
}

PolarizationCheck validate_polarization(const Polarization& p, const PseudoExtension& ext,
                                        const std::vector<Vector>& characteristic) {
  PolarizationCheck check;
  const auto& gens = p.generators;
  if (rank_of(gens) != gens.size()) {
    check.independent = false;
    check.diagnostics.push_back("generators are linearly dependent");
  }
  check.degenerate = presymplectic_form(ext).is_zero();
  if (check.degenerate) check.diagnostics.push_back("warning: dTheta = 0, only closure is checked");

  if (!check.degenerate) {
    for (const auto& v : characteristic) {
      if (!in_span(gens, v)) {
        check.contains_characteristic = false;
        check.diagnostics.push_back("characteristic generator " + vector_str(v) + " is not contained");
      }
    }
    check.expected_dimension = presymplectic_rank(ext) / 2 + characteristic.size();
    if (rank_of(gens) != check.expected_dimension) {
      check.dimension_ok = false;
      check.diagnostics.push_back("dimension " + std::to_string(rank_of(gens)) + " differs from maximal isotropic " +
                                  std::to_string(check.expected_dimension));
    }
  }

  std::vector<VectorField> fields;
  for (const auto& g : gens) fields.push_back(combine(g, ext.left()));
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      const Decomposition d = decompose(bracket(fields[i], fields[j]), ext.left(), ext.base_coordinates());
      const std::string pair = "[" + vector_str(gens[i]) + ", " + vector_str(gens[j]) + "]";
      if (!d.xi.is_zero()) {
        check.closed = false;
        check.diagnostics.push_back(pair + " leaks Xi with coefficient " + d.xi.str());
      }
      if (!in_span(gens, d.coefficients)) {
        check.closed = false;
        check.diagnostics.push_back(pair + " = " + vector_str(d.coefficients) + " leaves the span");
      }
    }
  return check;
}

PolarizationSearch enumerate_polarizations_dim3(const PseudoExtension& ext,
                                                const std::vector<Vector>& characteristic) {
  if (ext.dimension() != 3) throw ModelError("polarization enumeration needs a 3-dimensional group");
  if (characteristic.size() != 1) throw ModelError("polarization enumeration needs a 1-dimensional characteristic subalgebra");
  PolarizationSearch s;
  s.v0 = characteristic.front();
  auto unit = [](std::size_t k) {
    Vector e(3);
    e[k] = RationalExpr(1);
    return e;
  };
  bool found = false;
  for (std::size_t p = 0; p < 3 && !found; ++p)
    for (std::size_t q = p + 1; q < 3 && !found; ++q)
      if (!determinant({s.v0, unit(p), unit(q)}).is_zero()) {
        s.p = p;
        s.q = q;
        found = true;
      }

  const RationalExpr nu = RationalExpr::symbol(kChartParameter);
  Vector v = unit(s.p);
  v[s.q] = nu;
  const auto& alg = ext.algebra();
  const RationalExpr det = determinant({s.v0, v, alg.bracket(s.v0, v)});
  if (det.den().contains(kChartParameter)) throw ModelError("closure condition is not polynomial in nu");
  s.closure_polynomial = det.num() * Scalar(1);
  const auto coeffs = det.num().coefficients_in(kChartParameter);
  RationalExpr c[3];
  for (const auto& [deg, poly] : coeffs) {
    if (deg > 2) throw ModelError("closure condition has degree above 2");
    c[deg] = RationalExpr(poly, det.den());
  }
  const Vector vq = unit(s.q);
  const bool infinity = determinant({s.v0, vq, alg.bracket(s.v0, vq)}).is_zero();
  if (infinity != c[2].is_zero()) throw ModelError("chart at infinity disagrees with the leading coefficient");
  s.infinity_solution = infinity;

  auto add_plane = [&](const Vector& w, bool real) {
    Polarization pol = normalized({{s.v0, w}, {}});
    (real ? s.real : s.complex).push_back(pol);
  };

  if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) {
    s.degenerate_family = true;
    return s;
  }
  auto constant = [](const RationalExpr& e) {
    auto sc = e.as_scalar();
    if (!sc) throw ModelError("closure polynomial has parameter-dependent coefficients: " + e.str());
    return *sc;
  };
  std::vector<Scalar> roots;
  if (!c[2].is_zero()) {
    const Scalar b = constant(c[1] / c[2]);
    const Scalar k = constant(c[0] / c[2]);
    s.monic_polynomial = Poly::variable(kChartParameter).pow(2) + Poly::variable(kChartParameter) * b + Poly(k);
    const Scalar disc = b * b - Scalar(4) * k;
    s.discriminant = disc;
    if (!disc.is_real() || !b.is_real()) {
      s.irrational_roots = true;
    } else if (disc.re() >= 0) {
      if (auto r = rational_sqrt(disc.re())) {
        const Scalar half(Rational(1, 2));
        s.real_roots.push_back((-b + Scalar(*r)) * half);
        if (*r != 0) s.real_roots.push_back((-b - Scalar(*r)) * half);
      } else {
        s.irrational_roots = true;
      }
    } else if (auto r = rational_sqrt(-disc.re())) {
      const Scalar half(Rational(1, 2));
      s.complex_roots.push_back((-b + Scalar(0, *r)) * half);
      s.complex_roots.push_back((-b - Scalar(0, *r)) * half);
    } else {
      s.irrational_roots = true;
    }
  } else if (!c[1].is_zero()) {
    const Scalar k = constant(c[0] / c[1]);
    s.monic_polynomial = Poly::variable(kChartParameter) + Poly(k);
    s.real_roots.push_back(-k);
  }
  for (const auto& r : s.real_roots) {
    Vector w = unit(s.p);
    w[s.q] = RationalExpr(r);
    add_plane(w, true);
  }
  if (s.infinity_solution) add_plane(vq, true);
  for (const auto& r : s.complex_roots) {
    Vector w = unit(s.p);
    w[s.q] = RationalExpr(r);
    add_plane(w, false);
  }
  return s;
}

std::string AnsatzFactor::str() const {
  if (kind == Kind::Exp) return "exp(" + argument.str() + ")";
  const std::string base = argument.num().size() == 1 && argument.is_polynomial() && argument.num().leading_coefficient().is_one()
                               ? argument.str()
                               : "(" + argument.str() + ")";
  if (exponent.is_one()) return base;
  const bool simple = exponent.is_constant() && exponent.as_scalar()->is_real() && exponent.as_scalar()->is_integer() &&
                      exponent.as_scalar()->re() >= 0;
  return base + "^" + (simple ? exponent.str() : "(" + exponent.str() + ")");
}

std::string WaveAnsatz::str() const {
  std::string out = "zeta";
  for (const auto& f : factors) {
    if (f.kind == AnsatzFactor::Kind::Exp && f.argument.is_zero()) continue;
    if (f.kind == AnsatzFactor::Kind::Power && (f.exponent.is_zero() || f.argument.is_one())) continue;
    out += "*" + f.str();
  }
  return out + "*Phi(" + tau.str() + ")";
}

AnsatzAction apply_field_to_ansatz(const VectorField& x, const WaveAnsatz& psi) {
  AnsatzAction a;
  for (const auto& f : psi.factors) {
    if (f.kind == AnsatzFactor::Kind::Exp) {
      a.c0 += x.apply(f.argument);
    } else if (!f.exponent.is_zero()) {
      a.c0 += f.exponent * x.apply(f.argument) / f.argument;
    }
  }
  a.c0 += Scalar::i() * x.component(kFiberSymbol);
  a.c1 = x.apply(psi.tau);
  return a;
}

WaveAnsatz solve_prefactor(const WaveAnsatz& templ, const Polarization& p, const PseudoExtension& ext) {
  std::vector<RationalExpr> equations;
  for (std::size_t k = 0; k < p.generators.size(); ++k) {
    const AnsatzAction a = apply_field_to_ansatz(combine(p.generators[k], ext.left()), templ);
    if (!a.c1.is_zero()) throw ModelError("tau is not invariant along generator " + std::to_string(k) + ": " + a.c1.str());
    const RationalExpr ev = k < p.eigenvalues.size() ? p.eigenvalues[k] : RationalExpr();
    equations.push_back(a.c0 - ev);
  }
  const std::set<std::string> coords(ext.coordinates().begin(), ext.coordinates().end());
  Bindings values;
  if (!templ.unknowns.empty()) {
    const LinearSystem sys = identity_system(equations, templ.unknowns, coords);
    auto sol = sys.coefficients.empty() ? std::optional<Vector>(Vector(templ.unknowns.size()))
                                        : solve(sys.coefficients, sys.rhs, templ.unknowns.size());
    if (!sol) {
      std::string text;
      for (std::size_t r = 0; r < sys.coefficients.size(); ++r)
        text += "\n  " + vector_str(sys.coefficients[r]) + " . u = " + sys.rhs[r].str();
      throw ModelError("polarization equations are inconsistent for this ansatz:" + text);
    }
    for (std::size_t u = 0; u < templ.unknowns.size(); ++u) values.emplace(templ.unknowns[u], (*sol)[u]);
  } else {
    for (const auto& e : equations)
      if (!e.is_zero()) throw ModelError("ansatz without unknowns violates the polarization equations: " + e.str());
  }
  WaveAnsatz out;
  out.tau = templ.tau;
  for (const auto& f : templ.factors) {
    AnsatzFactor g = f;
    g.argument = f.argument.substitute(values);
    g.exponent = f.exponent.substitute(values);
    out.factors.push_back(std::move(g));
  }
  for (const auto& e : polarization_residuals(out, p, ext))
    if (!e.c0.is_zero() || !e.c1.is_zero()) throw ModelError("solved ansatz fails re-verification");
  return out;
}

std::vector<AnsatzAction> polarization_residuals(const WaveAnsatz& psi, const Polarization& p,
                                                 const PseudoExtension& ext) {
  std::vector<AnsatzAction> out;
  for (std::size_t k = 0; k < p.generators.size(); ++k) {
    AnsatzAction a = apply_field_to_ansatz(combine(p.generators[k], ext.left()), psi);
    if (k < p.eigenvalues.size()) a.c0 -= p.eigenvalues[k];
    out.push_back(std::move(a));
  }
  return out;
}

std::string ReducedOp::str(const std::string& tau) const {
  std::string out;
  if (!g.is_zero()) out = g.str();
  if (!f.is_zero()) {
    std::string d = "d/d" + tau;
    RationalExpr shown = f;
    bool negative = false;
    if (f.num().size() == 1 && f.num().leading_coefficient().is_real() && f.num().leading_coefficient().re() < 0) {
      negative = true;
      shown = -f;
    }
    const bool simple = shown.num().size() == 1 && shown.is_polynomial();
    const std::string term = shown.is_one() ? d : (simple ? shown.str() : "(" + shown.str() + ")") + "*" + d;
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

ReducedOp reduce_operator(const VectorField& x, const WaveAnsatz& psi, const Chart& chart,
                          const std::set<std::string>& coordinates) {
  const AnsatzAction a = apply_field_to_ansatz(x, psi);
  ReducedOp op{a.c1.substitute(chart.bindings), a.c0.substitute(chart.bindings)};
  for (const auto* e : {&op.f, &op.g}) {
    for (const auto& v : e->variables()) {
      if (v == chart.kappa || coordinates.count(v)) {
        throw ModelError("reduced operator keeps a dependence on " + v + ": " + e->str());
      }
    }
  }
  return op;
}

ReducedOp commutator(const ReducedOp& a, const ReducedOp& b, const std::string& tau) {
  return {a.f * b.f.differentiate(tau) - b.f * a.f.differentiate(tau),
          a.f * b.g.differentiate(tau) - b.f * a.g.differentiate(tau)};
}

SecondOrderOp& SecondOrderOp::operator+=(const SecondOrderOp& o) {
  d2 += o.d2;
  d1 += o.d1;
  d0 += o.d0;
  return *this;
}

SecondOrderOp compose(const ReducedOp& a, const ReducedOp& b, const std::string& tau) {
  return {a.f * b.f, a.f * b.f.differentiate(tau) + a.f * b.g + a.g * b.f, a.f * b.g.differentiate(tau) + a.g * b.g};
}

SecondOrderOp compose_reduced(const std::vector<ReducedOp>& ops, const ScalarMatrix& q, const std::string& tau) {
  SecondOrderOp out;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < ops.size(); ++j) {
      if (q[i][j].is_zero()) continue;
      SecondOrderOp term = compose(ops[i], ops[j], tau);
      const RationalExpr s(q[i][j]);
      out += {s * term.d2, s * term.d1, s * term.d0};
    }
  return out;
}

CasimirScalar casimir_scalar_on_ansatz(const SecondOrderOp& op, const std::string& tau) {
  CasimirScalar c;
  c.value = op.d0;
  if (!op.d2.is_zero() || !op.d1.is_zero() || op.d0.depends_on(tau)) {
    c.diagnostic = "not a multiple of the identity: " + op.d2.str() + " D^2 + " + op.d1.str() + " D + " + op.d0.str();
    return c;
  }
  c.scalar = true;
  c.irreducible = true;
  c.unitary_compatible = op.d0.conjugate() == op.d0;
  return c;
}

}  // namespace gaq
