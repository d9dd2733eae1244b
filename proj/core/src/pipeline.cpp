#include "gaq/pipeline.hpp"

#include <random>
#include <sstream>

#include "gaq/errors.hpp"

namespace gaq {

namespace {

struct Planned {
  Stage stage;
  const char* section;
  const char* id;
  const char* title;
  EntryKind kind;
};

using K = EntryKind;
using S = Stage;

const Planned kPlan[] = {
    {S::Check, "group", "group.coordinates", "coordinates at the identity", K::Text},
    {S::Check, "group", "group.law", "composition law", K::Exprs},
    {S::Check, "group", "group.unit", "unit laws", K::Text},
    {S::Check, "group", "group.associativity", "associativity residuals", K::Exprs},
    {S::Derive, "derived", "fields.left", "left-invariant fields", K::Fields},
    {S::Derive, "derived", "fields.right", "right-invariant fields", K::Fields},
    {S::Derive, "derived", "fields.commute", "[X^L_i, X^R_j] = 0", K::Text},
    {S::Derive, "derived", "forms.left", "left-invariant 1-forms", K::Forms},
    {S::Derive, "derived", "forms.right", "right-invariant 1-forms", K::Forms},
    {S::Derive, "derived", "forms.duality", "<theta^j, X_i> = delta", K::Text},
    {S::Derive, "derived", "algebra.brackets", "brackets of left fields", K::Text},
    {S::Derive, "derived", "algebra.constants", "nonzero structure constants", K::Exprs},
    {S::Derive, "derived", "algebra.right_constants", "right constants = -left constants", K::Text},
    {S::Derive, "derived", "algebra.jacobi", "antisymmetry and Jacobi", K::Text},
    {S::Derive, "derived", "algebra.maurer_cartan", "Maurer-Cartan residuals (left)", K::Forms},
    {S::Derive, "derived", "algebra.maurer_cartan_right", "Maurer-Cartan residuals (right)", K::Forms},
    {S::Derive, "derived", "haar.form", "Haar measure", K::Form},
    {S::Derive, "derived", "haar.invariance", "L_{X^R_i} Haar", K::Forms},
    {S::Derive, "derived", "casimir.matrix", "Casimir coefficients Q", K::Text},
    {S::Derive, "derived", "casimir.operator", "Casimir operator", K::Text},
    {S::Extend, "extension", "extension.lambda", "generating function", K::Text},
    {S::Extend, "extension", "extension.vanishes", "lambda(e) = 0", K::Text},
    {S::Extend, "extension", "extension.fiber", "fiber", K::Text},
    {S::Extend, "extension", "extension.cocycle", "cocycle xi(g', g)", K::Expr},
    {S::Extend, "extension", "extension.cocycle_identity", "cocycle identity residual", K::Expr},
    {S::Extend, "extension", "extension.lambda0", "lambda0", K::Exprs},
    {S::Extend, "extension", "extension.left", "extended left fields", K::Fields},
    {S::Extend, "extension", "extension.right", "extended right fields", K::Fields},
    {S::Extend, "extension", "extension.xi_central", "Xi central", K::Text},
    {S::Extend, "extension", "extension.theta", "Theta", K::Form},
    {S::Extend, "extension", "extension.dtheta", "dTheta", K::Form},
    {S::Extend, "extension", "extension.dtheta_algebra", "dTheta from structure constants", K::Form},
    {S::Extend, "extension", "extension.brackets_left", "left brackets", K::Text},
    {S::Extend, "extension", "extension.brackets_right", "right brackets", K::Text},
    {S::Extend, "extension", "extension.brackets_redefined", "redefined right brackets", K::Text},
    {S::Extend, "orbit", "orbit.casimir", "Casimir on the orbit", K::Expr},
    {S::Extend, "orbit", "orbit.type", "orbit type", K::Text},
    {S::Extend, "orbit", "orbit.selector", "sheet selector", K::Text},
    {S::Extend, "characteristic", "characteristic.subalgebra", "characteristic subalgebra", K::Span},
    {S::Extend, "characteristic", "characteristic.cross_check", "kernel of i_X dTheta", K::Span},
    {S::Extend, "characteristic", "characteristic.rank", "rank of dTheta", K::Expr},
    {S::Polarize, "polarization", "polarization.certificate", "closure polynomial (monic)", K::Expr},
    {S::Polarize, "polarization", "polarization.discriminant", "discriminant", K::Expr},
    {S::Polarize, "polarization", "polarization.real", "real polarizations", K::Spans},
    {S::Polarize, "polarization", "polarization.real_count", "number of real polarizations", K::Expr},
    {S::Polarize, "polarization", "polarization.complex", "complex polarizations", K::Spans},
    {S::Polarize, "polarization", "polarization.complex_valid", "complex polarizations validate", K::Text},
    {S::Polarize, "polarization", "polarization.selected", "selected polarization", K::Span},
    {S::Polarize, "polarization", "polarization.selected_valid", "selected polarization validates", K::Text},
    {S::Represent, "representation", "ansatz.template", "wave function template", K::Text},
    {S::Represent, "representation", "ansatz.horizontal", "horizontal wave function", K::Text},
    {S::Represent, "representation", "ansatz.horizontal_residuals", "polarization residuals", K::Exprs},
    {S::Represent, "representation", "operators.horizontal", "reduced operators (horizontal)", K::Exprs},
    {S::Represent, "representation", "operators.horizontal_closure", "reduced operators close", K::Text},
    {S::Represent, "representation", "casimir.horizontal", "Casimir scalar (horizontal)", K::Expr},
    {S::Represent, "representation", "casimir.horizontal_class", "Casimir classification (horizontal)", K::Text},
    {S::Pipeline, "measure", "measure.kG", "modular constants k^G", K::Exprs},
    {S::Pipeline, "measure", "measure.kH", "modular constants k^H", K::Exprs},
    {S::Pipeline, "measure", "measure.kGH", "modular constants k^{G/H}", K::Exprs},
    {S::Pipeline, "measure", "measure.quotient_form", "Omega^L_H", K::Form},
    {S::Pipeline, "measure", "measure.adapted_density", "density in the adapted chart", K::Expr},
    {S::Pipeline, "measure", "measure.rho", "rho", K::Expr},
    {S::Pipeline, "measure", "measure.rho_check", "X^L_i rho = k^{G/H}_i rho", K::Exprs},
    {S::Pipeline, "measure", "measure.rho_positive", "rho positive on samples", K::Text},
    {S::Pipeline, "measure", "measure.quasi_invariance", "L_{X_h}(rho Omega^L_H) coefficients", K::Exprs},
    {S::Pipeline, "measure", "measure.corrected_multipliers", "corrected right field multipliers", K::Exprs},
    {S::Pipeline, "measure", "measure.corrected_closure", "corrected fields close", K::Text},
    {S::Pipeline, "measure", "measure.correction_lambda0", "lambda0 of the R+ correction", K::Exprs},
    {S::Pipeline, "unitarity", "ansatz.half_rho", "half-rho wave function", K::Text},
    {S::Pipeline, "unitarity", "ansatz.half_rho_residuals", "polarization residuals (half-rho)", K::Exprs},
    {S::Pipeline, "unitarity", "operators.final", "reduced operators", K::Exprs},
    {S::Pipeline, "unitarity", "operators.final_closure", "reduced operators close", K::Text},
    {S::Pipeline, "unitarity", "operators.adjoints", "anti-Hermitian", K::Text},
    {S::Pipeline, "unitarity", "casimir.final", "Casimir scalar", K::Expr},
    {S::Pipeline, "unitarity", "casimir.final_class", "Casimir classification", K::Text},
    {S::Pipeline, "unitarity", "measure.wave_density", "|prefactor|^2 times density", K::Expr},
    {S::Pipeline, "unitarity", "unitarity.verdict", "verdict", K::Text},
};

const char* kNotes[] = {
    "Casimir operator: sum of Q^{ij} X_i X_j over the redefined right generators, evaluated on the polarized wave "
    "function.",
    "Adjoints are formal for <Phi, Psi> = int conj(Phi) Psi w dtau with boundary terms dropped; a generator passes "
    "when L^dagger = -L.",
    "Reduced operators are written g + f*D with D = d/dtau.",
    "Charge integrality and global questions (covering groups, completeness of series) are not checked.",
};

class Builder {
 public:
  Builder(const ModelConfig& m, Stage stage) {
    report_.model = m.name;
    report_.stage = to_string(stage);
    for (const auto& p : kPlan) {
      if (p.stage > stage) continue;
      if (report_.sections.empty() || report_.sections.back().name != p.section)
        report_.sections.push_back({p.section, {}});
      ReportEntry e;
      e.id = p.id;
      e.title = p.title;
      e.kind = p.kind;
      e.status = Status::NotApplicable;
      report_.sections.back().entries.push_back(std::move(e));
    }
    for (const auto* n : kNotes) report_.notes.emplace_back(n);
  }

  bool planned(const std::string& id) const { return report_.find(id) != nullptr; }

  ReportEntry& set(const std::string& id, std::string value, bool ok = true, std::string detail = "") {
    ReportEntry* e = report_.find(id);
    if (!e) throw std::logic_error("unplanned report entry " + id);
    e->value = std::move(value);
    e->status = ok ? Status::Pass : Status::Fail;
    e->detail = std::move(detail);
    touched_.insert(id);
    return *e;
  }

  void na(const std::string& id, std::string reason) {
    if (ReportEntry* e = report_.find(id)) {
      e->status = Status::NotApplicable;
      e->detail = std::move(reason);
      touched_.insert(id);
    }
  }

  void fail(const std::string& id, const std::string& message) {
    if (ReportEntry* e = report_.find(id)) {
      e->status = Status::Fail;
      e->detail = "error: " + message;
      touched_.insert(id);
    }
    blocked_ = id + " failed";
  }

  void block(std::string reason) {
    if (blocked_.empty()) blocked_ = std::move(reason);
  }

  Report finish() {
    for (auto& sec : report_.sections)
      for (auto& e : sec.entries)
        if (!touched_.count(e.id)) e.detail = blocked_.empty() ? "not reached" : "skipped: " + blocked_;
    return std::move(report_);
  }

  Report& report() { return report_; }

 private:
  Report report_;
  std::set<std::string> touched_;
  std::string blocked_;
};

template <class T, class F>
std::string join(const std::vector<T>& xs, F f, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += f(xs[i]);
  }
  return out;
}

std::string exprs(const std::vector<RationalExpr>& xs) {
  return join(xs, [](const RationalExpr& e) { return e.str(); });
}
std::string fields(const std::vector<VectorField>& xs) {
  return join(xs, [](const VectorField& f) { return f.str(); });
}
std::string forms(const std::vector<DifferentialForm>& xs) {
  return join(xs, [](const DifferentialForm& f) { return f.str(); });
}
bool all_zero(const std::vector<RationalExpr>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](const RationalExpr& e) { return e.is_zero(); });
}
bool all_zero(const std::vector<DifferentialForm>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](const DifferentialForm& e) { return e.is_zero(); });
}
std::string flag(bool b) { return b ? "true" : "false"; }

std::string span_str(const std::vector<Vector>& vs) {
  return "span{" + join(vs, [](const Vector& v) { return "(" + exprs(v) + ")"; }) + "}";
}

std::vector<Scalar> constants_of(const std::vector<RationalExpr>& xs) {
  std::vector<Scalar> out;
  for (const auto& x : xs) {
    auto s = x.as_scalar();
    if (!s) return {};
    out.push_back(*s);
  }
  return out;
}

std::vector<RationalExpr> as_exprs(const std::vector<Scalar>& xs) { return {xs.begin(), xs.end()}; }

std::string op_str(const ReducedOp& op, const std::string& tau) {
  std::string s = op.str(tau);
  const std::string d = "d/d" + tau;
  for (std::size_t at; (at = s.find(d)) != std::string::npos;) s.replace(at, d.size(), "D");
  return s;
}

// dphi + p*(rest) when one parameter divides every base coefficient.
std::string theta_str(const DifferentialForm& theta, const std::vector<std::string>& parameters) {
  std::vector<std::pair<DifferentialForm::Index, RationalExpr>> fiber, rest;
  for (const auto& [idx, c] : theta.terms())
    (idx == DifferentialForm::Index{std::string(kFiberSymbol)} ? fiber : rest).emplace_back(idx, c);
  if (rest.empty()) return theta.str();
  for (const auto& p : parameters) {
    const RationalExpr sym = RationalExpr::symbol(p);
    bool divisible = true;
    std::vector<std::pair<DifferentialForm::Index, RationalExpr>> reduced;
    for (const auto& [idx, c] : rest) {
      const RationalExpr q = c / sym;
      try {
        q.partial_eval({{p, Scalar(0)}});
      } catch (const Error&) {
        divisible = false;
        break;
      }
      reduced.emplace_back(idx, q);
    }
    if (!divisible) continue;
    const std::string head = fiber.empty() ? "" : DifferentialForm(1, fiber).str() + " + ";
    return head + p + "*(" + DifferentialForm(1, reduced).str() + ")";
  }
  return theta.str();
}

std::string decomposition_str(const Decomposition& d, const std::vector<std::string>& labels) {
  RationalExpr e;
  for (std::size_t k = 0; k < d.coefficients.size(); ++k)
    e += d.coefficients[k] * RationalExpr::symbol("X_" + labels[k]);
  e += d.xi * RationalExpr::symbol("Xi");
  return e.str();
}

std::pair<std::string, bool> bracket_table_str(const std::vector<BracketEntry>& table,
                                               const std::vector<std::string>& labels) {
  std::string out;
  bool ok = true;
  for (const auto& b : table) {
    if (!out.empty()) out += "; ";
    out += "[" + labels[b.i] + ", " + labels[b.j] + "] = " + decomposition_str(b.computed, labels);
    ok = ok && b.matches;
  }
  return {out, ok};
}

std::string matrix_str(const ScalarMatrix& q) {
  return join(q, [](const std::vector<Scalar>& row) { return join(row, [](const Scalar& s) { return s.str(); }, " "); },
              "; ");
}

std::string casimir_operator_str(const ScalarMatrix& q, const std::vector<std::string>& labels) {
  RationalExpr e;
  std::string out;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q[i][j].is_zero()) continue;
      const std::string mono = i == j ? "X_" + labels[i] + "^2" : "X_" + labels[i] + "*X_" + labels[j];
      std::string coef = q[i][j].is_one() ? "" : (q[i][j].needs_parens() ? "(" + q[i][j].str() + ")" : q[i][j].str()) + "*";
      if (coef == "-1*") coef = "-";
      if (!out.empty()) {
        if (coef.front() == '-') {
          out += " - ";
          coef.erase(0, 1);
        } else {
          out += " + ";
        }
      }
      out += coef + mono;
    }
  return out.empty() ? "0" : out;
}

// [A_i, A_j] = sum_k c_ij^k A_k for reduced operators.
bool closes(const std::vector<ReducedOp>& ops, const LieAlgebraData& c, const std::string& tau) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      ReducedOp expected{RationalExpr(0), RationalExpr(0)};
      for (std::size_t k = 0; k < ops.size(); ++k) {
        expected.f += RationalExpr(c(i, j, k)) * ops[k].f;
        expected.g += RationalExpr(c(i, j, k)) * ops[k].g;
      }
      if (!(commutator(ops[i], ops[j], tau) == expected)) return false;
    }
  return true;
}

std::string classify(const CasimirScalar& cs) {
  if (!cs.scalar) return "not scalar: " + cs.diagnostic;
  return std::string(cs.irreducible ? "irreducible" : "reducible") + ", " +
         (cs.unitary_compatible ? "real (compatible with unitarity)" : "not real (non-unitary)");
}

}  // namespace

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Check: return "check";
    case Stage::Derive: return "derive";
    case Stage::Extend: return "extend";
    case Stage::Polarize: return "polarize";
    case Stage::Represent: return "represent";
    case Stage::Pipeline: return "pipeline";
  }
  return "pipeline";
}

Stage stage_from_string(const std::string& s) {
  for (Stage st : {Stage::Check, Stage::Derive, Stage::Extend, Stage::Polarize, Stage::Represent, Stage::Pipeline})
    if (to_string(st) == s) return st;
  throw Error("unknown stage '" + s + "'");
}

std::vector<Point> sample_points(const ModelConfig& config, std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<Point> out;
  for (std::size_t n = 0; n < count; ++n) {
    Point p;
    for (const auto& c : config.coordinates) {
      Scalar v(Rational(num(rng), den(rng)));
      for (const auto& d : config.domain) {
        if (d.coordinate != c.name) continue;
        const Scalar magnitude(abs(v.re()) + 1);
        if (d.lower && v.re() <= d.value.re()) v = d.value + magnitude;
        if (!d.lower && v.re() >= d.value.re()) v = d.value - magnitude;
      }
      p[c.name] = v;
    }
    out.push_back(std::move(p));
  }
  return out;
}

Report run_pipeline(const ModelConfig& m, Stage stage) {
  Builder b(m, stage);
  for (const auto& [k, v] : m.fixed_parameters) b.report().notes.push_back("parameter fixed: " + k + " = " + v.str());
  std::string cursor = "group.law";
  auto finish = [&]() {
    Report r = b.finish();
    for (const auto& [key, ev] : m.expect) {
      ReportEntry* e = r.find(key);
      if (!e) {
        const bool known = std::any_of(std::begin(kPlan), std::end(kPlan), [&](const Planned& p) { return key == p.id; });
        if (known) continue;
        if (r.sections.empty() || r.sections.back().name != "expectations") r.sections.push_back({"expectations", {}});
        ReportEntry u;
        u.id = key;
        u.title = "expectation (line " + std::to_string(ev.line) + ")";
        u.expected = ev.text;
        u.status = Status::Fail;
        u.detail = "no such report entry";
        r.sections.back().entries.push_back(std::move(u));
        continue;
      }
      e->expected = ev.text;
      if (e->status == Status::Pass && !values_equal(e->kind, e->value, ev.text, m.fixed_parameters)) {
        e->status = Status::Fail;
        e->detail += std::string(e->detail.empty() ? "" : "; ") + "differs from expectation";
      }
    }
    return r;
  };

  try {
    // group
    const GroupLaw g = m.group();
    const std::vector<std::string> names = g.names();
    b.set("group.coordinates", join(g.coordinates(), [](const Coordinate& c) { return c.name + " = " + c.identity.str(); }));
    b.set("group.law", exprs(g.law()));
    b.set("group.unit", "e*g = g*e = g");
    cursor = "group.associativity";
    const auto assoc = check_associativity(g);
    b.set("group.associativity", exprs(assoc.residuals), assoc.passed);
    if (!assoc.passed) b.block("the law is not associative");
    if (stage == Stage::Check || !assoc.passed) return finish();

    // derived
    cursor = "fields.left";
    const auto left = derive_left_fields(g);
    b.set("fields.left", fields(left));
    cursor = "fields.right";
    const auto right = derive_right_fields(g);
    b.set("fields.right", fields(right));
    bool commute = true;
    for (const auto& x : left)
      for (const auto& y : right) commute = commute && bracket(x, y).is_zero();
    b.set("fields.commute", flag(commute), commute);
    cursor = "forms.left";
    const auto theta_l = dual_forms(left, names);
    b.set("forms.left", forms(theta_l));
    cursor = "forms.right";
    const auto theta_r = dual_forms(right, names);
    b.set("forms.right", forms(theta_r));
    bool dual = true;
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < left.size(); ++j) {
        dual = dual && pairing(theta_l[j], left[i]) == RationalExpr(i == j ? 1 : 0);
        dual = dual && pairing(theta_r[j], right[i]) == RationalExpr(i == j ? 1 : 0);
      }
    b.set("forms.duality", flag(dual), dual);

    cursor = "algebra.brackets";
    const auto c = structure_constants(left, names, m.labels);
    const std::size_t n = c.dimension();
    {
      std::string table;
      std::vector<Scalar> nonzero;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          RationalExpr e;
          for (std::size_t k = 0; k < n; ++k) {
            e += RationalExpr(c(i, j, k)) * RationalExpr::symbol("X_" + m.labels[k]);
            if (!c(i, j, k).is_zero()) nonzero.push_back(c(i, j, k));
          }
          if (!table.empty()) table += "; ";
          table += "[X_" + m.labels[i] + ", X_" + m.labels[j] + "] = " + e.str();
        }
      b.set("algebra.brackets", table);
      b.set("algebra.constants", exprs(as_exprs(nonzero))).scalars = nonzero;
    }
    cursor = "algebra.right_constants";
    const auto c_right = structure_constants(right, names, m.labels);
    b.set("algebra.right_constants", flag(c_right == c.negated()), c_right == c.negated());
    const bool jacobi = c.antisymmetric() && c.satisfies_jacobi();
    b.set("algebra.jacobi", flag(jacobi), jacobi);
    const auto mc = maurer_cartan_residual(theta_l, c, names);
    b.set("algebra.maurer_cartan", forms(mc), all_zero(mc));
    const auto mc_r = maurer_cartan_residual(theta_r, c_right, names);
    b.set("algebra.maurer_cartan_right", forms(mc_r), all_zero(mc_r));
    cursor = "haar.form";
    const auto haar = haar_measure(theta_l);
    b.set("haar.form", haar.str());
    std::vector<DifferentialForm> haar_defects;
    for (const auto& x : right) haar_defects.push_back(lie_derivative(x, haar, names));
    b.set("haar.invariance", forms(haar_defects), all_zero(haar_defects));

    std::optional<ScalarMatrix> q;
    cursor = "casimir.matrix";
    try {
      if (m.casimir_matrix) {
        q = casimir_coefficients(c, *m.casimir_matrix);
      } else if (m.killing_scale) {
        q = casimir_from_killing(c, *m.killing_scale);
      }
      if (q) {
        b.set("casimir.matrix", matrix_str(*q));
        b.set("casimir.operator", casimir_operator_str(*q, m.labels));
      } else {
        b.na("casimir.matrix", "model has no [casimir] block");
        b.na("casimir.operator", "model has no [casimir] block");
      }
    } catch (const Error& e) {
      b.set("casimir.matrix", m.casimir_matrix ? matrix_str(*m.casimir_matrix) : "", false, e.what());
      b.na("casimir.operator", "no valid Casimir coefficients");
    }
    if (stage == Stage::Derive) return finish();

    // extension
    cursor = "extension.lambda";
    const GeneratingFunction lam = m.generating_function();
    b.set("extension.lambda", lam.str());
    cursor = "extension.vanishes";
    lam.check_vanishes_at(g.identity_point());
    b.set("extension.vanishes", "true");
    cursor = "extension.fiber";
    std::optional<TwoCocycle> extra;
    if (m.cocycle) extra = TwoCocycle{*m.cocycle};
    const PseudoExtension ext(g, lam, m.labels, extra);
    b.set("extension.fiber", to_string(ext.fiber_kind()));
    cursor = "extension.cocycle";
    if (!lam.has_logs()) {
      TwoCocycle xi = coboundary_from_lambda(g, lam);
      if (m.cocycle) xi.expr += *m.cocycle;
      b.set("extension.cocycle", xi.expr.str());
      const auto rep = cocycle_identity_check(xi, g);
      b.set("extension.cocycle_identity", rep.residual.str(), rep.passed);
    } else {
      b.na("extension.cocycle", "generating function has log terms");
      b.na("extension.cocycle_identity", "generating function has log terms");
    }
    cursor = "extension.lambda0";
    b.set("extension.lambda0", exprs(ext.lambda0())).scalars = constants_of(ext.lambda0());
    b.set("extension.left", fields(ext.left()));
    b.set("extension.right", fields(ext.right()));
    b.set("extension.xi_central", flag(xi_is_central(ext)), xi_is_central(ext));
    cursor = "extension.theta";
    const auto theta = quantization_one_form(ext);
    const bool theta_dual = theta == quantization_one_form_dual(ext);
    b.set("extension.theta", theta_str(theta, m.parameters), theta_dual,
          theta_dual ? "" : "differs from the fiber member of the dual basis");
    cursor = "extension.dtheta";
    const auto dtheta = presymplectic_form(ext);
    b.set("extension.dtheta", dtheta.str());
    const auto dtheta_alg = presymplectic_from_algebra(ext);
    b.set("extension.dtheta_algebra", dtheta_alg.str(), dtheta_alg == dtheta);
    cursor = "extension.brackets_left";
    for (const auto& [id, side] : {std::pair{"extension.brackets_left", BracketSide::Left},
                                   std::pair{"extension.brackets_right", BracketSide::Right},
                                   std::pair{"extension.brackets_redefined", BracketSide::RedefinedRight}}) {
      cursor = id;
      const auto [text, ok] = bracket_table_str(extended_bracket_table(ext, side), m.labels);
      b.set(id, text, ok);
    }

    cursor = "orbit.casimir";
    if (q) {
      const auto orbit = orbit_classify(ext.lambda0(), *q);
      b.set("orbit.casimir", orbit.casimir.str());
      b.set("orbit.type", orbit.type);
      if (orbit.selector) {
        b.set("orbit.selector", "sign of " + orbit.selector->str());
        if (!m.parameters.empty())
          b.report().notes.push_back("The " + orbit.type + " component is chosen by the sign of " +
                                     orbit.selector->str() + "; no step assumes a sign.");
      } else {
        b.na("orbit.selector", "orbit has a single component");
      }
    } else {
      for (const char* id : {"orbit.casimir", "orbit.type", "orbit.selector"}) b.na(id, "no Casimir coefficients");
    }

    cursor = "characteristic.subalgebra";
    const auto gc = characteristic_subalgebra(ext);
    b.set("characteristic.subalgebra", span_str(gc));
    cursor = "characteristic.cross_check";
    const auto gc_form = characteristic_subalgebra_from_form(ext);
    b.set("characteristic.cross_check", span_str(gc_form), same_span(gc, gc_form));
    b.set("characteristic.rank", std::to_string(presymplectic_rank(ext)));
    if (stage == Stage::Extend) return finish();

    // polarization
    std::vector<Polarization> real;
    bool searched = false;
    cursor = "polarization.certificate";
    if (m.enumerate && n == 3 && gc.size() == 1) {
      const auto search = enumerate_polarizations_dim3(ext, gc);
      searched = true;
      std::string roots;
      for (const auto& r : search.real_roots) roots += (roots.empty() ? "" : ", ") + r.str();
      for (const auto& r : search.complex_roots) roots += (roots.empty() ? "" : ", ") + r.str();
      std::string detail = "chart v = e_" + m.labels[search.p] + " + nu*e_" + m.labels[search.q];
      if (!roots.empty()) detail += "; roots nu = " + roots;
      if (search.infinity_solution) detail += "; the plane through e_" + m.labels[search.q] + " also closes";
      if (search.degenerate_family) detail += "; every plane through the characteristic line closes";
      if (search.irrational_roots) detail += "; roots outside Q(i) are not enumerated";
      b.set("polarization.certificate", search.monic_polynomial.str(), true, detail);
      if (search.discriminant)
        b.set("polarization.discriminant", search.discriminant->str());
      else
        b.na("polarization.discriminant", "closure polynomial is not quadratic");
      real = search.real;
      std::vector<std::string> spans;
      for (const auto& p : search.real) spans.push_back(span_str(p.generators));
      b.set("polarization.real", join(spans, [](const std::string& s) { return s; }, "; "));
      b.set("polarization.real_count", std::to_string(search.real.size()));
      spans.clear();
      bool complex_ok = true;
      std::string complex_detail;
      for (const auto& p : search.complex) {
        spans.push_back(span_str(p.generators));
        const auto check = validate_polarization(p, ext, gc);
        complex_ok = complex_ok && check.valid();
        for (const auto& d : check.diagnostics) complex_detail += (complex_detail.empty() ? "" : "; ") + d;
      }
      b.set("polarization.complex", join(spans, [](const std::string& s) { return s; }, "; "));
      if (search.complex.empty())
        b.na("polarization.complex_valid", "no complex polarizations");
      else
        b.set("polarization.complex_valid", flag(complex_ok), complex_ok, complex_detail);
    } else {
      const std::string why = m.enumerate ? "search needs dimension 3 and a 1-dimensional characteristic subalgebra"
                                          : "enumeration not requested";
      for (const char* id : {"polarization.certificate", "polarization.discriminant", "polarization.real",
                             "polarization.real_count", "polarization.complex", "polarization.complex_valid"})
        b.na(id, why);
    }

    cursor = "polarization.selected";
    std::optional<Polarization> selected;
    if (!m.generators.empty()) {
      selected = Polarization{m.generators, Vector(m.generators.size(), RationalExpr(0))};
    } else if (!real.empty()) {
      selected = Polarization{real.front().generators, Vector(real.front().generators.size(), RationalExpr(0))};
    }
    if (!selected) {
      const std::string why = searched ? "no real polarization" : "no polarization given";
      b.na("polarization.selected", why);
      b.na("polarization.selected_valid", why);
      b.block(why);
      return finish();
    }
    {
      const auto check = validate_polarization(*selected, ext, gc);
      std::string detail;
      for (const auto& d : check.diagnostics) detail += (detail.empty() ? "" : "; ") + d;
      if (searched && !m.generators.empty()) {
        const bool listed = std::any_of(real.begin(), real.end(),
                                        [&](const Polarization& p) { return same_span(p.generators, selected->generators); });
        detail += std::string(detail.empty() ? "" : "; ") + (listed ? "among" : "not among") + " the enumerated ones";
      }
      b.set("polarization.selected", span_str(selected->generators));
      b.set("polarization.selected_valid", flag(check.valid()), check.valid(), detail);
      if (!check.valid()) {
        b.block("selected polarization is not valid");
        return finish();
      }
    }
    if (stage == Stage::Polarize) return finish();

    // representation
    if (!m.has_ansatz || !m.chart) {
      b.block(m.has_ansatz ? "[ansatz] has no chart" : "model has no [ansatz] block");
      return finish();
    }
    const Chart& chart = *m.chart;
    const std::string& tau = chart.tau;
    std::set<std::string> coord_set(ext.coordinates().begin(), ext.coordinates().end());
    b.set("ansatz.template", m.ansatz.str(),  true,
          m.ansatz.unknowns.empty() ? "" : "unknowns: " + join(m.ansatz.unknowns, [](const std::string& s) { return s; }));
    cursor = "ansatz.horizontal";
    const WaveAnsatz psi = solve_prefactor(m.ansatz, *selected, ext);
    b.set("ansatz.horizontal", psi.str());
    auto residual_list = [](const std::vector<AnsatzAction>& rs) {
      std::vector<RationalExpr> out;
      for (const auto& r : rs) {
        out.push_back(r.c0);
        out.push_back(r.c1);
      }
      return out;
    };
    {
      const auto rs = residual_list(polarization_residuals(psi, *selected, ext));
      b.set("ansatz.horizontal_residuals", exprs(rs), all_zero(rs));
    }
    cursor = "operators.horizontal";
    const auto redefined = redefine_right_operators(ext);
    std::vector<ReducedOp> ops;
    for (const auto& x : redefined) ops.push_back(reduce_operator(x, psi, chart, coord_set));
    b.set("operators.horizontal", join(ops, [&](const ReducedOp& o) { return op_str(o, tau); }));
    b.set("operators.horizontal_closure", flag(closes(ops, c_right, tau)), closes(ops, c_right, tau));
    cursor = "casimir.horizontal";
    if (q) {
      const auto cs = casimir_scalar_on_ansatz(compose_reduced(ops, *q, tau), tau);
      if (cs.scalar)
        b.set("casimir.horizontal", cs.value.str());
      else
        b.na("casimir.horizontal", cs.diagnostic);
      b.set("casimir.horizontal_class", classify(cs));
    } else {
      b.na("casimir.horizontal", "no Casimir coefficients");
      b.na("casimir.horizontal_class", "no Casimir coefficients");
    }
    if (stage == Stage::Represent) return finish();

    // measure
    cursor = "measure.kG";
    const auto md = modular_constants(c, selected->generators);
    b.set("measure.kG", exprs(as_exprs(md.kG))).scalars = md.kG;
    b.set("measure.kH", exprs(as_exprs(md.kH))).scalars = md.kH;
    b.set("measure.kGH", exprs(as_exprs(md.kGH))).scalars = md.kGH;
    std::vector<VectorField> subgroup;
    for (const auto& v : selected->generators) subgroup.push_back(combine(v, ext.base_left()));
    cursor = "measure.quotient_form";
    std::vector<std::string> chart_coords{chart.kappa};
    for (const auto& nm : names)
      if (!chart.bindings.count(nm)) chart_coords.push_back(nm);
    chart_coords.push_back(tau);
    const auto qm = quotient_measure(haar, subgroup, chart, chart_coords);
    b.set("measure.quotient_form", qm.form.str());
    if (qm.adapted_density)
      b.set("measure.adapted_density", qm.adapted_density->str());
    else
      b.na("measure.adapted_density", "form does not reduce to a multiple of d" + tau);

    cursor = "measure.rho";
    std::optional<RhoFunction> rho;
    if (m.rho_monomial) {
      const auto rs = rho_solve_monomial(subgroup, md.kGH, names);
      rho = rs.rho;
      if (!rho) {
        b.set("measure.rho", "", false, "no monomial solution");
        b.block("no rho function");
      }
    } else {
      b.block("model requests no rho function");
    }
    if (rho) {
      const auto rho_expr = rho->expression();
      b.set("measure.rho", rho_expr ? rho_expr->str() : rho->str());
      const auto check = rho_verify(*rho, subgroup, md.kGH);
      b.set("measure.rho_check", exprs(check), all_zero(check));
      const bool positive = rho_positive(*rho, sample_points(m, m.samples));
      b.set("measure.rho_positive", flag(positive), positive, std::to_string(m.samples) + " sample points");
      if (rho_expr) {
        cursor = "measure.quasi_invariance";
        const DifferentialForm weighted = *rho_expr * qm.form;
        std::vector<RationalExpr> defects;
        bool proportional = true;
        for (const auto& x : subgroup) {
          const auto d = quasi_invariance_defect(weighted, x, names);
          proportional = proportional && d.has_value();
          defects.push_back(d.value_or(RationalExpr(0)));
        }
        b.set("measure.quasi_invariance", exprs(defects), proportional && all_zero(defects));
      } else {
        b.na("measure.quasi_invariance", "rho is not rational");
      }
      cursor = "measure.corrected_multipliers";
      const auto corrected = corrected_right_fields(ext.base_right(), *rho);
      std::vector<RationalExpr> mult;
      for (const auto& op : corrected) mult.push_back(op.multiplier);
      b.set("measure.corrected_multipliers", exprs(mult));
      bool corrected_close = true;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          FirstOrderOperator expected{VectorField(), RationalExpr(0)};
          for (std::size_t k = 0; k < n; ++k) {
            expected.field = expected.field + RationalExpr(c_right(i, j, k)) * corrected[k].field;
            expected.multiplier += RationalExpr(c_right(i, j, k)) * corrected[k].multiplier;
          }
          const auto got = commutator(corrected[i], corrected[j]);
          corrected_close = corrected_close && got.field == expected.field && got.multiplier == expected.multiplier;
        }
      b.set("measure.corrected_closure", flag(corrected_close), corrected_close);
      cursor = "measure.correction_lambda0";
      const auto l0 = gradient_at_identity(rho->half_log(), g);
      bool matches = true;
      for (std::size_t j = 0; j < selected->generators.size(); ++j) {
        RationalExpr contracted;
        for (std::size_t i = 0; i < n; ++i) contracted += selected->generators[j][i] * l0[i];
        matches = matches && contracted == RationalExpr(Scalar(0, Rational(-1, 2)) * md.kGH[j]);
      }
      b.set("measure.correction_lambda0", exprs(l0), matches, matches ? "" : "differs from -(i/2) k^{G/H}");
    }

    // unitarity
    WaveAnsatz final_psi = psi;
    if (m.half_rho) {
      cursor = "ansatz.half_rho";
      Polarization shifted = *selected;
      for (std::size_t j = 0; j < shifted.eigenvalues.size(); ++j)
        shifted.eigenvalues[j] = RationalExpr(md.kGH[j]) / RationalExpr(2);
      WaveAnsatz templ = psi;
      templ.unknowns.clear();
      for (const auto& nm : names) {
        const std::string w = "w_" + nm;
        templ.unknowns.push_back(w);
        templ.factors.push_back({AnsatzFactor::Kind::Power, RationalExpr::symbol(nm), RationalExpr::symbol(w)});
      }
      final_psi = solve_prefactor(templ, shifted, ext);
      b.set("ansatz.half_rho", final_psi.str(), true, "eigenvalues " + exprs(shifted.eigenvalues));
      const auto rs = residual_list(polarization_residuals(final_psi, shifted, ext));
      b.set("ansatz.half_rho_residuals", exprs(rs), all_zero(rs));
    } else {
      b.na("ansatz.half_rho", "horizontal eigenvalues requested");
      b.na("ansatz.half_rho_residuals", "horizontal eigenvalues requested");
    }
    cursor = "operators.final";
    std::vector<ReducedOp> final_ops;
    for (const auto& x : redefined) final_ops.push_back(reduce_operator(x, final_psi, chart, coord_set));
    b.set("operators.final", join(final_ops, [&](const ReducedOp& o) { return op_str(o, tau); }));
    b.set("operators.final_closure", flag(closes(final_ops, c_right, tau)), closes(final_ops, c_right, tau));
    std::string adjoint_detail;
    std::string flags;
    for (const auto& op : final_ops) {
      flags += (flags.empty() ? "" : ", ") + flag(anti_hermitian(op, m.weight, tau));
      adjoint_detail += (adjoint_detail.empty() ? "adjoints: " : ", ") + op_str(formal_adjoint(op, m.weight, tau), tau);
    }
    b.set("operators.adjoints", flags, true, adjoint_detail);
    cursor = "casimir.final";
    CasimirScalar cs;
    if (q) {
      cs = casimir_scalar_on_ansatz(compose_reduced(final_ops, *q, tau), tau);
      if (cs.scalar)
        b.set("casimir.final", cs.value.str());
      else
        b.na("casimir.final", cs.diagnostic);
      b.set("casimir.final_class", classify(cs));
    } else {
      b.na("casimir.final", "no Casimir coefficients");
      b.na("casimir.final_class", "no Casimir coefficients");
    }
    cursor = "measure.wave_density";
    std::optional<RationalExpr> density;
    if (qm.adapted_density) density = wave_density(final_psi, *qm.adapted_density, chart);
    if (density)
      b.set("measure.wave_density", density->str());
    else
      b.na("measure.wave_density", "modulus of the prefactor is not rational");
    cursor = "unitarity.verdict";
    if (q) {
      const auto verdict = unitarity_report(final_ops, m.weight, tau, cs, density, chart, coord_set);
      std::string reasons;
      for (const auto& r : verdict.reasons) reasons += (reasons.empty() ? "" : "; ") + r;
      b.set("unitarity.verdict", verdict.unitary() ? "unitary" : "not unitary", true, reasons);
    } else {
      b.na("unitarity.verdict", "no Casimir coefficients");
    }
  } catch (const Error& e) {
    b.fail(cursor, e.what());
  }
  return finish();
}

}  // namespace gaq
