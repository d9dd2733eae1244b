#include "gaq/extension.hpp"

#include "gaq/errors.hpp"

namespace gaq {

std::string to_string(FiberKind kind) { return kind == FiberKind::Compact ? "U(1)" : "R+"; }

GeneratingFunction::GeneratingFunction(RationalExpr rational, std::vector<LogTerm> logs)
    : rational_(std::move(rational)) {
  for (auto& t : logs) {
    if (t.argument.is_zero()) throw ModelError("log of zero");
    if (!t.coefficient.is_zero()) logs_.push_back(std::move(t));
  }
}

RationalExpr GeneratingFunction::derivative_along(const VectorField& x) const {
  RationalExpr out = x.apply(rational_);
  for (const auto& t : logs_) out += RationalExpr(t.coefficient) * x.apply(t.argument) / t.argument;
  return out;
}

DifferentialForm GeneratingFunction::differential(const std::vector<std::string>& coordinates) const {
  DifferentialForm out = exterior_derivative(DifferentialForm::function(rational_), coordinates);
  for (const auto& t : logs_) {
    const RationalExpr scale = RationalExpr(t.coefficient) / t.argument;
    out += scale * exterior_derivative(DifferentialForm::function(t.argument), coordinates);
  }
  return out;
}

void GeneratingFunction::check_vanishes_at(const Point& identity) const {
  RationalExpr at = rational_.partial_eval(identity);
  if (!at.is_zero()) throw ModelError("generating function does not vanish at the identity: " + at.str());
  for (const auto& t : logs_) {
    const RationalExpr arg = t.argument.partial_eval(identity);
    if (!arg.is_one()) throw ModelError("log argument is not 1 at the identity: " + arg.str());
  }
}

namespace {

// 1 for real coefficients, -1 for purely imaginary, 0 for zero, throws on mixed.
int coefficient_kind(const Poly& p, int current) {
  for (const auto& [m, c] : p.terms()) {
    int k = c.is_real() ? 1 : c.is_imaginary() ? -1 : 2;
    if (k == 2 || (current != 0 && k != current)) throw ModelError("generating function mixes real and imaginary parts");
    current = k;
  }
  return current;
}

}  // namespace

FiberKind GeneratingFunction::fiber_kind() const {
  for (const auto& [m, c] : rational_.den().terms()) {
    if (!c.is_real()) throw ModelError("generating function has a complex denominator");
  }
  int kind = coefficient_kind(rational_.num(), 0);
  for (const auto& t : logs_) {
    for (const auto& [m, c] : t.argument.num().terms())
      if (!c.is_real()) throw ModelError("log argument must be real");
    for (const auto& [m, c] : t.argument.den().terms())
      if (!c.is_real()) throw ModelError("log argument must be real");
    kind = coefficient_kind(Poly(t.coefficient), kind);
  }
  return kind == -1 ? FiberKind::PositiveReal : FiberKind::Compact;
}

std::string GeneratingFunction::str() const {
  std::string out = rational_.is_zero() && !logs_.empty() ? "" : rational_.str();
  for (const auto& t : logs_) {
    if (!out.empty()) out += " + ";
    out += "(" + t.coefficient.str() + ")*log(" + t.argument.str() + ")";
  }
  return out;
}

TwoCocycle coboundary_from_lambda(const GroupLaw& group, const GeneratingFunction& lambda) {
  if (lambda.has_logs()) throw ModelError("explicit cocycles need a rational generating function");
  Bindings left, right, product;
  const auto names = group.names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    left.emplace(names[i], RationalExpr::symbol(GroupLaw::tagged(names[i], 1)));
    right.emplace(names[i], RationalExpr::symbol(GroupLaw::tagged(names[i], 2)));
    product.emplace(names[i], group.law()[i]);
  }
  const RationalExpr& l = lambda.rational();
  return {l.substitute(product) - l.substitute(left) - l.substitute(right)};
}

namespace {

RationalExpr cocycle_at(const TwoCocycle& xi, const GroupLaw& group, const std::vector<RationalExpr>& x,
                        const std::vector<RationalExpr>& y) {
  Bindings b;
  const auto names = group.names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    b.emplace(GroupLaw::tagged(names[i], 1), x[i]);
    b.emplace(GroupLaw::tagged(names[i], 2), y[i]);
  }
  return xi.expr.substitute(b);
}

}  // namespace

CocycleReport cocycle_identity_check(const TwoCocycle& xi, const GroupLaw& group) {
  std::vector<RationalExpr> g1, g2, g3;
  for (const auto& c : group.coordinates()) {
    g1.push_back(RationalExpr::symbol(c.name + "_x"));
    g2.push_back(RationalExpr::symbol(c.name + "_y"));
    g3.push_back(RationalExpr::symbol(c.name + "_z"));
  }
  CocycleReport r;
  r.residual = cocycle_at(xi, group, g1, g2) + cocycle_at(xi, group, group.compose(g1, g2), g3) -
               cocycle_at(xi, group, g1, group.compose(g2, g3)) - cocycle_at(xi, group, g2, g3);
  r.passed = r.residual.is_zero();
  return r;
}

Vector gradient_at_identity(const GeneratingFunction& lambda, const GroupLaw& group) {
  const auto fields = derive_left_fields(group);
  const Point e = group.identity_point();
  Vector out;
  for (const auto& x : fields) out.push_back(lambda.derivative_along(x).partial_eval(e));
  return out;
}

GeneratingFunction linear_representative(const GroupLaw& group, const Vector& lambda0) {
  RationalExpr out;
  const auto& coords = group.coordinates();
  for (std::size_t i = 0; i < coords.size() && i < lambda0.size(); ++i)
    out += lambda0[i] * (RationalExpr::symbol(coords[i].name) - RationalExpr(coords[i].identity));
  return GeneratingFunction(out);
}

namespace {

// d xi(g, h)/dh^i at h = e (right slot) or d xi(h, g)/dh^i (left slot).
Vector cocycle_slot_derivatives(const TwoCocycle& xi, const GroupLaw& group, int varying) {
  const int fixed = varying == 2 ? 1 : 2;
  Bindings at;
  for (const auto& c : group.coordinates()) {
    at.emplace(GroupLaw::tagged(c.name, fixed), RationalExpr::symbol(c.name));
    at.emplace(GroupLaw::tagged(c.name, varying), RationalExpr(c.identity));
  }
  Vector out;
  for (const auto& c : group.coordinates())
    out.push_back(xi.expr.differentiate(GroupLaw::tagged(c.name, varying)).substitute(at));
  return out;
}

}  // namespace

PseudoExtension::PseudoExtension(GroupLaw base, GeneratingFunction lambda, std::vector<std::string> labels,
                                 std::optional<TwoCocycle> cocycle)
    : base_(std::move(base)),
      lambda_(std::move(lambda)),
      labels_(std::move(labels)),
      cocycle_(std::move(cocycle)),
      fiber_kind_(lambda_.fiber_kind()),
      base_coordinates_(base_.names()),
      algebra_(LieAlgebraData::zero({})) {
  if (labels_.size() != base_.dimension()) throw ModelError("one label per coordinate required");
  for (const auto& n : base_coordinates_)
    if (n == kFiberSymbol) throw ModelError("coordinate name phi is reserved for the fiber");
  lambda_.check_vanishes_at(base_.identity_point());
  coordinates_ = base_coordinates_;
  coordinates_.emplace_back(kFiberSymbol);
  base_left_ = derive_left_fields(base_);
  base_right_ = derive_right_fields(base_);
  left_forms_ = dual_forms(base_left_, base_coordinates_);
  algebra_ = structure_constants(base_left_, base_coordinates_, labels_);
  xi_ = VectorField::partial(std::string(kFiberSymbol));

  const Point e = base_.identity_point();
  Vector true_left(dimension()), true_right(dimension());
  if (cocycle_) {
    if (!cocycle_identity_check(*cocycle_, base_).passed) throw ModelError("added cocycle fails the cocycle identity");
    true_left = cocycle_slot_derivatives(*cocycle_, base_, 2);
    true_right = cocycle_slot_derivatives(*cocycle_, base_, 1);
  }
  for (std::size_t i = 0; i < dimension(); ++i) {
    const RationalExpr dl = lambda_.derivative_along(base_left_[i]);
    lambda0_.push_back(dl.partial_eval(e));
    left_.push_back(base_left_[i] + (dl - lambda0_[i] + true_left[i]) * xi_);
    const RationalExpr dr = lambda_.derivative_along(base_right_[i]);
    right_.push_back(base_right_[i] + (dr - lambda0_[i] + true_right[i]) * xi_);
  }
}

GroupLaw PseudoExtension::extended_law() const {
  if (lambda_.has_logs()) throw ModelError("extended law needs a rational generating function");
  std::vector<Coordinate> coords = base_.coordinates();
  coords.push_back({std::string(kFiberSymbol), Scalar(0)});
  std::vector<RationalExpr> law = base_.law();
  RationalExpr fiber = RationalExpr::symbol(GroupLaw::tagged(std::string(kFiberSymbol), 1)) +
                       RationalExpr::symbol(GroupLaw::tagged(std::string(kFiberSymbol), 2)) +
                       coboundary_from_lambda(base_, lambda_).expr;
  if (cocycle_) fiber += cocycle_->expr;
  law.push_back(fiber);
  return GroupLaw(std::move(coords), std::move(law));
}

std::pair<Vector, Vector> fiber_coefficients_from_cocycle(const PseudoExtension& ext) {
  TwoCocycle xi = coboundary_from_lambda(ext.base(), ext.lambda());
  if (ext.cocycle()) xi.expr += ext.cocycle()->expr;
  return {cocycle_slot_derivatives(xi, ext.base(), 2), cocycle_slot_derivatives(xi, ext.base(), 1)};
}

DifferentialForm quantization_one_form(const PseudoExtension& ext) {
  if (ext.cocycle()) return quantization_one_form_dual(ext);
  DifferentialForm theta = DifferentialForm::differential(std::string(kFiberSymbol));
  for (std::size_t i = 0; i < ext.dimension(); ++i)
    theta += ext.lambda0()[i] * ext.left_forms()[i];
  theta -= ext.lambda().differential(ext.base_coordinates());
  return theta;
}

DifferentialForm quantization_one_form_dual(const PseudoExtension& ext) {
  std::vector<VectorField> basis = ext.left();
  basis.push_back(ext.xi());
  return dual_forms(basis, ext.coordinates()).back();
}

DifferentialForm presymplectic_form(const PseudoExtension& ext) {
  return exterior_derivative(quantization_one_form(ext), ext.coordinates());
}

DifferentialForm presymplectic_from_algebra(const PseudoExtension& ext) {
  const auto& c = ext.algebra();
  const std::size_t n = ext.dimension();
  DifferentialForm out(2);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      RationalExpr b;
      for (std::size_t i = 0; i < n; ++i)
        if (!c(j, k, i).is_zero()) b += ext.lambda0()[i] * RationalExpr(c(j, k, i));
      if (!b.is_zero()) out -= b * wedge(ext.left_forms()[j], ext.left_forms()[k]);
    }
  return out;
}

namespace {

Decomposition decompose_with(const VectorField& y, const std::vector<VectorField>& basis,
                             const std::vector<DifferentialForm>& forms) {
  Decomposition d;
  RationalExpr fiber = y.component(kFiberSymbol);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    d.coefficients.push_back(pairing(forms[k], y.without(kFiberSymbol)));
    fiber -= d.coefficients.back() * basis[k].component(kFiberSymbol);
  }
  d.xi = fiber;
  return d;
}

std::vector<DifferentialForm> base_duals(const std::vector<VectorField>& basis,
                                         const std::vector<std::string>& base_coordinates) {
  std::vector<VectorField> parts;
  for (const auto& f : basis) parts.push_back(f.without(kFiberSymbol));
  return dual_forms(parts, base_coordinates);
}

}  // namespace

Decomposition decompose(const VectorField& y, const std::vector<VectorField>& basis,
                        const std::vector<std::string>& base_coordinates) {
  return decompose_with(y, basis, base_duals(basis, base_coordinates));
}

std::vector<BracketEntry> extended_bracket_table(const PseudoExtension& ext, BracketSide side) {
  const std::vector<VectorField> fields = side == BracketSide::Left    ? ext.left()
                                          : side == BracketSide::Right ? ext.right()
                                                                       : redefine_right_operators(ext);
  const auto forms = base_duals(fields, ext.base_coordinates());
  const auto& c = ext.algebra();
  const std::size_t n = ext.dimension();
  const RationalExpr sign(side == BracketSide::Left ? 1 : -1);
  std::vector<BracketEntry> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      BracketEntry e;
      e.i = i;
      e.j = j;
      e.computed = decompose_with(bracket(fields[i], fields[j]), fields, forms);
      e.expected.coefficients.assign(n, RationalExpr());
      for (std::size_t k = 0; k < n; ++k) {
        const RationalExpr ck = sign * RationalExpr(c(i, j, k));
        e.expected.coefficients[k] = ck;
        if (side != BracketSide::RedefinedRight) e.expected.xi += ck * ext.lambda0()[k];
      }
      e.matches = e.computed.coefficients == e.expected.coefficients && e.computed.xi == e.expected.xi;
      table.push_back(std::move(e));
    }
  return table;
}

bool xi_is_central(const PseudoExtension& ext) {
  for (const auto* list : {&ext.left(), &ext.right()})
    for (const auto& f : *list)
      if (!bracket(ext.xi(), f).is_zero()) return false;
  return true;
}

std::vector<VectorField> redefine_right_operators(const PseudoExtension& ext) {
  std::vector<VectorField> out;
  for (std::size_t i = 0; i < ext.dimension(); ++i) out.push_back(ext.right()[i] + ext.lambda0()[i] * ext.xi());
  return out;
}

namespace {

std::vector<Vector> normalized_span(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return {};
  return rref(vectors).rows;
}

}  // namespace

std::vector<Vector> characteristic_subalgebra(const PseudoExtension& ext) {
  const std::size_t n = ext.dimension();
  const auto& c = ext.algebra();
  Matrix b(n, Vector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (!c(j, k, i).is_zero()) b[j][k] += ext.lambda0()[i] * RationalExpr(c(j, k, i));
  return normalized_span(kernel(transpose(b), n));
}

std::vector<Vector> characteristic_subalgebra_from_form(const PseudoExtension& ext) {
  const std::size_t n = ext.dimension();
  std::vector<std::string> unknowns;
  VectorField x;
  for (std::size_t j = 0; j < n; ++j) {
    unknowns.push_back("u_" + std::to_string(j));
    x += RationalExpr::symbol(unknowns.back()) * ext.left()[j];
  }
  const DifferentialForm w = interior_product(x, presymplectic_form(ext));
  std::vector<RationalExpr> exprs;
  for (const auto& [index, value] : w.terms()) exprs.push_back(value);
  const std::set<std::string> coords(ext.coordinates().begin(), ext.coordinates().end());
  const LinearSystem sys = identity_system(exprs, unknowns, coords);
  if (sys.coefficients.empty()) {
    std::vector<Vector> all;
    for (std::size_t j = 0; j < n; ++j) {
      Vector v(n);
      v[j] = RationalExpr(1);
      all.push_back(v);
    }
    return all;
  }
  return normalized_span(kernel(sys.coefficients, n));
}

namespace {

std::optional<int> poly_sign(const Poly& p) {
  std::optional<int> sign;
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_real()) return std::nullopt;
    for (const auto& [v, e] : m.powers())
      if (e % 2 != 0) return std::nullopt;
    const int s = c.re() > 0 ? 1 : -1;
    if (sign && *sign != s) return std::nullopt;
    sign = s;
  }
  return sign;
}

}  // namespace

std::optional<int> definite_sign(const RationalExpr& e) {
  if (e.is_zero()) return 0;
  auto n = poly_sign(e.num());
  auto d = poly_sign(e.den());
  if (!n || !d) return std::nullopt;
  return *n * *d;
}

OrbitDescriptor orbit_classify(const Vector& lambda0, const ScalarMatrix& q) {
  OrbitDescriptor o;
  o.casimir = casimir_function_on_dual(q, lambda0);
  o.sign = definite_sign(o.casimir);
  std::optional<RationalExpr> first;
  for (const auto& v : lambda0)
    if (!v.is_zero()) {
      first = v;
      break;
    }
  const bool three = lambda0.size() == 3;
  if (!first) {
    o.type = "origin";
  } else if (!o.sign) {
    o.type = "indefinite";
  } else if (*o.sign > 0) {
    o.type = three ? "one-sheet hyperboloid" : "positive level set";
  } else if (*o.sign == 0) {
    o.type = three ? "cone" : "null level set";
    o.selector = first;
  } else {
    o.type = three ? "two-sheet hyperboloid" : "negative level set";
    o.selector = first;
  }
  return o;
}

}  // namespace gaq
