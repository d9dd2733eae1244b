#include "gaq/rational_expr.hpp"

#include <ostream>
#include <vector>

#include "gaq/errors.hpp"

namespace gaq {

namespace {

Poly exact(const Poly& a, const Poly& b) { return *divide_exact(a, b); }

}  // namespace

RationalExpr::RationalExpr(Poly numerator, Poly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  normalize_denominator();
}

void RationalExpr::normalize_denominator() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  const Scalar lead = den_.leading_coefficient();
  if (lead.is_one()) return;
  const Scalar inv = Scalar(1) / lead;
  num_ *= inv;
  den_ *= inv;
}

std::optional<Scalar> RationalExpr::as_scalar() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_term();
}

std::set<std::string> RationalExpr::variables() const {
  auto out = num_.variables();
  auto d = den_.variables();
  out.insert(d.begin(), d.end());
  return out;
}

bool RationalExpr::only_depends_on(const std::set<std::string>& allowed) const {
  for (const auto& v : variables()) {
    if (allowed.count(v) == 0) return false;
  }
  return true;
}

RationalExpr RationalExpr::operator-() const { return RationalExpr(-num_, den_, Canonical{}); }

RationalExpr& RationalExpr::operator+=(const RationalExpr& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_.is_one() && other.den_.is_one()) {
    num_ += other.num_;
    return *this;
  }
  if (den_ == other.den_) {
    *this = RationalExpr(num_ + other.num_, den_);
    return *this;
  }
  // Only factors of gcd(den, other.den) can survive in the sum.
  Poly g = gcd(den_, other.den_);
  Poly d1 = exact(den_, g);
  Poly d2 = exact(other.den_, g);
  Poly numerator = num_ * d2 + other.num_ * d1;
  Poly denominator = den_ * d2;
  if (numerator.is_zero()) return *this = RationalExpr();
  if (!g.is_one()) {
    Poly h = gcd(numerator, g);
    if (!h.is_one()) {
      numerator = exact(numerator, h);
      denominator = exact(denominator, h);
    }
  }
  num_ = std::move(numerator);
  den_ = std::move(denominator);
  normalize_denominator();
  return *this;
}

RationalExpr& RationalExpr::operator-=(const RationalExpr& other) { return *this += -other; }

RationalExpr& RationalExpr::operator*=(const RationalExpr& other) {
  if (is_zero() || other.is_zero()) return *this = RationalExpr();
  if (den_.is_one() && other.den_.is_one()) {
    num_ *= other.num_;
    normalize_denominator();
    return *this;
  }
  Poly g1 = gcd(num_, other.den_);
  Poly g2 = gcd(other.num_, den_);
  Poly numerator = exact(num_, g1) * exact(other.num_, g2);
  Poly denominator = exact(den_, g2) * exact(other.den_, g1);
  num_ = std::move(numerator);
  den_ = std::move(denominator);
  normalize_denominator();
  return *this;
}

RationalExpr& RationalExpr::operator/=(const RationalExpr& other) {
  if (other.is_zero()) throw DivisionByZero();
  RationalExpr inverse(other.den_, other.num_, Canonical{});
  inverse.normalize_denominator();
  return *this *= inverse;
}

RationalExpr RationalExpr::pow(long exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw DivisionByZero();
    RationalExpr inverse(den_, num_, Canonical{});
    inverse.normalize_denominator();
    return inverse.pow(-exponent);
  }
  // Powers of coprime polynomials stay coprime.
  RationalExpr out(num_.pow(static_cast<unsigned>(exponent)), den_.pow(static_cast<unsigned>(exponent)),
                   Canonical{});
  out.normalize_denominator();
  return out;
}

RationalExpr RationalExpr::differentiate(std::string_view symbol) const {
  Poly dn = num_.derivative(symbol);
  if (den_.is_constant()) return RationalExpr(dn, den_);
  Poly dd = den_.derivative(symbol);
  if (dd.is_zero()) return RationalExpr(dn, den_);
  Poly top = dn * den_ - num_ * dd;
  if (top.is_zero()) return RationalExpr();
  // A factor shared by top and den^2 divides gcd(den, dd), since num and den are coprime.
  if (gcd(den_, dd).is_constant()) return RationalExpr(std::move(top), den_ * den_, Canonical{});
  return RationalExpr(std::move(top), den_ * den_);
}

namespace {

/// p(bindings) as (numerator, denominator) polynomials, not reduced.
std::pair<Poly, Poly> substitute_poly(const Poly& p, const Bindings& bindings) {
  struct Bound {
    const RationalExpr* value;
    unsigned degree;
    std::vector<Poly> num_powers;
    std::vector<Poly> den_powers;
  };
  std::map<std::string, Bound> bound;
  for (const auto& name : p.variables()) {
    auto it = bindings.find(name);
    if (it == bindings.end()) continue;
    bound.emplace(name, Bound{&it->second, p.degree(name), {}, {}});
  }
  if (bound.empty()) return {p, Poly(1)};

  Poly denominator(1);
  for (auto& [name, b] : bound) {
    b.num_powers.push_back(Poly(1));
    b.den_powers.push_back(Poly(1));
    for (unsigned k = 1; k <= b.degree; ++k) {
      b.num_powers.push_back(b.num_powers.back() * b.value->num());
      b.den_powers.push_back(b.den_powers.back() * b.value->den());
    }
    denominator *= b.den_powers[b.degree];
  }

  Poly numerator;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Power> free;
    Poly term(c);
    for (const auto& [name, b] : bound) {
      unsigned e = m.degree(name);
      term *= b.num_powers[e];
      if (!b.den_powers[b.degree - e].is_one()) term *= b.den_powers[b.degree - e];
    }
    for (const auto& power : m.powers()) {
      if (bound.count(power.first) == 0) free.push_back(power);
    }
    if (!free.empty()) term *= Poly::term(Monomial(std::move(free)), Scalar(1));
    numerator += term;
  }
  return {numerator, denominator};
}

}  // namespace

RationalExpr RationalExpr::substitute(const Bindings& bindings) const {
  if (bindings.empty()) return *this;
  auto [nn, nd] = substitute_poly(num_, bindings);
  if (den_.is_one()) return RationalExpr(nn, nd);
  auto [dn, dd] = substitute_poly(den_, bindings);
  if (dn.is_zero()) throw PoleError("substitution makes the denominator " + den_.str() + " vanish");
  return RationalExpr(nn, nd) / RationalExpr(dn, dd);
}

RationalExpr RationalExpr::conjugate() const {
  // Conjugation preserves coprimality; the monic leading coefficient stays 1.
  return RationalExpr(num_.conj(), den_.conj(), Canonical{});
}

Scalar RationalExpr::eval_at(const Point& point) const {
  Scalar d = den_.evaluate(point);
  if (d.is_zero()) throw PoleError("pole of " + str() + " at evaluation point");
  return num_.evaluate(point) / d;
}

RationalExpr RationalExpr::partial_eval(const Point& point) const {
  Poly d = den_.partial_evaluate(point);
  if (d.is_zero()) throw PoleError("pole of " + str() + " under partial evaluation");
  return RationalExpr(num_.partial_evaluate(point), d);
}

namespace {

bool bare_power(const Poly& p) {
  return p.size() == 1 && p.leading_coefficient().is_one() && p.leading_monomial().powers().size() == 1;
}

}  // namespace

std::string RationalExpr::str() const {
  if (den_.is_one()) return num_.str();
  std::string n = num_.size() == 1 && num_.leading_monomial().is_one() ? num_.str() : "(" + num_.str() + ")";
  if (num_.size() == 1 && !num_.leading_monomial().is_one() && num_.leading_coefficient().is_one()) n = num_.str();
  std::string d = bare_power(den_) ? den_.str() : "(" + den_.str() + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const RationalExpr& e) { return os << e.str(); }

}  // namespace gaq
