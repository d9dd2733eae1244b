#include "gaq/poly.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "gaq/errors.hpp"

namespace gaq {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Power> powers) {
  std::sort(powers.begin(), powers.end(),
            [](const Power& a, const Power& b) { return a.first < b.first; });
  for (auto& p : powers) {
    if (p.second == 0) continue;
    if (!powers_.empty() && powers_.back().first == p.first) {
      powers_.back().second += p.second;
    } else {
      powers_.push_back(std::move(p));
    }
  }
  for (const auto& p : powers_) degree_ += p.second;
}

Monomial Monomial::variable(std::string name, unsigned exponent) {
  Monomial m;
  if (exponent == 0) return m;
  m.powers_.emplace_back(std::move(name), exponent);
  m.degree_ = exponent;
  return m;
}

unsigned Monomial::degree(std::string_view symbol) const {
  for (const auto& [name, e] : powers_) {
    if (name == symbol) return e;
  }
  return 0;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.powers_.begin();
  for (const auto& [name, e] : powers_) {
    while (it != other.powers_.end() && it->first < name) ++it;
    if (it == other.powers_.end() || it->first != name || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial out;
  auto it = divisor.powers_.begin();
  for (const auto& [name, e] : powers_) {
    unsigned sub = 0;
    if (it != divisor.powers_.end() && it->first == name) {
      sub = it->second;
      ++it;
    }
    if (e > sub) out.powers_.emplace_back(name, e - sub);
  }
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

Monomial Monomial::without(std::string_view symbol) const {
  Monomial out;
  for (const auto& p : powers_) {
    if (p.first == symbol) continue;
    out.powers_.push_back(p);
    out.degree_ += p.second;
  }
  return out;
}

std::pair<Monomial, Monomial> Monomial::split(const std::set<std::string>& symbols) const {
  Monomial inside;
  Monomial outside;
  for (const auto& p : powers_) {
    Monomial& target = symbols.count(p.first) != 0 ? inside : outside;
    target.powers_.push_back(p);
    target.degree_ += p.second;
  }
  return {inside, outside};
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.powers_.reserve(a.powers_.size() + b.powers_.size());
  auto i = a.powers_.begin();
  auto j = b.powers_.begin();
  while (i != a.powers_.end() || j != b.powers_.end()) {
    if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
      out.powers_.push_back(*i++);
    } else if (i == a.powers_.end() || j->first < i->first) {
      out.powers_.push_back(*j++);
    } else {
      out.powers_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

std::string Monomial::str() const {
  std::string out;
  for (const auto& [name, e] : powers_) {
    if (!out.empty()) out += '*';
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  auto i = a.powers().begin();
  auto j = b.powers().begin();
  while (i != a.powers().end() && j != b.powers().end()) {
    if (i->first == j->first) {
      if (i->second != j->second) return i->second < j->second ? -1 : 1;
      ++i;
      ++j;
    } else {
      // The monomial carrying the earlier symbol has a positive exponent there.
      return i->first < j->first ? 1 : -1;
    }
  }
  if (i != a.powers().end()) return 1;
  if (j != b.powers().end()) return -1;
  return 0;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(Scalar constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial(), std::move(constant));
}

Poly Poly::variable(const std::string& name) { return term(Monomial::variable(name), Scalar(1)); }

Poly Poly::term(Monomial monomial, Scalar coefficient) {
  Poly p;
  if (!coefficient.is_zero()) p.terms_.emplace(std::move(monomial), std::move(coefficient));
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second.is_one();
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar Poly::constant_term() const {
  if (terms_.empty()) return Scalar();
  const auto& last = *terms_.rbegin();
  return last.first.is_one() ? last.second : Scalar();
}

std::optional<Scalar> Poly::as_constant() const {
  if (!is_constant()) return std::nullopt;
  return constant_term();
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& p : m.powers()) out.insert(p.first);
  }
  return out;
}

bool Poly::contains(std::string_view symbol) const { return degree(symbol) > 0; }

unsigned Poly::degree(std::string_view symbol) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(symbol));
  return d;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

void Poly::add_term(const Monomial& monomial, const Scalar& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Scalar& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(std::string_view symbol) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.degree(symbol);
    if (e == 0) continue;
    std::vector<Monomial::Power> powers;
    for (const auto& p : m.powers()) {
      if (p.first == symbol) {
        if (e > 1) powers.emplace_back(p.first, e - 1);
      } else {
        powers.push_back(p);
      }
    }
    out.add_term(Monomial(std::move(powers)), c * Scalar(static_cast<long>(e)));
  }
  return out;
}

Poly Poly::conj() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = c.conj();
  return out;
}

Poly Poly::monic() const {
  if (is_zero() || leading_coefficient().is_one()) return *this;
  Scalar inv = Scalar(1) / leading_coefficient();
  return *this * inv;
}

std::map<unsigned, Poly> Poly::coefficients_in(std::string_view symbol) const {
  std::map<unsigned, Poly> out;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.degree(symbol);
    out[e].add_term(e == 0 ? m : m.without(symbol), c);
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

Poly Poly::from_coefficients(const std::string& symbol, const std::map<unsigned, Poly>& coefficients) {
  Poly out;
  for (const auto& [e, coeff] : coefficients) {
    Monomial shift = Monomial::variable(symbol, e);
    for (const auto& [m, c] : coeff.terms_) out.add_term(m * shift, c);
  }
  return out;
}

std::map<Monomial, Poly, GrlexDescending> Poly::coefficients_over(const std::set<std::string>& symbols) const {
  std::map<Monomial, Poly, GrlexDescending> out;
  for (const auto& [m, c] : terms_) {
    auto [inside, outside] = m.split(symbols);
    out[inside].add_term(outside, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

Scalar Poly::evaluate(const std::map<std::string, Scalar>& point) const {
  Scalar total;
  std::map<std::pair<std::string, unsigned>, Scalar> cache;
  for (const auto& [m, c] : terms_) {
    Scalar value = c;
    for (const auto& p : m.powers()) {
      auto found = point.find(p.first);
      if (found == point.end()) throw UnboundSymbol("no value for symbol '" + p.first + "'");
      auto [it, inserted] = cache.try_emplace(p, Scalar());
      if (inserted) it->second = found->second.pow(p.second);
      value *= it->second;
    }
    total += value;
  }
  return total;
}

Poly Poly::partial_evaluate(const std::map<std::string, Scalar>& point) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Scalar value = c;
    std::vector<Monomial::Power> rest;
    for (const auto& p : m.powers()) {
      auto found = point.find(p.first);
      if (found == point.end()) {
        rest.push_back(p);
      } else {
        value *= found->second.pow(p.second);
      }
    }
    out.add_term(Monomial(std::move(rest)), value);
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      coeff = rational_string(negative ? Rational(-c.re()) : c.re());
    } else if (c.is_imaginary()) {
      negative = sgn(c.im()) < 0;
      coeff = Scalar(0, negative ? Rational(-c.im()) : c.im()).str();
    } else {
      coeff = "(" + c.str() + ")";
    }
    std::string body;
    if (m.is_one()) {
      body = coeff;
    } else if (coeff == "1") {
      body = m.str();
    } else {
      body = coeff + "*" + m.str();
    }
    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
    first = false;
  }
  return out;
}

void subtract_scaled_term(Poly& target, const Poly& source, const Monomial& shift, const Scalar& factor) {
  for (const auto& [m, c] : source.terms_) target.add_term(m * shift, -(c * factor));
}

// ------------------------------------------------------------ division, gcd

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (auto c = b.as_constant()) return a * (Scalar(1) / *c);
  Poly quotient;
  Poly rest = a;
  const Monomial& lead = b.leading_monomial();
  const Scalar& lead_coeff = b.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& lm = rest.leading_monomial();
    if (!lead.divides(lm)) return std::nullopt;
    Monomial shift = lm.quotient(lead);
    Scalar factor = rest.leading_coefficient() / lead_coeff;
    quotient.add_term(shift, factor);
    subtract_scaled_term(rest, b, shift, factor);
  }
  return quotient;
}

namespace {

using Dense = std::map<unsigned, Poly>;

/// gcd of `seed` and every coefficient, smallest coefficients first.
Poly content_of(const Dense& coefficients, Poly seed = Poly()) {
  std::vector<const Poly*> order;
  for (const auto& [e, c] : coefficients) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](const Poly* x, const Poly* y) { return x->size() < y->size(); });
  Poly g = std::move(seed);
  for (const Poly* c : order) {
    g = gcd(g, *c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

void divide_all(Dense& coefficients, const Poly& divisor) {
  if (divisor.is_one()) return;
  for (auto& [e, c] : coefficients) c = *divide_exact(c, divisor);
}

/// Removes the content and scales so the top coefficient is monic.
void make_primitive(Dense& coefficients) {
  divide_all(coefficients, content_of(coefficients));
  const Poly& top = coefficients.rbegin()->second;
  if (!top.leading_coefficient().is_one()) {
    Scalar inv = Scalar(1) / top.leading_coefficient();
    for (auto& [e, c] : coefficients) c *= inv;
  }
}

Dense pseudo_remainder(Dense rest, const Dense& divisor) {
  const unsigned divisor_degree = divisor.rbegin()->first;
  const Poly& divisor_lead = divisor.rbegin()->second;
  while (!rest.empty() && rest.rbegin()->first >= divisor_degree) {
    const unsigned shift = rest.rbegin()->first - divisor_degree;
    const Poly rest_lead = rest.rbegin()->second;
    for (auto& [e, c] : rest) c *= divisor_lead;
    for (const auto& [e, c] : divisor) rest[e + shift] -= rest_lead * c;
    for (auto it = rest.begin(); it != rest.end();) {
      it = it->second.is_zero() ? rest.erase(it) : std::next(it);
    }
  }
  return rest;
}

Poly monomial_gcd(const Poly& p, const Monomial& m) {
  std::vector<Monomial::Power> powers;
  for (const auto& [name, e] : m.powers()) {
    unsigned lowest = e;
    for (const auto& [pm, c] : p.terms()) {
      lowest = std::min(lowest, pm.degree(name));
      if (lowest == 0) break;
    }
    if (lowest > 0) powers.emplace_back(name, lowest);
  }
  return Poly::term(Monomial(std::move(powers)), Scalar(1));
}

/// Content of p viewed in F[y][others]: a polynomial in y alone.
Poly content_in_y(const Poly& p, const std::string& y) {
  std::set<std::string> others = p.variables();
  others.erase(y);
  std::vector<Poly> coefficients;
  for (auto& [m, c] : p.coefficients_over(others)) coefficients.push_back(std::move(c));
  std::stable_sort(coefficients.begin(), coefficients.end(),
                   [](const Poly& u, const Poly& v) { return u.size() < v.size(); });
  Poly g;
  for (const auto& c : coefficients) {
    g = gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

/// Leading coefficient of p in F[y][others] under grlex on the others.
Poly leading_in_y(const Poly& p, const std::string& y) {
  std::set<std::string> others = p.variables();
  others.erase(y);
  return p.coefficients_over(others).begin()->second;
}

Poly univariate_gcd(Dense pa, Dense pb, const std::string& x) {
  if (pa.rbegin()->first < pb.rbegin()->first) std::swap(pa, pb);
  make_primitive(pa);
  make_primitive(pb);
  while (true) {
    Dense r = pseudo_remainder(pa, pb);
    if (r.empty()) return Poly::from_coefficients(x, pb).monic();
    if (r.rbegin()->first == 0) return Poly(1);
    make_primitive(r);
    pa = std::move(pb);
    pb = std::move(r);
  }
}

/// Upper bound on deg_x gcd(a, b) from one univariate image: every other
/// variable is specialized at a point keeping both leading coefficients.
std::optional<unsigned> degree_bound(const Poly& a, const Poly& b, const std::string& x) {
  const Dense ca = a.coefficients_in(x);
  const Dense cb = b.coefficients_in(x);
  std::set<std::string> others = a.variables();
  for (const auto& v : b.variables()) others.insert(v);
  others.erase(x);
  unsigned long state = 0x9e3779b9UL;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::map<std::string, Scalar> point;
    for (const auto& v : others) {
      state = state * 6364136223846793005UL + 1442695040888963407UL;
      point.emplace(v, Scalar(Rational(static_cast<long>((state >> 33) % 89) + 2, 1)));
    }
    if (ca.rbegin()->second.evaluate(point).is_zero() || cb.rbegin()->second.evaluate(point).is_zero()) continue;
    Dense ua, ub;
    for (const auto& [e, c] : ca) ua.emplace(e, Poly(c.evaluate(point)));
    for (const auto& [e, c] : cb) ub.emplace(e, Poly(c.evaluate(point)));
    std::erase_if(ua, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(ub, [](const auto& kv) { return kv.second.is_zero(); });
    return univariate_gcd(std::move(ua), std::move(ub), x).degree(x);
  }
  return std::nullopt;
}

/// Brown-style dense gcd: evaluate y, recurse, Newton-interpolate, then
/// confirm by trial division. Points where the image degree jumps are
/// discarded; a failed division restarts with fresh points.
Poly interpolation_gcd(const Poly& a, const Poly& b, const std::string& y, unsigned degree_y) {
  const Poly ca = content_in_y(a, y);
  const Poly cb = content_in_y(b, y);
  const Poly common = gcd(ca, cb);
  const Poly pa = *divide_exact(a, ca);
  const Poly pb = *divide_exact(b, cb);
  const Poly la = leading_in_y(pa, y);
  const Poly lb = leading_in_y(pb, y);
  const Poly gamma = gcd(la, lb);
  const unsigned bound = std::min({pa.degree(y), pb.degree(y), degree_y}) + gamma.degree(y) + 1;
  const Poly var = Poly::variable(y);

  long next_point = 1;
  for (int restart = 0; restart < 8; ++restart) {
    Poly h;
    Poly modulus(1);
    std::optional<Monomial> lead;
    unsigned used = 0;
    while (used < bound) {
      const Scalar v(Rational(next_point % 2 ? (next_point + 1) / 2 : -(next_point / 2)));
      ++next_point;
      const std::map<std::string, Scalar> point{{y, v}};
      if (la.evaluate(point).is_zero() || lb.evaluate(point).is_zero()) continue;
      Poly image = gcd(pa.partial_evaluate(point), pb.partial_evaluate(point));
      if (image.is_constant()) return common.monic();
      const Monomial m = image.leading_monomial();
      if (lead) {
        if (grlex_compare(m, *lead) > 0) continue;
        if (grlex_compare(m, *lead) < 0) {
          h = Poly();
          modulus = Poly(1);
          used = 0;
        }
      }
      lead = m;
      image *= gamma.evaluate(point);
      const Scalar at = modulus.evaluate(point);
      const Poly correction = image - h.partial_evaluate(point);
      if (!correction.is_zero()) h += correction * modulus * (Scalar(1) / at);
      modulus *= var - Poly(v);
      ++used;
    }
    const Poly candidate = *divide_exact(h, content_in_y(h, y));
    if (divide_exact(pa, candidate) && divide_exact(pb, candidate)) return (common * candidate).monic();
  }
  throw Error("polynomial gcd did not converge");
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();
  if (a.size() == 1) return monomial_gcd(b, a.leading_monomial());
  if (b.size() == 1) return monomial_gcd(a, b.leading_monomial());

  const auto va = a.variables();
  const auto vb = b.variables();
  std::set<std::string> shared;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::inserter(shared, shared.end()));
  if (shared.empty()) return Poly(1);
  if (va.size() == 1 && vb.size() == 1) {
    const std::string& x = *va.begin();
    return univariate_gcd(a.coefficients_in(x), b.coefficients_in(x), x);
  }

  // Variables the gcd cannot involve: private ones and those with a zero bound.
  std::set<std::string> absent;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::inserter(absent, absent.end()));
  std::string y;
  unsigned best = std::numeric_limits<unsigned>::max();
  for (const auto& x : shared) {
    const unsigned d = degree_bound(a, b, x).value_or(std::min(a.degree(x), b.degree(x)));
    if (d == 0) continue;
    absent.erase(x);
    if (d < best) {
      best = d;
      y = x;
    }
  }
  if (y.empty()) return Poly(1);
  if (!absent.empty()) {
    // The gcd divides both images at any point in the absent variables, and
    // an image gcd that divides a and b is the gcd itself.
    unsigned long state = 0x2545f491UL;
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::map<std::string, Scalar> point;
      for (const auto& v : absent) {
        state = state * 6364136223846793005UL + 1442695040888963407UL;
        point.emplace(v, Scalar(Rational(static_cast<long>((state >> 33) % 97) + 2, 1)));
      }
      const Poly ia = a.partial_evaluate(point);
      const Poly ib = b.partial_evaluate(point);
      if (ia.is_zero() || ib.is_zero()) continue;
      const Poly candidate = gcd(ia, ib);
      if (candidate.is_constant()) return Poly(1);
      if (divide_exact(a, candidate) && divide_exact(b, candidate)) return candidate;
    }
    std::vector<Poly> parts;
    for (const Poly* p : {&a, &b})
      for (auto& [m, c] : p->coefficients_over(absent)) parts.push_back(std::move(c));
    std::stable_sort(parts.begin(), parts.end(), [](const Poly& u, const Poly& v) { return u.size() < v.size(); });
    Poly g;
    for (const auto& c : parts) {
      g = gcd(g, c);
      if (g.is_constant()) return Poly(1);
    }
    return g.monic();
  }
  return interpolation_gcd(a, b, y, best);
}

}  // namespace gaq
