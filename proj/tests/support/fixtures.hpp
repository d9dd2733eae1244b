#ifndef GAQ_TESTS_FIXTURES_HPP
#define GAQ_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <vector>

#include "gaq/measures.hpp"
#include "gaq/parser.hpp"

namespace gaq::test {

inline RationalExpr E(const std::string& text) { return parse_expression(text); }
inline DifferentialForm F(const std::string& text) { return parse_form(text); }
inline RationalExpr S(const std::string& name) { return RationalExpr::symbol(name); }
inline Scalar Q(long p, long q = 1) { return Scalar(Rational(p, q)); }

inline VectorField field(std::initializer_list<std::pair<std::string, std::string>> parts) {
  std::map<std::string, RationalExpr> m;
  for (const auto& [k, v] : parts) m.emplace(k, E(v));
  return VectorField(m);
}

inline GroupLaw sl2_law() {
  return GroupLaw({{"a", Scalar(1)}, {"b", Scalar(0)}, {"c", Scalar(0)}},
                  {E("a1*a2 + b1*c2"), E("a1*b2 + b1*(1 + b2*c2)/a2"), E("c1*a2 + (1 + b1*c1)*c2/a1")});
}

inline GroupLaw affine_law() {
  return GroupLaw({{"a", Scalar(1)}, {"b", Scalar(0)}}, {E("a1*a2"), E("a1*b2 + b1")});
}

inline GroupLaw abelian_law(std::size_t n) {
  std::vector<Coordinate> coords;
  std::vector<RationalExpr> law;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string x = "x" + std::string(1, static_cast<char>('a' + i));
    coords.push_back({x, Scalar(0)});
    law.push_back(S(x + "1") + S(x + "2"));
  }
  return GroupLaw(coords, law);
}

inline const std::vector<std::string>& abc() {
  static const std::vector<std::string> labels{"a", "b", "c"};
  return labels;
}

inline PseudoExtension principal() { return PseudoExtension(sl2_law(), GeneratingFunction(E("alpha*(a - 1)")), abc()); }
inline PseudoExtension mock() { return PseudoExtension(sl2_law(), GeneratingFunction(E("gamma*c")), abc()); }
inline PseudoExtension discrete() { return PseudoExtension(sl2_law(), GeneratingFunction(E("beta*(b - c)")), abc()); }

inline ScalarMatrix sl2_casimir() {
  return {{Q(1, 2), Q(0), Q(0)}, {Q(0), Q(0), Q(1)}, {Q(0), Q(1), Q(0)}};
}

inline Chart sl2_chart() { return Chart{"kappa", "tau", {{"a", S("kappa")}, {"c", S("kappa") * S("tau")}}}; }

inline std::set<std::string> extended_coordinates() { return {"a", "b", "c", "phi"}; }

inline Polarization span_ab() { return Polarization{{{1, 0, 0}, {0, 1, 0}}, {0, 0}}; }

/// Template exp(u1*R)*a^u2*Phi(c/a).
inline WaveAnsatz sl2_template(const RationalExpr& exp_argument) {
  WaveAnsatz t;
  t.tau = E("c/a");
  t.unknowns = {"u1", "u2"};
  t.factors = {{AnsatzFactor::Kind::Exp, S("u1") * exp_argument, RationalExpr()},
               {AnsatzFactor::Kind::Power, S("a"), S("u2")}};
  return t;
}

/// Appends a^w_a b^w_b c^w_c for the half-rho solve.
inline WaveAnsatz with_power_unknowns(WaveAnsatz psi) {
  psi.unknowns.clear();
  for (const char* n : {"a", "b", "c"}) {
    psi.unknowns.push_back(std::string("w_") + n);
    psi.factors.push_back({AnsatzFactor::Kind::Power, S(n), S(std::string("w_") + n)});
  }
  return psi;
}

inline std::vector<ReducedOp> reduce_all(const std::vector<VectorField>& fields, const WaveAnsatz& psi) {
  std::vector<ReducedOp> ops;
  for (const auto& x : fields) ops.push_back(reduce_operator(x, psi, sl2_chart(), extended_coordinates()));
  return ops;
}

/// Principal or Mock chain: horizontal solve, then eigenvalues (-1, 0).
struct Chain {
  WaveAnsatz horizontal;
  WaveAnsatz half_rho;
  std::vector<ReducedOp> horizontal_ops;
  std::vector<ReducedOp> final_ops;
};

inline Chain run_chain(const PseudoExtension& ext, const RationalExpr& exp_argument) {
  Chain c;
  c.horizontal = solve_prefactor(sl2_template(exp_argument), span_ab(), ext);
  Polarization shifted{span_ab().generators, {-1, 0}};
  c.half_rho = solve_prefactor(with_power_unknowns(c.horizontal), shifted, ext);
  const auto red = redefine_right_operators(ext);
  c.horizontal_ops = reduce_all(red, c.horizontal);
  c.final_ops = reduce_all(red, c.half_rho);
  return c;
}

/// Random rationals p/q with |p| <= range, 1 <= q <= den.
class RandomRationals {
 public:
  explicit RandomRationals(unsigned seed, long range = 9, long den = 5) : rng_(seed), num_(-range, range), den_(1, den) {}
  Scalar next() { return Scalar(Rational(num_(rng_), den_(rng_))); }
  Scalar next_nonzero() {
    for (;;) {
      Scalar s = next();
      if (!s.is_zero()) return s;
    }
  }
  Scalar next_positive() {
    const Scalar s = next_nonzero();
    return s.re() < 0 ? -s : s;
  }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
  std::uniform_int_distribution<long> num_;
  std::uniform_int_distribution<long> den_;
};

/// Random polynomial in the given symbols with small integer coefficients.
inline RationalExpr random_poly(RandomRationals& r, const std::vector<std::string>& symbols, int terms, int max_degree) {
  RationalExpr out;
  for (int t = 0; t < terms; ++t) {
    RationalExpr mono(r.next());
    for (const auto& s : symbols) {
      const int d = r.index(max_degree + 1);
      if (d) mono *= S(s).pow(d);
    }
    out += mono;
  }
  return out;
}

inline RationalExpr random_rational(RandomRationals& r, const std::vector<std::string>& symbols) {
  RationalExpr den = random_poly(r, symbols, 2, 1);
  if (den.is_zero()) den = RationalExpr(1);
  return random_poly(r, symbols, 3, 2) / den;
}

inline Point random_point(RandomRationals& r, const std::vector<std::string>& symbols) {
  Point p;
  for (const auto& s : symbols) p[s] = r.next();
  return p;
}

/// Central difference (f(p + h e_s) - f(p - h e_s)) / 2h, exact.
inline Scalar central_difference(const RationalExpr& f, Point p, const std::string& s, const Rational& h) {
  Point plus = p, minus = p;
  plus[s] = p[s] + Scalar(h);
  minus[s] = p[s] - Scalar(h);
  return (f.eval_at(plus) - f.eval_at(minus)) / Scalar(2 * h);
}

}  // namespace gaq::test

#endif  // GAQ_TESTS_FIXTURES_HPP
