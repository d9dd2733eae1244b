#include <gtest/gtest.h>

#include "gaq/errors.hpp"
#include "support/fixtures.hpp"

using namespace gaq;
using namespace gaq::test;

namespace {
const std::vector<std::string> kAbc{"a", "b", "c"};
const std::vector<std::string> kAb{"a", "b"};
}  // namespace

TEST(GroupLaw, UnitLawsAreValidated) {
  EXPECT_NO_THROW(sl2_law());
  EXPECT_THROW(GroupLaw({{"a", Scalar(1)}}, {E("a1*a2 + 1")}), StructureError);
  EXPECT_THROW(GroupLaw({{"a", Scalar(1)}, {"b", Scalar(0)}}, {E("a1*a2")}), StructureError);
}

TEST(GroupLaw, Associativity) {
  EXPECT_TRUE(check_associativity(sl2_law()).passed);
  EXPECT_TRUE(check_associativity(abelian_law(2)).passed);
  EXPECT_TRUE(check_associativity(affine_law()).passed);
  const GroupLaw corrupted({{"a", Scalar(1)}, {"b", Scalar(0)}, {"c", Scalar(0)}},
                           {E("a1*a2 + b1*c2"), E("a1*b2 + b1/a2"), E("c1*a2 + (1 + b1*c1)*c2/a1")});
  const auto rep = check_associativity(corrupted);
  EXPECT_FALSE(rep.passed);
  EXPECT_TRUE(std::any_of(rep.residuals.begin(), rep.residuals.end(), [](const RationalExpr& r) { return !r.is_zero(); }));
}

TEST(Fields, LeftFields) {
  const auto l = derive_left_fields(sl2_law());
  EXPECT_EQ(l[0], field({{"a", "a"}, {"b", "-b"}, {"c", "c"}}));
  EXPECT_EQ(l[1], field({{"b", "a"}}));
  EXPECT_EQ(l[2], field({{"a", "b"}, {"c", "(1 + b*c)/a"}}));
  const auto ab = derive_left_fields(abelian_law(2));
  EXPECT_EQ(ab[0], VectorField::partial("xa"));
  EXPECT_EQ(ab[1], VectorField::partial("xb"));
  const auto af = derive_left_fields(affine_law());
  EXPECT_EQ(af[0], field({{"a", "a"}}));
  EXPECT_EQ(af[1], field({{"b", "a"}}));
}

TEST(Fields, RightFields) {
  const auto r = derive_right_fields(sl2_law());
  EXPECT_EQ(r[1], field({{"a", "c"}, {"b", "(1 + b*c)/a"}}));
  EXPECT_EQ(r[0], field({{"a", "a"}, {"b", "b"}, {"c", "-c"}}));
  EXPECT_EQ(r[2], field({{"c", "a"}}));
  const auto ab = derive_right_fields(abelian_law(2));
  EXPECT_EQ(ab[1], VectorField::partial("xb"));
  const auto af = derive_right_fields(affine_law());
  EXPECT_EQ(af[0], field({{"a", "a"}, {"b", "b"}}));
  EXPECT_EQ(af[1], VectorField::partial("b"));
}

TEST(Forms, DualLeftForms) {
  const auto th = dual_forms(derive_left_fields(sl2_law()), kAbc);
  EXPECT_EQ(th[2], F("a*d(c) - c*d(a)"));
  EXPECT_EQ(th[0], F("(1 + b*c)/a*d(a) - b*d(c)"));
  const auto ab = dual_forms(derive_left_fields(abelian_law(2)), {"xa", "xb"});
  EXPECT_EQ(ab[0], F("d(xa)"));
  const auto af = dual_forms(derive_left_fields(affine_law()), kAb);
  EXPECT_EQ(af[0], F("1/a*d(a)"));
  EXPECT_EQ(af[1], F("1/a*d(b)"));
}

TEST(Algebra, StructureConstants) {
  const auto c = structure_constants(derive_left_fields(sl2_law()), kAbc, kAbc);
  EXPECT_EQ(c(0, 1, 1), Scalar(2));
  EXPECT_EQ(c(0, 2, 2), Scalar(-2));
  EXPECT_EQ(c(1, 2, 0), Scalar(1));
  EXPECT_EQ(c(1, 0, 1), Scalar(-2));
  int nonzero = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) nonzero += !c(i, j, k).is_zero();
  EXPECT_EQ(nonzero, 6);
  EXPECT_TRUE(c.satisfies_jacobi());
  EXPECT_TRUE(c.antisymmetric());
  const auto ab = structure_constants(derive_left_fields(abelian_law(2)), {"xa", "xb"}, {"xa", "xb"});
  EXPECT_EQ(ab, LieAlgebraData::zero({"xa", "xb"}));
  const auto af = structure_constants(derive_left_fields(affine_law()), kAb, kAb);
  EXPECT_EQ(af(0, 1, 1), Scalar(1));
  const auto cr = structure_constants(derive_right_fields(sl2_law()), kAbc, kAbc);
  EXPECT_EQ(cr, c.negated());
}

TEST(Algebra, NonConstantExpansionRejected) {
  const std::vector<VectorField> fs{VectorField::partial("x"), field({{"y", "x^2"}})};
  EXPECT_THROW(structure_constants(fs, {"x", "y"}, {"x", "y"}), StructureError);
}

TEST(Fields, Brackets) {
  const auto l = derive_left_fields(sl2_law());
  const auto r = derive_right_fields(sl2_law());
  EXPECT_EQ(bracket(l[1], l[2]), l[0]);
  EXPECT_TRUE(bracket(l[2], l[2]).is_zero());
  for (const auto& x : l)
    for (const auto& y : r) EXPECT_TRUE(bracket(x, y).is_zero());
}

TEST(Forms, ExteriorDerivative) {
  EXPECT_EQ(exterior_derivative(F("a*d(c) - c*d(a)"), kAbc), F("2*d(a)&d(c)"));
  EXPECT_TRUE(exterior_derivative(F("3*d(a) - 1/2*d(b)"), kAbc).is_zero());
  const auto c = structure_constants(derive_left_fields(sl2_law()), kAbc, kAbc);
  const auto th = dual_forms(derive_left_fields(sl2_law()), kAbc);
  // -1/2 C^c_jk theta^j theta^k = -C^c_ac theta^a theta^c.
  EXPECT_EQ(exterior_derivative(th[2], kAbc), RationalExpr(2) * wedge(th[0], th[2]));
  EXPECT_EQ(c(0, 2, 2), Scalar(-2));
}

TEST(Forms, InteriorProduct) {
  const auto l = derive_left_fields(sl2_law());
  const auto haar = haar_measure(dual_forms(l, kAbc));
  EXPECT_EQ(interior_product(l[1], interior_product(l[0], haar)), F("a*d(c) - c*d(a)"));
  EXPECT_TRUE(interior_product(VectorField(), haar).is_zero());
  EXPECT_THROW(interior_product(l[0], DifferentialForm::function(S("a"))), StructureError);
}

TEST(Forms, LieDerivative) {
  const auto l = derive_left_fields(sl2_law());
  const auto r = derive_right_fields(sl2_law());
  const auto th = dual_forms(l, kAbc);
  const auto thr = dual_forms(r, kAbc);
  // L_{X_a} theta^b = -C_ab^b theta^b with the field tables above.
  EXPECT_EQ(lie_derivative(l[0], th[1], kAbc), RationalExpr(-2) * th[1]);
  for (const auto& x : l)
    for (const auto& w : thr) EXPECT_TRUE(lie_derivative(x, w, kAbc).is_zero());
  EXPECT_TRUE(lie_derivative(VectorField(), th[0], kAbc).is_zero());
}

TEST(Forms, MaurerCartan) {
  const auto l = derive_left_fields(sl2_law());
  const auto r = derive_right_fields(sl2_law());
  const auto c = structure_constants(l, kAbc, kAbc);
  for (const auto& res : maurer_cartan_residual(dual_forms(l, kAbc), c, kAbc)) EXPECT_TRUE(res.is_zero());
  for (const auto& res : maurer_cartan_residual(dual_forms(r, kAbc), c.negated(), kAbc)) EXPECT_TRUE(res.is_zero());
  const auto wrong = maurer_cartan_residual(dual_forms(r, kAbc), c, kAbc);
  EXPECT_TRUE(std::any_of(wrong.begin(), wrong.end(), [](const DifferentialForm& w) { return !w.is_zero(); }));
  const auto al = derive_left_fields(abelian_law(3));
  for (const auto& res : maurer_cartan_residual(dual_forms(al, {"xa", "xb", "xc"}),
                                                LieAlgebraData::zero({"xa", "xb", "xc"}), {"xa", "xb", "xc"}))
    EXPECT_TRUE(res.is_zero());
}

TEST(Haar, Measures) {
  const auto l = derive_left_fields(sl2_law());
  const auto haar = haar_measure(dual_forms(l, kAbc));
  EXPECT_EQ(haar, F("1/a*d(a)&d(b)&d(c)"));
  for (const auto& x : derive_right_fields(sl2_law())) EXPECT_TRUE(lie_derivative(x, haar, kAbc).is_zero());
  for (const auto& x : l) EXPECT_TRUE(lie_derivative(x, haar, kAbc).is_zero());
  const std::vector<std::string> xyz{"xa", "xb", "xc"};
  EXPECT_EQ(haar_measure(dual_forms(derive_left_fields(abelian_law(3)), xyz)), F("d(xa)&d(xb)&d(xc)"));
  EXPECT_EQ(haar_measure(dual_forms(derive_left_fields(affine_law()), kAb)), F("1/a^2*d(a)&d(b)"));
}

TEST(Haar, AffineGroupModularBehaviour) {
  const auto l = derive_left_fields(affine_law());
  const auto r = derive_right_fields(affine_law());
  const auto haar = haar_measure(dual_forms(l, kAb));
  for (const auto& x : r) EXPECT_TRUE(lie_derivative(x, haar, kAb).is_zero());
  // k^G = (1, 0): L_{X^L_a} Omega^L = -Omega^L.
  EXPECT_EQ(lie_derivative(l[0], haar, kAb), RationalExpr(-1) * haar);
  EXPECT_TRUE(lie_derivative(l[1], haar, kAb).is_zero());
}

TEST(Killing, FormAndCasimir) {
  const auto c = structure_constants(derive_left_fields(sl2_law()), kAbc, kAbc);
  const auto k = killing_form(c);
  EXPECT_EQ(k[0][0], Scalar(8));
  EXPECT_EQ(k[1][2], Scalar(4));
  EXPECT_EQ(k[2][1], Scalar(4));
  EXPECT_EQ(k[0][1], Scalar(0));
  EXPECT_EQ(k[1][1], Scalar(0));
  EXPECT_EQ(casimir_coefficients(c, sl2_casimir()), sl2_casimir());
  EXPECT_EQ(casimir_from_killing(c, Scalar(4)), sl2_casimir());
  const ScalarMatrix not_invariant{{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}};
  EXPECT_FALSE(is_ad_invariant(c, not_invariant));
  EXPECT_THROW(casimir_coefficients(c, not_invariant), StructureError);
  const auto ab = LieAlgebraData::zero({"x", "y"});
  EXPECT_TRUE(is_ad_invariant(ab, {{Q(3), Q(1)}, {Q(1), Q(-2)}}));
  for (const auto& row : killing_form(ab))
    for (const auto& x : row) EXPECT_TRUE(x.is_zero());
  const auto af = structure_constants(derive_left_fields(affine_law()), kAb, kAb);
  EXPECT_LT(rank(to_matrix(killing_form(af))), 2u);
  EXPECT_THROW(casimir_from_killing(af, Scalar(1)), SingularSystem);
}

TEST(Killing, CasimirOnDual) {
  const RationalExpr alpha = S("alpha"), beta = S("beta"), gamma = S("gamma");
  EXPECT_EQ(casimir_function_on_dual(sl2_casimir(), {alpha, beta, gamma}), E("alpha^2/2 + 2*beta*gamma"));
  const RationalExpr mu = S("mu"), nu = S("nu");
  EXPECT_EQ(casimir_function_on_dual(sl2_casimir(), {alpha, mu + nu, mu - nu}), E("alpha^2/2 + 2*mu^2 - 2*nu^2"));
  const ScalarMatrix id{{Q(1), Q(0)}, {Q(0), Q(1)}};
  EXPECT_EQ(casimir_function_on_dual(id, {S("x"), S("y")}), E("x^2 + y^2"));
}
