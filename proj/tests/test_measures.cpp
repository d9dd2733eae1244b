#include <gtest/gtest.h>

#include "gaq/errors.hpp"
#include "support/fixtures.hpp"

using namespace gaq;
using namespace gaq::test;

namespace {

const std::vector<std::string> kAbc{"a", "b", "c"};
const std::vector<std::string> kAb{"a", "b"};
const Scalar kI = Scalar::i();

LieAlgebraData sl2_constants() { return structure_constants(derive_left_fields(sl2_law()), kAbc, kAbc); }

DifferentialForm sl2_haar() { return haar_measure(dual_forms(derive_left_fields(sl2_law()), kAbc)); }

std::vector<VectorField> sl2_subgroup() {
  const auto l = derive_left_fields(sl2_law());
  return {l[0], l[1]};
}

QuotientMeasure sl2_quotient() { return quotient_measure(sl2_haar(), sl2_subgroup(), sl2_chart(), {"kappa", "b", "tau"}); }

RhoFunction rho_a(long e) { return RhoFunction{{{"a", RationalExpr(e)}}, std::nullopt}; }

}  // namespace

TEST(Modular, Sl2PolarizationSubgroup) {
  const auto md = modular_constants(sl2_constants(), std::vector<std::size_t>{0, 1});
  EXPECT_EQ(md.kH, (std::vector<Scalar>{2, 0}));
  EXPECT_EQ(md.kGH, (std::vector<Scalar>{-2, 0}));
  const auto by_vector = modular_constants(sl2_constants(), span_ab().generators);
  EXPECT_EQ(by_vector.kGH, md.kGH);
}

TEST(Modular, SemisimpleAndAffine) {
  EXPECT_EQ(modular_constants(sl2_constants(), std::vector<std::size_t>{0}).kG, (std::vector<Scalar>{0, 0, 0}));
  const auto af = structure_constants(derive_left_fields(affine_law()), kAb, kAb);
  const auto full = modular_constants(af, std::vector<std::size_t>{0, 1});
  EXPECT_EQ(full.kG, (std::vector<Scalar>{1, 0}));
  EXPECT_EQ(full.kGH, (std::vector<Scalar>{0, 0}));
  EXPECT_EQ(modular_constants(af, std::vector<std::size_t>{0}).kGH, (std::vector<Scalar>{1}));
}

TEST(Modular, CharacterAndClosure) {
  const auto c = sl2_constants();
  const auto bad = character_residuals(c, {1, 0, 0});
  EXPECT_TRUE(std::any_of(bad.begin(), bad.end(), [](const Scalar& s) { return !s.is_zero(); }));
  const auto res = character_residuals(c, {0, 0, 0});
  EXPECT_TRUE(std::all_of(res.begin(), res.end(), [](const Scalar& s) { return s.is_zero(); }));
  EXPECT_THROW(modular_constants(c, std::vector<std::size_t>{1, 2}), StructureError);
}

TEST(Quotient, Sl2) {
  const auto qm = sl2_quotient();
  EXPECT_EQ(qm.form, F("a*d(c) - c*d(a)"));
  ASSERT_TRUE(qm.adapted_density.has_value());
  EXPECT_EQ(*qm.adapted_density, E("kappa^2"));
}

TEST(Quotient, AbelianAndAffine) {
  const std::vector<std::string> xyz{"xa", "xb", "xc"};
  const auto haar3 = haar_measure(dual_forms(derive_left_fields(abelian_law(3)), xyz));
  const Chart flat{"kappa", "tau", {{"xa", S("kappa")}, {"xb", S("tau")}}};
  const auto qa = quotient_measure(haar3, {derive_left_fields(abelian_law(3))[0]}, flat, {"kappa", "tau", "xc"});
  EXPECT_EQ(qa.form, F("d(xb)&d(xc)"));
  EXPECT_FALSE(qa.adapted_density.has_value());

  const auto haar2 = haar_measure(dual_forms(derive_left_fields(affine_law()), kAb));
  EXPECT_EQ(haar2, F("a^(-2)*d(a)&d(b)"));
  const Chart ab{"kappa", "tau", {{"a", S("kappa")}, {"b", S("tau")}}};
  const auto qf = quotient_measure(haar2, {derive_left_fields(affine_law())[0]}, ab, {"kappa", "tau"});
  EXPECT_EQ(qf.form, F("(1/a)*d(b)"));
  ASSERT_TRUE(qf.adapted_density.has_value());
  EXPECT_EQ(*qf.adapted_density, E("1/kappa"));
}

TEST(Quotient, DegenerateRejected) {
  const auto l = derive_left_fields(sl2_law());
  EXPECT_THROW(quotient_measure(sl2_haar(), {l[0], l[0]}, sl2_chart(), {"kappa", "b", "tau"}), StructureError);
}

TEST(QuasiInvariance, Defects) {
  const auto qm = sl2_quotient();
  const auto xa = sl2_subgroup()[0];
  EXPECT_EQ(quasi_invariance_defect(qm.form, xa, kAbc), std::optional<RationalExpr>(RationalExpr(2)));
  EXPECT_EQ(quasi_invariance_defect(qm.form, sl2_subgroup()[1], kAbc), std::optional<RationalExpr>(RationalExpr(0)));
  const DifferentialForm weighted = E("a^(-2)") * qm.form;
  EXPECT_EQ(quasi_invariance_defect(weighted, xa, kAbc), std::optional<RationalExpr>(RationalExpr(0)));
  EXPECT_FALSE(quasi_invariance_defect(F("d(a)"), field({{"b", "1"}, {"a", "b"}}), kAbc).has_value());
}

TEST(Rho, MonomialSolve) {
  const auto rs = rho_solve_monomial(sl2_subgroup(), {-2, 0}, kAbc);
  ASSERT_TRUE(rs.rho.has_value());
  EXPECT_EQ(rs.rho->expression(), std::optional<RationalExpr>(E("a^(-2)")));
  for (const auto& r : rho_verify(*rs.rho, sl2_subgroup(), {-2, 0})) EXPECT_TRUE(r.is_zero());

  const auto one = rho_solve_monomial(sl2_subgroup(), {0, 0}, kAbc);
  ASSERT_TRUE(one.rho.has_value());
  EXPECT_EQ(one.rho->expression(), std::optional<RationalExpr>(RationalExpr(1)));

  const auto af = rho_solve_monomial({derive_left_fields(affine_law())[0]}, {1}, kAb);
  ASSERT_TRUE(af.rho.has_value());
  EXPECT_EQ(af.rho->expression(), std::optional<RationalExpr>(S("a")));
}

TEST(Rho, VerifyReportsResiduals) {
  const auto r = rho_verify(rho_a(-1), sl2_subgroup(), {-2, 0});
  EXPECT_FALSE(r[0].is_zero());
  EXPECT_TRUE(r[1].is_zero());
}

TEST(Rho, NoMonomialSolution) {
  const auto rs = rho_solve_monomial({field({{"a", "1"}})}, {1}, {"a"});
  EXPECT_FALSE(rs.rho.has_value());
}

TEST(Rho, Positivity) {
  EXPECT_TRUE(rho_positive(rho_a(-2), {{{"a", Scalar(3)}}, {{"a", Q(1, 5)}}}));
  EXPECT_FALSE(rho_positive(rho_a(1), {{{"a", Scalar(-3)}}}));
}

TEST(Corrected, Multipliers) {
  const auto right = derive_right_fields(sl2_law());
  const auto corrected = corrected_right_fields(right, rho_a(-2));
  EXPECT_EQ(corrected[0].multiplier, RationalExpr(-1));
  for (const auto& op : corrected_right_fields(right, rho_a(0))) EXPECT_TRUE(op.multiplier.is_zero());
  const auto af = corrected_right_fields(derive_right_fields(affine_law()), RhoFunction{{{"a", RationalExpr(1)}}, {}});
  EXPECT_EQ(af[0].multiplier, E("1/2"));
}

TEST(Corrected, CloseOnRightConstants) {
  const auto right = derive_right_fields(sl2_law());
  const auto cr = structure_constants(right, kAbc, kAbc);
  const auto corrected = corrected_right_fields(right, rho_a(-2));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const auto got = commutator(corrected[i], corrected[j]);
      FirstOrderOperator expected{VectorField(), RationalExpr(0)};
      for (std::size_t k = 0; k < 3; ++k) {
        expected.field = expected.field + RationalExpr(cr(i, j, k)) * corrected[k].field;
        expected.multiplier += RationalExpr(cr(i, j, k)) * corrected[k].multiplier;
      }
      EXPECT_EQ(got.field, expected.field);
      EXPECT_EQ(got.multiplier, expected.multiplier);
    }
}

TEST(Corrected, HalfLogGradient) {
  const auto l0 = gradient_at_identity(rho_a(-2).half_log(), sl2_law());
  EXPECT_EQ(l0[0], RationalExpr(kI));
  EXPECT_TRUE(l0[1].is_zero());
  EXPECT_TRUE(l0[2].is_zero());
}

TEST(Adjoint, Examples) {
  const RationalExpr one(1);
  EXPECT_EQ(formal_adjoint(ReducedOp{one, 0}, one, "tau"), (ReducedOp{RationalExpr(-1), 0}));
  const ReducedOp xa{E("-2*tau"), E("-1 + i*alpha")};
  EXPECT_EQ(formal_adjoint(xa, one, "tau"), (ReducedOp{E("2*tau"), E("1 - i*alpha")}));
  EXPECT_TRUE(anti_hermitian(xa, one, "tau"));
  EXPECT_TRUE(anti_hermitian(ReducedOp{E("-tau^2"), E("-tau + i*alpha*tau")}, one, "tau"));
  EXPECT_FALSE(anti_hermitian(ReducedOp{E("-2*tau"), E("i*alpha")}, one, "tau"));
}

TEST(Adjoint, WeightedMeasure) {
  const RationalExpr w = E("tau^2 + 1");
  const ReducedOp d{1, 0};
  const auto adj = formal_adjoint(d, w, "tau");
  EXPECT_EQ(adj, (ReducedOp{RationalExpr(-1), E("-2*tau/(tau^2 + 1)")}));
  EXPECT_EQ(formal_adjoint(adj, w, "tau"), d);
  EXPECT_FALSE(anti_hermitian(d, w, "tau"));
}

TEST(Unitarity, PrincipalBeforeAndAfter) {
  const auto p = principal();
  const auto pc = run_chain(p, E("a - 1"));
  const auto qm = sl2_quotient();
  const auto pre_density = wave_density(pc.horizontal, *qm.adapted_density, sl2_chart());
  ASSERT_TRUE(pre_density.has_value());
  EXPECT_EQ(*pre_density, E("kappa^2"));
  const auto post_density = wave_density(pc.half_rho, *qm.adapted_density, sl2_chart());
  ASSERT_TRUE(post_density.has_value());
  EXPECT_EQ(*post_density, RationalExpr(1));

  const auto pre_cs = casimir_scalar_on_ansatz(compose_reduced(pc.horizontal_ops, sl2_casimir(), "tau"), "tau");
  const auto pre = unitarity_report(pc.horizontal_ops, RationalExpr(1), "tau", pre_cs, pre_density, sl2_chart(),
                                    extended_coordinates());
  EXPECT_FALSE(pre.unitary());
  EXPECT_FALSE(pre.anti_hermitian);
  EXPECT_FALSE(pre.real_casimir);
  EXPECT_FALSE(pre.measure_falls);
  EXPECT_FALSE(pre.reasons.empty());

  const auto post_cs = casimir_scalar_on_ansatz(compose_reduced(pc.final_ops, sl2_casimir(), "tau"), "tau");
  const auto post = unitarity_report(pc.final_ops, RationalExpr(1), "tau", post_cs, post_density, sl2_chart(),
                                     extended_coordinates());
  EXPECT_TRUE(post.unitary());
}

TEST(Unitarity, Mock) {
  const auto mc = run_chain(mock(), S("c"));
  const auto qm = sl2_quotient();
  const auto density = wave_density(mc.half_rho, *qm.adapted_density, sl2_chart());
  ASSERT_TRUE(density.has_value());
  EXPECT_EQ(*density, RationalExpr(1));
  const auto cs = casimir_scalar_on_ansatz(compose_reduced(mc.final_ops, sl2_casimir(), "tau"), "tau");
  EXPECT_TRUE(unitarity_report(mc.final_ops, RationalExpr(1), "tau", cs, density, sl2_chart(), extended_coordinates())
                  .unitary());
  for (const auto& op : mc.final_ops) EXPECT_TRUE(anti_hermitian(op, RationalExpr(1), "tau"));
}
