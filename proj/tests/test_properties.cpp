#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace p = gaq::test::properties;

namespace {

void expect_clean(const gaq::test::Tally& t) {
  EXPECT_GE(t.cases, t.required) << t.name;
  EXPECT_EQ(t.failures, 0) << t.name << ": " << t.first_failure;
}

}  // namespace

TEST(Property, CanonicalFormMatchesEvaluation) { expect_clean(p::canonical_form()); }
TEST(Property, PolynomialGcd) { expect_clean(p::polynomial_gcd()); }
TEST(Property, Leibniz) { expect_clean(p::leibniz()); }
TEST(Property, DSquaredIsZero) { expect_clean(p::d_squared()); }
TEST(Property, Duality) { expect_clean(p::duality()); }
TEST(Property, LeftRightCommute) { expect_clean(p::left_right_commute()); }
TEST(Property, Jacobi) { expect_clean(p::jacobi()); }
TEST(Property, CoboundaryCocycleIdentity) { expect_clean(p::cocycle_identity()); }
TEST(Property, AdjointInvolution) { expect_clean(p::adjoint_involution()); }
TEST(Property, RedefinedOperatorsClose) { expect_clean(p::redefined_close()); }
TEST(Property, CorrectedOperatorsClose) { expect_clean(p::corrected_close()); }
