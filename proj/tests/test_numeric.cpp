#include <gtest/gtest.h>

#include "satcurve/numeric_verify.hpp"
#include "satcurve/parse.hpp"

using namespace satcurve;

namespace {

BiPoly P(const std::string& s) { return parse_bipoly(s); }

}  // namespace

TEST(EmpiricalSlope, YOverXOnA4) {
  auto m = empirical_lipschitz_slope(P("y"), P("x"), P("y^2 - x^5"), SamplePlan::standard());
  EXPECT_FALSE(m.degenerate);
  EXPECT_NEAR(m.slope, -1.0, 1e-6);
  EXPECT_EQ(m.data.size(), 10u);
}

TEST(EmpiricalSlope, CoordinateXIsDegenerate) {
  auto m = empirical_lipschitz_slope(P("x"), P("1"), P("y^2 - x^3"), SamplePlan::standard());
  EXPECT_TRUE(m.degenerate);
  for (const auto& d : m.data) EXPECT_EQ(d.value, 0.0);
}

TEST(EmpiricalSlope, CoordinateYHasUnitRatio) {
  auto m = empirical_lipschitz_slope(P("y"), P("1"), P("y^2 - x^3"), SamplePlan::standard());
  EXPECT_FALSE(m.degenerate);
  EXPECT_NEAR(m.slope, 0.0, 1e-9);
  for (const auto& d : m.data) EXPECT_NEAR(d.value, 1.0, 1e-12);
}

TEST(Crosscheck, Examples) {
  auto plan = SamplePlan::standard();
  auto a = crosscheck(P("y"), P("x"), P("y^2 - x^5"), plan);
  EXPECT_TRUE(a.agree);
  EXPECT_EQ(*a.predicted_slope, Rat(-1));
  EXPECT_EQ(a.verdict, Verdict::BoundedNotLipschitz);

  auto b = crosscheck(P("x + y"), P("1"), P("y^2 - x^3"), plan);
  EXPECT_TRUE(b.agree);
  EXPECT_EQ(b.verdict, Verdict::Lipschitz);
  for (const auto& d : b.residuals) EXPECT_LT(d.value, 2.0);

  auto c = crosscheck(P("y"), P("x^2"), P("y^2 - x^3"), plan);
  EXPECT_EQ(c.verdict, Verdict::Unbounded);
  EXPECT_TRUE(c.agree);
  EXPECT_EQ(*c.predicted_slope, Rat(-2));
  EXPECT_LT(c.measured_slope, -plan.slope_tolerance);
}

TEST(Crosscheck, DeterministicForSeed) {
  auto plan = SamplePlan::standard();
  plan.seed = 99;
  auto a = crosscheck(P("y^2"), P("x^2"), P("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7"), plan);
  auto b = crosscheck(P("y^2"), P("x^2"), P("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7"), plan);
  EXPECT_TRUE(a.agree);
  EXPECT_EQ(a.measured_slope, b.measured_slope);
  ASSERT_EQ(a.residuals.size(), b.residuals.size());
  for (std::size_t i = 0; i < a.residuals.size(); ++i) EXPECT_EQ(a.residuals[i].value, b.residuals[i].value);
}

TEST(ContactMeasurement, Examples) {
  auto plan = SamplePlan::standard();
  auto cusp = puiseux_expand(P("y^2 - x^3"), Rat(4));
  auto c = verify_contact_exponent(cusp[0], cusp[0], 1, plan);
  EXPECT_TRUE(c.agree);
  EXPECT_NEAR(c.measured, 1.5, plan.exponent_tolerance);

  auto par = puiseux_expand(P("y^2 - x^4"), Rat(5));
  auto d = verify_contact_exponent(par[0], par[1], 0, plan);
  EXPECT_TRUE(d.agree);
  EXPECT_NEAR(d.measured, 2.0, plan.exponent_tolerance);

  auto lines = puiseux_expand(P("y*(y - x)"), Rat(3));
  auto e = verify_contact_exponent(lines[0], lines[1], 0, plan);
  EXPECT_TRUE(e.agree);
  EXPECT_NEAR(e.measured, 1.0, plan.exponent_tolerance);
}

TEST(Residual, ExactAndTruncatedBranches) {
  auto plan = SamplePlan::standard();
  auto smooth = puiseux_expand(P("y - x^2"), Rat(3));
  auto r0 = branch_residual_check(smooth[0], P("y - x^2"), plan);
  EXPECT_TRUE(r0.bounded);
  EXPECT_EQ(r0.max_normalized, 0.0);

  const char* g = "y^3 - x^5 + x^4*y";
  auto br = puiseux_expand(P(g), Rat(3));
  auto r1 = branch_residual_check(br[0], P(g), plan);
  EXPECT_TRUE(r1.bounded);
}

TEST(Residual, CorruptedBranchIsDetected) {
  auto plan = SamplePlan::standard();
  auto br = puiseux_expand(P("y^2 - x^3"), Rat(5));
  PuiseuxBranch bad = br[0];
  bad.exact = false;
  bad.truncation_order = Rat(5);
  bad.terms[Rat(2)] = FieldElem(Rat(1, 1000));
  auto r = branch_residual_check(bad, P("y^2 - x^3"), plan);
  EXPECT_FALSE(r.bounded);
  EXPECT_NEAR(r.slope, 3.5 - 5.0, 0.05);
}

TEST(SamplePlan, Validation) {
  SamplePlan p;
  p.radii = {0.1, 0.2};
  EXPECT_THROW(p.validate(), Error);
  p.radii = {0.1};
  EXPECT_THROW(p.validate(), Error);
  EXPECT_NO_THROW(SamplePlan::standard().validate());
  auto s = SamplePlan::standard();
  EXPECT_NEAR(s.radii.front(), 1e-1, 1e-15);
  EXPECT_NEAR(s.radii.back(), 1e-4, 1e-15);
}
