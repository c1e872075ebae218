#include <gtest/gtest.h>

#include "satcurve/family.hpp"
#include "satcurve/parse.hpp"

using namespace satcurve;

namespace {

FamilyCurve fam(const std::string& s, std::initializer_list<std::pair<long, long>> ts) {
  FamilyCurve F{parse_tripoly(s), {}};
  for (auto [a, b] : ts) F.t_range.push_back(make_rat(a, b));
  return F;
}

BiPoly XT(const std::string& s) {
  // (x, t) polynomials are stored with t as the second variable.
  return parse_polynomial<2>(s, {"x", "t"});
}

}  // namespace

TEST(FamilyDiscriminant, ConstantCusp) {
  auto F = fam("y^2 - x^3", {{0, 1}});
  EXPECT_EQ(family_discriminant_raw(F), XT("-4*x^3"));
  EXPECT_EQ(family_discriminant(F), XT("x"));
}

TEST(FamilyDiscriminant, NodeToCusp) {
  auto F = fam("y^2 - x^2*(x - t)", {{0, 1}});
  // Res_y(y^2 - g, 2y) = -4g with g = x^3 - t x^2.
  EXPECT_EQ(family_discriminant_raw(F), XT("-4*x^3 + 4*t*x^2"));
  EXPECT_EQ(family_discriminant(F), XT("x^2 - t*x"));
}

TEST(FamilyDiscriminant, LinearPerturbation) {
  auto F = fam("y^2 - x^3 - t*x", {{0, 1}});
  EXPECT_EQ(family_discriminant_raw(F), XT("-4*x^3 - 4*t*x"));
  EXPECT_EQ(family_discriminant(F), XT("x^3 + t*x"));
}

TEST(FamilyDiscriminant, RequiresMonic) {
  EXPECT_THROW(family_discriminant(fam("t*y^2 - x^3", {{0, 1}})), Error);
}

TEST(Equisaturation, ConstantFamily) {
  auto r = equisaturation_check(fam("y^2 - x^3", {{0, 1}, {1, 2}, {1, 1}}));
  EXPECT_EQ(r.verdict, EquisatVerdict::Equisaturated);
  ASSERT_EQ(r.per_t.size(), 3u);
  for (const auto& f : r.per_t) {
    EXPECT_EQ(f.profile.distinct_exponents, std::vector<Rat>{make_rat(3, 2)});
    EXPECT_EQ(f.root_pattern, std::vector<unsigned>{1});
  }
  EXPECT_EQ(r.section_order, 1u);
}

TEST(Equisaturation, NodeCuspDegeneration) {
  auto r = equisaturation_check(fam("y^2 - x^2*(x - t)", {{0, 1}, {1, 4}, {1, 2}}));
  EXPECT_EQ(r.verdict, EquisatVerdict::NotEquisaturated);
  ASSERT_TRUE(r.witness_t.has_value());
  EXPECT_EQ(*r.witness_t, Rat(0));
  ASSERT_TRUE(r.contrast_t.has_value());
  EXPECT_EQ(*r.contrast_t, make_rat(1, 4));
  EXPECT_EQ(r.per_t[0].t, Rat(0));
  EXPECT_EQ(r.per_t[0].profile.distinct_exponents, std::vector<Rat>{make_rat(3, 2)});
  EXPECT_EQ(r.per_t[1].profile.distinct_exponents, std::vector<Rat>{Rat(1)});
  EXPECT_EQ(r.per_t[2].profile.distinct_exponents, std::vector<Rat>{Rat(1)});
}

TEST(Equisaturation, SquaredParameterNode) {
  auto r = equisaturation_check(fam("y^2 - t^2*x^2 - x^3", {{0, 1}, {1, 1}, {2, 1}}));
  EXPECT_EQ(r.verdict, EquisatVerdict::NotEquisaturated);
  EXPECT_EQ(r.per_t[0].profile.distinct_exponents, std::vector<Rat>{make_rat(3, 2)});
  EXPECT_EQ(r.per_t[1].profile.distinct_exponents, std::vector<Rat>{Rat(1)});
}

TEST(Equisaturation, CollisionAwayFromZero) {
  // Fibers are nodes except the unsampled cusp at t = 1, where the
  // discriminant root x = 1 - t meets x = 0.
  auto r = equisaturation_check(fam("y^2 - x^3 - (t - 1)*x^2", {{0, 1}, {1, 2}, {2, 1}}));
  EXPECT_EQ(r.verdict, EquisatVerdict::NotEquisaturated);
  ASSERT_TRUE(r.witness_t.has_value());
  EXPECT_EQ(*r.witness_t, Rat(1));
  ASSERT_TRUE(r.witness_fiber.has_value());
  EXPECT_EQ(r.witness_fiber->profile.distinct_exponents, std::vector<Rat>{make_rat(3, 2)});
  ASSERT_TRUE(r.contrast_t.has_value());
}

TEST(Equisaturation, RequiresZeroSample) {
  EXPECT_THROW(equisaturation_check(fam("y^2 - x^3", {{1, 1}})), Error);
}

TEST(Equisaturation, NonReducedFiber) {
  try {
    equisaturation_check(fam("y^2 - t*x^3", {{0, 1}, {1, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FiberNotReduced);
  }
}

TEST(FamilyProperty, ProductFamiliesAreEquisaturated) {
  for (const char* f : {"y^2 - x^3", "y*(y - x)", "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7", "y^3 - x^5", "y - x^2"}) {
    auto r = equisaturation_check(fam(f, {{0, 1}, {-1, 3}, {1, 2}, {3, 1}}));
    EXPECT_EQ(r.verdict, EquisatVerdict::Equisaturated) << f;
  }
}

TEST(FamilyProperty, EquisaturatedFamilyProfilesMatchZeroFiber) {
  // Cusps y^2 = (1 + t) x^3 stay cusps for t > -1.
  auto r = equisaturation_check(fam("y^2 - (1 + t)*x^3", {{0, 1}, {1, 2}, {3, 1}}));
  EXPECT_EQ(r.verdict, EquisatVerdict::Equisaturated);
  for (const auto& f : r.per_t) {
    auto direct = saturation_profile(make_y_regular(parse_bipoly("y^2 - x^3")).g);
    EXPECT_EQ(f.profile.distinct_exponents, direct.distinct_exponents);
  }
}

TEST(FamilyProperty, ReparametrizationInvariance) {
  struct Case {
    std::string f;
    std::vector<long> ts;
  };
  std::vector<Case> cases{{"y^2 - x^2*(x - t)", {0, 1, 2}}, {"y^2 - x^3", {0, 1, 3}}, {"y^2 - (1 + t)*x^3", {0, 1, 2}}};
  for (const auto& c : cases) {
    FamilyCurve F{parse_tripoly(c.f), {}};
    for (long t : c.ts) F.t_range.push_back(Rat(t));
    auto base = equisaturation_check(F).verdict;
    for (long k : {2L, -3L}) {
      // F(x, y, k t) sampled at t / k sees the same fibers.
      TriPoly G = F.poly.substitute({TriPoly::variable(0), TriPoly::variable(1), TriPoly::variable(2).scaled(Rat(k))});
      FamilyCurve H{G, {}};
      for (const auto& t : F.t_range) H.t_range.push_back(t / Rat(k));
      EXPECT_EQ(equisaturation_check(H).verdict, base) << c.f << " k=" << k;
    }
  }
}
