#include <gtest/gtest.h>

#include "satcurve/parse.hpp"
#include "satcurve/saturation.hpp"

using namespace satcurve;

namespace {

const char* kQuartic = "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7";

BiPoly P(const std::string& s) { return parse_bipoly(s); }

PuiseuxBranch fake(unsigned id, unsigned n) {
  PuiseuxBranch b;
  b.branch_id = id;
  b.ramification_index = n;
  return b;
}

std::vector<Rat> rats(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rat> out;
  for (auto [a, b] : v) out.push_back(make_rat(a, b));
  return out;
}

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c{
      "y^2 - x^3",
      "y^2 - x^5",
      "y^3 - x^4",
      "y^3 - x^5",
      "y*(y - x)",
      "y^2 - x^4",
      "(y^2 - x^3)*(y^2 - 2*x^3)",
      "y*(y - x)*(y + x)",
      kQuartic,
      "(y^2 - x^3)*(y - x)",
      "y^3 - x^3",
      "y^2 - x^2 - x^3",
      "(y - x^2)*(y^2 - x^5)",
  };
  return c;
}

}  // namespace

TEST(Determination, ClassCounts) {
  EXPECT_EQ(determination_classes(fake(0, 2), fake(1, 4)).size(), 2u);
  EXPECT_EQ(determination_classes(fake(0, 1), fake(1, 1)).size(), 1u);
  EXPECT_EQ(determination_classes(fake(0, 6), fake(1, 4)).size(), 2u);
  EXPECT_EQ(determination_classes(fake(0, 4), fake(0, 4)), (std::vector<unsigned>{1, 2, 3}));
}

TEST(Contact, ParabolasOfOppositeSign) {
  auto br = puiseux_expand(P("y^2 - x^4"), Rat(5));
  ASSERT_EQ(br.size(), 2u);
  auto t = contact_exponents(br[0], br[1]);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].exponent, Rat(2));
  EXPECT_FALSE(t[0].self_contact);
}

TEST(Contact, TransverseLines) {
  auto br = puiseux_expand(P("y*(y - x)"), Rat(3));
  auto t = contact_exponents(br[0], br[1]);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].exponent, Rat(1));
  EXPECT_EQ(t[0].mu, 1u);
}

TEST(Contact, QuarticSelfContacts) {
  // With s = x^(1/4), y = s^6 + s^7 + ...; s -> i^k s maps this to
  // (-1)^k s^6 + i^(7k) s^7, so k = 1, 3 differ at s^6 and k = 2 at s^7.
  auto br = puiseux_expand(P(kQuartic), Rat(10));
  ASSERT_EQ(br.size(), 1u);
  auto t = contact_exponents(br[0], br[0]);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].exponent, make_rat(3, 2));
  EXPECT_EQ(t[1].exponent, make_rat(7, 4));
  EXPECT_EQ(t[2].exponent, make_rat(3, 2));
  EXPECT_EQ(t[1].m, 4u);
  EXPECT_EQ(t[1].mu, 7u);
}

TEST(Profile, Cusp) {
  auto p = saturation_profile(P("y^2 - x^3"));
  EXPECT_EQ(p.distinct_exponents, rats({{3, 2}}));
  EXPECT_EQ(p.types.size(), 1u);
}

TEST(Profile, Quartic) {
  auto p = saturation_profile(P(kQuartic));
  EXPECT_EQ(p.distinct_exponents, rats({{3, 2}, {7, 4}}));
}

TEST(Profile, ThreeLines) {
  auto p = saturation_profile(P("y*(y - x)*(y + x)"));
  ASSERT_EQ(p.types.size(), 3u);
  for (const auto& t : p.types) {
    EXPECT_EQ(t.exponent, Rat(1));
    EXPECT_FALSE(t.self_contact);
  }
  EXPECT_EQ(p.distinct_exponents, rats({{1, 1}}));
}

TEST(Profile, HashIsDeterministicAndScaleFree) {
  auto a = saturation_profile(P("y^2 - x^3"));
  auto b = saturation_profile(P("2*y^2 - 2*x^3"));
  EXPECT_EQ(a.curve_hash, b.curve_hash);
  EXPECT_EQ(a.curve_hash.size(), 16u);
  EXPECT_NE(a.curve_hash, saturation_profile(P("y^2 - x^5")).curve_hash);
}

TEST(Bounded, Examples) {
  auto r = is_bounded_fraction(P("y"), P("x"), P("y^2 - x^5"));
  EXPECT_TRUE(r.bounded);
  ASSERT_EQ(r.orders.size(), 1u);
  EXPECT_EQ(*r.orders[0], make_rat(3, 2));

  EXPECT_TRUE(is_bounded_fraction(P("1"), P("1"), P("y^2 - x^3")).bounded);

  auto u = is_bounded_fraction(P("y"), P("x^2"), P("y^2 - x^3"));
  EXPECT_FALSE(u.bounded);
  EXPECT_EQ(*u.orders[0], make_rat(-1, 2));
}

TEST(Bounded, DenominatorVanishing) {
  EXPECT_THROW(is_bounded_fraction(P("1"), P("y"), P("y*(y - x)")), Error);
  try {
    is_bounded_fraction(P("1"), P("y - x"), P("y*(y - x)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DenominatorVanishesOnBranch);
  }
}

TEST(Lipschitz, YOverXOnA4) {
  auto r = is_lipschitz_fraction(P("y"), P("x"), P("y^2 - x^5"));
  EXPECT_EQ(r.verdict, Verdict::BoundedNotLipschitz);
  ASSERT_EQ(r.per_type.size(), 1u);
  EXPECT_EQ(r.per_type[0].type.exponent, make_rat(5, 2));
  ASSERT_TRUE(r.per_type[0].nu.has_value());
  EXPECT_EQ(*r.per_type[0].nu, make_rat(3, 2));
  EXPECT_FALSE(r.per_type[0].pass);
}

TEST(Lipschitz, CoordinateFunction) {
  for (const auto& c : corpus()) {
    auto r = is_lipschitz_fraction(P("x"), P("1"), P(c));
    EXPECT_EQ(r.verdict, Verdict::Lipschitz) << c;
    for (const auto& t : r.per_type) EXPECT_FALSE(t.nu.has_value()) << c;
  }
}

TEST(Lipschitz, QuarticSquareRatio) {
  auto r = is_lipschitz_fraction(P("y^2"), P("x^2"), P(kQuartic));
  EXPECT_EQ(r.verdict, Verdict::BoundedNotLipschitz);
  ASSERT_EQ(r.per_type.size(), 3u);
  ASSERT_TRUE(r.per_type[0].nu.has_value());
  EXPECT_EQ(r.per_type[0].type.class_rep, 1u);
  EXPECT_EQ(*r.per_type[0].nu, make_rat(5, 4));
  EXPECT_EQ(*r.boundedness[0], Rat(1));
}

TEST(Lipschitz, UnboundedAndUndefined) {
  EXPECT_EQ(is_lipschitz_fraction(P("y"), P("x^2"), P("y^2 - x^3")).verdict, Verdict::Unbounded);
  auto r = is_lipschitz_fraction(P("1"), P("y"), P("y*(y - x)"));
  EXPECT_EQ(r.verdict, Verdict::Undefined);
  ASSERT_TRUE(r.undefined_branch.has_value());
}

TEST(Lipschitz, DenominatorSharingFarComponent) {
  // q vanishes on y = 1 + x, a component away from the origin.
  auto r = is_lipschitz_fraction(P("y"), P("(y - 1 - x)*x"), P("(y - 1 - x)*(y^2 - x^5)"));
  EXPECT_NE(r.verdict, Verdict::Undefined);
}

TEST(Lipschitz, CuspFractions) {
  // y/x = x^(1/2) on the cusp y^2 = x^3: Delta h = 2x^(1/2) < 3/2.
  EXPECT_EQ(is_lipschitz_fraction(P("y"), P("x"), P("y^2 - x^3")).verdict, Verdict::BoundedNotLipschitz);
  // y^2/x = x^2: single-valued.
  auto r = is_lipschitz_fraction(P("y^2"), P("x"), P("y^2 - x^3"));
  EXPECT_EQ(r.verdict, Verdict::Lipschitz);
  EXPECT_FALSE(r.difference_bound.has_value());
  // y^3/x^3 = x^(3/2) on the cusp: Delta h of order 3/2 = mu/m.
  EXPECT_EQ(is_lipschitz_fraction(P("y^3"), P("x^3"), P("y^2 - x^3")).verdict, Verdict::Lipschitz);
}

TEST(IntegralClosure, Examples) {
  auto a = integral_closure_member(P("y"), P("1"), {P("x")}, P("y^2 - x^3"));
  EXPECT_TRUE(a.member);
  EXPECT_EQ(*a.margin[0], make_rat(1, 2));
  EXPECT_TRUE(integral_closure_member(P("x"), P("1"), {P("x")}, P("y^2 - x^3")).member);
  auto c = integral_closure_member(P("x"), P("1"), {P("y")}, P("y^2 - x^3"));
  EXPECT_FALSE(c.member);
  EXPECT_EQ(c.min_generator_order[0], make_rat(3, 2));
  EXPECT_THROW(integral_closure_member(P("x"), P("1"), {}, P("y^2 - x^3")), Error);
  EXPECT_THROW(integral_closure_member(P("x"), P("1"), {P("0")}, P("y^2 - x^3")), Error);
}

TEST(TangentPattern, Examples) {
  auto parab = puiseux_expand(P("y^2 - x^4"), Rat(5));
  EXPECT_EQ(prop_4_5_expected(parab[0], parab[1]), (Prop45{1, 1}));
  auto lines = puiseux_expand(P("y*(y - x)"), Rat(3));
  EXPECT_EQ(prop_4_5_expected(lines[0], lines[1]), (Prop45{1, 1}));
  auto cusps = puiseux_expand(P("(y^2 - x^3)*(y^2 - 2*x^3)"), Rat(8));
  ASSERT_EQ(cusps.size(), 2u);
  EXPECT_EQ(prop_4_5_expected(cusps[0], cusps[1]), (Prop45{2, 1}));
  EXPECT_EQ(prop_4_5_observed(contact_exponents(cusps[0], cusps[1])), (Prop45{2, 1}));
}

TEST(TangentPattern, ObservedMatchesExpectedOnCorpus) {
  for (const auto& c : corpus()) {
    auto prof = saturation_profile(P(c));
    const auto& br = prof.branches;
    for (std::size_t i = 0; i < br.size(); ++i)
      for (std::size_t j = i + 1; j < br.size(); ++j)
        EXPECT_EQ(prop_4_5_observed(contact_exponents(br[i], br[j])), prop_4_5_expected(br[i], br[j])) << c;
  }
}

TEST(ShearStability, Examples) {
  auto a = profile_shear_stability(P("y^2 - x^3"), 3, 7);
  EXPECT_TRUE(a.stable);
  EXPECT_EQ(a.trials.size(), 3u);
  for (const auto& t : a.trials) EXPECT_EQ(t.distinct_exponents, rats({{3, 2}}));
  auto b = profile_shear_stability(P("y*(y - x)"), 3, 7);
  EXPECT_TRUE(b.stable);
  EXPECT_EQ(b.base_distinct, rats({{1, 1}}));
  auto c = profile_shear_stability(P("y - x^2"), 3, 7);
  EXPECT_TRUE(c.stable);
  EXPECT_TRUE(c.base_distinct.empty());
}

TEST(ShearStability, NonRegularInput) {
  auto r = profile_shear_stability(P("x^2 - y^3"), 2, 11);
  EXPECT_TRUE(r.stable);
  EXPECT_EQ(r.base_distinct, rats({{3, 2}}));
}

// ------------------------------------------------------------ properties ---

TEST(SaturationProperty, ClassCountLaw) {
  for (const auto& c : corpus()) {
    auto prof = saturation_profile(P(c));
    for (const auto& a : prof.branches)
      for (const auto& b : prof.branches) {
        if (a.branch_id >= b.branch_id) continue;
        EXPECT_EQ(determination_classes(a, b).size(), std::gcd(a.ramification_index, b.ramification_index)) << c;
        EXPECT_EQ(prof.per_pair_class_count.at({a.branch_id, b.branch_id}),
                  std::gcd(a.ramification_index, b.ramification_index));
      }
    for (const auto& a : prof.branches)
      EXPECT_EQ(prof.per_pair_class_count.at({a.branch_id, a.branch_id}), a.ramification_index - 1);
  }
}

TEST(SaturationProperty, IrreducibleProfileLaw) {
  for (const char* c : {"y^2 - x^3", "y^2 - x^5", "y^3 - x^4", "y^3 - x^5", kQuartic, "y^3 - x^5 + x^4*y"}) {
    auto prof = saturation_profile(P(c));
    ASSERT_EQ(prof.branches.size(), 1u) << c;
    EXPECT_EQ(prof.distinct_exponents, characteristic_exponents(prof.branches[0]).char_exponents) << c;
  }
}

TEST(SaturationProperty, ExponentBoundsAndTangents) {
  for (const auto& c : corpus()) {
    auto prof = saturation_profile(P(c));
    for (const auto& t : prof.types) {
      EXPECT_GE(t.exponent, Rat(1)) << c;
      EXPECT_LE(t.exponent, Rat(prof.discriminant_order)) << c;
      const auto& a = prof.branches[t.alpha];
      const auto& b = prof.branches[t.alpha_prime];
      // Tangent coefficients are invariant under determinations.
      bool same_tangent = phased_equal(tangent_slope(a), Rat(0), tangent_slope(b), Rat(0));
      EXPECT_EQ(t.exponent == 1, !same_tangent) << c;
    }
  }
}

TEST(SaturationProperty, ScaleEquivariance) {
  for (const auto& c : corpus()) {
    BiPoly f = P(c);
    auto base = saturation_profile(f).distinct_exponents;
    for (long k : {2L, -3L}) {
      BiPoly g = f.substitute({X().scaled(Rat(k)), Y().scaled(Rat(k))});
      EXPECT_EQ(saturation_profile(g).distinct_exponents, base) << c << " scaled by " << k;
    }
  }
}

TEST(SaturationProperty, PolynomialsAreLipschitz) {
  for (const char* h : {"y", "x*y + y^3", "y^2 - 7*x", "x^3*y^2 + 1"})
    for (const auto& c : corpus()) {
      auto r = is_lipschitz_fraction(P(h), P("1"), P(c));
      EXPECT_EQ(r.verdict, Verdict::Lipschitz) << h << " on " << c;
    }
}

TEST(SaturationProperty, AlgebraClosure) {
  struct Case {
    std::string p, q;
  };
  const std::string f = "y^2 - x^3";
  // Lipschitz fractions on the cusp: y^3/x^3 = x^(3/2), y^2/x, and y.
  std::vector<Case> lip{{"y^3", "x^3"}, {"y^2", "x"}, {"y", "1"}};
  for (const auto& a : lip) {
    ASSERT_EQ(is_lipschitz_fraction(P(a.p), P(a.q), P(f)).verdict, Verdict::Lipschitz);
    for (const auto& b : lip) {
      BiPoly sum_p = P(a.p) * P(b.q) + P(b.p) * P(a.q), den = P(a.q) * P(b.q);
      EXPECT_EQ(is_lipschitz_fraction(sum_p, den, P(f)).verdict, Verdict::Lipschitz) << a.p << " + " << b.p;
      EXPECT_EQ(is_lipschitz_fraction(P(a.p) * P(b.p), den, P(f)).verdict, Verdict::Lipschitz) << a.p << " * " << b.p;
    }
  }
}

TEST(SaturationProperty, ImplicationChain) {
  struct Case {
    std::string p, q, f;
  };
  std::vector<Case> cases{{"y", "x", "y^2 - x^5"}, {"y", "x^2", "y^2 - x^3"}, {"y^2", "x^2", kQuartic},
                          {"y^3", "x^3", "y^2 - x^3"}, {"x*y", "y - 2*x", "y*(y - x)"}, {"y", "x", "y*(y - x)"}};
  for (const auto& c : cases) {
    auto r = is_lipschitz_fraction(P(c.p), P(c.q), P(c.f));
    auto b = is_bounded_fraction(P(c.p), P(c.q), P(c.f));
    if (r.verdict == Verdict::Lipschitz) EXPECT_TRUE(b.bounded);
    if (r.verdict == Verdict::Unbounded) EXPECT_FALSE(b.bounded);
    EXPECT_EQ(b.bounded, r.verdict != Verdict::Unbounded);
  }
}

TEST(SaturationProperty, IntegralClosureMonotone) {
  std::vector<std::string> gens{"x^3", "y", "x*y", "x"};  // x^3 keeps every branch covered
  for (const auto& c : corpus()) {
    for (const char* h : {"x", "y", "x^2", "x*y"}) {
      std::vector<BiPoly> g;
      bool was_member = false;
      for (const auto& s : gens) {
        g.push_back(P(s));
        bool m = integral_closure_member(P(h), P("1"), g, P(c)).member;
        if (was_member) EXPECT_TRUE(m) << h << " on " << c;
        was_member = m;
      }
    }
  }
}
