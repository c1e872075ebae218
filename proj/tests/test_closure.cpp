#include <gtest/gtest.h>

#include "satcurve/parse.hpp"
#include "satcurve/saturation.hpp"
#include "support/integral_oracle.hpp"

using namespace satcurve;

namespace {

struct Instance {
  const char* curve;
  const char* num;
  const char* den;
  std::vector<const char*> gens;
};

std::vector<BiPoly> parse_all(const std::vector<const char*>& v) {
  std::vector<BiPoly> out;
  for (auto s : v) out.push_back(parse_bipoly(s));
  return out;
}

}  // namespace

TEST(IntegralOracle, FindsKnownRelations) {
  // y^2 = x^3 = x * x^2, so y satisfies h^2 - x^3 = 0 with x^3 in (x)^2.
  auto r = oracle::integral_dependence(parse_bipoly("y"), BiPoly(Rat(1)), {parse_bipoly("x")}, parse_bipoly("y^2 - x^3"));
  EXPECT_TRUE(r.found);
  EXPECT_EQ(r.k, 2u);
  auto n = oracle::integral_dependence(parse_bipoly("x"), BiPoly(Rat(1)), {parse_bipoly("y")}, parse_bipoly("y^2 - x^3"));
  EXPECT_FALSE(n.found);
}

TEST(IntegralOracle, ValuativeTestAgreesWithDependenceSearch) {
  const std::vector<Instance> cases{
      {"y^2 - x^3", "y", "1", {"x"}},
      {"y^2 - x^3", "x", "1", {"y"}},
      {"y^2 - x^3", "y^2", "x", {"x"}},
      {"y^2 - x^3", "y", "x", {"x"}},
      {"y^2 - x^3", "x", "1", {"x^2", "y"}},
      {"y^2 - x^3", "y", "1", {"x^2", "y"}},
      {"y^3 - x^4", "x", "1", {"y"}},
      {"y^3 - x^4", "y", "1", {"x"}},
      {"y^3 - x^4", "y^2", "x", {"x"}},
      {"y^3 - x^4", "x^2", "y", {"x"}},
      {"y*(y - x)", "y", "1", {"x"}},
      {"y*(y - x)", "x", "1", {"x^2", "y^2"}},
      {"y*(y - x)", "x*y + x^2", "1", {"x^2", "y^2"}},
      {"y^2 - x^5", "y", "1", {"x^2"}},
      {"y^2 - x^5", "y", "1", {"x^3"}},
      {"y^2 - x^5", "y", "x", {"x"}},
      {"y^2 - x^4", "y", "1", {"x^2"}},
      {"y^2 - x^4", "x", "1", {"y"}},
      {"y^3 - x^5", "y", "1", {"x^2"}},
      {"y^3 - x^5", "y^2", "1", {"x^3"}},
      {"y^3 - x^5", "y^2", "x", {"x^2"}},
      {"y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7", "y", "1", {"x"}},
      {"(y^2 - x^3)*(y - x)", "y", "1", {"x"}},
      {"(y^2 - x^3)*(y - x)", "x", "1", {"y"}},
      {"y^2 - x^2 - x^3", "y", "1", {"x"}},
      {"y^2 - x^2 - x^3", "y - x", "1", {"x^2"}},
      {"y^2 - x^2 - x^3", "y^2 - x^2", "1", {"x^3"}},
      {"y^2 - x^3", "y", "x^2", {"x"}},
  };
  unsigned members = 0;
  for (const auto& c : cases) {
    BiPoly f = parse_bipoly(c.curve), p = parse_bipoly(c.num), q = parse_bipoly(c.den);
    auto gens = parse_all(c.gens);
    bool valuative = integral_closure_member(p, q, gens, f).member;
    bool search = oracle::integral_dependence(p, q, gens, f).found;
    EXPECT_EQ(valuative, search) << c.curve << " : " << c.num << "/" << c.den;
    members += valuative ? 1 : 0;
  }
  EXPECT_GE(cases.size(), 20u);
  EXPECT_GT(members, 5u);
  EXPECT_LT(members, cases.size() - 5);
}
