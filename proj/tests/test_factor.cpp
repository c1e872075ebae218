#include <gtest/gtest.h>

#include "satcurve/factor.hpp"
#include "satcurve/parse.hpp"

using namespace satcurve;

namespace {

QPoly from_string(const std::string& s) {
  BiPoly f = parse_bipoly(s);
  std::vector<Rat> v(static_cast<std::size_t>(f.degree(0) + 1), Rat(0));
  for (const auto& [e, c] : f.terms()) v[e[0]] += c;
  return QPoly(std::move(v));
}

QPoly product(const std::vector<QFactor>& fs) {
  QPoly out = QPoly::constant(Rat(1));
  for (const auto& f : fs) out *= f.factor.pow(static_cast<unsigned>(f.multiplicity));
  return out;
}

}  // namespace

TEST(Factor, Cyclotomic) {
  auto fs = factor_over_q(from_string("x^12 - 1"));
  EXPECT_EQ(fs.size(), 6u);  // Phi_1, Phi_2, Phi_3, Phi_4, Phi_6, Phi_12
  EXPECT_EQ(product(fs), from_string("x^12 - 1"));
}

TEST(Factor, SwinnertonDyerIsIrreducible) {
  // Minimal polynomial of sqrt2 + sqrt3 + sqrt5: splits into linear or quadratic factors mod every prime.
  QPoly p = from_string("x^8 - 40*x^6 + 352*x^4 - 960*x^2 + 576");
  EXPECT_TRUE(is_irreducible_over_q(p));
}

TEST(Factor, RepeatedAndRationalFactors) {
  QPoly p = from_string("(2*x - 1)^3*(x^2 + 1)*x^2*(x^3 - 2)");
  auto fs = factor_over_q(p);
  ASSERT_EQ(fs.size(), 4u);
  EXPECT_EQ(product(fs).monic(), p.monic());
  for (const auto& f : fs) EXPECT_TRUE(is_irreducible_over_q(f.factor));
}

TEST(Factor, LargeCoefficients) {
  QPoly a = from_string("x^3 + 123456789*x + 987654321");
  QPoly b = from_string("x^4 - 1000003*x^2 + 77");
  auto fs = factor_over_q(a * b);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(product(fs), (a * b).monic());
}

TEST(Factor, Property_ProductReconstructs) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 30; ++trial) {
    QPoly p = QPoly::constant(Rat(1));
    int parts = 1 + trial % 3;
    for (int k = 0; k < parts; ++k) {
      std::vector<Rat> c;
      int deg = 1 + (trial + k) % 4;
      for (int i = 0; i < deg; ++i) c.emplace_back(d(rng));
      c.emplace_back(1);
      p *= QPoly(c);
    }
    auto fs = factor_over_q(p);
    EXPECT_EQ(product(fs), p.monic());
    for (const auto& f : fs) {
      // irreducible factors have no rational roots unless linear
      if (f.factor.degree() > 1) {
        for (int r = -6; r <= 6; ++r) EXPECT_NE(f.factor.eval(Rat(r)), 0);
      }
    }
  }
}
