#include <gtest/gtest.h>

#include "satcurve/parse.hpp"
#include "satcurve/puiseux.hpp"

using namespace satcurve;

namespace {

std::vector<PuiseuxBranch> expand(const std::string& s, long num, long den = 1) {
  return puiseux_expand(parse_bipoly(s), make_rat(num, den));
}

Rat coeff_rat(const PuiseuxBranch& b, const Rat& e) {
  auto it = b.terms.find(e);
  if (it == b.terms.end()) return 0;
  EXPECT_TRUE(it->second.is_rational());
  return it->second.rational();
}

}  // namespace

TEST(Puiseux, Cusp) {
  auto br = expand("y^2 - x^3", 3);
  ASSERT_EQ(br.size(), 1u);
  EXPECT_EQ(br[0].ramification_index, 2u);
  ASSERT_EQ(br[0].terms.size(), 1u);
  EXPECT_EQ(coeff_rat(br[0], make_rat(3, 2)), Rat(1));
  EXPECT_GE(br[0].truncation_order, Rat(3));
}

TEST(Puiseux, TwoLines) {
  auto br = expand("y*(y - x)", 2);
  ASSERT_EQ(br.size(), 2u);
  std::vector<std::size_t> sizes{br[0].terms.size(), br[1].terms.size()};
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{0, 1}));
  for (auto& b : br) EXPECT_EQ(b.ramification_index, 1u);
}

TEST(Puiseux, QuarticWithTwoCharacteristicExponents) {
  auto br = expand("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7", 2);
  ASSERT_EQ(br.size(), 1u);
  EXPECT_EQ(br[0].ramification_index, 4u);
  EXPECT_EQ(br[0].terms.size(), 2u);
  EXPECT_EQ(coeff_rat(br[0], make_rat(3, 2)), Rat(1));
  EXPECT_EQ(coeff_rat(br[0], make_rat(7, 4)), Rat(1));
  auto cd = characteristic_exponents(br[0]);
  EXPECT_EQ(cd.char_exponents, (std::vector<Rat>{make_rat(3, 2), make_rat(7, 4)}));
  EXPECT_EQ(cd.ladder, (std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {7, 2}}));
}

TEST(Puiseux, IrrationalCoefficients) {
  auto br = expand("(y^2 - 2*x^3)*(y^2 - 3*x^2)", 4);
  unsigned total = 0;
  for (auto& b : br) total += b.ramification_index;
  EXPECT_EQ(total, 4u);
  EXPECT_EQ(br.size(), 3u);
}

TEST(Puiseux, NonExactSeries) {
  auto br = expand("y^2 - x^3 - x^4", 5);
  ASSERT_EQ(br.size(), 1u);
  EXPECT_FALSE(br[0].exact);
  // y = x^{3/2} (1 + x)^{1/2} = x^{3/2} + x^{5/2}/2 - x^{7/2}/8 + ...
  EXPECT_EQ(coeff_rat(br[0], make_rat(5, 2)), make_rat(1, 2));
  EXPECT_EQ(coeff_rat(br[0], make_rat(7, 2)), make_rat(-1, 8));
}
