#include <gtest/gtest.h>

#include "satcurve/bipoly_ops.hpp"
#include "satcurve/parse.hpp"
#include "satcurve/roots.hpp"

using namespace satcurve;

namespace {

QPoly qp(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long a : c) v.emplace_back(a);
  return QPoly(std::move(v));
}

}  // namespace

TEST(Parse, RoundTripsCanonicalForm) {
  BiPoly f = parse_bipoly("y^2 - x^3");
  EXPECT_EQ(to_string(f), to_string(parse_bipoly(to_string(f))));
  EXPECT_EQ(f.coeff({3, 0}), Rat(-1));
  EXPECT_EQ(f.coeff({0, 2}), Rat(1));
}

TEST(Parse, RationalCoefficientsAndParentheses) {
  BiPoly f = parse_bipoly("(x + 1/2*y)^2");
  EXPECT_EQ(f.coeff({1, 1}), Rat(1));
  EXPECT_EQ(f.coeff({0, 2}), make_rat(1, 4));
}

TEST(Parse, ReportsPosition) {
  try {
    parse_bipoly("y^2 - x^");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_EQ(e.position(), 8u);
  }
  EXPECT_THROW(parse_bipoly("y^2 - z"), Error);
  EXPECT_THROW(parse_bipoly("y + * x"), SyntaxError);
}

TEST(UPoly, GcdAndSquarefree) {
  QPoly a = qp({-1, 0, 1});        // x^2 - 1
  QPoly b = qp({1, 2, 1});         // (x+1)^2
  EXPECT_EQ(gcd(a, b), qp({1, 1}));
  EXPECT_EQ(squarefree_part(b * a), qp({-1, 0, 1}));
  auto parts = squarefree_decomposition(b * a);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], qp({-1, 1}));
  EXPECT_EQ(parts[2], qp({1, 1}));
}

TEST(UPoly, ResultantMatchesSylvester) {
  QPoly a = qp({2, -3, 0, 1});
  QPoly b = qp({-5, 1, 4});
  Rat euclid = resultant(a, b);
  Rat syl = detail::sylvester_resultant(a.coeffs(), b.coeffs());
  EXPECT_EQ(euclid, syl);
  EXPECT_EQ(resultant(b, a), syl * Rat(1));  // deg product even
  QPoly c = qp({1, 1});
  EXPECT_EQ(resultant(a, c), -resultant(c, a));
}

TEST(Bivariate, ResultantInY) {
  BiPoly f = parse_bipoly("y^2 - x^3");
  QPoly r = resultant_y(f, f.derivative(1));
  EXPECT_EQ(r, QPoly::monomial(Rat(-4), 3));
  BiPoly g = parse_bipoly("y^2 - x^5");
  EXPECT_EQ(y_discriminant(g), QPoly::monomial(Rat(-4), 5));
}

TEST(Bivariate, GcdAndSquarefreePart) {
  BiPoly f = parse_bipoly("(y - x)^2*(y + x^2)");
  BiPoly g = parse_bipoly("(y - x)*(y - 1)");
  BiPoly d = gcd(f, g);
  EXPECT_TRUE(divides(parse_bipoly("y - x"), d));
  EXPECT_EQ(d.total_degree(), 1);
  BiPoly s = squarefree_part(f);
  EXPECT_EQ(s.degree(1), 2);
  EXPECT_TRUE(divides(s, parse_bipoly("(y - x)*(y + x^2)")));
}

TEST(Trivariate, ResultantSpecializes) {
  TriPoly F = parse_tripoly("y^2 - x^2*(x - t)");
  BiPoly D = resultant_y(F, F.derivative(1));
  // Res_y(y^2 - c, 2y) = -4c with c = x^2 (x - t)
  EXPECT_EQ(D, parse_bipoly("-4*x^3 + 4*x^2*y"));  // second variable is t
}

TEST(Roots, IsolatesAndSeparates) {
  QPoly p = qp({-2, 0, 1});  // x^2 - 2
  auto roots = isolate_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  Real s2 = sqrt(Real(Rat(2), 256));
  int hits = 0;
  for (auto& r : roots) {
    Complex d = r.center - Complex(Rat(0), 256);
    if (abs(abs(r.center.re) - s2) < Real::pow2(-200, 256) && abs(r.center.im) < Real::pow2(-200, 256)) ++hits;
    EXPECT_TRUE(r.radius < Real::pow2(-100, 256));
  }
  EXPECT_EQ(hits, 2);
}

TEST(Roots, CyclotomicOrdering) {
  QPoly p = qp({-1, 0, 0, 0, 1});
  auto roots = isolate_roots(p);
  std::vector<Complex> z;
  for (auto& r : roots) z.push_back(r.center);
  std::sort(z.begin(), z.end(), canonical_before);
  EXPECT_NEAR(z[0].re.to_double(), 1.0, 1e-30);
  EXPECT_NEAR(z[1].im.to_double(), 1.0, 1e-30);
  EXPECT_NEAR(z[3].re.to_double(), -1.0, 1e-30);
}
