#include <gtest/gtest.h>

#include "agchull/divisors.hpp"
#include "test_util.hpp"

using namespace agchull;

namespace {
struct Fixture {
  FieldPtr f = make_field(3, 2);
  Place p0 = base_place(*f, f->zero());
  Place p1 = base_place(*f, f->one());
  Place inf = base_infinity(*f);
};
}  // namespace

TEST(Divisor, GcdExamples) {
  Fixture x;
  Divisor d1 = Divisor(x.p0, 1) + Divisor(x.inf, 4);
  Divisor d2 = Divisor(x.p0, -2) + Divisor(x.inf, 3);
  EXPECT_EQ(divisor_gcd(d1, d2), d2);
  EXPECT_EQ(divisor_gcd(d1, d1), d1);
  EXPECT_TRUE(divisor_gcd(Divisor(x.p0, 1), Divisor(x.inf, 1)).is_zero());
  EXPECT_TRUE(divisor_gcd(d1, d2) <= d1);
  EXPECT_TRUE(divisor_gcd(d1, d2) <= d2);
}

TEST(Divisor, Degrees) {
  Fixture x;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) EXPECT_EQ(divisor_degree(Divisor(x.p0, a) + Divisor(x.inf, b)), a + b);
  EXPECT_EQ(divisor_degree(Divisor()), 0);
  Place q;
  q.ambient = "test";
  q.kind = PlaceKind::ExtFinite;
  q.f = 2;
  q.degree = 2;
  EXPECT_EQ(divisor_degree(Divisor(q, 3)), 6);
}

TEST(Divisor, NoZeroCoefficientsAndText) {
  Fixture x;
  Divisor d = Divisor(x.p0, 2) + Divisor(x.p0, -2);
  EXPECT_TRUE(d.is_zero());
  EXPECT_EQ(d.to_string(), "0");
  EXPECT_EQ((Divisor(x.p0, -2) + Divisor(x.inf, 3)).to_string(), "-2*P(0) + 3*P(inf)");
  EXPECT_EQ((Divisor(x.p1, 1) - Divisor(x.inf, 2)).to_string(), "1*P(1) - 2*P(inf)");
}

TEST(Divisor, MixingAmbientsThrows) {
  Fixture x;
  auto other = base_place(*make_field(5, 1), Elem{0});
  Divisor d(x.p0, 1);
  EXPECT_THROW(d.add(other, 1), Error);
  EXPECT_THROW(divisor_gcd(d, Divisor(other, 1)), Error);
}

TEST(Divisor, PrincipalDivisors) {
  Fixture x;
  const auto& f = *x.f;
  EXPECT_EQ(principal_divisor_rational(f, f.one(), {{f.one(), 1}}), Divisor(x.p1, 1) - Divisor(x.inf, 1));
  // (x^2 - 1)/x
  auto d = principal_divisor_rational(f, f.one(), {{f.one(), 1}, {f.neg(f.one()), 1}, {f.zero(), -1}});
  EXPECT_EQ(d, Divisor(x.p1, 1) + Divisor(base_place(f, f.neg(f.one())), 1) - Divisor(x.p0, 1) - Divisor(x.inf, 1));
  EXPECT_EQ(divisor_degree(d), 0);
  EXPECT_TRUE(principal_divisor_rational(f, Elem{5}, {}).is_zero());
  EXPECT_THROW(principal_divisor_rational(f, f.zero(), {}), Error);
}

TEST(Divisor, AdditionLawsOnRandomTriples) {
  Fixture x;
  std::mt19937_64 rng(8);
  std::vector<Place> places = {x.inf};
  for (auto a : x.f->elements()) places.push_back(base_place(*x.f, a));
  auto rnd = [&]() {
    Divisor d;
    for (int i = 0; i < 4; ++i) d.add(places[rng() % places.size()], static_cast<int>(rng() % 9) - 4);
    return d;
  };
  for (int i = 0; i < 200; ++i) {
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(divisor_degree(a + b), divisor_degree(a) + divisor_degree(b));
    EXPECT_EQ(a - a, Divisor());
    EXPECT_EQ(2 * a, a + a);
  }
}
