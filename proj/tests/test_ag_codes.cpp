#include <gtest/gtest.h>

#include "agchull/ag_codes.hpp"
#include "test_util.hpp"

using namespace agchull;

TEST(Cab, NineEightOneFour) {
  auto f = make_field(3, 2);
  auto c = build_cab(f, 8, 1, 4);
  EXPECT_EQ(c.length(), 8u);
  EXPECT_EQ(c.dimension(), 6u);
  EXPECT_EQ(dual_code_matrix(c).rows(), 2u);
  EXPECT_EQ(hull_dim_rank(c), 2u);
  auto hull = hull_basis_intersect(c);
  ASSERT_EQ(hull.rows(), 2u);
  EXPECT_EQ(matrix_rank(hull), 2u);
  EXPECT_TRUE(is_zero(hull * transpose(c.generator)));
  auto cls = classify(c);
  EXPECT_EQ(cls.hull_dim, 2u);
  EXPECT_FALSE(cls.is_lcd);
  EXPECT_FALSE(cls.is_self_dual);
  EXPECT_TRUE(rowspace_equal(kernel_basis(dual_code_matrix(c)), c.generator));
}

TEST(Cab, ZeroDivisorGivesRepetitionCode) {
  auto f = make_field(3, 2);
  auto c = build_cab(f, 8, 0, 0);
  ASSERT_EQ(c.dimension(), 1u);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(c.generator(0, j), f->one());
}

// deg G = 7 < n = 8 forces an injective evaluation map, so k = l(G) = 8.
TEST(Cab, DegreeSevenGivesFullSpace) {
  auto f = make_field(3, 2);
  auto places = roots_of_unity_places(*f, 8);
  auto code = rational_code(f, places, two_point_divisor(*f, 3, 4));
  EXPECT_EQ(code.dimension(), 8u);
  EXPECT_EQ(dual_code_matrix(code).rows(), 0u);
  EXPECT_TRUE(classify(code).is_lcd);
}

TEST(Cab, DualDivisorExamples) {
  auto f = make_field(3, 2);
  EXPECT_EQ(dual_divisor_cab(*f, 8, 1, 4).to_string(), "-2*P(0) + 3*P(inf)");
  EXPECT_EQ(dual_divisor_cab(*f, 8, 0, 4).to_string(), "-1*P(0) + 3*P(inf)");
  EXPECT_EQ(dual_divisor_cab(*f, 8, -1, 3).to_string(), "4*P(inf)");
}

TEST(Cab, WindowViolationsAreNamed) {
  EXPECT_EQ(cab_window_violation(8, 4, 4).value_or(""), "a+b <= n-2");
  EXPECT_EQ(cab_window_violation(8, -5, 5).value_or(""), "b-a <= n");
  EXPECT_EQ(cab_window_violation(8, 2, 1).value_or(""), "0 <= b-a");
  EXPECT_EQ(cab_window_violation(8, -2, 1).value_or(""), "0 <= a+b");
  EXPECT_FALSE(cab_window_violation(8, 1, 4).has_value());
  EXPECT_THROW(build_cab(make_field(3, 2), 8, 4, 4), Error);
  EXPECT_THROW(build_cab(make_field(3, 2), 5, 0, 1), Error);
}

// Every C_ab: dual divisor, gcd code inside the hull, hull = l(gcd) in range, four-case formula.
TEST(Cab, ExhaustiveIdentities) {
  for (int q : {4, 5, 7, 8, 9, 11, 13, 16}) {
    auto f = make_field_of_order(q);
    for (int n = 2; n <= q - 1; ++n) {
      if ((q - 1) % n) continue;
      for (int a = -n; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
          if (cab_window_violation(n, a, b)) continue;
          auto c = build_cab(f, n, a, b);
          EXPECT_TRUE(dual_divisor_matches(f, c)) << q << " " << n << " " << a << " " << b;
          auto gcd = divisor_gcd(c.G, *c.H);
          auto gcode = rational_code(f, c.places, gcd);
          auto hull = hull_basis_intersect(c);
          if (gcode.dimension() > 0) EXPECT_TRUE(rowspace_contains(hull, gcode.generator));
          const int deg_g = a + b;
          const auto e = ell_dim_rational(f, gcd);
          if (-2 < deg_g && deg_g < n && !e.special()) EXPECT_EQ(static_cast<int>(hull.rows()), e.ell);
          EXPECT_EQ(static_cast<int>(hull.rows()), prop51_hull(n, a, b));
        }
    }
  }
}

TEST(Hull, SelfDualAndLcd) {
  auto f5 = make_field(5, 1);
  auto sd = Matrix::from_rows(f5, {{Elem{1}, Elem{2}}}, 2);
  auto c = classify(sd);
  EXPECT_TRUE(c.is_self_dual);
  EXPECT_EQ(c.hull_dim, 1u);
  EXPECT_TRUE(rowspace_equal(hull_basis_intersect(sd), sd));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto g = testutil::random_matrix(f5, 3, 6, rng);
    if (matrix_rank(g * transpose(g)) != 3) continue;
    EXPECT_EQ(hull_dim_rank(g), 0u);
    EXPECT_TRUE(classify(g).is_lcd);
    EXPECT_EQ(hull_basis_intersect(g).rows(), 0u);
  }
  // n != 2k is never self-dual
  auto g = Matrix::from_rows(f5, {{Elem{1}, Elem{2}, Elem{0}}}, 3);
  EXPECT_FALSE(classify(g).is_self_dual);
}

TEST(Hull, RandomCodes) {
  std::mt19937_64 rng(31);
  for (int q : testutil::kFieldOrders) {
    auto f = make_field_of_order(q);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = 1 + rng() % 12;
      auto raw = testutil::random_matrix(f, rng() % (n + 1), n, rng);
      auto e = row_reduce(raw);
      Matrix g(f, 0, n);
      for (std::size_t r = 0; r < e.pivots.size(); ++r) g.append_row(e.rref.row(r));
      auto dual = kernel_basis(g);
      EXPECT_EQ(hull_dim_rank(g), rowspace_intersect(g, dual).rows());
      EXPECT_EQ(hull_dim_rank(g), hull_dim_rank(dual));
      EXPECT_TRUE(rowspace_equal(kernel_basis(dual), g));
    }
  }
}

TEST(BuildCode, RejectsBadPlaces) {
  auto f = make_field(3, 2);
  auto places = roots_of_unity_places(*f, 8);
  auto G = two_point_divisor(*f, 0, 2);
  std::vector<Point> pts;
  for (const auto& p : places) pts.push_back({Elem{p.alpha}, f->zero()});
  auto with_zero = places;
  with_zero[0] = base_place(*f, f->zero());
  auto g1 = two_point_divisor(*f, 1, 2);
  EXPECT_THROW(build_ag_code(f, with_zero, pts, g1, rr_basis_rational(f, g1)), Error);
  auto bad = places;
  bad[1].degree = 2;
  EXPECT_THROW(build_ag_code(f, bad, pts, G, rr_basis_rational(f, G)), Error);
  pts.pop_back();
  EXPECT_THROW(build_ag_code(f, places, pts, G, rr_basis_rational(f, G)), Error);
}
