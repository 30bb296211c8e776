#include <gtest/gtest.h>

#include "agchull/conorm_codes.hpp"
#include "test_util.hpp"

using namespace agchull;

TEST(RationalNumber, Arithmetic) {
  EXPECT_EQ(Rational(6, -4).to_string(), "-3/2");
  EXPECT_EQ(Rational(10, 3) - Rational(1, 3), Rational(3));
  EXPECT_TRUE(Rational(4) > Rational(-2) + Rational(10, 3));
  EXPECT_THROW(Rational(1, 0), Error);
}

TEST(ConormCode, HermitianZeroFour) {
  auto h = Extension::hermitian(3);
  auto inst = build_conorm_code(h->base_field(), 8, 0, 4, h);
  EXPECT_EQ(inst.code.length(), 24u);
  EXPECT_EQ(divisor_degree(inst.g_prime), 12);
  EXPECT_EQ(inst.code.dimension(), 10u);
  EXPECT_EQ(inst.genus, 3);
  EXPECT_EQ(inst.sum_places_above, 24);
  for (const auto& [p, c] : inst.code.D.terms()) {
    EXPECT_EQ(c, 1);
    EXPECT_EQ(inst.g_prime.coeff(p), 0);
  }
  auto eq5 = check_eq5(inst);
  EXPECT_EQ(eq5.necessary_lhs, Rational(0));
  EXPECT_EQ(eq5.deg_diff, 10);
  EXPECT_FALSE(eq5.necessary_pass);
}

TEST(ConormCode, EllipticOverGF4) {
  auto f = make_field(2, 2);
  auto e = Extension::elliptic_as(f);
  auto inst = build_conorm_code(f, 3, 0, 1, e);
  EXPECT_EQ(inst.code.length(), 6u);
  EXPECT_EQ(divisor_degree(inst.g_prime), 2);
  EXPECT_EQ(inst.code.dimension(), 2u);
  auto eq5 = check_eq5(inst);
  EXPECT_EQ(eq5.necessary_lhs, Rational(0));
  EXPECT_EQ(eq5.deg_diff, 4);
  EXPECT_FALSE(eq5.necessary_pass);
}

TEST(ConormCode, TrivialKummerReproducesTheBaseCode) {
  auto f = make_field(3, 2);
  auto e = Extension::kummer(Poly::linear(f, f->zero()), 1);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 4}, {0, 4}, {-1, 3}, {0, 0}}) {
    auto inst = build_conorm_code(f, 8, a, b, e);
    EXPECT_EQ(inst.code.generator, inst.base.generator);
    EXPECT_TRUE(check_eq5(inst).empirical_equal);
  }
}

TEST(ConormCode, RejectsInertEvaluationPlaces) {
  auto f = make_field(2, 3);
  auto e = Extension::elliptic_as(f);
  EXPECT_THROW(build_conorm_code(f, 7, 0, 1, e), Error);
}

TEST(ConstantExtension, ColumnRepetition) {
  auto f = make_field(3, 2);
  auto c = build_cab(f, 8, 1, 4);
  auto same = build_constant_ext_code(c, 1);
  EXPECT_EQ(same.generator, c.generator);
  auto c2 = build_constant_ext_code(c, 2);
  EXPECT_EQ(c2.length(), 16u);
  EXPECT_EQ(c2.dimension(), 6u);
  EXPECT_EQ(hull_dim_rank(c2), 2u);
  EXPECT_THROW(build_constant_ext_code(c, 3), Error);
}

TEST(Predictions, HermitianZeroFour) {
  auto h = Extension::hermitian(3);
  auto ram = different_divisor(*h);
  HullContext cx;
  cx.n = 8;
  cx.deg_g = 4;
  cx.deg_gcd = 2;
  cx.gcd_non_special = true;
  cx.m = 3;
  cx.t = 1;
  cx.deg_diff = 10;
  cx.ramification = &ram;
  cx.galois = true;
  cx.eq3 = true;
  cx.eq5 = false;
  cx.q = 9;
  auto preds = predict_hull(cx, 3);
  const Prediction* eq = nullptr;
  for (const auto& p : preds)
    if (p.key() == "thm41_eq") eq = &p;
  ASSERT_NE(eq, nullptr);
  EXPECT_EQ(eq->value, Rational(4));
  EXPECT_TRUE(eq->structurally_applicable());
  EXPECT_FALSE(eq->applicable());  // the duality assumption fails here
  for (const auto& p : preds)
    if (p.source == "cor42" || p.source == "cor43") EXPECT_FALSE(p.structurally_applicable());  // wild
}

TEST(Predictions, IdentityExtensionGivesBaseHull) {
  HullContext cx;
  cx.n = 8;
  cx.deg_g = 5;
  cx.deg_gcd = 1;
  cx.gcd_non_special = true;
  cx.q = 9;
  cx.eq3 = cx.eq5 = true;
  for (const auto& p : predict_hull(cx, 2))
    if (p.source == "thm41" || p.source == "thm32") EXPECT_EQ(p.value, Rational(2)) << p.key();
}

TEST(Predictions, TameKummerQuintic) {
  auto f9 = make_field(3, 2);
  Poly q = Poly::constant(f9, f9->one());
  for (std::uint32_t r : {0u, 1u, 2u, 3u, 4u}) q = q * Poly::linear(f9, Elem{r});
  auto e = Extension::hyperelliptic_kummer(q);
  auto ram = different_divisor(*e);
  HullContext cx;
  cx.n = 8;
  cx.deg_g = 4;
  cx.deg_gcd = 2;
  cx.gcd_non_special = true;
  cx.m = 2;
  cx.deg_diff = ram.different_degree;
  cx.ramification = &ram;
  cx.galois = true;
  cx.q = 9;
  for (const auto& p : predict_hull(cx, 5)) {
    if (p.key() == "thm41_lb") EXPECT_EQ(p.value, Rational(2 * 5 - 3));
    if (p.source == "cor42" || p.source == "cor43") EXPECT_EQ(p.value, Rational(7)) << p.key();
  }
  EXPECT_EQ(predict_formula(FormulaFamily::Hyperelliptic, 8, 0, 4, 5, 5).value, Rational(7));
}

TEST(Formulas, Examples) {
  auto p = predict_formula(FormulaFamily::Prop51, 8, 1, 4, 0);
  EXPECT_EQ(p.value, Rational(2));
  EXPECT_EQ(predict_formula(FormulaFamily::Prop51, 8, -1, 3, 0).value, Rational(3));
  auto h = predict_formula(FormulaFamily::Hermitian, 8, 0, 4, 3, 3);
  EXPECT_EQ(h.value, Rational(4));
  EXPECT_TRUE(h.structurally_applicable());
  EXPECT_EQ(cab_regime(8, 0, 4), 1);
  EXPECT_EQ(cab_regime(8, -1, 3), 4);
  auto e = predict_formula(FormulaFamily::Elliptic, 8, 1, 3, 2);
  EXPECT_EQ(e.value, Rational(2));
  EXPECT_TRUE(e.structurally_applicable());
  EXPECT_FALSE(predict_formula(FormulaFamily::Elliptic, 8, 0, 1, 1).structurally_applicable());
  EXPECT_THROW(predict_formula(FormulaFamily::Prop51, 8, 4, 4, 0), Error);
}

TEST(Gcd, CoefficientsMatchDivisorGcd) {
  auto f = make_field(3, 2);
  for (int n : {2, 4, 8})
    for (int a = -n; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        if (cab_window_violation(n, a, b)) continue;
        auto [g0, g1] = cab_gcd_coefficients(n, a, b);
        EXPECT_EQ(divisor_gcd(two_point_divisor(*f, a, b), dual_divisor_cab(*f, n, a, b)), two_point_divisor(*f, g0, g1));
      }
}
