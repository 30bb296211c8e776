#include <gtest/gtest.h>

#include <sstream>

#include "agchull/matrix.hpp"
#include "agchull/poly.hpp"
#include "test_util.hpp"

using namespace agchull;

namespace {

Poly random_poly(const FieldPtr& f, int deg, std::mt19937_64& rng) {
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = testutil::random_elem(*f, rng);
  if (c.back().v == 0) c.back() = f->one();
  return Poly(f, c);
}

Poly product(const std::vector<Factor>& fs, const FieldPtr& f) {
  Poly p = Poly::constant(f, f->one());
  for (const auto& x : fs) p = p * pow(x.poly, x.multiplicity);
  return p;
}

}  // namespace

TEST(Poly, DegreeAndDivision) {
  std::mt19937_64 rng(3);
  for (int q : testutil::kFieldOrders) {
    auto f = make_field_of_order(q);
    for (int i = 0; i < 50; ++i) {
      auto a = random_poly(f, i % 6, rng), b = random_poly(f, 1 + i % 4, rng);
      EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
      auto [quot, rem] = divmod(a, b);
      EXPECT_EQ(quot * b + rem, a);
      EXPECT_LT(rem.degree(), b.degree());
    }
  }
  EXPECT_EQ(Poly(make_field(2, 1)).degree(), -1);
}

TEST(Poly, SquareFreeAndDerivative) {
  auto f = make_field(3, 2);
  auto x = Poly::monomial(f, 1, f->one());
  auto one = Poly::constant(f, f->one());
  EXPECT_TRUE(is_square_free(x * (x - one)));
  EXPECT_FALSE(is_square_free(x * x * (x - one)));
  EXPECT_EQ(derivative(pow(x, 3)), Poly(f));  // characteristic 3
  EXPECT_EQ(root_multiplicity(pow(x - one, 2) * x, f->one()), 2);
}

TEST(Factor, ThreeRootsOfCubicOverGF9) {
  auto f = make_field(3, 2);
  auto y = Poly::monomial(f, 1, f->one());
  auto fs = factor_univariate(pow(y, 3) + y);
  ASSERT_EQ(fs.size(), 3u);
  for (const auto& x : fs) {
    EXPECT_EQ(x.poly.degree(), 1);
    EXPECT_EQ(x.multiplicity, 1);
  }
  // the non-zero roots square to -1
  for (const auto& x : fs) {
    const Elem r = f->neg(x.poly.coeff(0));
    if (r.v != 0) EXPECT_EQ(f->mul(r, r), f->neg(f->one()));
  }
}

TEST(Factor, ArtinSchreierQuadraticOverGF8) {
  auto f = make_field(2, 3);
  for (auto c : f->elements()) {
    if (f->absolute_trace(c) != 1) continue;
    auto p = Poly(f, {c, f->one(), f->one()});
    auto fs = factor_univariate(p);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].poly.degree(), 2);
    for (auto x : f->elements()) EXPECT_NE(p(x).v, 0u);
  }
}

TEST(Factor, RepeatedRoot) {
  for (int q : {2, 5, 9}) {
    auto f = make_field_of_order(q);
    auto p = pow(Poly::linear(f, f->one()), 2);
    auto fs = factor_univariate(p);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].poly, Poly::linear(f, f->one()));
    EXPECT_EQ(fs[0].multiplicity, 2);
  }
}

TEST(Factor, ReassemblesRandomPolynomials) {
  std::mt19937_64 rng(5);
  for (int q : testutil::kFieldOrders) {
    auto f = make_field_of_order(q);
    for (int i = 0; i < 40; ++i) {
      auto p = monic(random_poly(f, 1 + i % 8, rng));
      auto fs = factor_univariate(p);
      EXPECT_EQ(product(fs, f), p);
      for (const auto& x : fs) EXPECT_TRUE(is_irreducible(x.poly));
    }
  }
}

TEST(Matrix, RankExamples) {
  auto f = make_field(5, 1);
  EXPECT_EQ(matrix_rank(Matrix::identity(f, 4)), 4u);
  EXPECT_EQ(matrix_rank(Matrix(f, 3, 5)), 0u);
  auto m = Matrix::from_rows(f, {{Elem{1}, Elem{2}, Elem{3}, Elem{4}}, {Elem{2}, Elem{4}, Elem{1}, Elem{3}}}, 4);
  EXPECT_EQ(matrix_rank(m), 1u);
}

TEST(Matrix, KernelExamples) {
  auto f2 = make_field(2, 1);
  EXPECT_EQ(kernel_basis(Matrix::identity(f2, 3)).rows(), 0u);
  auto k = kernel_basis(Matrix::from_rows(f2, {{f2->one(), f2->one()}}, 2));
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_EQ(k.row(0), (std::vector<Elem>{f2->one(), f2->one()}));
  auto z = kernel_basis(Matrix(f2, 2, 4));
  EXPECT_EQ(z.rows(), 4u);
  EXPECT_EQ(matrix_rank(z), 4u);
}

TEST(Matrix, RandomRankNullityAndIdempotentRref) {
  std::mt19937_64 rng(17);
  for (int q : testutil::kFieldOrders) {
    auto f = make_field_of_order(q);
    for (int i = 0; i < 200; ++i) {
      const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 9;
      auto m = testutil::random_matrix(f, r, c, rng);
      if (i % 3 == 0 && r > 1)
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = f->add(m(0, j), m(r - 2, j));
      const auto rank = matrix_rank(m);
      EXPECT_LE(rank, std::min(r, c));
      const auto k = kernel_basis(m);
      EXPECT_EQ(rank + k.rows(), c);
      EXPECT_TRUE(is_zero(m * transpose(k)));
      const auto e = row_reduce(m);
      EXPECT_EQ(row_reduce(e.rref).rref, e.rref);
    }
  }
}

TEST(Matrix, IntersectionExamples) {
  auto f = make_field(3, 1);
  auto e1 = Matrix::from_rows(f, {{f->one(), f->zero()}}, 2);
  auto e2 = Matrix::from_rows(f, {{f->zero(), f->one()}}, 2);
  EXPECT_EQ(rowspace_intersect(e1, e2).rows(), 0u);
  std::mt19937_64 rng(2);
  auto v = testutil::random_matrix(f, 3, 6, rng);
  EXPECT_EQ(rowspace_intersect(v, v).rows(), matrix_rank(v));
}

TEST(Matrix, RandomIntersections) {
  std::mt19937_64 rng(23);
  for (int q : testutil::kFieldOrders) {
    auto f = make_field_of_order(q);
    for (int i = 0; i < 60; ++i) {
      const std::size_t c = 2 + rng() % 7;
      auto a = testutil::random_matrix(f, 1 + rng() % c, c, rng);
      auto b = testutil::random_matrix(f, 1 + rng() % c, c, rng);
      if (i % 2 == 0) b.append_row(a.row(0));
      const auto ab = rowspace_intersect(a, b), ba = rowspace_intersect(b, a);
      EXPECT_EQ(ab.rows(), matrix_rank(a) + matrix_rank(b) - matrix_rank(stack(a, b)));
      EXPECT_EQ(ab.rows(), ba.rows());
      EXPECT_TRUE(rowspace_contains(a, ab));
      EXPECT_TRUE(rowspace_contains(b, ab));
    }
  }
}

TEST(Matrix, RowspaceEquality) {
  std::mt19937_64 rng(9);
  auto f = make_field(2, 2);
  auto a = testutil::random_matrix(f, 3, 6, rng);
  Matrix perm(f, 0, 6);
  perm.append_row(a.row(2));
  perm.append_row(a.row(0));
  perm.append_row(a.row(1));
  EXPECT_TRUE(rowspace_equal(a, perm));
  Matrix m(f, 3, 3);
  do {
    m = testutil::random_matrix(f, 3, 3, rng);
  } while (matrix_rank(m) < 3);
  EXPECT_TRUE(rowspace_equal(a, m * a));
  auto bigger = a;
  std::vector<Elem> extra(6, f->zero());
  do {
    for (auto& x : extra) x = testutil::random_elem(*f, rng);
  } while (in_rowspace(row_reduce(a), extra));
  bigger.append_row(extra);
  EXPECT_FALSE(rowspace_equal(a, bigger));
}

TEST(Matrix, TextRoundTrip) {
  std::mt19937_64 rng(4);
  auto f = make_field(3, 2);
  auto m = testutil::random_matrix(f, 3, 5, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_EQ(ss.str().substr(0, 6), "9 5 3\n");
  EXPECT_EQ(read_matrix(ss), m);
}
