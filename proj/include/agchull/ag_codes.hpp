#pragma once
/// Evaluation AG codes, dual codes and the two hull oracles.
///
/// The hull dimension is computed twice: as k - rank(G G^T) and as the
/// dimension of rowspace(G) ∩ kernel(G).  The two must agree over any field;
/// disagreement is treated as a linear-algebra bug and throws.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agchull/divisors.hpp"
#include "agchull/extensions.hpp"
#include "agchull/matrix.hpp"
#include "agchull/riemann_roch.hpp"

namespace agchull {

/// Residue coordinates of an evaluation place in the code's field.
struct Point {
  Elem x;
  Elem y;
};

struct AGCode {
  FieldPtr field;
  std::vector<Place> places;
  Matrix generator;
  Divisor D;
  Divisor G;
  std::optional<Divisor> H;

  std::size_t length() const { return generator.cols(); }
  std::size_t dimension() const { return generator.rows(); }
};

inline bool generator_full_rank(const AGCode& c) { return matrix_rank(c.generator) == c.dimension(); }

/// Generator rows are the evaluations of the basis functions at the places.
/// When deg G < n the evaluation map is injective and the rank must equal the
/// basis size; otherwise a maximal independent subset of rows is kept in order.
inline AGCode build_ag_code(const FieldPtr& field, const std::vector<Place>& places, const std::vector<Point>& points,
                            const Divisor& G, const RRBasis& basis) {
  if (places.size() != points.size()) throw Error("place/point count mismatch");
  Divisor D;
  for (const auto& p : places) {
    if (!p.is_rational()) throw Error("evaluation place " + p.to_string() + " is not rational");
    if (G.coeff(p) != 0) throw Error("evaluation place " + p.to_string() + " lies in supp G");
    if (D.coeff(p) != 0) throw Error("repeated evaluation place " + p.to_string());
    D.add(p, 1);
  }
  const std::size_t n = places.size();
  Matrix raw(field, 0, n);
  for (const auto& fn : basis.functions) {
    std::vector<Elem> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = fn(points[i].x, points[i].y);
    raw.append_row(row);
  }
  Matrix gen(field, 0, n);
  if (divisor_degree(G) < static_cast<int>(n)) {
    if (matrix_rank(raw) != raw.rows())
      throw Error("evaluation map not injective although deg G < n (basis defect)");
    gen = raw;
  } else {
    for (std::size_t i = 0; i < raw.rows(); ++i) {
      Matrix trial = stack(gen, Matrix::from_rows(field, {raw.row(i)}, n));
      if (matrix_rank(trial) == trial.rows()) gen = std::move(trial);
    }
  }
  return AGCode{field, places, std::move(gen), std::move(D), G, std::nullopt};
}

// ---------------------------------------------------------------------------
// The two-point rational family C_ab = C_L(P_1 + P_zeta + ... , a P_0 + b P_inf).

struct CabParams {
  int n = 0;
  int a = 0;
  int b = 0;
};

/// Empty when (n, a, b) is in the window, else the name of the failing constraint.
inline std::optional<std::string> cab_window_violation(int n, int a, int b) {
  if (n < 2) return "n >= 2";
  if (a + b < 0) return "0 <= a+b";
  if (a + b > n - 2) return "a+b <= n-2";
  if (b - a < 0) return "0 <= b-a";
  if (b - a > n) return "b-a <= n";
  return std::nullopt;
}

inline void require_cab_window(int n, int a, int b) {
  if (auto v = cab_window_violation(n, a, b))
    throw Error("parameters (n=" + std::to_string(n) + ", a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                ") violate " + *v);
}

/// Evaluation places P_{zeta^i}, i = 0..n-1.
inline std::vector<Place> roots_of_unity_places(const Field& f, int n) {
  if (n < 2 || (f.order() - 1) % static_cast<std::uint32_t>(n) != 0)
    throw Error("n = " + std::to_string(n) + " must be >= 2 and divide q - 1 = " + std::to_string(f.order() - 1));
  const Elem zeta = nth_root_of_unity(f, static_cast<std::uint32_t>(n));
  std::vector<Place> out;
  for (int i = 0; i < n; ++i) out.push_back(base_place(f, f.pow(zeta, i)));
  return out;
}

inline Divisor two_point_divisor(const Field& f, int a, int b) {
  Divisor g(base_place(f, f.zero()), a);
  g.add(base_infinity(f), b);
  return g;
}

/// H = -(a+1) P_0 + (n-b-1) P_inf, the dual divisor of C_ab.
inline Divisor dual_divisor_cab(const Field& f, int n, int a, int b) {
  require_cab_window(n, a, b);
  return two_point_divisor(f, -(a + 1), n - b - 1);
}

inline AGCode rational_code(const FieldPtr& f, const std::vector<Place>& places, const Divisor& G) {
  std::vector<Point> pts;
  for (const auto& p : places) pts.push_back({Elem{p.alpha}, f->zero()});
  return build_ag_code(f, places, pts, G, rr_basis_rational(f, G));
}

inline AGCode build_cab(const FieldPtr& f, int n, int a, int b) {
  require_cab_window(n, a, b);
  auto code = rational_code(f, roots_of_unity_places(*f, n), two_point_divisor(*f, a, b));
  code.H = dual_divisor_cab(*f, n, a, b);
  return code;
}

// ---------------------------------------------------------------------------
// Duals and hulls.

/// Basis of C^perp under the standard bilinear form.
inline Matrix dual_code_matrix(const AGCode& c) { return kernel_basis(c.generator); }
inline Matrix dual_code_matrix(const Matrix& generator) { return kernel_basis(generator); }

inline std::size_t hull_dim_rank(const Matrix& g) { return g.rows() - matrix_rank(g * transpose(g)); }
inline std::size_t hull_dim_rank(const AGCode& c) { return hull_dim_rank(c.generator); }

inline Matrix hull_basis_intersect(const Matrix& g) {
  auto basis = rowspace_intersect(g, kernel_basis(g));
  if (basis.rows() != hull_dim_rank(g))
    throw Error("hull oracles disagree: rank method " + std::to_string(hull_dim_rank(g)) + ", intersection " +
                std::to_string(basis.rows()));
  return basis;
}
inline Matrix hull_basis_intersect(const AGCode& c) { return hull_basis_intersect(c.generator); }

struct Classification {
  bool is_lcd = false;
  bool is_self_dual = false;
  std::size_t hull_dim = 0;
};

inline Classification classify(const Matrix& g) {
  const auto h = hull_basis_intersect(g).rows();
  Classification c;
  c.hull_dim = h;
  c.is_lcd = h == 0;
  c.is_self_dual = g.cols() == 2 * g.rows() && h == g.rows() && rowspace_equal(g, kernel_basis(g));
  return c;
}
inline Classification classify(const AGCode& c) { return classify(c.generator); }

/// Whether the dual code of C_ab equals C_L(D, H) for the explicit H.
inline bool dual_divisor_matches(const FieldPtr& f, const AGCode& cab) {
  if (!cab.H) throw Error("code carries no dual divisor");
  const auto hcode = rational_code(f, cab.places, *cab.H);
  if (hcode.dimension() == 0) return cab.dimension() == cab.length();
  return rowspace_equal(hcode.generator, dual_code_matrix(cab));
}

/// Four-case hull dimension formula for C_ab.
inline int prop51_hull(int n, int a, int b) {
  const bool b_high = 2 * b >= n - 1;
  if (a >= 0) return b_high ? n - a - b - 1 : b - a;
  return b_high ? n + a - b : a + b + 1;
}

}  // namespace agchull
