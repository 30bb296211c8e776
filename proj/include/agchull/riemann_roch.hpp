#pragma once
// Riemann-Roch spaces with explicit bases.
//
//  * rational field: L(D) = { v(x) x^j / u(x) }, u collecting the positive
//    finite part of D and v the negative one;
//  * one-point spaces L(r P'_inf) on curves with a single place over P_inf:
//    monomials x^i y^j with i*e_inf + j*o_y <= r;
//  * two-point conorm spaces L(a Con(P_0) + b Con(P_inf)) = x^{-a} L((a+b) e_inf P'_inf);
//  * general divisors supported over rational base places, by imposing local
//    vanishing conditions on a one-point space.  This last route is used as an
//    independent cross-check of the other two.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "agchull/divisors.hpp"
#include "agchull/extensions.hpp"
#include "agchull/matrix.hpp"
#include "agchull/poly.hpp"

namespace agchull {

/// Element of F' as (sum_j num_j(x) y^j) / den(x), with den monic.
struct FunctionRep {
  FieldPtr field;
  std::vector<Poly> num;  // num[j] multiplies y^j
  Poly den;

  FunctionRep(FieldPtr f, std::vector<Poly> n, Poly d) : field(std::move(f)), num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw Error("function with zero denominator");
    if (!den.is_monic()) throw Error("denominator must be monic");
    while (!num.empty() && num.back().is_zero()) num.pop_back();
  }

  /// x^i y^j / x^shift (shift may be negative).
  static FunctionRep monomial(const FieldPtr& f, int i, int j, int shift = 0) {
    int num_exp = i, den_exp = 0;
    if (shift > 0) den_exp = shift;
    else num_exp -= shift;
    if (num_exp < 0) throw Error("negative monomial exponent");
    std::vector<Poly> n(j + 1, Poly(f));
    n[j] = Poly::monomial(f, num_exp, f->one());
    return FunctionRep(f, std::move(n), Poly::monomial(f, den_exp, f->one()));
  }

  bool is_zero() const { return num.empty(); }
  int y_degree() const { return static_cast<int>(num.size()) - 1; }

  Elem operator()(Elem x, Elem y) const {
    const auto& F = *field;
    const Elem d = den(x);
    if (d.v == 0) throw Error("evaluation at a pole of the denominator");
    Elem acc = F.zero();
    for (std::size_t j = num.size(); j-- > 0;) acc = F.add(F.mul(acc, y), num[j](x));
    return F.div(acc, d);
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t j = 0; j < num.size(); ++j) {
      if (num[j].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + num[j].to_string() + ")";
      if (j > 0) s += j == 1 ? "*y" : "*y^" + std::to_string(j);
    }
    if (s.empty()) s = "0";
    if (den.degree() > 0) s = "(" + s + ")/(" + den.to_string() + ")";
    return s;
  }
};

inline FunctionRep scale_by_x_power(const FunctionRep& fn, int shift) {
  // Multiply by x^{-shift}.
  const auto& f = fn.field;
  std::vector<Poly> num = fn.num;
  Poly den = fn.den;
  if (shift > 0) den = den * Poly::monomial(f, shift, f->one());
  else if (shift < 0)
    for (auto& p : num) p = p * Poly::monomial(f, -shift, f->one());
  return FunctionRep(f, std::move(num), std::move(den));
}

struct RRBasis {
  Divisor divisor;
  std::vector<FunctionRep> functions;
  int dimension = 0;
};

// ---------------------------------------------------------------------------
// Rational function field.

inline RRBasis rr_basis_rational(const Field& field, const FieldPtr& fptr, const Divisor& d) {
  Poly u = Poly::constant(fptr, field.one());
  Poly v = Poly::constant(fptr, field.one());
  for (const auto& [p, c] : d.terms()) {
    if (p.is_extension()) throw Error("rr_basis_rational expects a divisor of the rational field");
    if (p.field_order != field.order()) throw Error("divisor over a different constant field");
    if (p.is_infinite()) continue;
    const auto lin = Poly::linear(fptr, Elem{p.alpha});
    if (c > 0) u = u * pow(lin, c);
    else v = v * pow(lin, -c);
  }
  RRBasis basis{d, {}, 0};
  const int deg = divisor_degree(d);
  for (int j = 0; j <= deg; ++j) {
    std::vector<Poly> num{v * Poly::monomial(fptr, j, field.one())};
    basis.functions.emplace_back(fptr, std::move(num), u);
  }
  basis.dimension = static_cast<int>(basis.functions.size());
  return basis;
}

inline RRBasis rr_basis_rational(const FieldPtr& f, const Divisor& d) { return rr_basis_rational(*f, f, d); }

/// Order of a rational base function at a base place.
inline int valuation_rational(const FunctionRep& fn, const Place& p) {
  if (fn.is_zero()) throw Error("valuation of zero");
  if (fn.num.size() != 1) throw Error("rational function expected");
  if (p.is_infinite()) return fn.den.degree() - fn.num[0].degree();
  const Elem a{p.alpha};
  return root_multiplicity(fn.num[0], a) - root_multiplicity(fn.den, a);
}

// ---------------------------------------------------------------------------
// Curves.

/// Basis of L(r P'_inf): x^i y^j with j < m and i*e_inf + j*o_y <= r, ordered
/// lexicographically in (j, i).  Validated against r + 1 - g' when r > 2g' - 2.
inline RRBasis rr_basis_one_point(const Extension& ext, int r) {
  if (!ext.single_place_at_infinity()) throw Error("no validated pole semigroup for " + ext.describe());
  const auto& f = ext.field();
  const int ex = ext.pole_order_x();
  const int oy = ext.pole_order_y();
  RRBasis basis;
  basis.divisor = Divisor(ext.infinity_place(), r);
  const int jmax = ext.has_y() ? ext.y_degree() - 1 : 0;
  for (int j = 0; j <= jmax; ++j)
    for (int i = 0; i * ex + j * oy <= r; ++i) basis.functions.push_back(FunctionRep::monomial(f, i, j));
  basis.dimension = static_cast<int>(basis.functions.size());
  const int g = genus_of_extension(ext);
  if (r > 2 * g - 2 && basis.dimension != r + 1 - g)
    throw Error("one-point basis count " + std::to_string(basis.dimension) + " != r + 1 - g' = " +
                std::to_string(r + 1 - g) + " for " + ext.describe());
  return basis;
}

/// Basis of L(a Con(P_0) + b Con(P_inf)) via multiplication by x^{-a}.
inline RRBasis rr_basis_conorm_two_point(const Extension& ext, int a, int b) {
  const int ex = ext.pole_order_x();
  const auto& base = *ext.base_field();
  Divisor target = a * conorm_divisor(Divisor(base_place(base, base.zero()), 1), ext) +
                   b * conorm_divisor(Divisor(base_infinity(base), 1), ext);
  RRBasis basis;
  basis.divisor = target;
  const int r = (a + b) * ex;
  if (r >= 0) {
    for (const auto& fn : rr_basis_one_point(ext, r).functions) basis.functions.push_back(scale_by_x_power(fn, a));
  }
  basis.dimension = static_cast<int>(basis.functions.size());
  return basis;
}

// ---------------------------------------------------------------------------
// Local expansions and valuations on curves.

namespace detail {

using Series = std::vector<Elem>;  // truncated power series in t

inline Series series_mul(const Field& F, const Series& a, const Series& b, std::size_t n) {
  Series r(n, F.zero());
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].v == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

inline Series series_inverse(const Field& F, const Series& a, std::size_t n) {
  if (a.empty() || a[0].v == 0) throw Error("series is not a unit");
  Series r(n, F.zero());
  const Elem inv0 = F.inv(a[0]);
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Elem s = F.zero();
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) s = F.add(s, F.mul(a[i], r[k - i]));
    r[k] = F.neg(F.mul(s, inv0));
  }
  return r;
}

inline Series poly_series(const Poly& p, std::size_t n) {
  Series r(n, p.field()->zero());
  for (std::size_t i = 0; i < n && i < p.coeffs().size(); ++i) r[i] = p.coeffs()[i];
  return r;
}

inline Series series_pow(const Field& F, const Series& a, int e, std::size_t n) {
  Series r(n, F.zero());
  if (n > 0) r[0] = F.one();
  for (int i = 0; i < e; ++i) r = series_mul(F, r, a, n);
  return r;
}

/// Local expansion y(t) at the unramified rational place (alpha, beta), t = x - alpha.
inline Series y_expansion(const Extension& ext, Elem alpha_ext, Elem beta, std::size_t n) {
  const auto& F = *ext.field();
  const Series fx = poly_series(taylor_shift(ext.f_ext(), alpha_ext), n);
  const int m = ext.y_degree();
  const bool as = ext.family() == Family::ArtinSchreier;
  Series y(n, F.zero());
  if (n == 0) return y;
  y[0] = beta;
  for (std::size_t iter = 0; iter <= n + 1; ++iter) {
    // phi(y) = y^m - f  or  y^p + y - f ; phi'(y) = m y^{m-1}  or  1
    Series ym1 = series_pow(F, y, m - 1, n);
    Series ym = series_mul(F, ym1, y, n);
    Series phi(n), dphi(n);
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] = F.sub(as ? F.add(ym[i], y[i]) : ym[i], fx[i]);
      dphi[i] = as ? (i == 0 ? F.one() : F.zero()) : F.mul(F.from_int(m), ym1[i]);
    }
    Series step = series_mul(F, phi, series_inverse(F, dphi, n), n);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (step[i].v != 0) changed = true;
      y[i] = F.sub(y[i], step[i]);
    }
    if (!changed) return y;
  }
  throw Error("local expansion did not converge");
}

/// Expansion of x^i y^j at (alpha, beta) to precision n.
inline Series monomial_expansion(const Extension& ext, const Series& yser, Elem alpha_ext, int i, int j, std::size_t n) {
  const auto& F = *ext.field();
  Series xs(n, F.zero());
  if (n > 0) xs[0] = alpha_ext;
  if (n > 1) xs[1] = F.one();
  return series_mul(F, series_pow(F, xs, i, n), series_pow(F, yser, j, n), n);
}

inline int first_nonzero(const Series& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].v != 0) return static_cast<int>(i);
  return -1;
}

}  // namespace detail

/// Upper bound on the total zero count of a polynomial numerator.
inline int zero_count_bound(const Extension& ext, const FunctionRep& fn) {
  int bound = 0;
  const int m = ext.y_degree();
  const int df = ext.has_y() ? ext.f().degree() : 0;
  for (std::size_t j = 0; j < fn.num.size(); ++j)
    if (!fn.num[j].is_zero()) bound = std::max(bound, fn.num[j].degree() * m + static_cast<int>(j) * df);
  return bound * std::max(1, m);
}

/// v_P'(fn) for a place of F'.  Supported: places above P_inf when unique,
/// unramified rational finite places, and Kummer-ramified rational places.
inline int valuation(const Extension& ext, const FunctionRep& fn, const Place& p) {
  if (fn.is_zero()) throw Error("valuation of zero");
  if (p.ambient != ext.ambient()) throw Error("place " + p.to_string() + " is not a place of " + ext.describe());
  const auto& F = *ext.field();
  if (p.is_infinite()) {
    if (!ext.single_place_at_infinity()) throw Error("valuation at a split infinity is unsupported");
    const int ex = ext.pole_order_x(), oy = ext.pole_order_y();
    int pole = 0;
    for (std::size_t j = 0; j < fn.num.size(); ++j)
      if (!fn.num[j].is_zero()) pole = std::max(pole, fn.num[j].degree() * ex + static_cast<int>(j) * oy);
    return -pole + ex * fn.den.degree();
  }
  const Elem alpha = ext.embed(Elem{p.alpha});
  const int den_part = p.e * root_multiplicity(fn.den, alpha);
  if (!ext.has_y()) return p.e * root_multiplicity(fn.num.at(0), alpha) - den_part;
  if (p.e > 1) {
    if (ext.family() != Family::Kummer || p.e != ext.y_degree()) throw Error("unsupported ramified place " + p.to_string());
    // v(x - alpha) = m and v(y) = 1: the terms have distinct valuations mod m.
    int v = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < fn.num.size(); ++j)
      if (!fn.num[j].is_zero()) v = std::min(v, p.e * root_multiplicity(fn.num[j], alpha) + static_cast<int>(j));
    return v - den_part;
  }
  if (!p.beta) throw Error("valuation at non-rational place " + p.to_string() + " is unsupported");
  const auto n = static_cast<std::size_t>(zero_count_bound(ext, fn) + 2);
  const auto yser = detail::y_expansion(ext, alpha, Elem{*p.beta}, n);
  detail::Series acc(n, F.zero());
  detail::Series ypow(n, F.zero());
  ypow[0] = F.one();
  for (std::size_t j = 0; j < fn.num.size(); ++j) {
    if (j > 0) ypow = detail::series_mul(F, ypow, yser, n);
    if (fn.num[j].is_zero()) continue;
    auto term = detail::series_mul(F, detail::poly_series(taylor_shift(fn.num[j], alpha), n), ypow, n);
    for (std::size_t i = 0; i < n; ++i) acc[i] = F.add(acc[i], term[i]);
  }
  const int v = detail::first_nonzero(acc);
  if (v < 0) throw Error("valuation exceeds precision bound");
  return v - den_part;
}

/// Checks (fn) >= -D at every place where the inequality can fail: supp D,
/// P'_inf, and all places above the zeros of the denominator.
inline bool in_riemann_roch_space(const Extension& ext, const FunctionRep& fn, const Divisor& d) {
  if (fn.is_zero()) return true;
  std::set<Place> to_check;
  for (const auto& [p, c] : d.terms()) to_check.insert(p);
  to_check.insert(ext.infinity_place());
  for (auto alpha : ext.base_field()->elements())
    if (fn.den(ext.embed(alpha)).v == 0)
      for (const auto& q : ext.decompose(base_place(*ext.base_field(), alpha))) to_check.insert(q);
  for (const auto& p : to_check)
    if (valuation(ext, fn, p) < -d.coeff(p)) return false;
  return true;
}

/// Basis of L(D) for D supported on places over rational base places and the
/// unique place over P_inf, computed from local vanishing conditions.
inline RRBasis rr_basis_extension(const Extension& ext, const Divisor& d) {
  const auto& F = *ext.field();
  const auto& fp = ext.field();
  const auto& base = *ext.base_field();
  const Place inf = ext.infinity_place();
  std::map<std::uint32_t, int> shift;  // alpha -> k_alpha
  for (const auto& [p, c] : d.terms()) {
    if (p.ambient != ext.ambient()) throw Error("divisor is not over " + ext.describe());
    if (p.is_infinite()) continue;
    const int need = c > 0 ? (c + p.e - 1) / p.e : 0;
    auto [it, ins] = shift.try_emplace(p.alpha, 0);
    it->second = std::max(it->second, need);
  }
  Poly u = Poly::constant(fp, F.one());
  int deg_u = 0;
  for (const auto& [alpha, k] : shift) {
    u = u * pow(Poly::linear(fp, ext.embed(Elem{alpha})), k);
    deg_u += k;
  }
  const int r = d.coeff(inf) + ext.pole_order_x() * deg_u;
  RRBasis basis;
  basis.divisor = d;
  if (r < 0) return basis;
  const auto candidates = rr_basis_one_point(ext, r).functions;
  // (i, j) of each candidate monomial
  std::vector<std::pair<int, int>> exps;
  for (const auto& c : candidates) exps.emplace_back(c.num.back().degree(), c.y_degree());

  Matrix constraints(fp, 0, candidates.size());
  for (const auto& [alpha_code, k] : shift) {
    const Elem alpha_ext = ext.embed(Elem{alpha_code});
    for (const auto& q : ext.decompose(base_place(base, Elem{alpha_code}))) {
      const int need = q.e * k - d.coeff(q);
      if (need <= 0) continue;
      if (q.e == 1 && ext.has_y()) {
        if (!q.beta) throw Error("non-rational place " + q.to_string() + " in support is unsupported");
        const auto n = static_cast<std::size_t>(need);
        const auto yser = detail::y_expansion(ext, alpha_ext, Elem{*q.beta}, n);
        std::vector<detail::Series> cols;
        for (auto [i, j] : exps) cols.push_back(detail::monomial_expansion(ext, yser, alpha_ext, i, j, n));
        for (std::size_t s = 0; s < n; ++s) {
          std::vector<Elem> row(candidates.size());
          for (std::size_t c = 0; c < candidates.size(); ++c) row[c] = cols[c][s];
          constraints.append_row(row);
        }
      } else {
        // v = min_j (e * ord(num_j) + j): each y^j block must vanish to order ceil((need - j)/e).
        const int jmax = ext.has_y() ? ext.y_degree() - 1 : 0;
        for (int j = 0; j <= jmax; ++j) {
          const int ord = std::max(0, (need - j + q.e - 1) / q.e);
          for (int s = 0; s < ord; ++s) {
            std::vector<Elem> row(candidates.size(), F.zero());
            for (std::size_t c = 0; c < candidates.size(); ++c) {
              if (exps[c].second != j) continue;
              const auto shifted = taylor_shift(Poly::monomial(fp, exps[c].first, F.one()), alpha_ext);
              row[c] = shifted.coeff(s);
            }
            constraints.append_row(row);
          }
        }
      }
    }
  }
  const Matrix combos = constraints.rows() == 0 ? Matrix::identity(fp, candidates.size()) : kernel_basis(constraints);
  const int jmax = ext.has_y() ? ext.y_degree() - 1 : 0;
  for (std::size_t r_i = 0; r_i < combos.rows(); ++r_i) {
    std::vector<Poly> num(jmax + 1, Poly(fp));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Elem coef = combos(r_i, c);
      if (coef.v == 0) continue;
      num[exps[c].second] = num[exps[c].second] + Poly::monomial(fp, exps[c].first, coef);
    }
    basis.functions.emplace_back(fp, std::move(num), u);
  }
  basis.dimension = static_cast<int>(basis.functions.size());
  return basis;
}

struct EllResult {
  int ell = 0;
  int specialty_index = 0;  // i(D) = ell - deg D + g - 1
  bool explicit_basis = false;
  bool special() const { return specialty_index > 0; }
};

namespace detail {
inline EllResult finish_ell(int ell, int deg, int g, bool explicit_basis) {
  EllResult r{ell, ell - deg + g - 1, explicit_basis};
  if (r.specialty_index < 0) throw Error("negative index of specialty: Riemann-Roch violated");
  if (deg >= 0 && deg <= 2 * g - 2 && 2 * (ell - 1) > deg)
    throw Error("Clifford bound violated: 2(l-1) = " + std::to_string(2 * (ell - 1)) + " > deg = " + std::to_string(deg));
  return r;
}
}  // namespace detail

/// ell(D) on the rational field (genus 0).
inline EllResult ell_dim_rational(const FieldPtr& f, const Divisor& d) {
  const int deg = divisor_degree(d);
  if (deg < 0) return detail::finish_ell(0, deg, 0, false);
  return detail::finish_ell(rr_basis_rational(f, d).dimension, deg, 0, true);
}

/// ell(D) on F': degree criteria first, explicit basis in the ambiguous range.
inline EllResult ell_dim(const Extension& ext, const Divisor& d, int genus) {
  const int deg = divisor_degree(d);
  if (deg < 0) return detail::finish_ell(0, deg, genus, false);
  if (deg > 2 * genus - 2) return detail::finish_ell(deg + 1 - genus, deg, genus, false);
  return detail::finish_ell(rr_basis_extension(ext, d).dimension, deg, genus, true);
}

inline EllResult ell_dim(const Extension& ext, const Divisor& d) { return ell_dim(ext, d, genus_of_extension(ext)); }

}  // namespace agchull
