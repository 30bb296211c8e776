#pragma once
// Dense univariate polynomials over GF(q) and brute-force factorization for
// the tiny degrees that place decomposition needs.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "agchull/galois.hpp"

namespace agchull {

class Poly {
 public:
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(FieldPtr f, Elem c) { return Poly(std::move(f), {c}); }
  /// x^n
  static Poly monomial(FieldPtr f, std::size_t n, Elem c) {
    std::vector<Elem> v(n + 1, f->zero());
    v[n] = c;
    return Poly(std::move(f), std::move(v));
  }
  /// x - a
  static Poly linear(FieldPtr f, Elem a) {
    auto neg = f->neg(a);
    auto one = f->one();
    return Poly(std::move(f), {neg, one});
  }
  /// From integer element codes, low-to-high.
  static Poly from_codes(FieldPtr f, const std::vector<std::uint32_t>& codes) {
    std::vector<Elem> v;
    v.reserve(codes.size());
    for (auto c : codes) v.push_back(f->from_code(c));
    return Poly(std::move(f), std::move(v));
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_->zero(); }
  Elem leading() const { return c_.empty() ? field_->zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }

  Elem operator()(Elem x) const {
    Elem acc = field_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return same_field(a.field_, b.field_) && a.c_ == b.c_; }

  std::string to_string(char var = 'x') const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].v == 0) continue;
      if (!s.empty()) s += " + ";
      const bool unit = c_[i] == field_->one();
      if (i == 0 || !unit) s += std::to_string(c_[i].v);
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
  }

  FieldPtr field_;
  std::vector<Elem> c_;

  friend Poly operator+(const Poly&, const Poly&);
  friend Poly operator-(const Poly&, const Poly&);
  friend Poly operator*(const Poly&, const Poly&);
};

namespace detail {
inline void require_same(const Poly& a, const Poly& b) {
  if (!same_field(a.field(), b.field())) throw Error("polynomials over different fields");
}
}  // namespace detail

inline Poly operator+(const Poly& a, const Poly& b) {
  detail::require_same(a, b);
  const auto& f = *a.field_;
  std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), f.zero());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(r));
}

inline Poly operator-(const Poly& a, const Poly& b) {
  detail::require_same(a, b);
  const auto& f = *a.field_;
  std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), f.zero());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(r));
}

inline Poly operator*(const Poly& a, const Poly& b) {
  detail::require_same(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  const auto& f = *a.field_;
  std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].v == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
  }
  return Poly(a.field_, std::move(r));
}

inline Poly scale(const Poly& a, Elem s) {
  std::vector<Elem> r = a.coeffs();
  for (auto& c : r) c = a.field()->mul(c, s);
  return Poly(a.field(), std::move(r));
}

inline Poly pow(const Poly& a, int e) {
  Poly r = Poly::constant(a.field(), a.field()->one());
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

/// Division with remainder: a = quot*b + rem, deg rem < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  detail::require_same(a, b);
  if (b.is_zero()) throw Error("polynomial division by zero");
  const auto& f = *a.field();
  std::vector<Elem> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(a.field()), a};
  std::vector<Elem> quot(a.degree() - db + 1, f.zero());
  const Elem lead_inv = f.inv(b.leading());
  for (int i = a.degree(); i >= db; --i) {
    const Elem c = f.mul(rem[i], lead_inv);
    if (c.v == 0) continue;
    quot[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, b.coeff(j)));
  }
  return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(rem))};
}

inline Poly monic(const Poly& a) {
  if (a.is_zero()) return a;
  return scale(a, a.field()->inv(a.leading()));
}

inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline Poly derivative(const Poly& a) {
  const auto& f = *a.field();
  std::vector<Elem> r;
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) r.push_back(f.mul(f.from_int(static_cast<std::int64_t>(i)), a.coeffs()[i]));
  return Poly(a.field(), std::move(r));
}

inline bool is_square_free(const Poly& a) {
  if (a.degree() <= 0) return !a.is_zero();
  const auto d = derivative(a);
  if (d.is_zero()) return false;
  return gcd(a, d).degree() == 0;
}

/// a(x + shift), computed by Horner in the shifted variable.
inline Poly taylor_shift(const Poly& a, Elem shift) {
  const auto lin = Poly(a.field(), {shift, a.field()->one()});
  Poly r(a.field());
  for (std::size_t i = a.coeffs().size(); i-- > 0;) r = r * lin + Poly::constant(a.field(), a.coeffs()[i]);
  return r;
}

/// Multiplicity of the root `alpha` in a (a nonzero).
inline int root_multiplicity(const Poly& a, Elem alpha) {
  if (a.is_zero()) throw Error("multiplicity in the zero polynomial");
  const auto s = taylor_shift(a, alpha);
  int m = 0;
  while (s.coeff(m).v == 0) ++m;
  return m;
}

/// Maps polynomial coefficients through a field embedding.
inline Poly map_coeffs(const Poly& a, const Embedding& e) {
  if (!same_field(a.field(), e.source())) throw Error("embedding source mismatch");
  std::vector<Elem> r;
  r.reserve(a.coeffs().size());
  for (auto c : a.coeffs()) r.push_back(e(c));
  return Poly(e.target(), std::move(r));
}

struct Factor {
  Poly poly;
  int multiplicity;
};

namespace detail {

/// Monic polynomial of degree d whose lower coefficients are the base-q digits of idx.
inline Poly enumerate_monic(const FieldPtr& f, int d, std::uint64_t idx) {
  std::vector<Elem> c(d + 1, f->zero());
  for (int i = 0; i < d; ++i) {
    c[i] = {static_cast<std::uint32_t>(idx % f->order())};
    idx /= f->order();
  }
  c[d] = f->one();
  return Poly(f, std::move(c));
}

inline bool divides(const Poly& d, const Poly& a) { return divmod(a, d).second.is_zero(); }

}  // namespace detail

/// Exhaustive irreducibility test: no root, no monic factor of degree 2..deg/2.
inline bool is_irreducible(const Poly& a) {
  const int n = a.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  for (auto x : a.field()->elements())
    if (a(x).v == 0) return false;
  const auto q = static_cast<std::uint64_t>(a.field()->order());
  for (int d = 2; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    if (count > (1ull << 26)) throw Error("irreducibility search too large");
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (detail::divides(detail::enumerate_monic(a.field(), d, idx), a)) return false;
  }
  return true;
}

/// Factorization into monic irreducibles with multiplicity, sorted by
/// (degree, coefficient codes).  The leading unit is dropped.
inline std::vector<Factor> factor_univariate(const Poly& input) {
  if (input.is_zero()) throw Error("cannot factor the zero polynomial");
  if (input.degree() > 8) throw Error("factorization limited to degree 8");
  const auto& field = input.field();
  Poly rest = monic(input);
  std::vector<Factor> out;
  auto extract = [&](const Poly& g) {
    int mult = 0;
    while (rest.degree() >= g.degree()) {
      auto [quot, rem] = divmod(rest, g);
      if (!rem.is_zero()) break;
      rest = std::move(quot);
      ++mult;
    }
    if (mult > 0) out.push_back({g, mult});
  };
  for (auto x : field->elements()) {
    if (rest.degree() < 1) break;
    if (rest(x).v == 0) extract(Poly::linear(field, x));
  }
  const auto q = static_cast<std::uint64_t>(field->order());
  for (int d = 2; 2 * d <= rest.degree(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    if (count > (1ull << 26)) throw Error("factor search too large");
    for (std::uint64_t idx = 0; idx < count && 2 * d <= rest.degree(); ++idx) {
      auto g = detail::enumerate_monic(field, d, idx);
      if (detail::divides(g, rest)) extract(g);
    }
  }
  if (rest.degree() >= 1) out.push_back({rest, 1});
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    const auto& ca = a.poly.coeffs();
    const auto& cb = b.poly.coeffs();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  });
  return out;
}

}  // namespace agchull
