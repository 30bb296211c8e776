#pragma once
/// Exact arithmetic in small finite fields GF(p^k).
///
/// Elements are encoded as the integer value of their coefficient vector over
/// GF(p) read as a base-p number (coefficient of x^i is the i-th digit).  The
/// encoding doubles as the deterministic total order used by every search in
/// the library.  Multiplication goes through discrete log tables and addition
/// through Zech logarithms; both are built once per field from plain
/// polynomial arithmetic modulo the defining polynomial.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace agchull {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Elem {
  std::uint32_t v = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int mod(std::int64_t a, int p) {
  auto r = static_cast<int>(a % p);
  return r < 0 ? r + p : r;
}

inline int inv_mod(int a, int p) {
  // p is prime and small; Fermat.
  std::int64_t r = 1, b = mod(a, p);
  int e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

// Dense polynomials over GF(p) as int digit vectors, low-to-high, no trailing zeros.
using IntPoly = std::vector<int>;

inline void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline IntPoly int_poly_mod(IntPoly a, const IntPoly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = static_cast<int>(static_cast<std::int64_t>(a.back()) * lead_inv % p);
    for (int i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - static_cast<std::int64_t>(c) * m[i], p);
    trim(a);
  }
  return a;
}

inline IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b, int p) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + static_cast<std::int64_t>(a[i]) * b[j], p);
  trim(r);
  return r;
}

/// Digits of `v` in base p, padded to length k.
inline IntPoly digits(std::uint32_t v, int p, int k) {
  IntPoly d(k, 0);
  for (int i = 0; i < k; ++i) {
    d[i] = static_cast<int>(v % p);
    v /= p;
  }
  return d;
}

inline std::uint32_t from_digits(const IntPoly& d, int p) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + static_cast<std::uint32_t>(d[i]);
  return v;
}

/// Exhaustive irreducibility check: no monic divisor of degree 1..deg/2.
inline bool int_poly_irreducible(const IntPoly& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k <= 0) return false;
  if (k == 1) return true;
  for (int d = 1; d <= k / 2; ++d) {
    const auto count = ipow(p, d);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      IntPoly g = digits(static_cast<std::uint32_t>(idx), p, d);
      g.push_back(1);
      if (int_poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

/// Lexicographically smallest monic irreducible of degree k, comparing
/// coefficients c_0, c_1, ... in that order.
inline IntPoly smallest_irreducible(int p, int k) {
  const auto count = ipow(p, k);
  for (std::int64_t idx = 0; idx < count; ++idx) {
    // c_0 is the most significant digit of idx so iteration is lex-ordered.
    IntPoly f(k + 1, 0);
    auto rest = idx;
    for (int i = k - 1; i >= 0; --i) {
      f[i] = static_cast<int>(rest % p);
      rest /= p;
    }
    f[k] = 1;
    if (int_poly_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found");
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^k).  Immutable after construction; obtain instances through make_field.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }
  std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  /// Prime-field element n mod p.
  Elem from_int(std::int64_t n) const { return {static_cast<std::uint32_t>(detail::mod(n, p_))}; }
  Elem from_code(std::uint32_t code) const {
    if (code >= q_) throw Error("element code " + std::to_string(code) + " out of range for " + name());
    return {code};
  }
  Elem from_coeffs(std::span<const int> c) const {
    if (static_cast<int>(c.size()) > k_) throw Error("too many coefficients for " + name());
    detail::IntPoly d(k_, 0);
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = detail::mod(c[i], p_);
    return {detail::from_digits(d, p_)};
  }
  std::vector<int> coeffs(Elem a) const { return detail::digits(a.v, p_, k_); }

  bool is_zero(Elem a) const { return a.v == 0; }

  Elem add(Elem a, Elem b) const {
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    const std::uint32_t la = log_[a.v];
    const std::uint32_t lb = log_[b.v];
    const std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    const std::uint32_t z = zech_[d];
    if (z == kNoLog) return {0};
    return {exp_[(la + z) % (q_ - 1)]};
  }
  Elem neg(Elem a) const {
    if (a.v == 0 || p_ == 2) return a;
    return {exp_[(log_[a.v] + (q_ - 1) / 2) % (q_ - 1)]};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return {0};
    return {exp_[(log_[a.v] + log_[b.v]) % (q_ - 1)]};
  }
  Elem inv(Elem a) const {
    if (a.v == 0) throw Error("inverse of zero in " + name());
    return {exp_[(q_ - 1 - log_[a.v]) % (q_ - 1)]};
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const {
    if (a.v == 0) {
      if (e == 0) return one();
      if (e < 0) throw Error("negative power of zero");
      return zero();
    }
    const std::int64_t n = q_ - 1;
    const std::int64_t l = detail::mod(static_cast<std::int64_t>(log_[a.v]) * detail::mod(e, static_cast<int>(n)), static_cast<int>(n));
    return {exp_[static_cast<std::size_t>(l)]};
  }
  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// Multiplicative order of a nonzero element.
  std::uint32_t mult_order(Elem a) const {
    if (a.v == 0) throw Error("order of zero");
    const std::uint32_t n = q_ - 1;
    return n / std::gcd(n, log_[a.v] == 0 ? n : log_[a.v]);
  }

  /// Smallest-encoded generator of the multiplicative group.
  Elem primitive() const { return {exp_[1 % (q_ - 1)]}; }

  /// Absolute trace to GF(p), as an integer in [0, p).
  int absolute_trace(Elem a) const {
    Elem t = a, s = a;
    for (int i = 1; i < k_; ++i) {
      t = frobenius(t);
      s = add(s, t);
    }
    return static_cast<int>(s.v);
  }

  std::vector<Elem> elements() const {
    std::vector<Elem> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
    return out;
  }

  /// Reference multiplication by polynomial arithmetic modulo the defining
  /// polynomial.  Independent of the log tables; used to build and test them.
  Elem mul_reference(Elem a, Elem b) const {
    auto r = detail::int_poly_mod(detail::int_poly_mul(trimmed(a), trimmed(b), p_), modulus_, p_);
    r.resize(k_, 0);
    return {detail::from_digits(r, p_)};
  }
  Elem add_reference(Elem a, Elem b) const {
    auto da = coeffs(a), db = coeffs(b);
    for (int i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
    return {detail::from_digits(da, p_)};
  }

  friend FieldPtr make_field(int p, int k);

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  Field(int p, int k) : p_(p), k_(k), q_(static_cast<std::uint32_t>(detail::ipow(p, k))) {
    modulus_ = detail::smallest_irreducible(p, k);
    if (!detail::int_poly_irreducible(modulus_, p)) throw Error("defining polynomial is reducible");
    build_tables();
  }

  detail::IntPoly trimmed(Elem a) const {
    auto d = coeffs(a);
    detail::trim(d);
    return d;
  }

  void build_tables() {
    exp_.assign(q_, 0);
    log_.assign(q_, kNoLog);
    zech_.assign(q_, kNoLog);
    if (q_ == 2) {
      exp_[0] = 1;
      log_[1] = 0;
      zech_[0] = kNoLog;  // 1 + 1 = 0
      return;
    }
    const auto n = q_ - 1;
    for (std::uint32_t g = 2; g < q_; ++g) {
      // Walk the powers of g; g is primitive iff it takes q-1 steps to return to 1.
      std::vector<std::uint32_t> powers;
      powers.reserve(n);
      Elem cur = one();
      bool ok = true;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (i > 0 && cur.v == 1) {
          ok = false;
          break;
        }
        powers.push_back(cur.v);
        cur = mul_reference(cur, {g});
      }
      if (!ok || cur.v != 1) continue;
      for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = powers[i];
        log_[powers[i]] = i;
      }
      break;
    }
    if (log_[1] != 0) throw Error("no primitive element found");
    for (std::uint32_t d = 0; d < n; ++d) {
      const Elem s = add_reference(one(), {exp_[d]});
      zech_[d] = s.v == 0 ? kNoLog : log_[s.v];
    }
  }

  int p_;
  int k_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

/// Construct (or fetch the cached) GF(p^k).  Identical (p, k) always yield the
/// same context object.
inline FieldPtr make_field(int p, int k) {
  if (!detail::is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw Error("extension degree must be positive");
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > Field::kMaxOrder) throw Error("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^16");
  }
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  FieldPtr f(new Field(p, k));
  cache.emplace(std::pair{p, k}, f);
  return f;
}

/// GF(q) from its order; q must be a prime power.
inline FieldPtr make_field_of_order(std::int64_t q) {
  if (q < 2) throw Error("field order must be at least 2");
  const auto ps = detail::prime_factors(q);
  if (ps.size() != 1) throw Error(std::to_string(q) + " is not a prime power");
  int k = 0;
  for (std::int64_t r = q; r > 1; r /= ps[0]) ++k;
  return make_field(static_cast<int>(ps[0]), k);
}

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a.get() == b.get(); }

/// Ring embedding GF(p^k) -> GF(p^{kt}) sending the class of x to the smallest
/// root of the small field's defining polynomial in the large field.
class Embedding {
 public:
  Embedding(FieldPtr source, FieldPtr target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_->characteristic() != target_->characteristic() || target_->degree() % source_->degree() != 0)
      throw Error("cannot embed " + source_->name() + " into " + target_->name());
    const auto& m = source_->modulus();
    Elem root{0};
    bool found = false;
    if (source_->degree() == 1) {
      found = true;
    } else {
      for (auto z : target_->elements()) {
        Elem acc = target_->zero();
        for (std::size_t i = m.size(); i-- > 0;) acc = target_->add(target_->mul(acc, z), target_->from_int(m[i]));
        if (acc.v == 0) {
          root = z;
          found = true;
          break;
        }
      }
    }
    if (!found) throw Error("defining polynomial has no root in target field");
    image_.resize(source_->order());
    for (std::uint32_t a = 0; a < source_->order(); ++a) {
      const auto c = source_->coeffs({a});
      Elem acc = target_->zero();
      for (std::size_t i = c.size(); i-- > 0;) acc = target_->add(target_->mul(acc, root), target_->from_int(c[i]));
      image_[a] = acc;
    }
  }

  Elem operator()(Elem a) const { return image_.at(a.v); }
  const FieldPtr& source() const { return source_; }
  const FieldPtr& target() const { return target_; }

 private:
  FieldPtr source_;
  FieldPtr target_;
  std::vector<Elem> image_;
};

inline Elem embed(Elem a, const FieldPtr& source, const FieldPtr& target) { return Embedding(source, target)(a); }

/// Smallest-encoded element of exact multiplicative order n.
inline Elem nth_root_of_unity(const Field& field, std::uint32_t n) {
  if (n < 2) throw Error("root of unity order must be at least 2");
  if ((field.order() - 1) % n != 0)
    throw Error(std::to_string(n) + " does not divide " + std::to_string(field.order() - 1));
  for (std::uint32_t v = 1; v < field.order(); ++v)
    if (field.mult_order({v}) == n) return {v};
  throw Error("no root of unity found");
}

}  // namespace agchull
