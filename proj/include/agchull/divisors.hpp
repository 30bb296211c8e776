#pragma once
// Places and divisors of F_q(x) and of its extensions.
//
// Base places are the rational places P_alpha (zero of x - alpha) and the
// pole P_inf of x.  Extension places record the base place below them, a
// branch index, e(P'|P), f(P'|P) and, when rational, their residue
// coordinates (alpha, beta).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "agchull/galois.hpp"

namespace agchull {

enum class PlaceKind : std::uint8_t { BaseFinite = 0, BaseInfinite = 1, ExtFinite = 2, ExtInfinite = 3 };

struct Place {
  std::string ambient;             // function field the place belongs to
  std::uint32_t field_order = 0;   // order of the constant field of the ambient
  PlaceKind kind = PlaceKind::BaseFinite;
  std::uint32_t alpha = 0;         // base-field code of the x-coordinate (finite kinds)
  int branch = 0;
  int e = 1;                       // ramification index over the base place
  int f = 1;                       // relative degree over the base place
  int degree = 1;                  // degree over the ambient constant field
  int siblings = 1;                // number of places over the same base place
  std::optional<std::uint32_t> beta;  // y-coordinate code when rational and y exists

  bool is_extension() const { return kind == PlaceKind::ExtFinite || kind == PlaceKind::ExtInfinite; }
  bool is_infinite() const { return kind == PlaceKind::BaseInfinite || kind == PlaceKind::ExtInfinite; }
  bool is_rational() const { return degree == 1; }

  auto key() const { return std::tuple(field_order, static_cast<int>(kind), alpha, branch); }
  friend bool operator<(const Place& a, const Place& b) { return a.key() < b.key(); }
  friend bool operator==(const Place& a, const Place& b) { return a.ambient == b.ambient && a.key() == b.key(); }

  std::string to_string() const {
    switch (kind) {
      case PlaceKind::BaseFinite:
        return "P(" + std::to_string(alpha) + ")";
      case PlaceKind::BaseInfinite:
        return "P(inf)";
      case PlaceKind::ExtFinite:
        if (beta) return "P'(alpha=" + std::to_string(alpha) + ", beta=" + std::to_string(*beta) + ")";
        if (degree == 1) return "P'(alpha=" + std::to_string(alpha) + ")";
        return "P'(alpha=" + std::to_string(alpha) + ", branch=" + std::to_string(branch) + ", deg=" + std::to_string(degree) + ")";
      case PlaceKind::ExtInfinite:
        if (siblings == 1) return "P'(inf)";
        return "P'(inf, branch=" + std::to_string(branch) + ")";
    }
    return "?";
  }
};

inline std::string base_ambient(const Field& f) { return "F" + std::to_string(f.order()) + "(x)"; }

inline Place base_place(const Field& f, Elem alpha) {
  Place p;
  p.ambient = base_ambient(f);
  p.field_order = f.order();
  p.kind = PlaceKind::BaseFinite;
  p.alpha = alpha.v;
  return p;
}

inline Place base_infinity(const Field& f) {
  Place p;
  p.ambient = base_ambient(f);
  p.field_order = f.order();
  p.kind = PlaceKind::BaseInfinite;
  return p;
}

/// Finitely supported integer combination of places; zero coefficients are never stored.
class Divisor {
 public:
  Divisor() = default;
  Divisor(const Place& p, int c) { add(p, c); }

  void add(const Place& p, int c) {
    if (c == 0) return;
    check_ambient(p.ambient);
    auto [it, inserted] = terms_.try_emplace(p, 0);
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  int coeff(const Place& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
  }

  const std::map<Place, int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  std::optional<std::string> ambient() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.ambient;
  }

  std::vector<Place> support() const {
    std::vector<Place> s;
    for (const auto& [p, c] : terms_) s.push_back(p);
    return s;
  }

  friend Divisor operator+(Divisor a, const Divisor& b) {
    for (const auto& [p, c] : b.terms_) a.add(p, c);
    return a;
  }
  friend Divisor operator-(Divisor a, const Divisor& b) {
    for (const auto& [p, c] : b.terms_) a.add(p, -c);
    return a;
  }
  friend Divisor operator*(int s, const Divisor& d) {
    Divisor r;
    for (const auto& [p, c] : d.terms_) r.add(p, s * c);
    return r;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [p, c] : a.terms_) {
      if (!(p == it->first) || c != it->second) return false;
      ++it;
    }
    return true;
  }

  /// Coefficient-wise comparison D1 <= D2.
  friend bool operator<=(const Divisor& a, const Divisor& b) {
    for (const auto& [p, c] : a.terms_)
      if (c > b.coeff(p)) return false;
    for (const auto& [p, c] : b.terms_)
      if (c < 0 && a.coeff(p) > c) return false;
    return true;
  }

  /// Text form, e.g. "-2*P(0) + 3*P(inf)"; the zero divisor prints as "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      if (first) {
        s += std::to_string(c) + "*" + p.to_string();
        first = false;
      } else {
        s += (c < 0 ? " - " : " + ") + std::to_string(c < 0 ? -c : c) + "*" + p.to_string();
      }
    }
    return s;
  }

 private:
  void check_ambient(const std::string& amb) const {
    if (!terms_.empty() && terms_.begin()->first.ambient != amb)
      throw Error("divisor mixes places of " + terms_.begin()->first.ambient + " and " + amb);
  }

  std::map<Place, int> terms_;
};

inline void require_same_ambient(const Divisor& a, const Divisor& b) {
  auto x = a.ambient(), y = b.ambient();
  if (x && y && *x != *y) throw Error("divisors over different function fields: " + *x + " vs " + *y);
}

inline int divisor_degree(const Divisor& d) {
  int deg = 0;
  for (const auto& [p, c] : d.terms()) deg += c * p.degree;
  return deg;
}

inline Divisor divisor_gcd(const Divisor& a, const Divisor& b) {
  require_same_ambient(a, b);
  Divisor g;
  for (const auto& [p, c] : a.terms()) g.add(p, std::min(c, b.coeff(p)));
  for (const auto& [p, c] : b.terms())
    if (a.coeff(p) == 0) g.add(p, std::min(0, c));
  return g;
}

/// One linear factor (x - root)^multiplicity of a factored rational function.
struct LinearFactor {
  Elem root;
  int multiplicity;
};

/// Principal divisor of c * prod (x - root_i)^{m_i} in F_q(x).
inline Divisor principal_divisor_rational(const Field& f, Elem c, const std::vector<LinearFactor>& factors) {
  if (c.v == 0) throw Error("principal divisor of the zero function");
  Divisor d;
  int total = 0;
  for (const auto& lf : factors) {
    d.add(base_place(f, lf.root), lf.multiplicity);
    total += lf.multiplicity;
  }
  d.add(base_infinity(f), -total);
  return d;
}

}  // namespace agchull
