#pragma once
// Extensions F'/F of the rational function field F = F_q(x).
//
// Supported families (the catalog is closed on purpose, anything else is
// rejected instead of guessing different exponents):
//   Constant(t)          F' = F * GF(q^t)
//   Kummer(m, f, t)      y^m = f(x), gcd(m, q) = 1, f square-free
//   ArtinSchreier(f, t)  y^p + y = f(x), deg f coprime to p
// For t > 1 the curve is taken over GF(q^t).  Relative degrees f(P'|P) are
// measured over F, place degrees over GF(q^t), so sum e*f = [F':F] = m*t and
// deg P' = f(P'|P) * deg P / t.

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "agchull/divisors.hpp"
#include "agchull/poly.hpp"

namespace agchull {

enum class Family { Constant, Kummer, ArtinSchreier };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Constant:
      return "constant";
    case Family::Kummer:
      return "kummer";
    case Family::ArtinSchreier:
      return "artin-schreier";
  }
  return "?";
}

class Extension;
using ExtensionPtr = std::shared_ptr<const Extension>;

class Extension {
 public:
  static ExtensionPtr constant(FieldPtr base, int t) {
    if (t < 1) throw Error("constant extension degree must be positive");
    auto e = std::shared_ptr<Extension>(new Extension(Family::Constant, base, Poly(base), 1, t));
    e->preset_ = "constant";
    return e;
  }

  static ExtensionPtr kummer(const Poly& f, int m, int t = 1) {
    const auto& base = f.field();
    if (m < 1) throw Error("Kummer exponent must be positive");
    if (m % base->characteristic() == 0) throw Error("Kummer exponent " + std::to_string(m) + " not coprime to q");
    if (f.degree() < 1) throw Error("Kummer polynomial must be non-constant");
    if (!is_square_free(f)) throw Error("Kummer polynomial " + f.to_string() + " is not square-free");
    auto e = std::shared_ptr<Extension>(new Extension(Family::Kummer, base, f, m, t));
    e->preset_ = "kummer";
    return e;
  }

  static ExtensionPtr artin_schreier(const Poly& f, int t = 1) {
    const auto& base = f.field();
    const int p = base->characteristic();
    if (f.degree() < 1) throw Error("Artin-Schreier polynomial must be non-constant");
    if (f.degree() % p == 0) throw Error("pole order " + std::to_string(f.degree()) + " at infinity is divisible by p");
    auto e = std::shared_ptr<Extension>(new Extension(Family::ArtinSchreier, base, f, p, t));
    e->preset_ = "artin-schreier";
    return e;
  }

  /// y^p + y = x^{p+1} over GF(p^2).
  static ExtensionPtr hermitian(int p) {
    auto base = make_field(p, 2);
    auto e = artin_schreier(Poly::monomial(base, p + 1, base->one()));
    std::const_pointer_cast<Extension>(e)->preset_ = "hermitian";
    return e;
  }

  /// y^2 + y = f(x) over GF(2^k); f defaults to x^3.
  static ExtensionPtr elliptic_as(const FieldPtr& base, std::optional<Poly> f = std::nullopt) {
    if (base->characteristic() != 2) throw Error("elliptic-as preset needs characteristic 2");
    Poly g = f ? *f : Poly::monomial(base, 3, base->one());
    if (g.degree() != 3) throw Error("elliptic-as preset needs a cubic");
    auto e = artin_schreier(g);
    std::const_pointer_cast<Extension>(e)->preset_ = "elliptic-as";
    return e;
  }

  /// y^2 = f(x) with f a square-free cubic, odd characteristic.
  static ExtensionPtr elliptic_kummer(const Poly& f) {
    if (f.field()->characteristic() == 2) throw Error("elliptic-kummer preset needs odd characteristic");
    if (f.degree() != 3) throw Error("elliptic-kummer preset needs a cubic");
    auto e = kummer(f, 2);
    std::const_pointer_cast<Extension>(e)->preset_ = "elliptic-kummer";
    return e;
  }

  /// y^2 = f(x) with f a square-free quintic, odd characteristic (genus 2).
  static ExtensionPtr hyperelliptic_kummer(const Poly& f) {
    if (f.field()->characteristic() == 2) throw Error("hyperelliptic-kummer preset needs odd characteristic");
    if (f.degree() != 5) throw Error("hyperelliptic-kummer preset needs a quintic");
    auto e = kummer(f, 2);
    std::const_pointer_cast<Extension>(e)->preset_ = "hyperelliptic-kummer";
    return e;
  }

  Family family() const { return family_; }
  const std::string& preset() const { return preset_; }
  const FieldPtr& base_field() const { return base_; }
  const FieldPtr& field() const { return field_; }
  const Embedding& embedding() const { return *embed_; }
  Elem embed(Elem a) const { return (*embed_)(a); }
  int t() const { return t_; }
  /// Degree of the defining equation in y (1 for constant extensions).
  int y_degree() const { return m_; }
  /// [F':F].
  int degree() const { return m_ * t_; }
  /// Defining polynomial over the base field (zero for constant extensions).
  const Poly& f() const { return f_; }
  const Poly& f_ext() const { return f_ext_; }
  bool has_y() const { return family_ != Family::Constant && m_ > 1; }

  /// Ambient tag used by every place of F'.
  const std::string& ambient() const { return ambient_; }

  std::string describe() const {
    std::string s = preset_ + "[" + family_name(family_);
    if (family_ != Family::Constant) s += ", m=" + std::to_string(m_) + ", f=" + f_.to_string();
    s += ", t=" + std::to_string(t_) + "] over " + base_->name();
    return s;
  }

  /// True when a single place of F' lies over P_inf (one-point bases need this).
  bool single_place_at_infinity() const {
    if (family_ == Family::Kummer) return std::gcd(m_, f_.degree()) == 1;
    return true;
  }

  /// Pole order of x at the place above P_inf (requires total ramification in y).
  int pole_order_x() const {
    require_one_point();
    return m_;
  }
  /// Pole order of y at the place above P_inf.
  int pole_order_y() const {
    require_one_point();
    if (!has_y()) return 0;
    return f_.degree();
  }

  /// Places of F' over a base place, with e, f and residue data.  Cached.
  std::vector<Place> decompose(const Place& base_place) const {
    if (base_place.is_extension()) throw Error("decompose expects a base place");
    if (base_place.field_order != base_->order()) throw Error("base place over a different constant field");
    const std::uint64_t key = base_place.is_infinite() ? ~0ull : base_place.alpha;
    {
      std::shared_lock lock(cache_mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    auto places = base_place.is_infinite() ? decompose_infinity() : decompose_finite(Elem{base_place.alpha});
    int sum = 0;
    for (const auto& p : places) sum += p.e * p.f;
    if (sum != degree())
      throw Error("fundamental identity violated at " + base_place.to_string() + ": sum e*f = " + std::to_string(sum));
    std::unique_lock lock(cache_mu_);
    auto [it, inserted] = cache_.try_emplace(key, std::move(places));
    return it->second;
  }

  /// The unique place above P_inf; throws unless P_inf has a single place over it.
  Place infinity_place() const {
    auto places = decompose(base_infinity(*base_));
    if (places.size() != 1) throw Error("P_inf is not totally ramified in " + describe());
    return places.front();
  }

 private:
  Extension(Family family, FieldPtr base, Poly f, int m, int t)
      : family_(family), base_(std::move(base)), f_(std::move(f)), f_ext_(Poly(base_)), m_(m), t_(t) {
    if (t_ < 1) throw Error("constant field degree must be positive");
    field_ = t_ == 1 ? base_ : make_field(base_->characteristic(), base_->degree() * t_);
    embed_ = std::make_shared<Embedding>(base_, field_);
    f_ext_ = map_coeffs(f_, *embed_);
    ambient_ = "F'[" + family_name(family_) + ",m=" + std::to_string(m_) + ",f=" + f_.to_string() + ",t=" +
               std::to_string(t_) + "]/" + base_->name();
  }

  void require_one_point() const {
    if (!single_place_at_infinity()) throw Error("P_inf is not totally ramified in " + describe());
  }

  Place make_place(PlaceKind kind, Elem alpha, int branch, int e, int f, int degree, std::optional<Elem> beta) const {
    Place p;
    p.ambient = ambient_;
    p.field_order = field_->order();
    p.kind = kind;
    p.alpha = alpha.v;
    p.branch = branch;
    p.e = e;
    p.f = f;
    p.degree = degree;
    if (beta) p.beta = beta->v;
    return p;
  }

  std::vector<Place> places_from_factors(const Poly& equation, Elem alpha) const {
    std::vector<Place> out;
    const auto factors = factor_univariate(equation);
    for (const auto& fac : factors)
      if (fac.multiplicity != 1) throw Error("unsupported configuration: repeated factor over P(" + std::to_string(alpha.v) + ")");
    int branch = 0;
    for (const auto& fac : factors) {
      const int d = fac.poly.degree();
      std::optional<Elem> beta;
      if (d == 1) beta = field_->neg(fac.poly.coeff(0));
      out.push_back(make_place(PlaceKind::ExtFinite, alpha, branch++, 1, d * t_, d, beta));
    }
    for (auto& p : out) p.siblings = static_cast<int>(out.size());
    return out;
  }

  /// y^m - c  or  y^p + y - c over GF(q^t).
  Poly fibre_equation(Elem c) const {
    std::vector<Elem> coeffs(m_ + 1, field_->zero());
    coeffs[m_] = field_->one();
    if (family_ == Family::ArtinSchreier) coeffs[1] = field_->add(coeffs[1], field_->one());
    coeffs[0] = field_->sub(coeffs[0], c);
    return Poly(field_, std::move(coeffs));
  }

  std::vector<Place> decompose_finite(Elem alpha) const {
    if (family_ == Family::Constant)
      return {make_place(PlaceKind::ExtFinite, alpha, 0, 1, t_, 1, std::nullopt)};
    const Elem c = f_ext_(embed(alpha));
    if (family_ == Family::Kummer && c.v == 0) {
      if (root_multiplicity(f_, alpha) > 1)
        throw Error("unsupported configuration: f has a multiple zero at " + std::to_string(alpha.v));
      return {make_place(PlaceKind::ExtFinite, alpha, 0, m_, t_, 1, field_->zero())};
    }
    return places_from_factors(fibre_equation(c), alpha);
  }

  std::vector<Place> decompose_infinity() const {
    if (family_ == Family::Constant) return {make_place(PlaceKind::ExtInfinite, Elem{0}, 0, 1, t_, 1, std::nullopt)};
    if (family_ == Family::ArtinSchreier) return {make_place(PlaceKind::ExtInfinite, Elem{0}, 0, m_, t_, 1, std::nullopt)};
    const int g = std::gcd(m_, f_.degree());
    if (g == 1) return {make_place(PlaceKind::ExtInfinite, Elem{0}, 0, m_, t_, 1, std::nullopt)};
    // w = y^{m/g} / x^{deg f / g} satisfies w^g = lc(f) at infinity.
    std::vector<Elem> coeffs(g + 1, field_->zero());
    coeffs[g] = field_->one();
    coeffs[0] = field_->neg(f_ext_.leading());
    std::vector<Place> out;
    int branch = 0;
    for (const auto& fac : factor_univariate(Poly(field_, coeffs))) {
      const int d = fac.poly.degree();
      out.push_back(make_place(PlaceKind::ExtInfinite, Elem{0}, branch++, m_ / g, d * t_, d, std::nullopt));
    }
    for (auto& p : out) p.siblings = static_cast<int>(out.size());
    return out;
  }

  Family family_;
  std::string preset_;
  FieldPtr base_;
  FieldPtr field_;
  std::shared_ptr<Embedding> embed_;
  Poly f_;
  Poly f_ext_;
  int m_;
  int t_;
  std::string ambient_;

  mutable std::shared_mutex cache_mu_;
  mutable std::map<std::uint64_t, std::vector<Place>> cache_;
};

/// Conorm of a base divisor: each P becomes sum e(P'|P) P'.
inline Divisor conorm_divisor(const Divisor& d, const Extension& ext) {
  Divisor out;
  for (const auto& [p, c] : d.terms())
    for (const auto& q : ext.decompose(p)) out.add(q, c * q.e);
  return out;
}

/// Degree of a conorm predicted by the degree law: ([F':F]/t) deg D.
inline int conorm_degree_law(const Divisor& d, const Extension& ext) { return ext.y_degree() * divisor_degree(d); }

struct RamifiedBranch {
  int e = 1;
  int f = 1;
  int degree = 1;
  int different_exponent = 0;
  std::optional<Place> place;  // present when the base place is rational
};

struct RamifiedPlace {
  std::string base_label;
  int base_degree = 1;
  std::optional<Place> base_place;
  std::vector<RamifiedBranch> branches;
  bool totally_ramified = false;  // e = [F':F]
  bool tame = true;
};

struct RamificationRecord {
  std::vector<RamifiedPlace> entries;
  int different_degree = 0;
  int ramification_degree = 0;     // deg R, R = sum of ramified base places
  bool all_totally_ramified = true;
  bool tame = true;
  Divisor different;               // restricted to representable (rational-base) places
  bool different_complete = true;  // false when some ramified base place is non-rational
};

/// Different divisor for the supported catalog: tame places get d = e - 1,
/// the standard Artin-Schreier pole gets d = (p - 1)(u + 1).
inline RamificationRecord different_divisor(const Extension& ext) {
  RamificationRecord rec;
  const auto& base = *ext.base_field();
  const int p = base.characteristic();
  auto add_entry = [&](RamifiedPlace entry) {
    for (const auto& b : entry.branches) {
      rec.different_degree += b.different_exponent * b.degree;
      if (b.place) rec.different.add(*b.place, b.different_exponent);
      if (b.e % p == 0) entry.tame = false;
    }
    entry.totally_ramified = entry.branches.size() == 1 && entry.branches.front().e == ext.degree();
    rec.ramification_degree += entry.base_degree;
    rec.all_totally_ramified = rec.all_totally_ramified && entry.totally_ramified;
    rec.tame = rec.tame && entry.tame;
    if (!entry.base_place) rec.different_complete = false;
    rec.entries.push_back(std::move(entry));
  };

  switch (ext.family()) {
    case Family::Constant:
      break;
    case Family::Kummer: {
      const int m = ext.y_degree();
      if (m == 1) break;
      for (const auto& fac : factor_univariate(ext.f())) {
        RamifiedPlace entry;
        entry.base_degree = fac.poly.degree();
        if (entry.base_degree == 1) {
          const Elem alpha = base.neg(fac.poly.coeff(0));
          entry.base_place = base_place(base, alpha);
          entry.base_label = entry.base_place->to_string();
          for (const auto& q : ext.decompose(*entry.base_place))
            entry.branches.push_back({q.e, q.f, q.degree, q.e - 1, q});
        } else {
          // A degree-delta place splits into gcd(delta, t) places in the constant
          // extension, each totally ramified in y.
          entry.base_label = "P[" + fac.poly.to_string() + "]";
          const int g = std::gcd(entry.base_degree, ext.t());
          for (int i = 0; i < g; ++i) entry.branches.push_back({m, ext.t() / g, entry.base_degree / g, m - 1, std::nullopt});
        }
        add_entry(std::move(entry));
      }
      const auto inf = ext.decompose(base_infinity(base));
      if (inf.front().e > 1) {
        RamifiedPlace entry;
        entry.base_place = base_infinity(base);
        entry.base_label = "P(inf)";
        for (const auto& q : inf) entry.branches.push_back({q.e, q.f, q.degree, q.e - 1, q});
        add_entry(std::move(entry));
      }
      break;
    }
    case Family::ArtinSchreier: {
      const int u = ext.f().degree();
      RamifiedPlace entry;
      entry.base_place = base_infinity(base);
      entry.base_label = "P(inf)";
      const auto q = ext.infinity_place();
      entry.branches.push_back({q.e, q.f, q.degree, (p - 1) * (u + 1), q});
      add_entry(std::move(entry));
      break;
    }
  }
  if (rec.entries.empty()) rec.all_totally_ramified = false;
  return rec;
}

/// Genus of F' from the Hurwitz formula over a rational base:
/// 2g' - 2 = ([F':F]/t)(-2) + deg Diff.
inline int genus_of_extension(const Extension& ext) {
  const int two_g = 2 - 2 * ext.y_degree() + different_divisor(ext).different_degree;
  if (two_g < 0 || two_g % 2 != 0)
    throw Error("Hurwitz formula gives a non-integral or negative genus for " + ext.describe());
  return two_g / 2;
}

struct Assumption3Report {
  bool holds = true;
  std::map<Place, int> places_above;   // m_P per base place of supp D
  std::vector<std::string> violations;
};

/// Checks e(P'|P) = [F':F] / m_P for every place above supp D.
inline Assumption3Report check_assumption3(const Divisor& d, const Extension& ext) {
  Assumption3Report r;
  const int m = ext.degree();
  for (const auto& [p, c] : d.terms()) {
    const auto above = ext.decompose(p);
    const int mp = static_cast<int>(above.size());
    r.places_above[p] = mp;
    for (const auto& q : above) {
      if (q.e * mp != m) {
        r.holds = false;
        r.violations.push_back(q.to_string() + " over " + p.to_string() + ": e=" + std::to_string(q.e) + " but m/m_P=" +
                               std::to_string(m) + "/" + std::to_string(mp));
      }
    }
  }
  return r;
}

}  // namespace agchull
