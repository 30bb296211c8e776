#pragma once
/// Conorm codes of the two-point rational codes C_ab, the column-repetition
/// code of a constant field extension, the duality audit, and closed-form
/// hull predictors.
///
/// The duality assumption (the conorm of the dual equals the dual of the
/// conorm) is not taken for granted.  Each instance measures it directly and
/// predictions that depend on it are flagged as not applicable when it fails.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agchull/ag_codes.hpp"
#include "agchull/extensions.hpp"
#include "agchull/riemann_roch.hpp"

namespace agchull {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw Error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool is_integer() const { return den == 1; }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
  friend bool operator>(Rational a, Rational b) { return b < a; }
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }
  friend bool operator>=(Rational a, Rational b) { return !(a < b); }
};

enum class ConditionKind { Structural, Assumption };

struct Condition {
  std::string name;
  bool pass = false;
  ConditionKind kind = ConditionKind::Structural;
};

enum class PredictionKind { Equality, LowerBound };

struct Prediction {
  std::string source;  // prop51 | thm32 | thm41 | cor42 | cor43 | remark34 | ex52 | ex53 | ex54
  PredictionKind kind = PredictionKind::Equality;
  std::string target;  // quantity predicted: "h(C)" or "h(C')"
  Rational value;
  std::vector<Condition> conditions;

  std::string key() const { return source + (kind == PredictionKind::LowerBound ? "_lb" : "_eq"); }
  bool applicable() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }
  /// Hypotheses other than the audited assumptions hold.
  bool structurally_applicable() const {
    for (const auto& c : conditions)
      if (c.kind == ConditionKind::Structural && !c.pass) return false;
    return true;
  }
  bool agrees_with(std::int64_t observed) const {
    const Rational o(observed);
    return kind == PredictionKind::Equality ? o == value : o >= value;
  }
  bool matches(std::int64_t observed) const { return applicable() && agrees_with(observed); }
};

// ---------------------------------------------------------------------------
// Constant field extensions (column repetition).

/// Generator G (x) [1, ..., 1] over GF(q^t); the hull dimension is preserved.
inline AGCode build_constant_ext_code(const AGCode& c, int t) {
  const auto& base = c.field;
  if (t < 1) throw Error("t must be positive");
  if (t % base->characteristic() == 0) throw Error("t = " + std::to_string(t) + " is divisible by the characteristic");
  const auto ext = Extension::constant(base, t);
  const auto& target = ext->field();
  const auto& emb = ext->embedding();
  const std::size_t n = c.length();
  Matrix gen(target, c.dimension(), n * static_cast<std::size_t>(t));
  for (std::size_t i = 0; i < c.dimension(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int s = 0; s < t; ++s) gen(i, j * t + s) = emb(c.generator(i, j));
  std::vector<Place> places;
  for (const auto& p : c.places)
    for (int s = 0; s < t; ++s) places.push_back(ext->decompose(p).front());
  AGCode out{target, std::move(places), std::move(gen), conorm_divisor(c.D, *ext), conorm_divisor(c.G, *ext), std::nullopt};
  if (c.H) out.H = conorm_divisor(*c.H, *ext);
  if (hull_dim_rank(out) != hull_dim_rank(c)) throw Error("column repetition changed the hull dimension");
  return out;
}

// ---------------------------------------------------------------------------
// Conorm codes of C_ab.

struct ConormInstance {
  FieldPtr base_field;
  int n = 0, a = 0, b = 0;
  ExtensionPtr ext;
  AGCode base;
  std::vector<Place> d_places;   // D'
  std::vector<Point> d_points;   // residue coordinates of D' over GF(q^t)
  Divisor g_prime;               // Con(G)
  Divisor h_prime;               // Con(H)
  AGCode code;                   // C'
  int genus = 0;
  RamificationRecord ramification;
  Assumption3Report eq3;
  int sum_places_above = 0;      // sum over supp D of m_P
};

/// Places of D' with coordinates; throws when a place above supp D is not rational.
inline std::pair<std::vector<Place>, std::vector<Point>> conorm_evaluation_places(const std::vector<Place>& base_places,
                                                                                  const Extension& ext) {
  std::vector<Place> places;
  std::vector<Point> points;
  for (const auto& p : base_places) {
    for (const auto& q : ext.decompose(p)) {
      if (!q.is_rational())
        throw Error("place " + q.to_string() + " above " + p.to_string() + " has degree " + std::to_string(q.degree) +
                    "; it cannot be an evaluation point");
      places.push_back(q);
      const Elem y = q.beta ? Elem{*q.beta} : ext.field()->zero();
      points.push_back({ext.embed(Elem{p.alpha}), y});
    }
  }
  return {std::move(places), std::move(points)};
}

inline ConormInstance build_conorm_code(const FieldPtr& f, int n, int a, int b, const ExtensionPtr& ext) {
  if (!same_field(ext->base_field(), f)) throw Error("extension is not over " + f->name());
  ConormInstance inst;
  inst.base_field = f;
  inst.n = n;
  inst.a = a;
  inst.b = b;
  inst.ext = ext;
  inst.base = build_cab(f, n, a, b);
  inst.eq3 = check_assumption3(inst.base.D, *ext);
  if (!inst.eq3.holds) {
    std::string msg = "assumption e(P'|P) = m/m_P fails:";
    for (const auto& v : inst.eq3.violations) msg += " " + v + ";";
    throw Error(msg);
  }
  for (const auto& [p, mp] : inst.eq3.places_above) inst.sum_places_above += mp;
  auto [places, points] = conorm_evaluation_places(inst.base.places, *ext);
  inst.d_places = std::move(places);
  inst.d_points = std::move(points);
  inst.g_prime = conorm_divisor(inst.base.G, *ext);
  inst.h_prime = conorm_divisor(*inst.base.H, *ext);
  inst.genus = genus_of_extension(*ext);
  inst.ramification = different_divisor(*ext);
  inst.code = build_ag_code(ext->field(), inst.d_places, inst.d_points, inst.g_prime, rr_basis_conorm_two_point(*ext, a, b));
  inst.code.H = inst.h_prime;
  return inst;
}

struct Eq5Record {
  Rational necessary_lhs;  // (1/t)(m n - sum m_P)
  int deg_diff = 0;
  bool necessary_pass = false;
  bool empirical_equal = false;
};

/// Necessary condition and direct row-space test of Con(C^perp) = Con(C)^perp.
inline Eq5Record check_eq5(const ConormInstance& inst) {
  Eq5Record r;
  const auto& ext = *inst.ext;
  r.necessary_lhs = Rational(static_cast<std::int64_t>(ext.degree()) * inst.n - inst.sum_places_above, ext.t());
  r.deg_diff = inst.ramification.different_degree;
  r.necessary_pass = r.necessary_lhs == Rational(r.deg_diff);
  const auto dual_conorm = build_ag_code(ext.field(), inst.d_places, inst.d_points, inst.h_prime,
                                         rr_basis_conorm_two_point(ext, -(inst.a + 1), inst.n - inst.b - 1));
  r.empirical_equal = rowspace_equal(dual_conorm.generator, dual_code_matrix(inst.code));
  return r;
}

/// gcd(G, H) for C_ab as (coefficient at P_0, coefficient at P_inf).
inline std::pair<int, int> cab_gcd_coefficients(int n, int a, int b) {
  return {std::min(a, -(a + 1)), std::min(b, n - b - 1)};
}

struct HullContext {
  int n = 0;
  int deg_g = 0;            // deg G
  int deg_gcd = 0;          // deg gcd(G, H)
  bool gcd_non_special = false;
  int base_genus = 0;
  int m = 1;                // [F':F]
  int t = 1;
  int deg_diff = 0;
  const RamificationRecord* ramification = nullptr;
  bool galois = false;
  bool eq3 = false;
  bool eq5 = false;
  int q = 0;
};

namespace detail {
inline Condition structural(std::string name, bool pass) { return {std::move(name), pass, ConditionKind::Structural}; }
inline Condition assumption(std::string name, bool pass) { return {std::move(name), pass, ConditionKind::Assumption}; }
}  // namespace detail

/// Hull predictions for C' from the base hull dimension.  Lower bounds and
/// equalities are emitted separately, each with its hypotheses.
inline std::vector<Prediction> predict_hull(const HullContext& cx, int h_base) {
  using detail::assumption;
  using detail::structural;
  std::vector<Prediction> out;
  const int g = cx.base_genus;
  const Rational m_over_t(cx.m, cx.t);
  const std::vector<Condition> common = {
      structural("2g-2 < deg G < n", 2 * g - 2 < cx.deg_g && cx.deg_g < cx.n),
      structural("gcd(G,H) non-special", cx.gcd_non_special),
      assumption("e(P'|P) = m/m_P on supp D", cx.eq3),
      assumption("Con(C^perp) = Con(C)^perp", cx.eq5),
  };
  auto emit = [&](std::string source, PredictionKind kind, Rational value, std::vector<Condition> extra) {
    Prediction p;
    p.source = std::move(source);
    p.kind = kind;
    p.target = "h(C')";
    p.value = value;
    p.conditions = common;
    p.conditions.insert(p.conditions.end(), extra.begin(), extra.end());
    out.push_back(std::move(p));
  };

  // Unramified extensions with t = 1.
  {
    const std::vector<Condition> hyp = {structural("unramified (deg Diff = 0)", cx.deg_diff == 0),
                                        structural("t = 1", cx.t == 1),
                                        structural("(q, m) = 1", std::gcd(cx.q, cx.m) == 1)};
    emit("thm32", PredictionKind::LowerBound, Rational(cx.m) * Rational(h_base), hyp);
    auto eq = hyp;
    eq.push_back(structural("2g-2 < deg gcd(G,H)", 2 * g - 2 < cx.deg_gcd));
    emit("thm32", PredictionKind::Equality, Rational(cx.m) * Rational(h_base), eq);
  }

  // Separable extensions, possibly ramified.
  const Rational thm41 = m_over_t * Rational(h_base) - Rational(cx.deg_diff, 2);
  emit("thm41", PredictionKind::LowerBound, thm41, {});
  const bool thm41_degree = Rational(cx.deg_gcd) > Rational(2 * g - 2) + Rational(cx.t * cx.deg_diff, cx.m);
  emit("thm41", PredictionKind::Equality, thm41, {structural("deg gcd > 2g-2 + (t/m) deg Diff", thm41_degree)});

  if (cx.ramification) {
    const auto& ram = *cx.ramification;
    // sum over ramified places of (m - m_P f_P) deg P
    std::int64_t sum = 0;
    Rational threshold(2 * g - 2);
    for (const auto& e : ram.entries) {
      const int mp = static_cast<int>(e.branches.size());
      const int fp = e.branches.front().f;
      sum += static_cast<std::int64_t>(cx.m - mp * fp) * e.base_degree;
      threshold = threshold + (Rational(1) - Rational(mp * fp, cx.m)) * Rational(e.base_degree);
    }
    const Rational cor42 = m_over_t * Rational(h_base) - Rational(sum, 2 * cx.t);
    const Condition tame = structural("Galois tame extension", cx.galois && ram.tame);
    emit("cor42", PredictionKind::LowerBound, cor42, {tame});
    emit("cor42", PredictionKind::Equality, cor42,
         {tame, structural("deg gcd > 2g-2 + sum (1 - m_P f_P/m) deg P", Rational(cx.deg_gcd) > threshold)});
    if (cx.galois && ram.tame && !(cor42 == thm41))
      throw Error("tame different degree disagrees with sum (m - m_P f_P) deg P / t");

    const Rational deg_r(ram.ramification_degree);
    const Rational cor43 = m_over_t * Rational(h_base) - Rational(cx.m - 1, 2 * cx.t) * deg_r;
    const Condition total = structural("all ramified places totally ramified", ram.all_totally_ramified);
    emit("cor43", PredictionKind::LowerBound, cor43, {tame, total});
    emit("cor43", PredictionKind::Equality, cor43,
         {tame, total,
          structural("deg gcd > 2g-2 + ((m-1)/m) deg R", Rational(cx.deg_gcd) > Rational(2 * g - 2) + Rational(cx.m - 1, cx.m) * deg_r)});
    if (cx.galois && ram.tame && ram.all_totally_ramified && !(cor43 == thm41))
      throw Error("totally ramified tame different degree disagrees with (m-1) deg R / t");
  }
  return out;
}

enum class FormulaFamily { Prop51, Elliptic, Hyperelliptic, Hermitian };

/// Which of the four (a, b) regimes applies: 1..4 in the order of the case split.
inline int cab_regime(int n, int a, int b) {
  const bool b_high = 2 * b >= n - 1;
  if (a >= 0) return b_high ? 1 : 2;
  return b_high ? 3 : 4;
}

/// Closed-form predictions for C_ab and its conorm on the curve families.
/// `param` is deg f for the hyperelliptic family and p for the Hermitian one.
inline Prediction predict_formula(FormulaFamily family, int n, int a, int b, int h_base, int param = 0, bool eq3 = true,
                                  bool eq5 = true) {
  using detail::assumption;
  using detail::structural;
  require_cab_window(n, a, b);
  Prediction p;
  p.kind = PredictionKind::Equality;
  const int regime = cab_regime(n, a, b);
  const std::string regime_tag = "regime " + std::to_string(regime);
  switch (family) {
    case FormulaFamily::Prop51:
      p.source = "prop51";
      p.target = "h(C)";
      p.value = Rational(prop51_hull(n, a, b));
      p.conditions = {structural(regime_tag, true)};
      return p;
    case FormulaFamily::Elliptic:
      p.source = "ex52";
      p.value = Rational(2 * h_base - 2);
      p.conditions = {structural("1 < b-a < n-1", 1 < b - a && b - a < n - 1),
                      structural("0 < a+b < n-2", 0 < a + b && a + b < n - 2), structural(regime_tag, true)};
      break;
    case FormulaFamily::Hyperelliptic: {
      p.source = "ex53";
      const int c = (param + 1) / 2;
      p.value = Rational(2 * h_base - c);
      bool ok = false;
      std::string name;
      switch (regime) {
        case 1: ok = n - c > a + b; name = "n - ceil(m/2) > a+b"; break;
        case 2: ok = b - a > c - 1; name = "b-a > ceil(m/2) - 1"; break;
        case 3: ok = n - c + 1 > b - a; name = "n - ceil(m/2) + 1 > b-a"; break;
        default: ok = a + b > c - 2; name = "a+b > ceil(m/2) - 2"; break;
      }
      p.conditions = {structural(regime_tag + ": " + name, ok)};
      break;
    }
    case FormulaFamily::Hermitian: {
      p.source = "ex54";
      const int q = param;
      p.value = Rational(static_cast<std::int64_t>(q) * h_base - q * (q + 1) / 2 + 1);
      bool ok = false;
      std::string name;
      // Conditions multiplied through by p.
      switch (regime) {
        case 1: ok = q * (n - q - 1) + 2 > q * (a + b); name = "n - p + 2/p - 1 > a+b"; break;
        case 2: ok = q * (b - a) > q * q - 2; name = "b-a > p - 2/p"; break;
        case 3: ok = q * (n - q) + 2 > q * (b - a); name = "n - p + 2/p > b-a"; break;
        default: ok = q * (a + b) > q * q - q - 2; name = "a+b > p - 2/p - 1"; break;
      }
      p.conditions = {structural(regime_tag + ": " + name, ok)};
      break;
    }
  }
  p.target = "h(C')";
  p.conditions.push_back(assumption("e(P'|P) = m/m_P on supp D", eq3));
  p.conditions.push_back(assumption("Con(C^perp) = Con(C)^perp", eq5));
  return p;
}

}  // namespace agchull
