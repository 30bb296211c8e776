#pragma once
// Instance configuration, the per-instance pipeline, sweeps, fully split
// instance search and report emission (CSV and JSON).
//
// Needs nlohmann/json ("json.hpp") on the include path.

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "agchull/conorm_codes.hpp"

namespace agchull {

inline constexpr int kSchemaVersion = 1;

struct ExtensionSpec {
  std::string family = "none";  // none | constant | hermitian | elliptic-as | elliptic-kummer |
                                 // hyperelliptic-kummer | kummer | artin-schreier
  std::optional<int> p;
  std::optional<int> m;
  int t = 1;
  std::vector<std::uint32_t> f;  // coefficient codes, constant term first

  std::string label() const {
    std::string s = family;
    if (p) s += ":p=" + std::to_string(*p);
    if (m) s += ":m=" + std::to_string(*m);
    if (t != 1 || family == "constant") s += ":t=" + std::to_string(t);
    if (!f.empty()) {
      s += ":f=";
      for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    }
    return s;
  }
};

struct IntRange {
  int lo = 0;
  int hi = -1;
  bool single() const { return lo == hi; }
};

struct InstanceConfig {
  int p = 0;
  int k = 1;
  int n = 0;
  IntRange a, b;
  std::vector<ExtensionSpec> extensions{ExtensionSpec{}};
  std::string suite;
  std::string out;
  std::string format = "csv";
  int threads = 1;
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw Error("unknown key '" + it.key() + "' in " + where);
  }
}

inline IntRange parse_range(const nlohmann::json& j, const char* name) {
  if (j.is_number_integer()) return {j.get<int>(), j.get<int>()};
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
    return {j[0].get<int>(), j[1].get<int>()};
  throw Error(std::string("'") + name + "' must be an integer or [lo, hi]");
}

inline ExtensionSpec parse_extension(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("extension entries must be objects");
  reject_unknown(j, {"family", "p", "m", "t", "f"}, "extension");
  ExtensionSpec s;
  if (!j.contains("family")) throw Error("extension needs a 'family'");
  s.family = j.at("family").get<std::string>();
  static const char* known[] = {"none", "constant", "hermitian", "elliptic-as", "elliptic-kummer",
                                "hyperelliptic-kummer", "kummer", "artin-schreier"};
  if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return s.family == k; }) == std::end(known))
    throw Error("unknown extension family '" + s.family + "'");
  if (j.contains("p")) s.p = j.at("p").get<int>();
  if (j.contains("m")) s.m = j.at("m").get<int>();
  if (j.contains("t")) s.t = j.at("t").get<int>();
  if (j.contains("f")) s.f = j.at("f").get<std::vector<std::uint32_t>>();
  return s;
}

}  // namespace detail

/// Parses a config object; unknown keys and out-of-window single (a, b) are rejected.
inline InstanceConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  detail::reject_unknown(j, {"p", "k", "n", "a", "b", "extension", "suite", "out", "format", "threads"}, "config");
  InstanceConfig c;
  for (const char* req : {"p", "n", "a", "b"})
    if (!j.contains(req)) throw Error(std::string("config needs '") + req + "'");
  c.p = j.at("p").get<int>();
  if (j.contains("k")) c.k = j.at("k").get<int>();
  c.n = j.at("n").get<int>();
  c.a = detail::parse_range(j.at("a"), "a");
  c.b = detail::parse_range(j.at("b"), "b");
  if (j.contains("extension")) {
    const auto& e = j.at("extension");
    c.extensions.clear();
    if (e.is_array())
      for (const auto& x : e) c.extensions.push_back(detail::parse_extension(x));
    else
      c.extensions.push_back(detail::parse_extension(e));
  }
  if (j.contains("suite")) c.suite = j.at("suite").get<std::string>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (c.format != "csv" && c.format != "json") throw Error("format must be csv or json");
  if (j.contains("threads")) c.threads = std::max(1, j.at("threads").get<int>());

  const auto field = make_field(c.p, c.k);
  if (c.n < 2 || (field->order() - 1) % static_cast<std::uint32_t>(c.n) != 0)
    throw Error("n = " + std::to_string(c.n) + " must be >= 2 and divide q - 1 = " + std::to_string(field->order() - 1));
  if (c.a.single() && c.b.single()) require_cab_window(c.n, c.a.lo, c.b.lo);
  return c;
}

inline ExtensionPtr make_extension(const ExtensionSpec& s, const FieldPtr& base) {
  auto poly = [&]() {
    if (s.f.empty()) throw Error(s.family + " needs coefficients 'f'");
    for (auto c : s.f)
      if (c >= base->order()) throw Error("coefficient code " + std::to_string(c) + " outside " + base->name());
    return Poly::from_codes(base, s.f);
  };
  if (s.family == "none") return nullptr;
  if (s.family == "constant") return Extension::constant(base, s.t);
  if (s.family == "hermitian") {
    const int p = s.p.value_or(static_cast<int>(base->characteristic()));
    if (base->characteristic() != p || base->degree() != 2)
      throw Error("hermitian p=" + std::to_string(p) + " needs base field GF(p^2), got " + base->name());
    return Extension::hermitian(p);
  }
  if (s.family == "elliptic-as") return Extension::elliptic_as(base, s.f.empty() ? std::nullopt : std::optional(poly()));
  if (s.family == "elliptic-kummer") return Extension::elliptic_kummer(poly());
  if (s.family == "hyperelliptic-kummer") return Extension::hyperelliptic_kummer(poly());
  if (s.family == "kummer") {
    if (!s.m) throw Error("kummer needs 'm'");
    return Extension::kummer(poly(), *s.m, s.t);
  }
  if (s.family == "artin-schreier") return Extension::artin_schreier(poly(), s.t);
  throw Error("unknown extension family '" + s.family + "'");
}

// ---------------------------------------------------------------------------
// Report rows.

struct PredictionResult {
  Prediction prediction;
  std::optional<int> observed;
  bool match = false;  // applicable and agrees with observed
  bool agrees = false; // agrees with observed regardless of applicability
};

struct ReportRow {
  std::string id;
  int q = 0, n = 0, a = 0, b = 0;
  std::string family = "none";
  std::string extension;
  std::string g_divisor, gcd_divisor;
  std::optional<int> genus, deg_diff;
  std::optional<int> k, k_prime, h_base, h_prime, ell_gcd, ell_con_gcd;
  std::optional<bool> eq3, eq5_necessary, eq5_empirical;
  std::optional<Rational> eq5_lhs;
  std::optional<bool> hull_equals_ell_con_gcd;  // set when eq5 holds and Con(gcd) is non-special in range
  std::optional<bool> prop31_self_dual;          // set only when the premise holds
  std::optional<bool> thm33_gcd_principal, thm33_conorm_lcd;
  std::vector<PredictionResult> predictions;
  std::string diagnostic;

  const PredictionResult* find(const std::string& key) const {
    for (const auto& p : predictions)
      if (p.prediction.key() == key) return &p;
    return nullptr;
  }
};

inline std::string instance_id(int q, int n, int a, int b, const ExtensionSpec& s) {
  return "q" + std::to_string(q) + ":n" + std::to_string(n) + ":a" + std::to_string(a) + ":b" + std::to_string(b) + ":" +
         s.label();
}

namespace detail {

inline void add_prediction(ReportRow& row, Prediction p, std::optional<int> observed) {
  PredictionResult r{std::move(p), observed, false, false};
  if (observed) {
    r.agrees = r.prediction.agrees_with(*observed);
    r.match = r.agrees && r.prediction.applicable();
  }
  row.predictions.push_back(std::move(r));
}

inline bool galois_extension(const Extension& ext) {
  if (ext.family() == Family::ArtinSchreier || ext.family() == Family::Constant) return true;
  // Kummer: Galois when the m-th roots of unity lie in GF(q^t).
  return (ext.field()->order() - 1) % static_cast<std::uint32_t>(ext.y_degree()) == 0;
}

inline FormulaFamily formula_family(const std::string& family) {
  if (family == "hermitian") return FormulaFamily::Hermitian;
  if (family == "hyperelliptic-kummer") return FormulaFamily::Hyperelliptic;
  return FormulaFamily::Elliptic;
}

inline void run_constant(ReportRow& row, const FieldPtr& f, const AGCode& base, const Extension& ext) {
  const int t = ext.t();
  const auto code = build_constant_ext_code(base, t);
  row.k_prime = static_cast<int>(code.dimension());
  row.h_prime = static_cast<int>(hull_basis_intersect(code).rows());
  row.genus = 0;
  row.deg_diff = 0;
  row.eq3 = check_assumption3(base.D, ext).holds;
  row.eq5_lhs = Rational(static_cast<std::int64_t>(t) * row.n - row.n, t);
  row.eq5_necessary = *row.eq5_lhs == Rational(0);
  AGCode dual{f, base.places, dual_code_matrix(base), base.D, *base.H, std::nullopt};
  const auto dual_rep = build_constant_ext_code(dual, t);
  row.eq5_empirical = rowspace_equal(dual_rep.generator, dual_code_matrix(code));
  const auto [g0, g1] = cab_gcd_coefficients(row.n, row.a, row.b);
  row.ell_con_gcd = rr_basis_conorm_two_point(ext, g0, g1).dimension;
  Prediction p;
  p.source = "remark34";
  p.target = "h(C')";
  p.value = Rational(*row.h_base);
  p.conditions = {detail::structural("t not divisible by p", t % static_cast<int>(f->characteristic()) != 0)};
  add_prediction(row, std::move(p), row.h_prime);
}

inline void run_conorm(ReportRow& row, const FieldPtr& f, const AGCode& base, const ExtensionPtr& ext,
                       const std::string& family) {
  const auto [g0, g1] = cab_gcd_coefficients(row.n, row.a, row.b);
  row.genus = genus_of_extension(*ext);
  const auto ram = different_divisor(*ext);
  row.deg_diff = ram.different_degree;
  if (ext->single_place_at_infinity()) row.ell_con_gcd = rr_basis_conorm_two_point(*ext, g0, g1).dimension;
  const auto eq3 = check_assumption3(base.D, *ext);
  row.eq3 = eq3.holds;

  const auto inst = build_conorm_code(f, row.n, row.a, row.b, ext);
  const auto eq5 = check_eq5(inst);
  row.eq5_lhs = eq5.necessary_lhs;
  row.eq5_necessary = eq5.necessary_pass;
  row.eq5_empirical = eq5.empirical_equal;
  row.k_prime = static_cast<int>(inst.code.dimension());
  const auto hc = classify(inst.code);
  row.h_prime = static_cast<int>(hc.hull_dim);

  HullContext cx;
  cx.n = row.n;
  cx.deg_g = row.a + row.b;
  cx.deg_gcd = g0 + g1;
  cx.gcd_non_special = !ell_dim_rational(f, two_point_divisor(*f, g0, g1)).special();
  cx.m = ext->degree();
  cx.t = ext->t();
  cx.deg_diff = ram.different_degree;
  cx.ramification = &ram;
  cx.galois = galois_extension(*ext);
  cx.eq3 = eq3.holds;
  cx.eq5 = eq5.empirical_equal;
  cx.q = static_cast<int>(f->order());
  for (auto& p : predict_hull(cx, *row.h_base)) add_prediction(row, std::move(p), row.h_prime);

  if (family != "kummer" && family != "artin-schreier") {
    const auto ff = formula_family(family);
    const int param = ff == FormulaFamily::Hermitian ? static_cast<int>(f->characteristic()) : ext->f().degree();
    add_prediction(row, predict_formula(ff, row.n, row.a, row.b, *row.h_base, param, eq3.holds, eq5.empirical_equal),
                   row.h_prime);
  }

  // Hull equals l(Con gcd) when the duality holds and Con(gcd) is non-special.
  const int g = *row.genus;
  const int deg_gp = divisor_degree(inst.g_prime);
  const int n_prime = static_cast<int>(inst.d_places.size());
  if (eq5.empirical_equal && row.ell_con_gcd && 2 * g - 2 < deg_gp && deg_gp < n_prime) {
    const Divisor con_gcd = g0 * conorm_divisor(Divisor(base_place(*f, f->zero()), 1), *ext) +
                            g1 * conorm_divisor(Divisor(base_infinity(*f), 1), *ext);
    const int deg = divisor_degree(con_gcd);
    const int spec = *row.ell_con_gcd - deg + g - 1;
    if (spec == 0) row.hull_equals_ell_con_gcd = *row.h_prime == *row.ell_con_gcd;
  }
  const auto bc = classify(base);
  if (bc.is_self_dual && eq5.empirical_equal) row.prop31_self_dual = hc.is_self_dual;
  if (g == 1 && bc.is_lcd && 0 < row.a + row.b && row.a + row.b < row.n && cx.gcd_non_special && g0 + g1 == 0) {
    // Degree-zero divisors on the rational field are principal.
    row.thm33_gcd_principal = true;
    row.thm33_conorm_lcd = hc.is_lcd;
  }
}

}  // namespace detail

/// Full pipeline for one (a, b) and one extension; module errors land in `diagnostic`.
inline ReportRow run_instance(const FieldPtr& f, int n, int a, int b, const ExtensionSpec& spec,
                              const ExtensionPtr& prebuilt = nullptr) {
  ReportRow row;
  row.q = static_cast<int>(f->order());
  row.n = n;
  row.a = a;
  row.b = b;
  row.family = spec.family;
  row.id = instance_id(row.q, n, a, b, spec);
  try {
    const auto base = build_cab(f, n, a, b);
    row.g_divisor = base.G.to_string();
    const auto [g0, g1] = cab_gcd_coefficients(n, a, b);
    const auto gcd = divisor_gcd(base.G, *base.H);
    row.gcd_divisor = gcd.to_string();
    row.k = static_cast<int>(base.dimension());
    row.h_base = static_cast<int>(hull_basis_intersect(base).rows());
    row.ell_gcd = ell_dim_rational(f, two_point_divisor(*f, g0, g1)).ell;
    detail::add_prediction(row, predict_formula(FormulaFamily::Prop51, n, a, b, *row.h_base), row.h_base);
    if (spec.family == "none") return row;

    const auto ext = prebuilt ? prebuilt : make_extension(spec, f);
    row.extension = ext->describe();
    if (ext->family() == Family::Constant)
      detail::run_constant(row, f, base, *ext);
    else
      detail::run_conorm(row, f, base, ext, spec.family);
  } catch (const std::exception& e) {
    row.diagnostic = e.what();
  }
  return row;
}

inline ReportRow run_instance(const InstanceConfig& cfg) {
  if (!cfg.a.single() || !cfg.b.single()) throw Error("run_instance needs single values of a and b");
  return run_instance(make_field(cfg.p, cfg.k), cfg.n, cfg.a.lo, cfg.b.lo, cfg.extensions.front());
}

struct SourceSummary {
  int applicable = 0;
  int matches = 0;
  int mismatches = 0;  // applicable but not agreeing
};

struct SweepReport {
  std::vector<ReportRow> rows;
  std::map<std::string, SourceSummary> summary;
  int diagnostics = 0;
};

/// Admissible (a, b) pairs of the ranges, in (a, b) order.
inline std::vector<std::pair<int, int>> admissible_pairs(int n, IntRange a, IntRange b) {
  std::vector<std::pair<int, int>> out;
  for (int x = a.lo; x <= a.hi; ++x)
    for (int y = b.lo; y <= b.hi; ++y)
      if (!cab_window_violation(n, x, y)) out.emplace_back(x, y);
  return out;
}

/// The full window: every (a, b) with 0 <= a+b <= n-2 and 0 <= b-a <= n.
inline std::vector<std::pair<int, int>> window_pairs(int n) { return admissible_pairs(n, {-n, n}, {0, n}); }

inline SweepReport sweep(const InstanceConfig& cfg) {
  const auto f = make_field(cfg.p, cfg.k);
  const auto pairs = admissible_pairs(cfg.n, cfg.a, cfg.b);
  struct Task {
    std::size_t ext;
    int a, b;
  };
  std::vector<Task> tasks;
  std::vector<ExtensionPtr> exts(cfg.extensions.size());
  std::vector<std::string> ext_errors(cfg.extensions.size());
  for (std::size_t e = 0; e < cfg.extensions.size(); ++e) {
    try {
      exts[e] = make_extension(cfg.extensions[e], f);
    } catch (const std::exception& ex) {
      ext_errors[e] = ex.what();
    }
    for (auto [a, b] : pairs) tasks.push_back({e, a, b});
  }
  SweepReport rep;
  rep.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& tk = tasks[i];
      const auto& spec = cfg.extensions[tk.ext];
      if (!ext_errors[tk.ext].empty()) {
        ReportRow row = run_instance(f, cfg.n, tk.a, tk.b, ExtensionSpec{});
        row.family = spec.family;
        row.id = instance_id(row.q, cfg.n, tk.a, tk.b, spec);
        row.diagnostic = ext_errors[tk.ext];
        rep.rows[i] = std::move(row);
      } else {
        rep.rows[i] = run_instance(f, cfg.n, tk.a, tk.b, spec, exts[tk.ext]);
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& row : rep.rows) {
    if (!row.diagnostic.empty()) ++rep.diagnostics;
    for (const auto& p : row.predictions) {
      auto& s = rep.summary[p.prediction.key()];
      if (!p.prediction.applicable()) continue;
      ++s.applicable;
      if (p.match) ++s.matches;
      else ++s.mismatches;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Search for extensions in which every evaluation place splits completely.

/// Families: elliptic-as (monic cubics, characteristic 2), elliptic-kummer
/// (square-free monic cubics), hyperelliptic-kummer (square-free monic
/// quintics), hermitian.  Candidates are enumerated with lower coefficients as
/// base-q digits, constant term least significant.
inline std::vector<ExtensionSpec> search_split_instance(const FieldPtr& f, int n, const std::string& family,
                                                        std::size_t limit = 0) {
  std::vector<ExtensionSpec> out;
  const auto places = roots_of_unity_places(*f, n);
  Divisor d;
  for (const auto& p : places) d.add(p, 1);
  auto accept = [&](const ExtensionSpec& spec) {
    try {
      const auto ext = make_extension(spec, f);
      const auto rep = check_assumption3(d, *ext);
      if (!rep.holds) return false;
      for (const auto& [p, mp] : rep.places_above)
        if (mp != ext->degree()) return false;
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  if (family == "hermitian") {
    ExtensionSpec s;
    s.family = family;
    s.p = static_cast<int>(f->characteristic());
    if (f->degree() == 2 && accept(s)) out.push_back(s);
    return out;
  }
  int deg = 0;
  if (family == "elliptic-as" || family == "elliptic-kummer") deg = 3;
  else if (family == "hyperelliptic-kummer") deg = 5;
  else throw Error("no split search for family '" + family + "'");
  const bool as = family == "elliptic-as";
  if (as != (f->characteristic() == 2)) return out;

  const std::uint32_t q = f->order();
  std::vector<Elem> xs;
  for (const auto& p : places) xs.push_back(Elem{p.alpha});
  std::uint64_t total = 1;
  for (int i = 0; i < deg; ++i) total *= q;
  std::vector<std::uint32_t> codes(deg + 1);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (int i = 0; i < deg; ++i) {
      codes[i] = static_cast<std::uint32_t>(r % q);
      r /= q;
    }
    codes[deg] = 1;
    // Cheap necessary test first: value has trace 0 (y^2+y=c) or is a nonzero square (y^2=c).
    bool ok = true;
    for (auto x : xs) {
      Elem v = f->zero();
      for (int i = deg; i >= 0; --i) v = f->add(f->mul(v, x), Elem{codes[i]});
      if (as) ok = f->absolute_trace(v) == 0;
      else ok = v.v != 0 && f->pow(v, (q - 1) / 2) == f->one();
      if (!ok) break;
    }
    if (!ok) continue;
    ExtensionSpec s;
    s.family = family;
    s.f = codes;
    if (!as && !is_square_free(Poly::from_codes(f, codes))) continue;
    if (!accept(s)) continue;
    out.push_back(std::move(s));
    if (limit && out.size() >= limit) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::ordered_json to_json(const Rational& r) {
  if (r.is_integer()) return r.num;
  return r.to_string();
}

template <class T>
inline nlohmann::ordered_json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rational>) return to_json(*v);
  else return *v;
}

inline nlohmann::ordered_json to_json(const PredictionResult& p) {
  nlohmann::ordered_json j;
  j["source"] = p.prediction.source;
  j["kind"] = p.prediction.kind == PredictionKind::Equality ? "equality" : "lower_bound";
  j["target"] = p.prediction.target;
  j["value"] = to_json(p.prediction.value);
  j["applicable"] = p.prediction.applicable();
  auto conds = nlohmann::ordered_json::array();
  for (const auto& c : p.prediction.conditions)
    conds.push_back({{"name", c.name}, {"pass", c.pass}, {"kind", c.kind == ConditionKind::Structural ? "structural" : "assumption"}});
  j["conditions"] = conds;
  j["observed"] = opt_json(p.observed);
  j["agrees"] = p.agrees;
  j["match"] = p.match;
  return j;
}

inline nlohmann::ordered_json to_json(const ReportRow& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["id"] = r.id;
  j["q"] = r.q;
  j["n"] = r.n;
  j["a"] = r.a;
  j["b"] = r.b;
  j["family"] = r.family;
  j["extension"] = r.extension;
  j["G"] = r.g_divisor;
  j["gcd"] = r.gcd_divisor;
  j["genus"] = opt_json(r.genus);
  j["deg_diff"] = opt_json(r.deg_diff);
  j["k"] = opt_json(r.k);
  j["k_prime"] = opt_json(r.k_prime);
  j["h_base"] = opt_json(r.h_base);
  j["h_prime"] = opt_json(r.h_prime);
  j["ell_gcd"] = opt_json(r.ell_gcd);
  j["ell_con_gcd"] = opt_json(r.ell_con_gcd);
  j["eq3"] = opt_json(r.eq3);
  j["eq5_lhs"] = opt_json(r.eq5_lhs);
  j["eq5_necessary"] = opt_json(r.eq5_necessary);
  j["eq5_empirical"] = opt_json(r.eq5_empirical);
  j["hull_equals_ell_con_gcd"] = opt_json(r.hull_equals_ell_con_gcd);
  j["prop31_self_dual"] = opt_json(r.prop31_self_dual);
  j["thm33_gcd_principal"] = opt_json(r.thm33_gcd_principal);
  j["thm33_conorm_lcd"] = opt_json(r.thm33_conorm_lcd);
  auto preds = nlohmann::ordered_json::array();
  for (const auto& p : r.predictions) preds.push_back(to_json(p));
  j["predictions"] = preds;
  j["diagnostic"] = r.diagnostic;
  return j;
}

inline nlohmann::ordered_json to_json(const SweepReport& rep) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows) rows.push_back(to_json(r));
  j["rows"] = rows;
  nlohmann::ordered_json s;
  for (const auto& [k, v] : rep.summary)
    s[k] = {{"applicable", v.applicable}, {"matches", v.matches}, {"mismatches", v.mismatches}};
  j["summary"] = s;
  j["diagnostics"] = rep.diagnostics;
  return j;
}

/// Prediction columns, in CSV order.
inline const std::vector<std::string>& csv_prediction_keys() {
  static const std::vector<std::string> keys = {"prop51_eq", "remark34_eq", "thm32_lb", "thm32_eq", "thm41_lb",
                                                "thm41_eq",  "cor42_lb",    "cor42_eq", "cor43_lb", "cor43_eq",
                                                "ex52_eq",   "ex53_eq",     "ex54_eq"};
  return keys;
}

namespace detail {
inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}
template <class T>
inline std::string csv_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) return *v ? "1" : "0";
  else if constexpr (std::is_same_v<T, Rational>) return v->to_string();
  else return std::to_string(*v);
}
}  // namespace detail

inline std::string csv_header() {
  std::string h =
      "schema_version,id,q,n,a,b,family,extension,G,gcd,genus,deg_diff,k,k_prime,h_base,h_prime,ell_gcd,ell_con_gcd,"
      "eq3,eq5_lhs,eq5_necessary,eq5_empirical";
  for (const auto& k : csv_prediction_keys()) h += "," + k + "_value," + k + "_applicable," + k + "_match";
  return h + ",diagnostic";
}

inline std::string csv_row(const ReportRow& r) {
  using detail::csv_cell;
  using detail::csv_opt;
  std::ostringstream o;
  o << kSchemaVersion << ',' << csv_cell(r.id) << ',' << r.q << ',' << r.n << ',' << r.a << ',' << r.b << ','
    << csv_cell(r.family) << ',' << csv_cell(r.extension) << ',' << csv_cell(r.g_divisor) << ','
    << csv_cell(r.gcd_divisor) << ',' << csv_opt(r.genus) << ',' << csv_opt(r.deg_diff) << ',' << csv_opt(r.k) << ','
    << csv_opt(r.k_prime) << ',' << csv_opt(r.h_base) << ',' << csv_opt(r.h_prime) << ',' << csv_opt(r.ell_gcd) << ','
    << csv_opt(r.ell_con_gcd) << ',' << csv_opt(r.eq3) << ',' << csv_opt(r.eq5_lhs) << ',' << csv_opt(r.eq5_necessary)
    << ',' << csv_opt(r.eq5_empirical);
  for (const auto& k : csv_prediction_keys()) {
    if (const auto* p = r.find(k))
      o << ',' << p->prediction.value.to_string() << ',' << (p->prediction.applicable() ? 1 : 0) << ','
        << (p->match ? 1 : 0);
    else
      o << ",,,";
  }
  o << ',' << csv_cell(r.diagnostic);
  return o.str();
}

inline std::string to_csv(const SweepReport& rep) {
  std::string s = csv_header() + "\n";
  for (const auto& r : rep.rows) s += csv_row(r) + "\n";
  return s;
}

}  // namespace agchull
