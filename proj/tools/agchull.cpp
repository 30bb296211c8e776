// agchull: command-line front end for the hull and conorm-code library.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "agchull/verify.hpp"

using namespace agchull;

namespace {

std::vector<std::uint32_t> parse_codes(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw Error("empty coefficient in '" + s + "'");
    std::size_t pos = 0;
    const unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw Error("bad coefficient '" + tok + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

void print_row(const ReportRow& r, bool json) {
  if (json) {
    std::cout << to_json(r).dump(2) << "\n";
    return;
  }
  auto opt = [](const auto& v) -> std::string {
    if (!v) return "-";
    using T = std::decay_t<decltype(*v)>;
    if constexpr (std::is_same_v<T, bool>) return *v ? "yes" : "no";
    else if constexpr (std::is_same_v<T, Rational>) return v->to_string();
    else return std::to_string(*v);
  };
  std::cout << "instance      " << r.id << "\n";
  if (!r.extension.empty()) std::cout << "extension     " << r.extension << "\n";
  std::cout << "G             " << r.g_divisor << "\n"
            << "gcd(G,H)      " << r.gcd_divisor << "\n"
            << "k             " << opt(r.k) << "\n"
            << "h(C)          " << opt(r.h_base) << "\n"
            << "l(gcd)        " << opt(r.ell_gcd) << "\n";
  if (r.family != "none") {
    std::cout << "g'            " << opt(r.genus) << "\n"
              << "deg Diff      " << opt(r.deg_diff) << "\n"
              << "k'            " << opt(r.k_prime) << "\n"
              << "h(C')         " << opt(r.h_prime) << "\n"
              << "l(Con gcd)    " << opt(r.ell_con_gcd) << "\n"
              << "split (e*m_P = m)       " << opt(r.eq3) << "\n"
              << "duality lhs             " << opt(r.eq5_lhs) << "\n"
              << "duality necessary cond  " << opt(r.eq5_necessary) << "\n"
              << "duality (row spaces)    " << opt(r.eq5_empirical) << "\n";
  }
  for (const auto& p : r.predictions) {
    std::cout << "  " << p.prediction.key() << " " << p.prediction.target
              << (p.prediction.kind == PredictionKind::Equality ? " = " : " >= ") << p.prediction.value.to_string()
              << "  applicable=" << (p.prediction.applicable() ? "yes" : "no") << " match=" << (p.match ? "yes" : "no");
    std::string failed;
    for (const auto& c : p.prediction.conditions)
      if (!c.pass) failed += (failed.empty() ? "" : "; ") + c.name;
    if (!failed.empty()) std::cout << "  [fails: " << failed << "]";
    std::cout << "\n";
  }
  if (!r.diagnostic.empty()) std::cout << "diagnostic    " << r.diagnostic << "\n";
}

int cmd_field(int p, int k, bool json) {
  const auto f = make_field(p, k);
  std::string mod;
  for (int i = static_cast<int>(f->modulus().size()) - 1; i >= 0; --i) {
    const int c = f->modulus()[i];
    if (c == 0) continue;
    if (!mod.empty()) mod += " + ";
    if (i == 0 || c != 1) mod += std::to_string(c);
    if (i > 0) mod += i == 1 ? "z" : "z^" + std::to_string(i);
  }
  if (json) {
    nlohmann::ordered_json j;
    j["field"] = f->name();
    j["p"] = p;
    j["k"] = k;
    j["modulus"] = f->modulus();
    j["primitive"] = f->primitive().v;
    auto elems = nlohmann::ordered_json::array();
    for (auto e : f->elements()) {
      nlohmann::ordered_json x;
      x["code"] = e.v;
      x["coeffs"] = f->coeffs(e);
      x["order"] = e.v == 0 ? 0 : f->mult_order(e);
      elems.push_back(x);
    }
    j["elements"] = elems;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << f->name() << " = GF(" << p << ")[z]/(" << mod << ")\n"
            << "primitive element code " << f->primitive().v << "\n";
  if (f->order() <= 64) {
    std::cout << "code  coeffs(z^0..)  order\n";
    for (auto e : f->elements()) {
      std::string cs;
      for (auto c : f->coeffs(e)) cs += std::to_string(c) + " ";
      std::cout << e.v << "\t" << cs << "\t" << (e.v == 0 ? 0 : f->mult_order(e)) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hull dimensions of two-point rational AG codes and their conorm codes"};
  app.require_subcommand(1);

  int p = 0, k = 1, q = 0, n = 0, a = 0, b = 0, t = 1, limit = 0, threads = 1;
  bool json = false;
  std::string curve, coeffs, config, out, family, suite, format;

  auto* field = app.add_subcommand("field", "describe GF(p^k)");
  field->add_option("--p", p, "characteristic")->required();
  field->add_option("--k", k, "extension degree")->required();
  field->add_flag("--json", json);

  auto* rational = app.add_subcommand("rational", "hull of C_ab over GF(q)");
  rational->add_option("--q", q)->required();
  rational->add_option("--n", n)->required();
  rational->add_option("--a", a)->required();
  rational->add_option("--b", b)->required();
  rational->add_flag("--json", json);

  auto* conorm = app.add_subcommand("conorm", "conorm code of C_ab and hull predictions");
  conorm->add_option("--curve", curve)
      ->required()
      ->check(CLI::IsMember({"hermitian", "elliptic-as", "elliptic-kummer", "hyperelliptic-kummer", "constant"}));
  conorm->add_option("--p", p, "characteristic (hermitian)");
  conorm->add_option("--t", t, "constant field degree (constant)");
  conorm->add_option("--f", coeffs, "coefficient codes, constant term first");
  conorm->add_option("--q", q)->required();
  conorm->add_option("--n", n)->required();
  conorm->add_option("--a", a)->required();
  conorm->add_option("--b", b)->required();
  conorm->add_flag("--json", json);

  auto* sweep_cmd = app.add_subcommand("sweep", "run a configured sweep");
  sweep_cmd->add_option("--config", config)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", out, "output file (overrides the config)");
  sweep_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--threads", threads);

  auto* search = app.add_subcommand("search-split", "extensions in which every evaluation place splits");
  search->add_option("--q", q)->required();
  search->add_option("--n", n)->required();
  search->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"hermitian", "elliptic-as", "elliptic-kummer", "hyperelliptic-kummer"}));
  search->add_option("--limit", limit, "stop after this many (0: all)");
  search->add_flag("--json", json);

  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("--suite", suite)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*field) return cmd_field(p, k, json);

    if (*rational) {
      const auto f = make_field_of_order(q);
      require_cab_window(n, a, b);
      const auto row = run_instance(f, n, a, b, ExtensionSpec{});
      print_row(row, json);
      return row.diagnostic.empty() ? 0 : 1;
    }

    if (*conorm) {
      const auto f = make_field_of_order(q);
      require_cab_window(n, a, b);
      ExtensionSpec spec;
      spec.family = curve;
      if (p) spec.p = p;
      spec.t = t;
      if (!coeffs.empty()) spec.f = parse_codes(coeffs);
      const auto row = run_instance(f, n, a, b, spec);
      print_row(row, json);
      return row.diagnostic.empty() ? 0 : 1;
    }

    if (*sweep_cmd) {
      std::ifstream in(config);
      auto cfg = parse_config(nlohmann::json::parse(in));
      if (!out.empty()) cfg.out = out;
      if (!format.empty()) cfg.format = format;
      if (sweep_cmd->count("--threads")) cfg.threads = std::max(1, threads);
      const auto rep = sweep(cfg);
      const std::string body = cfg.format == "json" ? to_json(rep).dump(2) + "\n" : to_csv(rep);
      if (cfg.out.empty()) {
        std::cout << body;
      } else {
        std::ofstream o(cfg.out);
        if (!o) throw Error("cannot write " + cfg.out);
        o << body;
      }
      std::cerr << rep.rows.size() << " rows, " << rep.diagnostics << " with diagnostics\n";
      for (const auto& [key, s] : rep.summary)
        std::cerr << "  " << key << ": applicable " << s.applicable << ", matches " << s.matches << ", mismatches "
                  << s.mismatches << "\n";
      return 0;
    }

    if (*search) {
      const auto f = make_field_of_order(q);
      const auto found = search_split_instance(f, n, family, static_cast<std::size_t>(std::max(0, limit)));
      if (json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& s : found) {
          nlohmann::ordered_json j;
          j["family"] = s.family;
          if (s.p) j["p"] = *s.p;
          if (!s.f.empty()) j["f"] = s.f;
          arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
      } else {
        if (found.empty()) std::cout << "no fully split instance\n";
        for (const auto& s : found) std::cout << s.label() << "\n";
      }
      return 0;
    }

    if (*verify) {
      std::vector<int> ids;
      try {
        ids = suite_criteria(suite);
      } catch (const Error& e) {
        std::cerr << e.what() << "; known suites:";
        for (const auto& s : suite_names()) std::cerr << " " << s;
        std::cerr << "\n";
        return 2;
      }
      bool ok = true;
      for (const auto& r : run_criteria(ids)) {
        std::cout << format_result(r) << "\n";
        ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
