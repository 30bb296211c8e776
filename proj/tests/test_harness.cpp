#include <gtest/gtest.h>

#include "agchull/verify.hpp"

using namespace agchull;
using nlohmann::json;

namespace {

std::string error_of(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, Parsing) {
  auto cfg = parse_config(json::parse(R"({"p":3,"k":2,"n":8,"a":[-8,8],"b":[0,8],"threads":0})"));
  EXPECT_EQ(cfg.a.lo, -8);
  EXPECT_EQ(cfg.b.hi, 8);
  EXPECT_EQ(cfg.threads, 1);
  ASSERT_EQ(cfg.extensions.size(), 1u);
  EXPECT_EQ(cfg.extensions[0].family, "none");

  cfg = parse_config(json::parse(R"({"p":3,"k":2,"n":8,"a":0,"b":4,
      "extension":[{"family":"hermitian","p":3},{"family":"constant","t":2}]})"));
  ASSERT_EQ(cfg.extensions.size(), 2u);
  EXPECT_EQ(cfg.extensions[1].label(), "constant:t=2");
}

TEST(Config, Rejections) {
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":8,"a":0,"b":4,"colour":1})")).find("colour"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":8,"a":0,"b":4,"extension":{"family":"hermitian","x":1}})"))
                .find("'x'"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":8,"a":3,"b":4})")).find("a+b <= n-2"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":8,"a":2,"b":1})")).find("0 <= b-a"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":5,"a":0,"b":1})")).find("divide"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":8,"a":0})")).find("'b'"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":8,"a":0,"b":4,"format":"xml"})")), "");
  EXPECT_NE(error_of(json::parse(R"({"p":3,"k":2,"n":8,"a":0,"b":4,"extension":{"family":"quartic"}})")), "");
}

TEST(Instance, RationalCode) {
  auto row = run_instance(make_field(3, 2), 8, 1, 4, ExtensionSpec{});
  EXPECT_EQ(row.id, "q9:n8:a1:b4:none");
  EXPECT_TRUE(row.diagnostic.empty()) << row.diagnostic;
  EXPECT_EQ(row.k, 6);
  EXPECT_EQ(row.h_base, 2);
  const auto* p = row.find("prop51_eq");
  ASSERT_NE(p, nullptr);
  EXPECT_TRUE(p->match);
}

TEST(Instance, HermitianConorm) {
  ExtensionSpec spec;
  spec.family = "hermitian";
  spec.p = 3;
  auto row = run_instance(make_field(3, 2), 8, 0, 4, spec);
  EXPECT_TRUE(row.diagnostic.empty()) << row.diagnostic;
  EXPECT_EQ(row.genus, 3);
  EXPECT_EQ(row.deg_diff, 10);
  EXPECT_EQ(row.k_prime, 10);
  EXPECT_EQ(row.ell_con_gcd, 4);
  EXPECT_EQ(row.eq3, true);
  EXPECT_EQ(row.eq5_necessary, false);
  EXPECT_EQ(row.eq5_empirical, false);
  const auto* p = row.find("ex54_eq");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->prediction.value, Rational(4));
  EXPECT_FALSE(p->match);  // not applicable once duality fails
}

TEST(Instance, ErrorsBecomeDiagnostics) {
  ExtensionSpec spec;
  spec.family = "constant";
  spec.t = 3;
  auto row = run_instance(make_field(3, 2), 8, 1, 4, spec);
  EXPECT_NE(row.diagnostic.find("characteristic"), std::string::npos);
}

TEST(Sweep, FullWindow) {
  EXPECT_EQ(window_pairs(8).size(), 32u);
  auto cfg = parse_config(json::parse(R"({"p":3,"k":2,"n":8,"a":[-8,8],"b":[0,8]})"));
  auto rep = sweep(cfg);
  ASSERT_EQ(rep.rows.size(), 32u);
  EXPECT_EQ(rep.diagnostics, 0);
  for (const auto& r : rep.rows) EXPECT_TRUE(r.find("prop51_eq")->match) << r.id;
  EXPECT_EQ(rep.summary.at("prop51_eq").matches, 32);
}

TEST(Sweep, EmptyRangeGivesHeaderOnly) {
  auto cfg = parse_config(json::parse(R"({"p":3,"k":2,"n":8,"a":[5,8],"b":[0,1]})"));
  auto rep = sweep(cfg);
  EXPECT_TRUE(rep.rows.empty());
  EXPECT_EQ(to_csv(rep), csv_header() + "\n");
}

TEST(Sweep, HermitianOverGF4) {
  auto cfg = parse_config(json::parse(R"({"p":2,"k":2,"n":3,"a":[-3,3],"b":[0,3],"extension":{"family":"hermitian"}})"));
  auto rep = sweep(cfg);
  ASSERT_FALSE(rep.rows.empty());
  for (const auto& r : rep.rows) {
    EXPECT_TRUE(r.diagnostic.empty()) << r.id << ": " << r.diagnostic;
    EXPECT_EQ(r.eq3, true) << r.id;
  }
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  auto cfg = parse_config(json::parse(
      R"({"p":3,"k":2,"n":8,"a":[-8,8],"b":[0,8],"extension":[{"family":"none"},{"family":"hermitian"}]})"));
  cfg.threads = 1;
  const auto one = to_csv(sweep(cfg));
  cfg.threads = 4;
  const auto four = sweep(cfg);
  EXPECT_EQ(one, to_csv(four));
  EXPECT_EQ(one, to_csv(sweep(cfg)));
  const auto j = to_json(four);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["rows"].size(), 64u);
}

TEST(SplitSearch, Examples) {
  auto as = search_split_instance(make_field(2, 2), 3, "elliptic-as");
  ASSERT_FALSE(as.empty());
  EXPECT_EQ(as.front().f, (std::vector<std::uint32_t>{0, 0, 0, 1}));
  EXPECT_EQ(search_split_instance(make_field(3, 2), 8, "hermitian").size(), 1u);
  EXPECT_TRUE(search_split_instance(make_field(2, 3), 7, "elliptic-as").empty());
  EXPECT_TRUE(search_split_instance(make_field(2, 2), 3, "elliptic-kummer").empty());
  EXPECT_EQ(search_split_instance(make_field(13, 1), 6, "elliptic-kummer", 3).size(), 3u);
  EXPECT_THROW(search_split_instance(make_field(3, 2), 8, "quartic"), Error);
}

TEST(Suites, Names) {
  EXPECT_EQ(suite_criteria("all").size(), 8u);
  EXPECT_EQ(suite_criteria("prop51"), std::vector<int>{1});
  EXPECT_THROW(suite_criteria("nonsense"), Error);
}
