#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cfsym::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, PermsReproducesTheSixRows) {
  const auto r = run({"perms", "3,1,4", "--csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 7u);
  EXPECT_EQ(ls[0], "permutation,interval,chi,pgk,value,class");
  std::multiset<std::string> chis;
  std::map<std::string, std::set<std::string>> by_class;
  const auto json = run({"perms", "3,1,4", "--json"});
  for (const auto& l : lines(json.out)) {
    const auto row = nlohmann::json::parse(l);
    chis.insert(std::to_string(row["chi"].get<int>()));
    by_class[std::to_string(row["class"].get<int>())].insert(row["permutation"].get<std::string>());
  }
  EXPECT_EQ(chis, (std::multiset<std::string>{"552", "552", "609", "609", "630", "630"}));
  std::set<std::set<std::string>> classes;
  for (const auto& [k, v] : by_class) classes.insert(v);
  EXPECT_EQ(classes, (std::set<std::set<std::string>>{{"3,1,4", "4,1,3"}, {"1,4,3", "3,4,1"}, {"1,3,4", "4,3,1"}}));
}

TEST(Cli, PgkPrintsExactAndDecimal) {
  const auto r = run({"pgk", "3,1,4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("log2(552/551)"), std::string::npos);
  EXPECT_NE(r.out.find("0.0026159"), std::string::npos);
  // A string and its reverse print the same exact fraction.
  const auto fwd = nlohmann::json::parse(run({"pgk", "2,7,1,9", "--json"}).out);
  const auto rev = nlohmann::json::parse(run({"pgk", "9,1,7,2", "--json"}).out);
  EXPECT_EQ(fwd["pgk"], rev["pgk"]);
  EXPECT_EQ(fwd["value"], rev["value"]);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "3,1,4"}).code, 0);
  const auto domain = run({"eval", "3,0,4"});
  EXPECT_EQ(domain.code, 1);
  EXPECT_NE(domain.err.find("digit 0"), std::string::npos);
  EXPECT_EQ(run({"nu", "1,2,2"}).code, 1);
  EXPECT_EQ(run({"census", "--n", "6", "--N", "200", "--quiet"}).code, 1);
  const auto usage = run({"frobnicate"});
  EXPECT_EQ(usage.code, 2);
  EXPECT_NE(usage.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"census", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"plotdata", "nonsense"}).code, 2);
  EXPECT_EQ(run({"eval", "3,1,4", "--csv", "--json"}).code, 2);
  EXPECT_EQ(run({"eval", "3,1,4", "--csv", "--format", "json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CensusCsvMatchesTheTable) {
  const auto r = run({"census", "--n", "4", "--N", "40", "--report", "10,20,...,40", "--format", "csv",
                      "--omit-timing", "--workers", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "n,N,total,f,delta,delta_exact,elapsed_seconds\n"
            "4,10,210,10,0.047619,10/210,\n"
            "4,20,4845,30,0.00619195,30/4845,\n"
            "4,30,27405,47,0.00171502,47/27405,\n"
            "4,40,91390,66,0.00072218,66/91390,\n");
  EXPECT_NE(r.err.find("census:"), std::string::npos);
  EXPECT_TRUE(run({"census", "--n", "4", "--N", "12", "--quiet"}).err.empty());
}

TEST(Cli, CsvAndJsonCarryIdenticalValues) {
  const std::vector<std::string> base{"census", "--n", "5", "--N", "20", "--omit-timing", "--quiet"};
  auto csv_args = base, json_args = base;
  csv_args.push_back("--csv");
  json_args.push_back("--json");
  const auto c = lines(run(csv_args).out);
  const auto j = lines(run(json_args).out);
  ASSERT_EQ(c.size(), j.size() + 1);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto row = nlohmann::json::parse(j[i]);
    const std::string rebuilt = std::to_string(row["n"].get<int>()) + "," + std::to_string(row["N"].get<int>()) +
                                "," + std::to_string(row["total"].get<long>()) + "," +
                                std::to_string(row["f"].get<long>()) + "," +
                                cfsym::format_significant(row["delta"].get<double>(), 6) + "," +
                                row["delta_exact"].get<std::string>() + ",";
    EXPECT_EQ(rebuilt, c[i + 1]);
  }
}

TEST(Cli, CensusIsByteIdenticalAcrossWorkers) {
  const auto one = run({"census", "--n", "4", "--N", "50", "--csv", "--omit-timing", "--quiet", "--workers", "1"});
  for (const char* w : {"4", "8"})
    EXPECT_EQ(run({"census", "--n", "4", "--N", "50", "--csv", "--omit-timing", "--quiet", "--workers", w}).out,
              one.out);
}

TEST(Cli, CensusCheckpointResume) {
  const auto path = (std::filesystem::temp_directory_path() / "cfsym_cli_ckpt.json").string();
  std::filesystem::remove(path);
  const auto partial = run({"census", "--n", "4", "--N", "30", "--checkpoint", path, "--max-units", "100", "--csv",
                            "--omit-timing", "--quiet"});
  EXPECT_EQ(partial.code, 0);
  EXPECT_NE(partial.err.find("stopped after"), std::string::npos);
  const auto rest = run({"census", "--n", "4", "--N", "30", "--checkpoint", path, "--csv", "--omit-timing", "--quiet"});
  const auto fresh = run({"census", "--n", "4", "--N", "30", "--csv", "--omit-timing", "--quiet"});
  EXPECT_EQ(rest.out, fresh.out);
  std::filesystem::remove(path);
}

TEST(Cli, ReportEllipsis) {
  using cfsym::cli::parse_report_points;
  EXPECT_EQ(parse_report_points("10,20,...,60"), (std::vector<unsigned>{10, 20, 30, 40, 50, 60}));
  EXPECT_EQ(parse_report_points("10,15,...,35"), (std::vector<unsigned>{10, 15, 20, 25, 30, 35}));
  EXPECT_EQ(parse_report_points("7,9"), (std::vector<unsigned>{7, 9}));
  EXPECT_THROW(parse_report_points("10,...,60"), cfsym::DomainError);
  EXPECT_THROW(parse_report_points("a"), cfsym::DomainError);
}

TEST(Cli, PlotData) {
  const auto r = run({"plotdata", "fN4_ratio", "--N", "60", "--workers", "1"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.front(), "N,ratio");
  EXPECT_NE(std::find(ls.begin(), ls.end(), "10,1.0000"), ls.end());
  EXPECT_NE(std::find(ls.begin(), ls.end(), "20,1.5000"), ls.end());
  EXPECT_EQ(ls.back(), "60,1.7333");
}

TEST(Cli, VerifyLengthThree) {
  const auto r = run({"verify", "theorem3i", "--max-digit", "20"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("no nontrivial symmetry found among 8000 strings (0 exceptions)"), std::string::npos);
}

TEST(Cli, VerifyOthersRunSmall) {
  EXPECT_EQ(run({"verify", "families", "--max-param", "5", "--max-t", "10", "--max-s", "3", "--max-s-t", "5"}).code,
            0);
  EXPECT_EQ(run({"verify", "invariants", "--count", "500", "--max-A", "100", "--seed", "3"}).code, 0);
  EXPECT_EQ(run({"verify"}).code, 2);
}

TEST(Cli, StringCommands) {
  EXPECT_NE(run({"interval", "3,1,4"}).out.find("(6/23,5/19]"), std::string::npos);
  EXPECT_NE(run({"chi", "2,1,4,3"}).out.find("3599"), std::string::npos);
  EXPECT_NE(run({"eval", "3,1,4"}).out.find("5/19"), std::string::npos);
  EXPECT_NE(run({"symmetries", "2,1,4,3"}).out.find("3,1,2,4"), std::string::npos);
  EXPECT_NE(run({"symmetries", "3,1,4"}).out.find("no nontrivial symmetry"), std::string::npos);
  const auto nu = nlohmann::json::parse(run({"nu", "1,2,3,4", "--json"}).out);
  EXPECT_EQ(nu["nu"], 11);
  EXPECT_EQ(nu["exceptional"], true);
  EXPECT_EQ(nu["defect"], "1/12");
  const auto ap = nlohmann::json::parse(run({"aplus", "2,4,2,4", "--json"}).out);
  EXPECT_EQ(ap["a_plus"], "2,1,2,4,2,5");
  EXPECT_EQ(ap["partner"], "2,5,2,4,2,1");
  EXPECT_EQ(run({"aplus", "2,4,1,4"}).code, 1);
}

TEST(Cli, Families) {
  const auto st = nlohmann::json::parse(run({"families", "--kind", "stable", "--length", "4", "--params", "2,3", "--json"}).out);
  EXPECT_EQ(st["string"], "3,4,2,6");
  const auto cc = nlohmann::json::parse(run({"families", "--kind", "concluding", "--params", "1", "--json"}).out);
  EXPECT_EQ(cc["string"], "2,1,4,3");
  EXPECT_EQ(cc["partner"], "3,1,2,4");
  EXPECT_EQ(cc["nontrivial"], true);
  EXPECT_EQ(run({"families", "--kind", "stable", "--length", "4", "--params", "2"}).code, 1);
}

TEST(Cli, ExceptionalListing) {
  const auto r = run({"exceptional", "--n", "4", "--N", "10", "--csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 11u);
  EXPECT_NE(r.out.find("1,2,3,4"), std::string::npos);
  EXPECT_NE(run({"exceptional", "--n", "3", "--N", "20"}).out.find("no exceptional sets"), std::string::npos);
}

TEST(Cli, MeasureLab) {
  const auto p = nlohmann::json::parse(run({"measurelab", "perturb", "--a0", "1,1", "--epsilon", "0.05", "--json"}).out);
  EXPECT_NEAR(p["mu_I"].get<double>(), p["mu_gk_I"].get<double>(), 1e-12);
  EXPECT_NEAR(p["mu_total"].get<double>(), 1.0, 1e-9);
  const auto d = run({"measurelab", "defect", "--a0", "1,1", "--epsilon", "0.05", "--string", "1,1,2", "--json"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_GT(std::abs(nlohmann::json::parse(d.out)["defect"].get<double>()), 1e-6);
  const auto scan = run({"measurelab", "defect", "--a0", "1,1", "--max-length", "2", "--json"});
  for (const auto& l : lines(scan.out)) EXPECT_LT(std::abs(nlohmann::json::parse(l)["defect"].get<double>()), 1e-9);
  const auto l5 = lines(run({"measurelab", "lemma5", "--string", "3,1,4", "--t", "1,1000", "--csv"}).out);
  ASSERT_EQ(l5.size(), 3u);
  EXPECT_EQ(l5[1].substr(0, 2), "1,");
  EXPECT_NE(l5[1].find("42/29"), std::string::npos);
  EXPECT_EQ(run({"measurelab", "perturb", "--epsilon", "5"}).code, 1);
}

TEST(Cli, MonteCarloIsSeeded) {
  const std::vector<std::string> args{"montecarlo", "--target", "1", "--samples", "5000", "--seed", "42", "--csv"};
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto w4 = args;
  w4.insert(w4.end(), {"--workers", "4"});
  EXPECT_EQ(run(w4).out, a.out);
  EXPECT_EQ(run(args).out, a.out);
  auto other = args;
  other[6] = "43";
  EXPECT_NE(run(other).out, a.out);
}

TEST(Cli, WorkersFromEnvironment) {
  ::setenv("CFSYM_WORKERS", "zero", 1);
  EXPECT_EQ(run({"census", "--n", "4", "--N", "10", "--quiet"}).code, 2);
  ::setenv("CFSYM_WORKERS", "3", 1);
  EXPECT_EQ(run({"census", "--n", "4", "--N", "10", "--quiet"}).code, 0);
  ::unsetenv("CFSYM_WORKERS");
}
