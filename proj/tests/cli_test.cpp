#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli_app.hpp"

using moebius::cli::json;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;

    json report() const { return json::parse(out); }
};

Invocation run(std::vector<std::string> args, bool as_json = true) {
    args.insert(args.begin(), "moebius");
    if (as_json) args.push_back("--json");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = moebius::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

double real_of(const json& j) { return moebius::parse_point(j.get<std::string>()).value().real(); }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("moebius_cli_test_" + name)).string();
}

}  // namespace

TEST(CliClassify, Hyperbolic) {
    const Invocation r = run({"classify", "2,0,0,1"});
    ASSERT_EQ(r.code, 0);
    const json j = r.report();
    EXPECT_EQ(j["class"], "Hyperbolic");
    EXPECT_NEAR(real_of(j["multipliers"][0]), 2.0, 1e-12);
    EXPECT_NEAR(real_of(j["multipliers"][1]), 0.5, 1e-12);
    EXPECT_EQ(j["topological_canonical_form"], "2,0,0,1");
    EXPECT_EQ(j["exit_code"], 0);
    for (const char* key : {"fixed_points", "trace", "eigenvalues", "canonical_form", "settings"})
        EXPECT_TRUE(j.contains(key)) << key;
}

TEST(CliClassify, ParabolicAndIdentity) {
    const json p = run({"classify", "1,1,0,1"}).report();
    EXPECT_EQ(p["class"], "Parabolic");
    EXPECT_EQ(p["fixed_points"], json::array({"inf"}));
    EXPECT_EQ(run({"classify", "1,0,0,1"}).report()["class"], "Identity");
}

TEST(CliClassify, InputErrors) {
    const Invocation bad = run({"classify", "1,2,2,4"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_TRUE(bad.report().contains("error"));
    EXPECT_FALSE(bad.err.empty());
    EXPECT_EQ(run({"classify", "1,x,0,1"}).report()["position"], 2);
    EXPECT_EQ(run({"classify"}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
}

TEST(CliTopo, ExitCodes) {
    const Invocation yes = run({"topo", "2,0,0,1", "2,1,1,1"});
    EXPECT_EQ(yes.code, 0);
    EXPECT_EQ(yes.report()["verdict"], "conjugate");
    const Invocation no = run({"topo", "1,1,0,1", "2,0,0,1"});
    EXPECT_EQ(no.code, 3);
    const json nj = no.report();
    EXPECT_EQ(nj["verdict"], "not conjugate");
    EXPECT_FALSE(nj["criteria"]["multiplier"].get<bool>());
    EXPECT_TRUE(nj.contains("margin"));
    EXPECT_EQ(run({"topo", "1,1,0", "2,0,0,1"}).code, 2);
}

TEST(CliTopo, IndeterminateAtTheBoundary) {
    // z -> lambda^2 z with |lambda| = 1 + 8e-10: eigenvalue gate passes, multiplier gate fails.
    const moebius::cplx lam = std::polar(1.0 + 8e-10, 0.7);
    const std::string f = moebius::format_complex(lam * lam) + ",0,0,1";
    const Invocation r = run({"topo", f, "2,0,0,1"});
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(r.report()["verdict"], "indeterminate");
    EXPECT_EQ(run({"topo", f, "2,0,0,1", "--eps", "1e-8"}).code, 3);
}

TEST(CliTopo, SingleCriterion) {
    const Invocation r = run({"topo", "1i,0,0,1", "-1i,0,0,1", "--criterion", "eigen"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.report()["criteria"].size(), 1u);
    EXPECT_EQ(run({"topo", "1i,0,0,1", "-1i,0,0,1", "--criterion", "bogus"}).code, 2);
}

TEST(CliConjugatorAndCanonical, Examples) {
    const Invocation c = run({"conjugator", "1i,0,0,1", "-1i,0,0,1"});
    EXPECT_EQ(c.code, 0);
    EXPECT_LE(c.report()["residual"].get<double>(), 1e-7);
    EXPECT_EQ(run({"conjugator", "2,0,0,1", "3,0,0,1"}).code, 3);
    EXPECT_EQ(run({"canonical", "5,0,0,1", "--topological"}).report()["canonical_form"]["coefficients"], "2,0,0,1");
    EXPECT_EQ(run({"canonical", "1,3,0,1"}).report()["canonical_form"]["coefficients"], "1,1,0,1");
}

TEST(CliOrbit, Points) {
    auto points = [](std::vector<std::string> args) { return run(args).report()["points"]; };
    json dbl = points({"orbit", "2,0,0,1", "1", "-n", "10"});
    ASSERT_EQ(dbl.size(), 11u);
    for (std::size_t k = 0; k < dbl.size(); ++k) EXPECT_EQ(real_of(dbl[k]), double(1u << k));
    EXPECT_EQ(points({"orbit", "1i,0,0,1", "1", "-n", "4"}), json::array({"1", "1i", "-1", "-1i", "1"}));
    EXPECT_EQ(points({"orbit", "1,1,0,1", "0", "-n", "5"}), json::array({"0", "1", "2", "3", "4", "5"}));
    EXPECT_EQ(run({"orbit", "2,0,0,1", "1", "-n", "0"}).code, 2);
}

TEST(CliOrbit, WritesSvgAndCsv) {
    const std::string svg = temp_path("orbit.svg"), csv = temp_path("orbit.csv");
    const Invocation r = run({"orbit", "0,1,1,0", "0", "-n", "3", "-o", svg, "--csv", csv});
    ASSERT_EQ(r.code, 0);
    std::ifstream s(svg), c(csv);
    const std::string body((std::istreambuf_iterator<char>(s)), {});
    const std::string table((std::istreambuf_iterator<char>(c)), {});
    EXPECT_NE(body.find("<svg"), std::string::npos);
    EXPECT_NE(body.find("&#8734;"), std::string::npos);
    EXPECT_NE(table.find("1,inf,inf,inf"), std::string::npos);
    std::remove(svg.c_str());
    std::remove(csv.c_str());
    EXPECT_EQ(run({"orbit", "2,0,0,1", "1", "-o", "/nonexistent-dir/x.svg"}).code, 2);
}

TEST(CliOperator, ExitCodes) {
    const Invocation yes = run({"operator", "2,0;0,0.5", "3,0;0,0.333333333"});
    EXPECT_EQ(yes.code, 0);
    EXPECT_TRUE(yes.report().contains("partition_A"));
    const Invocation orient = run({"operator", "0.5", "-0.5", "--field", "real"});
    EXPECT_EQ(orient.code, 3);
    EXPECT_FALSE(orient.report()["conditions"]["A01_orientation"].get<bool>());
    EXPECT_EQ(run({"operator", "1,0,0;0,1,0;0,0,1", "1,0,0;0,1,0;0,0,1", "--field", "real"}).code, 5);
    EXPECT_EQ(run({"operator", "1,2;3", "1"}).code, 2);
}

TEST(CliSelftest, Examples) {
    const Invocation r = run({"selftest", "--seed", "42", "--count", "1000"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.report()["decided"], 1000);
    const json empty = run({"selftest", "--seed", "42", "--count", "0"}).report();
    EXPECT_EQ(empty["exit_code"], 0);
    EXPECT_TRUE(empty["vacuous"].get<bool>());
    const Invocation b = run({"selftest", "--seed", "42", "--count", "1000", "--boundary"});
    EXPECT_EQ(b.code, 0);
    EXPECT_GT(b.report()["indeterminate"].get<int>(), 0);
}

TEST(CliReport, DeterministicAndConsistent) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"classify", "2,1i,0.5,1"}, {"topo", "2,0,0,1", "1i,0,0,1"}, {"selftest", "--count", "200", "--seed", "9"}}) {
        const Invocation a = run(args), b = run(args);
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.report()["exit_code"], a.code);
    }
    EXPECT_NE(run({"topo", "2,0,0,1", "3,0,0,1", "--timing"}).report().count("elapsed_ms"), 0u);
    const Invocation text = run({"classify", "2,0,0,1"}, false);
    EXPECT_NE(text.out.find("class: Hyperbolic"), std::string::npos);
}
