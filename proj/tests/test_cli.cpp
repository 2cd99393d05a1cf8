#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "eqcheb/io.hpp"

namespace fs = std::filesystem;
using namespace eqcheb;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("eqcheb_cli_" + std::string(
                                                               ::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    Outcome call(std::vector<std::string> args, bool with_out = true) {
        args.insert(args.begin(), "eqcheb");
        if (with_out) {
            args.push_back("--out");
            args.push_back(dir.string());
        }
        std::ostringstream o, e;
        const int code = cli::run(args, o, e);
        return {code, o.str(), e.str()};
    }

    json read_json(const std::string& name) {
        std::ifstream in(dir / name);
        return json::parse(in);
    }

    fs::path dir;
};

}  // namespace

TEST(CliParse, ComplexTokens) {
    EXPECT_EQ(cli::parse_complex("2"), cplx(2, 0));
    EXPECT_EQ(cli::parse_complex("-1.5"), cplx(-1.5, 0));
    EXPECT_EQ(cli::parse_complex("1+2i"), cplx(1, 2));
    EXPECT_EQ(cli::parse_complex("1-2i"), cplx(1, -2));
    EXPECT_EQ(cli::parse_complex("i"), cplx(0, 1));
    EXPECT_EQ(cli::parse_complex("-i"), cplx(0, -1));
    EXPECT_EQ(cli::parse_complex("3.5i"), cplx(0, 3.5));
    EXPECT_EQ(cli::parse_complex("1e-3+2e+1i"), cplx(1e-3, 20));
    EXPECT_EQ(cli::parse_complex(" 0.5-i "), cplx(0.5, -1));
    EXPECT_THROW(cli::parse_complex("x"), InvalidArgument);
    EXPECT_THROW(cli::parse_complex("1+"), InvalidArgument);
    EXPECT_THROW(cli::parse_complex(""), InvalidArgument);
}

TEST(CliParse, CoefficientLists) {
    const auto c = cli::parse_coefficients("1,0,-1");
    EXPECT_EQ(c, (std::vector<cplx>{1.0, 0.0, -1.0}));
    EXPECT_THROW(cli::parse_coefficients("1,,2"), InvalidArgument);
    EXPECT_THROW(cli::parse_doubles("1,2,"), InvalidArgument);
}

TEST_F(CliTest, ChebOnCircle) {
    const auto r = call({"cheb", "--family", "circle", "--R", "1", "--r", "2", "--n", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = read_json("cheb.json");
    const auto coeffs = j.at("coeffs").get<std::vector<cplx>>();
    ASSERT_EQ(coeffs.size(), 4u);
    for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(coeffs[k]), 1e-12);
    EXPECT_EQ(coeffs[3], cplx(1.0));
    EXPECT_NEAR(j.at("sup_norm").get<double>(), 8.0, 1e-12);
    EXPECT_TRUE(fs::exists(dir / "cheb.csv"));
    // the report parses back into a solution
    EXPECT_EQ(j.get<MinimaxSolution>().n, 3);
}

TEST_F(CliTest, InvarianceOnBernoulli) {
    const auto r = call({"invariance", "--family", "lemniscate", "--P", "1,0,-1", "--R", "1", "--n", "6", "--r", "1.5,4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = read_json("invariance.json").get<InvarianceReport>();
    ASSERT_TRUE(rep.oracle_distance.has_value());
    EXPECT_LT(*rep.oracle_distance, 1e-6);
}

TEST_F(CliTest, RateWritesAllFormats) {
    const auto r = call({"rate", "--family", "lemniscate", "--P", "1,0,-1", "--R", "1", "--n", "3", "--r-grid",
                         "2,4,8,16,32", "--name", "bern3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = read_json("bern3.json").get<RateReport>();
    ASSERT_TRUE(rep.fit.has_value());
    EXPECT_LE(rep.fit->slope, -0.9);
    EXPECT_TRUE(fs::exists(dir / "bern3.csv"));
    EXPECT_TRUE(fs::exists(dir / "bern3.svg"));
}

TEST_F(CliTest, OtherSubcommandsProduceReports) {
    EXPECT_EQ(call({"faber", "--family", "interval", "--n", "4"}).code, 0);
    EXPECT_EQ(read_json("faber.json").at("polynomial").get<Polynomial>().degree(), 4);
    EXPECT_EQ(call({"faber", "--family", "interval", "--n", "4", "--r-grid", "2,4,8", "--name", "fe"}).code, 0);
    EXPECT_EQ(read_json("fe.json").get<FaberErrorReport>().entries.size(), 3u);
    EXPECT_EQ(call({"widom", "--family", "interval", "--r", "2", "--n-max", "4"}).code, 0);
    EXPECT_EQ(read_json("widom.json").get<WidomReport>().entries.size(), 4u);
    EXPECT_EQ(call({"rivlin", "--n", "3", "--trials", "10", "--grid-M", "256", "--seed", "4"}).code, 0);
    EXPECT_EQ(read_json("rivlin.json").get<RivlinReport>().seed, 4u);
    EXPECT_EQ(call({"zeros", "--family", "lemniscate", "--P", "1,0,-1", "--n", "3", "--r-grid", "2,3,4"}).code, 0);
    EXPECT_EQ(read_json("zeros.json").get<TrajectorySet>().steps.size(), 3u);
    EXPECT_TRUE(fs::exists(dir / "zeros.svg"));
    EXPECT_TRUE(fs::exists(dir / "zeros.csv"));
}

TEST_F(CliTest, FamilyFromJson) {
    fs::create_directories(dir);
    std::ofstream(dir / "fam.json") << json(make_circle(1.0)).dump();
    const auto r = call({"cheb", "--family-json", (dir / "fam.json").string(), "--r", "2", "--n", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, ValidationErrorsExitOne) {
    EXPECT_EQ(call({"cheb", "--family", "circle", "--r", "-1", "--n", "3"}).code, 1);
    EXPECT_EQ(call({"cheb", "--family", "circle", "--r", "2"}).code, 1);  // no degree
    EXPECT_EQ(call({"cheb", "--family", "circle", "--r", "2", "--n", "4", "--M", "4"}).code, 1);
    EXPECT_EQ(call({"cheb", "--family", "square", "--r", "2", "--n", "1"}).code, 1);
    EXPECT_EQ(call({"cheb", "--family", "lemniscate", "--r", "2", "--n", "1"}).code, 1);  // missing P
    EXPECT_EQ(call({"cheb", "--family", "lemniscate", "--P", "1,q", "--r", "2", "--n", "1"}).code, 1);
    EXPECT_EQ(call({"cheb", "--bogus"}).code, 1);
    EXPECT_EQ(call({"nosuch"}).code, 1);
    EXPECT_EQ(call({}, false).code, 1);
    EXPECT_EQ(call({"invariance", "--family", "interval", "--n", "2", "--r", "2"}).code, 1);
    const auto r = call({"rate", "--family", "interval", "--n", "2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--r-grid"), std::string::npos);
}

TEST_F(CliTest, UnwritableOutputIsReported) {
    fs::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    std::ostringstream o, e;
    const int code = cli::run({"eqcheb", "rivlin", "--n", "2", "--out", (dir / "file" / "sub").string()}, o, e);
    EXPECT_EQ(code, 1);
    EXPECT_NE(e.str().find("--out"), std::string::npos);
}

TEST_F(CliTest, UnconvergedSolveExitsTwo) {
    const auto r = call({"cheb", "--family", "lemniscate", "--P", "1,0,-1", "--r", "1.5", "--n", "5", "--max-iter", "5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(fs::exists(dir / "cheb.json"));
    EXPECT_EQ(call({"rate", "--family", "lemniscate", "--P", "1,0,-1", "--n", "5", "--r-grid", "2,4,8,16", "--max-iter",
                    "5"})
                  .code,
              2);
}

TEST_F(CliTest, EnvironmentSetsDefaultDirectory) {
    fs::create_directories(dir);
    ::setenv("EQCHEB_OUT", dir.string().c_str(), 1);
    const auto r = call({"rivlin", "--n", "2", "--trials", "3", "--grid-M", "256"}, false);
    ::unsetenv("EQCHEB_OUT");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "rivlin.json"));
}

TEST_F(CliTest, HelpExitsZero) {
    const auto r = call({"--help"}, false);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("cheb"), std::string::npos);
}
