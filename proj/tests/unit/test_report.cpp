#include "ibc/report.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

using namespace ibc;
using namespace ibc::cli;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(const RunConfig& config) {
    std::ostringstream out, err;
    const int code = run(config, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config_for(std::string command, std::string problem, int n) {
    RunConfig c;
    c.command = std::move(command);
    c.problem = std::move(problem);
    c.n = n;
    return c;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("format_double round-trips", "[report][property]") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mant(-1, 1);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("exit code mapping", "[report]") {
    CHECK(exit_code_for(ErrorKind::InvalidArgument) == kExitUsage);
    CHECK(exit_code_for(ErrorKind::DepthTooLarge) == kExitUsage);
    for (auto k : {ErrorKind::NoFeasibleSubspace, ErrorKind::IllConditionedMass, ErrorKind::UnsupportedForGeneralized,
                   ErrorKind::UndefinedSubspace, ErrorKind::UndefinedRelativeError, ErrorKind::Divergence})
        CHECK(exit_code_for(k) == kExitNumerical);
}

TEST_CASE("validation rejects bad parameters", "[report]") {
    CHECK_NOTHROW(validate(config_for("analyze", "canuto", 16)));
    CHECK_THROWS_AS(validate(config_for("analyze", "wave", 16)), Error);
    CHECK_THROWS_AS(validate(config_for("analyze", "canuto", 0)), Error);
    auto c = config_for("reduce", "acoustic", 16);
    c.ic = "square";
    CHECK_THROWS_AS(validate(c), Error);
    c = config_for("analyze", "canuto", 16);
    c.k = 0;
    CHECK_THROWS_AS(validate(c), Error);
    c = config_for("reduce", "acoustic", 16);
    c.t_end = -1;
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("analyze CSV layout", "[report]") {
    const auto res = invoke(config_for("analyze", "canuto", 16));
    REQUIRE(res.code == kExitOk);
    const auto rows = lines(res.out);
    REQUIRE(rows.size() == 31);
    CHECK(rows[0] == "rank,re_lambda,im_lambda,s_norm,theta,zero_mode");
    CHECK(rows[1].rfind("1,", 0) == 0);
    CHECK(res.err.empty());
}

TEST_CASE("analyze JSON layout", "[report]") {
    auto c = config_for("analyze", "heat", 8);
    c.format = Format::Json;
    const auto res = invoke(c);
    REQUIRE(res.code == kExitOk);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["meta"]["command"] == "analyze");
    CHECK(doc["meta"]["problem"] == "heat");
    CHECK(doc["meta"]["summary"]["r"] == 6);
    REQUIRE(doc["rows"].size() == 6);
    CHECK(doc["rows"][0].contains("theta"));
}

TEST_CASE("generalized problems leave s_norm empty", "[report]") {
    const auto res = invoke(config_for("analyze", "orr-sommerfeld", 16));
    REQUIRE(res.code == kExitOk);
    const auto rows = lines(res.out);
    REQUIRE(rows.size() > 1);
    CHECK(rows[1].find(",,") != std::string::npos);
}

TEST_CASE("sweep-k and reduce headers", "[report]") {
    auto sweep = config_for("sweep-k", "canuto", 12);
    sweep.k_max = 3;
    const auto s = invoke(sweep);
    REQUIRE(s.code == kExitOk);
    CHECK(lines(s.out)[0] == "k,r,proxy_real_error,max_abs_error,min_abs_error,max_real_part,spurious_free");
    CHECK(lines(s.out).size() == 4);

    sweep.grid = true;
    const auto g = invoke(sweep);
    REQUIRE(g.code == kExitOk);
    CHECK(lines(g.out)[0] ==
          "k,rank,re_lambda,im_lambda,re_reference,im_reference,abs_error,rel_error,s_norm,theta,zero_mode");

    auto reduce = config_for("reduce", "acoustic", 16);
    reduce.r_list = {2, 4, 30};
    const auto r = invoke(reduce);
    REQUIRE(r.code == kExitOk);
    CHECK(lines(r.out)[0] == "r,retained,error,theta_r,restrict_residual");
    CHECK(lines(r.out).size() == 4);
}

TEST_CASE("problems listing", "[report]") {
    const auto res = invoke(config_for("problems", "canuto", 16));
    REQUIRE(res.code == kExitOk);
    const auto rows = lines(res.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "name,parameters,min_n,reference,description");
    CHECK(rows[3].rfind("orr-sommerfeld,n;alpha;reynolds,10,0,", 0) == 0);
}

TEST_CASE("errors map to exit codes with a message", "[report]") {
    const auto unknown = invoke(config_for("analyze", "wave", 16));
    CHECK(unknown.code == kExitUsage);
    CHECK(unknown.out.empty());
    CHECK(unknown.err.find("invalid-argument") != std::string::npos);

    auto deep = config_for("analyze", "heat", 8);
    deep.k = 4;
    const auto infeasible = invoke(deep);
    CHECK(infeasible.code == kExitNumerical);
    CHECK(infeasible.err.find("no-feasible-subspace") != std::string::npos);

    const auto wrong = invoke(config_for("reduce", "canuto", 16));
    CHECK(wrong.code == kExitUsage);
}

TEST_CASE("output is deterministic", "[report]") {
    auto c = config_for("analyze", "acoustic", 20);
    c.format = Format::Json;
    CHECK(invoke(c).out == invoke(c).out);
    c.format = Format::Csv;
    CHECK(invoke(c).out == invoke(c).out);
}
