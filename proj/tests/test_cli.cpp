#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "dynbc/cli.hpp"
#include "dynbc/error.hpp"

using namespace dynbc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("dynbc_cli_" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("cli eigen") {
    auto r = run({"eigen", "--datum.n_max", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "degree,multiplicity,lambda,lambda_total\n0,1,0,0\n1,2,2,2\n2,2,6,6\n3,2,12,12\n");
    CHECK(r.err.find("(ok)") != std::string::npos);

    r = run({"eigen", "--bc.k", "0", "--bc.l", "0", "--bc.lambda", "0.5", "--datum.n_max", "2"});
    CHECK(r.out == "degree,multiplicity,lambda,lambda_total\n0,1,0,0.5\n1,2,0,0.5\n2,2,0,0.5\n");

    r = run({"eigen", "--bc.k", "2", "--bc.l", "1", "--datum.n_max", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1,2,-1,-1\n") != std::string::npos);
    CHECK(r.err.find("warning") != std::string::npos);

    r = run({"eigen", "--domain.dim", "3", "--bc.k", "2", "--bc.l", "1", "--datum.n_max", "1"});
    CHECK(r.out.find("1,3,0,0\n") != std::string::npos);  // -2 + 1 * 2
}

TEST_CASE("cli solve") {
    auto r = run({"solve", "--eval.times", "0,1", "--eval.points", "0.5,0", "--solve.subordination", "true"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row0, row1;
    std::getline(in, header);
    std::getline(in, row0);
    std::getline(in, row1);
    CHECK(header == "t,x1,x2,u,u_subordinated");
    CHECK(row1.rfind("1,0.5,0,0.127697838155252", 0) == 0);

    r = run({"solve", "--bc.k", "3"});
    CHECK(r.code == cli::kPreconditionError);

    r = run({"solve", "--domain.dim", "3", "--datum.name", "basis:1:0", "--eval.points", "0,0,0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,x1,x2,x3,u\n", 0) == 0);
}

TEST_CASE("cli mlf") {
    const auto r = run({"mlf", "--mlf.alpha", "0.5", "--mlf.z", "-1,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "alpha,beta,z,value\n0.5,1,-1,0.427583576155807\n0.5,1,0,1\n");
    CHECK(run({"mlf", "--mlf.alpha", "1.5"}).code == cli::kConfigError);
    CHECK(run({"mlf", "--mlf.z", "1"}).code == cli::kConfigError);
}

TEST_CASE("cli simulate") {
    auto r = run({"simulate", "--datum.name", "constant:1", "--mc.paths", "1000"});
    CHECK(r.code == 0);
    CHECK(r.out == "t,x1,x2,mean,stderr,n\n1,0.5,0,1,0,1000\n");
    CHECK(run({"simulate", "--bc.k", "1"}).code == cli::kPreconditionError);
    CHECK(run({"simulate", "--domain.dim", "3", "--datum.name", "constant:1"}).code == cli::kPreconditionError);
    CHECK(run({"simulate", "--mc.paths", "2", "--mc.shards", "4"}).code == cli::kConfigError);
}

TEST_CASE("cli sample") {
    auto r = run({"sample", "--sample.n", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "value\n");
    const auto a = run({"sample", "--sample.kind", "inverse-stable", "--sample.n", "5000", "--mc.seed", "3"});
    const auto b = run({"sample", "--sample.kind", "inverse-stable", "--sample.n", "5000", "--mc.seed", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"sample", "--sample.kind", "inverse-stable", "--sample.n", "5000", "--mc.seed", "4"});
    CHECK(c.out != a.out);
    for (const char* kind : {"stable", "inverse-tempered", "exit-angle", "boundary-increment"}) {
        const auto s = run({"sample", "--sample.kind", kind, "--sample.n", "10", "--time.theta", "0",
                            "--sample.t", "0.1"});
        CAPTURE(kind);
        CHECK(s.code == 0);
        CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 11);
    }
    CHECK(run({"sample", "--sample.kind", "gamma"}).code == cli::kConfigError);
    CHECK(run({"sample", "--sample.n", "-1"}).code == cli::kConfigError);
}

TEST_CASE("cli compare: files, reproducibility and exit codes") {
    const auto d1 = scratch("cmp1");
    const auto d2 = scratch("cmp2");
    const std::vector<std::string> base{"compare", "--eval.times", "0.5,1", "--eval.points", "0,0;0.5,0",
                                        "--mc.paths", "20000", "--datum.name", "mixed"};
    auto args1 = base;
    args1.insert(args1.end(), {"--output.dir", d1.string()});
    auto args2 = base;
    args2.insert(args2.end(), {"--output.dir", d2.string(), "--mc.shards", "3"});
    CHECK(run(args1).code == 0);
    CHECK(run(args2).code == 0);
    CHECK(slurp(d1 / "compare.csv") == slurp(d2 / "compare.csv"));
    CHECK(slurp(d1 / "compare.json") == slurp(d2 / "compare.json"));
    CHECK(slurp(d1 / "compare.csv").rfind("t,x1,x2,u_spectral,u_mc,stderr,z\n", 0) == 0);
    CHECK(slurp(d1 / "compare.json").find("\"max_abs_z\"") != std::string::npos);

    // A coarse tempered grid biases the Monte Carlo route enough to fail.
    const auto bad = run({"compare", "--time.model", "symbol", "--time.theta", "1", "--time.step", "0.3",
                          "--mc.paths", "200000", "--datum.name", "constant:0.5", "--bc.lambda", "1"});
    CHECK(bad.code == cli::kComparisonFailure);

    const auto json = run({"compare", "--datum.name", "constant:1", "--mc.paths", "100", "--output.format", "json"});
    CHECK(json.code == 0);
    CHECK(json.out.find("\"n_exact\": 1") != std::string::npos);
}

TEST_CASE("cli configuration") {
    const auto dir = scratch("cfg");
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "run.cfg");
        f << "# benchmark\nbc.k = -1\nbc.l = 1   # trailing comment\n\ntime.alpha = 0.5\neval.times = 1\n"
             "eval.points = 0.5,0\ndatum.name = cos:1\n";
    }
    auto r = run({"solve", "--config", (dir / "run.cfg").string()});
    CHECK(r.code == 0);
    CHECK(r.out == "t,x1,x2,u\n1,0.5,0,0.12769783815525287\n");
    // command-line keys override the file
    r = run({"solve", "--config", (dir / "run.cfg").string(), "--eval.times", "0"});
    CHECK(r.out == "t,x1,x2,u\n0,0.5,0,0.5\n");

    {
        std::ofstream f(dir / "bad.cfg");
        f << "bc.q = 1\n";
    }
    CHECK(run({"solve", "--config", (dir / "bad.cfg").string()}).code == cli::kConfigError);
    CHECK(run({"solve", "--config", (dir / "missing.cfg").string()}).code == cli::kConfigError);
    CHECK(run({"solve", "--datum.kind", "csv", "--datum.path", (dir / "none.csv").string()}).code ==
          cli::kConfigError);
    CHECK(run({"solve", "--eval.points", "2,0"}).code == cli::kConfigError);
    CHECK(run({"solve", "--time.alpha", "abc"}).code == cli::kConfigError);
    CHECK(run({"solve", "--time.model", "caputo", "--time.theta", "1"}).code == cli::kConfigError);
    CHECK(run({"frobnicate"}).code == cli::kConfigError);
    CHECK(run({}).code == cli::kConfigError);
    CHECK(run({"--help"}).code == 0);

    CHECK_THROWS_AS(cli::RunConfig::from_keys({{"nope", "1"}}), ConfigError);
    const auto cfg = cli::RunConfig::from_keys({{"eval.points", "0.1,0.2;0,0"}, {"eval.times", "0.5, 2"}});
    CHECK(cfg.points.size() == 2);
    CHECK(cfg.points[0][1] == 0.2);
    CHECK(cfg.times == std::vector<double>{0.5, 2.0});
}

TEST_CASE("cli datum from CSV") {
    const auto dir = scratch("datum");
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "u0.csv");
        f.precision(17);
        f << "angle,value\n";
        for (int j = 0; j < 8; ++j) f << 2.0 * 3.14159265358979323846 * j / 8 << ',' << (j == 0 ? 1.0 : 1.0) << '\n';
    }
    const auto r = run({"solve", "--datum.kind", "csv", "--datum.path", (dir / "u0.csv").string(), "--datum.n_max",
                        "3"});
    CHECK(r.code == 0);
    const auto last = r.out.substr(r.out.rfind(',') + 1);
    CHECK(std::stod(last) == doctest::Approx(1.0).epsilon(1e-14));
}
