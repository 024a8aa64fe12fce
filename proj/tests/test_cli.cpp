#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "nrange/cli.hpp"
#include "nrange/io.hpp"

using namespace nrange;
using namespace nrange::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run nrange_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "nrange");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "nrange_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_matrix_file(const std::string& name, const CMatrix& a, io::MatrixFormat f) {
    const fs::path p = scratch(name);
    io::write_file(p, io::write_matrix(a, f));
    return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compute E from JSON") {
    const fs::path in = write_matrix_file("e.json", example_e(), io::MatrixFormat::json);
    const fs::path csv = scratch("e.csv");
    const fs::path svg = scratch("e.svg");
    const Run r = nrange_cli({"compute", "--input", in.string(), "--csv", csv.string(), "--svg", svg.string()});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.err.empty());
    const io::ReportRecord rec = io::report_from_json(io::Json::parse(r.out));
    CHECK(rec.normaloid);
    CHECK(std::abs(rec.numerical_radius - 1.0) <= 1e-8);
    CHECK(point_set_hausdorff(rec.w0_vertices, std::vector<cplx>{0.0, 1.0}) <= 1e-6);
    CHECK(fs::file_size(csv) > 0);
    CHECK(io::read_file(svg).rfind("<svg", 0) == 0);

    // Byte-identical reruns, nothing timestamped.
    CHECK(nrange_cli({"compute", "--input", in.string()}).out == r.out);
}

TEST_CASE("compute flags and formats") {
    const fs::path mtx = write_matrix_file("i3.mtx", CMatrix::identity(3), io::MatrixFormat::matrix_market);
    const Run r = nrange_cli({"compute", "--input", mtx.string(), "--angles", "64", "--tol-set", "1e-7"});
    REQUIRE(r.code == cli::kOk);
    const io::ReportRecord rec = io::report_from_json(io::Json::parse(r.out));
    CHECK(rec.w_vertices.size() == 1);
    CHECK(rec.n_angles == 64);
    CHECK(rec.tau_set == 1e-7);

    const fs::path odd = write_matrix_file("i3.txt", CMatrix::identity(3), io::MatrixFormat::json);
    CHECK(nrange_cli({"compute", "--input", odd.string()}).code == cli::kUsage);
    CHECK(nrange_cli({"compute", "--input", odd.string(), "--format", "json"}).code == cli::kOk);
    CHECK(nrange_cli({"compute", "--input", odd.string(), "--format", "csv"}).code == cli::kUsage);
    CHECK(nrange_cli({"compute", "--input", mtx.string(), "--angles", "4"}).code == cli::kUsage);
    CHECK(nrange_cli({"compute", "--input", mtx.string(), "--tol-set", "-1"}).code == cli::kUsage);
}

TEST_CASE("zero matrix needs --allow-zero") {
    const fs::path z = write_matrix_file("zero.json", CMatrix(2), io::MatrixFormat::json);
    const Run refused = nrange_cli({"compute", "--input", z.string()});
    CHECK(refused.code == cli::kUsage);
    CHECK(refused.err.find("ZeroMatrix") != std::string::npos);
    const Run allowed = nrange_cli({"compute", "--input", z.string(), "--allow-zero"});
    CHECK(allowed.code == cli::kOk);
}

TEST_CASE("usage and parse errors exit 2") {
    CHECK(nrange_cli({}).code == cli::kUsage);
    CHECK(nrange_cli({"frobnicate"}).code == cli::kUsage);
    CHECK(nrange_cli({"compute"}).code == cli::kUsage);
    CHECK(nrange_cli({"compute", "--input", "/nonexistent.json"}).code == cli::kUsage);
    CHECK(nrange_cli({"compute", "--bogus"}).code == cli::kUsage);
    const fs::path bad = scratch("bad.mtx");
    io::write_file(bad, "%%MatrixMarket matrix array complex general\n2 2\n1 0\n");
    const Run r = nrange_cli({"compute", "--input", bad.string()});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(nrange_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("version only under --verbose") {
    const fs::path in = write_matrix_file("v.json", example_e(), io::MatrixFormat::json);
    const Run quiet = nrange_cli({"compute", "--input", in.string()});
    CHECK(quiet.err.find(cli::kVersion) == std::string::npos);
    CHECK(quiet.out.find(cli::kVersion) == std::string::npos);
    const Run loud = nrange_cli({"compute", "--input", in.string(), "--verbose"});
    CHECK(loud.err.find(cli::kVersion) != std::string::npos);
    CHECK(loud.out == quiet.out);
}

TEST_CASE("plot writes a deterministic SVG") {
    const fs::path in = write_matrix_file("tri.json", CMatrix::diagonal(std::vector<cplx>{1, -1, cplx(0, 1)}),
                                          io::MatrixFormat::json);
    const fs::path svg = scratch("tri.svg");
    REQUIRE(nrange_cli({"plot", "--input", in.string(), "--svg", svg.string()}).code == cli::kOk);
    const std::string first = io::read_file(svg);
    const Run to_stdout = nrange_cli({"plot", "--input", in.string()});
    CHECK(to_stdout.out == first);
    CHECK(first.find("<polygon") != std::string::npos);
}

TEST_CASE("verify: small default run and trials validation") {
    const Run a = nrange_cli({"verify", "--seed", "42", "--trials", "2", "--dims", "2..4"});
    CHECK(a.code == cli::kOk);
    const Run b = nrange_cli({"verify", "--seed", "42", "--trials", "2", "--dims", "2..4"});
    CHECK(a.out == b.out);
    const auto results = io::Json::parse(a.out);
    CHECK(results.is_array());
    CHECK(results.size() > 10);
    CHECK(nrange_cli({"verify", "--seed", "43", "--trials", "2", "--dims", "2..4"}).out != a.out);

    CHECK(nrange_cli({"verify", "--trials", "0"}).code == cli::kUsage);
    CHECK(nrange_cli({"verify", "--trials", "1", "--dims", "4..2"}).code == cli::kUsage);
    CHECK(nrange_cli({"verify", "--trials", "1", "--dims", "two"}).code == cli::kUsage);
}

TEST_CASE("verify: configuration files") {
    const fs::path cfg = scratch("suite.json");
    io::write_file(cfg, R"([
      {"family": "normal", "dim_range": [3, 3], "trials": 3, "seed": 5, "checkers": ["theorem2"], "tolerance": 0},
      {"family": "fixture", "trials": 20, "seed": 11, "checkers": ["ch_may_fail"]}
    ])");
    const Run r = nrange_cli({"verify", "--input", cfg.string()});
    CHECK(r.code == cli::kCheckFailure);
    CHECK(r.err.find("FAILED theorem2") != std::string::npos);
    const auto results = io::Json::parse(r.out);
    bool witnessed = false;
    for (const auto& x : results)
        if (!x["passed"].get<bool>()) witnessed = !x["witness"].is_null();
    CHECK(witnessed);

    io::write_file(cfg, R"([{"family": "ginibre", "trials": 2, "seed": 1, "checkers": ["lemma1"]}])");
    CHECK(nrange_cli({"verify", "--input", cfg.string()}).code == cli::kOk);
    io::write_file(cfg, R"([{"family": "ginibre", "trials": 2, "seed": 1, "checkers": ["theorem2"]}])");
    CHECK(nrange_cli({"verify", "--input", cfg.string()}).code == cli::kUsage);
    io::write_file(cfg, "[{\"family\": ");
    CHECK(nrange_cli({"verify", "--input", cfg.string()}).code == cli::kUsage);
    io::write_file(cfg, "[]");
    CHECK(nrange_cli({"verify", "--input", cfg.string()}).code == cli::kUsage);
}

}  // TEST_SUITE
