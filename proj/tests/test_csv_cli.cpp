#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nursesim/cli.hpp"
#include "nursesim/csv.hpp"

using namespace nursesim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "nursesim_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "nursesim");
    std::ostringstream out, err;
    const int code = cli::parse_and_dispatch(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_SUITE("csv-cli") {

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333");
    CHECK(format_number(15093.9) == "15093.9");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_field(CsvField{true}) == "true");
    CHECK(format_field(CsvField{std::int64_t{42}}) == "42");
}

TEST_CASE("write and read round trip") {
    const auto path = scratch("round.csv").string();
    write_csv({{0.5, 1.25, 0.01, 2.5, 0.02}, {1.0, 3.0, 0.0, 4.0, 0.5}}, schemas::threshold, path);
    const auto f = read_csv(path);
    CHECK(f.schema_tag == schemas::threshold.tag);
    CHECK(f.header == schemas::threshold.columns);
    REQUIRE(f.rows.size() == 2);
    CHECK(f.rows[1][f.column("J_long")] == "4");
    CHECK_THROWS(f.column("nope"));
    CHECK(slurp(path).find('\r') == std::string::npos);
}

TEST_CASE("empty result writes a header-only file") {
    const auto path = scratch("empty.csv").string();
    write_csv({}, schemas::clearing, path);
    const auto f = read_csv(path);
    CHECK(f.rows.empty());
    CHECK(f.header == schemas::clearing.columns);
}

TEST_CASE("row width must match the schema") {
    CHECK_THROWS_AS(write_csv({{1.0, 2.0}}, schemas::threshold, scratch("bad.csv").string()), std::invalid_argument);
}

TEST_CASE("grid parsing") {
    CHECK(cli::parse_grid("0:1:0.5") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(cli::parse_grid("0.1, 0.3") == std::vector<double>{0.1, 0.3});
    CHECK_THROWS_AS(cli::parse_grid("0:1"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_list("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_list("x"), std::invalid_argument);
}

TEST_CASE("exit codes") {
    CHECK(run({"--help"}) == cli::kOk);
    CHECK(run({}) == cli::kUsageError);
    CHECK(run({"simulate", "--bogus"}) == cli::kUsageError);
    CHECK(run({"simulate", "--theta", "-1,2", "--periods", "200", "--warmup", "0"}) == cli::kUsageError);
    CHECK(run({"simulate", "--periods", "100", "--warmup", "100"}) == cli::kUsageError);
    CHECK(run({"clearing", "--i", "4", "--j", "3"}) == cli::kUsageError);
    CHECK(run({"simulate", "--periods", "100", "--warmup", "10", "--reps", "2", "--out",
               "/nonexistent_dir/x.csv"}) == cli::kRuntimeError);
}

TEST_CASE("clearing subcommand output, CSV and manifest") {
    const auto path = scratch("cl.csv").string();
    std::string out;
    REQUIRE(run({"clearing", "--i", "2", "--j", "3", "--durations", "unit", "--a-grid", "0:1:0.5", "--out", path},
                &out) == cli::kOk);
    CHECK(out.find("discharged at 3") != std::string::npos);
    const auto f = read_csv(path);
    REQUIRE(f.rows.size() == 3);
    CHECK(f.rows[0][f.column("c1")] == "6");
    CHECK(f.rows[2][f.column("c1")] == "12");
    CHECK(f.rows[2][f.column("c2")] == "11");
    CHECK(f.rows[2][f.column("lemma2_pass")] == "true");
    const auto manifest = slurp(path + ".manifest");
    CHECK(manifest.find("schema=clearing/v1") != std::string::npos);
}

TEST_CASE("simulate reports theta normalization and instability") {
    std::string out;
    REQUIRE(run({"simulate", "--periods", "300", "--warmup", "50", "--reps", "2", "--alpha", "0.4", "--theta",
                 "0,0.338,0.2238,0.1481,0.0981"},
                &out) == cli::kOk);
    CHECK(out.find("normalization factor: 0.808") != std::string::npos);
    CHECK(out.find("unstable") != std::string::npos);
}

TEST_CASE("reruns with the same seed are byte-identical") {
    const auto a = scratch("rep_a.csv").string();
    const auto b = scratch("rep_b.csv").string();
    const std::vector<std::string> common = {"sweep", "--kind", "priority", "--param", "alpha", "--values",
                                             "0.1,0.2", "--periods", "1500", "--warmup", "300", "--reps", "3",
                                             "--seed", "17", "--out"};
    auto args_a = common, args_b = common;
    args_a.push_back(a);
    args_b.push_back(b);
    args_b.insert(args_b.end() - 2, {"--workers", "2"});
    REQUIRE(run(args_a) == cli::kOk);
    REQUIRE(run(args_b) == cli::kOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(read_csv(a).rows.size() == 4);
}

}  // TEST_SUITE
