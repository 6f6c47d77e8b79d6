#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skdv/config.hpp"
#include "skdv/csv.hpp"
#include "skdv/errors.hpp"
#include "skdv/runner.hpp"
#include "skdv/snapshot.hpp"

using namespace skdv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("skdv_test_cli_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int config_error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("empty config resolves to defaults") {
    const ExperimentConfig c = parse_config("");
    CHECK(c.experiment == Experiment::nonlinear_skdv);
    CHECK(c.n_points == 16384);
    CHECK(c.length == 400.0);
    CHECK(c.betas == std::vector<double>{0.6});
    CHECK(parse_config("# only a comment\n\n").n_points == 16384);
}

TEST_CASE("config values and errors") {
    CHECK(parse_config("n_points = 4096").n_points == 4096);
    const ExperimentConfig c =
        parse_config("experiment = linear_kdv\nbetas = 0.5, 0.7  # trailing\nestimate_ids = KATO_KDV\n");
    CHECK(c.experiment == Experiment::linear_kdv);
    CHECK(c.betas == std::vector<double>{0.5, 0.7});
    CHECK(c.estimate_ids == std::vector<std::string>{"KATO_KDV"});

    CHECK_THROWS_AS(parse_config("n_ponts = 4096"), ConfigError);
    CHECK(config_error_line("n_ponts = 4096") == 1);
    CHECK(config_error_line("T = 0.5\n\nn_points = many\n") == 3);
    CHECK(config_error_line("experiment = heat\n") == 1);
    CHECK(config_error_line("length\n") == 1);

    ExperimentConfig bad;
    bad.n_points = 1001;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = {};
    bad.betas = {0.5, 1.5};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = {};
    bad.experiment = Experiment::diagnose_field;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    CHECK_NOTHROW(validate(ExperimentConfig{}));
}

TEST_CASE("resolved config text round trips") {
    ExperimentConfig c;
    c.experiment = Experiment::picard_crosscheck;
    c.T = 0.125;
    c.betas = {0.55, 0.65};
    c.output_dir = "somewhere";
    const std::string text = to_text(c);
    CHECK(to_text(parse_config(text)) == text);
    for (const auto& k : config_keys()) CHECK(text.find(k + " = ") != std::string::npos);
}

TEST_CASE("snapshot round trip is bit exact") {
    const GridPtr g = make_grid(64, 12.5);
    const Field r = Field::from_function(g, [](double x) { return cplx(std::exp(-x * x) / 3.0, 0.0); },
                                         FieldTag::real);
    const Field c = Field::from_function(g, [](double x) { return std::exp(cplx(-x * x, x / 7.0)); });
    for (const Field& f : {r, c}) {
        const Snapshot s = decode_snapshot(encode_snapshot(f, 0.3125));
        CHECK(s.time == 0.3125);
        CHECK(s.field.grid->n_points() == 64);
        CHECK(s.field.grid->length() == 12.5);
        CHECK(s.field.tag == f.tag);
        CHECK(s.field.values == f.values);
    }

    const fs::path dir = scratch("snap");
    write_snapshot((dir / "c.skdv").string(), c, 1.0);
    CHECK(read_snapshot((dir / "c.skdv").string()).field.values == c.values);
}

TEST_CASE("snapshot layout and corruption") {
    const Field z = Field::zeros(make_grid(8, 1.0));
    const std::string bytes = encode_snapshot(z, 0.0);
    CHECK(bytes.size() == kSnapshotHeaderBytes + 8 * 16);
    CHECK(bytes.substr(0, 4) == "SKDV");
    CHECK(static_cast<std::uint8_t>(bytes[4]) == kSnapshotFormat);
    CHECK(encode_snapshot(Field::zeros(make_grid(8, 1.0), FieldTag::real), 0.0).size() ==
          kSnapshotHeaderBytes + 8 * 8);

    std::string bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_snapshot(bad), CorruptFile);
    bad = bytes;
    bad[4] = 0x02;
    CHECK_THROWS_AS(decode_snapshot(bad), CorruptFile);
    bad = bytes;
    bad[kSnapshotHeaderBytes - 1] = 7;
    CHECK_THROWS_AS(decode_snapshot(bad), CorruptFile);
    CHECK_THROWS_AS(decode_snapshot(bytes.substr(0, bytes.size() - 1)), TruncatedFile);
    CHECK_THROWS_AS(decode_snapshot(bytes + "x"), TruncatedFile);
    CHECK_THROWS_AS(decode_snapshot("SK"), Error);
    CHECK_THROWS_AS(read_snapshot("/nonexistent/none.skdv"), Error);
}

TEST_CASE("csv numbers survive a text round trip") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 4.9e-324})
        CHECK(std::strtod(csv_number(v).c_str(), nullptr) == v);
    CHECK(csv_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(csv_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(csv_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("diagnose a written snapshot") {
    const fs::path dir = scratch("diag");
    const GridPtr g = make_grid(2048, 20.0);
    const Field f = Field::from_function(
        g, [](double x) { return cplx(std::pow(std::abs(x), 1.5) * std::exp(-x * x), 0.0); },
        FieldTag::real);
    write_snapshot((dir / "f.skdv").string(), f, 0.25);
    const std::string out = diagnose_snapshot((dir / "f.skdv").string(), {0.4, 0.6}, 0.5);
    std::istringstream in(out);
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    CHECK_FALSE(std::getline(in, extra));
    CHECK(header.rfind("time,sobolev_index,", 0) == 0);
    CHECK(header.find("holder_quotient_beta_0.6") != std::string::npos);
    CHECK(header.find("growth_ratio_beta_0.4") != std::string::npos);
    CHECK(row.rfind("0.25,", 0) == 0);
}

TEST_CASE("linear run writes manifest and reproducible series") {
    ExperimentConfig c = parse_config(slurp("configs/smoke.cfg"));
    c.write_snapshots = false;
    std::ostringstream log;
    c.output_dir = scratch("run_a").string();
    run_experiment(c, log);
    const fs::path a = c.output_dir;
    c.output_dir = scratch("run_b").string();
    run_experiment(c, log);
    const fs::path b = c.output_dir;

    CHECK(slurp(a / "series.csv") == slurp(b / "series.csv"));
    const auto m = nlohmann::json::parse(slurp(a / "manifest.json"));
    CHECK(m["library_version"] == kLibraryVersion);
    CHECK(m["experiment"] == "linear_schrodinger");
    CHECK(m["config"]["n_points"] == "1024");
    CHECK(m["artifacts"].size() == 1);
    CHECK(m["results"]["focus_time_predicted"] == 0.25);

    std::istringstream series(slurp(a / "series.csv"));
    std::string header;
    std::getline(series, header);
    CHECK(header ==
          "time,mass_u,max_abs_u,max_du,holder_quotient_beta_0.5,holder_quotient_beta_0.6,"
          "sobolev_index_u");
    int rows = 0;
    for (std::string line; std::getline(series, line);) ++rows;
    CHECK(rows == c.snapshots);
}

TEST_CASE("estimates summary format") {
    ExperimentConfig c;
    c.experiment = Experiment::estimates;
    c.estimate_ids = {"MAX_KDV_L4"};
    c.output_dir = scratch("est").string();
    std::ostringstream log;
    fs::create_directories(c.output_dir);
    CHECK(run_estimates(c, log, false) == 0);
    std::istringstream in(slurp(fs::path(c.output_dir) / "estimates_summary.csv"));
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "estimate,ensemble,worst_ratio,recorded,status");
    CHECK(row.rfind("MAX_KDV_L4,gaussian_mixture.v1.n50.seed7.N1024.L128.T1,", 0) == 0);
    CHECK(row.substr(row.size() - 5) == ",pass");

    c.constants_file = (fs::path(c.output_dir) / "none.txt").string();
    CHECK(run_estimates(c, log, false) == 0);
    std::istringstream in2(slurp(fs::path(c.output_dir) / "estimates_summary.csv"));
    std::getline(in2, header);
    std::getline(in2, row);
    CHECK(row.substr(row.size() - 15) == ",nan,unrecorded");
}

TEST_CASE("guarded reports errors as exit codes") {
    std::ostringstream err;
    CHECK(guarded(err, [] { return 0; }) == 0);
    CHECK(guarded(err, []() -> int { throw ConfigError("bad key", 3); }) != 0);
    CHECK(err.str().find("bad key") != std::string::npos);
}

TEST_CASE("linear Schrodinger run peaks at the predicted focus") {
    ExperimentConfig c;
    c.experiment = Experiment::linear_schrodinger;
    c.n_points = 16384;
    c.length = 200.0;
    c.T = 0.5;
    c.snapshots = 101;
    c.write_snapshots = false;
    c.output_dir = scratch("focus").string();
    std::ostringstream log;
    run_experiment(c, log);
    std::istringstream in(slurp(fs::path(c.output_dir) / "series.csv"));
    std::string line;
    std::getline(in, line);
    double best = -1.0, best_t = -1.0;
    while (std::getline(in, line)) {
        std::vector<double> cells;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) cells.push_back(std::strtod(cell.c_str(), nullptr));
        if (cells[4] > best) {
            best = cells[4];
            best_t = cells[0];
        }
    }
    CHECK(best_t == doctest::Approx(0.25));
}
