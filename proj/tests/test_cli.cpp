#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cavityforge/cli.hpp"
#include "cavityforge/scenario.hpp"
#include "cavityforge/serialize.hpp"

using namespace cavityforge;
using namespace cavityforge::cli;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("cavityforge_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv = {"cavityforge"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run(static_cast<int>(argv.size()), argv.data());
}

// minimal structural validation against the shipped schema: required keys
// exist and primitive types match
void check_against_schema(const nlohmann::json& schema, const nlohmann::json& doc) {
    REQUIRE(schema.contains("required"));
    for (const auto& key : schema["required"]) {
        const std::string k = key.get<std::string>();
        REQUIRE_MESSAGE(doc.contains(k), "missing key " << k);
        const auto& prop = schema["properties"][k];
        const std::string type = prop["type"].get<std::string>();
        if (type == "string") CHECK(doc[k].is_string());
        if (type == "integer") CHECK(doc[k].is_number_integer());
        if (type == "number") CHECK(doc[k].is_number());
        if (type == "object") {
            CHECK(doc[k].is_object());
            if (prop.contains("required")) check_against_schema(prop, doc[k]);
        }
        if (prop.contains("enum")) {
            bool found = false;
            for (const auto& v : prop["enum"]) found = found || v == doc[k];
            CHECK_MESSAGE(found, "value of " << k << " not in schema enum");
        }
    }
}

}  // namespace

TEST_CASE("presets are known and frozen") {
    for (const auto& name : preset_names()) CHECK_NOTHROW(make_preset(name));
    CHECK_THROWS_AS(make_preset("fig99"), InvalidParameterError);
}

TEST_CASE("qutrit preset writes a deterministic map and a schema-valid summary") {
    const auto dir = fresh_dir("qutrit");
    const auto summary = run_scenario(make_preset("fig9-qutrit"), dir);

    const auto schema_path = fs::path(CAVITYFORGE_TEST_DATA_DIR) / ".." / ".." / "docs" /
                             "summary.schema.json";
    const auto schema = nlohmann::json::parse(slurp(schema_path));
    check_against_schema(schema, summary);

    const auto first = slurp(dir / "fig9-qutrit_map.csv");
    CHECK(!first.empty());
    run_scenario(make_preset("fig9-qutrit"), dir);
    CHECK(slurp(dir / "fig9-qutrit_map.csv") == first);

    // the central-flip pattern
    const auto& map = summary["results"]["map"];
    CHECK(map[0][0].get<double>() == 0.0);
    CHECK(map[0][2].get<double>() == 0.0);
    CHECK(map[0][1].get<double>() == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("beat preset emits histogram data with the oscillation") {
    const auto dir = fresh_dir("beat");
    const auto summary = run_scenario(make_preset("fig5-beat"), dir);
    CHECK(fs::exists(dir / "fig5-beat_hom.csv"));
    CHECK(summary["results"]["total_probability"].get<double>() > 0.1);
}

TEST_CASE("config loading: minimal file fills defaults") {
    const auto dir = fresh_dir("cfg_min");
    const auto path = dir / "minimal.cfg";
    std::ofstream(path) << "[params]\ng = 15\nkappa = 20\ngamma = 3\n";
    const auto s = load_config(path);
    CHECK(s.kind == "lambda");
    CHECK(s.grid.n == 8192);
    CHECK(s.params.g == doctest::Approx(from_2pi_mhz(15)));
    CHECK(s.grid.span() == doctest::Approx(2e-6));
}

TEST_CASE("config loading: malformed numbers and unknown keys carry line numbers") {
    const auto dir = fresh_dir("cfg_bad");
    const auto bad_num = dir / "bad_num.cfg";
    std::ofstream(bad_num) << "[params]\ng = 15\nkappa = oops\ngamma = 3\n";
    try {
        load_config(bad_num);
        FAIL("expected a config error");
    } catch (const InvalidParameterError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }

    const auto unknown = dir / "unknown.cfg";
    std::ofstream(unknown) << "[params]\ng = 15\nkappa = 3\ngamma = 3\nbogus = 1\n";
    try {
        load_config(unknown);
        FAIL("expected a config error");
    } catch (const InvalidParameterError& e) {
        CHECK(std::string(e.what()).find(":5") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }

    const auto missing = dir / "missing.cfg";
    std::ofstream(missing) << "[params]\ng = 15\n";
    CHECK_THROWS_AS(load_config(missing), InvalidParameterError);
}

TEST_CASE("golden: the shipped config reproduces the frozen preset byte for byte") {
    const auto cfg = fs::path(CAVITYFORGE_TEST_DATA_DIR) / "fig13_case_c.cfg";
    const auto s = load_config(cfg);
    const auto preset = make_preset("fig13-case-c");

    CHECK(s.kind == preset.kind);
    CHECK(s.grid == preset.grid);
    CHECK(s.c0_sq == preset.c0_sq);

    const auto dir_a = fresh_dir("golden_a");
    const auto dir_b = fresh_dir("golden_b");
    run_scenario(s, dir_a);
    run_scenario(preset, dir_b);
    CHECK(slurp(dir_a / "fig13-case-c_trajectory.csv") ==
          slurp(dir_b / "fig13-case-c_trajectory.csv"));
    CHECK(slurp(dir_a / "fig13-case-c_pulse.csv") == slurp(dir_b / "fig13-case-c_pulse.csv"));
    CHECK(slurp(dir_a / "fig13-case-c_summary.json") ==
          slurp(dir_b / "fig13-case-c_summary.json"));
}

TEST_CASE("CSV-fed pulse and target scenarios round-trip through files") {
    const auto dir = fresh_dir("csv_paths");

    // write a pulse file, feed it back through an emission run
    {
        Scenario ref = make_preset("fig3c");
        PulseEnvelope pulse{ref.grid, std::vector<double>(ref.grid.n, 0.0)};
        for (std::size_t i = 0; i < ref.grid.n; ++i) {
            const double t = ref.grid.t(i);
            if (t < 0.2e-6) pulse.omega[i] = ref.params.g * std::sin(pi * t / 0.2e-6);
        }
        io::write_pulse_csv(dir / "pump.csv", pulse);

        Scenario s = ref;
        s.name = "from-csv";
        s.pulse_kind = "csv";
        s.pulse_csv = (dir / "pump.csv").string();
        const auto summary = run_scenario(s, dir);
        const auto direct = run_scenario(ref, dir);
        CHECK(summary["results"]["p_emit"].get<double>() ==
              doctest::Approx(direct["results"]["p_emit"].get<double>()).epsilon(1e-6));
    }

    // write a target file, feed it back through the synthesizer
    {
        Scenario s;
        s.name = "shape-csv";
        s.kind = "shape";
        s.params = make_params(15, 3, 0);
        s.grid = make_grid(0.0, 0.8e-6, 8192);
        const auto target = sin2_photon(s.grid, 0.5e-6, 0.0, 0.99);
        io::write_waveform_csv(dir / "target.csv", target);
        s.target_kind = "csv";
        s.target_csv = (dir / "target.csv").string();
        const auto summary = run_scenario(s, dir);
        CHECK(summary["results"]["l2_error"].get<double>() < 1e-4);
        CHECK(summary["results"]["target_norm"].get<double>() == doctest::Approx(0.99));
    }
}

TEST_CASE("hom accepts waveform files on both inputs") {
    const auto dir = fresh_dir("hom_csv");
    const auto grid = make_grid(0.0, 1.2e-6, 400);
    io::write_waveform_csv(dir / "a.csv", sin2_photon(grid, 1.0e-6));
    io::write_waveform_csv(dir / "b.csv", sin2_photon(grid, 0.7e-6));

    Scenario s;
    s.name = "hom-csv";
    s.kind = "hom";
    s.params = make_params(15, 3, 3);
    s.grid = grid;
    s.hom_a_csv = (dir / "a.csv").string();
    s.hom_b_csv = (dir / "b.csv").string();
    const auto summary = run_scenario(s, dir);

    // partially distinguishable envelopes leave residual coincidences
    const double total = summary["results"]["total_probability"].get<double>();
    CHECK(total > 0.0);
    CHECK(total <= 0.5 + 1e-12);
}

TEST_CASE("preset runs from a config file that names it") {
    const auto dir = fresh_dir("preset_cfg");
    const auto path = dir / "p.cfg";
    std::ofstream(path) << "[scenario]\npreset = fig9-qutrit\n";
    const auto s = load_config(path);
    CHECK(s.name == "fig9-qutrit");
    CHECK(s.kind == "qutrit");
}

TEST_CASE("phase lists understand pi") {
    const auto phases = parse_phase_list("0,pi,-pi/2,0.25,2pi/3");
    REQUIRE(phases.size() == 5);
    CHECK(phases[0] == 0.0);
    CHECK(phases[1] == doctest::Approx(pi));
    CHECK(phases[2] == doctest::Approx(-pi / 2));
    CHECK(phases[3] == doctest::Approx(0.25));
    CHECK(phases[4] == doctest::Approx(2 * pi / 3));
    CHECK_THROWS_AS(parse_phase_list("0,zzz"), InvalidParameterError);
}

TEST_CASE("exit codes: help 0, usage 1, infeasible physics 2") {
    CHECK(run_cli({"emit", "--help"}) == 0);
    CHECK(run_cli({"--definitely-not-a-flag"}) == 1);

    const auto dir = fresh_dir("exit_codes");
    const std::string out = "--out=" + dir.string();
    // C = 1/2 exactly: impedance matching impossible
    CHECK(run_cli({"absorb", "--g", "3", "--kappa", "3", "--gamma", "3", "--t-end", "4",
                   "--n", "16384", out.c_str()}) == 2);
    CHECK(run_cli({"qutrit", "--signal-phases", "0,pi,0", out.c_str()}) == 0);
    CHECK(fs::exists(dir / "qutrit_map.csv"));
}
