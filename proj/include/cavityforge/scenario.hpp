#pragma once
// Scenario plumbing behind the CLI: frozen presets that regenerate the
// reference data sets, a flat key-value config-file loader, and the runner
// that turns a scenario into CSV artifacts plus a machine-readable summary.
//
// File-level unit conventions: rates in 2pi x MHz, times in microseconds,
// phases in radians (the literal "pi" and forms like "pi/2", "-pi" parse).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavityforge/qcore.hpp"
#include "cavityforge/shaper.hpp"

namespace cavityforge::cli {

inline constexpr const char* version_string = "0.1.0";
inline constexpr int format_version = 1;

struct Scenario {
    std::string name;
    std::string kind;  // dressed | two-level | lambda | shape | absorb | sweep-c | hom | qutrit
    SystemParams params;
    TimeGrid grid;

    // lambda pump
    std::string pulse_kind = "sin";  // sin | ramp | csv
    double pulse_amp = 0;            // rad/s; 0 defaults to g
    double pulse_duration = 0;       // s
    double pulse_t0 = 0;             // s
    std::string pulse_csv;

    // shape target
    std::string target_kind = "sin2";  // sin2 | twin | triple | csv
    double target_duration = 0;
    std::vector<double> target_phases;  // triple only
    double target_norm = 0;             // 0: feasibility-capped default
    std::string target_csv;
    double epsilon_guard = shaper::default_epsilon_guard;

    // absorb
    double photon_duration = 0;
    double c0_sq = 0.005;
    std::string absorb_case = "matched";  // matched | ground | empty

    // sweep-c
    std::vector<double> sweep_c;

    // hom
    double hom_duration = 0;
    double delta_omega = 0;  // rad/s
    double dephasing_time = 0;
    double mode_overlap = 1.0;
    std::string hom_a_csv;  // optional waveform files replacing the built-in
    std::string hom_b_csv;  // sin^2 envelopes

    // qutrit
    std::vector<double> signal_phases;
    std::vector<double> lo_phases;

    // dressed table
    int n_max = 5;
    double omega_rabi = 0;  // rad/s; 0 prints doublets only

    std::uint64_t seed = 1234;
};

std::vector<std::string> preset_names();
Scenario make_preset(const std::string& name);

// Flat INI-style config (sections in brackets, key = value); unknown keys and
// malformed numbers are reported with their line number.
Scenario load_config(const std::filesystem::path& path);

// Runs the scenario, writes CSV artifacts and <name>_summary.json under
// out_dir (created if missing), and returns the summary.
nlohmann::json run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

// "pi"-aware phase list parser ("0,pi,0", "pi/2", "-pi", plain radians).
std::vector<double> parse_phase_list(const std::string& text);

}  // namespace cavityforge::cli
