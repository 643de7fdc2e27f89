#include "cavityforge/cli.hpp"

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cavityforge/scenario.hpp"

namespace cavityforge::cli {

namespace {

constexpr double us = 1e-6;

struct CommonFlags {
    double g = 15, kappa = 3, gamma = 3, delta_pump = 0, delta_cav = 0;
    double t_start = 0, t_end = 2;  // microseconds
    std::size_t n = 8192;
    std::string out = ".";
    std::string config;
};

void add_param_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--g", f.g, "coupling g (2pi x MHz)")->capture_default_str();
    cmd->add_option("--kappa", f.kappa, "cavity field decay kappa (2pi x MHz)")
        ->capture_default_str();
    cmd->add_option("--gamma", f.gamma, "atomic polarisation decay gamma (2pi x MHz)")
        ->capture_default_str();
    cmd->add_option("--delta-pump", f.delta_pump, "pump detuning (2pi x MHz)")
        ->capture_default_str();
    cmd->add_option("--delta-cav", f.delta_cav, "cavity detuning (2pi x MHz)")
        ->capture_default_str();
}

void add_grid_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--t-start", f.t_start, "grid start (us)")->capture_default_str();
    cmd->add_option("--t-end", f.t_end, "grid end (us)")->capture_default_str();
    cmd->add_option("--n", f.n, "grid samples")->capture_default_str();
}

void add_out_flag(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
    cmd->add_option("--config", f.config, "load the scenario from a config file instead");
}

Scenario base_scenario(const CommonFlags& f, const std::string& kind, const std::string& name) {
    Scenario s;
    s.kind = kind;
    s.name = name;
    s.params = make_params(f.g, f.kappa, f.gamma, f.delta_pump, f.delta_cav);
    s.grid = make_grid(f.t_start * us, f.t_end * us, f.n);
    return s;
}

int execute(const Scenario& s, const std::string& out_dir) {
    const auto summary = run_scenario(s, out_dir);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"cavityforge: single-atom cavity-QED photon emission, shaping, storage and "
                 "interference"};
    app.require_subcommand(1);

    CommonFlags f;

    // dressed
    auto* dressed_cmd = app.add_subcommand("dressed", "dressed-state tables (CSV)");
    int n_max = 5;
    double omega = 0;
    add_param_flags(dressed_cmd, f);
    dressed_cmd->add_option("--n-max", n_max, "highest excitation manifold")
        ->capture_default_str();
    dressed_cmd->add_option("--omega", omega, "pump Rabi frequency (2pi x MHz); 0 = doublets");
    add_out_flag(dressed_cmd, f);

    // emit
    auto* emit_cmd = app.add_subcommand("emit", "time-domain emission trajectories");
    std::string pulse_kind = "sin";
    double pulse_amp = 0, pulse_duration = 0.2, pulse_t0 = 0;
    std::string pulse_csv;
    bool two_level = false;
    add_param_flags(emit_cmd, f);
    add_grid_flags(emit_cmd, f);
    emit_cmd->add_flag("--two-level", two_level, "sudden excitation of the bare two-level atom");
    emit_cmd->add_option("--pulse", pulse_kind, "pump envelope: sin | ramp | csv")
        ->capture_default_str();
    emit_cmd->add_option("--pulse-amp", pulse_amp, "pump amplitude (2pi x MHz); 0 = g");
    emit_cmd->add_option("--pulse-duration", pulse_duration, "pump duration / ramp time (us)")
        ->capture_default_str();
    emit_cmd->add_option("--pulse-t0", pulse_t0, "pump start time (us)");
    emit_cmd->add_option("--pulse-csv", pulse_csv, "pulse CSV path (for --pulse csv)");
    add_out_flag(emit_cmd, f);

    // shape
    auto* shape_cmd = app.add_subcommand("shape", "synthesize a driving pulse for a target photon");
    std::string target_kind = "sin2", phases_text, target_csv;
    double target_duration = 0.5, target_norm = 0, guard = shaper::default_epsilon_guard;
    add_param_flags(shape_cmd, f);
    add_grid_flags(shape_cmd, f);
    shape_cmd->add_option("--target", target_kind, "target: sin2 | twin | triple | csv")
        ->capture_default_str();
    shape_cmd->add_option("--duration", target_duration, "target support (us)")
        ->capture_default_str();
    shape_cmd->add_option("--phases", phases_text, "triple-bin phases, e.g. 0,pi,0");
    shape_cmd->add_option("--norm", target_norm, "target norm; 0 = feasibility-capped default");
    shape_cmd->add_option("--guard", guard, "depletion guard on |c_e|")->capture_default_str();
    shape_cmd->add_option("--target-csv", target_csv, "target CSV path (for --target csv)");
    add_out_flag(shape_cmd, f);

    // absorb
    auto* absorb_cmd = app.add_subcommand("absorb", "impedance-matched single-photon absorption");
    double photon_duration = 3.14, c0_sq = 0.005;
    std::string absorb_case = "matched";
    add_param_flags(absorb_cmd, f);
    add_grid_flags(absorb_cmd, f);
    absorb_cmd->get_option("--t-end")->default_val(4.0);
    absorb_cmd->get_option("--n")->default_val(32768);
    absorb_cmd->add_option("--duration", photon_duration, "incoming photon duration (us)")
        ->capture_default_str();
    absorb_cmd->add_option("--c0-sq", c0_sq, "initial |e,0> occupation")->capture_default_str();
    absorb_cmd->add_option("--case", absorb_case, "matched | ground | empty")
        ->capture_default_str();
    add_out_flag(absorb_cmd, f);

    // sweep-c
    auto* sweep_cmd = app.add_subcommand("sweep-c", "storage efficiency vs cooperativity");
    double c_min = 0.6, c_max = 50;
    std::size_t points = 12;
    std::string c_list;
    double sweep_duration = 3.14, sweep_c0 = 0.005;
    add_param_flags(sweep_cmd, f);
    add_grid_flags(sweep_cmd, f);
    sweep_cmd->get_option("--t-end")->default_val(4.0);
    sweep_cmd->get_option("--n")->default_val(16384);
    sweep_cmd->add_option("--c-min", c_min, "lowest cooperativity")->capture_default_str();
    sweep_cmd->add_option("--c-max", c_max, "highest cooperativity")->capture_default_str();
    sweep_cmd->add_option("--points", points, "log-spaced points")->capture_default_str();
    sweep_cmd->add_option("--c-values", c_list, "explicit comma-separated C list");
    sweep_cmd->add_option("--duration", sweep_duration, "photon duration (us)")
        ->capture_default_str();
    sweep_cmd->add_option("--c0-sq", sweep_c0, "seed occupation")->capture_default_str();
    add_out_flag(sweep_cmd, f);

    // hom
    auto* hom_cmd = app.add_subcommand("hom", "time-resolved two-photon coincidence histogram");
    double hom_duration = 1.0, delta_omega = 0, dephasing = 0, overlap = 1.0;
    add_param_flags(hom_cmd, f);
    add_grid_flags(hom_cmd, f);
    hom_cmd->add_option("--duration", hom_duration, "photon duration (us)")
        ->capture_default_str();
    hom_cmd->add_option("--delta-omega", delta_omega, "frequency offset (2pi x MHz)");
    hom_cmd->add_option("--dephasing", dephasing, "mutual coherence time (us); 0 = none");
    hom_cmd->add_option("--overlap", overlap, "mode overlap in [0,1]")->capture_default_str();
    std::string hom_a_csv, hom_b_csv;
    hom_cmd->add_option("--a-csv", hom_a_csv, "waveform CSV for input A");
    hom_cmd->add_option("--b-csv", hom_b_csv, "waveform CSV for input B");
    add_out_flag(hom_cmd, f);

    // qutrit
    auto* qutrit_cmd = app.add_subcommand("qutrit", "time-bin coincidence map");
    std::string signal_phases = "0,pi,0", lo_phases = "0,0,0";
    add_param_flags(qutrit_cmd, f);
    qutrit_cmd->add_option("--signal-phases", signal_phases, "signal bin phases")
        ->capture_default_str();
    qutrit_cmd->add_option("--lo-phases", lo_phases, "local-oscillator bin phases")
        ->capture_default_str();
    add_out_flag(qutrit_cmd, f);

    // preset
    auto* preset_cmd = app.add_subcommand("preset", "run a frozen reference scenario");
    std::string preset_name;
    preset_cmd->add_option("name", preset_name, "one of: " + [] {
        std::string all;
        for (const auto& n : preset_names()) all += n + " ";
        return all;
    }());
    add_out_flag(preset_cmd, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!f.config.empty()) return execute(load_config(f.config), f.out);

        if (dressed_cmd->parsed()) {
            auto s = base_scenario(f, "dressed", "dressed");
            s.n_max = n_max;
            s.omega_rabi = from_2pi_mhz(omega);
            return execute(s, f.out);
        }
        if (emit_cmd->parsed()) {
            auto s = base_scenario(f, two_level ? "two-level" : "lambda", "emit");
            s.pulse_kind = pulse_kind;
            s.pulse_amp = from_2pi_mhz(pulse_amp);
            s.pulse_duration = pulse_duration * us;
            s.pulse_t0 = pulse_t0 * us;
            s.pulse_csv = pulse_csv;
            return execute(s, f.out);
        }
        if (shape_cmd->parsed()) {
            auto s = base_scenario(f, "shape", "shape");
            s.target_kind = target_kind;
            s.target_duration = target_duration * us;
            if (!phases_text.empty()) s.target_phases = parse_phase_list(phases_text);
            s.target_norm = target_norm;
            s.epsilon_guard = guard;
            s.target_csv = target_csv;
            return execute(s, f.out);
        }
        if (absorb_cmd->parsed()) {
            auto s = base_scenario(f, "absorb", "absorb");
            s.photon_duration = photon_duration * us;
            s.c0_sq = c0_sq;
            s.absorb_case = absorb_case;
            return execute(s, f.out);
        }
        if (sweep_cmd->parsed()) {
            auto s = base_scenario(f, "sweep-c", "sweep");
            s.photon_duration = sweep_duration * us;
            s.c0_sq = sweep_c0;
            if (!c_list.empty()) {
                for (const auto& tok : CLI::detail::split(c_list, ','))
                    s.sweep_c.push_back(std::stod(tok));
            } else {
                for (std::size_t i = 0; i < points; ++i) {
                    const double frac =
                        points < 2 ? 0.0
                                   : static_cast<double>(i) / static_cast<double>(points - 1);
                    s.sweep_c.push_back(c_min * std::pow(c_max / c_min, frac));
                }
            }
            return execute(s, f.out);
        }
        if (hom_cmd->parsed()) {
            auto s = base_scenario(f, "hom", "hom");
            if (f.n > 2048) s.grid = make_grid(f.t_start * us, f.t_end * us, 600);
            s.hom_duration = hom_duration * us;
            s.delta_omega = from_2pi_mhz(delta_omega);
            s.dephasing_time = dephasing * us;
            s.mode_overlap = overlap;
            s.hom_a_csv = hom_a_csv;
            s.hom_b_csv = hom_b_csv;
            return execute(s, f.out);
        }
        if (qutrit_cmd->parsed()) {
            auto s = base_scenario(f, "qutrit", "qutrit");
            s.signal_phases = parse_phase_list(signal_phases);
            s.lo_phases = parse_phase_list(lo_phases);
            return execute(s, f.out);
        }
        if (preset_cmd->parsed()) {
            if (preset_name.empty())
                throw InvalidParameterError("preset: give a name or --config file");
            return execute(make_preset(preset_name), f.out);
        }
        throw InvalidParameterError("no subcommand given");
    } catch (const InfeasibleTargetError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cavityforge::cli
