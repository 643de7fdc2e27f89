#include "cavityforge/memory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <thread>

#include "cavityforge/dynamics.hpp"
#include "cavityforge/numeric.hpp"
#include "cavityforge/shaper.hpp"

namespace cavityforge::memory {

using numeric::CubicInterp;
using numeric::State;

std::array<std::array<double, 2>, 2> inout_step_matrix(double kappa) {
    if (!(kappa > 0.0)) throw InvalidParameterError("inout_step_matrix: kappa must be > 0");
    const double root_2k = std::sqrt(2.0 * kappa);
    return {{{-kappa, root_2k}, {root_2k, -1.0}}};
}

EmptyCavityResult reflect_empty_cavity(double kappa, const PhotonWaveform& phi_in, cplx c_cav0) {
    if (!(kappa > 0.0)) throw InvalidParameterError("reflect_empty_cavity: kappa must be > 0");
    const TimeGrid& grid = phi_in.grid;
    dynamics::check_grid(grid, kappa);

    CubicInterp<cplx> in(grid, phi_in.amp);
    const double root_2k = std::sqrt(2.0 * kappa);
    auto rhs = [&](double t, const State<1>& y, State<1>& dy) {
        dy[0] = -kappa * y[0] + root_2k * in(t);
    };
    numeric::OdeOptions opt;
    opt.initial_step = 0.01 / kappa;
    const auto ys = numeric::integrate<1>(grid, State<1>{c_cav0}, rhs, opt);

    EmptyCavityResult r;
    r.grid = grid;
    r.c_cav.resize(grid.n);
    r.phi_out.resize(grid.n);
    std::vector<double> out_sq(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        r.c_cav[i] = ys[i][0];
        r.phi_out[i] = root_2k * r.c_cav[i] - phi_in.amp[i];
        out_sq[i] = std::norm(r.phi_out[i]);
    }
    r.p_reflected = trapezoid(grid, out_sq);
    return r;
}

namespace {

void check_smooth_start(const PhotonWaveform& w) {
    double max_abs = 0.0;
    for (const auto& a : w.amp) max_abs = std::max(max_abs, std::abs(a));
    if (max_abs == 0.0) return;
    if (std::abs(w.amp.front()) > 1e-9 * max_abs ||
        std::abs(w.amp[1]) - std::abs(w.amp.front()) > 0.05 * max_abs)
        throw InvalidParameterError(
            "absorption: phi_in must start smoothly with phi(t0) = phi'(t0) = 0");
}

std::vector<double> real_samples(const PhotonWaveform& w, const char* who) {
    double max_abs = 0.0, max_imag = 0.0;
    for (const auto& a : w.amp) {
        max_abs = std::max(max_abs, std::abs(a));
        max_imag = std::max(max_imag, std::abs(a.imag()));
    }
    if (max_abs > 0.0 && max_imag > 1e-9 * max_abs)
        throw InvalidParameterError(std::string(who) +
                                    ": only real photon amplitudes are supported");
    std::vector<double> re(w.amp.size());
    for (std::size_t i = 0; i < w.amp.size(); ++i) re[i] = w.amp[i].real();
    return re;
}

}  // namespace

bool is_short_photon(const AbsorptionProblem& problem) {
    const auto& w = problem.phi_in;
    double peak = 0.0;
    for (const auto& a : w.amp) peak = std::max(peak, std::abs(a));
    if (peak == 0.0) return false;
    std::size_t first = 0, last = w.grid.n - 1;
    while (first < w.grid.n && std::abs(w.amp[first]) < 1e-6 * peak) ++first;
    while (last > first && std::abs(w.amp[last]) < 1e-6 * peak) --last;
    const double duration = w.grid.t(last) - w.grid.t(first);
    return duration * problem.params.kappa < 1.0;
}

PulseEnvelope synthesize_absorption_pulse(const AbsorptionProblem& problem,
                                          std::span<const double> phi_in_derivative) {
    const SystemParams& p = problem.params;
    if (std::abs(p.delta_pump) > 0.0 || std::abs(p.delta_cav) > 0.0)
        throw InvalidParameterError("synthesize_absorption_pulse: resonance required");
    if (!(problem.c0_sq > 0.0) || !(problem.c0_sq < 1.0))
        throw InvalidParameterError(
            "synthesize_absorption_pulse: seed occupation c0_sq must lie in (0, 1); a finite "
            "seed is required for photons of finite support");
    if (p.gamma > 0.0) {
        const double coop = p.g * p.g / (2.0 * p.kappa * p.gamma);
        if (coop <= 0.5)
            throw WeakCouplingError(
                "synthesize_absorption_pulse: impedance matching is impossible for "
                "cooperativity C <= 1/2 (C = " +
                std::to_string(coop) +
                "); the atom then drains the cavity faster than the mirror feeds it");
    }
    const TimeGrid& grid = problem.phi_in.grid;
    check_smooth_start(problem.phi_in);
    if (is_short_photon(problem))
        std::cerr << "synthesize_absorption_pulse: warning: photon shorter than the cavity "
                     "build-up time 1/kappa; the matched pulse cannot beat the direct "
                     "reflection during the onset\n";
    const auto phi = real_samples(problem.phi_in, "synthesize_absorption_pulse");
    if (!phi_in_derivative.empty() && phi_in_derivative.size() != grid.n)
        throw InvalidParameterError("synthesize_absorption_pulse: derivative sample mismatch");

    const double root_2k = std::sqrt(2.0 * p.kappa);

    std::vector<double> cg(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) cg[i] = phi[i] / root_2k;

    std::vector<double> cg_dot;
    if (!phi_in_derivative.empty()) {
        cg_dot.resize(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) cg_dot[i] = phi_in_derivative[i] / root_2k;
    } else {
        cg_dot = numeric::derivative(grid, cg);
    }

    // w = Im c_x under impedance matching
    std::vector<double> w(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) w[i] = (cg_dot[i] - p.kappa * cg[i]) / p.g;
    const auto w_dot = numeric::derivative(grid, w);

    // continuity balance: |c_e|^2 = c0_sq - c_g^2 - w^2 + int(phi^2 - 2 gamma w^2)
    std::vector<double> gain(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        gain[i] = phi[i] * phi[i] - 2.0 * p.gamma * w[i] * w[i];
    const auto cum_gain = cumulative_trapezoid(grid, gain);

    PulseEnvelope pulse;
    pulse.grid = grid;
    pulse.omega.assign(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double radicand =
            problem.c0_sq - cg[i] * cg[i] - w[i] * w[i] + cum_gain[i];
        if (radicand < -1e-9)
            throw WeakCouplingError(
                "synthesize_absorption_pulse: continuity balance went negative (impedance "
                "matching impossible; this always happens for cooperativity C <= 1/2)");
        const double ce = std::sqrt(std::max(radicand, 0.0));
        const double numer = -2.0 * (w_dot[i] + p.gamma * w[i] + p.g * cg[i]);
        if (!(ce > 0.0)) {
            if (std::abs(numer) > 0.0)
                throw WeakCouplingError(
                    "synthesize_absorption_pulse: drive diverges where the excited-state "
                    "amplitude vanishes");
            pulse.omega[i] = 0.0;
        } else {
            pulse.omega[i] = std::abs(numer) / ce;
        }
    }
    return pulse;
}

AbsorptionResult run_absorption(const AbsorptionProblem& problem, const PulseEnvelope& pulse) {
    const SystemParams& p = problem.params;
    const TimeGrid& grid = problem.phi_in.grid;
    if (!(pulse.grid == grid))
        throw InvalidParameterError("run_absorption: pulse and photon grids differ");

    double omega_max = 0.0;
    for (double om : pulse.omega) omega_max = std::max(omega_max, std::abs(om));
    dynamics::check_grid(grid, std::max({p.g, p.kappa, p.gamma, omega_max}));

    CubicInterp<double> om(grid, pulse.omega);
    CubicInterp<cplx> in(grid, problem.phi_in.amp);
    const double root_2k = std::sqrt(2.0 * p.kappa);
    const cplx I(0.0, 1.0);

    auto rhs = [&](double t, const State<3>& y, State<3>& dy) {
        const double omega = om(t);
        dy[0] = -0.5 * I * omega * y[1];
        dy[1] = -0.5 * I * omega * y[0] - p.gamma * y[1] - I * p.g * y[2];
        dy[2] = -I * p.g * y[1] - p.kappa * y[2] + root_2k * in(t);
    };
    numeric::OdeOptions opt;
    opt.initial_step = 0.01 / std::max({p.g, p.kappa, p.gamma, omega_max, 1.0});
    const double seed = -std::sqrt(std::max(problem.c0_sq, 0.0));
    const auto ys = numeric::integrate<3>(grid, State<3>{seed, 0.0, 0.0}, rhs, opt);

    AbsorptionResult r;
    r.traj.grid = grid;
    r.traj.c_e.resize(grid.n);
    r.traj.c_x.resize(grid.n);
    r.traj.c_g.resize(grid.n);
    r.traj.phi_out.resize(grid.n);
    std::vector<double> out_sq(grid.n), spont(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        r.traj.c_e[i] = ys[i][0];
        r.traj.c_x[i] = ys[i][1];
        r.traj.c_g[i] = ys[i][2];
        r.traj.phi_out[i] = root_2k * ys[i][2] - problem.phi_in.amp[i];
        out_sq[i] = std::norm(r.traj.phi_out[i]);
        spont[i] = 2.0 * p.gamma * std::norm(ys[i][1]);
    }
    r.p_reflected = trapezoid(grid, out_sq);
    r.p_spont = trapezoid(grid, spont);
    r.p_stored = std::norm(r.traj.c_e.back());
    r.residual = std::norm(r.traj.c_x.back()) + std::norm(r.traj.c_g.back());
    return r;
}

std::vector<SweepRow> efficiency_sweep(double kappa, double gamma, const PhotonWaveform& photon,
                                       std::span<const double> c_values, double c0_sq,
                                       unsigned max_threads) {
    if (!(kappa > 0.0) || !(gamma > 0.0))
        throw InvalidParameterError("efficiency_sweep: kappa and gamma must be > 0");

    std::vector<SweepRow> rows(c_values.size());
    auto work = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.cooperativity = c_values[i];
        row.optimum = 2.0 * row.cooperativity / (2.0 * row.cooperativity + 1.0);
        if (!(row.cooperativity > 0.0)) {
            row.feasible = false;
            return;
        }
        row.g = std::sqrt(2.0 * row.cooperativity * kappa * gamma);
        AbsorptionProblem prob;
        prob.params = SystemParams{row.g, kappa, gamma, 0.0, 0.0};
        prob.phi_in = photon;
        prob.c0_sq = c0_sq;
        try {
            const auto pulse = synthesize_absorption_pulse(prob);
            const auto res = run_absorption(prob, pulse);
            row.feasible = true;
            row.p_stored = res.p_stored;
            row.p_reflected = res.p_reflected;
        } catch (const WeakCouplingError&) {
            row.feasible = false;
        }
    };

    unsigned threads = max_threads > 0 ? max_threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

TimeReversalReport time_reversal_check(const SystemParams& p, const PhotonWaveform& target,
                                       double c0_sq) {
    if (!(c0_sq > 0.0) || !(c0_sq < 1.0))
        throw InvalidParameterError("time_reversal_check: c0_sq must lie in (0, 1)");
    const double norm = l2_norm(target);
    if (!(norm > 0.0)) throw InvalidParameterError("time_reversal_check: empty target");

    // emit with residual excitation c0_sq left behind
    PhotonWaveform emit_target = scaled(target, std::sqrt((1.0 - c0_sq) / norm));
    const auto emit_sol = shaper::synthesize_emission_pulse(p, emit_target);

    // absorb the time mirror, seeded with the same occupation
    AbsorptionProblem prob;
    prob.params = p;
    prob.phi_in = time_reversed(emit_target);
    prob.c0_sq = c0_sq;
    const auto absorb_pulse = synthesize_absorption_pulse(prob);

    const TimeGrid& grid = target.grid;
    double omega_peak = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        if (!emit_sol.clipped[i]) omega_peak = std::max(omega_peak, emit_sol.pulse.omega[i]);

    TimeReversalReport rep;
    rep.emission_pulse = emit_sol.pulse;
    rep.absorption_pulse = absorb_pulse;
    const double floor = 1e-3 * omega_peak;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const std::size_t j = grid.n - 1 - i;  // mirrored sample
        if (emit_sol.clipped[j] || emit_sol.pulse.omega[j] < floor) continue;
        const double dev = std::abs(absorb_pulse.omega[i] - emit_sol.pulse.omega[j]) /
                           emit_sol.pulse.omega[j];
        rep.max_relative_deviation = std::max(rep.max_relative_deviation, dev);
    }
    return rep;
}

}  // namespace cavityforge::memory
