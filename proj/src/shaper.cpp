#include "cavityforge/shaper.hpp"

#include <algorithm>
#include <cmath>

#include "cavityforge/dressed.hpp"
#include "cavityforge/numeric.hpp"

namespace cavityforge::shaper {

namespace {

std::vector<double> real_part_checked(const PhotonWaveform& w, const char* who) {
    double max_abs = 0.0, max_imag = 0.0;
    for (const auto& a : w.amp) {
        max_abs = std::max(max_abs, std::abs(a));
        max_imag = std::max(max_imag, std::abs(a.imag()));
    }
    if (max_abs > 0.0 && max_imag > 1e-9 * max_abs)
        throw InvalidParameterError(std::string(who) +
                                    ": target must be real (use 0/pi bin phases)");
    std::vector<double> re(w.amp.size());
    for (std::size_t i = 0; i < w.amp.size(); ++i) re[i] = w.amp[i].real();
    return re;
}

}  // namespace

ShapingSolution synthesize_emission_pulse(const SystemParams& p, const PhotonWaveform& target,
                                          double epsilon_guard,
                                          std::span<const double> target_derivative) {
    if (std::abs(p.delta_pump) > 0.0 || std::abs(p.delta_cav) > 0.0)
        throw InvalidParameterError("synthesize_emission_pulse: resonance required");
    const TimeGrid& grid = target.grid;
    const auto psi = real_part_checked(target, "synthesize_emission_pulse");
    if (!target_derivative.empty() && target_derivative.size() != grid.n)
        throw InvalidParameterError("synthesize_emission_pulse: derivative sample mismatch");

    const double norm = l2_norm(target);
    if (norm > 1.0 + 1e-9)
        throw InfeasibleTargetError("synthesize_emission_pulse: target norm exceeds unity");
    if (p.gamma > 0.0) {
        const double cap = dressed::emission_probability_limit(p);
        if (norm > cap + 1e-6)
            throw InfeasibleTargetError(
                "synthesize_emission_pulse: target norm exceeds the saturated emission "
                "probability 2C/(2C+1) = " +
                std::to_string(cap));
    }

    const double root_2k = std::sqrt(2.0 * p.kappa);

    std::vector<double> cg(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) cg[i] = psi[i] / root_2k;

    std::vector<double> cg_dot;
    if (!target_derivative.empty()) {
        cg_dot.resize(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) cg_dot[i] = target_derivative[i] / root_2k;
    } else {
        cg_dot = numeric::derivative(grid, cg);
    }

    // v = Im c_x
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = (cg_dot[i] + p.kappa * cg[i]) / p.g;
    const auto v_dot = numeric::derivative(grid, v);

    // excitation-continuity radicand |c_e|^2
    std::vector<double> loss(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        loss[i] = 2.0 * p.gamma * v[i] * v[i] + 2.0 * p.kappa * cg[i] * cg[i];
    const auto cum_loss = cumulative_trapezoid(grid, loss);

    ShapingSolution sol;
    sol.target = target;
    sol.pulse.grid = grid;
    sol.pulse.omega.assign(grid.n, 0.0);
    sol.c_e.resize(grid.n);
    sol.c_x.resize(grid.n);
    sol.c_g = cg;
    sol.clipped.assign(grid.n, 0);

    double last_valid_omega = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double radicand = 1.0 - v[i] * v[i] - cg[i] * cg[i] - cum_loss[i];
        if (radicand < -1e-9)
            throw InfeasibleTargetError(
                "synthesize_emission_pulse: target demands more excitation than available "
                "(radicand " +
                std::to_string(radicand) + " at sample " + std::to_string(i) + ")");
        const double ce = std::sqrt(std::max(radicand, 0.0));
        sol.c_e[i] = ce;
        sol.c_x[i] = cplx(0.0, v[i]);

        const double numer = -2.0 * (v_dot[i] + p.gamma * v[i] + p.g * cg[i]);
        if (ce > epsilon_guard) {
            last_valid_omega = std::abs(numer) / ce;
            sol.pulse.omega[i] = last_valid_omega;
        } else if (std::abs(numer) == 0.0 && std::abs(v[i]) == 0.0 && std::abs(cg[i]) == 0.0) {
            // outside the support nothing needs driving
            sol.pulse.omega[i] = 0.0;
        } else {
            sol.pulse.omega[i] = last_valid_omega;
            sol.clipped[i] = 1;
            ++sol.clipped_count;
        }
    }
    return sol;
}

double max_feasible_norm(const SystemParams& p, const PhotonWaveform& shape,
                         std::span<const double> shape_derivative) {
    const TimeGrid& grid = shape.grid;
    const auto psi = real_part_checked(shape, "max_feasible_norm");
    const double raw = l2_norm(shape);
    if (!(raw > 0.0)) throw InvalidParameterError("max_feasible_norm: empty shape");

    const double root_2k = std::sqrt(2.0 * p.kappa);
    std::vector<double> cg(grid.n), cg_dot;
    for (std::size_t i = 0; i < grid.n; ++i) cg[i] = psi[i] / (root_2k * std::sqrt(raw));
    if (!shape_derivative.empty()) {
        if (shape_derivative.size() != grid.n)
            throw InvalidParameterError("max_feasible_norm: derivative sample mismatch");
        cg_dot.resize(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i)
            cg_dot[i] = shape_derivative[i] / (root_2k * std::sqrt(raw));
    } else {
        cg_dot = numeric::derivative(grid, cg);
    }

    // budget drain K(t) per unit of target norm; feasibility needs norm*K <= 1
    std::vector<double> loss(grid.n);
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        v[i] = (cg_dot[i] + p.kappa * cg[i]) / p.g;
        loss[i] = 2.0 * p.gamma * v[i] * v[i] + 2.0 * p.kappa * cg[i] * cg[i];
    }
    const auto cum = cumulative_trapezoid(grid, loss);
    double k_max = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        k_max = std::max(k_max, v[i] * v[i] + cg[i] * cg[i] + cum[i]);
    return 1.0 / k_max;
}

ValidationReport forward_validate(const SystemParams& p, const ShapingSolution& sol) {
    ValidationReport rep;
    rep.run = dynamics::integrate_lambda(p, sol.pulse);
    const TimeGrid& grid = sol.pulse.grid;

    // compare achieved emission amplitude sqrt(R_ph) against the target's
    std::vector<double> diff_sq(grid.n), ref_sq(grid.n);
    const double root_2k = std::sqrt(2.0 * p.kappa);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double achieved = root_2k * std::abs(rep.run.traj.c_g[i]);
        const double wanted = root_2k * std::abs(sol.c_g[i]);
        diff_sq[i] = (achieved - wanted) * (achieved - wanted);
        ref_sq[i] = wanted * wanted;
    }
    const double ref = trapezoid(grid, ref_sq);
    rep.l2_error = ref > 0.0 ? std::sqrt(trapezoid(grid, diff_sq) / ref) : 0.0;
    rep.p_emit = rep.run.p_emit;
    return rep;
}

PhotonWaveform phase_programmed_target(const TimeGrid& grid, std::span<const PhaseBin> bins,
                                       double norm) {
    if (bins.empty()) throw InvalidParameterError("phase_programmed_target: no bins");
    if (!(norm >= 0.0 && norm <= 1.0 + 1e-9))
        throw InvalidParameterError("phase_programmed_target: norm must lie in [0, 1]");
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const auto& b = bins[i];
        if (!(b.width > 0.0) || !(b.amplitude > 0.0))
            throw InvalidParameterError("phase_programmed_target: bad bin amplitude/width");
        if (b.t_center - 0.5 * b.width < grid.t_start - 1e-12 * grid.span() ||
            b.t_center + 0.5 * b.width > grid.t_end() + 1e-12 * grid.span())
            throw InvalidParameterError("phase_programmed_target: bin outside the grid");
        for (std::size_t j = i + 1; j < bins.size(); ++j) {
            const double gap = std::abs(bins[j].t_center - b.t_center);
            if (gap < 0.5 * (bins[j].width + b.width) - 1e-15)
                throw InvalidParameterError("phase_programmed_target: bins overlap");
        }
    }

    double weight_sq = 0.0;
    for (const auto& b : bins) weight_sq += b.amplitude * b.amplitude;

    PhotonWaveform w;
    w.grid = grid;
    w.amp.assign(grid.n, cplx(0.0));
    for (const auto& b : bins) {
        // per-bin probability = amplitude^2 / sum amplitude^2
        const double bin_norm = b.amplitude * b.amplitude / weight_sq;
        const auto lobe = sin2_photon(grid, b.width, b.t_center - 0.5 * b.width, bin_norm);
        const cplx phase = std::polar(1.0, b.phase);
        for (std::size_t i = 0; i < grid.n; ++i) w.amp[i] += phase * lobe.amp[i];
    }
    // disjoint supports keep per-bin probabilities exact; rescale for the total
    const double raw = l2_norm(w);
    if (raw > 0.0) {
        const double s = std::sqrt(norm / raw);
        for (auto& a : w.amp) a *= s;
    }
    return w;
}

}  // namespace cavityforge::shaper
