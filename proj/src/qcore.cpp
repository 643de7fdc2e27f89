#include "cavityforge/qcore.hpp"

#include <algorithm>
#include <cmath>

namespace cavityforge {

SystemParams make_params(double g_2pi_mhz, double kappa_2pi_mhz, double gamma_2pi_mhz,
                         double delta_pump_2pi_mhz, double delta_cav_2pi_mhz) {
    if (!(g_2pi_mhz > 0.0))
        throw InvalidParameterError("make_params: coupling g must be > 0");
    if (!(kappa_2pi_mhz > 0.0))
        throw InvalidParameterError("make_params: cavity decay kappa must be > 0");
    if (!(gamma_2pi_mhz >= 0.0))
        throw InvalidParameterError("make_params: atomic decay gamma must be >= 0");
    SystemParams p;
    p.g = from_2pi_mhz(g_2pi_mhz);
    p.kappa = from_2pi_mhz(kappa_2pi_mhz);
    p.gamma = from_2pi_mhz(gamma_2pi_mhz);
    p.delta_pump = from_2pi_mhz(delta_pump_2pi_mhz);
    p.delta_cav = from_2pi_mhz(delta_cav_2pi_mhz);
    return p;
}

RatesMHz to_mhz(const SystemParams& p) {
    return {to_2pi_mhz(p.g), to_2pi_mhz(p.kappa), to_2pi_mhz(p.gamma),
            to_2pi_mhz(p.delta_pump), to_2pi_mhz(p.delta_cav)};
}

TimeGrid make_grid(double t_start, double t_end, std::size_t n) {
    if (n < 2) throw InvalidParameterError("make_grid: need at least 2 samples");
    if (!(t_end > t_start)) throw InvalidParameterError("make_grid: t_end must exceed t_start");
    TimeGrid g;
    g.t_start = t_start;
    g.n = n;
    g.dt = (t_end - t_start) / static_cast<double>(n - 1);
    return g;
}

double trapezoid(const TimeGrid& grid, std::span<const double> f) {
    if (f.size() != grid.n) throw InvalidParameterError("trapezoid: sample count mismatch");
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * grid.dt;
}

std::vector<double> cumulative_trapezoid(const TimeGrid& grid, std::span<const double> f) {
    if (f.size() != grid.n)
        throw InvalidParameterError("cumulative_trapezoid: sample count mismatch");
    std::vector<double> out(f.size());
    out[0] = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * grid.dt * (f[i - 1] + f[i]);
    return out;
}

double l2_norm(const PhotonWaveform& w) {
    std::vector<double> density(w.amp.size());
    for (std::size_t i = 0; i < w.amp.size(); ++i) density[i] = std::norm(w.amp[i]);
    return trapezoid(w.grid, density);
}

PhotonWaveform scaled(PhotonWaveform w, double factor) {
    for (auto& a : w.amp) a *= factor;
    return w;
}

PhotonWaveform time_reversed(PhotonWaveform w) {
    std::reverse(w.amp.begin(), w.amp.end());
    return w;
}

Sin2Target sin2_target(const TimeGrid& grid, double duration, double t0, double norm) {
    if (!(duration > 0.0)) throw InvalidParameterError("sin2_photon: duration must be > 0");
    if (t0 < grid.t_start - 1e-15 * grid.span() ||
        t0 + duration > grid.t_end() + 1e-12 * grid.span())
        throw InvalidParameterError("sin2_photon: support exceeds the grid span");
    if (!(norm >= 0.0 && norm <= 1.0 + 1e-9))
        throw InvalidParameterError("sin2_photon: norm must lie in [0, 1]");

    Sin2Target out;
    out.wave.grid = grid;
    out.wave.amp.assign(grid.n, cplx(0.0, 0.0));
    out.deriv.assign(grid.n, 0.0);

    const double w = pi / duration;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double u = grid.t(i) - t0;
        if (u <= 0.0 || u >= duration) continue;
        const double s = std::sin(w * u);
        out.wave.amp[i] = s * s;
        out.deriv[i] = w * std::sin(2.0 * w * u);
    }

    // normalize on the grid so l2_norm reproduces `norm` exactly
    const double raw = l2_norm(out.wave);
    const double scale = raw > 0.0 ? std::sqrt(norm / raw) : 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        out.wave.amp[i] *= scale;
        out.deriv[i] *= scale;
    }
    return out;
}

PhotonWaveform sin2_photon(const TimeGrid& grid, double duration, double t0, double norm) {
    return sin2_target(grid, duration, t0, norm).wave;
}

PhotonWaveform sin2_photon(const TimeGrid& grid, double duration) {
    return sin2_photon(grid, duration, grid.t_start, 1.0);
}

}  // namespace cavityforge
