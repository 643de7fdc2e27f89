#include "cavityforge/interfere.hpp"

#include <algorithm>
#include <cmath>

#include "cavityforge/numeric.hpp"

namespace cavityforge::interfere {

double second_click_probability(double delta_phi) {
    const double s = std::sin(0.5 * delta_phi);
    return s * s;
}

double same_port_probability(double delta_phi) {
    return 1.0 - second_click_probability(delta_phi);
}

std::vector<double> beat_coincidence_density(double delta_omega,
                                             std::span<const double> delta_tau) {
    std::vector<double> out(delta_tau.size());
    for (std::size_t i = 0; i < delta_tau.size(); ++i) {
        const double s = std::sin(0.5 * delta_omega * delta_tau[i]);
        out[i] = s * s;
    }
    return out;
}

CoincidenceHistogram hom_correlation(const PhotonWaveform& psi_a, const PhotonWaveform& psi_b,
                                     double dephasing_time, double mode_overlap) {
    if (!(psi_a.grid == psi_b.grid))
        throw InvalidParameterError("hom_correlation: waveforms must share one grid");
    if (mode_overlap < 0.0 || mode_overlap > 1.0)
        throw InvalidParameterError("hom_correlation: mode_overlap must lie in [0, 1]");
    const TimeGrid& grid = psi_a.grid;
    const std::size_t n = grid.n;
    const double dt = grid.dt;

    CoincidenceHistogram h;
    h.bin_width = dt;
    h.delta_tau.resize(2 * n - 1);
    h.density.assign(2 * n - 1, 0.0);
    for (std::size_t k = 0; k < 2 * n - 1; ++k)
        h.delta_tau[k] = dt * (static_cast<double>(k) - static_cast<double>(n - 1));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx a = psi_a.amp[i] * psi_b.amp[j];  // detection (t_i at C, t_j at D)
            const cplx b = psi_a.amp[j] * psi_b.amp[i];
            double coh = mode_overlap;
            if (dephasing_time > 0.0) {
                const double x = dt * (static_cast<double>(j) - static_cast<double>(i)) /
                                 dephasing_time;
                coh *= std::exp(-0.5 * x * x);
            }
            const double p =
                0.25 * (std::norm(a) + std::norm(b) - 2.0 * coh * (a * std::conj(b)).real());
            h.density[j + (n - 1) - i] += p * dt;  // marginal over absolute time
        }
    }
    // density integrated over delta_tau gives the C-D coincidence probability
    double total = 0.0;
    for (double d : h.density) total += d * dt;
    h.total_probability = total;
    return h;
}

double dephasing_time_for_dip_width(double fwhm) {
    if (!(fwhm > 0.0)) throw InvalidParameterError("dephasing_time_for_dip_width: width <= 0");
    // dip depth 1 - exp(-(dtau/T)^2/2) reaches half at dtau = T sqrt(2 ln 2)
    return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

TimeBinPhoton equal_bins(std::span<const double> phases) {
    if (phases.empty()) throw InvalidParameterError("equal_bins: no phases");
    TimeBinPhoton p;
    p.phases.assign(phases.begin(), phases.end());
    const double a = 1.0 / std::sqrt(static_cast<double>(phases.size()));
    p.amplitudes.assign(phases.size(), a);
    for (std::size_t i = 0; i < phases.size(); ++i)
        p.windows.emplace_back(static_cast<double>(i), static_cast<double>(i) + 1.0);
    return p;
}

std::vector<std::vector<double>> qutrit_coincidence_map(const TimeBinPhoton& signal,
                                                        const TimeBinPhoton& lo) {
    const std::size_t k = signal.phases.size();
    if (k == 0 || lo.phases.size() != k)
        throw InvalidParameterError("qutrit_coincidence_map: bin counts must match");
    std::vector<double> amp_sq(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double a = i < signal.amplitudes.size() ? signal.amplitudes[i]
                                                      : 1.0 / std::sqrt(double(k));
        amp_sq[i] = a * a;
    }
    std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double dphi_i = signal.phases[i] - lo.phases[i];
            const double dphi_j = signal.phases[j] - lo.phases[j];
            const double s = std::sin(0.5 * (dphi_i - dphi_j));
            m[i][j] = amp_sq[i] * amp_sq[j] * s * s;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Monte Carlo sampler

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(splitmix64(seed ^ splitmix64(counter)) >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<std::pair<DetectionEvent, DetectionEvent>> sample_detections(
    const PhotonWaveform& psi_a, const PhotonWaveform& psi_b, std::size_t n_pairs,
    std::uint64_t seed, double mode_overlap, std::size_t max_resolution) {
    if (n_pairs < 1) throw InvalidParameterError("sample_detections: n_pairs must be >= 1");
    if (!(psi_a.grid == psi_b.grid))
        throw InvalidParameterError("sample_detections: waveforms must share one grid");

    // decimate onto a coarse grid to keep the joint pmf small
    const TimeGrid& fine = psi_a.grid;
    std::size_t stride = 1;
    while ((fine.n + stride - 1) / stride > max_resolution) ++stride;
    const std::size_t n = (fine.n + stride - 1) / stride;

    std::vector<cplx> a(n), b(n);
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = i * stride;
        a[i] = psi_a.amp[src];
        b[i] = psi_b.amp[src];
        times[i] = fine.t(src);
    }
    const double cell = fine.dt * static_cast<double>(stride);

    // branches: 0 = (C, D), 1 = (C, C), 2 = (D, D)
    std::vector<double> cdf(3 * n * n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx y1 = a[i] * b[j];
            const cplx y2 = a[j] * b[i];
            const double cross = 2.0 * mode_overlap * (y1 * std::conj(y2)).real();
            const double w2 = cell * cell;
            acc += 0.25 * (std::norm(y1) + std::norm(y2) - cross) * w2;
            cdf[i * n + j] = acc;
        }
    const std::size_t nn = n * n;
    for (std::size_t br = 1; br <= 2; ++br)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cplx y1 = a[i] * b[j];
                const cplx y2 = a[j] * b[i];
                const double cross = 2.0 * mode_overlap * (y1 * std::conj(y2)).real();
                acc += 0.125 * (std::norm(y1) + std::norm(y2) + cross) * cell * cell;
                cdf[br * nn + i * n + j] = acc;
            }

    const double total = acc;  // ~1 up to grid quadrature
    std::vector<std::pair<DetectionEvent, DetectionEvent>> events;
    events.reserve(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const double u = uniform01(seed, k) * total;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= cdf.size()) idx = cdf.size() - 1;
        const std::size_t branch = idx / nn;
        const std::size_t i = (idx % nn) / n;
        const std::size_t j = idx % n;
        const Port p1 = branch == 2 ? Port::D : Port::C;
        const Port p2 = branch == 1 ? Port::C : Port::D;
        events.emplace_back(DetectionEvent{p1, times[i]}, DetectionEvent{p2, times[j]});
    }
    return events;
}

// ---------------------------------------------------------------------------
// Bell helpers

std::array<cplx, 4> bell_singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cplx(0.0), cplx(r), cplx(-r), cplx(0.0)};
}

double state_fidelity(const DensityMatrix& rho, const std::array<cplx, 4>& psi) {
    double herm = 0.0;
    cplx trace(0.0);
    for (std::size_t i = 0; i < 4; ++i) {
        trace += rho[i][i];
        for (std::size_t j = 0; j < 4; ++j)
            herm = std::max(herm, std::abs(rho[i][j] - std::conj(rho[j][i])));
    }
    if (herm > 1e-9) throw InvalidParameterError("state_fidelity: matrix is not Hermitian");
    if (std::abs(trace - 1.0) > 1e-9)
        throw InvalidParameterError("state_fidelity: trace must be 1");
    const auto ev = numeric::hermitian_eigenvalues<4>(rho);
    if (ev.front() < -1e-9)
        throw InvalidParameterError("state_fidelity: matrix is not positive semidefinite");

    cplx f(0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) f += std::conj(psi[i]) * rho[i][j] * psi[j];
    return f.real();
}

double bell_fidelity(const DensityMatrix& rho) { return state_fidelity(rho, bell_singlet()); }

}  // namespace cavityforge::interfere
