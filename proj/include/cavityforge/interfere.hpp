#pragma once
// Time-resolved two-photon interference at a 50:50 beam splitter: the
// detection-time-delay coincidence laws, HOM correlation histograms with an
// optional Gaussian mutual-dephasing factor, time-bin qutrit coincidence
// maps, a reproducible Monte Carlo detection sampler and Bell-state fidelity
// helpers.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cavityforge/qcore.hpp"

namespace cavityforge::interfere {

// Probability that the second photon leaves through the other port after the
// inputs picked up a phase difference delta_phi: sin^2(delta_phi / 2).
double second_click_probability(double delta_phi);
// Complement of the above; the two sum to one exactly.
double same_port_probability(double delta_phi);

// Coincidence law for a frequency offset delta_omega: sin^2(dw * dtau / 2).
std::vector<double> beat_coincidence_density(double delta_omega,
                                             std::span<const double> delta_tau);

struct CoincidenceHistogram {
    std::vector<double> delta_tau;  // bin centers, symmetric around 0
    std::vector<double> density;    // C-D coincidence density over delta_tau (1/s)
    double bin_width = 0;
    double total_probability = 0;   // integral of density; <= 1/2
};

// Joint C-D detection density
//   p(t1, t2) = (1/4) |psi_a(t1) psi_b(t2) - psi_a(t2) psi_b(t1)|^2
// marginalized onto delta_tau = t2 - t1.  dephasing_time > 0 multiplies the
// interference term by exp(-(dtau/T)^2/2); mode_overlap in [0, 1] scales it
// (0 reproduces the distinguishable-photon reference).
CoincidenceHistogram hom_correlation(const PhotonWaveform& psi_a, const PhotonWaveform& psi_b,
                                     double dephasing_time = 0.0, double mode_overlap = 1.0);

// Mutual coherence time whose dip (under the Gaussian model) has the given
// full width at half depth.
double dephasing_time_for_dip_width(double fwhm);

// ---------------------------------------------------------------------------
// Time-bin photons and qutrit coincidence maps.

struct TimeBinPhoton {
    std::vector<double> phases;      // rad, one per bin
    std::vector<double> amplitudes;  // sqrt of bin probabilities, unit total
    std::vector<std::pair<double, double>> windows;  // disjoint (start, end)
};

// Equal-amplitude W-state over k bins.
TimeBinPhoton equal_bins(std::span<const double> phases);

// Entries P(C_i, D_j) = |a_i a_j|^2 sin^2((dphi_i - dphi_j)/2) with
// dphi_m = signal.phase_m - lo.phase_m; for the equal-amplitude state the
// prefactor is 1/k^2.
std::vector<std::vector<double>> qutrit_coincidence_map(const TimeBinPhoton& signal,
                                                        const TimeBinPhoton& lo);

// ---------------------------------------------------------------------------
// Monte Carlo detection records (counter-based stream, bit-reproducible).

enum class Port { C, D };

struct DetectionEvent {
    Port port;
    double time;
};

std::vector<std::pair<DetectionEvent, DetectionEvent>> sample_detections(
    const PhotonWaveform& psi_a, const PhotonWaveform& psi_b, std::size_t n_pairs,
    std::uint64_t seed, double mode_overlap = 1.0, std::size_t max_resolution = 512);

// ---------------------------------------------------------------------------
// Bell-state helpers, basis (++, +-, -+, --) in the circular polarisations.

using DensityMatrix = std::array<std::array<cplx, 4>, 4>;

// (|+, -> - |-, +>)/sqrt(2)
std::array<cplx, 4> bell_singlet();

// <psi| rho |psi> for a valid density matrix (Hermitian, unit trace, PSD
// within 1e-9).
double state_fidelity(const DensityMatrix& rho, const std::array<cplx, 4>& psi);
double bell_fidelity(const DensityMatrix& rho);

}  // namespace cavityforge::interfere
