#pragma once
// Inverse problem of photon-shape control: given a real target waveform
// psi(t) for the emitted photon, construct the driving-pulse envelope
// Omega(t) analytically and validate it by forward integration.
//
// On resonance with a real target the amplitudes obey
//   c_g = psi / sqrt(2 kappa)
//   c_x = (i/g) * (dc_g/dt + kappa c_g)            (purely imaginary)
//   Omega * c_e = -2 * (dv/dt + gamma v + g c_g),  v = Im c_x
// with |c_e|^2 fixed by the excitation-continuity balance.  Omega is returned
// as a non-negative envelope; a sign flip of the drive only flips the sign of
// the emitted amplitude, which is invisible in the intensity.

#include <cstdint>
#include <span>

#include "cavityforge/dynamics.hpp"
#include "cavityforge/qcore.hpp"

namespace cavityforge::shaper {

inline constexpr double default_epsilon_guard = 1e-3;

struct ShapingSolution {
    PhotonWaveform target;
    PulseEnvelope pulse;
    std::vector<double> c_e;   // real under the resonance convention
    std::vector<cplx> c_x;     // purely imaginary
    std::vector<double> c_g;
    std::vector<std::uint8_t> clipped;  // 1 where the depletion guard froze Omega
    std::size_t clipped_count = 0;
};

// target must be real, of norm <= 1 (<= 2C/(2C+1) when gamma > 0) and of
// finite support ending at zero.  Optional analytic derivative samples of the
// target replace the internal finite differences.
ShapingSolution synthesize_emission_pulse(const SystemParams& p, const PhotonWaveform& target,
                                          double epsilon_guard = default_epsilon_guard,
                                          std::span<const double> target_derivative = {});

// Largest target norm the continuity balance allows for this shape: the
// cavity content |c_g|^2, the |x> admixture and the accumulated losses may
// never exceed the initial excitation.  Finite-support photons always sit
// strictly below 1 (the deficit scales like 1/(kappa * duration) on the
// falling flank, plus the 1/(2C) loss share when gamma > 0).
double max_feasible_norm(const SystemParams& p, const PhotonWaveform& shape,
                         std::span<const double> shape_derivative = {});

struct ValidationReport {
    double l2_error = 0;  // normalized L2 distance between achieved and target amplitude
    double p_emit = 0;
    dynamics::EmissionResult run;
};

ValidationReport forward_validate(const SystemParams& p, const ShapingSolution& sol);

// Multi-peak waveform with a constant phase per bin; equal amplitudes give a
// W-state over the time-bin basis.
struct PhaseBin {
    double amplitude = 1.0;  // relative weight, normalized across bins
    double phase = 0.0;      // rad
    double t_center = 0.0;
    double width = 0.0;      // full support of the sin^2 lobe
};

PhotonWaveform phase_programmed_target(const TimeGrid& grid, std::span<const PhaseBin> bins,
                                       double norm = 1.0);

}  // namespace cavityforge::shaper
