#pragma once
// Cavity-based quantum memory: input-output coupling of the cavity mode,
// driven absorption of an incoming photon, analytic impedance-matched control
// pulses, reflection diagnostics, storage-efficiency sweeps and the
// time-reversal relation between absorption and emission pulses.
//
// The coupling mirror enters in the continuum limit (round trip -> 0):
//   d/dt c_g = -i g c_x - kappa c_g + sqrt(2 kappa) phi_in
//   phi_out  = sqrt(2 kappa) c_g - phi_in
//
// Impedance matching (phi_out == 0) pins c_g = phi_in/sqrt(2 kappa) and
// c_x = (i/g)(dc_g/dt - kappa c_g); the continuity balance then fixes
// |c_e|^2 up to the seed occupation |c0|^2.  Under the non-negative-Omega
// convention the seed amplitude enters with a pi phase, c_e(0) = -sqrt(c0_sq).

#include <span>

#include "cavityforge/qcore.hpp"

namespace cavityforge::memory {

// Rows: d(c_cav)/dt and phi_out as linear maps of (c_cav, phi_in).
std::array<std::array<double, 2>, 2> inout_step_matrix(double kappa);

struct EmptyCavityResult {
    TimeGrid grid;
    std::vector<cplx> c_cav;
    std::vector<cplx> phi_out;
    double p_reflected = 0;  // integral |phi_out|^2
};

// Bare cavity response (no atom): free decay when phi_in is empty, total
// reflection with a retarded phase flip for a resonant photon.
EmptyCavityResult reflect_empty_cavity(double kappa, const PhotonWaveform& phi_in,
                                       cplx c_cav0 = 0.0);

struct AbsorptionProblem {
    SystemParams params;
    PhotonWaveform phi_in;  // finite support, phi(t0) = phi'(t0) = 0
    double c0_sq = 0.005;   // initial |e,0> occupation
};

// True when the photon support is shorter than the cavity build-up time
// 1/kappa; such photons are permitted but absorb poorly (a warning is
// printed when synthesizing their control pulse).
bool is_short_photon(const AbsorptionProblem& problem);

// Control pulse for full impedance matching; throws WeakCouplingError when
// the continuity balance goes negative (always the case for C <= 1/2).
// Optional analytic derivative samples of Re(phi_in) replace internal finite
// differences.
PulseEnvelope synthesize_absorption_pulse(const AbsorptionProblem& problem,
                                          std::span<const double> phi_in_derivative = {});

struct AbsorptionResult {
    AmplitudeTrajectory traj;   // phi_out filled
    double p_reflected = 0;     // integral |phi_out|^2
    double p_stored = 0;        // |c_e(t_end)|^2
    double p_spont = 0;         // integral 2*gamma*|c_x|^2
    double residual = 0;        // |c_x(t_end)|^2 + |c_g(t_end)|^2
};

// Drives the three-amplitude system with source phi_in and the given control
// pulse, starting from c_e(0) = -sqrt(c0_sq).
AbsorptionResult run_absorption(const AbsorptionProblem& problem, const PulseEnvelope& pulse);

struct SweepRow {
    double cooperativity = 0;
    double g = 0;  // rad/s
    bool feasible = false;
    double p_stored = 0;
    double p_reflected = 0;
    double optimum = 0;  // 2C/(2C+1)
};

// For each C set g = sqrt(2 C kappa gamma), synthesize the matched pulse and
// run the absorption.  Rows are computed in parallel; max_threads = 0 uses
// the hardware count (the CLI caps this with CAVITY_FORGE_THREADS).
std::vector<SweepRow> efficiency_sweep(double kappa, double gamma, const PhotonWaveform& photon,
                                       std::span<const double> c_values, double c0_sq = 0.005,
                                       unsigned max_threads = 0);

struct TimeReversalReport {
    double max_relative_deviation = 0;
    PulseEnvelope emission_pulse;
    PulseEnvelope absorption_pulse;
};

// Emits `target` scaled to norm 1 - c0_sq, absorbs its time mirror seeded
// with c0_sq, and compares Omega_abs(t) against Omega_emit(T - t) where the
// emission pulse is unclipped and above a relative floor.
TimeReversalReport time_reversal_check(const SystemParams& p, const PhotonWaveform& target,
                                       double c0_sq = 0.005);

}  // namespace cavityforge::memory
