#pragma once
// Shared value types: rate parameters, uniform time grids, photon waveforms,
// control-pulse envelopes and single-excitation amplitude trajectories.
//
// Rates are stored internally in SI angular units (rad/s).  Constructors and
// the CLI speak the conventional 2pi x MHz quotation and convert exactly once,
// so no 2pi factor can go missing downstream.  All waveform integrals use the
// trapezoidal rule on the shared uniform grid.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavityforge {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double speed_of_light = 299792458.0;  // m/s

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

// Output grid too coarse for the requested rates; message suggests a fix.
struct StepSizeError : Error {
    using Error::Error;
};

// A requested waveform demands more excitation than the system holds.
struct InfeasibleTargetError : Error {
    using Error::Error;
};

// Impedance matching impossible (spontaneous loss outweighs the coupling
// mirror; occurs for cooperativity C <= 1/2).
struct WeakCouplingError : InfeasibleTargetError {
    using InfeasibleTargetError::InfeasibleTargetError;
};

// ---------------------------------------------------------------------------
// Units

constexpr double from_2pi_mhz(double f_mhz) { return two_pi * 1.0e6 * f_mhz; }
constexpr double to_2pi_mhz(double w_rad_s) { return w_rad_s / (two_pi * 1.0e6); }

// ---------------------------------------------------------------------------
// System parameters
//
// Decay convention: the atomic *population* decays at 2*gamma and the photon
// number at 2*kappa; gamma and kappa are the polarisation/field decay rates.

struct SystemParams {
    double g = 0;           // atom-cavity coupling (rad/s)
    double kappa = 0;       // cavity field decay rate (rad/s)
    double gamma = 0;       // atomic polarisation decay rate (rad/s)
    double delta_pump = 0;  // pump-laser detuning (rad/s)
    double delta_cav = 0;   // cavity detuning (rad/s)
};

SystemParams make_params(double g_2pi_mhz, double kappa_2pi_mhz, double gamma_2pi_mhz,
                         double delta_pump_2pi_mhz = 0.0, double delta_cav_2pi_mhz = 0.0);

// Rates quoted back in the 2pi x MHz convention.
struct RatesMHz {
    double g, kappa, gamma, delta_pump, delta_cav;
};
RatesMHz to_mhz(const SystemParams& p);

// ---------------------------------------------------------------------------
// Time grid: the shared clock for waveforms, pulses and trajectories.

struct TimeGrid {
    double t_start = 0;
    double dt = 0;
    std::size_t n = 0;

    double t(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
    double t_end() const { return t(n - 1); }
    double span() const { return dt * static_cast<double>(n - 1); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

TimeGrid make_grid(double t_start, double t_end, std::size_t n);

// Trapezoidal quadrature of samples on a uniform grid.
double trapezoid(const TimeGrid& grid, std::span<const double> f);
// Running trapezoidal integral; out[0] = 0, same length as f.
std::vector<double> cumulative_trapezoid(const TimeGrid& grid, std::span<const double> f);

// ---------------------------------------------------------------------------
// Waveforms

// Complex running-wave probability amplitude psi(t) in 1/sqrt(s); the squared
// modulus integrates to the photon content (<= 1).
struct PhotonWaveform {
    TimeGrid grid;
    std::vector<cplx> amp;
};

// integral |psi|^2 dt
double l2_norm(const PhotonWaveform& w);

PhotonWaveform scaled(PhotonWaveform w, double factor);

// Time-mirrored copy: psi'(t_start + s) = psi(t_end - s).
PhotonWaveform time_reversed(PhotonWaveform w);

// Smooth sin^2 envelope of the given duration starting at t0 (defaults to the
// grid origin), normalized on the grid to `norm`.  Zero value and slope but
// non-zero curvature at both ends of the support.
PhotonWaveform sin2_photon(const TimeGrid& grid, double duration);
PhotonWaveform sin2_photon(const TimeGrid& grid, double duration, double t0, double norm);

// Same envelope plus its analytic time derivative (scaled consistently), for
// callers that want derivative samples instead of finite differences.
struct Sin2Target {
    PhotonWaveform wave;
    std::vector<double> deriv;  // d/dt of Re(amp)
};
Sin2Target sin2_target(const TimeGrid& grid, double duration, double t0, double norm);

// Real, non-negative Rabi-frequency envelope of the control laser (rad/s).
struct PulseEnvelope {
    TimeGrid grid;
    std::vector<double> omega;
};

// Time series of the single-excitation amplitudes.  c_e, c_x, c_g are the
// amplitudes of |e,0>, |x,0>, |g,1>; phi_out is the outgoing running-wave
// amplitude (1/sqrt(s)).
struct AmplitudeTrajectory {
    TimeGrid grid;
    std::vector<cplx> c_e, c_x, c_g;
    std::vector<cplx> phi_out;
};

}  // namespace cavityforge
