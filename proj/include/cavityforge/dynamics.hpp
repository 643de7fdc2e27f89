#pragma once
// Time-domain integration of the damped single-excitation atom-cavity system.
//
// Working frame and sign convention (used consistently across the shaping and
// memory modules as well):
//
//   d/dt c_e = -i*delta_pump*c_e - (i/2)*Omega(t)*c_x
//   d/dt c_x = -(i/2)*Omega(t)*c_e - gamma*c_x - i*g*c_g
//   d/dt c_g = -i*delta_cav*c_g  - i*g*c_x - kappa*c_g   [+ sqrt(2k)*phi_in]
//
// Photon emission rate R_ph(t) = 2*kappa*|c_g|^2; non-cavity losses drain at
// 2*gamma*|c_x|^2.  The overall sign of Omega is unobservable in populations.

#include <array>
#include <functional>

#include "cavityforge/numeric.hpp"
#include "cavityforge/qcore.hpp"

namespace cavityforge::dynamics {

// Control-pulse amplitude as a function of time (rad/s).
using PulseFn = std::function<double(double)>;

// C1 interpolant over envelope samples; zero outside the grid.
PulseFn pulse_function(const PulseEnvelope& pulse);

struct EmissionResult {
    AmplitudeTrajectory traj;
    std::vector<double> rate;  // R_ph(t) (1/s)
    double p_emit = 0;         // integral of R_ph
    double p_spont = 0;        // integral of 2*gamma*|c_x|^2
};

// Throws StepSizeError when dt*max_rate > 0.1 with a suggested sample count.
void check_grid(const TimeGrid& grid, double max_rate);

// Excited two-level atom (initial |x,0>) decaying through the cavity.
EmissionResult integrate_two_level(const SystemParams& p, const TimeGrid& grid);

// Full Lambda-system drive.  The trajectory is reported on the pulse grid
// (or the grid argument for the callable overload).
EmissionResult integrate_lambda(const SystemParams& p, const PulseEnvelope& pulse,
                                std::array<cplx, 3> initial = {1.0, 0.0, 0.0});
EmissionResult integrate_lambda(const SystemParams& p, const PulseFn& pulse, const TimeGrid& grid,
                                std::array<cplx, 3> initial = {1.0, 0.0, 0.0});

// trapezoid of 2*kappa*|c_g|^2
double emission_probability(const AmplitudeTrajectory& traj, const SystemParams& p);

// Quasi-stationary closed forms for a slowly pumped, strongly damped cavity:
// alpha = 2/(2*gamma + 2*g^2/kappa), c_e = exp(-(alpha/4) int Omega^2),
// c_x = -(i/2)*alpha*Omega*c_e, c_g = -(i/kappa)*g*c_x.
struct AdiabaticSolution {
    AmplitudeTrajectory traj;
    std::vector<double> rate;
    double p_emit = 0;           // closed form, with the exhausted-pump asymptote
    double p_emit_limit = 0;     // g^2*alpha/kappa
    double pump_area = 0;        // (alpha/2) int Omega^2 dt
    bool bad_cavity_ordering = true;  // false = outside the validity ordering (warn)
};

AdiabaticSolution adiabatic_bad_cavity(const SystemParams& p, const PulseEnvelope& pulse);

}  // namespace cavityforge::dynamics
