#pragma once
// Closed-form dressed-state spectra and figures of merit for a single
// two- or three-level atom in a high-finesse cavity: Jaynes-Cummings
// doublets, Lambda-system triplets with mixing angles and dark states,
// Purcell factor, cooperativity, finesse/linewidth conversions and a
// heuristic coupling-regime classifier.
//
// Eigenfrequencies are reported in the rotating frame of the interaction
// block, i.e. relative to the cavity ladder offset omega_cav*(n + 1/2).

#include <array>

#include "cavityforge/qcore.hpp"

namespace cavityforge::dressed {

struct CavityGeometry {
    double length = 0;        // mirror separation (m)
    double reflectivity = 0;  // mirror power reflectivity, in (0, 1)
    double wavelength = 0;    // resonant wavelength (m)
    double mode_volume = 0;   // cavity mode volume (m^3)
    double quality = 0;       // quality factor
};

// F = pi sqrt(R) / (1 - R)
double finesse(double reflectivity);

// free spectral range 2*pi*c/(2l), rad/s
double free_spectral_range(double length);

// field decay rate from 2*kappa = FSR / finesse
double kappa_from_geometry(const CavityGeometry& geom);

// ---------------------------------------------------------------------------
// Jaynes-Cummings doublet of the n-excitation manifold.

struct DressedDoublet {
    int n = 0;
    double omega_plus = 0;   // rad/s, relative to the cavity ladder
    double omega_minus = 0;
    double splitting = 0;    // effective Rabi frequency sqrt(4 n g^2 + delta_cav^2)
};

DressedDoublet doublet(const SystemParams& p, int n);

// ---------------------------------------------------------------------------
// Lambda-system triplet (Raman resonance delta_pump == delta_cav required).
// State coefficients are real, over the basis (|e,n-1>, |x,n-1>, |g,n>), with
// the sign convention <g,n|dark> <= 0.

struct DressedTriplet {
    int n = 0;
    double omega_0 = 0;  // dark-state eigenfrequency (equals the Raman detuning)
    double omega_plus = 0;
    double omega_minus = 0;
    double theta = 0;    // tan(theta) = Omega / (2 g sqrt(n))
    double phi = 0;
    double splitting = 0;  // omega_plus - omega_minus = sqrt(4 n g^2 + Omega^2 + delta^2)
    std::array<double, 3> dark_state{};
    std::array<double, 3> plus_state{};
    std::array<double, 3> minus_state{};
};

DressedTriplet triplet(const SystemParams& p, int n, double omega_rabi);

// ---------------------------------------------------------------------------
// Figures of merit.

// geometric form 3 Q lambda^3 / (4 pi^2 V)
double purcell_factor(const CavityGeometry& geom);
// rate form g^2 / (kappa gamma); equals twice the cooperativity
double purcell_factor_rates(const SystemParams& p);
// C = g^2 / (2 kappa gamma)
double cooperativity(const SystemParams& p);
// beta = f / (f + 1), the emission branching ratio into the cavity
double beta_from_purcell(double f);
// 2C / (2C + 1), the saturated photon-emission probability
double emission_probability_limit(const SystemParams& p);

// ---------------------------------------------------------------------------
// Coupling-regime classifier (heuristic thresholds, see the named factor).

enum class Regime { StrongCoupling, BadCavity, Neither };

// Margin used for the ">>" comparisons below.
inline constexpr double regime_threshold_factor = 5.0;

// StrongCoupling: g >= factor * max(kappa, gamma).
// BadCavity: kappa >= g (overdamped vacuum Rabi), kappa >= factor * gamma and
// g^2/kappa >= gamma (cavity-enhanced emission dominates free space).
Regime classify_regime(const SystemParams& p);

const char* to_string(Regime r);

}  // namespace cavityforge::dressed
