#include "cavityforge/dressed.hpp"

#include <cmath>

namespace cavityforge::dressed {

double finesse(double reflectivity) {
    if (!(reflectivity > 0.0) || !(reflectivity < 1.0))
        throw InvalidParameterError("finesse: reflectivity must lie in (0, 1)");
    return pi * std::sqrt(reflectivity) / (1.0 - reflectivity);
}

double free_spectral_range(double length) {
    if (!(length > 0.0)) throw InvalidParameterError("free_spectral_range: length must be > 0");
    return two_pi * speed_of_light / (2.0 * length);
}

double kappa_from_geometry(const CavityGeometry& geom) {
    return 0.5 * free_spectral_range(geom.length) / finesse(geom.reflectivity);
}

DressedDoublet doublet(const SystemParams& p, int n) {
    if (n < 1)
        throw InvalidParameterError(
            "doublet: n must be >= 1; the ground state |g,0> never splits");
    DressedDoublet d;
    d.n = n;
    const double nn = static_cast<double>(n);
    d.splitting = std::sqrt(4.0 * nn * p.g * p.g + p.delta_cav * p.delta_cav);
    d.omega_plus = 0.5 * (p.delta_cav + d.splitting);
    d.omega_minus = 0.5 * (p.delta_cav - d.splitting);
    return d;
}

DressedTriplet triplet(const SystemParams& p, int n, double omega_rabi) {
    if (n < 1) throw InvalidParameterError("triplet: n must be >= 1");
    if (omega_rabi < 0.0) throw InvalidParameterError("triplet: Rabi frequency must be >= 0");
    const double delta = p.delta_cav;
    if (std::abs(p.delta_pump - p.delta_cav) >
        1e-9 * std::max({std::abs(p.delta_pump), std::abs(p.delta_cav), p.g}))
        throw InvalidParameterError("triplet: requires Raman resonance (equal detunings)");

    DressedTriplet t;
    t.n = n;
    const double nn = static_cast<double>(n);
    const double two_g_rn = 2.0 * p.g * std::sqrt(nn);
    const double w = std::sqrt(two_g_rn * two_g_rn + omega_rabi * omega_rabi);
    const double s = std::sqrt(w * w + delta * delta);

    t.omega_0 = delta;
    t.omega_plus = 0.5 * (delta + s);
    t.omega_minus = 0.5 * (delta - s);
    t.splitting = s;

    t.theta = std::atan2(omega_rabi, two_g_rn);
    // chosen so the +/- rows diagonalize the interaction block for any
    // detuning (reduces to phi = pi/4 on resonance)
    t.phi = std::atan2(w, s + delta);

    const double ct = std::cos(t.theta), st = std::sin(t.theta);
    const double cp = std::cos(t.phi), sp = std::sin(t.phi);
    t.dark_state = {ct, 0.0, -st};
    t.plus_state = {cp * st, -sp, cp * ct};
    t.minus_state = {sp * st, cp, sp * ct};
    return t;
}

double purcell_factor(const CavityGeometry& geom) {
    if (!(geom.mode_volume > 0.0) || !(geom.quality > 0.0) || !(geom.wavelength > 0.0))
        throw InvalidParameterError("purcell_factor: geometry must have positive Q, V, lambda");
    const double l3 = geom.wavelength * geom.wavelength * geom.wavelength;
    return 3.0 * geom.quality * l3 / (4.0 * pi * pi * geom.mode_volume);
}

double purcell_factor_rates(const SystemParams& p) {
    if (!(p.gamma > 0.0))
        throw InvalidParameterError("purcell_factor_rates: gamma must be > 0");
    return p.g * p.g / (p.kappa * p.gamma);
}

double cooperativity(const SystemParams& p) {
    if (!(p.gamma > 0.0)) throw InvalidParameterError("cooperativity: gamma must be > 0");
    return p.g * p.g / (2.0 * p.kappa * p.gamma);
}

double beta_from_purcell(double f) { return f / (f + 1.0); }

double emission_probability_limit(const SystemParams& p) {
    const double two_c = 2.0 * cooperativity(p);
    return two_c / (two_c + 1.0);
}

Regime classify_regime(const SystemParams& p) {
    const double f = regime_threshold_factor;
    if (p.g >= f * std::max(p.kappa, p.gamma)) return Regime::StrongCoupling;
    const bool overdamped = p.kappa >= p.g;
    const bool cavity_beats_atom = p.kappa >= f * p.gamma;
    const bool purcell_dominant = p.g * p.g >= p.kappa * p.gamma;
    if (overdamped && cavity_beats_atom && purcell_dominant) return Regime::BadCavity;
    return Regime::Neither;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::StrongCoupling: return "strong-coupling";
        case Regime::BadCavity: return "bad-cavity";
        default: return "neither";
    }
}

}  // namespace cavityforge::dressed
