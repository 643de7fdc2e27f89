#include "cavityforge/dynamics.hpp"

#include <cmath>

#include "cavityforge/dressed.hpp"

namespace cavityforge::dynamics {

using numeric::CubicInterp;
using numeric::State;

PulseFn pulse_function(const PulseEnvelope& pulse) {
    CubicInterp<double> interp(pulse.grid, pulse.omega);
    return [interp = std::move(interp)](double t) { return interp(t); };
}

void check_grid(const TimeGrid& grid, double max_rate) {
    if (grid.n < 2 || !(grid.dt > 0.0))
        throw InvalidParameterError("integrate: empty or degenerate time grid");
    if (grid.dt * max_rate > 0.1) {
        const auto suggested =
            static_cast<std::size_t>(std::ceil(grid.span() * max_rate / 0.1)) + 1;
        throw StepSizeError("integrate: output grid too coarse for the requested rates "
                            "(dt*max_rate > 0.1); use at least " +
                            std::to_string(suggested) + " samples over this span");
    }
}

namespace {

EmissionResult package(const SystemParams& p, const TimeGrid& grid, std::vector<cplx> ce,
                       std::vector<cplx> cx, std::vector<cplx> cg) {
    EmissionResult r;
    r.traj.grid = grid;
    r.traj.c_e = std::move(ce);
    r.traj.c_x = std::move(cx);
    r.traj.c_g = std::move(cg);
    r.traj.phi_out.resize(grid.n);
    const double root_2k = std::sqrt(2.0 * p.kappa);
    for (std::size_t i = 0; i < grid.n; ++i) r.traj.phi_out[i] = root_2k * r.traj.c_g[i];

    r.rate.resize(grid.n);
    std::vector<double> spont(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        r.rate[i] = 2.0 * p.kappa * std::norm(r.traj.c_g[i]);
        spont[i] = 2.0 * p.gamma * std::norm(r.traj.c_x[i]);
    }
    r.p_emit = trapezoid(grid, r.rate);
    r.p_spont = trapezoid(grid, spont);
    return r;
}

}  // namespace

EmissionResult integrate_two_level(const SystemParams& p, const TimeGrid& grid) {
    check_grid(grid, std::max({p.g, p.kappa, p.gamma, std::abs(p.delta_cav)}));
    const cplx I(0.0, 1.0);
    auto rhs = [&](double, const State<2>& y, State<2>& dy) {
        dy[0] = -p.gamma * y[0] - I * p.g * y[1];
        dy[1] = -(p.kappa + I * p.delta_cav) * y[1] - I * p.g * y[0];
    };
    numeric::OdeOptions opt;
    opt.initial_step = 0.01 / std::max({p.g, p.kappa, p.gamma, 1.0});
    const auto ys = numeric::integrate<2>(grid, State<2>{1.0, 0.0}, rhs, opt);

    std::vector<cplx> ce(grid.n, cplx(0.0)), cx(grid.n), cg(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        cx[i] = ys[i][0];
        cg[i] = ys[i][1];
    }
    return package(p, grid, std::move(ce), std::move(cx), std::move(cg));
}

EmissionResult integrate_lambda(const SystemParams& p, const PulseFn& pulse, const TimeGrid& grid,
                                std::array<cplx, 3> initial) {
    double omega_max = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        omega_max = std::max(omega_max, std::abs(pulse(grid.t(i))));
    check_grid(grid, std::max({p.g, p.kappa, p.gamma, omega_max, std::abs(p.delta_cav),
                               std::abs(p.delta_pump)}));

    const cplx I(0.0, 1.0);
    auto rhs = [&](double t, const State<3>& y, State<3>& dy) {
        const double om = pulse(t);
        dy[0] = -I * p.delta_pump * y[0] - 0.5 * I * om * y[1];
        dy[1] = -0.5 * I * om * y[0] - p.gamma * y[1] - I * p.g * y[2];
        dy[2] = -(p.kappa + I * p.delta_cav) * y[2] - I * p.g * y[1];
    };
    numeric::OdeOptions opt;
    opt.initial_step = 0.01 / std::max({p.g, p.kappa, p.gamma, omega_max, 1.0});
    const auto ys =
        numeric::integrate<3>(grid, State<3>{initial[0], initial[1], initial[2]}, rhs, opt);

    std::vector<cplx> ce(grid.n), cx(grid.n), cg(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        ce[i] = ys[i][0];
        cx[i] = ys[i][1];
        cg[i] = ys[i][2];
    }
    return package(p, grid, std::move(ce), std::move(cx), std::move(cg));
}

EmissionResult integrate_lambda(const SystemParams& p, const PulseEnvelope& pulse,
                                std::array<cplx, 3> initial) {
    return integrate_lambda(p, pulse_function(pulse), pulse.grid, initial);
}

double emission_probability(const AmplitudeTrajectory& traj, const SystemParams& p) {
    std::vector<double> rate(traj.grid.n);
    for (std::size_t i = 0; i < traj.grid.n; ++i)
        rate[i] = 2.0 * p.kappa * std::norm(traj.c_g[i]);
    return trapezoid(traj.grid, rate);
}

AdiabaticSolution adiabatic_bad_cavity(const SystemParams& p, const PulseEnvelope& pulse) {
    const TimeGrid& grid = pulse.grid;
    const double alpha = 2.0 / (2.0 * p.gamma + 2.0 * p.g * p.g / p.kappa);

    std::vector<double> om_sq(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) om_sq[i] = pulse.omega[i] * pulse.omega[i];
    const auto cum = cumulative_trapezoid(grid, om_sq);

    AdiabaticSolution sol;
    sol.traj.grid = grid;
    sol.traj.c_e.resize(grid.n);
    sol.traj.c_x.resize(grid.n);
    sol.traj.c_g.resize(grid.n);
    sol.traj.phi_out.resize(grid.n);
    sol.rate.resize(grid.n);

    const cplx I(0.0, 1.0);
    const double root_2k = std::sqrt(2.0 * p.kappa);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double ce = std::exp(-0.25 * alpha * cum[i]);
        const cplx cx = -0.5 * I * alpha * pulse.omega[i] * ce;
        const cplx cg = -(I / p.kappa) * p.g * cx;
        sol.traj.c_e[i] = ce;
        sol.traj.c_x[i] = cx;
        sol.traj.c_g[i] = cg;
        sol.traj.phi_out[i] = root_2k * cg;
        sol.rate[i] = 2.0 * p.kappa * std::norm(cg);
    }

    sol.pump_area = 0.5 * alpha * cum.back();
    sol.p_emit_limit = p.g * p.g * alpha / p.kappa;
    sol.p_emit = sol.p_emit_limit * (1.0 - std::exp(-sol.pump_area));
    sol.bad_cavity_ordering = dressed::classify_regime(p) == dressed::Regime::BadCavity;
    return sol;
}

}  // namespace cavityforge::dynamics
