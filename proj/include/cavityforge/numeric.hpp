#pragma once
// Numerical toolbox: finite differences, C1 cubic interpolation on uniform
// grids, an embedded Dormand-Prince 5(4) integrator for small complex systems,
// and a cyclic-Jacobi eigensolver for small Hermitian matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cavityforge/qcore.hpp"

namespace cavityforge::numeric {

// First derivative of samples on a uniform grid; second-order central
// differences in the interior, second-order one-sided at the edges.
std::vector<double> derivative(const TimeGrid& grid, std::span<const double> f);

// ---------------------------------------------------------------------------
// Cubic Hermite interpolation on a uniform grid.  Slopes come from
// fourth-order central differences, so the interpolant is C1 and locally
// O(dt^4) accurate for smooth data.  Evaluates to zero outside the grid.

template <class T>
class CubicInterp {
  public:
    CubicInterp() = default;

    CubicInterp(TimeGrid grid, std::vector<T> values) : grid_(grid), v_(std::move(values)) {
        if (v_.size() != grid_.n || grid_.n < 4)
            throw InvalidParameterError("CubicInterp: need >= 4 samples matching the grid");
        slopes_.resize(grid_.n);
        const double inv = 1.0 / grid_.dt;
        const std::size_t n = grid_.n;
        slopes_[0] = (-3.0 * v_[0] + 4.0 * v_[1] - v_[2]) * (0.5 * inv);
        slopes_[1] = (v_[2] - v_[0]) * (0.5 * inv);
        for (std::size_t i = 2; i + 2 < n; ++i)
            slopes_[i] = (v_[i - 2] - 8.0 * v_[i - 1] + 8.0 * v_[i + 1] - v_[i + 2]) * (inv / 12.0);
        slopes_[n - 2] = (v_[n - 1] - v_[n - 3]) * (0.5 * inv);
        slopes_[n - 1] = (3.0 * v_[n - 1] - 4.0 * v_[n - 2] + v_[n - 3]) * (0.5 * inv);
    }

    T operator()(double t) const {
        const double x = (t - grid_.t_start) / grid_.dt;
        if (x <= 0.0) return (x < -1e-9) ? T{} : v_.front();
        const double last = static_cast<double>(grid_.n - 1);
        if (x >= last) return (x > last + 1e-9) ? T{} : v_.back();
        const auto i = static_cast<std::size_t>(x);
        const double s = x - static_cast<double>(i);
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        const double h10 = s3 - 2.0 * s2 + s;
        const double h01 = -2.0 * s3 + 3.0 * s2;
        const double h11 = s3 - s2;
        return h00 * v_[i] + h01 * v_[i + 1] +
               grid_.dt * (h10 * slopes_[i] + h11 * slopes_[i + 1]);
    }

    const TimeGrid& grid() const { return grid_; }

  private:
    TimeGrid grid_{};
    std::vector<T> v_;
    std::vector<T> slopes_;
};

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with PI-free step control.  The integrator lands
// exactly on every sample of the output grid, so no dense-output error enters
// the returned trajectory.

template <std::size_t N>
using State = std::array<cplx, N>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0: pick from the first grid interval
    std::size_t max_steps = 200'000'000;
};

namespace detail {

template <std::size_t N, class F>
State<N> lin(const State<N>& y, double h, F&& coeff, const std::array<State<N>, 7>& k,
             std::size_t m) {
    State<N> out = y;
    for (std::size_t j = 0; j < m; ++j) {
        const double a = coeff(j);
        if (a == 0.0) continue;
        for (std::size_t c = 0; c < N; ++c) out[c] += h * a * k[j][c];
    }
    return out;
}

}  // namespace detail

// rhs(t, y, dydt)
template <std::size_t N, class Rhs>
std::vector<State<N>> integrate(const TimeGrid& grid, State<N> y0, Rhs&& rhs,
                                OdeOptions opt = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr std::array<std::array<double, 6>, 6> a = {{
        {1.0 / 5, 0, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
        {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    }};
    // y5 - y4, per stage
    static constexpr std::array<double, 7> e = {
        71.0 / 57600, 0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

    std::vector<State<N>> out;
    out.reserve(grid.n);
    out.push_back(y0);

    std::array<State<N>, 7> k{};
    State<N> y = y0;
    double t = grid.t_start;
    rhs(t, y, k[0]);

    double h = opt.initial_step > 0.0 ? opt.initial_step : grid.dt;
    std::size_t steps = 0;

    for (std::size_t seg = 1; seg < grid.n; ++seg) {
        const double t_target = grid.t(seg);
        while (t < t_target) {
            if (++steps > opt.max_steps) throw Error("integrate: step limit exceeded");
            const bool clipped = (t + h >= t_target);
            const double hs = clipped ? (t_target - t) : h;

            for (std::size_t s = 1; s < 7; ++s) {
                const auto ys =
                    detail::lin<N>(y, hs, [&](std::size_t j) { return a[s - 1][j]; }, k, s);
                const double cs = (s == 1)   ? c2
                                  : (s == 2) ? c3
                                  : (s == 3) ? c4
                                  : (s == 4) ? c5
                                             : 1.0;
                rhs(t + cs * hs, ys, k[s]);
            }
            // 5th-order solution equals the argument of the last stage (FSAL)
            const auto y5 = detail::lin<N>(y, hs, [&](std::size_t j) { return a[5][j]; }, k, 6);

            double err = 0.0;
            for (std::size_t c = 0; c < N; ++c) {
                cplx de{};
                for (std::size_t j = 0; j < 7; ++j) de += e[j] * k[j][c];
                de *= hs;
                const double sk =
                    opt.atol + opt.rtol * std::max(std::abs(y[c]), std::abs(y5[c]));
                const double r = std::abs(de) / sk;
                err += r * r;
            }
            err = std::sqrt(err / static_cast<double>(N));

            if (err <= 1.0) {
                t = clipped ? t_target : t + hs;
                y = y5;
                k[0] = k[6];  // FSAL
                const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
                if (!clipped)
                    h = hs * std::max(0.2, grow);
                else
                    h = std::max(h, hs * std::max(0.2, grow));
            } else {
                h = hs * std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (!(h > 1e-9 * grid.dt)) throw Error("integrate: step size underflow");
            }
        }
        out.push_back(y);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Eigenvalues (ascending) of a small Hermitian matrix by cyclic Jacobi
// rotations.  Good to ~1e-14 relative for the 3x3/4x4 blocks used here.

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(std::array<std::array<cplx, N>, N> m) {
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += std::norm(m[p][q]);
        if (off < 1e-30) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx apq = m[p][q];
                if (std::abs(apq) < 1e-300) continue;
                const double app = m[p][p].real(), aqq = m[q][q].real();
                // diagonalize the 2x2 block [[app, apq],[conj(apq), aqq]]
                const double phase = std::arg(apq);
                const double r = std::abs(apq);
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * std::polar(1.0, phase);

                for (std::size_t i = 0; i < N; ++i) {
                    const cplx mip = m[i][p], miq = m[i][q];
                    m[i][p] = c * mip + std::conj(s) * miq;
                    m[i][q] = -s * mip + c * miq;
                }
                for (std::size_t i = 0; i < N; ++i) {
                    const cplx mpi = m[p][i], mqi = m[q][i];
                    m[p][i] = c * mpi + s * mqi;
                    m[q][i] = -std::conj(s) * mpi + c * mqi;
                }
            }
        }
    }
    std::array<double, N> ev{};
    for (std::size_t i = 0; i < N; ++i) ev[i] = m[i][i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace cavityforge::numeric
