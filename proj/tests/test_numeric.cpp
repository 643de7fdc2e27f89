#include <doctest.h>

#include <cmath>

#include "cavityforge/numeric.hpp"

using namespace cavityforge;
using namespace cavityforge::numeric;

TEST_CASE("finite-difference derivative is second order") {
    auto max_err = [&](std::size_t n) {
        const auto grid = make_grid(0.0, 1.0, n);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(5.0 * grid.t(i));
        const auto d = derivative(grid, f);
        double err = 0;
        for (std::size_t i = 0; i < n; ++i)
            err = std::max(err, std::abs(d[i] - 5.0 * std::cos(5.0 * grid.t(i))));
        return err;
    };
    const double e1 = max_err(201), e2 = max_err(401);
    CHECK(e1 / e2 > 3.0);  // ~4 for O(dt^2)
    CHECK(e2 < 1e-2);
}

TEST_CASE("cubic interpolation reproduces nodes and smooth functions") {
    const auto grid = make_grid(0.0, 1.0, 101);
    std::vector<double> f(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) f[i] = std::sin(7.0 * grid.t(i));
    CubicInterp<double> interp(grid, f);

    for (std::size_t i = 0; i < grid.n; i += 13) CHECK(interp(grid.t(i)) == f[i]);

    // fourth-order slopes in the interior, second-order at the two edges
    double interior = 0, edges = 0;
    for (int k = 0; k < 1000; ++k) {
        const double t = 1.0 * k / 999.0;
        const double err = std::abs(interp(t) - std::sin(7.0 * t));
        if (t > 0.05 && t < 0.95)
            interior = std::max(interior, err);
        else
            edges = std::max(edges, err);
    }
    CHECK(interior < 1e-6);
    CHECK(edges < 1e-4);

    CHECK(interp(-0.5) == 0.0);
    CHECK(interp(1.5) == 0.0);
}

TEST_CASE("adaptive integrator: exponential decay against the closed form") {
    const double lambda = 3.0e7;
    const auto grid = make_grid(0.0, 1e-6, 33);
    auto rhs = [&](double, const State<1>& y, State<1>& dy) { dy[0] = -lambda * y[0]; };
    const auto ys = integrate<1>(grid, State<1>{1.0}, rhs);
    for (std::size_t i = 0; i < grid.n; ++i)
        CHECK(std::abs(ys[i][0] - std::exp(-lambda * grid.t(i))) < 1e-9);
}

TEST_CASE("adaptive integrator: phase rotation preserves the norm") {
    const double w = 5.0e7;
    const auto grid = make_grid(0.0, 2e-6, 65);
    const cplx I(0, 1);
    auto rhs = [&](double, const State<1>& y, State<1>& dy) { dy[0] = I * w * y[0]; };
    const auto ys = integrate<1>(grid, State<1>{1.0}, rhs);
    const double T = grid.t_end();
    CHECK(std::abs(std::abs(ys.back()[0]) - 1.0) < 1e-7);
    CHECK(std::abs(ys.back()[0] - std::exp(I * w * T)) < 1e-6);
}

TEST_CASE("adaptive integrator: forced linear system against variation of constants") {
    // dy/dt = -a y + f(t), f = cos(w t): y = (a cos(wt) + w sin(wt) - a e^{-at})/(a^2+w^2)
    const double a = 2e7, w = 4e7;
    const auto grid = make_grid(0.0, 0.5e-6, 41);
    auto rhs = [&](double t, const State<1>& y, State<1>& dy) {
        dy[0] = -a * y[0] + std::cos(w * t);
    };
    const auto ys = integrate<1>(grid, State<1>{0.0}, rhs);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double t = grid.t(i);
        const double exact =
            (a * std::cos(w * t) + w * std::sin(w * t) - a * std::exp(-a * t)) / (a * a + w * w);
        CHECK(std::abs(ys[i][0] - exact) < 1e-12);
    }
}

TEST_CASE("hermitian eigenvalues: known spectra") {
    // real symmetric with eigenvalues {2, 2, 4}
    std::array<std::array<cplx, 3>, 3> m{{{2.0, 0.0, 0.0}, {0.0, 3.0, 1.0}, {0.0, 1.0, 3.0}}};
    const auto ev3 = hermitian_eigenvalues<3>(m);
    CHECK(ev3[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ev3[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ev3[2] == doctest::Approx(4.0).epsilon(1e-12));

    // complex Hermitian: [[1, i],[-i, 1]] has eigenvalues {0, 2}
    std::array<std::array<cplx, 4>, 4> h{};
    h[0][0] = 1.0;
    h[0][1] = cplx(0, 1);
    h[1][0] = cplx(0, -1);
    h[1][1] = 1.0;
    h[2][2] = 5.0;
    h[3][3] = -2.0;
    const auto ev4 = hermitian_eigenvalues<4>(h);
    CHECK(ev4[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(ev4[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(ev4[2] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ev4[3] == doctest::Approx(5.0).epsilon(1e-12));
}
