#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ilw/evolve.hpp"
#include "ilw/fourier.hpp"
#include "ilw/wave.hpp"

using namespace ilw;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> spectral_derivative(const fourier::Grid& g,
                                        const std::vector<double>& f) {
    const int N = g.N;
    std::vector<fourier::cplx> c(static_cast<size_t>(N / 2 + 1));
    fourier::fft_forward(N, f.data(), c.data());
    const double xi = 2.0 * pi / g.L;
    for (int m = 0; m <= N / 2; ++m) {
        c[static_cast<size_t>(m)] *= fourier::cplx(0.0, xi * m);
    }
    std::vector<double> out(static_cast<size_t>(N));
    fourier::fft_inverse(N, c.data(), out.data());
    return out;
}

std::vector<double> cosine_samples(const fourier::Grid& g, int mode, double amp) {
    std::vector<double> u(static_cast<size_t>(g.N));
    for (int j = 0; j < g.N; ++j) {
        u[static_cast<size_t>(j)] = amp * std::cos(2.0 * pi * mode * g.node(j) / g.L);
    }
    return u;
}

fourier::SpectralField shifted_field(const wave::WaveProfile& wp, double shift) {
    const int N = wp.field.grid().N;
    const double xi = 2.0 * pi / wp.field.grid().L;
    std::vector<fourier::cplx> c = wp.field.coeffs();
    for (int m = 0; m <= N / 2; ++m) {
        c[static_cast<size_t>(m)] *= std::polar(1.0, xi * m * shift);
    }
    return fourier::SpectralField::from_coeffs(wp.field.grid(), std::move(c));
}

} // namespace

TEST_CASE("rhs vanishes on constants and on the zero field") {
    const fourier::Grid g(pi, 128);
    const auto zero = evolve::rhs(fourier::SpectralField(g, std::vector<double>(128, 0.0)), 1.0);
    const auto flat = evolve::rhs(fourier::SpectralField(g, std::vector<double>(128, 0.7)), 1.0);
    for (double s : zero.samples()) CHECK(std::abs(s) < 1e-15);
    for (double s : flat.samples()) CHECK(std::abs(s) < 1e-13);
}

TEST_CASE("rhs on a traveling profile equals minus speed times its derivative") {
    const int N = 256;
    for (double k : {0.5, 0.85}) {
        CAPTURE(k);
        const auto p = wave::make_params(pi, 1.0, k);
        const fourier::Grid g(p.L, N);
        const auto wp = wave::make_profile(p, g);
        const auto f = evolve::rhs(wp.field, p.delta);
        const auto dphi = spectral_derivative(g, wp.field.samples());
        double err = 0.0;
        for (int j = 0; j < N; ++j) {
            err = std::max(err, std::abs(f.samples()[static_cast<size_t>(j)] +
                                         p.c * dphi[static_cast<size_t>(j)]));
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("rhs of a small single mode reduces to the dispersive part") {
    const int N = 256;
    const double L = pi, delta = 1.0, eps = 1e-7;
    const fourier::Grid g(L, N);
    const int mode = 3;
    const auto u = fourier::SpectralField(g, cosine_samples(g, mode, eps));
    const auto f = evolve::rhs(u, delta);
    const double xi = 2.0 * pi / L;
    const fourier::cplx expect =
        fourier::cplx(0.0, xi * mode * fourier::symbol_ilw(mode, L, delta)) * u.coeff(mode);
    CHECK(std::abs(f.coeff(mode) - expect) < 1e-12 * std::abs(expect) + 1e-18);
    // quadratic correction shows up only at mode 2*mode and at order eps^2
    CHECK(std::abs(f.coeff(2 * mode)) < 10.0 * eps * eps);
}

TEST_CASE("zero initial data stays identically zero") {
    const fourier::Grid g(pi, 128);
    evolve::SimConfig cfg;
    cfg.dt = 1e-2;
    evolve::Simulation sim(g, cfg, std::vector<double>(128, 0.0));
    sim.run_until(0.1);
    for (double s : sim.samples()) CHECK(s == 0.0);
    CHECK(sim.t() == doctest::Approx(0.1));
}

TEST_CASE("linear evolution advances a single mode by the exact phase") {
    const int N = 256;
    const double L = pi, delta = 1.0;
    const fourier::Grid g(L, N);
    evolve::SimConfig cfg;
    cfg.delta = delta;
    cfg.dt = 1e-3;
    cfg.nonlinear = false;
    const int mode = 5;
    evolve::Simulation sim(g, cfg, cosine_samples(g, mode, 1.0));
    const fourier::cplx c0 = sim.field().coeff(mode);
    sim.run_until(0.01);
    const fourier::cplx c1 = sim.field().coeff(mode);
    const double xi = 2.0 * pi / L;
    const fourier::cplx expect =
        c0 * std::polar(1.0, xi * mode * fourier::symbol_ilw(mode, L, delta) * sim.t());
    CHECK(std::abs(c1 - expect) < 1e-12);
    CHECK(std::abs(std::abs(c1) - std::abs(c0)) < 1e-14);
}

TEST_CASE("traveling wave is propagated to T = 0.5 within 1e-6") {
    const auto p = wave::make_params(pi, 1.0, 0.85);
    const int N = 256;
    const fourier::Grid g(p.L, N);
    evolve::SimConfig cfg;
    cfg.delta = p.delta;
    cfg.dt = 1e-3;
    evolve::Simulation sim(g, cfg, wave::profile_samples(p, g));
    sim.run_until(0.5);
    CHECK(sim.last_substeps() == 6);
    double err = 0.0;
    for (int j = 0; j < N; ++j) {
        const double exact = wave::profile_elliptic(p, g.node(j) - p.c * sim.t());
        err = std::max(err, std::abs(sim.samples()[static_cast<size_t>(j)] - exact));
    }
    CHECK(err < 1e-6);
}

TEST_CASE("step error decays at fourth order in dt") {
    const auto p = wave::make_params(pi, 1.0, 0.85);
    const int N = 256;
    const fourier::Grid g(p.L, N);
    const double T = 0.08;
    const auto err_at = [&](double dt) {
        evolve::SimConfig cfg;
        cfg.delta = p.delta;
        cfg.dt = dt;
        evolve::Simulation sim(g, cfg, wave::profile_samples(p, g));
        sim.run_until(T);
        REQUIRE(sim.last_substeps() == 1);
        double err = 0.0;
        for (int j = 0; j < N; ++j) {
            const double exact = wave::profile_elliptic(p, g.node(j) - p.c * sim.t());
            err = std::max(err, std::abs(sim.samples()[static_cast<size_t>(j)] - exact));
        }
        return err;
    };
    const double coarse = err_at(1.6e-4);
    const double fine = err_at(8e-5);
    CHECK(coarse > 1e-11);
    const double ratio = coarse / fine;
    CHECK(ratio > 13.0);
    CHECK(ratio < 19.0);
}

TEST_CASE("conserved functionals take their known values on a profile") {
    const fourier::Grid gz(pi, 128);
    const auto qz = evolve::conserved(fourier::SpectralField(gz, std::vector<double>(128, 0.0)), 1.0);
    CHECK(qz.E_minus1 == 0.0);
    CHECK(qz.E_0 == 0.0);
    CHECK(qz.E_1 == 0.0);

    const auto p = wave::make_params(pi, 1.0, 0.85);
    const fourier::Grid g(p.L, 256);
    const auto wp = wave::make_profile(p, g);
    const auto q = evolve::conserved(wp.field, p.delta);
    CHECK(std::abs(q.E_minus1) < 1e-14);
    CHECK(q.E_0 == doctest::Approx(0.5 * p.norm_squared).epsilon(1e-10));
}

TEST_CASE("unperturbed wave conserves the invariants over a long run") {
    const auto p = wave::make_params(pi, 1.0, 0.5);
    const fourier::Grid g(p.L, 256);
    const auto wp = wave::make_profile(p, g);
    evolve::SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 50.0;
    cfg.record_every = 5000;
    const auto rep = evolve::stability_experiment(wp, std::vector<double>(256, 0.0), cfg);
    CHECK(rep.perturbation_wnorm == 0.0);
    CHECK(rep.Em1_drift < 1e-12);
    CHECK(rep.E0_drift < 1e-8);
    CHECK(rep.E1_drift < 1e-8);
    CHECK(rep.Mk_drift < 1e-8);
    CHECK(rep.sup_rho < 1e-6);
    CHECK(rep.records.size() == 11);
    CHECK(rep.records.back().t == doctest::Approx(50.0));
}

TEST_CASE("perturbed wave stays close in the weighted norm") {
    const auto p = wave::make_params(pi, 1.0, 0.85);
    const fourier::Grid g(p.L, 256);
    const auto wp = wave::make_profile(p, g);
    const double eps = 1e-3;
    const auto pert = cosine_samples(g, 2, eps);
    evolve::SimConfig cfg;
    cfg.dt = 2.5e-5;
    cfg.t_end = 2.0;
    cfg.record_every = 8000;
    const auto rep = evolve::stability_experiment(wp, pert, cfg);
    const double wn = fourier::wnorm(fourier::SpectralField(g, pert), p.delta);
    CHECK(rep.perturbation_wnorm == doctest::Approx(wn).epsilon(1e-12));
    CHECK(rep.records.front().rho > 0.0);
    CHECK(rep.records.front().rho <= wn * (1.0 + 1e-10));
    CHECK(rep.sup_rho > 0.0);
    CHECK(rep.sup_rho <= 10.0 * eps);
    CHECK(rep.Em1_drift < 1e-12);
    CHECK(rep.E0_drift < 1e-8);
    CHECK(rep.E1_drift < 1e-8);
    CHECK(rep.Mk_drift < 1e-8);
}

TEST_CASE("orbit distance recovers a pure translation") {
    const auto p = wave::make_params(pi, 1.0, 0.85);
    const fourier::Grid g(p.L, 256);
    const auto wp = wave::make_profile(p, g);
    const double shift = 0.37;
    const auto u = shifted_field(wp, shift);
    const auto od = evolve::orbit_distance(u, wp);
    CHECK(od.rho < 1e-10);
    CHECK(std::abs(od.r_star - (p.L - shift)) < 1e-8);

    const auto same = evolve::orbit_distance(wp.field, wp);
    CHECK(same.rho < 1e-10);
}

TEST_CASE("orbit distance of a perturbed wave is small and shift invariant") {
    const auto p = wave::make_params(pi, 1.0, 0.85);
    const fourier::Grid g(p.L, 256);
    const auto wp = wave::make_profile(p, g);
    const double eps = 1e-3;
    std::vector<double> u = wp.field.samples();
    const auto pert = cosine_samples(g, 2, eps);
    for (int j = 0; j < g.N; ++j) u[static_cast<size_t>(j)] += pert[static_cast<size_t>(j)];
    const auto f = fourier::SpectralField(g, u);
    const auto od = evolve::orbit_distance(f, wp);
    CHECK(od.rho > 0.0);
    const double wn = fourier::wnorm(fourier::SpectralField(g, pert), p.delta);
    CHECK(od.rho <= wn * (1.0 + 1e-10));

    // translating the input rotates r_star but leaves the distance unchanged
    const int N = g.N;
    const double xi = 2.0 * pi / g.L;
    std::vector<fourier::cplx> c = f.coeffs();
    for (int m = 0; m <= N / 2; ++m) {
        c[static_cast<size_t>(m)] *= std::polar(1.0, xi * m * 1.234);
    }
    const auto ft = fourier::SpectralField::from_coeffs(g, std::move(c));
    const auto od2 = evolve::orbit_distance(ft, wp);
    CHECK(od2.rho == doctest::Approx(od.rho).epsilon(1e-10));
}

TEST_CASE("orbit distance rejects mismatched grids") {
    const auto p = wave::make_params(pi, 1.0, 0.5);
    const fourier::Grid g(p.L, 256);
    const auto wp = wave::make_profile(p, g);
    const fourier::Grid g2(p.L, 128);
    const fourier::SpectralField u(g2, std::vector<double>(128, 0.0));
    CHECK_THROWS_AS(evolve::orbit_distance(u, wp), std::invalid_argument);
}

TEST_CASE("oversized data trips the blow-up guard") {
    const fourier::Grid g(pi, 128);
    evolve::SimConfig cfg;
    cfg.dt = 0.05;
    cfg.enforce_cfl = false;
    cfg.blowup_threshold = 1e4;
    evolve::Simulation sim(g, cfg, cosine_samples(g, 1, 50.0));
    bool blew = false;
    try {
        sim.run_until(50.0);
    } catch (const evolve::BlowupError& e) {
        blew = true;
        CHECK(e.t_blowup >= 0.0);
        CHECK(e.last_samples.size() == 128);
        for (double s : e.last_samples) CHECK(std::isfinite(s));
    }
    CHECK(blew);
}

TEST_CASE("configuration is validated") {
    const fourier::Grid g(pi, 128);
    const std::vector<double> u0(128, 0.0);
    const auto with = [&](auto f) {
        evolve::SimConfig cfg;
        f(cfg);
        return cfg;
    };
    CHECK_THROWS_AS(evolve::Simulation(g, with([](auto& c) { c.dt = 0.0; }), u0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve::Simulation(g, with([](auto& c) { c.delta = -1.0; }), u0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve::Simulation(g, with([](auto& c) { c.cfl_safety = 0.0; }), u0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve::Simulation(g, with([](auto& c) { c.cfl_safety = 1.5; }), u0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve::Simulation(g, with([](auto& c) { c.record_every = 0; }), u0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve::Simulation(g, with([](auto& c) { c.blowup_threshold = 0.0; }), u0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve::Simulation(g, with([](auto& c) { c.t_end = -1.0; }), u0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve::Simulation(g, evolve::SimConfig{}, std::vector<double>(64, 0.0)),
                    std::invalid_argument);

    const auto p = wave::make_params(pi, 1.0, 0.5);
    const auto wp = wave::make_profile(p, fourier::Grid(p.L, 128));
    CHECK_THROWS_AS(
        evolve::stability_experiment(wp, std::vector<double>(64, 0.0), evolve::SimConfig{}),
        std::invalid_argument);
}
