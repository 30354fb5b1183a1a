#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ilw/fourier.hpp"
#include "test_util.hpp"

using namespace ilw::fourier;
constexpr double pi = std::numbers::pi;

namespace {

// Direct quadratic-cost DFT used as the transform oracle.
std::vector<cplx> direct_dft(const std::vector<double>& v, double L) {
    const int N = static_cast<int>(v.size());
    std::vector<cplx> out(N / 2 + 1);
    for (int m = 0; m <= N / 2; ++m) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < N; ++j) {
            const double phase = -2.0 * pi * m * j / N;
            acc += v[j] * cplx(std::cos(phase), std::sin(phase));
        }
        out[m] = acc / static_cast<double>(N);
    }
    (void)L;
    return out;
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1.0, 2), std::invalid_argument);
    const Grid g(2.0, 8);
    CHECK(g.dx() == doctest::Approx(0.25));
    CHECK(g.node(3) == doctest::Approx(0.75));
}

TEST_CASE("transform matches direct DFT oracle") {
    const Grid g(2.5, 32);
    const auto v = testutil::random_vector(32, 1234u);
    const SpectralField f(g, v);
    const auto oracle = direct_dft(v, g.L);
    for (int m = 0; m <= 16; ++m) {
        CHECK(std::abs(f.coeffs()[m] - oracle[m]) < 1e-13);
    }
}

TEST_CASE("round trip inverse(transform) is identity") {
    const Grid g(pi, 128);
    const auto v = testutil::random_vector(128, 77u);
    const SpectralField f(g, v);
    const SpectralField back = SpectralField::from_coeffs(g, f.coeffs());
    double maxdiff = 0.0;
    for (int j = 0; j < 128; ++j) maxdiff = std::max(maxdiff, std::abs(back.samples()[j] - v[j]));
    CHECK(maxdiff < 1e-12);
}

TEST_CASE("single mode transforms exactly") {
    const Grid g(2.0 * pi, 64);
    std::vector<double> v(64);
    for (int j = 0; j < 64; ++j) v[j] = 3.0 * std::cos(2.0 * pi * 5.0 * g.node(j) / g.L);
    const SpectralField f(g, v);
    for (int m = 0; m <= 32; ++m) {
        const double expect = (m == 5) ? 1.5 : 0.0;
        CHECK(std::abs(f.coeffs()[m] - cplx(expect, 0.0)) < 1e-13);
    }
    CHECK(std::abs(f.coeff(-5) - cplx(1.5, 0.0)) < 1e-13);
}

TEST_CASE("parseval identity") {
    const Grid g(1.7, 64);
    const auto v = testutil::random_vector(64, 4321u);
    const SpectralField f(g, v);
    double phys = 0.0;
    for (double x : v) phys += x * x;
    phys /= 64.0;  // (1/L) * integral = (1/N) * sum
    double spec = std::norm(f.coeffs()[0]) + std::norm(f.coeffs()[32]);
    for (int m = 1; m < 32; ++m) spec += 2.0 * std::norm(f.coeffs()[m]);
    CHECK(std::abs(phys - spec) < 1e-13);
}

TEST_CASE("symbol value and basic properties") {
    // 2 coth(2) - 1 at n = 1, L = pi, delta = 1.
    CHECK(std::abs(symbol_ilw(1, pi, 1.0) - 1.0746294414550960) < 1e-14);
    CHECK(symbol_ilw(0, pi, 1.0) == 0.0);
    CHECK(symbol_ilw(-3, pi, 1.0) == symbol_ilw(3, pi, 1.0));
    for (int n = 1; n < 12; ++n) {
        CHECK(symbol_ilw(n, pi, 1.0) > 0.0);
        CHECK(symbol_ilw(n + 1, pi, 1.0) > symbol_ilw(n, pi, 1.0));
    }
    CHECK_THROWS_AS(symbol_ilw(1, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(symbol_ilw(1, 1.0, 0.0), std::domain_error);
}

TEST_CASE("symbol deep-layer limit") {
    const double L = pi, delta = 50.0;
    for (int n = 1; n <= 8; ++n) {
        const double bo = 2.0 * pi * n / L - 1.0 / delta;
        CHECK(std::abs(symbol_ilw(n, L, delta) - bo) < 1e-10);
    }
}

TEST_CASE("multiplier annihilates constants and ignores shifts") {
    const Grid g(pi, 64);
    std::vector<double> ones(64, 2.5);
    const SpectralField c(g, ones);
    const SpectralField mc = apply_multiplier(c, 1.0);
    for (double s : mc.samples()) CHECK(std::abs(s) < 1e-14);

    auto v = testutil::random_vector(64, 99u);
    const SpectralField f(g, v);
    for (auto& x : v) x += 0.773;
    const SpectralField fs(g, v);
    const auto a = apply_multiplier(f, 1.0).samples();
    const auto b = apply_multiplier(fs, 1.0).samples();
    for (int j = 0; j < 64; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-12);
}

TEST_CASE("multiplier agrees with direct symbol application") {
    const Grid g(2.2, 48);
    const auto v = testutil::random_vector(48, 7u);
    const SpectralField f(g, v);
    const SpectralField mf = apply_multiplier(f, 0.8);
    const auto oracle = direct_dft(v, g.L);
    for (int m = 0; m <= 24; ++m) {
        CHECK(std::abs(mf.coeffs()[m] - oracle[m] * symbol_ilw(m, g.L, 0.8)) < 1e-12);
    }
}

TEST_CASE("weighted norm on constants and a single cosine") {
    const Grid g(pi, 64);
    const SpectralField one(g, std::vector<double>(64, 1.0));
    CHECK(std::abs(wnorm(one, 1.0) - 1.0) < 1e-14);

    std::vector<double> v(64);
    for (int j = 0; j < 64; ++j) v[j] = std::cos(2.0 * pi * g.node(j) / g.L);
    const SpectralField f(g, v);
    const double th1 = symbol_ilw(1, g.L, 1.0);
    CHECK(std::abs(wnorm(f, 1.0) - std::sqrt(0.5 * (1.0 + th1))) < 1e-13);
}

TEST_CASE("dealiased product is exact for low modes") {
    const Grid g(pi, 64);
    std::vector<double> v(64);
    for (int j = 0; j < 64; ++j) v[j] = std::cos(2.0 * pi * g.node(j) / g.L);
    const SpectralField f(g, v);
    const SpectralField p = pointwise_product_dealiased(f, f);
    for (int j = 0; j < 64; ++j) {
        const double expect = 0.5 + 0.5 * std::cos(2.0 * pi * 2.0 * g.node(j) / g.L);
        CHECK(std::abs(p.samples()[j] - expect) < 1e-14);
    }
}

TEST_CASE("dealiased product removes aliased content") {
    // Mode 21 squared creates mode 42, which wraps to 22 on a 64-point grid;
    // the projection must discard it and keep only the constant part.
    const Grid g(pi, 64);
    std::vector<double> v(64);
    for (int j = 0; j < 64; ++j) v[j] = std::cos(2.0 * pi * 21.0 * g.node(j) / g.L);
    const SpectralField f(g, v);
    const SpectralField p = pointwise_product_dealiased(f, f);
    for (int j = 0; j < 64; ++j) CHECK(std::abs(p.samples()[j] - 0.5) < 1e-13);
}

TEST_CASE("product requires matching grids") {
    const Grid a(pi, 64), b(pi, 32);
    const SpectralField fa(a, std::vector<double>(64, 1.0));
    const SpectralField fb(b, std::vector<double>(32, 1.0));
    CHECK_THROWS_AS(pointwise_product_dealiased(fa, fb), std::invalid_argument);
}

TEST_CASE("non-finite samples are rejected") {
    const Grid g(pi, 8);
    std::vector<double> v(8, 0.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(SpectralField(g, v), std::invalid_argument);
}
