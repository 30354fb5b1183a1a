#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "ilw/fourier.hpp"
#include "ilw/krein.hpp"
#include "ilw/linop.hpp"
#include "ilw/wave.hpp"

using namespace ilw;

namespace {

std::vector<double> spectral_derivative(const fourier::Grid& g,
                                        const std::vector<double>& f) {
    const int N = g.N;
    std::vector<fourier::cplx> c(static_cast<size_t>(N / 2 + 1));
    fourier::fft_forward(N, f.data(), c.data());
    const double xi = 2.0 * std::numbers::pi / g.L;
    for (int m = 0; m <= N / 2; ++m) {
        c[static_cast<size_t>(m)] *= fourier::cplx(0.0, xi * m);
    }
    std::vector<double> out(static_cast<size_t>(N));
    fourier::fft_inverse(N, c.data(), out.data());
    return out;
}

} // namespace

TEST_CASE("solve_even round trip recovers a known even field") {
    const int N = 128;
    const auto p = wave::make_params(std::numbers::pi, 1.0, 0.85);
    const auto op = linop::build_operator(p, N);
    const fourier::Grid g(p.L, N);
    const auto phi = wave::profile_samples(p, g);

    Eigen::Map<const Eigen::VectorXd> pv(phi.data(), N);
    const Eigen::VectorXd rhs_v = op.entries * pv;
    const std::vector<double> rhs(rhs_v.data(), rhs_v.data() + N);

    const auto x = krein::solve_even(op, rhs);
    double scale = 0.0, err = 0.0;
    for (int j = 0; j < N; ++j) {
        scale = std::max(scale, std::abs(phi[static_cast<size_t>(j)]));
        err = std::max(err, std::abs(x[static_cast<size_t>(j)] - phi[static_cast<size_t>(j)]));
    }
    CHECK(err < 1e-10 * scale);
}

TEST_CASE("solve_even of the constant is orthogonal to the kernel") {
    const int N = 128;
    const auto p = wave::make_params(std::numbers::pi, 1.0, 0.5);
    const auto op = linop::build_operator(p, N);
    const std::vector<double> ones(static_cast<size_t>(N), 1.0);
    const auto h = krein::solve_even(op, ones);

    const fourier::Grid g(p.L, N);
    const auto dphi = spectral_derivative(g, wave::profile_samples(p, g));
    double dot = 0.0, nh = 0.0, nd = 0.0;
    for (int j = 0; j < N; ++j) {
        dot += h[static_cast<size_t>(j)] * dphi[static_cast<size_t>(j)];
        nh += h[static_cast<size_t>(j)] * h[static_cast<size_t>(j)];
        nd += dphi[static_cast<size_t>(j)] * dphi[static_cast<size_t>(j)];
    }
    CHECK(std::abs(dot) < 1e-12 * std::sqrt(nh * nd));
}

TEST_CASE("solve_even input validation") {
    const int N = 128;
    const auto p = wave::make_params(std::numbers::pi, 1.0, 0.5);
    const auto op = linop::build_operator(p, N);
    const fourier::Grid g(p.L, N);

    std::vector<double> odd(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        odd[static_cast<size_t>(j)] = std::sin(2.0 * std::numbers::pi * g.node(j) / g.L);
    }
    CHECK_THROWS_AS(krein::solve_even(op, odd), std::invalid_argument);

    std::vector<double> short_rhs(static_cast<size_t>(N - 2), 1.0);
    CHECK_THROWS_AS(krein::solve_even(op, short_rhs), std::invalid_argument);

    const linop::OperatorMatrix zero{g, p, Eigen::MatrixXd::Zero(N, N)};
    const std::vector<double> ones(static_cast<size_t>(N), 1.0);
    CHECK_THROWS_AS(krein::solve_even(zero, ones), std::runtime_error);
}

TEST_CASE("I is positive with agreeing routes") {
    const double L = std::numbers::pi;
    const auto p85 = wave::make_params(L, 1.0, 0.85);
    const auto i85 = krein::compute_I(p85, 256);
    CHECK(i85.direct > 0.0);
    CHECK(std::abs(i85.direct - i85.closed) / std::abs(i85.closed) < 1e-5);
    CHECK(i85.direct == doctest::Approx(0.62890729).epsilon(1e-6));

    const auto p5 = wave::make_params(L, 1.0, 0.5);
    const auto i5 = krein::compute_I(p5, 256);
    CHECK(i5.direct > 0.0);
    CHECK(std::abs(i5.direct - i5.closed) / std::abs(i5.closed) < 1e-4);
    CHECK(i5.direct == doctest::Approx(1.09821665).epsilon(1e-6));

    const auto p9 = wave::make_params(L, 1.0, 0.9);
    const auto i9 = krein::compute_I(p9, 256);
    CHECK(i9.direct > 0.0);
    CHECK(std::abs(i9.direct - i9.closed) / std::abs(i9.closed) < 1e-5);
    CHECK(i9.direct == doctest::Approx(0.37932108).epsilon(1e-6));
}

TEST_CASE("D matrix has negative determinant with agreeing routes") {
    const auto p = wave::make_params(std::numbers::pi, 1.0, 0.85);
    const auto d = krein::compute_D(p, 256);
    CHECK(d.det_direct < 0.0);
    CHECK(std::abs(d.det_direct - d.det_closed) / std::abs(d.det_closed) < 1e-4);
    CHECK(d.det_direct == doctest::Approx(-4.94317982).epsilon(1e-6));
    CHECK(d.identity_residual < 1e-9);

    // c > 0 and dN/dc > 0 force <L^{-1} phi, 1> < 0.
    CHECK(d.b_phi1 < 0.0);
    CHECK(d.b_phi1_closed < 0.0);
    CHECK(d.b_phi1 == doctest::Approx(d.b_phi1_closed).epsilon(1e-4));
    CHECK(d.b_phiphi == doctest::Approx(d.b_phiphi_closed).epsilon(1e-4));

    const auto d5 = krein::compute_D(wave::make_params(std::numbers::pi, 1.0, 0.5), 256);
    CHECK(d5.identity_residual < 1e-9);
    CHECK(d5.det_direct < 0.0);
    CHECK(d5.det_direct == doctest::Approx(-2.76297821).epsilon(1e-6));
}

TEST_CASE("verdict logic covers the index table") {
    Eigen::Matrix2d indefinite;
    indefinite << 1.0, 3.0, 3.0, 1.0;
    const auto stable = krein::krein_verdict(1, 1, 0.6, indefinite, 1.0);
    CHECK(stable.verdict == krein::Verdict::LinearlyStable);
    CHECK(stable.n_I == 0);
    CHECK(stable.n_D == 1);
    CHECK(stable.K_Ham == 0);

    const auto unstable = krein::krein_verdict(1, 1, 0.6, Eigen::Matrix2d::Identity(), 1.0);
    CHECK(unstable.verdict == krein::Verdict::LinearlyUnstable);
    CHECK(unstable.K_Ham == 1);

    const auto zero_I = krein::krein_verdict(1, 1, 0.0, indefinite, 1.0);
    CHECK(zero_I.verdict == krein::Verdict::Inconclusive);
    CHECK_FALSE(zero_I.reason.empty());

    const auto zero_c = krein::krein_verdict(1, 1, 0.6, indefinite, 0.0);
    CHECK(zero_c.verdict == krein::Verdict::Inconclusive);
    CHECK_FALSE(zero_c.closed_form_regime);

    Eigen::Matrix2d negdef;
    negdef << -1.0, 0.0, 0.0, -2.0;
    const auto negative = krein::krein_verdict(1, 1, 0.6, negdef, 1.0);
    CHECK(negative.n_D == 2);
    CHECK(negative.verdict == krein::Verdict::Inconclusive);
}

TEST_CASE("index pipeline is stable across the modulus range") {
    for (const double k : {0.3, 0.5, 0.7, 0.85, 0.9}) {
        CAPTURE(k);
        const auto p = wave::make_params(std::numbers::pi, 1.0, k);
        const auto rep = krein::krein_report(p, 256);
        CHECK(rep.n_L == 1);
        CHECK(rep.n_zero == 1);
        CHECK(rep.n_I == 0);
        CHECK(rep.n_D == 1);
        CHECK(rep.K_Ham == 0);
        CHECK(rep.closed_form_regime);
        CHECK(rep.verdict == krein::Verdict::LinearlyStable);
        CHECK(rep.reason.empty());
        CHECK(rep.I_direct > 0.0);
        CHECK(rep.D.det_direct < 0.0);
        CHECK(rep.p3.direct < 0.0);
    }
}

TEST_CASE("report is inconclusive where the speed vanishes") {
    const double L = std::numbers::pi;
    const double k0 = wave::speed_root_k0(L, 1.0);
    const auto p = wave::make_params(L, 1.0, k0);
    REQUIRE(std::abs(p.c) < 1e-8);
    const auto rep = krein::krein_report(p, 256);
    CHECK(rep.verdict == krein::Verdict::Inconclusive);
    CHECK_FALSE(rep.closed_form_regime);
    CHECK_FALSE(rep.reason.empty());
    CHECK(rep.I_direct > 0.0);
}

TEST_CASE("p3 pairing is negative with agreeing routes") {
    const auto p5 = wave::make_params(std::numbers::pi, 1.0, 0.5);
    const auto r5 = krein::p3_check(p5, 256);
    CHECK(r5.direct < 0.0);
    CHECK(r5.rel_gap < 1e-4);
    CHECK(r5.field_residual < 1e-6);
    CHECK(r5.direct == doctest::Approx(-1.3915477745798692).epsilon(1e-9));

    const auto p85 = wave::make_params(std::numbers::pi, 1.0, 0.85);
    const auto r85 = krein::p3_check(p85, 256);
    CHECK(r85.direct < 0.0);
    CHECK(r85.rel_gap < 1e-4);
    CHECK(r85.field_residual < 1e-6);
    CHECK(r85.direct == doctest::Approx(-2859.2328302882647).epsilon(1e-9));
}

TEST_CASE("conserved functional on the wave and on zero") {
    const int N = 256;
    const auto p = wave::make_params(std::numbers::pi, 1.0, 0.85);
    const fourier::Grid g(p.L, N);
    const auto phi = wave::profile_samples(p, g);
    const double dc = wave::dc_dk(p.L, p.delta, p.k);
    const double dA = wave::dN_dk(p.L, p.delta, p.k) / p.L;

    const double mk = krein::compute_Mk(phi, g, dc, dA);
    CHECK(mk == doctest::Approx(dc * p.norm_squared / 2.0).epsilon(1e-10));

    const std::vector<double> zero(static_cast<size_t>(N), 0.0);
    CHECK(krein::compute_Mk(zero, g, dc, dA) == 0.0);

    std::vector<double> bad(static_cast<size_t>(N - 1), 0.0);
    CHECK_THROWS_AS(krein::compute_Mk(bad, g, dc, dA), std::invalid_argument);
}
