#include "ilw/wave.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ilw/specfun.hpp"

namespace ilw::wave {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int series_cap = 4000;

void require_domain(double L, double delta, const char* who) {
    if (!(L > 0.0) || !std::isfinite(L) || !(delta > 0.0) || !std::isfinite(delta)) {
        throw std::domain_error(std::string(who) + ": L and delta must be positive and finite");
    }
}

double kprime_of(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

} // namespace

double admissibility_ratio(double L, double delta, double k) {
    require_domain(L, delta, "admissibility_ratio");
    if (!(k > 0.0) || !(k < 1.0)) {
        throw std::domain_error("admissibility_ratio: k must lie in (0, 1)");
    }
    return (2.0 * delta / L) * specfun::complete_K(k) / specfun::complete_K_comp(k);
}

double admissible_kmax(double L, double delta) {
    require_domain(L, delta, "admissible_kmax");
    double lo = 1e-9, hi = 1.0 - 1e-13;
    if (admissibility_ratio(L, delta, lo) >= 1.0) {
        throw std::runtime_error("admissible_kmax: no admissible window");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (admissibility_ratio(L, delta, mid) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double wave_speed(double L, double delta, double k) {
    require_domain(L, delta, "wave_speed");
    if (!(k > 1e-10)) {
        throw std::domain_error("wave_speed: k too small, profile degenerates to a constant");
    }
    const double kmax = admissible_kmax(L, delta);
    if (!(k < kmax - 1e-6)) {
        throw std::domain_error("wave_speed: k violates the admissibility margin");
    }
    const double K = specfun::complete_K(k);
    const double Kp = specfun::complete_K_comp(k);
    const double w = 4.0 * delta * K / L;
    const auto j = specfun::jacobi_sn_cn_dn_comp(w, k);
    const double Z = specfun::jacobi_zeta_comp(w, k);
    return 1.0 / delta - 8.0 * pi * delta * K / (L * L * Kp) - (4.0 * K / L) * Z -
           (4.0 * K / L) * j.cn * j.dn / j.sn;
}

double speed_root_k0(double L, double delta) {
    require_domain(L, delta, "speed_root_k0");
    const double kmax = admissible_kmax(L, delta);
    double lo = 1e-4, hi = kmax - 2e-6;
    const double flo = wave_speed(L, delta, lo);
    const double fhi = wave_speed(L, delta, hi);
    if (flo * fhi > 0.0) {
        throw std::runtime_error("speed_root_k0: speed does not change sign on the admissible range");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (wave_speed(L, delta, mid) * flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

WaveParams make_params(double L, double delta, double k) {
    require_domain(L, delta, "make_params");
    if (!std::isfinite(k) || !(k > 1e-10)) {
        throw std::domain_error("make_params: k too small, profile degenerates to a constant");
    }
    const double kmax = admissible_kmax(L, delta);
    if (!(k < kmax - 1e-6)) {
        throw std::domain_error("make_params: k violates the admissibility margin");
    }

    WaveParams p;
    p.L = L;
    p.delta = delta;
    p.k = k;
    p.kprime = kprime_of(k);
    p.K = specfun::complete_K(k);
    p.Kprime = specfun::complete_K_comp(k);
    p.v = (2.0 * delta / L) * p.K / p.Kprime;
    p.c = wave_speed(L, delta, k);

    const double w2 = 2.0 * delta * p.K / L;
    const auto j = specfun::jacobi_sn_cn_dn_comp(w2, k);
    p.m1 = (4.0 * p.K / L) * j.cn * j.sn * j.dn;
    p.m2 = j.sn * j.sn;
    p.m3 = -(4.0 * p.K / L) * specfun::jacobi_zeta_comp(w2, k) -
           (4.0 * delta * pi / (L * L)) * p.K / p.Kprime;
    p.m4 = 2.0 * p.K / L;

    p.nu = 2.0 * pi * delta / L;
    p.mu = pi * p.Kprime / p.K;

    p.norm_squared = norm_squared_series(p);
    p.A = p.norm_squared / L;
    p.a = 0.5 * (-p.c + std::sqrt(p.c * p.c + 4.0 * p.A));
    p.sigma = std::sqrt(p.c * p.c + 4.0 * p.A);
    return p;
}

double profile_elliptic(const WaveParams& p, double x) {
    const auto j = specfun::jacobi_sn_cn_dn(p.m4 * x, p.k);
    const double d2 = j.dn * j.dn;
    return p.m1 * d2 / (1.0 - p.m2 * d2) + p.m3;
}

std::vector<double> profile_samples(const WaveParams& p, const fourier::Grid& g) {
    std::vector<double> out(g.N);
    for (int j = 0; j < g.N; ++j) out[j] = profile_elliptic(p, g.node(j));
    return out;
}

double fourier_coeff(const WaveParams& p, int m) {
    if (m == 0) return 0.0;
    const double am = std::abs(m);
    // (2 pi / L) sinh(nu m) / sinh(mu m) evaluated in log space; nu < mu.
    return (2.0 * pi / p.L) * std::exp((p.nu - p.mu) * am) * (-std::expm1(-2.0 * p.nu * am)) /
           (-std::expm1(-2.0 * p.mu * am));
}

int fourier_mode_cutoff(const WaveParams& p) {
    const double lead = fourier_coeff(p, 1);
    for (int m = 2; m <= series_cap; ++m) {
        if (fourier_coeff(p, m) < 1e-16 * lead) return m;
    }
    return series_cap;
}

std::vector<double> profile_fourier_samples(const WaveParams& p, const fourier::Grid& g) {
    const int M = fourier_mode_cutoff(p);
    std::vector<double> out(g.N, 0.0);
    for (int j = 0; j < g.N; ++j) {
        const double x = g.node(j);
        double s = 0.0;
        for (int m = M; m >= 1; --m) {
            s += 2.0 * fourier_coeff(p, m) * std::cos(2.0 * pi * m * x / p.L);
        }
        out[j] = s;
    }
    return out;
}

double norm_squared_series(const WaveParams& p) {
    double s = 0.0;
    for (int m = 1; m <= series_cap; ++m) {
        const double f = fourier_coeff(p, m);
        const double t = f * f;
        s += t;
        if (t < 1e-18 * s) break;
    }
    return 2.0 * p.L * s;
}

double norm_squared_closed(const WaveParams& p) {
    const double k = p.k, k2 = k * k;
    const double a2 = -p.m2 * k2 / (1.0 - p.m2);
    const double psi = std::asin(std::sqrt(a2 / (a2 - k2)));
    const double lam = specfun::heuman_lambda(psi, k);
    const double root = std::sqrt(a2 * (1.0 - a2) * (a2 - k2));
    const double K = p.K;
    const double E = specfun::complete_E(k);
    const double P = k2 * K / (k2 - a2) - pi * a2 * lam / (2.0 * root);
    const double V2 =
        1.0 / (2.0 * (a2 - 1.0) * (k2 - a2)) *
        ((2.0 * k2 * k2 * a2 - 2.0 * k2 * k2 + a2 * a2 * (1.0 - k2)) * K / (k2 - a2) + a2 * E -
         pi * (2.0 * a2 * k2 + 2.0 * a2 - a2 * a2 - 3.0 * k2) * a2 * lam / (2.0 * root));
    return (2.0 * p.m1 * p.m1 / (p.m4 * (1.0 - p.m2) * (1.0 - p.m2))) * (1.0 / (a2 * a2)) *
               (k2 * k2 * K + 2.0 * k2 * (a2 - k2) * P + (a2 - k2) * (a2 - k2) * V2) +
           (2.0 * p.m1 * p.m3 / (p.m4 * (1.0 - p.m2))) * (pi * (k2 - a2) * lam / root) +
           p.L * p.m3 * p.m3;
}

double dN_dk(double L, double delta, double k) {
    const WaveParams p = make_params(L, delta, k);
    const double E = specfun::complete_E(k);
    const double Ep = specfun::complete_E(p.kprime);
    // derivative of K'/K with respect to k
    const double dd =
        ((E - p.K) * p.Kprime + p.K * Ep) / (k * (k * k - 1.0) * p.K * p.K);
    double s = 0.0;
    for (int m = 1; m <= series_cap; ++m) {
        const double e2nu = -std::expm1(-2.0 * p.nu * m);
        const double e2mu = -std::expm1(-2.0 * p.mu * m);
        const double t = m * std::exp((2.0 * p.nu - 2.0 * p.mu) * m) * e2nu * e2nu *
                         (2.0 - e2mu) / (e2mu * e2mu * e2mu);
        s += t;
        if (t < 1e-18 * s) break;
    }
    return -(16.0 * pi * pi * pi / L) * s * dd;
}

double dc_dk(double L, double delta, double k) {
    require_domain(L, delta, "dc_dk");
    const double kmax = admissible_kmax(L, delta);
    if (!(k > 1e-4) || !(k + 1e-4 < kmax - 1e-6)) {
        throw std::domain_error("dc_dk: k too close to the admissible endpoints");
    }
    const double h = 1e-5;
    const double d1 = (wave_speed(L, delta, k + h) - wave_speed(L, delta, k - h)) / (2.0 * h);
    const double d2 =
        (wave_speed(L, delta, k + 0.5 * h) - wave_speed(L, delta, k - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

double residual_travkdv(const WaveParams& p, const fourier::Grid& g) {
    const fourier::SpectralField phi(g, profile_samples(p, g));
    const fourier::SpectralField Mphi = fourier::apply_multiplier(phi, p.delta);
    double worst = 0.0;
    for (int j = 0; j < g.N; ++j) {
        const double ph = phi.samples()[j];
        const double r = -p.c * ph + ph * ph - Mphi.samples()[j] - p.A;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

WaveProfile make_profile(const WaveParams& p, const fourier::Grid& g) {
    fourier::SpectralField field(g, profile_samples(p, g));
    std::vector<double> analytic(g.N / 2 + 1);
    for (int m = 0; m <= g.N / 2; ++m) analytic[m] = fourier_coeff(p, m);
    return WaveProfile{p, std::move(field), std::move(analytic)};
}

} // namespace ilw::wave
