#include "ilw/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ilw::specfun {

namespace {

constexpr double pi = std::numbers::pi;

void require_modulus(double k, const char* who) {
    if (!(k >= 0.0) || !(k < 1.0)) {
        throw std::domain_error(std::string(who) + ": modulus must satisfy 0 <= k < 1");
    }
}

void require_amplitude(double psi, const char* who) {
    if (!(psi >= 0.0) || !(psi <= pi / 2 + 1e-12)) {
        throw std::domain_error(std::string(who) + ": amplitude must lie in [0, pi/2]");
    }
}

} // namespace

EllipticModulus::EllipticModulus(double k_) : k(k_), kprime(0.0) {
    if (!(k_ > 0.0) || !(k_ < 1.0)) {
        throw std::domain_error("EllipticModulus: k must lie in (0, 1)");
    }
    kprime = std::sqrt((1.0 - k_) * (1.0 + k_));
}

double carlson_rf(double x, double y, double z) {
    if (std::min({x, y, z}) < 0.0 || x + y <= 0.0 || y + z <= 0.0 || x + z <= 0.0) {
        throw std::domain_error("carlson_rf: arguments must be nonnegative, at most one zero");
    }
    constexpr double errtol = 0.0025;
    constexpr double c1 = 1.0 / 24.0, c2 = 0.1, c3 = 3.0 / 44.0, c4 = 1.0 / 14.0;
    double xt = x, yt = y, zt = z;
    double ave = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        const double lam = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        ave = (xt + yt + zt) / 3.0;
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= errtol) {
            const double e2 = dx * dy - dz * dz;
            const double e3 = dx * dy * dz;
            return (1.0 + (c1 * e2 - c2 - c3 * e3) * e2 + c4 * e3) / std::sqrt(ave);
        }
    }
    throw std::runtime_error("carlson_rf: no convergence");
}

double carlson_rd(double x, double y, double z) {
    if (std::min(x, y) < 0.0 || x + y <= 0.0 || z <= 0.0) {
        throw std::domain_error("carlson_rd: need x,y >= 0 (not both zero) and z > 0");
    }
    constexpr double errtol = 0.0015;
    constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0;
    constexpr double c4 = 3.0 / 26.0, c5 = 0.25 * c3, c6 = 1.5 * c4;
    double xt = x, yt = y, zt = z;
    double sum = 0.0, fac = 1.0;
    double ave = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        const double lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + lam));
        fac *= 0.25;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        ave = 0.2 * (xt + yt + 3.0 * zt);
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= errtol) {
            const double ea = dx * dy;
            const double eb = dz * dz;
            const double ec = ea - eb;
            const double ed = ea - 6.0 * eb;
            const double ee = ed + ec + ec;
            return 3.0 * sum +
                   fac *
                       (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                        dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                       (ave * std::sqrt(ave));
        }
    }
    throw std::runtime_error("carlson_rd: no convergence");
}

namespace {

// Arithmetic-geometric mean of (1, b0); stops at the rounding floor.
double agm(double b0) {
    double a = 1.0;
    double b = b0;
    double prev = std::abs(a - b);
    for (int it = 0; it < 80; ++it) {
        const double d = std::abs(a - b);
        if (d <= 2.3e-16 * a || (it > 0 && d >= prev)) break;
        prev = d;
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return a;
}

// AGM with the defect sum needed for the second complete integral:
// E = K (1 - sum_n 2^{n-1} c_n^2), c_0^2 = c0sq, c_{n+1} = (a_n - b_n)/2.
double agm_with_defect(double b0, double c0sq, double& defect) {
    double a = 1.0;
    double b = b0;
    double sum = 0.5 * c0sq;
    double f = 0.5;
    double prev = std::abs(a - b);
    for (int it = 0; it < 80; ++it) {
        const double d = std::abs(a - b);
        if (d <= 2.3e-16 * a || (it > 0 && d >= prev)) break;
        prev = d;
        const double c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        f *= 2.0;
        sum += f * c * c;
    }
    defect = sum;
    return a;
}

} // namespace

double complete_K(double k) {
    require_modulus(k, "complete_K");
    return pi / (2.0 * agm(std::sqrt((1.0 - k) * (1.0 + k))));
}

double complete_K_comp(double kc) {
    if (!(kc > 0.0) || !(kc <= 1.0)) {
        throw std::domain_error("complete_K_comp: complementary modulus must lie in (0, 1]");
    }
    return pi / (2.0 * agm(kc));
}

double complete_E(double k) {
    require_modulus(k, "complete_E");
    double sum = 0.0;
    const double a = agm_with_defect(std::sqrt((1.0 - k) * (1.0 + k)), k * k, sum);
    return pi / (2.0 * a) * (1.0 - sum);
}

double incomplete_F(double psi, double k) {
    require_modulus(k, "incomplete_F");
    require_amplitude(psi, "incomplete_F");
    const double s = std::sin(psi);
    const double c = std::cos(psi);
    const double q = 1.0 - (k * s) * (k * s);
    return s * carlson_rf(c * c, q, 1.0);
}

double incomplete_E(double psi, double k) {
    require_modulus(k, "incomplete_E");
    require_amplitude(psi, "incomplete_E");
    const double s = std::sin(psi);
    if (s == 0.0) return 0.0;
    const double c = std::cos(psi);
    const double q = 1.0 - (k * s) * (k * s);
    return s * carlson_rf(c * c, q, 1.0) -
           (k * k * s * s * s / 3.0) * carlson_rd(c * c, q, 1.0);
}

namespace {

// Arithmetic-geometric mean evaluation with backward recursion; the argument
// must already be reduced to a moderate range. Takes the complementary
// parameter emc = 1 - k^2 directly.
JacobiTriple sncndn_core(double u, double emc) {
    constexpr double ca = 1e-9;
    JacobiTriple out{};
    if (emc == 0.0) {
        out.sn = std::tanh(u);
        out.cn = 1.0 / std::cosh(u);
        out.dn = out.cn;
        return out;
    }
    double em[14], en[14];
    double a = 1.0;
    double dn = 1.0;
    double c = 0.0;
    int l = 0;
    for (int i = 1; i <= 13; ++i) {
        l = i;
        em[i] = a;
        emc = std::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= ca * a) break;
        emc *= a;
        a = c;
    }
    u *= c;
    double sn = std::sin(u);
    double cn = std::cos(u);
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int i = l; i >= 1; --i) {
            const double b = em[i];
            a *= c;
            c *= dn;
            dn = (en[i] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = (sn >= 0.0 ? a : -a);
        cn = c * sn;
    }
    out.sn = sn;
    out.cn = cn;
    out.dn = dn;
    return out;
}

} // namespace

JacobiTriple jacobi_sn_cn_dn(double u, double k) {
    require_modulus(k, "jacobi_sn_cn_dn");
    if (!std::isfinite(u)) throw std::domain_error("jacobi_sn_cn_dn: argument must be finite");
    if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};
    const double quarter = complete_K(k);
    const double period = 4.0 * quarter;
    double ur = std::fmod(u, period);
    if (ur > 0.5 * period) ur -= period;
    if (ur < -0.5 * period) ur += period;
    return sncndn_core(ur, (1.0 - k) * (1.0 + k));
}

JacobiTriple jacobi_sn_cn_dn_comp(double u, double kc) {
    if (!(kc > 0.0) || !(kc <= 1.0)) {
        throw std::domain_error("jacobi_sn_cn_dn_comp: complementary modulus must lie in (0, 1]");
    }
    if (!std::isfinite(u)) {
        throw std::domain_error("jacobi_sn_cn_dn_comp: argument must be finite");
    }
    const double quarter = complete_K_comp(kc);
    const double period = 4.0 * quarter;
    double ur = std::fmod(u, period);
    if (ur > 0.5 * period) ur -= period;
    if (ur < -0.5 * period) ur += period;
    return sncndn_core(ur, kc * kc);
}

double jacobi_zeta(double u, double k) {
    require_modulus(k, "jacobi_zeta");
    if (!std::isfinite(u)) throw std::domain_error("jacobi_zeta: argument must be finite");
    if (k == 0.0) return 0.0;
    const double K = complete_K(k);
    const double E = complete_E(k);
    double v = std::fmod(u, 2.0 * K);
    if (v < 0.0) v += 2.0 * K;
    double sign = 1.0;
    if (v > K) {
        v = 2.0 * K - v;
        sign = -1.0;
    }
    const JacobiTriple j = sncndn_core(v, (1.0 - k) * (1.0 + k));
    const double phi = std::asin(std::clamp(j.sn, -1.0, 1.0));
    return sign * (incomplete_E(phi, k) - (E / K) * v);
}

double complete_E_comp(double kc) {
    if (!(kc > 0.0) || !(kc <= 1.0)) {
        throw std::domain_error("complete_E_comp: complementary modulus must lie in (0, 1]");
    }
    double sum = 0.0;
    const double a = agm_with_defect(kc, (1.0 - kc) * (1.0 + kc), sum);
    return pi / (2.0 * a) * (1.0 - sum);
}

namespace {

// E(psi, k) at modulus k = sqrt(1 - kc^2); the Carlson arguments
// 1 - k^2 sin^2 = cos^2 + kc^2 sin^2 avoid the cancellation.
double incomplete_E_comp(double psi, double kc) {
    const double s = std::sin(psi);
    if (s == 0.0) return 0.0;
    const double c = std::cos(psi);
    const double q = c * c + (kc * s) * (kc * s);
    const double m = (1.0 - kc) * (1.0 + kc);  // k^2
    return s * carlson_rf(c * c, q, 1.0) - (m * s * s * s / 3.0) * carlson_rd(c * c, q, 1.0);
}

} // namespace

double jacobi_zeta_comp(double u, double kc) {
    if (!(kc > 0.0) || !(kc <= 1.0)) {
        throw std::domain_error("jacobi_zeta_comp: complementary modulus must lie in (0, 1]");
    }
    if (!std::isfinite(u)) {
        throw std::domain_error("jacobi_zeta_comp: argument must be finite");
    }
    const double K = complete_K_comp(kc);
    const double E = complete_E_comp(kc);
    double v = std::fmod(u, 2.0 * K);
    if (v < 0.0) v += 2.0 * K;
    double sign = 1.0;
    if (v > K) {
        v = 2.0 * K - v;
        sign = -1.0;
    }
    const JacobiTriple j = sncndn_core(v, kc * kc);
    const double phi = std::asin(std::clamp(j.sn, -1.0, 1.0));
    return sign * (incomplete_E_comp(phi, kc) - (E / K) * v);
}

double nome(double k) {
    if (!(k > 0.0) || !(k < 1.0)) {
        throw std::domain_error("nome: modulus must lie in (0, 1)");
    }
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    return std::exp(-pi * complete_K_comp(k) / complete_K(k));
}

double heuman_lambda(double psi, double k) {
    if (!(k > 0.0) || !(k < 1.0)) {
        throw std::domain_error("heuman_lambda: modulus must lie in (0, 1)");
    }
    require_amplitude(psi, "heuman_lambda");
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    const double K = complete_K(k);
    const double E = complete_E(k);
    const double F = incomplete_F(psi, kp);
    const double Ei = incomplete_E(psi, kp);
    return (2.0 / pi) * (E * F + K * Ei - K * F);
}

} // namespace ilw::specfun
