#pragma once

#include <vector>

#include "ilw/fourier.hpp"

namespace ilw::wave {

// Everything determined by (L, delta, k) for one periodic traveling wave.
struct WaveParams {
    double L = 0.0;
    double delta = 0.0;
    double k = 0.0;
    double kprime = 0.0;
    double K = 0.0;        // complete integral at k
    double Kprime = 0.0;   // complete integral at k'
    double v = 0.0;        // admissibility ratio (2 delta / L) K / K'
    double c = 0.0;        // propagation speed
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;  // profile coefficients
    double nu = 0.0;       // 2 pi delta / L
    double mu = 0.0;       // pi K'/K
    double norm_squared = 0.0;  // integral of the profile squared over one period
    double A = 0.0;        // norm_squared / L
    double a = 0.0;        // background shift with a^2 + c a - A = 0, a > 0
    double sigma = 0.0;    // shifted speed c + 2a = sqrt(c^2 + 4A)
};

double admissibility_ratio(double L, double delta, double k);

// Largest admissible modulus: the unique root of admissibility_ratio = 1.
// Bisection to an absolute width of 1e-10.
double admissible_kmax(double L, double delta);

double wave_speed(double L, double delta, double k);

// Root of wave_speed in k, bisection to 1e-10.
double speed_root_k0(double L, double delta);

WaveParams make_params(double L, double delta, double k);

double profile_elliptic(const WaveParams& p, double x);
std::vector<double> profile_samples(const WaveParams& p, const fourier::Grid& g);

// Analytic coefficient of mode m (zero mean, even, positive for m != 0).
double fourier_coeff(const WaveParams& p, int m);

// Smallest mode count M such that the coefficient tail is below 1e-16
// relative to the leading coefficient.
int fourier_mode_cutoff(const WaveParams& p);

std::vector<double> profile_fourier_samples(const WaveParams& p, const fourier::Grid& g);

double norm_squared_series(const WaveParams& p);
double norm_squared_closed(const WaveParams& p);

double dN_dk(double L, double delta, double k);
double dc_dk(double L, double delta, double k);

// Max-norm residual of the traveling-wave equation
// -c phi + phi^2 - (M phi) - A = 0 evaluated spectrally on the grid.
double residual_travkdv(const WaveParams& p, const fourier::Grid& g);

// Profile bundled with its spectral data on a concrete grid.
struct WaveProfile {
    WaveParams params;
    fourier::SpectralField field;
    std::vector<double> coeffs_analytic;  // modes 0 .. N/2
};

WaveProfile make_profile(const WaveParams& p, const fourier::Grid& g);

} // namespace ilw::wave
