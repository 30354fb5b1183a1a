#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace ilw::fourier {

using cplx = std::complex<double>;

// Uniform periodic grid x_j = j L / N, j = 0 .. N-1.
struct Grid {
    double L;
    int N;
    Grid(double L_, int N_);
    double dx() const { return L / N; }
    double node(int j) const { return L * j / N; }
    friend bool operator==(const Grid&, const Grid&) = default;
};

// Real periodic signal paired with its half-spectrum coefficients:
// coeffs[m] = (1/N) sum_j samples[j] exp(-2 pi i m x_j / L) for m = 0 .. N/2.
// Negative modes follow by conjugate symmetry.
class SpectralField {
public:
    SpectralField(const Grid& g, std::vector<double> samples);
    static SpectralField from_coeffs(const Grid& g, std::vector<cplx> coeffs);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx coeff(int n) const;  // signed mode index, |n| <= N/2
    double mean() const { return coeffs_[0].real(); }

private:
    explicit SpectralField(const Grid& g);
    Grid grid_;
    std::vector<double> samples_;
    std::vector<cplx> coeffs_;
};

// Dispersive symbol: (2 pi |n| / L) coth(2 pi |n| delta / L) - 1/delta,
// with the n = 0 value defined as 0.
double symbol_ilw(int n, double L, double delta);

// Apply the Fourier multiplier with the symbol above.
SpectralField apply_multiplier(const SpectralField& f, double delta);

// Weighted spectral norm: sqrt( sum_n (1 + theta(n)) |fhat(n)|^2 ),
// the sum running over all modes -N/2 < n <= N/2.
double wnorm(const SpectralField& f, double delta);

// Pointwise product with the 2/3-rule anti-aliasing projection.
SpectralField pointwise_product_dealiased(const SpectralField& f, const SpectralField& g);

// Raw transforms used by the time stepper; `out`/`in` hold N/2+1 complex
// coefficients under the same normalization as SpectralField.
void fft_forward(int N, const double* in, cplx* out);
void fft_inverse(int N, const cplx* in, double* out);

} // namespace ilw::fourier
