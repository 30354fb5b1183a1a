#include "ilw/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <numbers>
#include <string>

namespace ilw::fourier {

namespace {

struct PlanSet {
    int N;
    double* real_buf;
    fftw_complex* cplx_buf;
    fftw_plan fwd;
    fftw_plan inv;

    explicit PlanSet(int N_) : N(N_) {
        real_buf = fftw_alloc_real(N);
        cplx_buf = fftw_alloc_complex(N / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(N, real_buf, cplx_buf, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(N, cplx_buf, real_buf, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(real_buf);
        fftw_free(cplx_buf);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

// Single-threaded plan cache keyed by transform size.
PlanSet& plans(int N) {
    static std::map<int, std::unique_ptr<PlanSet>> cache;
    auto it = cache.find(N);
    if (it == cache.end()) {
        it = cache.emplace(N, std::make_unique<PlanSet>(N)).first;
    }
    return *it->second;
}

void check_finite(const std::vector<double>& v, const char* who) {
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite sample");
    }
}

} // namespace

Grid::Grid(double L_, int N_) : L(L_), N(N_) {
    if (!(L_ > 0.0) || !std::isfinite(L_)) throw std::invalid_argument("Grid: L must be positive");
    if (N_ < 4 || N_ % 2 != 0) throw std::invalid_argument("Grid: N must be even and >= 4");
}

void fft_forward(int N, const double* in, cplx* out) {
    auto& p = plans(N);
    std::memcpy(p.real_buf, in, static_cast<size_t>(N) * sizeof(double));
    fftw_execute(p.fwd);
    const double s = 1.0 / N;
    for (int m = 0; m <= N / 2; ++m) {
        out[m] = cplx(p.cplx_buf[m][0] * s, p.cplx_buf[m][1] * s);
    }
}

void fft_inverse(int N, const cplx* in, double* out) {
    auto& p = plans(N);
    for (int m = 0; m <= N / 2; ++m) {
        p.cplx_buf[m][0] = in[m].real();
        p.cplx_buf[m][1] = in[m].imag();
    }
    p.cplx_buf[0][1] = 0.0;
    p.cplx_buf[N / 2][1] = 0.0;
    fftw_execute(p.inv);
    std::memcpy(out, p.real_buf, static_cast<size_t>(N) * sizeof(double));
}

SpectralField::SpectralField(const Grid& g) : grid_(g) {}

SpectralField::SpectralField(const Grid& g, std::vector<double> samples) : grid_(g) {
    if (static_cast<int>(samples.size()) != g.N) {
        throw std::invalid_argument("SpectralField: sample count does not match grid");
    }
    check_finite(samples, "SpectralField");
    samples_ = std::move(samples);
    coeffs_.resize(g.N / 2 + 1);
    fft_forward(g.N, samples_.data(), coeffs_.data());
}

SpectralField SpectralField::from_coeffs(const Grid& g, std::vector<cplx> coeffs) {
    if (static_cast<int>(coeffs.size()) != g.N / 2 + 1) {
        throw std::invalid_argument("SpectralField: coefficient count does not match grid");
    }
    coeffs[0] = cplx(coeffs[0].real(), 0.0);
    coeffs[g.N / 2] = cplx(coeffs[g.N / 2].real(), 0.0);
    SpectralField f(g);
    f.coeffs_ = std::move(coeffs);
    f.samples_.resize(g.N);
    fft_inverse(g.N, f.coeffs_.data(), f.samples_.data());
    check_finite(f.samples_, "SpectralField::from_coeffs");
    return f;
}

cplx SpectralField::coeff(int n) const {
    const int half = grid_.N / 2;
    if (n > half || n < -half) throw std::out_of_range("SpectralField::coeff: mode out of range");
    if (n >= 0) return coeffs_[n];
    return std::conj(coeffs_[-n]);
}

double symbol_ilw(int n, double L, double delta) {
    if (!(L > 0.0) || !(delta > 0.0) || !std::isfinite(L) || !std::isfinite(delta)) {
        throw std::domain_error("symbol_ilw: L and delta must be positive");
    }
    if (n == 0) return 0.0;
    const double x = 2.0 * std::numbers::pi * std::abs(n) / L;
    // coth(t) = 1 + 2 / (e^{2t} - 1), stable for both small and large t.
    const double coth = 1.0 + 2.0 / std::expm1(2.0 * x * delta);
    return x * coth - 1.0 / delta;
}

SpectralField apply_multiplier(const SpectralField& f, double delta) {
    const Grid& g = f.grid();
    std::vector<cplx> c = f.coeffs();
    for (int m = 0; m <= g.N / 2; ++m) {
        c[m] *= symbol_ilw(m, g.L, delta);
    }
    return SpectralField::from_coeffs(g, std::move(c));
}

double wnorm(const SpectralField& f, double delta) {
    const Grid& g = f.grid();
    const auto& c = f.coeffs();
    double sum = std::norm(c[0]);
    for (int m = 1; m < g.N / 2; ++m) {
        sum += 2.0 * (1.0 + symbol_ilw(m, g.L, delta)) * std::norm(c[m]);
    }
    sum += (1.0 + symbol_ilw(g.N / 2, g.L, delta)) * std::norm(c[g.N / 2]);
    return std::sqrt(sum);
}

SpectralField pointwise_product_dealiased(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid())) {
        throw std::invalid_argument("pointwise_product_dealiased: grids differ");
    }
    const Grid& gr = f.grid();
    std::vector<double> prod(gr.N);
    for (int j = 0; j < gr.N; ++j) prod[j] = f.samples()[j] * g.samples()[j];
    std::vector<cplx> c(gr.N / 2 + 1);
    fft_forward(gr.N, prod.data(), c.data());
    const int cutoff = gr.N / 3;
    for (int m = cutoff + 1; m <= gr.N / 2; ++m) c[m] = 0.0;
    return SpectralField::from_coeffs(gr, std::move(c));
}

} // namespace ilw::fourier
