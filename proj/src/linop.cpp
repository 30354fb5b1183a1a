#include "ilw/linop.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ilw::linop {

namespace {

// Circulant collocation matrix of the multiplier with symbol s(m) + speed,
// minus twice the profile on the diagonal, explicitly symmetrized.
Eigen::MatrixXd assemble(const wave::WaveParams& p, int N, double speed,
                         const std::vector<double>& profile) {
    std::vector<fourier::cplx> coeffs(static_cast<size_t>(N / 2 + 1));
    for (int m = 0; m <= N / 2; ++m) {
        coeffs[static_cast<size_t>(m)] =
            (fourier::symbol_ilw(m, p.L, p.delta) + speed) / static_cast<double>(N);
    }
    std::vector<double> col(static_cast<size_t>(N));
    fourier::fft_inverse(N, coeffs.data(), col.data());

    Eigen::MatrixXd A(N, N);
    for (int j = 0; j < N; ++j) {
        for (int l = 0; l < N; ++l) {
            A(j, l) = col[static_cast<size_t>((j - l + N) % N)];
        }
        A(j, j) -= 2.0 * profile[static_cast<size_t>(j)];
    }
    return 0.5 * (A + A.transpose()).eval();
}

void require_size(int N, const char* where) {
    if (N < 64 || N % 2 != 0) {
        throw std::invalid_argument(std::string(where) + ": size must be even and at least 64");
    }
}

double parity_residual_even(const Eigen::VectorXd& v) {
    const int N = static_cast<int>(v.size());
    double r = 0.0;
    for (int j = 0; j < N; ++j) r += std::pow(v[(N - j) % N] - v[j], 2);
    return std::sqrt(r);
}

double parity_residual_odd(const Eigen::VectorXd& v) {
    const int N = static_cast<int>(v.size());
    double r = 0.0;
    for (int j = 0; j < N; ++j) r += std::pow(v[(N - j) % N] + v[j], 2);
    return std::sqrt(r);
}

std::vector<double> derivative_samples(const wave::WaveParams& p, const fourier::Grid& g) {
    const int N = g.N;
    const double xi = 2.0 * std::numbers::pi / g.L;
    std::vector<fourier::cplx> dc(static_cast<size_t>(N / 2 + 1));
    for (int m = 0; m <= N / 2; ++m) {
        dc[static_cast<size_t>(m)] =
            fourier::cplx(0.0, xi * m) * wave::fourier_coeff(p, m);
    }
    std::vector<double> out(static_cast<size_t>(N));
    fourier::fft_inverse(N, dc.data(), out.data());
    return out;
}

} // namespace

OperatorMatrix build_operator(const wave::WaveParams& params, int N) {
    require_size(N, "build_operator");
    fourier::Grid g(params.L, N);
    return OperatorMatrix{g, params, assemble(params, N, params.c, wave::profile_samples(params, g))};
}

OperatorMatrix build_operator_shifted(const wave::WaveParams& params, int N, double a_perturb) {
    require_size(N, "build_operator_shifted");
    fourier::Grid g(params.L, N);
    std::vector<double> shifted = wave::profile_samples(params, g);
    for (double& s : shifted) s += params.a + a_perturb;
    return OperatorMatrix{g, params, assemble(params, N, params.sigma, shifted)};
}

EigResult eig_sym(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("eig_sym: matrix must be square");
    }
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    const double defect = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (defect > 1e-10 * scale) {
        throw std::invalid_argument("eig_sym: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_sym: eigensolver failed to converge");
    }
    return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

SpectrumReport spectrum_report(const wave::WaveParams& params, int N, double tol) {
    const OperatorMatrix op = build_operator(params, N);
    const EigResult eig = eig_sym(op.entries);

    SpectrumReport rep;
    rep.N = N;
    const double norm = std::max(std::abs(eig.eigenvalues(0)),
                                 std::abs(eig.eigenvalues(N - 1)));
    rep.tol = tol > 0.0 ? tol : 1e-8 * norm;
    rep.eigenvalues.assign(eig.eigenvalues.data(), eig.eigenvalues.data() + N);

    int zero_index = 0;
    for (int i = 0; i < N; ++i) {
        const double lam = rep.eigenvalues[static_cast<size_t>(i)];
        if (lam < -rep.tol) ++rep.n_neg;
        else if (lam <= rep.tol) ++rep.n_zero;
        if (std::abs(lam) < std::abs(rep.eigenvalues[static_cast<size_t>(zero_index)])) {
            zero_index = i;
        }
    }
    rep.gap = 0.0;
    for (int i = 0; i < N; ++i) {
        const double lam = std::abs(rep.eigenvalues[static_cast<size_t>(i)]);
        if (lam > rep.tol && (rep.gap == 0.0 || lam < rep.gap)) rep.gap = lam;
    }

    const std::vector<double> dphi = derivative_samples(params, op.grid);
    Eigen::Map<const Eigen::VectorXd> dv(dphi.data(), N);
    rep.kernel_residual = (op.entries * dv).norm() / dv.norm();
    rep.cos_similarity =
        std::abs(eig.eigenvectors.col(zero_index).dot(dv)) / dv.norm();

    rep.negative_even = parity_residual_even(eig.eigenvectors.col(0)) < 1e-6;
    rep.zero_odd = parity_residual_odd(eig.eigenvectors.col(zero_index)) < 1e-6;

    const OperatorMatrix op2 = build_operator(params, 2 * N);
    const EigResult eig2 = eig_sym(op2.entries);
    rep.truncation_drift = 0.0;
    for (int i = 0; i < std::min(10, N); ++i) {
        rep.truncation_drift = std::max(
            rep.truncation_drift, std::abs(eig.eigenvalues(i) - eig2.eigenvalues(i)));
    }
    return rep;
}

GalileanReport galilean_shift(const wave::WaveParams& params, int N, int refine) {
    require_size(N, "galilean_shift");
    GalileanReport rep;
    rep.a = params.a;
    rep.sigma = params.sigma;

    fourier::Grid g(params.L, N);
    std::vector<double> shifted = wave::profile_samples(params, g);
    for (double& s : shifted) s += params.a;
    fourier::SpectralField f(g, shifted);
    const fourier::SpectralField mf = fourier::apply_multiplier(f, params.delta);
    double res = 0.0;
    for (int j = 0; j < N; ++j) {
        const double u = f.samples()[static_cast<size_t>(j)];
        res = std::max(res, std::abs(mf.samples()[static_cast<size_t>(j)] +
                                     params.sigma * u - u * u));
    }
    rep.residual = res;

    const int Nfine = refine * N;
    double mn = params.a + wave::profile_elliptic(params, 0.0);
    for (int j = 1; j < Nfine; ++j) {
        mn = std::min(mn, params.a + wave::profile_elliptic(params, params.L * j / Nfine));
    }
    rep.min_shifted = mn;
    rep.positivity_ok = mn > 0.0;

    rep.minus_phi_half = -wave::profile_elliptic(params, 0.5 * params.L);
    rep.threshold_speed = 2.0 * std::numbers::pi / params.L * params.v;
    rep.precond_center = rep.a > rep.minus_phi_half;
    rep.precond_speed = rep.a > rep.threshold_speed;
    return rep;
}

PF2Report pf2_check(const std::vector<double>& alpha, int window) {
    if (window < 1) throw std::invalid_argument("pf2_check: window must be positive");
    if (static_cast<int>(alpha.size()) < 2 * window + 1) {
        throw std::invalid_argument(
            "pf2_check: need coefficients up to index 2*window");
    }
    const int M = window;
    const auto at = [&alpha](int n) { return alpha[static_cast<size_t>(std::abs(n))]; };

    PF2Report rep;
    rep.window = M;
    rep.alpha_min = at(0);
    for (int n = 1; n <= 2 * M; ++n) rep.alpha_min = std::min(rep.alpha_min, at(n));

    double min_strict = DBL_MAX;
    double min_nonstrict = DBL_MAX;
    bool seen_nonstrict = false;
    for (int n1 = -M; n1 <= M; ++n1) {
        for (int n2 = n1 + 1; n2 <= M; ++n2) {
            for (int m1 = -M; m1 <= M; ++m1) {
                for (int m2 = m1 + 1; m2 <= M; ++m2) {
                    const double p1 = at(n1 - m1) * at(n2 - m2);
                    const double p2 = at(n1 - m2) * at(n2 - m1);
                    const double d = (p1 - p2) / std::max({p1, p2, DBL_MIN});
                    if (n2 > m1 && n1 < m2) {
                        min_strict = std::min(min_strict, d);
                    } else {
                        min_nonstrict = std::min(min_nonstrict, d);
                        seen_nonstrict = true;
                    }
                }
            }
        }
    }
    rep.min_minor = min_strict;
    rep.min_nonstrict_minor = seen_nonstrict ? min_nonstrict : 0.0;
    rep.pass = rep.alpha_min > 0.0 && rep.min_minor > 0.0 &&
               rep.min_nonstrict_minor >= -1e-12;
    return rep;
}

std::vector<double> shifted_coefficients(const wave::WaveParams& params, int window) {
    std::vector<double> alpha(static_cast<size_t>(2 * window + 1));
    alpha[0] = params.a + wave::fourier_coeff(params, 0);
    for (int n = 1; n <= 2 * window; ++n) {
        alpha[static_cast<size_t>(n)] = wave::fourier_coeff(params, n);
    }
    return alpha;
}

double operator_identity_check(const wave::WaveParams& params, int N, double a_perturb) {
    const OperatorMatrix direct = build_operator(params, N);
    const OperatorMatrix shifted = build_operator_shifted(params, N, a_perturb);
    return (direct.entries - shifted.entries).cwiseAbs().maxCoeff();
}

} // namespace ilw::linop
