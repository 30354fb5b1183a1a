#include "ilw/krein.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ilw::krein {

namespace {

// Orthonormal embedding of the even-parity subspace, N x (N/2 + 1).
Eigen::MatrixXd even_embedding(int N) {
    const int M = N / 2 + 1;
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, M);
    P(0, 0) = 1.0;
    P(N / 2, N / 2) = 1.0;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 1; i < N / 2; ++i) {
        P(i, i) = r;
        P(N - i, i) = r;
    }
    return P;
}

double inner(const std::vector<double>& f, const std::vector<double>& g, double L) {
    double s = 0.0;
    for (size_t j = 0; j < f.size(); ++j) s += f[j] * g[j];
    return s * L / static_cast<double>(f.size());
}

double dNdc(const wave::WaveParams& p) {
    return wave::dN_dk(p.L, p.delta, p.k) / wave::dc_dk(p.L, p.delta, p.k);
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::LinearlyStable: return "LinearlyStable";
        case Verdict::LinearlyUnstable: return "LinearlyUnstable";
        default: return "Inconclusive";
    }
}

std::vector<double> solve_even(const linop::OperatorMatrix& op,
                               const std::vector<double>& rhs) {
    const int N = op.size();
    if (static_cast<int>(rhs.size()) != N) {
        throw std::invalid_argument("solve_even: rhs size mismatch");
    }
    double scale = 0.0;
    for (double v : rhs) scale = std::max(scale, std::abs(v));
    for (int j = 0; j < N; ++j) {
        if (std::abs(rhs[static_cast<size_t>((N - j) % N)] - rhs[static_cast<size_t>(j)]) >
            1e-12 * std::max(scale, 1.0)) {
            throw std::invalid_argument("solve_even: rhs must be even");
        }
    }

    const Eigen::MatrixXd P = even_embedding(N);
    const Eigen::MatrixXd Ae = P.transpose() * op.entries * P;
    Eigen::Map<const Eigen::VectorXd> r(rhs.data(), N);
    const Eigen::VectorXd re = P.transpose() * r;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Ae);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("solve_even: eigensolver failed");
    }
    const Eigen::VectorXd lam = solver.eigenvalues();
    double lmin = std::abs(lam(0));
    double lmax = lmin;
    for (int i = 1; i < lam.size(); ++i) {
        lmin = std::min(lmin, std::abs(lam(i)));
        lmax = std::max(lmax, std::abs(lam(i)));
    }
    if (lmin <= 1e-12 * lmax || lmax == 0.0) {
        throw std::runtime_error("solve_even: restricted matrix is numerically singular");
    }

    const Eigen::VectorXd y =
        solver.eigenvectors() * (solver.eigenvectors().transpose() * re).cwiseQuotient(lam);
    const Eigen::VectorXd x = P * y;

    const double res = (op.entries * x - r).norm();
    if (res > 1e-10 * r.norm()) {
        throw std::runtime_error("solve_even: residual exceeds tolerance");
    }
    return std::vector<double>(x.data(), x.data() + N);
}

IPair compute_I(const wave::WaveParams& params, int N) {
    const auto op = linop::build_operator(params, N);
    const std::vector<double> ones(static_cast<size_t>(N), 1.0);
    const std::vector<double> h1 = solve_even(op, ones);
    IPair out;
    out.direct = inner(h1, ones, params.L);
    out.closed = params.L * params.L / (params.c * params.L + 2.0 * dNdc(params));
    return out;
}

DResult compute_D(const wave::WaveParams& params, int N) {
    const auto op = linop::build_operator(params, N);
    const fourier::Grid g(params.L, N);
    const std::vector<double> phi = wave::profile_samples(params, g);
    const std::vector<double> ones(static_cast<size_t>(N), 1.0);
    const std::vector<double> h1 = solve_even(op, ones);
    const std::vector<double> hphi = solve_even(op, phi);

    DResult out;
    out.b_phiphi = inner(hphi, phi, params.L);
    out.b_phi1 = inner(hphi, ones, params.L);
    out.b_11 = inner(h1, ones, params.L);
    const double I = out.b_11;
    if (std::abs(I) < 1e-12) {
        throw std::runtime_error("compute_D: I is numerically zero, matrix degenerate");
    }
    out.D << out.b_phiphi / I, out.b_phi1 / I, out.b_phi1 / I, out.b_11 / I;
    out.det_direct = (out.b_phiphi * out.b_11 - out.b_phi1 * out.b_phi1) / (I * I);

    const double nc = dNdc(params);
    const double denom = params.c * params.L + 2.0 * nc;
    const double I_closed = params.L * params.L / denom;
    out.b_phi1_closed = -params.L * nc / denom;
    out.b_phiphi_closed = -params.c * params.L * nc / (2.0 * denom);
    out.det_closed = -0.5 * nc / I_closed;

    double res = 0.0;
    for (int j = 0; j < N; ++j) {
        res = std::max(res, std::abs(1.0 - (params.c * h1[static_cast<size_t>(j)] -
                                            2.0 * hphi[static_cast<size_t>(j)])));
    }
    out.identity_residual = res;
    return out;
}

P3Result p3_check(const wave::WaveParams& params, int N) {
    const fourier::Grid g(params.L, N);
    const double h = 1e-5;
    const auto sample = [&](double k) {
        return wave::profile_samples(wave::make_params(params.L, params.delta, k), g);
    };
    const std::vector<double> fp1 = sample(params.k + h);
    const std::vector<double> fm1 = sample(params.k - h);
    const std::vector<double> fp2 = sample(params.k + 2.0 * h);
    const std::vector<double> fm2 = sample(params.k - 2.0 * h);
    std::vector<double> dk(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        const size_t s = static_cast<size_t>(j);
        dk[s] = (8.0 * (fp1[s] - fm1[s]) - (fp2[s] - fm2[s])) / (12.0 * h);
    }

    const auto op = linop::build_operator(params, N);
    Eigen::Map<const Eigen::VectorXd> v(dk.data(), N);
    const Eigen::VectorXd Lv = op.entries * v;

    P3Result out;
    out.direct = Lv.dot(v) * params.L / static_cast<double>(N);
    const double dc = wave::dc_dk(params.L, params.delta, params.k);
    const double dN = wave::dN_dk(params.L, params.delta, params.k);
    out.closed = -0.5 * dc * dN;
    out.rel_gap = std::abs(out.direct - out.closed) / std::abs(out.closed);

    const std::vector<double> phi = wave::profile_samples(params, g);
    const double dA = dN / params.L;
    double res = 0.0;
    for (int j = 0; j < N; ++j) {
        res = std::max(res, std::abs(Lv(j) + dc * phi[static_cast<size_t>(j)] + dA));
    }
    out.field_residual = res;
    return out;
}

double compute_Mk(const std::vector<double>& u, const fourier::Grid& g,
                  double dcdk, double dAdk) {
    if (static_cast<int>(u.size()) != g.N) {
        throw std::invalid_argument("compute_Mk: sample count mismatch");
    }
    double e0 = 0.0;
    double em1 = 0.0;
    for (double v : u) {
        e0 += v * v;
        em1 += v;
    }
    const double w = g.L / static_cast<double>(g.N);
    return dcdk * 0.5 * e0 * w + dAdk * em1 * w;
}

VerdictResult krein_verdict(int n_L, int n_zero, double I,
                            const Eigen::Matrix2d& D, double c) {
    VerdictResult out;
    out.closed_form_regime = std::abs(c) >= 1e-8;

    if (std::abs(I) < 1e-12) {
        out.reason = "I is numerically zero";
        return out;
    }
    out.n_I = I > 0.0 ? 0 : 1;

    const double det = D.determinant();
    const double tr = D.trace();
    const double scale = D.cwiseAbs().maxCoeff();
    if (std::abs(det) < 1e-12 * scale * scale) {
        out.reason = "D is numerically singular";
        return out;
    }
    if (det < 0.0) out.n_D = 1;
    else out.n_D = tr < 0.0 ? 2 : 0;

    out.K_Ham = n_L - out.n_I - out.n_D;

    if (n_zero != 1) {
        out.reason = "kernel is not one-dimensional";
        return out;
    }
    if (!out.closed_form_regime) {
        out.reason = "speed is numerically zero; index theory not applicable";
        return out;
    }
    if (out.K_Ham == 0) {
        out.verdict = Verdict::LinearlyStable;
    } else if (out.K_Ham == 1) {
        out.verdict = Verdict::LinearlyUnstable;
    } else {
        out.reason = "index outside {0, 1}";
    }
    return out;
}

KreinReport krein_report(const wave::WaveParams& params, int N) {
    KreinReport rep;
    rep.N = N;
    rep.k = params.k;
    rep.c = params.c;

    const auto spectrum = linop::spectrum_report(params, N);
    const IPair ip = compute_I(params, N);
    rep.I_direct = ip.direct;
    rep.I_closed = ip.closed;
    rep.D = compute_D(params, N);
    rep.p3 = p3_check(params, N);
    rep.n_L = spectrum.n_neg;
    rep.n_zero = spectrum.n_zero;

    const VerdictResult v =
        krein_verdict(spectrum.n_neg, spectrum.n_zero, ip.direct, rep.D.D, params.c);
    rep.n_I = v.n_I;
    rep.n_D = v.n_D;
    rep.K_Ham = v.K_Ham;
    rep.closed_form_regime = v.closed_form_regime;
    rep.verdict = v.verdict;
    rep.reason = v.reason;
    return rep;
}

} // namespace ilw::krein
