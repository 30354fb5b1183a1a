#include "ilw/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ilw/krein.hpp"

namespace ilw::evolve {

namespace {

constexpr double pi = std::numbers::pi;

void validate(const SimConfig& cfg) {
    if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) {
        throw std::invalid_argument("SimConfig: delta must be positive and finite");
    }
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw std::invalid_argument("SimConfig: dt must be positive and finite");
    }
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) {
        throw std::invalid_argument("SimConfig: t_end must be nonnegative");
    }
    if (cfg.record_every < 1) {
        throw std::invalid_argument("SimConfig: record_every must be positive");
    }
    if (!(cfg.cfl_safety > 0.0) || cfg.cfl_safety > 1.0) {
        throw std::invalid_argument("SimConfig: cfl_safety must lie in (0, 1]");
    }
    if (!(cfg.blowup_threshold > 0.0)) {
        throw std::invalid_argument("SimConfig: blowup_threshold must be positive");
    }
}

} // namespace

fourier::SpectralField rhs(const fourier::SpectralField& u, double delta, bool dealias) {
    const fourier::Grid& g = u.grid();
    const int N = g.N;
    const double xi = 2.0 * pi / g.L;

    std::vector<double> sq(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double s = u.samples()[static_cast<size_t>(j)];
        sq[static_cast<size_t>(j)] = s * s;
    }
    std::vector<fourier::cplx> sqh(static_cast<size_t>(N / 2 + 1));
    fourier::fft_forward(N, sq.data(), sqh.data());

    const int cutoff = N / 3;
    std::vector<fourier::cplx> out(static_cast<size_t>(N / 2 + 1));
    for (int m = 0; m <= N / 2; ++m) {
        const size_t i = static_cast<size_t>(m);
        if (m == 0 || m == N / 2) {
            out[i] = 0.0;
            continue;
        }
        const fourier::cplx deriv(0.0, xi * m);
        out[i] = deriv * fourier::symbol_ilw(m, g.L, delta) * u.coeffs()[i];
        if (!(dealias && m > cutoff)) {
            out[i] -= deriv * sqh[i];
        }
    }
    return fourier::SpectralField::from_coeffs(g, std::move(out));
}

Conserved conserved(const fourier::SpectralField& u, double delta) {
    const fourier::Grid& g = u.grid();
    const double w = g.L / static_cast<double>(g.N);
    Conserved out;
    out.E_minus1 = g.L * u.coeffs()[0].real();
    const auto mu = fourier::apply_multiplier(u, delta);
    double e0 = 0.0, e1 = 0.0, cubic = 0.0;
    for (int j = 0; j < g.N; ++j) {
        const double s = u.samples()[static_cast<size_t>(j)];
        e0 += s * s;
        e1 += mu.samples()[static_cast<size_t>(j)] * s;
        cubic += s * s * s;
    }
    out.E_0 = 0.5 * e0 * w;
    out.E_1 = 0.5 * e1 * w - cubic * w / 3.0;
    return out;
}

Simulation::Simulation(const fourier::Grid& g, const SimConfig& cfg,
                       std::vector<double> initial)
    : grid_(g), cfg_(cfg), samples_(std::move(initial)) {
    validate(cfg_);
    if (static_cast<int>(samples_.size()) != g.N) {
        throw std::invalid_argument("Simulation: initial data size mismatch");
    }
    const size_t M = static_cast<size_t>(g.N / 2 + 1);
    uhat_.resize(M);
    eh_.resize(M);
    e2_.resize(M);
    ka_.resize(M);
    kb_.resize(M);
    kc_.resize(M);
    kd_.resize(M);
    tmp_.resize(M);
    work_.resize(static_cast<size_t>(g.N));
    fourier::fft_forward(g.N, samples_.data(), uhat_.data());
}

void Simulation::refresh_phases(double h) {
    if (h == phase_h_) return;
    phase_h_ = h;
    const double xi = 2.0 * pi / grid_.L;
    for (int m = 0; m <= grid_.N / 2; ++m) {
        const double phase = xi * m * fourier::symbol_ilw(m, grid_.L, cfg_.delta) * h;
        eh_[static_cast<size_t>(m)] = std::polar(1.0, 0.5 * phase);
        e2_[static_cast<size_t>(m)] = std::polar(1.0, phase);
    }
}

void Simulation::nonlinear_term(const std::vector<fourier::cplx>& in,
                                std::vector<fourier::cplx>& out) {
    const int N = grid_.N;
    if (!cfg_.nonlinear) {
        std::fill(out.begin(), out.end(), fourier::cplx(0.0));
        return;
    }
    fourier::fft_inverse(N, in.data(), work_.data());
    for (double& v : work_) v *= v;
    fourier::fft_forward(N, work_.data(), out.data());
    const double xi = 2.0 * pi / grid_.L;
    const int cutoff = N / 3;
    for (int m = 0; m <= N / 2; ++m) {
        const size_t i = static_cast<size_t>(m);
        if (m == 0 || m == N / 2 || (cfg_.dealias && m > cutoff)) {
            out[i] = 0.0;
        } else {
            out[i] *= fourier::cplx(0.0, -xi * m);
        }
    }
}

void Simulation::step() {
    const int N = grid_.N;
    const size_t M = uhat_.size();

    double umax = 0.0;
    for (double s : samples_) umax = std::max(umax, std::abs(s));
    if (!std::isfinite(umax) || umax > cfg_.blowup_threshold) {
        throw BlowupError(t(), samples_);
    }

    int nsub = 1;
    if (cfg_.enforce_cfl && cfg_.nonlinear && umax > 0.0) {
        const double dt_cfl =
            cfg_.cfl_safety * grid_.L / (pi * N * 2.0 * umax);
        nsub = static_cast<int>(std::min(std::ceil(cfg_.dt / dt_cfl), 1e6));
        nsub = std::max(nsub, 1);
    }
    last_substeps_ = nsub;
    const double h = cfg_.dt / nsub;
    refresh_phases(h);

    prev_ = samples_;
    for (int sub = 0; sub < nsub; ++sub) {
        nonlinear_term(uhat_, ka_);
        for (size_t i = 0; i < M; ++i) tmp_[i] = eh_[i] * (uhat_[i] + 0.5 * h * ka_[i]);
        nonlinear_term(tmp_, kb_);
        for (size_t i = 0; i < M; ++i) tmp_[i] = eh_[i] * uhat_[i] + 0.5 * h * kb_[i];
        nonlinear_term(tmp_, kc_);
        for (size_t i = 0; i < M; ++i) tmp_[i] = e2_[i] * uhat_[i] + h * eh_[i] * kc_[i];
        nonlinear_term(tmp_, kd_);
        for (size_t i = 0; i < M; ++i) {
            uhat_[i] = e2_[i] * uhat_[i] +
                       h / 6.0 *
                           (e2_[i] * ka_[i] + 2.0 * eh_[i] * (kb_[i] + kc_[i]) + kd_[i]);
        }
    }

    uhat_[0] = fourier::cplx(uhat_[0].real(), 0.0);
    uhat_[M - 1] = fourier::cplx(uhat_[M - 1].real(), 0.0);
    fourier::fft_inverse(N, uhat_.data(), samples_.data());
    ++steps_;

    double m2 = 0.0;
    bool ok = true;
    for (double s : samples_) {
        if (!std::isfinite(s)) { ok = false; break; }
        m2 = std::max(m2, std::abs(s));
    }
    if (!ok || m2 > cfg_.blowup_threshold) {
        throw BlowupError(t(), prev_);
    }
}

void Simulation::run_until(double t_target) {
    const long long n = std::llround(t_target / cfg_.dt);
    while (steps_ < n) step();
}

fourier::SpectralField Simulation::field() const {
    return fourier::SpectralField(grid_, samples_);
}

Conserved Simulation::conserved() const {
    return evolve::conserved(field(), cfg_.delta);
}

OrbitDistance orbit_distance(const fourier::SpectralField& u,
                             const wave::WaveProfile& reference) {
    const fourier::Grid& g = u.grid();
    if (!(g == reference.field.grid())) {
        throw std::invalid_argument("orbit_distance: grids differ");
    }
    const int N = g.N;
    const double L = g.L;
    const double delta = reference.params.delta;
    const double xi = 2.0 * pi / L;

    std::vector<double> wts(static_cast<size_t>(N / 2 + 1));
    std::vector<fourier::cplx> z(static_cast<size_t>(N / 2 + 1));
    for (int m = 0; m <= N / 2; ++m) {
        const size_t i = static_cast<size_t>(m);
        wts[i] = 1.0 + fourier::symbol_ilw(m, L, delta);
        z[i] = wts[i] * u.coeffs()[i] * std::conj(reference.field.coeffs()[i]);
    }

    // <u(.+r), phi>_W at the N grid shifts in one inverse transform.
    std::vector<double> corr(static_cast<size_t>(N));
    fourier::fft_inverse(N, z.data(), corr.data());

    int best = 0;
    for (int j = 1; j < N; ++j) {
        if (corr[static_cast<size_t>(j)] > corr[static_cast<size_t>(best)]) best = j;
    }

    // The difference is summed mode by mode; unlike the norm-minus-correlation
    // form this does not cancel catastrophically near an exact orbit member.
    const auto dist2 = [&](double r) {
        double d = 0.0;
        for (int m = 0; m <= N / 2; ++m) {
            const size_t i = static_cast<size_t>(m);
            const fourier::cplx diff =
                u.coeffs()[i] * std::polar(1.0, xi * m * r) - reference.field.coeffs()[i];
            const double mult = (m == 0 || m == N / 2) ? 1.0 : 2.0;
            d += mult * wts[i] * std::norm(diff);
        }
        return d;
    };

    const double dx = L / N;
    double lo = g.node(best) - dx;
    double hi = g.node(best) + dx;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = dist2(x1), f2 = dist2(x2);
    while (hi - lo > 1e-13) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = dist2(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = dist2(x2);
        }
    }
    OrbitDistance out;
    const double r = f1 < f2 ? x1 : x2;
    out.rho = std::sqrt(std::max(0.0, std::min(f1, f2)));
    out.r_star = std::fmod(std::fmod(r, L) + L, L);
    return out;
}

StabilityReport stability_experiment(const wave::WaveProfile& reference,
                                     const std::vector<double>& perturbation,
                                     const SimConfig& cfg) {
    const fourier::Grid& g = reference.field.grid();
    const int N = g.N;
    if (static_cast<int>(perturbation.size()) != N) {
        throw std::invalid_argument("stability_experiment: perturbation size mismatch");
    }
    SimConfig c = cfg;
    c.delta = reference.params.delta;
    validate(c);

    double mean = 0.0;
    for (double p : perturbation) mean += p;
    mean /= static_cast<double>(N);

    std::vector<double> u0(static_cast<size_t>(N));
    std::vector<double> pz(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        pz[static_cast<size_t>(j)] = perturbation[static_cast<size_t>(j)] - mean;
        u0[static_cast<size_t>(j)] =
            reference.field.samples()[static_cast<size_t>(j)] + pz[static_cast<size_t>(j)];
    }

    StabilityReport rep;
    rep.perturbation_wnorm = fourier::wnorm(fourier::SpectralField(g, pz), c.delta);

    const auto& wp = reference.params;
    const double dc = wave::dc_dk(wp.L, wp.delta, wp.k);
    const double dA = wave::dN_dk(wp.L, wp.delta, wp.k) / wp.L;

    Simulation sim(g, c, u0);
    const auto snapshot = [&]() {
        Record r;
        r.t = sim.t();
        const Conserved q = sim.conserved();
        r.E_minus1 = q.E_minus1;
        r.E_0 = q.E_0;
        r.E_1 = q.E_1;
        r.Mk = krein::compute_Mk(sim.samples(), g, dc, dA);
        const OrbitDistance od = orbit_distance(sim.field(), reference);
        r.rho = od.rho;
        r.r_star = od.r_star;
        rep.records.push_back(r);
    };

    snapshot();
    const long long n_steps = std::llround(c.t_end / c.dt);
    for (long long i = 1; i <= n_steps; ++i) {
        sim.step();
        if (i % c.record_every == 0 || i == n_steps) snapshot();
    }

    const Record& first = rep.records.front();
    for (const Record& r : rep.records) {
        rep.sup_rho = std::max(rep.sup_rho, r.rho);
        rep.E0_drift = std::max(rep.E0_drift,
                                std::abs(r.E_0 - first.E_0) / std::abs(first.E_0));
        rep.E1_drift = std::max(rep.E1_drift,
                                std::abs(r.E_1 - first.E_1) / std::abs(first.E_1));
        rep.Em1_drift = std::max(rep.Em1_drift, std::abs(r.E_minus1 - first.E_minus1));
        rep.Mk_drift = std::max(rep.Mk_drift,
                                std::abs(r.Mk - first.Mk) / std::abs(first.Mk));
    }
    rep.final_samples = sim.samples();
    return rep;
}

} // namespace ilw::evolve
