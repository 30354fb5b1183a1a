#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ilw/fourier.hpp"
#include "ilw/wave.hpp"

namespace ilw::evolve {

struct SimConfig {
    double delta = 1.0;
    double dt = 1e-3;
    double t_end = 1.0;
    bool dealias = true;
    bool nonlinear = true;
    bool enforce_cfl = true;
    double cfl_safety = 0.5;
    double blowup_threshold = 1e6;
    int record_every = 1000;
};

struct Conserved {
    double E_minus1 = 0.0;  // integral of u
    double E_0 = 0.0;       // (1/2) integral of u^2
    double E_1 = 0.0;       // (1/2) <Mu, u> - (1/3) integral of u^3
};

class BlowupError : public std::runtime_error {
public:
    BlowupError(double t, std::vector<double> last_good)
        : std::runtime_error("solution blew up at t = " + std::to_string(t)),
          t_blowup(t),
          last_samples(std::move(last_good)) {}
    double t_blowup;
    std::vector<double> last_samples;  // state before the failing step
};

// Full right-hand side d/dx (M u - u^2) evaluated spectrally.
fourier::SpectralField rhs(const fourier::SpectralField& u, double delta,
                           bool dealias = true);

Conserved conserved(const fourier::SpectralField& u, double delta);

// Integrating-factor RK4 stepper; the linear dispersion is advanced exactly,
// the advection term by RK4 with adaptive substepping under a CFL bound.
class Simulation {
public:
    Simulation(const fourier::Grid& g, const SimConfig& cfg,
               std::vector<double> initial);

    void step();  // advance by cfg.dt (internally substepped)
    void run_until(double t);

    double t() const { return static_cast<double>(steps_) * cfg_.dt; }
    const fourier::Grid& grid() const { return grid_; }
    const std::vector<double>& samples() const { return samples_; }
    fourier::SpectralField field() const;
    Conserved conserved() const;
    int last_substeps() const { return last_substeps_; }

private:
    void nonlinear_term(const std::vector<fourier::cplx>& in,
                        std::vector<fourier::cplx>& out);
    void refresh_phases(double h);

    fourier::Grid grid_;
    SimConfig cfg_;
    long long steps_ = 0;
    int last_substeps_ = 0;
    double phase_h_ = -1.0;
    std::vector<fourier::cplx> uhat_, eh_, e2_, ka_, kb_, kc_, kd_, tmp_;
    std::vector<double> samples_, work_, prev_;
};

struct OrbitDistance {
    double r_star = 0.0;  // shift applied to u that best matches the wave
    double rho = 0.0;     // W-norm distance at that shift
};

OrbitDistance orbit_distance(const fourier::SpectralField& u,
                             const wave::WaveProfile& reference);

struct Record {
    double t = 0.0;
    double E_minus1 = 0.0;
    double E_0 = 0.0;
    double E_1 = 0.0;
    double Mk = 0.0;
    double rho = 0.0;
    double r_star = 0.0;
};

struct StabilityReport {
    std::vector<Record> records;
    double sup_rho = 0.0;
    double E0_drift = 0.0;   // max relative
    double E1_drift = 0.0;   // max relative
    double Em1_drift = 0.0;  // max absolute
    double Mk_drift = 0.0;   // max relative
    double perturbation_wnorm = 0.0;
    std::vector<double> final_samples;
};

// Adds the mean-zero projection of `perturbation` to the wave and integrates
// to cfg.t_end, recording conservation and orbit-distance series.
StabilityReport stability_experiment(const wave::WaveProfile& reference,
                                     const std::vector<double>& perturbation,
                                     const SimConfig& cfg);

} // namespace ilw::evolve
