#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ilw/fourier.hpp"
#include "ilw/wave.hpp"

namespace ilw::linop {

// Collocation matrix of L = M_delta + c - 2*phi on an N-point grid.
struct OperatorMatrix {
    fourier::Grid grid;
    wave::WaveParams params;
    Eigen::MatrixXd entries;

    int size() const { return static_cast<int>(entries.rows()); }
};

struct EigResult {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // columns, orthonormal
};

struct SpectrumReport {
    int N = 0;
    double tol = 0.0;              // zero-eigenvalue tolerance actually used
    std::vector<double> eigenvalues;
    int n_neg = 0;
    int n_zero = 0;
    double gap = 0.0;              // smallest |eigenvalue| outside the zero group
    double kernel_residual = 0.0;  // ||L phi'|| / ||phi'||
    double cos_similarity = 0.0;   // |<v_zero, phi'>| / norms
    double truncation_drift = 0.0; // lowest-10 eigenvalue shift, N vs 2N
    bool negative_even = false;
    bool zero_odd = false;
};

struct GalileanReport {
    double a = 0.0;
    double sigma = 0.0;
    double residual = 0.0;         // max |M phi_s + sigma phi_s - phi_s^2|
    double min_shifted = 0.0;      // min of a + phi on a 4N grid
    bool positivity_ok = false;
    double minus_phi_half = 0.0;   // -phi(L/2)
    double threshold_speed = 0.0;  // (2 pi / L) * v
    bool precond_center = false;   // a > -phi(L/2)
    bool precond_speed = false;    // a > (2 pi / L) * v
};

// Minor values are normalized by the larger of the two products, so they are
// dimensionless; minors in the deep coefficient tail are degenerate and carry
// only rounding noise, hence the small slack on the nonstrict family.
struct PF2Report {
    int window = 0;
    double alpha_min = 0.0;
    double min_minor = 0.0;           // over minors required strictly positive
    double min_nonstrict_minor = 0.0; // over minors only required nonnegative
    bool pass = false;
};

OperatorMatrix build_operator(const wave::WaveParams& params, int N);

// Same operator built from the shifted pair (sigma, a + phi); a_perturb is
// added to the profile shift only, for sensitivity checks.
OperatorMatrix build_operator_shifted(const wave::WaveParams& params, int N,
                                      double a_perturb = 0.0);

EigResult eig_sym(const Eigen::MatrixXd& matrix);

SpectrumReport spectrum_report(const wave::WaveParams& params, int N,
                               double tol = -1.0);

GalileanReport galilean_shift(const wave::WaveParams& params, int N = 256,
                              int refine = 4);

// alpha holds the nonnegative-index half of an even sequence: alpha[i] for
// |n| = i, i = 0..2M.
PF2Report pf2_check(const std::vector<double>& alpha, int window);

// Fourier coefficients of the shifted profile, alpha[i] = phihat_sigma(i),
// i = 0..2M (alpha[0] includes the Galilean constant a).
std::vector<double> shifted_coefficients(const wave::WaveParams& params, int window);

double operator_identity_check(const wave::WaveParams& params, int N,
                               double a_perturb = 0.0);

} // namespace ilw::linop
