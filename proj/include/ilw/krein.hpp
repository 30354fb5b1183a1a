#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ilw/linop.hpp"
#include "ilw/wave.hpp"

namespace ilw::krein {

enum class Verdict { LinearlyStable, LinearlyUnstable, Inconclusive };

const char* verdict_name(Verdict v);

struct IPair {
    double direct = 0.0;  // <L^{-1} 1, 1> by even-restricted solve
    double closed = 0.0;  // L^2 / (c L + 2 dN/dc)
};

struct DResult {
    Eigen::Matrix2d D;           // (1/I) [[<L^{-1}p,p>, <L^{-1}p,1>], [., <L^{-1}1,1>]]
    double det_direct = 0.0;
    double det_closed = 0.0;
    double b_phiphi = 0.0;       // <L^{-1} phi, phi>
    double b_phi1 = 0.0;         // <L^{-1} phi, 1>
    double b_11 = 0.0;           // <L^{-1} 1, 1>
    double b_phiphi_closed = 0.0;
    double b_phi1_closed = 0.0;
    double identity_residual = 0.0;  // max |1 - (c h1 - 2 hphi)|
};

struct P3Result {
    double direct = 0.0;       // <L dphi/dk, dphi/dk>
    double closed = 0.0;       // -(1/2) c'(k) N'(k)
    double rel_gap = 0.0;
    double field_residual = 0.0;  // max |L dphi/dk + c' phi + A'|
};

struct VerdictResult {
    Verdict verdict = Verdict::Inconclusive;
    int n_I = 0;
    int n_D = 0;
    int K_Ham = 0;
    bool closed_form_regime = false;
    std::string reason;
};

struct KreinReport {
    int N = 0;
    double k = 0.0;
    double c = 0.0;
    double I_direct = 0.0;
    double I_closed = 0.0;
    DResult D;
    P3Result p3;
    int n_L = 0;
    int n_zero = 0;
    int n_I = 0;
    int n_D = 0;
    int K_Ham = 0;
    bool closed_form_regime = false;
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
};

// Solve L x = rhs restricted to the even-parity block (the kernel of L is
// odd, so the restriction is invertible for admissible waves).
std::vector<double> solve_even(const linop::OperatorMatrix& op,
                               const std::vector<double>& rhs);

IPair compute_I(const wave::WaveParams& params, int N);

DResult compute_D(const wave::WaveParams& params, int N);

P3Result p3_check(const wave::WaveParams& params, int N);

// Conserved functional c'(k) E0(u) + A'(k) Em1(u) on grid samples.
double compute_Mk(const std::vector<double>& u, const fourier::Grid& g,
                  double dcdk, double dAdk);

VerdictResult krein_verdict(int n_L, int n_zero, double I,
                            const Eigen::Matrix2d& D, double c);

KreinReport krein_report(const wave::WaveParams& params, int N);

} // namespace ilw::krein
