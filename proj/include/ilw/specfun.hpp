#pragma once

#include <stdexcept>

namespace ilw::specfun {

// Elliptic modulus k together with its complement k' = sqrt(1 - k^2).
// Valid range is the open interval (0, 1).
struct EllipticModulus {
    double k;
    double kprime;
    explicit EllipticModulus(double k_);
};

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

// Carlson symmetric forms. Arguments must be nonnegative with at most one
// zero (rf) and z > 0 (rd).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

// Complete integrals of the first and second kind, modulus convention
// K(k) = F(pi/2, k). Valid for 0 <= k < 1.
double complete_K(double k);
double complete_E(double k);

// K evaluated at the complement of kc, i.e. K(sqrt(1 - kc^2)), without
// forming the complement (which rounds to 1 for tiny kc). Valid for
// 0 < kc <= 1.
double complete_K_comp(double kc);

// Incomplete integrals for amplitude psi in [0, pi/2] shapes used here.
double incomplete_F(double psi, double k);
double incomplete_E(double psi, double k);

// Jacobi elliptic functions sn, cn, dn of real argument, 0 <= k < 1.
JacobiTriple jacobi_sn_cn_dn(double u, double k);

// Jacobi zeta function Z(u; k) = E(am(u), k) - (E/K) u.
double jacobi_zeta(double u, double k);

// Variants evaluated at the complement of kc, i.e. modulus sqrt(1 - kc^2),
// carried out without forming that complement. They stay accurate when the
// effective modulus is within machine epsilon of 1. Valid for 0 < kc <= 1.
double complete_E_comp(double kc);
JacobiTriple jacobi_sn_cn_dn_comp(double u, double kc);
double jacobi_zeta_comp(double u, double kc);

// The nome q = exp(-pi K(k')/K(k)), 0 < k < 1.
double nome(double k);

// Heuman lambda function Lambda_0(psi, k), 0 < k < 1, psi in [0, pi/2].
double heuman_lambda(double psi, double k);

} // namespace ilw::specfun
