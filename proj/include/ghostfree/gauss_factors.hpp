#pragma once

#include <complex>

#include "ghostfree/numeric_policy.hpp"

namespace ghostfree {

// Triangular factorisation of exp(mu S_- + tau S_+) with S_- = p_x p_y,
// S_+ = x y, S_z = i (p_x x + y p_y) / 2:
//     exp(mu S_- + tau S_+) = exp(zeta_plus S_+) exp(ln(zeta_z) S_z) exp(zeta_minus S_-).
// All three factors are even functions of theta = sqrt(mu tau) and are
// evaluated from mu * tau directly, so mu tau < 0 is handled without complex
// arithmetic.
struct GaussFactors {
    double zeta_z = 1.0;
    double zeta_plus = 0.0;
    double zeta_minus = 0.0;

    // Scalar produced when the exp(zeta_minus S_-) factor acts on a Gaussian
    // with parameters (alpha, beta, gamma):
    //     chi = zeta_-^2 (gamma^2 - alpha beta) + 2 gamma zeta_- + 1.
    std::complex<double> chi(std::complex<double> alpha, std::complex<double> beta,
                             std::complex<double> gamma) const {
        return zeta_minus * zeta_minus * (gamma * gamma - alpha * beta) + 2.0 * gamma * zeta_minus + 1.0;
    }
};

// Throws Error(SingularExponent) when cosh(theta) vanishes (mu tau = -(pi/2 + k pi)^2).
GaussFactors gauss_decompose(double mu, double tau, const NumericPolicy& policy = default_policy);

} // namespace ghostfree
