#pragma once

// Two-dimensional Gaussian wavefunctions
//     psi(x, y) = exp(-(1/2) q^T A q + log_norm),  q = (x, y),
// with A = [[alpha, -gamma], [-gamma, beta]], and the action of the
// similarity factors on them. log_norm is carried through every step so that
// overlaps are absolute numbers rather than rays.

#include <functional>
#include <optional>
#include <vector>

#include "ghostfree/gauss_factors.hpp"
#include "ghostfree/numeric_policy.hpp"
#include "ghostfree/operator_algebra.hpp"

namespace ghostfree {

class GaussianState {
public:
    GaussianState() : a_(Mat2::Identity()) {}
    // Throws Error(InvalidArgument) if `a` is not symmetric.
    explicit GaussianState(const Mat2& a, Complex log_norm = 0.0);

    static GaussianState from_parameters(Complex alpha, Complex beta, Complex gamma,
                                         Complex log_norm = 0.0);

    const Mat2& exponent() const noexcept { return a_; }
    Complex log_norm() const noexcept { return log_norm_; }

    Complex alpha() const { return a_(0, 0); }
    Complex beta() const { return a_(1, 1); }
    Complex gamma() const { return -a_(0, 1); }

    // Re(A) positive definite; for real parameters alpha > 0, beta > 0,
    // alpha beta - gamma^2 > 0.
    bool is_normalisable(const NumericPolicy& policy = default_policy) const;

private:
    Mat2 a_;
    Complex log_norm_{0.0};
};

// Multiplication by exp(-(1/2) q^T K q): A -> A + K.
GaussianState multiply_position_gaussian(const Mat2& k, const GaussianState& psi);

// exp(+(1/2) p^T K p) acting through the Fourier transform:
// A -> (A^-1 - K)^-1, log_norm -= (1/2) log det(1 - A K).
// Throws Error(SingularExponent) when det A or det(A^-1 - K) vanishes.
GaussianState multiply_momentum_gaussian(const Mat2& k, const GaussianState& psi,
                                         const NumericPolicy& policy = default_policy);

// exp(ln(zeta) S_z): psi(q) -> sqrt(zeta) psi(sqrt(zeta) q), so A -> zeta A
// and log_norm += (1/2) log zeta.
GaussianState scale_state(Complex zeta, const GaussianState& psi);

// exp(mu p_x p_y + tau x y) applied factor by factor. Throws
// Error(ChiSingular) at the pole |chi| <= region_tol.
GaussianState apply_eta2(double mu, double tau, const GaussianState& psi,
                         const NumericPolicy& policy = default_policy);

struct EigenResidual {
    Mat2 quadratic;   // Q: coefficient matrix of q^T Q q in (H psi) / psi
    Complex scalar;   // r = t - E
    double max_abs() const;
    bool is_eigenstate(double tol) const { return max_abs() <= tol; }
};

// (H psi)/psi = q^T Q q + t for a quadratic H; returns Q and t - energy.
EigenResidual eigen_residual(const WeylQuadraticForm& h, const GaussianState& psi, Complex energy);

// Integral of |psi|^2 over the plane, or nullopt when it diverges.
std::optional<double> norm_squared(const GaussianState& psi,
                                   const NumericPolicy& policy = default_policy);

// <bra|ket> = integral of conj(bra) ket, or nullopt when it diverges.
std::optional<Complex> gaussian_overlap(const GaussianState& bra, const GaussianState& ket,
                                        const NumericPolicy& policy = default_policy);

using StateMap = std::function<GaussianState(const GaussianState&)>;

// <eta phi' | eta phi> = <phi' | rho phi> with rho = eta^dagger eta, where
// eta is the chain applied front to back. nullopt when divergent.
std::optional<Complex> metric_inner_product(const std::vector<StateMap>& chain,
                                            const GaussianState& phi, const GaussianState& phi_prime,
                                            const NumericPolicy& policy = default_policy);

} // namespace ghostfree
