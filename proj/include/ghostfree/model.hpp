#pragma once

// The two-dimensional ghost oscillator
//     h0 = p_x^2 - p_y^2 + nu^2 x^2 + Omega y^2 + g x y
// together with its four solution branches, its spectrum, and the chain of
// non-Hermitian similarity maps eta0, eta1, eta2 that removes the ghost.

#include <optional>
#include <utility>
#include <vector>

#include "ghostfree/gauss_factors.hpp"
#include "ghostfree/gaussian_states.hpp"
#include "ghostfree/numeric_policy.hpp"
#include "ghostfree/operator_algebra.hpp"

namespace ghostfree {

struct ModelParams {
    double nu = 0.0;
    double omega = 0.0;  // enters linearly as Omega y^2
    double g = 0.0;
};

struct SectorLabel {
    int eps = 1;
    int eta = 1;

    friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
};

// (1, 1), (1, -1), (-1, 1), (-1, -1)
const std::vector<SectorLabel>& all_sectors();

struct SectorFrame {
    Complex sigma;   // eps * sqrt(g^2 - 4 nu^2 Omega)
    Complex Sigma;   // 2 eta * sqrt(nu^2 - Omega + sigma)
    Complex alpha;
    Complex beta;
    Complex gamma;
    SectorLabel label;
    ModelParams params;
    bool is_real = false;

    Complex ground_energy() const { return alpha - beta; }
};

// Throws Error(SigmaZero) when nu^2 - Omega + sigma vanishes.
SectorFrame sector_params(const ModelParams& p, SectorLabel s,
                          const NumericPolicy& policy = default_policy);

// phi0 = exp(-alpha x^2/2 - beta y^2/2 + gamma x y), log_norm = 0.
GaussianState ground_state(const SectorFrame& f);

struct SpectrumLevel {
    int N = 0;
    std::optional<int> n;  // empty for the diagonal level E_NN
    int branch = 0;        // +1 / -1 for E_Nn^pm, 0 for E_NN
    Complex energy;
    bool is_real = false;
};

// E_Nn^pm = (N+1)(alpha-beta) +- (2-2n+N) sqrt((alpha+beta)^2 - 4 gamma^2).
// Defined for any integer n so the index reflection n -> N+2-n can be probed.
Complex level_energy(const SectorFrame& f, int N, int n, int branch);

// All levels with 0 <= N <= n_max: the pm pairs for n = 1..floor(N/2) and
// the diagonal level (1+N)(alpha-beta) for even N. Identical (N, E) pairs
// are reported once.
std::vector<SpectrumLevel> energy_levels(const SectorFrame& f, int n_max,
                                         const NumericPolicy& policy = default_policy);

WeylQuadraticForm build_h0(const ModelParams& p);

// Generators G with eta = exp(G).
WeylQuadraticForm eta0_generator(double delta, double lambda);   // -(delta/2) x^2 - (lambda/2) y^2
WeylQuadraticForm eta1_generator(double kappa, double xi);       // (kappa/2) p_x^2 + (xi/2) p_y^2
WeylQuadraticForm eta2_generator(double mu, double tau);         // mu p_x p_y + tau x y
WeylQuadraticForm eta_minus_generator(double zeta_minus);        // zeta_- p_x p_y
WeylQuadraticForm eta_z_generator(double zeta_z);                // ln(zeta_z) i (p_x x + y p_y)/2
WeylQuadraticForm eta_plus_generator(double zeta_plus);          // zeta_+ x y

// Closed-form adjoint actions.
CanonicalMap build_eta0(double delta, double lambda);
CanonicalMap build_eta1(double kappa, double xi);
CanonicalMap build_eta2(double mu, double tau, const NumericPolicy& policy = default_policy);
CanonicalMap build_eta_minus(double zeta_minus);
CanonicalMap build_eta_z(double zeta_z);
CanonicalMap build_eta_plus(double zeta_plus);

// eta_+ eta_z eta_- as a single map.
CanonicalMap compose_gauss_factors(const GaussFactors& f, const NumericPolicy& policy = default_policy);

struct ChainParams {
    double delta = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    double xi = 0.0;
    double mu = 0.0;
    double tau = 0.0;

    // theta^2 = mu tau; theta itself may be imaginary.
    Complex theta() const { return std::sqrt(Complex(mu * tau)); }
};

// kappa = delta / (delta^2 - nu^2), xi = lambda / (lambda^2 + Omega): the
// choices that cancel the i p_x x and i p_y y terms of eta1 H1 eta1^-1.
// Throws Error(SingularChoice) on delta^2 = nu^2 or lambda^2 = -Omega.
std::pair<double, double> hermitising_choices(double nu, double omega, double delta, double lambda,
                                              const NumericPolicy& policy = default_policy);

// Closed forms of the transformed Hamiltonians, written out term by term.
WeylQuadraticForm closed_form_H1(const ModelParams& p, double delta, double lambda);
WeylQuadraticForm closed_form_H2(const ModelParams& p, double delta, double lambda);
WeylQuadraticForm closed_form_h3(const ModelParams& p, double delta, double lambda,
                             const NumericPolicy& policy = default_policy);

// Each derivation runs the map chain on h0 and cross-checks it against the
// closed form; Error(DerivationMismatch) if they differ by more than
// derived_tol (relative to the largest coefficient).
WeylQuadraticForm derive_H1(const ModelParams& p, double delta, double lambda,
                            const NumericPolicy& policy = default_policy);
WeylQuadraticForm derive_H2(const ModelParams& p, double delta, double lambda,
                            const NumericPolicy& policy = default_policy);
// Requires the Omega constraint and |Theta| < 1 (see eta2_constraints).
WeylQuadraticForm derive_h3(const ModelParams& p, double delta, double lambda,
                            const NumericPolicy& policy = default_policy);

struct H3Constraints {
    double theta = 0.0;  // Theta, must satisfy |Theta| < 1
    double b1 = 0.0;
    double b2_plus = 0.0;
    double b2_minus = 0.0;
    double tau = 0.0;
    double mu = 0.0;
    bool omega_consistent = false;
    std::optional<double> delta_plus;
    std::optional<double> delta_minus;
};

// Theta = g delta^2 / [(delta^2 - nu^2)(nu^2 - delta lambda)], no range check.
double theta_value(const ModelParams& p, double delta, double lambda);

// Omega implied by (nu, delta, lambda): lambda [nu^2 - delta (delta + lambda)] / delta.
double constrained_omega(double nu, double delta, double lambda);

// Parameters of eta2 that make eta2 H2 eta2^-1 Hermitian:
//     tau = -(delta^2 - nu^2)/(2 delta) artanh Theta,
//     mu  = -delta / (2 (delta^2 - nu^2)) artanh Theta.
// Throws ThetaOutOfRange, OmegaInconsistent, SingularChoice.
H3Constraints eta2_constraints(const ModelParams& p, double delta, double lambda,
                               const NumericPolicy& policy = default_policy);

// Roots in delta of the Omega constraint:
//     delta_pm = [+-sqrt(4 lambda^2 nu^2 + (lambda^2 + Omega)^2) - lambda^2 - Omega] / (2 lambda).
// Throws Error(LambdaZero).
std::pair<double, double> delta_branches(double lambda, double nu, double omega);

// Full chain parameters: kappa, xi from hermitising_choices and mu, tau
// from eta2_constraints.
ChainParams h3_chain(const ModelParams& p, double delta, double lambda,
                     const NumericPolicy& policy = default_policy);

// Exponents of psi2 = eta1 eta0 phi0 by the closed forms; throws
// Error(SingularExponent) when the common denominator vanishes.
struct GaussianParameters {
    Complex alpha;
    Complex beta;
    Complex gamma;
};
GaussianParameters hat_parameters(const SectorFrame& f, double delta, double lambda,
                                  const NumericPolicy& policy = default_policy);

// Exponents of phi3 = eta2 psi2 by the closed forms in terms of the hat
// parameters; throws Error(ChiSingular).
GaussianParameters check_parameters(const GaussianParameters& hat, double mu, double tau,
                                    const NumericPolicy& policy = default_policy);

// State maps for the chain, for use with metric_inner_product.
StateMap eta0_state_map(double delta, double lambda);
StateMap eta1_state_map(double kappa, double xi, const NumericPolicy& policy = default_policy);
StateMap eta2_state_map(double mu, double tau, const NumericPolicy& policy = default_policy);

// psi1 = eta0 phi0, psi2 = eta1 psi1 (hermitising kappa, xi), phi3 = eta2 psi2.
GaussianState psi1_state(const SectorFrame& f, double delta, double lambda);
GaussianState psi2_state(const SectorFrame& f, double delta, double lambda,
                         const NumericPolicy& policy = default_policy);
GaussianState phi3_state(const SectorFrame& f, const ChainParams& chain,
                         const NumericPolicy& policy = default_policy);

} // namespace ghostfree
