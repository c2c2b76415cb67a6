#include "ghostfree/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghostfree/errors.hpp"
#include "ghostfree/even_functions.hpp"

namespace ghostfree {

namespace {

const Complex kI(0.0, 1.0);

constexpr int X = index(Coord::x);
constexpr int Y = index(Coord::y);
constexpr int PX = index(Coord::px);
constexpr int PY = index(Coord::py);

bool near_zero(double v, double tol) { return std::abs(v) <= tol; }

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

void check_agreement(const WeylQuadraticForm& chain, const WeylQuadraticForm& closed, const char* name,
                     const NumericPolicy& policy) {
    const double scale = std::max(1.0, max_abs(chain.matrix()));
    const double diff = max_abs(chain.matrix() - closed.matrix());
    if (diff > policy.derived_tol * scale) {
        throw Error(ErrorKind::DerivationMismatch,
                    std::string(name) + ": chain and closed form differ by " + std::to_string(diff));
    }
}

Mat2 diag2(Complex a, Complex b) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

} // namespace

const std::vector<SectorLabel>& all_sectors() {
    static const std::vector<SectorLabel> sectors{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    return sectors;
}

SectorFrame sector_params(const ModelParams& p, SectorLabel s, const NumericPolicy& policy) {
    if ((s.eps != 1 && s.eps != -1) || (s.eta != 1 && s.eta != -1)) {
        throw Error(ErrorKind::InvalidArgument, "sector labels must be +1 or -1");
    }
    const double nu2 = p.nu * p.nu;
    SectorFrame f;
    f.label = s;
    f.params = p;
    f.sigma = static_cast<double>(s.eps) * std::sqrt(Complex(p.g * p.g - 4.0 * nu2 * p.omega));
    const Complex inner = nu2 - p.omega + f.sigma;
    const double scale = std::max({1.0, nu2, std::abs(p.omega), std::abs(f.sigma)});
    if (std::abs(inner) <= policy.construction_tol * scale) {
        throw Error(ErrorKind::SigmaZero, "nu^2 - Omega + sigma vanishes");
    }
    f.Sigma = 2.0 * static_cast<double>(s.eta) * std::sqrt(inner);
    f.alpha = (2.0 * nu2 + f.sigma) / f.Sigma;
    f.beta = (2.0 * p.omega - f.sigma) / f.Sigma;
    f.gamma = -p.g / f.Sigma;
    f.is_real = std::abs(f.alpha.imag()) <= policy.region_tol && std::abs(f.beta.imag()) <= policy.region_tol &&
                std::abs(f.gamma.imag()) <= policy.region_tol;
    return f;
}

GaussianState ground_state(const SectorFrame& f) {
    return GaussianState::from_parameters(f.alpha, f.beta, f.gamma);
}

Complex level_energy(const SectorFrame& f, int N, int n, int branch) {
    const Complex root = std::sqrt((f.alpha + f.beta) * (f.alpha + f.beta) - 4.0 * f.gamma * f.gamma);
    return static_cast<double>(N + 1) * (f.alpha - f.beta) +
           static_cast<double>(branch) * static_cast<double>(2 - 2 * n + N) * root;
}

std::vector<SpectrumLevel> energy_levels(const SectorFrame& f, int n_max, const NumericPolicy& policy) {
    if (n_max < 0) {
        throw Error(ErrorKind::InvalidArgument, "n_max must be non-negative");
    }
    std::vector<SpectrumLevel> levels;
    auto push = [&](int N, std::optional<int> n, int branch, Complex e) {
        const double tol = policy.region_tol * std::max(1.0, std::abs(e));
        for (auto it = levels.rbegin(); it != levels.rend() && it->N == N; ++it) {
            if (std::abs(it->energy - e) <= tol) return;
        }
        levels.push_back({N, n, branch, e, std::abs(e.imag()) <= tol});
    };
    for (int N = 0; N <= n_max; ++N) {
        for (int n = 1; n <= N / 2; ++n) {
            push(N, n, +1, level_energy(f, N, n, +1));
            push(N, n, -1, level_energy(f, N, n, -1));
        }
        if (N % 2 == 0) {
            push(N, std::nullopt, 0, static_cast<double>(N + 1) * (f.alpha - f.beta));
        }
    }
    return levels;
}

WeylQuadraticForm build_h0(const ModelParams& p) {
    WeylQuadraticForm h;
    h.add_square(Coord::px, 1.0)
        .add_square(Coord::py, -1.0)
        .add_square(Coord::x, p.nu * p.nu)
        .add_square(Coord::y, p.omega)
        .add_cross(Coord::x, Coord::y, p.g);
    return h;
}

WeylQuadraticForm eta0_generator(double delta, double lambda) {
    WeylQuadraticForm g;
    g.add_square(Coord::x, -0.5 * delta).add_square(Coord::y, -0.5 * lambda);
    return g;
}

WeylQuadraticForm eta1_generator(double kappa, double xi) {
    WeylQuadraticForm g;
    g.add_square(Coord::px, 0.5 * kappa).add_square(Coord::py, 0.5 * xi);
    return g;
}

WeylQuadraticForm eta2_generator(double mu, double tau) {
    WeylQuadraticForm g;
    g.add_cross(Coord::px, Coord::py, mu).add_cross(Coord::x, Coord::y, tau);
    return g;
}

WeylQuadraticForm eta_minus_generator(double zeta_minus) { return eta2_generator(zeta_minus, 0.0); }

WeylQuadraticForm eta_z_generator(double zeta_z) {
    // i/2 (p_x x + y p_y): the ordering constants -i/2 and +i/2 cancel.
    const Complex c = 0.5 * kI * std::log(zeta_z);
    WeylQuadraticForm g;
    g.add_cross(Coord::x, Coord::px, c).add_cross(Coord::y, Coord::py, c);
    return g;
}

WeylQuadraticForm eta_plus_generator(double zeta_plus) { return eta2_generator(0.0, zeta_plus); }

CanonicalMap build_eta0(double delta, double lambda) {
    Mat4 s = Mat4::Identity();
    s(PX, X) = -kI * delta;
    s(PY, Y) = -kI * lambda;
    return CanonicalMap(s);
}

CanonicalMap build_eta1(double kappa, double xi) {
    Mat4 s = Mat4::Identity();
    s(X, PX) = -kI * kappa;
    s(Y, PY) = -kI * xi;
    return CanonicalMap(s);
}

CanonicalMap build_eta2(double mu, double tau, const NumericPolicy& policy) {
    const double s2 = mu * tau;
    const double c = cosh_sqrt(s2);
    const double sh = sinhc_sqrt(s2, policy.series_cutoff);
    Mat4 s = Mat4::Zero();
    s(X, X) = c;
    s(X, PY) = -kI * mu * sh;
    s(Y, Y) = c;
    s(Y, PX) = -kI * mu * sh;
    s(PX, PX) = c;
    s(PX, Y) = kI * tau * sh;
    s(PY, PY) = c;
    s(PY, X) = kI * tau * sh;
    return CanonicalMap(s);
}

CanonicalMap build_eta_minus(double zeta_minus) {
    Mat4 s = Mat4::Identity();
    s(X, PY) = -kI * zeta_minus;
    s(Y, PX) = -kI * zeta_minus;
    return CanonicalMap(s);
}

CanonicalMap build_eta_z(double zeta_z) {
    if (!(zeta_z > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "zeta_z must be positive");
    }
    const double r = std::sqrt(zeta_z);
    Mat4 s = Mat4::Zero();
    s(X, X) = r;
    s(Y, Y) = r;
    s(PX, PX) = 1.0 / r;
    s(PY, PY) = 1.0 / r;
    return CanonicalMap(s);
}

CanonicalMap build_eta_plus(double zeta_plus) {
    Mat4 s = Mat4::Identity();
    s(PX, Y) = kI * zeta_plus;
    s(PY, X) = kI * zeta_plus;
    return CanonicalMap(s);
}

GaussFactors gauss_decompose(double mu, double tau, const NumericPolicy& policy) {
    const double s = mu * tau;
    const double c = cosh_sqrt(s);
    if (std::abs(c) <= policy.region_tol) {
        throw Error(ErrorKind::SingularExponent, "cosh(sqrt(mu tau)) vanishes");
    }
    const double th = tanhc_sqrt(s, policy.series_cutoff);
    GaussFactors f;
    f.zeta_z = 1.0 / (c * c);
    f.zeta_plus = tau * th;
    f.zeta_minus = mu * th;
    return f;
}

CanonicalMap compose_gauss_factors(const GaussFactors& f, const NumericPolicy& policy) {
    return compose_maps(build_eta_plus(f.zeta_plus),
                        compose_maps(build_eta_z(f.zeta_z), build_eta_minus(f.zeta_minus), policy), policy);
}

std::pair<double, double> hermitising_choices(double nu, double omega, double delta, double lambda,
                                              const NumericPolicy& policy) {
    const double dk = delta * delta - nu * nu;
    const double dx = lambda * lambda + omega;
    if (near_zero(dk, policy.region_tol)) {
        throw Error(ErrorKind::SingularChoice, "delta^2 = nu^2");
    }
    if (near_zero(dx, policy.region_tol)) {
        throw Error(ErrorKind::SingularChoice, "lambda^2 = -Omega");
    }
    return {delta / dk, lambda / dx};
}

WeylQuadraticForm closed_form_H1(const ModelParams& p, double delta, double lambda) {
    // The y-momentum cross term pairs p_y with y, not with x.
    WeylQuadraticForm h;
    h.add_square(Coord::px, 1.0)
        .add_square(Coord::py, -1.0)
        .add_square(Coord::x, p.nu * p.nu - delta * delta)
        .add_square(Coord::y, p.omega + lambda * lambda)
        .add_cross(Coord::x, Coord::y, p.g)
        .add_cross(Coord::px, Coord::x, -2.0 * kI * delta)
        .add_cross(Coord::py, Coord::y, 2.0 * kI * lambda);
    return h;
}

WeylQuadraticForm closed_form_H2(const ModelParams& p, double delta, double lambda) {
    const double nu2 = p.nu * p.nu;
    const double a = nu2 - delta * delta;
    const double b = lambda * lambda + p.omega;
    // The p_y x term carries -i g lambda / (lambda^2 + Omega); eta1 sends
    // g x y to g (x - i kappa p_x)(y - i xi p_y), whose x p_y part is -i g xi.
    WeylQuadraticForm h;
    h.add_square(Coord::px, nu2 / a)
        .add_square(Coord::py, -p.omega / b)
        .add_square(Coord::x, a)
        .add_square(Coord::y, b)
        .add_cross(Coord::x, Coord::y, p.g)
        .add_cross(Coord::px, Coord::py, p.g * delta * lambda / (a * b))
        .add_cross(Coord::px, Coord::y, kI * p.g * delta / a)
        .add_cross(Coord::py, Coord::x, -kI * p.g * lambda / b);
    return h;
}

double theta_value(const ModelParams& p, double delta, double lambda) {
    const double nu2 = p.nu * p.nu;
    return p.g * delta * delta / ((delta * delta - nu2) * (nu2 - delta * lambda));
}

double constrained_omega(double nu, double delta, double lambda) {
    return lambda * (nu * nu - delta * (delta + lambda)) / delta;
}

H3Constraints eta2_constraints(const ModelParams& p, double delta, double lambda, const NumericPolicy& policy) {
    const double nu2 = p.nu * p.nu;
    const double dk = delta * delta - nu2;
    if (near_zero(delta, policy.region_tol)) {
        throw Error(ErrorKind::SingularChoice, "delta = 0");
    }
    if (near_zero(dk, policy.region_tol)) {
        throw Error(ErrorKind::SingularChoice, "delta^2 = nu^2");
    }
    H3Constraints c;
    if (!near_zero(lambda, policy.region_tol)) {
        const auto [plus, minus] = delta_branches(lambda, p.nu, p.omega);
        c.delta_plus = plus;
        c.delta_minus = minus;
    }
    if (near_zero(nu2 - delta * lambda, policy.region_tol)) {
        throw Error(ErrorKind::ThetaOutOfRange, "|Theta| >= 1 (nu^2 = delta lambda, Theta unbounded)");
    }
    c.theta = theta_value(p, delta, lambda);
    if (!(std::abs(c.theta) < 1.0)) {
        throw Error(ErrorKind::ThetaOutOfRange, "|Theta| >= 1 (Theta = " + std::to_string(c.theta) + ")");
    }
    const double omega_c = constrained_omega(p.nu, delta, lambda);
    c.omega_consistent = std::abs(omega_c - p.omega) <= policy.derived_tol * std::max(1.0, std::abs(p.omega));
    if (!c.omega_consistent) {
        throw Error(ErrorKind::OmegaInconsistent,
                    "Omega = " + std::to_string(p.omega) + " but lambda [nu^2 - delta(delta+lambda)]/delta = " +
                        std::to_string(omega_c));
    }
    const double at = std::atanh(c.theta);
    c.tau = -dk / (2.0 * delta) * at;
    c.mu = -delta / (2.0 * dk) * at;
    c.b1 = -delta * (delta + lambda) / dk;
    const double r = (delta * lambda - nu2) / dk * std::sqrt(1.0 - c.theta * c.theta);
    c.b2_plus = r + 1.0;
    c.b2_minus = r - 1.0;
    return c;
}

std::pair<double, double> delta_branches(double lambda, double nu, double omega) {
    if (lambda == 0.0) {
        throw Error(ErrorKind::LambdaZero, "delta branches need lambda != 0");
    }
    const double l2 = lambda * lambda;
    const double root = std::sqrt(4.0 * l2 * nu * nu + (l2 + omega) * (l2 + omega));
    return {(root - l2 - omega) / (2.0 * lambda), (-root - l2 - omega) / (2.0 * lambda)};
}

ChainParams h3_chain(const ModelParams& p, double delta, double lambda, const NumericPolicy& policy) {
    const H3Constraints c = eta2_constraints(p, delta, lambda, policy);
    const auto [kappa, xi] = hermitising_choices(p.nu, p.omega, delta, lambda, policy);
    return {delta, lambda, kappa, xi, c.mu, c.tau};
}

WeylQuadraticForm closed_form_h3(const ModelParams& p, double delta, double lambda, const NumericPolicy& policy) {
    const H3Constraints c = eta2_constraints(p, delta, lambda, policy);
    const double dk = delta * delta - p.nu * p.nu;
    const double pos = dk * dk / (2.0 * delta * delta);
    WeylQuadraticForm h;
    h.add_square(Coord::px, 0.5 * (c.b1 + c.b2_plus))
        .add_square(Coord::py, 0.5 * (c.b1 - c.b2_plus))
        .add_square(Coord::x, pos * (c.b1 + c.b2_minus))
        .add_square(Coord::y, pos * (c.b1 - c.b2_minus))
        .add_cross(Coord::px, Coord::py, p.g * delta * delta / (dk * dk))
        .add_cross(Coord::x, Coord::y, p.g);
    return h;
}

WeylQuadraticForm derive_H1(const ModelParams& p, double delta, double lambda, const NumericPolicy& policy) {
    const WeylQuadraticForm h1 = transform_quadratic(build_eta0(delta, lambda), build_h0(p), policy);
    check_agreement(h1, closed_form_H1(p, delta, lambda), "H1", policy);
    return h1;
}

WeylQuadraticForm derive_H2(const ModelParams& p, double delta, double lambda, const NumericPolicy& policy) {
    const auto [kappa, xi] = hermitising_choices(p.nu, p.omega, delta, lambda, policy);
    const CanonicalMap chain = compose_maps(build_eta1(kappa, xi), build_eta0(delta, lambda), policy);
    const WeylQuadraticForm h2 = transform_quadratic(chain, build_h0(p), policy);
    check_agreement(h2, closed_form_H2(p, delta, lambda), "H2", policy);
    return h2;
}

WeylQuadraticForm derive_h3(const ModelParams& p, double delta, double lambda, const NumericPolicy& policy) {
    const ChainParams cp = h3_chain(p, delta, lambda, policy);
    CanonicalMap chain = compose_maps(build_eta1(cp.kappa, cp.xi), build_eta0(delta, lambda), policy);
    chain = compose_maps(build_eta2(cp.mu, cp.tau, policy), chain, policy);
    const WeylQuadraticForm h3 = transform_quadratic(chain, build_h0(p), policy);
    check_agreement(h3, closed_form_h3(p, delta, lambda, policy), "h3", policy);
    return h3;
}

GaussianParameters hat_parameters(const SectorFrame& f, double delta, double lambda,
                                  const NumericPolicy& policy) {
    const double nu2 = f.params.nu * f.params.nu;
    const double om = f.params.omega;
    const Complex a = f.alpha, b = f.beta, c = f.gamma;
    const Complex denom = (a * delta + nu2) * (om - b * lambda) + c * c * delta * lambda;
    if (std::abs(denom) <= policy.region_tol) {
        throw Error(ErrorKind::SingularExponent, "hat-parameter denominator vanishes");
    }
    const double dk = delta * delta - nu2;
    const double dx = lambda * lambda + om;
    return {((a + delta) * (b * lambda - om) - c * c * lambda) * dk / denom,
            ((b + lambda) * (a * delta + nu2) - c * c * delta) * dx / denom,
            -c * dk * dx / denom};
}

GaussianParameters check_parameters(const GaussianParameters& hat, double mu, double tau,
                                    const NumericPolicy& policy) {
    const GaussFactors f = gauss_decompose(mu, tau, policy);
    const Complex chi = f.chi(hat.alpha, hat.beta, hat.gamma);
    if (std::abs(chi) <= policy.region_tol) {
        throw Error(ErrorKind::ChiSingular, "chi = " + std::to_string(std::abs(chi)));
    }
    const Complex d = hat.gamma * hat.gamma - hat.alpha * hat.beta;
    return {hat.alpha * f.zeta_z / chi, hat.beta * f.zeta_z / chi,
            (f.zeta_minus * d + hat.gamma) / chi * f.zeta_z + f.zeta_plus};
}

StateMap eta0_state_map(double delta, double lambda) {
    return [=](const GaussianState& psi) { return multiply_position_gaussian(diag2(delta, lambda), psi); };
}

StateMap eta1_state_map(double kappa, double xi, const NumericPolicy& policy) {
    return [=](const GaussianState& psi) { return multiply_momentum_gaussian(diag2(kappa, xi), psi, policy); };
}

StateMap eta2_state_map(double mu, double tau, const NumericPolicy& policy) {
    return [=](const GaussianState& psi) { return apply_eta2(mu, tau, psi, policy); };
}

GaussianState psi1_state(const SectorFrame& f, double delta, double lambda) {
    return eta0_state_map(delta, lambda)(ground_state(f));
}

GaussianState psi2_state(const SectorFrame& f, double delta, double lambda, const NumericPolicy& policy) {
    const auto [kappa, xi] = hermitising_choices(f.params.nu, f.params.omega, delta, lambda, policy);
    return eta1_state_map(kappa, xi, policy)(psi1_state(f, delta, lambda));
}

GaussianState phi3_state(const SectorFrame& f, const ChainParams& chain, const NumericPolicy& policy) {
    GaussianState s = psi1_state(f, chain.delta, chain.lambda);
    s = eta1_state_map(chain.kappa, chain.xi, policy)(s);
    return eta2_state_map(chain.mu, chain.tau, policy)(s);
}

} // namespace ghostfree
