#include "ghostfree/gaussian_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ghostfree/errors.hpp"

namespace ghostfree {

namespace {

double scale_of(const Mat2& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

bool real_part_positive_definite(const Mat2& a, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a.real());
    return es.eigenvalues()(0) > tol;
}

// Integral over R^2 of exp(-(1/2) q^T B q) for complex symmetric B with
// Re B positive definite. Writing B = R^{1/2} (1 + i T) R^{1/2} with T real
// symmetric gives 2 pi / (sqrt(det R) prod_k sqrt(1 + i t_k)); every factor
// lies in the right half plane, so principal roots are the analytic
// continuation from real B.
Complex gaussian_integral(const Mat2& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> re(b.real());
    const Eigen::Vector2d r = re.eigenvalues();
    const Eigen::Matrix2d v = re.eigenvectors();
    const Eigen::Matrix2d r_inv_sqrt = v * r.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
    const Eigen::Matrix2d t = r_inv_sqrt * b.imag() * r_inv_sqrt;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> im(0.5 * (t + t.transpose()));
    Complex denom = std::sqrt(r(0) * r(1));
    for (int k = 0; k < 2; ++k) {
        denom *= std::sqrt(Complex(1.0, im.eigenvalues()(k)));
    }
    return 2.0 * std::numbers::pi / denom;
}

} // namespace

GaussianState::GaussianState(const Mat2& a, Complex log_norm) : a_(a), log_norm_(log_norm) {
    if (std::abs(a(0, 1) - a(1, 0)) > default_policy.construction_tol * scale_of(a)) {
        throw Error(ErrorKind::InvalidArgument, "Gaussian exponent matrix must be symmetric");
    }
    a_(1, 0) = a_(0, 1) = 0.5 * (a(0, 1) + a(1, 0));
}

GaussianState GaussianState::from_parameters(Complex alpha, Complex beta, Complex gamma,
                                             Complex log_norm) {
    Mat2 a;
    a << alpha, -gamma, -gamma, beta;
    return GaussianState(a, log_norm);
}

bool GaussianState::is_normalisable(const NumericPolicy& policy) const {
    return real_part_positive_definite(a_, policy.region_tol);
}

GaussianState multiply_position_gaussian(const Mat2& k, const GaussianState& psi) {
    return GaussianState(psi.exponent() + k, psi.log_norm());
}

GaussianState multiply_momentum_gaussian(const Mat2& k, const GaussianState& psi,
                                         const NumericPolicy& policy) {
    const Mat2& a = psi.exponent();
    const Complex det_a = a.determinant();
    if (std::abs(det_a) <= policy.region_tol * scale_of(a) * scale_of(a)) {
        throw Error(ErrorKind::SingularExponent, "exponent matrix has vanishing determinant");
    }
    const Mat2 b = a.inverse() - k;
    const Complex det_b = b.determinant();
    if (std::abs(det_b) <= policy.region_tol * scale_of(b) * scale_of(b)) {
        throw Error(ErrorKind::SingularExponent,
                    "A^-1 - K is singular; the image leaves the Gaussian class");
    }
    // det(1 - A K) = det A det(A^-1 - K)
    const Complex ratio = det_a * det_b;
    return GaussianState(b.inverse(), psi.log_norm() - 0.5 * std::log(ratio));
}

GaussianState scale_state(Complex zeta, const GaussianState& psi) {
    if (zeta == Complex(0.0)) {
        throw Error(ErrorKind::InvalidArgument, "scale factor must be non-zero");
    }
    return GaussianState(zeta * psi.exponent(), psi.log_norm() + 0.5 * std::log(zeta));
}

GaussianState apply_eta2(double mu, double tau, const GaussianState& psi, const NumericPolicy& policy) {
    const GaussFactors f = gauss_decompose(mu, tau, policy);
    const Complex chi = f.chi(psi.alpha(), psi.beta(), psi.gamma());
    if (std::abs(chi) <= policy.region_tol) {
        throw Error(ErrorKind::ChiSingular, "chi = " + std::to_string(std::abs(chi)));
    }
    Mat2 k_minus;
    k_minus << 0.0, f.zeta_minus, f.zeta_minus, 0.0;
    Mat2 k_plus;
    k_plus << 0.0, -f.zeta_plus, -f.zeta_plus, 0.0;

    GaussianState out = multiply_momentum_gaussian(k_minus, psi, policy);
    out = scale_state(f.zeta_z, out);
    return multiply_position_gaussian(k_plus, out);
}

double EigenResidual::max_abs() const {
    return std::max(quadratic.cwiseAbs().maxCoeff(), std::abs(scalar));
}

EigenResidual eigen_residual(const WeylQuadraticForm& h, const GaussianState& psi, Complex energy) {
    // With p = -i grad on exp(-(1/2) q^T A q):
    //   p_j p_k psi                  = (A_jk - (Aq)_j (Aq)_k) psi
    //   (q_j p_k + p_k q_j) psi      = (2i q_j (Aq)_k - i delta_jk) psi
    const Complex i(0.0, 1.0);
    const Mat2& a = psi.exponent();
    const Mat2 mxx = h.position_block();
    const Mat2 mpp = h.momentum_block();
    const Mat2 mxp = h.mixed_block();

    EigenResidual out;
    out.quadratic = mxx - a * mpp * a + i * (mxp * a + a * mxp.transpose());
    const Complex t = (mpp * a).trace() - i * mxp.trace() + h.shift();
    out.scalar = t - energy;
    return out;
}

std::optional<double> norm_squared(const GaussianState& psi, const NumericPolicy& policy) {
    if (!psi.is_normalisable(policy)) return std::nullopt;
    const Eigen::Matrix2d twice_re = 2.0 * psi.exponent().real();
    return std::exp(2.0 * psi.log_norm().real()) * 2.0 * std::numbers::pi / std::sqrt(twice_re.determinant());
}

std::optional<Complex> gaussian_overlap(const GaussianState& bra, const GaussianState& ket,
                                        const NumericPolicy& policy) {
    const Mat2 b = bra.exponent().conjugate() + ket.exponent();
    if (!real_part_positive_definite(b, policy.region_tol)) return std::nullopt;
    return std::exp(std::conj(bra.log_norm()) + ket.log_norm()) * gaussian_integral(b);
}

std::optional<Complex> metric_inner_product(const std::vector<StateMap>& chain,
                                            const GaussianState& phi, const GaussianState& phi_prime,
                                            const NumericPolicy& policy) {
    GaussianState ket = phi;
    GaussianState bra = phi_prime;
    for (const auto& step : chain) {
        ket = step(ket);
        bra = step(bra);
    }
    return gaussian_overlap(bra, ket, policy);
}

} // namespace ghostfree
