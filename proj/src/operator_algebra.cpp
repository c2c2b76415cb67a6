#include "ghostfree/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghostfree/errors.hpp"

namespace ghostfree {

namespace {

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

int sign_of(double v, double tol) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

} // namespace

const Eigen::Matrix4d& commutation_matrix() {
    static const Eigen::Matrix4d c = [] {
        Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
        m(0, 2) = 1.0;
        m(1, 3) = 1.0;
        m(2, 0) = -1.0;
        m(3, 1) = -1.0;
        return m;
    }();
    return c;
}

WeylQuadraticForm::WeylQuadraticForm(const Mat4& m, Complex shift, const NumericPolicy& policy)
    : m_(m), shift_(shift) {
    const double scale = std::max(1.0, max_abs(m));
    const double asym = max_abs(m - m.transpose());
    if (asym > policy.construction_tol * scale) {
        throw Error(ErrorKind::InvalidArgument,
                    "Weyl coefficient matrix is not symmetric (residual " + std::to_string(asym) + ")");
    }
    m_ = 0.5 * (m + m.transpose());
}

Complex WeylQuadraticForm::coefficient(Coord a, Coord b) const {
    if (a == b) return m_(index(a), index(a));
    return 2.0 * m_(index(a), index(b));
}

WeylQuadraticForm& WeylQuadraticForm::add_square(Coord a, Complex c) {
    m_(index(a), index(a)) += c;
    return *this;
}

WeylQuadraticForm& WeylQuadraticForm::add_cross(Coord a, Coord b, Complex c) {
    if (a == b) {
        throw Error(ErrorKind::InvalidArgument, "add_cross needs two distinct coordinates");
    }
    m_(index(a), index(b)) += 0.5 * c;
    m_(index(b), index(a)) += 0.5 * c;
    return *this;
}

double CanonicalMap::symplectic_residual() const {
    const Mat4 c = commutation_matrix().cast<Complex>();
    return max_abs(s_ * c * s_.transpose() - c);
}

bool CanonicalMap::is_symplectic(const NumericPolicy& policy) const {
    // Entries of order cosh(theta) lose absolute precision in S C S^T, so
    // the bound scales with |S|^2 once |S| exceeds one.
    const double scale = std::max(1.0, max_abs(s_) * max_abs(s_));
    return symplectic_residual() <= policy.construction_tol * scale;
}

WeylQuadraticForm transform_quadratic(const CanonicalMap& map, const WeylQuadraticForm& h,
                                      const NumericPolicy& policy) {
    if (!map.is_symplectic(policy)) {
        throw Error(ErrorKind::NonCanonicalMap,
                    "symplectic residual " + std::to_string(map.symplectic_residual()));
    }
    const Mat4& s = map.matrix();
    Mat4 m = s.transpose() * h.matrix() * s;
    m = 0.5 * (m + m.transpose());
    return WeylQuadraticForm(m, h.shift(), policy);
}

CanonicalMap compose_maps(const CanonicalMap& second, const CanonicalMap& first,
                          const NumericPolicy& policy) {
    for (const CanonicalMap* m : {&second, &first}) {
        if (!m->is_symplectic(policy)) {
            throw Error(ErrorKind::NonCanonicalMap,
                        "cannot compose: symplectic residual " + std::to_string(m->symplectic_residual()));
        }
    }
    return CanonicalMap(first.matrix() * second.matrix());
}

Mat4 adjoint_generator(const WeylQuadraticForm& g) {
    // [z_a z_b, z_j] = i (z_a C_bj + C_aj z_b), hence [G, z] = -2i C M z.
    const Mat4 c = commutation_matrix().cast<Complex>();
    return Complex(0.0, -2.0) * c * g.matrix();
}

CanonicalMap bch_adjoint_oracle(const WeylQuadraticForm& g, int order) {
    const Mat4 ad = adjoint_generator(g);
    Mat4 term = Mat4::Identity();
    Mat4 sum = Mat4::Identity();
    for (int k = 1; k <= order; ++k) {
        term = (ad * term) / static_cast<double>(k);
        sum += term;
    }
    return CanonicalMap(sum);
}

HermiticityReport is_hermitian(const WeylQuadraticForm& h, const NumericPolicy& policy) {
    const double residual = std::max(h.matrix().imag().cwiseAbs().maxCoeff(), std::abs(h.shift().imag()));
    return {residual <= policy.derived_tol, residual};
}

bool is_pt_symmetric(const WeylQuadraticForm& h, const NumericPolicy& policy) {
    Eigen::Vector4d parity(-1.0, -1.0, 1.0, 1.0);
    const Mat4 p = parity.cast<Complex>().asDiagonal();
    const Mat4 image = p * h.matrix().conjugate() * p;
    const double scale = std::max(1.0, max_abs(h.matrix()));
    return max_abs(image - h.matrix()) <= policy.derived_tol * scale &&
           std::abs(h.shift().imag()) <= policy.derived_tol;
}

DefinitenessReport classify_definiteness(const WeylQuadraticForm& h, const NumericPolicy& policy) {
    const auto herm = is_hermitian(h, policy);
    if (!herm.hermitian) {
        throw Error(ErrorKind::NotHermitian,
                    "definiteness needs real Weyl coefficients (max |Im| = " +
                        std::to_string(herm.residual) + ")");
    }
    const Eigen::Matrix4d m = h.matrix().real();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> kinetic(m.bottomRightCorner<2, 2>());
    const Eigen::Vector2d kev = kinetic.eigenvalues();
    DefinitenessReport out{};
    out.kinetic_signature = {sign_of(kev(1), policy.region_tol), sign_of(kev(0), policy.region_tol)};

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> full(m);
    out.eigenvalues = full.eigenvalues();
    const double lo = out.eigenvalues(0);
    const double hi = out.eigenvalues(3);
    const double tol = policy.region_tol;
    if (lo > tol) {
        out.full_form = Definiteness::PositiveDefinite;
    } else if (hi < -tol) {
        out.full_form = Definiteness::NegativeDefinite;
    } else if (lo >= -tol && hi > tol) {
        out.full_form = Definiteness::PositiveSemidefinite;
    } else if (hi <= tol && lo < -tol) {
        out.full_form = Definiteness::NegativeSemidefinite;
    } else if (lo < -tol && hi > tol) {
        out.full_form = Definiteness::Indefinite;
    } else {
        // all eigenvalues within tol of zero
        out.full_form = Definiteness::PositiveSemidefinite;
    }
    return out;
}

const char* to_string(Definiteness d) noexcept {
    switch (d) {
    case Definiteness::PositiveDefinite: return "positive definite";
    case Definiteness::NegativeDefinite: return "negative definite";
    case Definiteness::PositiveSemidefinite: return "positive semidefinite";
    case Definiteness::NegativeSemidefinite: return "negative semidefinite";
    case Definiteness::Indefinite: return "indefinite";
    }
    return "unknown";
}

} // namespace ghostfree
