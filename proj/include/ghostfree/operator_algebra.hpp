#pragma once

// Quadratic operators on the phase space (x, y, p_x, p_y) with hbar = 1.
//
// A quadratic Hamiltonian is stored in Weyl (symmetrised) form
//     H = sum_jk M_jk * (z_j z_k + z_k z_j) / 2 + shift,
// with M complex symmetric. A linear canonical map eta acts on the basis as
//     eta z_j eta^-1 = sum_k S_jk z_k,
// and on a Weyl form as M -> S^T M S. Symmetrised products map to
// symmetrised products under linear substitutions, so no ordering constant
// is generated and the shift is left untouched.

#include <Eigen/Dense>

#include <array>
#include <complex>

#include "ghostfree/numeric_policy.hpp"

namespace ghostfree {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix<Complex, 2, 2>;
using Mat4 = Eigen::Matrix<Complex, 4, 4>;

enum class Coord : int { x = 0, y = 1, px = 2, py = 3 };

inline constexpr int index(Coord c) noexcept { return static_cast<int>(c); }

// C_jk = [z_j, z_k] / i, the real symplectic form.
const Eigen::Matrix4d& commutation_matrix();

class WeylQuadraticForm {
public:
    WeylQuadraticForm() : m_(Mat4::Zero()) {}

    // Throws Error(InvalidArgument) if m is not symmetric to construction_tol
    // (relative to its largest entry); the stored matrix is exactly symmetric.
    explicit WeylQuadraticForm(const Mat4& m, Complex shift = 0.0,
                               const NumericPolicy& policy = default_policy);

    const Mat4& matrix() const noexcept { return m_; }
    Complex shift() const noexcept { return shift_; }

    // Coefficient of z_a^2 when a == b, otherwise of the symmetrised product
    // (z_a z_b + z_b z_a) / 2. For commuting pairs such as x y that is just
    // the coefficient of the plain product.
    Complex coefficient(Coord a, Coord b) const;

    // Adds c * z_a^2.
    WeylQuadraticForm& add_square(Coord a, Complex c);
    // Adds c * (z_a z_b + z_b z_a) / 2, a != b. A term written as
    // c (p_x x + x p_x) therefore enters as add_cross(px, x, 2c).
    WeylQuadraticForm& add_cross(Coord a, Coord b, Complex c);

    Mat2 position_block() const { return m_.topLeftCorner<2, 2>(); }
    Mat2 momentum_block() const { return m_.bottomRightCorner<2, 2>(); }
    // (x, p) block: entry (j, k) multiplies (q_j p_k + p_k q_j) / 2 twice over.
    Mat2 mixed_block() const { return m_.topRightCorner<2, 2>(); }

private:
    Mat4 m_;
    Complex shift_{0.0};
};

class CanonicalMap {
public:
    CanonicalMap() : s_(Mat4::Identity()) {}
    // No validation here: corrupted maps must be representable so that the
    // symplectic check has something to reject.
    explicit CanonicalMap(const Mat4& s) : s_(s) {}

    static CanonicalMap identity() { return CanonicalMap{}; }

    const Mat4& matrix() const noexcept { return s_; }

    // Row of S: coefficients of eta z eta^-1 in the basis (x, y, p_x, p_y).
    Eigen::Matrix<Complex, 1, 4> image(Coord c) const { return s_.row(index(c)); }

    // max |S C S^T - C|
    double symplectic_residual() const;

    bool is_symplectic(const NumericPolicy& policy = default_policy) const;

private:
    Mat4 s_;
};

// Returns the form of eta H eta^-1. Throws Error(NonCanonicalMap) when S
// fails the symplectic check.
WeylQuadraticForm transform_quadratic(const CanonicalMap& map, const WeylQuadraticForm& h,
                                      const NumericPolicy& policy = default_policy);

// Map of eta2 eta1, i.e. act with `first` (eta1) and then with `second`
// (eta2). Because the images compose by substitution the matrix product is
// S_first * S_second.
CanonicalMap compose_maps(const CanonicalMap& second, const CanonicalMap& first,
                          const NumericPolicy& policy = default_policy);

// 4x4 matrix of ad_G restricted to span(z): [G, z] = ad * z.
Mat4 adjoint_generator(const WeylQuadraticForm& g);

// Truncated series sum_{k<=order} ad_G^k / k! applied to z, i.e. the map of
// exp(G) built term by term from nested commutators.
CanonicalMap bch_adjoint_oracle(const WeylQuadraticForm& g, int order);

struct HermiticityReport {
    bool hermitian;
    double residual;  // max(|Im M_jk|, |Im shift|)
};

HermiticityReport is_hermitian(const WeylQuadraticForm& h,
                               const NumericPolicy& policy = default_policy);

// Parity flips x, y; time reversal conjugates. True iff P conj(M) P = M and
// the shift is real.
bool is_pt_symmetric(const WeylQuadraticForm& h, const NumericPolicy& policy = default_policy);

enum class Definiteness { PositiveDefinite, NegativeDefinite, PositiveSemidefinite,
                          NegativeSemidefinite, Indefinite };

struct DefinitenessReport {
    // Signs (+1, 0, -1) of the momentum-block eigenvalues, largest first.
    // (+1, -1) marks a ghost degree of freedom.
    std::array<int, 2> kinetic_signature;
    Definiteness full_form;
    Eigen::Vector4d eigenvalues;  // ascending
};

// Throws Error(NotHermitian) for forms with imaginary coefficients.
DefinitenessReport classify_definiteness(const WeylQuadraticForm& h,
                                         const NumericPolicy& policy = default_policy);

const char* to_string(Definiteness d) noexcept;

} // namespace ghostfree
