#pragma once

// Test-only reference computations. Nothing here calls into the library's
// algebra; each routine works from the defining integral or differential
// operator so it can stand as an independent check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "ghostfree/gaussian_states.hpp"
#include "ghostfree/operator_algebra.hpp"

namespace oracle {

using cld = std::complex<long double>;

// psi(q) = exp(-(1/2) q^T A q + log_norm) evaluated directly.
inline cld gaussian_value(const ghostfree::GaussianState& psi, long double x, long double y) {
    const auto& a = psi.exponent();
    const cld axx(a(0, 0).real(), a(0, 0).imag());
    const cld axy(a(0, 1).real(), a(0, 1).imag());
    const cld ayy(a(1, 1).real(), a(1, 1).imag());
    const cld ln(psi.log_norm().real(), psi.log_norm().imag());
    return std::exp(-0.5L * (axx * x * x + 2.0L * axy * x * y + ayy * y * y) + ln);
}

// (H psi)(q) / psi(q) by central finite differences of the differential
// operator H = sum M_jk (z_j z_k + z_k z_j)/2 + shift with p = -i d/dq.
inline std::complex<double> fd_local_energy(const ghostfree::WeylQuadraticForm& h,
                                            const ghostfree::GaussianState& psi, double x0, double y0,
                                            long double step = 1e-4L) {
    const auto& m = h.matrix();
    auto c = [&](int j, int k) { return cld(m(j, k).real(), m(j, k).imag()); };
    const cld i(0.0L, 1.0L);
    const long double q[2] = {x0, y0};
    auto f = [&](long double dx, long double dy) { return gaussian_value(psi, x0 + dx, y0 + dy); };
    const cld f0 = f(0, 0);

    cld d1[2];
    d1[0] = (f(step, 0) - f(-step, 0)) / (2 * step);
    d1[1] = (f(0, step) - f(0, -step)) / (2 * step);
    cld d2[2][2];
    d2[0][0] = (f(step, 0) - 2.0L * f0 + f(-step, 0)) / (step * step);
    d2[1][1] = (f(0, step) - 2.0L * f0 + f(0, -step)) / (step * step);
    d2[0][1] = d2[1][0] = (f(step, step) - f(step, -step) - f(-step, step) + f(-step, -step)) / (4 * step * step);

    cld out = cld(h.shift().real(), h.shift().imag()) * f0;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            out += c(j, k) * q[j] * q[k] * f0;                 // position-position
            out += -c(2 + j, 2 + k) * d2[j][k];                  // p_j p_k = -d_j d_k
            // M_{j,2+k} and M_{2+k,j} together give M (q_j p_k + p_k q_j)
            const cld qp = -i * q[j] * d1[k];                    // q_j p_k psi
            const cld pq = -i * ((j == k ? 1.0L : 0.0L) * f0 + q[j] * d1[k]);  // p_k (q_j psi)
            out += c(j, 2 + k) * (qp + pq);
        }
    }
    const cld r = out / f0;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// Trapezoid rule over [-half_width, half_width]^2.
inline std::complex<double> quadrature_2d(const std::function<cld(long double, long double)>& f,
                                          double half_width, int points) {
    const long double h = 2.0L * half_width / (points - 1);
    cld sum = 0;
    for (int a = 0; a < points; ++a) {
        const long double x = -half_width + a * h;
        const long double wx = (a == 0 || a == points - 1) ? 0.5L : 1.0L;
        for (int b = 0; b < points; ++b) {
            const long double y = -half_width + b * h;
            const long double wy = (b == 0 || b == points - 1) ? 0.5L : 1.0L;
            sum += wx * wy * f(x, y);
        }
    }
    sum *= h * h;
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

inline std::complex<double> quadrature_overlap(const ghostfree::GaussianState& bra,
                                               const ghostfree::GaussianState& ket, double half_width = 12.0,
                                               int points = 601) {
    return quadrature_2d(
        [&](long double x, long double y) { return std::conj(gaussian_value(bra, x, y)) * gaussian_value(ket, x, y); },
        half_width, points);
}

// exp(-(s/2) p^2) = exp((s/2) d^2/dx^2) for s > 0 is convolution with the
// heat kernel of variance s. Applied here to f and evaluated at x.
inline std::complex<double> heat_smooth_1d(const std::function<cld(long double)>& f, double s, double x,
                                           double half_width = 14.0, int points = 2801) {
    const long double h = 2.0L * half_width / (points - 1);
    const long double norm = 1.0L / std::sqrt(2.0L * std::numbers::pi_v<long double> * s);
    cld sum = 0;
    for (int j = 0; j < points; ++j) {
        const long double t = x - half_width + j * h;
        const long double w = (j == 0 || j == points - 1) ? 0.5L : 1.0L;
        sum += w * norm * std::exp(-(x - t) * (x - t) / (2.0L * s)) * f(t);
    }
    sum *= h;
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Deterministic uniform draws in [lo, hi].
class Draws {
public:
    explicit Draws(unsigned seed) : gen_(seed) {}
    double operator()(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

private:
    std::mt19937 gen_;
};

inline double max_abs(const ghostfree::Mat4& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace oracle
