#pragma once

#include <cmath>

namespace ghostfree {

// Functions of theta = sqrt(s) that are even in theta, evaluated from s
// directly so that s < 0 (imaginary theta) needs no complex branch choice.

inline double cosh_sqrt(double s) {
    return s >= 0.0 ? std::cosh(std::sqrt(s)) : std::cos(std::sqrt(-s));
}

// sinh(sqrt(s)) / sqrt(s)
inline double sinhc_sqrt(double s, double cutoff = 1e-8) {
    if (std::abs(s) < cutoff) {
        return 1.0 + s / 6.0 + s * s / 120.0;
    }
    if (s > 0.0) {
        const double t = std::sqrt(s);
        return std::sinh(t) / t;
    }
    const double t = std::sqrt(-s);
    return std::sin(t) / t;
}

// tanh(sqrt(s)) / sqrt(s)
inline double tanhc_sqrt(double s, double cutoff = 1e-8) {
    if (std::abs(s) < cutoff) {
        return 1.0 - s / 3.0 + 2.0 * s * s / 15.0;
    }
    if (s > 0.0) {
        const double t = std::sqrt(s);
        return std::tanh(t) / t;
    }
    const double t = std::sqrt(-s);
    return std::tan(t) / t;
}

} // namespace ghostfree
