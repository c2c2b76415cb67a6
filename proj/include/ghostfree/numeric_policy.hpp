#pragma once

namespace ghostfree {

// Every tolerance used by the library. Passed by const reference; the
// defaults are the values the test and acceptance suites are pinned to.
struct NumericPolicy {
    double construction_tol = 1e-12;  // symmetry / symplectic checks on construction
    double derived_tol = 1e-10;       // agreement between two routes to the same quantity
    double region_tol = 1e-9;         // sign decisions, pole detection, reality flags
    double series_cutoff = 1e-8;      // |mu*tau| below which even functions use Taylor series
};

inline constexpr NumericPolicy default_policy{};

} // namespace ghostfree
