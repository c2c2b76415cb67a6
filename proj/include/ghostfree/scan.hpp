#pragma once

// Lambda sweeps of the normalisability quantities, boundary refinement, and
// the CSV format shared by the sweep writer, the reader and the CLI.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ghostfree/model.hpp"
#include "ghostfree/numeric_policy.hpp"

namespace ghostfree {

// Hat: exponents of psi2 = eta1 eta0 phi0 (closed forms).
// Check: exponents of phi3 = eta2 psi2, with eta2 applied factor by factor.
enum class ScanMode { Hat, Check };

enum class DeltaMode { Fixed, Plus, Minus };

struct ScanConfig {
    ModelParams params;
    ScanMode mode = ScanMode::Hat;
    DeltaMode delta_mode = DeltaMode::Fixed;
    double delta = 0.0;  // used when delta_mode == Fixed
    double lambda_min = -4.0;
    double lambda_max = 4.0;
    double lambda_step = 0.005;
    std::vector<SectorLabel> sectors;
};

struct ScanRow {
    double lambda = 0.0;
    SectorLabel sector;
    std::optional<double> q_a;    // alpha
    std::optional<double> q_b;    // beta
    std::optional<double> q_det;  // alpha beta - gamma^2
    bool theta_in_range = true;
    bool omega_consistent = true;
    bool nonsingular = true;
    bool frame_real = true;
    std::optional<double> energy;  // alpha - beta of the h0 frame

    bool valid() const { return theta_in_range && omega_consistent && nonsingular && frame_real; }

    // All three quantities present and strictly positive.
    bool normalisable() const { return valid() && *q_a > 0.0 && *q_b > 0.0 && *q_det > 0.0; }
};

// lambda_min + i * step for i = 0.. while <= lambda_max (with 1e-9 step slack).
// Throws Error(InvalidArgument) for a non-positive step or non-finite range.
std::vector<double> lambda_grid(double lambda_min, double lambda_max, double step);

// Delta used at a given lambda; nullopt when the branch is undefined (lambda = 0).
std::optional<double> delta_for(const ScanConfig& cfg, double lambda);

// One row for (lambda, sector). Failures become flags, never exceptions.
ScanRow evaluate_row(const ScanConfig& cfg, double lambda, SectorLabel sector,
                     const NumericPolicy& policy = default_policy);

// Rows ordered by lambda, then by cfg.sectors order.
std::vector<ScanRow> sweep_lambda(const ScanConfig& cfg, const NumericPolicy& policy = default_policy);

// Bisection; returns the midpoint of a bracket of width <= tol. Throws
// Error(NoSignChange) if f(lo) and f(hi) share a sign, and
// Error(InvalidArgument) if f is not finite at either end. Interior points
// where f is not finite are stepped around; when the sign flips across such
// a band the centre of the band is returned.
double find_boundary(const std::function<double(double)>& f, double lo, double hi, double tol);

// Grid scan over [lo, hi] with the given step, skipping points where f is
// not finite, followed by bisection inside every cell where the sign flips.
std::vector<double> find_boundaries(const std::function<double(double)>& f, double lo, double hi, double step,
                                    double tol);

// |Theta(lambda, delta_branch(lambda))| - 1; NaN where undefined.
std::function<double(double)> theta_boundary_function(const ModelParams& p, DeltaMode branch);

enum class Quantity { A, B, Det };

// One normalisability quantity of a row as a function of lambda; NaN where
// the row is invalid.
std::function<double(double)> quantity_function(const ScanConfig& cfg, SectorLabel sector, Quantity q,
                                                const NumericPolicy& policy = default_policy);

inline constexpr const char* kCsvHeader = "lambda,eps,eta,q_a,q_b,q_det,valid,energy";

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows);

// Inverse of write_csv. Flags other than `valid` are not stored in the file;
// an invalid row reads back with all flags false except frame_real.
// Throws Error(InvalidArgument) on a malformed file.
std::vector<ScanRow> read_csv(std::istream& in);

// Figure 1: hat quantities, delta = 0, (nu, Omega) = (4, -2), g = 0 (panel a)
// and g = 1 (panel b), sectors (1,1) and (-1,1).
// Figure 2: check quantities, (nu, Omega, g) = (4, -2, 3), delta_+ (panel a)
// and delta_- (panel b), all four sectors.
ScanConfig figure_config(int figure, char panel);

// Writes fig<which><panel>.csv for every panel into dir; returns the paths.
std::vector<std::filesystem::path> reproduce_figures(int which, const std::filesystem::path& dir,
                                                     const NumericPolicy& policy = default_policy);

} // namespace ghostfree
