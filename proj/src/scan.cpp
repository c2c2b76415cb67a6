#include "ghostfree/scan.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ghostfree/errors.hpp"

namespace ghostfree {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_optional(std::ostream& out, const std::optional<double>& v) {
    if (v) out << format_double(*v);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad number in CSV: '" + s + "'");
    }
    if (pos != s.size()) throw Error(ErrorKind::InvalidArgument, "bad number in CSV: '" + s + "'");
    return v;
}

int parse_sign(const std::string& s) {
    if (s == "1") return 1;
    if (s == "-1") return -1;
    throw Error(ErrorKind::InvalidArgument, "sector label must be 1 or -1, got '" + s + "'");
}

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s);
}

bool is_real(Complex z, double tol) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)); }

} // namespace

std::vector<double> lambda_grid(double lambda_min, double lambda_max, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorKind::InvalidArgument, "lambda step must be positive");
    }
    if (!std::isfinite(lambda_min) || !std::isfinite(lambda_max)) {
        throw Error(ErrorKind::InvalidArgument, "lambda range must be finite");
    }
    std::vector<double> grid;
    if (lambda_max < lambda_min) return grid;
    const auto n = static_cast<long>(std::floor((lambda_max - lambda_min) / step + 1e-9));
    grid.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        grid.push_back(lambda_min + static_cast<double>(i) * step);
    }
    return grid;
}

std::optional<double> delta_for(const ScanConfig& cfg, double lambda) {
    switch (cfg.delta_mode) {
    case DeltaMode::Fixed: return cfg.delta;
    case DeltaMode::Plus:
    case DeltaMode::Minus: {
        if (lambda == 0.0) return std::nullopt;
        const auto [plus, minus] = delta_branches(lambda, cfg.params.nu, cfg.params.omega);
        return cfg.delta_mode == DeltaMode::Plus ? plus : minus;
    }
    }
    return std::nullopt;
}

ScanRow evaluate_row(const ScanConfig& cfg, double lambda, SectorLabel sector, const NumericPolicy& policy) {
    ScanRow row;
    row.lambda = lambda;
    row.sector = sector;

    SectorFrame frame;
    try {
        frame = sector_params(cfg.params, sector, policy);
    } catch (const Error&) {
        row.nonsingular = false;
        row.frame_real = false;
        return row;
    }
    row.frame_real = frame.is_real;
    if (frame.is_real) row.energy = frame.ground_energy().real();

    const std::optional<double> delta = delta_for(cfg, lambda);
    if (!delta) {
        row.nonsingular = false;
        return row;
    }

    GaussianParameters q{};
    try {
        if (cfg.mode == ScanMode::Hat) {
            // the hermitising choices must exist for psi2 to be defined at all
            hermitising_choices(cfg.params.nu, cfg.params.omega, *delta, lambda, policy);
            q = hat_parameters(frame, *delta, lambda, policy);
        } else {
            const ChainParams chain = h3_chain(cfg.params, *delta, lambda, policy);
            const GaussianParameters hat = hat_parameters(frame, *delta, lambda, policy);
            const GaussianState psi2 = GaussianState::from_parameters(hat.alpha, hat.beta, hat.gamma);
            const GaussianState phi3 = apply_eta2(chain.mu, chain.tau, psi2, policy);
            q = {phi3.alpha(), phi3.beta(), phi3.gamma()};
        }
    } catch (const Error& e) {
        switch (e.kind()) {
        case ErrorKind::ThetaOutOfRange: row.theta_in_range = false; break;
        case ErrorKind::OmegaInconsistent: row.omega_consistent = false; break;
        default: row.nonsingular = false; break;
        }
        return row;
    }

    const Complex det = q.alpha * q.beta - q.gamma * q.gamma;
    if (!(is_real(q.alpha, policy.region_tol) && is_real(q.beta, policy.region_tol) &&
          is_real(det, policy.region_tol))) {
        row.frame_real = false;
    }
    if (row.valid()) {
        row.q_a = q.alpha.real();
        row.q_b = q.beta.real();
        row.q_det = det.real();
    }
    return row;
}

std::vector<ScanRow> sweep_lambda(const ScanConfig& cfg, const NumericPolicy& policy) {
    const std::vector<double> grid = lambda_grid(cfg.lambda_min, cfg.lambda_max, cfg.lambda_step);
    std::vector<ScanRow> rows;
    rows.reserve(grid.size() * cfg.sectors.size());
    for (double lambda : grid) {
        for (const SectorLabel& s : cfg.sectors) {
            rows.push_back(evaluate_row(cfg, lambda, s, policy));
        }
    }
    return rows;
}

double find_boundary(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (lo > hi) std::swap(lo, hi);
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) {
        throw Error(ErrorKind::InvalidArgument, "function not finite at the bracket ends");
    }
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw Error(ErrorKind::NoSignChange,
                    "no sign change on [" + format_double(lo) + ", " + format_double(hi) + "]");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double f_mid = f(mid);
        if (!std::isfinite(f_mid)) {
            // Walk outward to the nearest finite points on each side of the
            // undefined band. If the sign flips across the band itself the
            // band centre is the best available estimate.
            auto nearest = [&](double dir, double limit) {
                for (double d = 0.25 * tol; mid + dir * d != limit && d < hi - lo; d *= 2.0) {
                    const double x = mid + dir * d;
                    if ((dir < 0 && x <= lo) || (dir > 0 && x >= hi)) break;
                    if (std::isfinite(f(x))) return x;
                }
                return limit;
            };
            const double a = nearest(-1.0, lo);
            const double b = nearest(1.0, hi);
            const double f_a = a == lo ? f_lo : f(a);
            const double f_b = b == hi ? f_hi : f(b);
            if (f_a == 0.0) return a;
            if (f_b == 0.0) return b;
            if ((f_a > 0.0) != (f_lo > 0.0)) {
                hi = a;
                f_hi = f_a;
            } else if ((f_b > 0.0) == (f_hi > 0.0)) {
                return 0.5 * (a + b);
            } else {
                lo = b;
                f_lo = f_b;
            }
            continue;
        }
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> find_boundaries(const std::function<double(double)>& f, double lo, double hi, double step,
                                    double tol) {
    std::vector<double> roots;
    bool have_prev = false;
    double prev_x = 0.0;
    double prev_v = 0.0;
    for (double x : lambda_grid(lo, hi, step)) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            have_prev = false;
            continue;
        }
        if (v == 0.0) {
            roots.push_back(x);
        } else if (have_prev && prev_v != 0.0 && (prev_v > 0.0) != (v > 0.0)) {
            roots.push_back(find_boundary(f, prev_x, x, tol));
        }
        have_prev = true;
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

std::function<double(double)> theta_boundary_function(const ModelParams& p, DeltaMode branch) {
    return [p, branch](double lambda) {
        if (lambda == 0.0) return kNaN;
        const auto [plus, minus] = delta_branches(lambda, p.nu, p.omega);
        const double delta = branch == DeltaMode::Minus ? minus : plus;
        return std::abs(theta_value(p, delta, lambda)) - 1.0;
    };
}

std::function<double(double)> quantity_function(const ScanConfig& cfg, SectorLabel sector, Quantity q,
                                                const NumericPolicy& policy) {
    return [cfg, sector, q, policy](double lambda) {
        const ScanRow row = evaluate_row(cfg, lambda, sector, policy);
        if (!row.valid()) return kNaN;
        switch (q) {
        case Quantity::A: return *row.q_a;
        case Quantity::B: return *row.q_b;
        case Quantity::Det: return *row.q_det;
        }
        return kNaN;
    };
}

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << kCsvHeader << '\n';
    for (const ScanRow& r : rows) {
        out << format_double(r.lambda) << ',' << r.sector.eps << ',' << r.sector.eta << ',';
        write_optional(out, r.q_a);
        out << ',';
        write_optional(out, r.q_b);
        out << ',';
        write_optional(out, r.q_det);
        out << ',' << (r.valid() ? 1 : 0) << ',';
        write_optional(out, r.energy);
        out << '\n';
    }
}

std::vector<ScanRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw Error(ErrorKind::InvalidArgument, "missing or unexpected CSV header");
    }
    std::vector<ScanRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 8) {
            throw Error(ErrorKind::InvalidArgument, "expected 8 fields, got " + std::to_string(fields.size()));
        }
        ScanRow r;
        r.lambda = parse_double(fields[0]);
        r.sector = {parse_sign(fields[1]), parse_sign(fields[2])};
        r.q_a = parse_optional(fields[3]);
        r.q_b = parse_optional(fields[4]);
        r.q_det = parse_optional(fields[5]);
        if (fields[6] == "0") {
            r.theta_in_range = r.omega_consistent = r.nonsingular = false;
        } else if (fields[6] != "1") {
            throw Error(ErrorKind::InvalidArgument, "valid must be 0 or 1");
        }
        r.energy = parse_optional(fields[7]);
        rows.push_back(r);
    }
    return rows;
}

ScanConfig figure_config(int figure, char panel) {
    if (panel != 'a' && panel != 'b') {
        throw Error(ErrorKind::InvalidArgument, "panel must be 'a' or 'b'");
    }
    ScanConfig cfg;
    if (figure == 1) {
        cfg.params = {4.0, -2.0, panel == 'a' ? 0.0 : 1.0};
        cfg.mode = ScanMode::Hat;
        cfg.delta_mode = DeltaMode::Fixed;
        cfg.delta = 0.0;
        cfg.sectors = {{1, 1}, {-1, 1}};
    } else if (figure == 2) {
        cfg.params = {4.0, -2.0, 3.0};
        cfg.mode = ScanMode::Check;
        cfg.delta_mode = panel == 'a' ? DeltaMode::Plus : DeltaMode::Minus;
        cfg.sectors = all_sectors();
    } else {
        throw Error(ErrorKind::InvalidArgument, "figure must be 1 or 2");
    }
    return cfg;
}

std::vector<std::filesystem::path> reproduce_figures(int which, const std::filesystem::path& dir,
                                                     const NumericPolicy& policy) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (char panel : {'a', 'b'}) {
        const ScanConfig cfg = figure_config(which, panel);
        const auto path = dir / ("fig" + std::to_string(which) + panel + ".csv");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string());
        write_csv(out, sweep_lambda(cfg, policy));
        if (!out) throw std::runtime_error("write failed: " + path.string());
        written.push_back(path);
    }
    return written;
}

} // namespace ghostfree
