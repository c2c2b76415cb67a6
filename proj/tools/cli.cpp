#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "ghostfree/errors.hpp"
#include "ghostfree/model.hpp"
#include "ghostfree/scan.hpp"

namespace ghostfree::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Printer {
public:
    explicit Printer(int digits) : digits_(digits) {}

    std::string num(double v) const {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.*g", digits_, v);
        return buf;
    }

    std::string cplx(Complex z) const {
        if (z.imag() == 0.0) return num(z.real());
        std::string s = num(z.real());
        s += z.imag() < 0 ? "-" : "+";
        return s + num(std::abs(z.imag())) + "i";
    }

private:
    int digits_;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    for (const auto& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

// Removes --config PATH from args and appends the file's key = value pairs
// as flags, skipping keys already given on the command line.
std::vector<std::string> inject_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (!path) return args;

    std::ifstream in(*path);
    if (!in) throw UsageError("cannot read config file " + *path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(*path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (char& c : key)
            if (c == '_') c = '-';
        if (key.empty()) throw UsageError(*path + ":" + std::to_string(lineno) + ": empty key");
        const std::string flag = "--" + key;
        if (has_flag(args, flag)) continue;
        if (value == "true") {
            args.push_back(flag);
        } else if (value == "false") {
            continue;
        } else {
            args.push_back(flag);
            std::istringstream ss(value);
            for (std::string tok; ss >> tok;) args.push_back(tok);
        }
    }
    return args;
}

void add_policy_options(CLI::App* sub, NumericPolicy& policy) {
    sub->add_option("--construction-tol", policy.construction_tol, "symmetry and symplectic tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--derived-tol", policy.derived_tol, "agreement tolerance between two routes")
        ->check(CLI::PositiveNumber);
    sub->add_option("--region-tol", policy.region_tol, "pole and sign tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--series-cutoff", policy.series_cutoff, "Taylor cutoff for even functions")
        ->check(CLI::PositiveNumber);
}

const std::vector<std::string> kChains = {"h0", "h0,eta0", "h0,eta0,eta1", "h0,eta0,eta1,eta2"};

int chain_depth(const std::string& chain) {
    for (std::size_t i = 0; i < kChains.size(); ++i)
        if (kChains[i] == chain) return static_cast<int>(i);
    throw UsageError("unknown chain '" + chain + "'");
}

DeltaMode branch_mode(const std::string& b) {
    if (b == "plus") return DeltaMode::Plus;
    if (b == "minus") return DeltaMode::Minus;
    throw UsageError("branch must be plus or minus");
}

// delta from --branch when given, otherwise the explicit value.
double resolve_delta(const ModelParams& p, double delta, double lambda, const std::string& branch) {
    if (branch.empty()) return delta;
    const auto [dp, dm] = delta_branches(lambda, p.nu, p.omega);
    return branch_mode(branch) == DeltaMode::Plus ? dp : dm;
}

struct Options {
    double nu = 0.0, omega = 0.0, g = 0.0;
    int eps = 1, eta = 1;
    int digits = 17;
    double delta = 0.0, lambda = 0.0;
    std::string branch;
    std::string chain;
    NumericPolicy policy;
};

void add_params(CLI::App* sub, Options& o, bool required) {
    auto* nu = sub->add_option("--nu", o.nu, "frequency nu");
    auto* om = sub->add_option("--omega", o.omega, "coefficient Omega of y^2");
    auto* g = sub->add_option("--g", o.g, "coupling g");
    if (required) {
        nu->required();
        om->required();
        g->required();
    }
}

void add_sector(CLI::App* sub, Options& o, bool required) {
    auto* e = sub->add_option("--eps", o.eps, "sector label epsilon (1 or -1)")->check(CLI::IsMember({1, -1}));
    auto* h = sub->add_option("--eta", o.eta, "sector label eta (1 or -1)")->check(CLI::IsMember({1, -1}));
    if (required) {
        e->required();
        h->required();
    }
}

void add_digits(CLI::App* sub, Options& o) {
    sub->add_option("--digits", o.digits, "significant digits for display")->check(CLI::Range(1, 17));
}

// ---------------------------------------------------------------- frame

int cmd_frame(const Options& o, std::ostream& out) {
    const Printer pr(o.digits);
    const ModelParams p{o.nu, o.omega, o.g};
    const SectorFrame f = sector_params(p, {o.eps, o.eta}, o.policy);
    const bool normalisable = ground_state(f).is_normalisable(o.policy);
    out << "sector   eps=" << o.eps << " eta=" << o.eta << "\n"
        << "sigma    " << pr.cplx(f.sigma) << "\n"
        << "Sigma    " << pr.cplx(f.Sigma) << "\n"
        << "alpha    " << pr.cplx(f.alpha) << "\n"
        << "beta     " << pr.cplx(f.beta) << "\n"
        << "gamma    " << pr.cplx(f.gamma) << "\n"
        << "real     " << (f.is_real ? "true" : "false") << "\n"
        << "energy   " << pr.cplx(f.ground_energy()) << "\n"
        << "verdict  " << (normalisable ? "normalisable" : "non-normalisable") << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- derive

struct DerivedChain {
    WeylQuadraticForm h;
    ChainParams chain;
};

DerivedChain run_chain(const Options& o, int depth) {
    const ModelParams p{o.nu, o.omega, o.g};
    DerivedChain d;
    d.chain.lambda = o.lambda;
    d.chain.delta = depth >= 1 ? resolve_delta(p, o.delta, o.lambda, o.branch) : 0.0;
    switch (depth) {
    case 0:
        d.h = build_h0(p);
        break;
    case 1:
        d.h = derive_H1(p, d.chain.delta, d.chain.lambda, o.policy);
        break;
    case 2:
        std::tie(d.chain.kappa, d.chain.xi) = hermitising_choices(p.nu, p.omega, d.chain.delta, d.chain.lambda, o.policy);
        d.h = derive_H2(p, d.chain.delta, d.chain.lambda, o.policy);
        break;
    default:
        d.chain = h3_chain(p, d.chain.delta, d.chain.lambda, o.policy);
        d.h = derive_h3(p, d.chain.delta, d.chain.lambda, o.policy);
        break;
    }
    return d;
}

int cmd_derive(const Options& o, std::ostream& out) {
    const Printer pr(o.digits);
    const int depth = chain_depth(o.chain);
    const DerivedChain d = run_chain(o, depth);

    out << "chain    " << o.chain << "\n";
    if (depth >= 1) out << "delta    " << pr.num(d.chain.delta) << "\nlambda   " << pr.num(d.chain.lambda) << "\n";
    if (depth >= 2) out << "kappa    " << pr.num(d.chain.kappa) << "\nxi       " << pr.num(d.chain.xi) << "\n";
    if (depth >= 3) out << "mu       " << pr.num(d.chain.mu) << "\ntau      " << pr.num(d.chain.tau) << "\n";

    static const char* names[] = {"x", "y", "p_x", "p_y"};
    out << "coefficients (symmetrised products)\n";
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            char label[16];
            if (a == b)
                std::snprintf(label, sizeof label, "%s^2", names[a]);
            else
                std::snprintf(label, sizeof label, "%s %s", names[a], names[b]);
            out << "  " << label << std::string(10 - std::string(label).size(), ' ')
                << pr.cplx(d.h.coefficient(static_cast<Coord>(a), static_cast<Coord>(b))) << "\n";
        }
    const auto herm = is_hermitian(d.h, o.policy);
    out << "hermitian       " << (herm.hermitian ? "true" : "false") << " (max |Im| = " << pr.num(herm.residual) << ")\n"
        << "pt_symmetric    " << (is_pt_symmetric(d.h, o.policy) ? "true" : "false") << "\n";
    if (herm.hermitian) {
        const auto def = classify_definiteness(d.h, o.policy);
        auto sign = [](int s) { return s > 0 ? "+" : s < 0 ? "-" : "0"; };
        out << "kinetic         (" << sign(def.kinetic_signature[0]) << ", " << sign(def.kinetic_signature[1]) << ")"
            << (def.kinetic_signature[0] * def.kinetic_signature[1] < 0 ? " ghost" : "") << "\n"
            << "definiteness    " << to_string(def.full_form) << "\n";
    } else {
        out << "kinetic         n/a (not Hermitian)\n"
            << "definiteness    n/a (not Hermitian)\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tol = 0.0;
    std::string note;
};

int cmd_verify(const Options& o, bool corrupt, std::ostream& out, std::ostream& err) {
    const Printer pr(o.digits);
    const int depth = chain_depth(o.chain);
    const ModelParams p{o.nu, o.omega, o.g};
    const SectorFrame f = sector_params(p, {o.eps, o.eta}, o.policy);
    const double delta = depth >= 1 ? resolve_delta(p, o.delta, o.lambda, o.branch) : 0.0;
    const double lambda = o.lambda;

    ChainParams chain;
    chain.delta = delta;
    chain.lambda = lambda;
    if (depth == 2) std::tie(chain.kappa, chain.xi) = hermitising_choices(p.nu, p.omega, delta, lambda, o.policy);
    if (depth >= 3) chain = h3_chain(p, delta, lambda, o.policy);

    std::vector<CheckResult> checks;
    auto record = [&](const std::string& name, double value, double tol, std::string note = "") {
        checks.push_back({name, value <= tol, value, tol, std::move(note)});
    };
    auto guarded = [&](const std::string& name, double tol, const std::function<double()>& f) {
        try {
            record(name, f(), tol);
        } catch (const Error& e) {
            checks.push_back({name, false, NAN, tol, e.what()});
        }
    };

    struct NamedMap {
        std::string name;
        CanonicalMap map;
        WeylQuadraticForm generator;
    };
    std::vector<NamedMap> maps;
    if (depth >= 1) {
        CanonicalMap e0 = build_eta0(delta, lambda);
        if (corrupt) {
            Mat4 s = e0.matrix();
            s(0, 0) += 1e-3;
            e0 = CanonicalMap(s);
        }
        maps.push_back({"eta0", e0, eta0_generator(delta, lambda)});
    }
    if (depth >= 2) maps.push_back({"eta1", build_eta1(chain.kappa, chain.xi), eta1_generator(chain.kappa, chain.xi)});
    GaussFactors gf;
    if (depth >= 3) {
        gf = gauss_decompose(chain.mu, chain.tau, o.policy);
        maps.push_back({"eta2", build_eta2(chain.mu, chain.tau, o.policy), eta2_generator(chain.mu, chain.tau)});
        maps.push_back({"eta_minus", build_eta_minus(gf.zeta_minus), eta_minus_generator(gf.zeta_minus)});
        maps.push_back({"eta_z", build_eta_z(gf.zeta_z), eta_z_generator(gf.zeta_z)});
        maps.push_back({"eta_plus", build_eta_plus(gf.zeta_plus), eta_plus_generator(gf.zeta_plus)});
    }
    for (const auto& m : maps) record("symplectic " + m.name, m.map.symplectic_residual(), 1e-12);
    for (const auto& m : maps)
        record("oracle " + m.name,
               (m.map.matrix() - bch_adjoint_oracle(m.generator, 30).matrix()).cwiseAbs().maxCoeff(), 1e-10);
    if (depth >= 3)
        record("gauss composition",
               (compose_gauss_factors(gf, o.policy).matrix() - build_eta2(chain.mu, chain.tau, o.policy).matrix())
                   .cwiseAbs()
                   .maxCoeff(),
               1e-12);

    const WeylQuadraticForm h0 = build_h0(p);
    const Complex energy = f.ground_energy();
    guarded("eigen h0", 1e-9, [&] { return eigen_residual(h0, ground_state(f), energy).max_abs(); });

    if (depth >= 1) {
        guarded("closed form H1", 1e-10, [&] {
            const auto h1 = transform_quadratic(maps[0].map, h0, o.policy);
            return (h1.matrix() - closed_form_H1(p, delta, lambda).matrix()).cwiseAbs().maxCoeff();
        });
        guarded("eigen H1", 1e-9,
                [&] { return eigen_residual(derive_H1(p, delta, lambda, o.policy), psi1_state(f, delta, lambda), energy).max_abs(); });
    }
    if (depth >= 2) {
        guarded("closed form H2", 1e-10, [&] {
            const auto h2 = transform_quadratic(build_eta1(chain.kappa, chain.xi),
                                                transform_quadratic(build_eta0(delta, lambda), h0, o.policy), o.policy);
            return (h2.matrix() - closed_form_H2(p, delta, lambda).matrix()).cwiseAbs().maxCoeff();
        });
        guarded("hermitising H2", 1e-12, [&] {
            const auto h2 = derive_H2(p, delta, lambda, o.policy);
            return std::max(std::abs(h2.coefficient(Coord::x, Coord::px)), std::abs(h2.coefficient(Coord::y, Coord::py)));
        });
        guarded("eigen H2", 1e-9, [&] {
            const auto psi = eta1_state_map(chain.kappa, chain.xi, o.policy)(psi1_state(f, delta, lambda));
            return eigen_residual(derive_H2(p, delta, lambda, o.policy), psi, energy).max_abs();
        });
    }
    if (depth >= 3) {
        guarded("closed form h3", 1e-10, [&] {
            const auto s = compose_maps(build_eta2(chain.mu, chain.tau, o.policy),
                                        compose_maps(build_eta1(chain.kappa, chain.xi), build_eta0(delta, lambda)));
            const auto h3 = transform_quadratic(s, h0, o.policy);
            return (h3.matrix() - closed_form_h3(p, delta, lambda, o.policy).matrix()).cwiseAbs().maxCoeff();
        });
        guarded("hermitian h3", 1e-10, [&] { return is_hermitian(derive_h3(p, delta, lambda, o.policy), o.policy).residual; });
        guarded("eigen h3", 1e-9, [&] {
            return eigen_residual(derive_h3(p, delta, lambda, o.policy), phi3_state(f, chain, o.policy), energy).max_abs();
        });
    }

    const CheckResult* first_fail = nullptr;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.name << std::string(c.name.size() < 20 ? 20 - c.name.size() : 1, ' ')
            << pr.num(c.value) << " <= " << Printer(3).num(c.tol);
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << "\n";
        if (!c.pass && !first_fail) first_fail = &c;
    }
    if (first_fail) {
        err << "verify failed: " << first_fail->name << "\n";
        return kExitFailure;
    }
    out << "all " << checks.size() << " checks passed\n";
    return kExitOk;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const Options& o, int n_max, std::ostream& out) {
    const Printer pr(o.digits);
    const SectorFrame f = sector_params({o.nu, o.omega, o.g}, {o.eps, o.eta}, o.policy);
    const auto levels = energy_levels(f, n_max, o.policy);
    out << "N,n,branch,energy,real\n";
    std::optional<double> min_real;
    for (const auto& l : levels) {
        out << l.N << "," << (l.n ? std::to_string(*l.n) : "diag") << ","
            << (l.branch > 0 ? "+" : l.branch < 0 ? "-" : "0") << "," << pr.cplx(l.energy) << ","
            << (l.is_real ? 1 : 0) << "\n";
        if (l.is_real && (!min_real || l.energy.real() < *min_real)) min_real = l.energy.real();
    }
    out << "# ground energy " << pr.cplx(f.ground_energy()) << "\n";
    if (min_real) out << "# min real energy " << pr.num(*min_real) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- scan / boundary

struct ScanOptions {
    int figure = 0;
    std::string panel;
    std::string mode;
    std::string output;
    std::string outdir;
    std::optional<double> lambda_min, lambda_max, step;
    bool sector_given = false;
};

char panel_for(const ScanOptions& s, const Options& o) {
    if (!o.branch.empty()) {
        if (s.figure != 2) throw UsageError("--branch selects a figure-2 panel");
        if (!s.panel.empty()) throw UsageError("give either --panel or --branch");
        return branch_mode(o.branch) == DeltaMode::Plus ? 'a' : 'b';
    }
    if (s.panel.empty()) return 'a';
    if (s.panel != "a" && s.panel != "b") throw UsageError("panel must be a or b");
    return s.panel[0];
}

ScanConfig build_scan_config(const ScanOptions& s, const Options& o, const CLI::App* sub) {
    ScanConfig cfg;
    auto given = [&](const char* name) { return sub->count(name) > 0; };
    if (s.figure != 0) {
        cfg = figure_config(s.figure, panel_for(s, o));
        if (given("--nu")) cfg.params.nu = o.nu;
        if (given("--omega")) cfg.params.omega = o.omega;
        if (given("--g")) cfg.params.g = o.g;
        if (given("--delta")) {
            cfg.delta_mode = DeltaMode::Fixed;
            cfg.delta = o.delta;
        }
    } else {
        if (!given("--nu") || !given("--omega") || !given("--g"))
            throw UsageError("without --figure, --nu, --omega and --g are required");
        cfg.params = {o.nu, o.omega, o.g};
        cfg.sectors = all_sectors();
        cfg.delta = o.delta;
        cfg.delta_mode = o.branch.empty() ? DeltaMode::Fixed : branch_mode(o.branch);
    }
    if (!s.mode.empty()) cfg.mode = s.mode == "hat" ? ScanMode::Hat : ScanMode::Check;
    if (s.sector_given) cfg.sectors = {{o.eps, o.eta}};
    if (s.lambda_min) cfg.lambda_min = *s.lambda_min;
    if (s.lambda_max) cfg.lambda_max = *s.lambda_max;
    if (s.step) cfg.lambda_step = *s.step;
    return cfg;
}

int cmd_scan(const ScanOptions& s, const Options& o, const CLI::App* sub, std::ostream& out) {
    if (!s.outdir.empty()) {
        if (s.figure == 0) throw UsageError("--outdir needs --figure");
        for (const auto& path : reproduce_figures(s.figure, s.outdir, o.policy)) out << "wrote " << path.string() << "\n";
        return kExitOk;
    }
    const ScanConfig cfg = build_scan_config(s, o, sub);
    const auto rows = sweep_lambda(cfg, o.policy);
    if (s.output.empty()) {
        write_csv(out, rows);
        return kExitOk;
    }
    std::ofstream file(s.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + s.output);
    write_csv(file, rows);
    out << "wrote " << rows.size() << " rows to " << s.output << "\n";
    return kExitOk;
}

int cmd_boundary(const std::string& target, const std::vector<double>& bracket, double tol, ScanOptions s,
                 Options o, const CLI::App* sub, std::ostream& out) {
    const Printer pr(o.digits);
    std::function<double(double)> fn;
    if (target == "theta") {
        if (o.branch.empty()) o.branch = "plus";
        auto given = [&](const char* name) { return sub->count(name) > 0; };
        ModelParams p = figure_config(2, 'a').params;
        if (given("--nu")) p.nu = o.nu;
        if (given("--omega")) p.omega = o.omega;
        if (given("--g")) p.g = o.g;
        fn = theta_boundary_function(p, branch_mode(o.branch));
    } else {
        if (s.figure == 0) s.figure = 2;
        s.sector_given = true;
        const Quantity q = target == "q_a" ? Quantity::A : target == "q_b" ? Quantity::B : Quantity::Det;
        const ScanConfig cfg = build_scan_config(s, o, sub);
        fn = quantity_function(cfg, {o.eps, o.eta}, q, o.policy);
    }

    if (!bracket.empty()) {
        out << pr.num(find_boundary(fn, bracket[0], bracket[1], tol)) << "\n";
        return kExitOk;
    }
    const auto roots = find_boundaries(fn, s.lambda_min.value_or(-4.0), s.lambda_max.value_or(4.0),
                                       s.step.value_or(0.005), tol);
    if (roots.empty()) throw Error(ErrorKind::NoSignChange, "no sign change on the scanned range");
    for (double r : roots) out << pr.num(r) << "\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ghost-free similarity maps for a two-dimensional ghost oscillator", "ghostfree"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "expand all subcommand help");
    app.add_option("--config", "key = value file; command-line flags win")->expected(1);

    Options o;
    ScanOptions scan_opts;
    bool corrupt = false;
    int n_max = 10;
    std::string target;
    std::vector<double> bracket;
    double tol = 1e-10;

    auto* frame = app.add_subcommand("frame", "sector parameters and normalisability verdict");
    add_params(frame, o, true);
    add_sector(frame, o, true);
    add_digits(frame, o);
    add_policy_options(frame, o.policy);

    auto* derive = app.add_subcommand("derive", "apply a similarity chain to h0 and classify the result");
    add_params(derive, o, true);
    derive->add_option("--chain", o.chain, "h0 | h0,eta0 | h0,eta0,eta1 | h0,eta0,eta1,eta2")
        ->check(CLI::IsMember(kChains))
        ->default_str("h0");
    derive->add_option("--delta", o.delta, "eta0 parameter delta");
    derive->add_option("--lambda", o.lambda, "eta0 parameter lambda");
    derive->add_option("--branch", o.branch, "take delta from the Omega constraint branch")
        ->check(CLI::IsMember({"plus", "minus"}));
    add_digits(derive, o);
    add_policy_options(derive, o.policy);

    auto* verify = app.add_subcommand("verify", "run the consistency checks along a chain");
    add_params(verify, o, false);
    add_sector(verify, o, false);
    verify->add_option("--chain", o.chain, "chain to verify")->check(CLI::IsMember(kChains));
    verify->add_option("--delta", o.delta, "eta0 parameter delta");
    verify->add_option("--lambda", o.lambda, "eta0 parameter lambda");
    verify->add_option("--branch", o.branch, "take delta from the Omega constraint branch")
        ->check(CLI::IsMember({"plus", "minus"}));
    verify->add_flag("--corrupt", corrupt, "perturb eta0 so that the symplectic check must fail");
    add_digits(verify, o);
    add_policy_options(verify, o.policy);

    auto* spectrum = app.add_subcommand("spectrum", "energy levels up to N_max");
    add_params(spectrum, o, true);
    add_sector(spectrum, o, true);
    spectrum->add_option("--nmax", n_max, "largest N")->check(CLI::NonNegativeNumber);
    add_digits(spectrum, o);
    add_policy_options(spectrum, o.policy);

    auto add_scan_options = [&](CLI::App* sub) {
        add_params(sub, o, false);
        sub->add_option("--figure", scan_opts.figure, "figure preset (1 or 2)")->check(CLI::IsMember({1, 2}));
        sub->add_option("--panel", scan_opts.panel, "figure panel (a or b)")->check(CLI::IsMember({"a", "b"}));
        sub->add_option("--branch", o.branch, "delta branch (plus or minus)")->check(CLI::IsMember({"plus", "minus"}));
        sub->add_option("--delta", o.delta, "fixed delta");
        sub->add_option("--mode", scan_opts.mode, "hat or check exponents")->check(CLI::IsMember({"hat", "check"}));
        auto* e = sub->add_option("--eps", o.eps, "restrict to one sector")->check(CLI::IsMember({1, -1}));
        auto* h = sub->add_option("--eta", o.eta, "restrict to one sector")->check(CLI::IsMember({1, -1}));
        e->needs(h);
        h->needs(e);
        sub->add_option("--lambda-min", scan_opts.lambda_min, "lower end of the lambda range");
        sub->add_option("--lambda-max", scan_opts.lambda_max, "upper end of the lambda range");
        sub->add_option("--step", scan_opts.step, "lambda grid step")->check(CLI::PositiveNumber);
        add_digits(sub, o);
        add_policy_options(sub, o.policy);
    };

    auto* scan = app.add_subcommand("scan", "sweep lambda and write the normalisability CSV");
    add_scan_options(scan);
    scan->add_option("--output", scan_opts.output, "CSV path (default: stdout)");
    scan->add_option("--outdir", scan_opts.outdir, "write every panel of --figure into this directory");

    auto* boundary = app.add_subcommand("boundary", "locate a region boundary in lambda");
    add_scan_options(boundary);
    boundary->add_option("--target", target, "theta | q_a | q_b | q_det")
        ->required()
        ->check(CLI::IsMember({"theta", "q_a", "q_b", "q_det"}));
    boundary->add_option("--bracket", bracket, "lo hi")->expected(2);
    boundary->add_option("--tol", tol, "bracket width at convergence")->check(CLI::PositiveNumber);

    std::vector<std::string> args;
    try {
        args = inject_config(raw_args);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*frame) return cmd_frame(o, out);
        if (*derive) {
            if (o.chain.empty()) o.chain = "h0";
            return cmd_derive(o, out);
        }
        if (*verify) {
            if (!verify->count("--nu")) o.nu = 4.0;
            if (!verify->count("--omega")) o.omega = -2.0;
            if (!verify->count("--lambda")) o.lambda = 1.0;
            if (o.chain.empty()) o.chain = "h0,eta0,eta1";
            return cmd_verify(o, corrupt, out, err);
        }
        if (*spectrum) return cmd_spectrum(o, n_max, out);
        if (*scan) {
            scan_opts.sector_given = scan->count("--eps") > 0;
            return cmd_scan(scan_opts, o, scan, out);
        }
        if (*boundary) {
            scan_opts.sector_given = true;
            if (!bracket.empty() && !(bracket[0] < bracket[1])) throw UsageError("--bracket needs lo < hi");
            return cmd_boundary(target, bracket, tol, scan_opts, o, boundary, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace ghostfree::cli
