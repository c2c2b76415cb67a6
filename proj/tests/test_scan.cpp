#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghostfree/errors.hpp"
#include "ghostfree/scan.hpp"

using namespace ghostfree;

namespace {

std::string csv_of(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

const ScanRow* find_row(const std::vector<ScanRow>& rows, double lambda, SectorLabel s) {
    for (const auto& r : rows)
        if (std::abs(r.lambda - lambda) < 1e-12 && r.sector == s) return &r;
    return nullptr;
}

} // namespace

TEST_CASE("lambda_grid") {
    const auto g = lambda_grid(-1.0, 1.0, 0.25);
    REQUIRE(g.size() == 9);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 1.0);
    CHECK(g[4] == 0.0);
    CHECK(lambda_grid(-4.0, 4.0, 0.005).size() == 1601);
    CHECK(lambda_grid(1.0, 0.0, 0.1).empty());
    CHECK_THROWS_AS(lambda_grid(0.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(lambda_grid(0.0, INFINITY, 0.1), Error);
}

TEST_CASE("find_boundary") {
    const double r = find_boundary([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12);
    CHECK(std::abs(r - std::sqrt(2.0)) < 1e-12);
    try {
        find_boundary([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-9);
        FAIL("expected NoSignChange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSignChange);
    }
    const auto all = find_boundaries([](double x) { return std::sin(x); }, 0.5, 7.0, 0.1, 1e-12);
    REQUIRE(all.size() == 2);
    CHECK(std::abs(all[0] - M_PI) < 1e-11);
    CHECK(std::abs(all[1] - 2 * M_PI) < 1e-11);
}

TEST_CASE("theta boundaries at figure-2 parameters") {
    const ModelParams p{4.0, -2.0, 3.0};
    const auto plus = theta_boundary_function(p, DeltaMode::Plus);
    CHECK(std::abs(find_boundary(plus, 2.0, 2.3, 1e-12) - 2.1332231240346877) < 1e-9);
    CHECK(std::abs(find_boundary(plus, 0.8, 1.0, 1e-12) - 0.9375484343228405) < 1e-9);
    CHECK(std::abs(find_boundary(plus, 2.0, 2.3, 1e-10) - 2.13322) < 1e-4);
    CHECK(std::abs(find_boundary(plus, 0.8, 1.0, 1e-10) - 0.93755) < 1e-4);

    const auto minus = theta_boundary_function(p, DeltaMode::Minus);
    const auto roots = find_boundaries(minus, 0.05, 4.0, 0.005, 1e-12);
    bool has_a = false, has_b = false;
    for (double r : roots) {
        has_a = has_a || std::abs(r - 1.1655256377165612) < 1e-9;
        has_b = has_b || std::abs(r - 1.7159639696285864) < 1e-9;
    }
    CHECK(has_a);
    CHECK(has_b);
    CHECK(std::isnan(plus(0.0)));
}

TEST_CASE("evaluate_row") {
    SUBCASE("figure 1 examples") {
        const auto cfg = figure_config(1, 'a');
        CHECK(evaluate_row(cfg, 0.0, {-1, 1}).normalisable());
        CHECK_FALSE(evaluate_row(cfg, 0.0, {1, 1}).normalisable());
        CHECK(evaluate_row(cfg, 2.0, {1, 1}).normalisable());
        CHECK_FALSE(evaluate_row(cfg, 2.0, {-1, 1}).normalisable());
    }

    SUBCASE("figure 2 key sample") {
        const auto row = evaluate_row(figure_config(2, 'a'), 2.5, {1, 1});
        REQUIRE(row.valid());
        CHECK(row.normalisable());
        CHECK(*row.q_a == doctest::Approx(1.3606).epsilon(1e-4));
        CHECK(*row.q_b == doctest::Approx(2.7104).epsilon(1e-4));
        CHECK(*row.q_det == doctest::Approx(3.6821).epsilon(1e-4));
    }

    SUBCASE("invalid rows carry no quantities") {
        const auto cfg = figure_config(2, 'a');
        const auto out_of_range = evaluate_row(cfg, 1.5, {1, 1});
        CHECK_FALSE(out_of_range.theta_in_range);
        CHECK_FALSE(out_of_range.valid());
        CHECK_FALSE(out_of_range.q_a.has_value());
        CHECK_FALSE(out_of_range.q_det.has_value());

        const auto at_zero = evaluate_row(cfg, 0.0, {1, 1});
        CHECK_FALSE(at_zero.valid());
        CHECK_FALSE(at_zero.q_b.has_value());
    }

    SUBCASE("hat parameters approach the frame as lambda and delta vanish") {
        ScanConfig cfg = figure_config(1, 'b');
        const auto f = sector_params(cfg.params, {-1, 1});
        for (double lambda : {1e-2, 1e-3, 1e-4}) {
            const auto row = evaluate_row(cfg, lambda, {-1, 1});
            REQUIRE(row.valid());
            CHECK(std::abs(*row.q_a - f.alpha.real()) < 10 * lambda);
            CHECK(std::abs(*row.q_b - f.beta.real()) < 10 * lambda);
        }
    }
}

TEST_CASE("figure 1 threshold at sqrt 2") {
    const auto cfg = figure_config(1, 'a');
    const auto qb = quantity_function(cfg, {1, 1}, Quantity::B);
    const double r = find_boundary(qb, 1.0, 2.0, 1e-12);
    CHECK(std::abs(r - std::sqrt(2.0)) < 1e-9);
    const double rn = find_boundary(qb, -2.0, -1.0, 1e-12);
    CHECK(std::abs(rn + std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("sweep and CSV") {
    SUBCASE("ordering and determinism") {
        ScanConfig cfg = figure_config(2, 'a');
        cfg.lambda_min = 0.9;
        cfg.lambda_max = 1.0;
        cfg.lambda_step = 0.05;
        const auto rows = sweep_lambda(cfg);
        REQUIRE(rows.size() == 3 * 4);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].lambda == doctest::Approx(0.9 + 0.05 * (i / 4)));
            CHECK(rows[i].sector == all_sectors()[i % 4]);
        }
        CHECK(csv_of(rows) == csv_of(sweep_lambda(cfg)));
    }

    SUBCASE("empty range gives a header-only file") {
        ScanConfig cfg = figure_config(1, 'a');
        cfg.lambda_min = 1.0;
        cfg.lambda_max = 0.0;
        CHECK(csv_of(sweep_lambda(cfg)) == std::string(kCsvHeader) + "\n");
    }

    SUBCASE("round trip") {
        ScanConfig cfg = figure_config(2, 'a');
        cfg.lambda_min = -0.2;
        cfg.lambda_max = 2.6;
        cfg.lambda_step = 0.1;
        const auto rows = sweep_lambda(cfg);
        const std::string text = csv_of(rows);
        std::istringstream in(text);
        const auto back = read_csv(in);
        REQUIRE(back.size() == rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(back[i].lambda == rows[i].lambda);
            CHECK(back[i].sector == rows[i].sector);
            CHECK(back[i].valid() == rows[i].valid());
            CHECK(back[i].q_a == rows[i].q_a);
            CHECK(back[i].q_det == rows[i].q_det);
            CHECK(back[i].energy == rows[i].energy);
        }
        CHECK(csv_of(back) == text);
    }

    SUBCASE("malformed input") {
        std::istringstream bad_header("lambda,eps\n");
        CHECK_THROWS_AS(read_csv(bad_header), Error);
        std::istringstream bad_row(std::string(kCsvHeader) + "\n0.5,1,1,x,,,1,\n");
        CHECK_THROWS_AS(read_csv(bad_row), Error);
    }
}

TEST_CASE("figure 2 validity window") {
    const auto rows = sweep_lambda(figure_config(2, 'a'));
    for (const auto& r : rows) {
        const double a = std::abs(r.lambda);
        if (a < 0.93 && a > 1e-9) CHECK(r.theta_in_range);
        if (a > 0.95 && a < 2.12) CHECK_FALSE(r.theta_in_range);
        if (a > 2.14) CHECK(r.theta_in_range);
    }
    const auto* key = find_row(rows, 2.5, {1, 1});
    REQUIRE(key != nullptr);
    CHECK(key->normalisable());
}

TEST_CASE("reproduce_figures writes one file per panel") {
    const auto dir = std::filesystem::temp_directory_path() / "ghostfree_test_figs";
    std::filesystem::remove_all(dir);
    const auto paths = reproduce_figures(1, dir);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].filename() == "fig1a.csv");
    CHECK(paths[1].filename() == "fig1b.csv");
    std::ifstream in(paths[0]);
    std::string header;
    std::getline(in, header);
    CHECK(header == kCsvHeader);
    std::filesystem::remove_all(dir);
}
