#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "risched/channel.hpp"
#include "risched/codebook.hpp"

using namespace risched;
using std::numbers::pi;

namespace {

const FrequencyGrid kGrid;

RisGeometry table_ris(std::size_t n_x = 10) { return RisGeometry::half_wavelength(n_x, 10, kGrid.wavelength(0)); }

double bs_azimuth() { return std::atan2(100.0, 10.0); }

}  // namespace

TEST_CASE("solve_x_tau") {
    CHECK(std::abs(solve_x_tau(0.5) - 1.39156) < 1e-4);
    CHECK(solve_x_tau(1.0) == 0.0);
    CHECK(solve_x_tau(std::pow(2.0 / pi, 2)) == doctest::Approx(pi / 2).epsilon(1e-11));
    const double x = solve_x_tau(0.5);
    CHECK(std::pow(std::sin(x) / x, 2) == doctest::Approx(0.5).epsilon(1e-11));
    CHECK_THROWS_AS(solve_x_tau(0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_x_tau(1.5), std::invalid_argument);
}

TEST_CASE("num_configs") {
    const double x = solve_x_tau(0.5);
    const auto table = num_configs(table_ris(), kGrid.f0, x);
    CHECK(table.valid_centers == 11);
    CHECK(table.raw_ceiling == 12);
    CHECK(table.raw_ceiling == static_cast<std::size_t>(std::ceil(pi * 5.0 / x)));

    const auto one = num_configs(table_ris(1), kGrid.f0, x);
    CHECK(one.raw_ceiling == 2);
    CHECK(one.valid_centers == 1);

    // independent count: largest c with 1 - (2c - 1) unit >= -1
    const double unit = x / (5.0 * pi);
    std::size_t expected = 0;
    for (std::size_t c = 1; c < 100; ++c)
        if (1.0 - (2.0 * c - 1.0) * unit >= -1.0) expected = c;
    CHECK(table.valid_centers == expected);
}

TEST_CASE("design_codebook: reference beam centres") {
    const auto cb = design_codebook(table_ris(), bs_azimuth(), kGrid.f0, 0.5);
    REQUIRE(cb.size() == 11);
    CHECK(cb.cos_step() == doctest::Approx(0.08855).epsilon(1e-3));
    CHECK(cb[0].cos_center == doctest::Approx(0.91145).epsilon(1e-4));
    CHECK(rad2deg(cb[0].center_azimuth) == doctest::Approx(24.29).epsilon(1e-3));
    CHECK(cb[5].cos_center == doctest::Approx(0.02595).epsilon(2e-3));
    // 88.51 deg comes from x_tau rounded to 1.391; the exact root moves it by 0.03 deg
    CHECK(std::abs(rad2deg(cb[5].center_azimuth) - 88.51) < 0.05);
    CHECK(1.0 - 11.0 * 0.08855 == doctest::Approx(0.02595).epsilon(1e-9));
    CHECK(rad2deg(std::acos(1.0 - 11.0 * 1.391 / (5.0 * pi))) == doctest::Approx(88.51).epsilon(1e-4));
    CHECK(cb[0].cos_hp_minus == 1.0);
    CHECK(cb.tau() == 0.5);
    CHECK(cb.x_tau() == doctest::Approx(1.39156).epsilon(1e-4));
}

TEST_CASE("design_codebook: structure invariants") {
    const auto cb = design_codebook(table_ris(), bs_azimuth(), kGrid.f0, 0.5);
    for (std::size_t c = 0; c < cb.size(); ++c) {
        const auto& cfg = cb[c];
        CHECK(cfg.index == c + 1);
        CHECK(cfg.hp_minus < cfg.center_azimuth);
        CHECK(cfg.center_azimuth < cfg.hp_plus);
        CHECK(cfg.cos_hp_minus > cfg.cos_center);
        CHECK(cfg.cos_center > cfg.cos_hp_plus);
        CHECK(cfg.cos_hp_minus - cfg.cos_hp_plus == doctest::Approx(2.0 * cb.cos_step()).epsilon(1e-12));
        if (c + 1 < cb.size()) {
            CHECK(std::abs(cb[c + 1].cos_hp_minus - cfg.cos_hp_plus) < 1e-12);
            CHECK(cb[c + 1].center_azimuth > cfg.center_azimuth);
        }
        REQUIRE(cfg.phases.size() == 10);
        const double step = cfg.phases[1] - cfg.phases[0];
        for (std::size_t n = 0; n + 1 < cfg.phases.size(); ++n) {
            CHECK(std::isfinite(cfg.phases[n]));
            CHECK(cfg.phases[n + 1] - cfg.phases[n] == doctest::Approx(step).epsilon(1e-9));
        }
        for (double w : cfg.wrapped_phases()) {
            CHECK(w >= 0.0);
            CHECK(w < 2 * pi);
        }
    }
}

TEST_CASE("design_codebook: phases follow the steering rule") {
    const auto ris = table_ris();
    const auto cb = design_codebook(ris, bs_azimuth(), kGrid.f0, 0.5);
    const double k0 = 2 * pi * kGrid.f0 / kPropagationSpeed;
    for (const auto& cfg : cb) {
        const double phi_x = std::cos(bs_azimuth()) + cfg.cos_center;
        const double phi_res = phi_x * 11.0 * ris.d_x() / 2.0;
        for (std::size_t n = 1; n <= 10; ++n) {
            const double expected = k0 * (phi_res - static_cast<double>(n) * ris.d_x() * phi_x);
            CHECK(cfg.phases[n - 1] == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("design_codebook: gain at centres and crossovers") {
    const auto ris = table_ris();
    const auto cb = design_codebook(ris, bs_azimuth(), kGrid.f0, 0.5);
    for (const auto& cfg : cb) {
        CHECK(std::abs(array_factor(cfg.center_azimuth, bs_azimuth(), cfg.center_azimuth, 0, ris, kGrid) - 1.0) <
              1e-12);
        const double af = array_factor(cfg.hp_plus, bs_azimuth(), cfg.center_azimuth, 0, ris, kGrid);
        CHECK(af * af >= 0.45);
        CHECK(af * af <= 0.55);
    }
}

TEST_CASE("design_codebook: coverage over the covered band") {
    const auto ris = table_ris();
    const auto cb = design_codebook(ris, bs_azimuth(), kGrid.f0, 0.5);
    const double last = rad2deg(cb[cb.size() - 1].hp_plus);
    std::size_t points = 0;
    for (double deg = 0.1; deg < last; deg += 0.1) {
        double best = 0.0;
        for (const auto& cfg : cb) {
            const double af = array_factor(deg2rad(deg), bs_azimuth(), cfg.center_azimuth, 0, ris, kGrid);
            best = std::max(best, af * af);
        }
        CHECK(best >= 0.45);
        ++points;
    }
    CHECK(points > 1500);
}

TEST_CASE("design_codebook: bad tau") {
    CHECK_THROWS_AS(design_codebook(table_ris(), bs_azimuth(), kGrid.f0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(design_codebook(table_ris(), bs_azimuth(), kGrid.f0, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(design_codebook(table_ris(), bs_azimuth(), kGrid.f0, 1.0), std::invalid_argument);
}

TEST_CASE("codebook CSV export") {
    const auto cb = design_codebook(table_ris(), bs_azimuth(), kGrid.f0, 0.5);
    std::ostringstream os;
    write_codebook_csv(os, cb);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("config,center_deg,hp_minus_deg,hp_plus_deg,phase_1,", 0) == 0);
    CHECK(line.find("phase_10") != std::string::npos);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 13);
    }
    CHECK(rows == 11);
}
