#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "risched/config.hpp"
#include "risched/metrics.hpp"

using namespace risched;
using std::numbers::pi;

namespace {

struct Setup {
    ScenarioConfig cfg;
    FrequencyGrid grid = cfg.grid();
    LinkBudget budget = cfg.budget();
    RisGeometry ris = cfg.ris();
    PolarPosition bs = cfg.bs();
    Codebook cb = design_codebook(ris, bs.azimuth, grid.f0, cfg.codebook_tau);

    Scenario scenario(std::size_t K, std::uint64_t seed) const {
        auto rng = substream(seed, 0, 0, 0);
        return {bs, sample_ring(K, cfg.ring(), rng), ris, cfg.ring()};
    }
};

}  // namespace

TEST_CASE("efficiency: reference frame") {
    const FrameSpec frame;
    const OutageSpec spec;
    CHECK(efficiency(Scheme::jnt, frame, spec, 55, 10) == 0.475);
    CHECK(efficiency(Scheme::seq, frame, spec, 55, 10) == 0.475);
    CHECK(csi_pilot_length(55, 10) == 605);
    CHECK(efficiency(Scheme::csi, frame, spec, 55, 10) == 154.0 / 759.0);
    CHECK(std::abs(efficiency(Scheme::csi, frame, spec, 55, 10) - 0.2029) < 1e-4);
}

TEST_CASE("efficiency: jnt ignores K, csi falls strictly toward zero") {
    const FrameSpec frame;
    const OutageSpec spec;
    double prev = 1.0;
    for (std::size_t K = 1; K <= 6000; K += 7) {
        CHECK(efficiency(Scheme::jnt, frame, spec, K, 10) == 0.475);
        const double eta = efficiency(Scheme::csi, frame, spec, K, 10);
        CHECK(eta < prev);
        CHECK(eta > 0.0);
        prev = eta;
    }
    CHECK(prev < 0.003);
}

TEST_CASE("FrameSpec::validate") {
    CHECK_NOTHROW(FrameSpec{}.validate());
    CHECK_THROWS_AS((FrameSpec{11, 14, 7, 6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((FrameSpec{0, 14, 7, 7}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((FrameSpec{11, 14, 0, 14}.validate()), std::invalid_argument);
}

TEST_CASE("throughput") {
    const FrameSpec frame;
    const UserRates one{{11.0}};
    CHECK(throughput(one, frame, 180e3, 0.475) == doctest::Approx(85.5e3).epsilon(1e-14));
    CHECK(throughput(one, frame, 180e3, 0.95) == doctest::Approx(2.0 * 85.5e3).epsilon(1e-14));
    const UserRates many{{1.0, 2.0, 8.0}};
    CHECK(throughput(many, frame, 180e3, 0.475) == doctest::Approx(85.5e3).epsilon(1e-14));
    CHECK_THROWS_AS(throughput(one, frame, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("jain_index") {
    CHECK(jain_index({{4.0, 4.0, 4.0, 4.0}}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(jain_index({{0.0, 7.0, 0.0, 0.0, 0.0}}) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(jain_index({{1.0, 2.0, 3.0}}) == doctest::Approx(36.0 / 42.0).epsilon(1e-15));
    CHECK(std::abs(jain_index({{1.0, 2.0, 3.0}}) - 0.857) < 1e-3);
    CHECK_THROWS_AS(jain_index({{0.0, 0.0}}), UndefinedMetric);
    CHECK_THROWS_AS(jain_index({{}}), UndefinedMetric);
}

TEST_CASE("evaluate") {
    const FrameSpec frame;
    const auto report = evaluate(Scheme::csi, {{11.0, 0.0}}, frame, 180e3, 0.475);
    CHECK(report.scheme == Scheme::csi);
    CHECK(report.efficiency == 0.475);
    CHECK(report.mean_throughput == doctest::Approx(85.5e3));
    CHECK(report.jain == doctest::Approx(0.5));
    REQUIRE(report.per_user_throughput.size() == 2);
    CHECK(report.per_user_throughput[0] == doctest::Approx(85.5e3));
    CHECK(report.per_user_throughput[1] == 0.0);
}

TEST_CASE("scheme names round trip") {
    for (auto s : {Scheme::jnt, Scheme::seq, Scheme::csi}) CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("oracle"), std::invalid_argument);
}

TEST_CASE("csi tensor without scattering is the deterministic capacity") {
    const Setup s;
    const auto scenario = s.scenario(6, 3);
    std::vector<DirectChannel> los;
    for (const auto& ue : scenario.users) {
        const double r = bs_ue_distance(s.bs, ue);
        DirectChannel h;
        for (std::size_t f = 0; f < s.grid.n_rb; ++f)
            h.coefficients.push_back(std::sqrt(pathloss(r, s.budget)) * los_phasor(r, f, s.grid));
        los.push_back(h);
    }
    const auto t = csi_rate_tensor(scenario, s.cb, s.grid, s.budget, los);
    for (std::size_t k = 0; k < scenario.users.size(); ++k)
        for (std::size_t c = 0; c < s.cb.size(); ++c) {
            const auto g = reflected_channel(scenario.users[k], s.bs, s.cb[c], s.ris, s.grid, s.budget);
            for (std::size_t f = 0; f < s.grid.n_rb; f += 7) {
                const double expected =
                    std::log2(1.0 + s.budget.tx_power * std::norm(los[k].coefficients[f] + g.coefficients[f]) /
                                        s.budget.noise_power);
                CHECK(t.at(k, f, c) == doctest::Approx(expected).epsilon(1e-12));
            }
        }

    // a huge K-factor drawn through the sampler lands on the same tensor
    auto budget = s.budget;
    budget.rician_k = 1e12;
    auto rng = substream(1, 0, 1, 0);
    const auto drawn = csi_rate_tensor(scenario, s.cb, s.grid, budget, rng);
    for (std::size_t i = 0; i < t.values().size(); i += 13)
        CHECK(drawn.values()[i] == doctest::Approx(t.values()[i]).epsilon(1e-5));
}

TEST_CASE("csi rate clears the robust rate in about an epsilon share of draws") {
    const Setup s;
    const OutageSpec spec;
    const auto scenario = s.scenario(4, 11);
    const auto robust = build_rate_tensor(scenario, s.cb, s.grid, s.budget, spec);
    const std::size_t draws = 4000;
    std::size_t hits = 0;
    std::size_t total = 0;
    for (std::size_t d = 0; d < draws; ++d) {
        auto rng = substream(99, d, 1, 0);
        const auto csi = csi_rate_tensor(scenario, s.cb, s.grid, s.budget, rng);
        // one resource per user per draw keeps the samples independent
        for (std::size_t k = 0; k < 4; ++k) {
            const std::size_t f = (d + 3 * k) % s.grid.n_rb;
            const std::size_t c = (d / 5 + k) % s.cb.size();
            hits += csi.at(k, f, c) >= robust.at(k, f, c);
            ++total;
        }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(total);
    const double sigma = std::sqrt(spec.epsilon * (1.0 - spec.epsilon) / static_cast<double>(total));
    CHECK(frac >= 1.0 - spec.epsilon);
    CHECK(std::abs(frac - spec.epsilon) < 4.0 * sigma);
}

TEST_CASE("csi tensors differ between fading streams") {
    const Setup s;
    const auto scenario = s.scenario(3, 2);
    auto a = substream(1, 0, 1, 0);
    auto b = substream(2, 0, 1, 0);
    const auto ta = csi_rate_tensor(scenario, s.cb, s.grid, s.budget, a);
    const auto tb = csi_rate_tensor(scenario, s.cb, s.grid, s.budget, b);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < ta.values().size(); ++i) differ += ta.values()[i] != tb.values()[i];
    CHECK(differ == ta.values().size());

    auto again = substream(1, 0, 1, 0);
    const auto tc = csi_rate_tensor(scenario, s.cb, s.grid, s.budget, again);
    CHECK(std::equal(ta.values().begin(), ta.values().end(), tc.values().begin()));
}

TEST_CASE("csi tensor argument checks") {
    const Setup s;
    const auto scenario = s.scenario(2, 1);
    CHECK_THROWS_AS(csi_rate_tensor(scenario, s.cb, s.grid, s.budget, std::vector<DirectChannel>(1)),
                    std::invalid_argument);
    std::vector<DirectChannel> short_rows(2);
    short_rows[0].coefficients.resize(3);
    short_rows[1].coefficients.resize(3);
    CHECK_THROWS_AS(csi_rate_tensor(scenario, s.cb, s.grid, s.budget, short_rows), std::invalid_argument);
}
