#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "risched/config.hpp"

using namespace risched;

TEST_CASE("defaults validate and build the reference scenario") {
    const ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    const auto b = cfg.budget();
    CHECK(b.tx_power == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(10.0 * std::log10(b.noise_power * 1000.0) == doctest::Approx(-112.45).epsilon(1e-12));
    CHECK(b.rician_k == doctest::Approx(std::pow(10.0, -0.9)).epsilon(1e-14));
    CHECK(b.pl_exponent == 2.7);
    CHECK(cfg.ris().d_x() == doctest::Approx(0.5 * 2.998e8 / 1.8e9).epsilon(1e-14));
    CHECK(cfg.grid().n_rb == 50);
    CHECK(cfg.frame().n_slots == 11);
    CHECK(cfg.outage().epsilon == 0.95);
    CHECK(cfg.lemma_form() == LemmaForm::derived);
}

TEST_CASE("parse_config reads sections, comments and top-level keys") {
    const auto cfg = parse_config(R"(# leading comment
users = 20

[link]
; a semicolon comment
rician_k_db = 3
lemma_literal = true

[experiment]
objective = max_min
schemes = jnt, csi
seq_overload = truncate
sweep_var = K
sweep_values = 10, 20, 30
)");
    CHECK(cfg.users == 20);
    CHECK(cfg.rician_k_db == 3.0);
    CHECK(cfg.lemma_literal);
    CHECK(cfg.objective == Objective::max_min);
    CHECK(cfg.schemes == std::vector<Scheme>{Scheme::jnt, Scheme::csi});
    CHECK(cfg.seq_overload == OverloadPolicy::truncate);
    CHECK(cfg.sweep_var == SweepVar::users);
    CHECK(cfg.sweep_values == std::vector<double>{10, 20, 30});
    CHECK(cfg.n_rb == 50);
}

TEST_CASE("parse_config rejects unknown or misplaced keys") {
    CHECK_THROWS_AS(parse_config("[link]\nkappa = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[radio]\nn_rb = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[link]\nn_rb = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[ofdm]\nn_rb = fifty\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[ofdm]\nn_rb = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[ofdm]\nn_rb = 3.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[experiment]\nobjective = fair\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[experiment]\nschemes = jnt,magic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[link\n"), ConfigError);
    try {
        parse_config("[link]\nkappa = 3\n", "my.ini");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("my.ini") != std::string::npos);
        CHECK(msg.find("kappa") != std::string::npos);
    }
}

TEST_CASE("to_text round trips through the parser") {
    ScenarioConfig cfg;
    cfg.users = 123;
    cfg.f0_hz = 2.45e9 + 0.125;
    cfg.rician_k_db = -7.3;
    cfg.schemes = {Scheme::csi};
    cfg.sweep_var = SweepVar::kappa_db;
    cfg.sweep_values = {-1.5, 0.1, 4.0};
    cfg.seed = 18446744073709551615ULL;
    const auto back = parse_config(cfg.to_text());
    CHECK(back.to_text() == cfg.to_text());
    CHECK(back.f0_hz == cfg.f0_hz);
    CHECK(back.seed == cfg.seed);
    CHECK(back.sweep_values == cfg.sweep_values);
}

TEST_CASE("hash is stable and sensitive") {
    const ScenarioConfig a;
    ScenarioConfig b;
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.tx_power_dbm = 20.5;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("apply_override") {
    ScenarioConfig cfg;
    apply_override(cfg, "rician_k_db=6");
    CHECK(cfg.rician_k_db == 6.0);
    apply_override(cfg, "experiment.users = 7");
    CHECK(cfg.users == 7);
    CHECK_THROWS_AS(apply_override(cfg, "link.users=7"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "nonsense=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "users"), ConfigError);

    ScenarioConfig untouched;
    untouched.rician_k_db = 6.0;
    untouched.users = 7;
    CHECK(cfg.to_text() == untouched.to_text());
}

TEST_CASE("config_keys lists every key once") {
    const auto keys = config_keys();
    const std::set<std::string> unique(keys.begin(), keys.end());
    CHECK(unique.size() == keys.size());
    CHECK(unique.count("link.rician_k_db") == 1);
    CHECK(unique.count("experiment.sweep_values") == 1);
    CHECK(keys.size() == 33);
}

TEST_CASE("validate rejects inconsistent settings") {
    auto broken = [](auto edit) {
        ScenarioConfig cfg;
        edit(cfg);
        return cfg;
    };
    CHECK_THROWS_AS(broken([](auto& c) { c.ring_inner_m = 40.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.bs_y_m = -5.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.n_slots = 12; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.tau_d = 8; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.epsilon = 1.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.users = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.trials = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.schemes.clear(); }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) { c.sweep_var = SweepVar::users; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](auto& c) {
                        c.sweep_var = SweepVar::users;
                        c.sweep_values = {10.5};
                    }).validate(),
                    ConfigError);
    CHECK_NOTHROW(broken([](auto& c) { c.rician_k_db = -40.0; }).validate());
}

TEST_CASE("load_config") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "risched_test_config.ini";
    {
        std::ofstream out(path);
        out << "[experiment]\nusers = 9\n";
    }
    CHECK(load_config(path).users == 9);
    std::filesystem::remove(path);
    try {
        load_config(dir / "does_not_exist.ini");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("does_not_exist.ini") != std::string::npos);
    }
}
