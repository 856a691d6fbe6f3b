#include "risched/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#ifndef RISCHED_VERSION
#define RISCHED_VERSION "0.0.0"
#endif

namespace risched {

namespace {

Codebook validated_codebook(const ScenarioConfig& cfg) {
    cfg.validate();
    return design_codebook(cfg.ris(), cfg.bs().azimuth, cfg.f0_hz, cfg.codebook_tau);
}

std::string fmt_number(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

struct Moments {
    double mean = 0.0;
    double stderr_ = 0.0;
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    if (xs.empty()) return m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        const double n = static_cast<double>(xs.size());
        m.stderr_ = std::sqrt(ss / (n - 1.0) / n);
    }
    return m;
}

std::string point_label(SweepVar var, const ScenarioConfig& cfg) {
    if (var == SweepVar::kappa_db) return "kappa_db=" + fmt_number(cfg.rician_k_db);
    return "K=" + std::to_string(cfg.users);
}

}  // namespace

Experiment::Experiment(const ScenarioConfig& config)
    : cfg(config),
      grid(config.grid()),
      budget(config.budget()),
      ris(config.ris()),
      ring(config.ring()),
      bs(config.bs()),
      frame(config.frame()),
      outage(config.outage()),
      codebook(validated_codebook(config)),
      model(budget, outage, config.lemma_form()) {}

const UserRates& TrialOutcome::of(Scheme scheme) const {
    for (std::size_t i = 0; i < schemes.size(); ++i)
        if (schemes[i] == scheme) return rates[i];
    throw std::out_of_range("scheme " + to_string(scheme) + " was not simulated");
}

TrialOutcome run_trial(const Experiment& exp, std::uint64_t trial) {
    const auto& cfg = exp.cfg;
    Scenario scenario{exp.bs, {}, exp.ris, exp.ring};
    scenario.users.reserve(cfg.users);
    for (std::size_t k = 0; k < cfg.users; ++k) {
        auto rng = substream(cfg.seed, trial, 0, k);
        scenario.users.push_back(sample_ring_position(exp.ring, rng, cfg.radius_law));
    }

    const bool need_robust = std::any_of(cfg.schemes.begin(), cfg.schemes.end(),
                                         [](Scheme s) { return s != Scheme::csi; });
    std::optional<RateTensor> robust;
    if (need_robust) robust = build_rate_tensor(scenario, exp.codebook, exp.grid, exp.model);

    auto allocate = [&](const RateTensor& rates) {
        return cfg.objective == Objective::max_rate ? max_rate_allocate(rates) : max_min_allocate(rates);
    };

    TrialOutcome out;
    for (Scheme scheme : cfg.schemes) {
        out.schemes.push_back(scheme);
        switch (scheme) {
            case Scheme::jnt: out.rates.push_back(user_rates(*robust, allocate(*robust))); break;
            case Scheme::seq: {
                const auto partition = assign_configs(scenario.users, exp.codebook);
                out.rates.push_back(
                    user_rates(*robust, sequential_allocate(*robust, partition, cfg.objective, cfg.seq_overload)));
                break;
            }
            case Scheme::csi: {
                std::vector<DirectChannel> direct;
                direct.reserve(cfg.users);
                for (std::size_t k = 0; k < cfg.users; ++k) {
                    auto rng = substream(cfg.seed, trial, 1, k);
                    direct.push_back(sample_direct(scenario.users[k], exp.bs, exp.grid, exp.budget, rng));
                }
                const auto rates = csi_rate_tensor(scenario, exp.codebook, exp.grid, exp.budget, direct);
                out.rates.push_back(user_rates(rates, allocate(rates)));
                break;
            }
        }
    }
    return out;
}

const ResultRow& ExperimentResult::row(double sweep_value, Scheme scheme) const {
    for (const auto& r : rows)
        if (r.sweep_value == sweep_value && r.scheme == scheme) return r;
    throw std::out_of_range("no result row for " + to_string(scheme) + " at " + fmt_number(sweep_value));
}

ScenarioConfig at_sweep_point(const ScenarioConfig& cfg, double value) {
    ScenarioConfig out = cfg;
    switch (cfg.sweep_var) {
        case SweepVar::none: break;
        case SweepVar::users: out.users = static_cast<std::size_t>(value); break;
        case SweepVar::kappa_db: out.rician_k_db = value; break;
    }
    return out;
}

ExperimentResult run_sweep(const ScenarioConfig& cfg, std::size_t threads) {
    cfg.validate();
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

    ExperimentResult result;
    result.sweep_var = cfg.sweep_var;
    result.objective = cfg.objective;
    result.trials = cfg.trials;
    result.seed = cfg.seed;
    result.config_hash = cfg.hash();
    result.version = version();
    result.sweep_values = cfg.sweep_var == SweepVar::none ? std::vector<double>{static_cast<double>(cfg.users)}
                                                          : cfg.sweep_values;

    for (double value : result.sweep_values) {
        const ScenarioConfig point = at_sweep_point(cfg, value);
        point.validate();
        const Experiment exp(point);

        std::vector<std::optional<TrialOutcome>> outcomes(cfg.trials);
        std::vector<std::exception_ptr> errors(cfg.trials);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t t = next++; t < cfg.trials; t = next++) {
                try {
                    outcomes[t] = run_trial(exp, t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        };
        const std::size_t n_workers = std::min(threads, cfg.trials);
        if (n_workers <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            if (!errors[t]) continue;
            try {
                std::rethrow_exception(errors[t]);
            } catch (const InfeasibleAllocation& e) {
                throw InfeasibleAllocation(point_label(cfg.sweep_var, point) + ", trial " + std::to_string(t) + ": " +
                                           e.what());
            }
        }

        const double delta_f = exp.grid.delta_f;
        for (Scheme scheme : point.schemes) {
            const double eta = efficiency(scheme, exp.frame, exp.outage, point.users, exp.ris.n_x());
            std::vector<double> tput(cfg.trials);
            std::vector<double> jain(cfg.trials);
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                const auto& rates = outcomes[t]->of(scheme);
                tput[t] = throughput(rates, exp.frame, delta_f, eta);
                jain[t] = jain_index(rates);
            }
            const auto mt = moments(tput);
            const auto mj = moments(jain);
            ResultRow row;
            row.sweep_value = value;
            row.scheme = scheme;
            row.users = point.users;
            row.efficiency = eta;
            row.mean_throughput = mt.mean;
            row.stderr_throughput = mt.stderr_;
            row.jain_mean = mj.mean;
            row.jain_stderr = mj.stderr_;
            row.per_user_throughput = mt.mean / static_cast<double>(point.users);
            result.rows.push_back(row);
        }
    }
    return result;
}

void write_csv(std::ostream& os, const ExperimentResult& result) {
    os << "sweep_var,sweep_value,scheme,objective,mean_throughput_bps,stderr_bps,jain_mean,jain_stderr,"
          "per_user_throughput_bps,trials,seed\n";
    for (const auto& r : result.rows) {
        os << to_string(result.sweep_var) << ',' << fmt_number(r.sweep_value) << ',' << to_string(r.scheme) << ','
           << to_string(result.objective) << ',' << fmt_number(r.mean_throughput) << ','
           << fmt_number(r.stderr_throughput) << ',' << fmt_number(r.jain_mean) << ',' << fmt_number(r.jain_stderr)
           << ',' << fmt_number(r.per_user_throughput) << ',' << result.trials << ',' << result.seed << '\n';
    }
}

void write_json(std::ostream& os, const ExperimentResult& result) {
    nlohmann::ordered_json doc;
    doc["provenance"] = {{"config_hash", result.config_hash},
                         {"seed", result.seed},
                         {"version", result.version},
                         {"trials", result.trials}};
    doc["sweep_var"] = to_string(result.sweep_var);
    doc["sweep_values"] = result.sweep_values;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"sweep_var", to_string(result.sweep_var)},
                        {"sweep_value", r.sweep_value},
                        {"scheme", to_string(r.scheme)},
                        {"objective", to_string(result.objective)},
                        {"mean_throughput_bps", r.mean_throughput},
                        {"stderr_bps", r.stderr_throughput},
                        {"jain_mean", r.jain_mean},
                        {"jain_stderr", r.jain_stderr},
                        {"per_user_throughput_bps", r.per_user_throughput},
                        {"efficiency", r.efficiency},
                        {"users", r.users},
                        {"trials", result.trials},
                        {"seed", result.seed}});
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

std::vector<std::string> preset_names() { return {"fig4a", "fig4b", "fig5a", "fig5b", "custom"}; }

ScenarioConfig preset_config(const std::string& name, ScenarioConfig base) {
    const std::vector<double> kappa_sweep{-12, -9, -6, -3, 0, 3, 6, 9, 12};
    if (name == "custom") return base;
    if (name == "fig4a") {
        base.sweep_var = SweepVar::users;
        base.sweep_values = {55, 110, 275, 550, 1100, 2750, 5500};
        base.rician_k_db = -9.0;
        base.objective = Objective::max_rate;
    } else if (name == "fig4b") {
        base.sweep_var = SweepVar::kappa_db;
        base.sweep_values = kappa_sweep;
        base.users = 55;
        base.objective = Objective::max_rate;
    } else if (name == "fig5a") {
        base.sweep_var = SweepVar::users;
        base.sweep_values = {50, 150, 250, 350, 450, 550};
        base.rician_k_db = -9.0;
        base.objective = Objective::max_min;
        base.seq_overload = OverloadPolicy::truncate;
    } else if (name == "fig5b") {
        base.sweep_var = SweepVar::kappa_db;
        base.sweep_values = kappa_sweep;
        base.users = 550;
        base.objective = Objective::max_min;
        base.seq_overload = OverloadPolicy::truncate;
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected fig4a, fig4b, fig5a, fig5b or custom)");
    }
    return base;
}

std::string version() { return RISCHED_VERSION; }

int cli_main(int argc, char** argv) {
    CLI::App app{"Localization-based RIS-aided OFDM uplink scheduling simulator"};
    std::string config_path;
    std::string preset = "custom";
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::string out_path = "-";
    std::string format = "csv";
    std::vector<std::string> overrides;
    std::size_t threads = 0;
    std::string codebook_path;
    bool print_config = false;

    app.add_option("--config", config_path, "INI scenario file");
    app.add_option("--preset", preset, "fig4a, fig4b, fig5a, fig5b or custom")
        ->check(CLI::IsMember(preset_names()));
    app.add_option("--trials", trials, "Monte-Carlo trials per sweep point");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--out", out_path, "output file, - for stdout");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--override", overrides, "key=value or section.key=value, repeatable");
    app.add_option("--threads", threads, "worker threads, 0 = all cores");
    app.add_option("--export-codebook", codebook_path, "write the codebook as CSV and continue");
    app.add_flag("--print-config", print_config, "print the resolved config and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        ScenarioConfig cfg = config_path.empty() ? ScenarioConfig{} : load_config(config_path);
        cfg = preset_config(preset, cfg);
        for (const auto& o : overrides) apply_override(cfg, o);
        if (trials) cfg.trials = *trials;
        if (seed) cfg.seed = *seed;
        cfg.validate();

        if (print_config) {
            std::cout << cfg.to_text();
            return 0;
        }
        if (!codebook_path.empty()) {
            std::ofstream cb(codebook_path);
            if (!cb) throw std::runtime_error("cannot write '" + codebook_path + "'");
            write_codebook_csv(cb, design_codebook(cfg.ris(), cfg.bs().azimuth, cfg.f0_hz, cfg.codebook_tau));
        }

        const auto result = run_sweep(cfg, threads);
        std::ofstream file;
        if (out_path != "-") {
            file.open(out_path);
            if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
        }
        std::ostream& os = out_path == "-" ? std::cout : file;
        if (format == "json")
            write_json(os, result);
        else
            write_csv(os, result);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InfeasibleAllocation& e) {
        std::cerr << "infeasible allocation: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace risched
