#include "risched/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace risched {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto t = trim(v);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(out))
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto t = trim(v);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty())
        throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    const auto t = trim(v);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::string fmt(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

struct KeyDesc {
    const char* section;
    const char* key;
    std::function<void(ScenarioConfig&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

#define RISCHED_DOUBLE(sec, name)                                                          \
    KeyDesc{sec, #name, [](ScenarioConfig& c, const std::string& v) { c.name = to_double(#name, v); }, \
            [](const ScenarioConfig& c) { return fmt(c.name); }}
#define RISCHED_UINT(sec, name)                                                                               \
    KeyDesc{sec, #name, [](ScenarioConfig& c, const std::string& v) { c.name = to_uint(#name, v); }, \
            [](const ScenarioConfig& c) { return fmt(static_cast<std::uint64_t>(c.name)); }}

const std::vector<KeyDesc>& key_table() {
    static const std::vector<KeyDesc> table = {
        RISCHED_DOUBLE("geometry", ring_inner_m),
        RISCHED_DOUBLE("geometry", ring_outer_m),
        RISCHED_DOUBLE("geometry", bs_x_m),
        RISCHED_DOUBLE("geometry", bs_y_m),
        RISCHED_DOUBLE("geometry", bs_z_m),
        KeyDesc{"geometry", "radius_law",
                [](ScenarioConfig& c, const std::string& v) {
                    const auto t = trim(v);
                    if (t == "area_uniform")
                        c.radius_law = RadiusLaw::area_uniform;
                    else if (t == "range_uniform")
                        c.radius_law = RadiusLaw::range_uniform;
                    else
                        throw ConfigError("key 'radius_law': expected area_uniform or range_uniform, got '" + v + "'");
                },
                [](const ScenarioConfig& c) {
                    return std::string(c.radius_law == RadiusLaw::area_uniform ? "area_uniform" : "range_uniform");
                }},
        RISCHED_UINT("ris", n_x),
        RISCHED_UINT("ris", n_z),
        RISCHED_DOUBLE("ris", spacing_wavelengths),
        RISCHED_DOUBLE("ris", codebook_tau),
        RISCHED_DOUBLE("ofdm", f0_hz),
        RISCHED_DOUBLE("ofdm", delta_f_hz),
        RISCHED_UINT("ofdm", n_rb),
        RISCHED_UINT("ofdm", n_slots),
        RISCHED_UINT("ofdm", tau_ofdm),
        RISCHED_UINT("ofdm", tau_d),
        RISCHED_UINT("ofdm", tau_l),
        RISCHED_DOUBLE("link", epsilon),
        RISCHED_DOUBLE("link", antenna_gain_db),
        RISCHED_DOUBLE("link", pathloss_exponent),
        RISCHED_DOUBLE("link", beta0_db),
        RISCHED_DOUBLE("link", tx_power_dbm),
        RISCHED_DOUBLE("link", noise_power_dbm),
        RISCHED_DOUBLE("link", rician_k_db),
        KeyDesc{"link", "lemma_literal",
                [](ScenarioConfig& c, const std::string& v) { c.lemma_literal = to_bool("lemma_literal", v); },
                [](const ScenarioConfig& c) { return std::string(c.lemma_literal ? "true" : "false"); }},
        RISCHED_UINT("experiment", users),
        KeyDesc{"experiment", "objective",
                [](ScenarioConfig& c, const std::string& v) {
                    try {
                        c.objective = parse_objective(trim(v));
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(e.what());
                    }
                },
                [](const ScenarioConfig& c) { return to_string(c.objective); }},
        KeyDesc{"experiment", "schemes",
                [](ScenarioConfig& c, const std::string& v) {
                    std::vector<Scheme> out;
                    try {
                        for (const auto& s : split_list(v)) out.push_back(parse_scheme(s));
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(e.what());
                    }
                    c.schemes = std::move(out);
                },
                [](const ScenarioConfig& c) {
                    std::string out;
                    for (auto s : c.schemes) out += (out.empty() ? "" : ",") + to_string(s);
                    return out;
                }},
        RISCHED_UINT("experiment", trials),
        RISCHED_UINT("experiment", seed),
        KeyDesc{"experiment", "seq_overload",
                [](ScenarioConfig& c, const std::string& v) {
                    const auto t = trim(v);
                    if (t == "error")
                        c.seq_overload = OverloadPolicy::error;
                    else if (t == "truncate")
                        c.seq_overload = OverloadPolicy::truncate;
                    else
                        throw ConfigError("key 'seq_overload': expected error or truncate, got '" + v + "'");
                },
                [](const ScenarioConfig& c) {
                    return std::string(c.seq_overload == OverloadPolicy::error ? "error" : "truncate");
                }},
        KeyDesc{"experiment", "sweep_var",
                [](ScenarioConfig& c, const std::string& v) {
                    const auto t = trim(v);
                    if (t == "none")
                        c.sweep_var = SweepVar::none;
                    else if (t == "K" || t == "users")
                        c.sweep_var = SweepVar::users;
                    else if (t == "kappa_db" || t == "rician_k_db")
                        c.sweep_var = SweepVar::kappa_db;
                    else
                        throw ConfigError("key 'sweep_var': expected none, K or kappa_db, got '" + v + "'");
                },
                [](const ScenarioConfig& c) { return to_string(c.sweep_var); }},
        KeyDesc{"experiment", "sweep_values",
                [](ScenarioConfig& c, const std::string& v) {
                    std::vector<double> out;
                    for (const auto& s : split_list(v)) out.push_back(to_double("sweep_values", s));
                    c.sweep_values = std::move(out);
                },
                [](const ScenarioConfig& c) {
                    std::string out;
                    for (double v : c.sweep_values) out += (out.empty() ? "" : ",") + fmt(v);
                    return out;
                }},
    };
    return table;
}

#undef RISCHED_DOUBLE
#undef RISCHED_UINT

const KeyDesc* find_key(const std::string& name) {
    for (const auto& d : key_table())
        if (name == d.key) return &d;
    return nullptr;
}

bool known_section(const std::string& name) {
    for (const auto& d : key_table())
        if (name == d.section) return true;
    return false;
}

void set_key(ScenarioConfig& cfg, const std::string& section, const std::string& key, const std::string& value) {
    const KeyDesc* d = find_key(key);
    if (d == nullptr) throw ConfigError("unknown config key '" + key + "'");
    if (!section.empty() && section != d->section)
        throw ConfigError("key '" + key + "' belongs in section [" + d->section + "], not [" + section + "]");
    d->set(cfg, value);
}

}  // namespace

std::string to_string(SweepVar var) {
    switch (var) {
        case SweepVar::none: return "none";
        case SweepVar::users: return "K";
        case SweepVar::kappa_db: return "kappa_db";
    }
    return "?";
}

FrequencyGrid ScenarioConfig::grid() const { return {f0_hz, delta_f_hz, n_rb}; }

LinkBudget ScenarioConfig::budget() const {
    LinkBudget b;
    b.tx_power = db_to_linear(tx_power_dbm) / 1000.0;
    b.noise_power = db_to_linear(noise_power_dbm) / 1000.0;
    b.rician_k = db_to_linear(rician_k_db);
    b.beta0 = db_to_linear(beta0_db);
    b.pl_exponent = pathloss_exponent;
    b.antenna_gain_product = db_to_linear(antenna_gain_db);
    return b;
}

RisGeometry ScenarioConfig::ris() const {
    const double d = spacing_wavelengths * kPropagationSpeed / f0_hz;
    return {n_x, n_z, d, d};
}

RingArea ScenarioConfig::ring() const { return {ring_inner_m, ring_outer_m}; }

PolarPosition ScenarioConfig::bs() const { return cartesian_to_polar({bs_x_m, bs_y_m, bs_z_m}); }

FrameSpec ScenarioConfig::frame() const { return {n_slots, tau_ofdm, tau_d, tau_l}; }

OutageSpec ScenarioConfig::outage() const { return {epsilon}; }

void ScenarioConfig::validate() const {
    try {
        grid().validate();
        budget().validate();
        frame().validate();
        outage().validate();
        const auto r = ring();
        if (!(r.inner > 0.0) || !(r.outer > r.inner)) throw std::invalid_argument("ring radii must satisfy 0 < inner < outer");
        const auto b = bs();
        if (!(b.azimuth > 0.0 && b.azimuth < std::numbers::pi))
            throw std::invalid_argument("BS must lie in the half-plane y > 0");
        const auto codebook = design_codebook(ris(), b.azimuth, f0_hz, codebook_tau);
        if (codebook.size() != n_slots)
            throw std::invalid_argument("n_slots (" + std::to_string(n_slots) + ") must equal the codebook size (" +
                                        std::to_string(codebook.size()) + ")");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (users == 0) throw ConfigError("users must be at least 1");
    if (trials == 0) throw ConfigError("trials must be at least 1");
    if (schemes.empty()) throw ConfigError("at least one scheme is required");
    if (sweep_var != SweepVar::none && sweep_values.empty()) throw ConfigError("sweep_var set but sweep_values empty");
    if (sweep_var == SweepVar::users)
        for (double v : sweep_values)
            if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("K sweep values must be positive integers");
}

std::string ScenarioConfig::to_text() const {
    std::ostringstream os;
    std::string section;
    for (const auto& d : key_table()) {
        if (section != d.section) {
            if (!section.empty()) os << '\n';
            section = d.section;
            os << '[' << section << "]\n";
        }
        os << d.key << " = " << d.get(*this) << '\n';
    }
    return os.str();
}

std::string ScenarioConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : to_text()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
    // the INI reader only knows ';' comments
    std::string normalized;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const auto t = trim(line);
            normalized += (!t.empty() && t.front() == '#') ? ";" + t : line;
            normalized += '\n';
        }
    }
    boost::property_tree::ptree tree;
    try {
        std::istringstream in(normalized);
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(origin + ": line " + std::to_string(e.line()) + ": " + e.message());
    }

    ScenarioConfig cfg;
    try {
        for (const auto& [name, node] : tree) {
            if (node.empty() && !known_section(name)) {
                set_key(cfg, "", name, node.data());
                continue;
            }
            if (!known_section(name)) throw ConfigError("unknown config section [" + name + "]");
            for (const auto& [key, leaf] : node) set_key(cfg, name, key, leaf.data());
        }
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

void apply_override(ScenarioConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
    std::string key = trim(assignment.substr(0, eq));
    std::string section;
    if (const auto dot = key.find('.'); dot != std::string::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }
    set_key(cfg, section, key, assignment.substr(eq + 1));
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& d : key_table()) out.push_back(std::string(d.section) + "." + d.key);
    return out;
}

}  // namespace risched
