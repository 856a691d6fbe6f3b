#include "risched/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace risched {

AllocationMatrix::AllocationMatrix(std::size_t users, std::size_t rbs, std::size_t configs)
    : users_(users), rbs_(rbs), configs_(configs), owner_(rbs * configs, kUnassigned) {}

void AllocationMatrix::assign(std::size_t k, std::size_t f, std::size_t c) {
    if (k >= users_ || f >= rbs_ || c >= configs_) throw std::out_of_range("allocation index out of range");
    int& slot = owner_[c * rbs_ + f];
    if (slot != kUnassigned) throw std::logic_error("resource already allocated");
    slot = static_cast<int>(k);
}

std::size_t AllocationMatrix::assigned_count() const {
    return static_cast<std::size_t>(
        std::count_if(owner_.begin(), owner_.end(), [](int o) { return o != kUnassigned; }));
}

void AllocationMatrix::write_grid_csv(std::ostream& os) const {
    os << "slot";
    for (std::size_t f = 0; f < rbs_; ++f) os << ",rb" << f;
    os << '\n';
    for (std::size_t c = 0; c < configs_; ++c) {
        os << c + 1;
        for (std::size_t f = 0; f < rbs_; ++f) os << ',' << owner(f, c);
        os << '\n';
    }
}

double UserRates::total() const { return std::accumulate(r.begin(), r.end(), 0.0); }

namespace {

// Greedy max-min over a user group and resource list. `resources` holds
// flattened indices a = c * F + f in scan order.
void greedy_max_min(const RateTensor& rates, const std::vector<std::size_t>& group,
                    const std::vector<std::size_t>& resources, AllocationMatrix& alloc) {
    const std::size_t F = rates.rbs();
    std::vector<char> free(resources.size(), 1);
    std::size_t remaining = resources.size();
    std::vector<double> r(group.size(), 0.0);

    auto best_free = [&](std::size_t k) {
        const auto row = rates.user_row(k);
        std::size_t best = resources.size();
        double best_rate = 0.0;
        for (std::size_t i = 0; i < resources.size(); ++i) {
            if (!free[i]) continue;
            const double v = row[resources[i]];
            if (best == resources.size() || v > best_rate) {
                best = i;
                best_rate = v;
            }
        }
        return best;
    };
    auto take = [&](std::size_t gi, std::size_t i) {
        free[i] = 0;
        --remaining;
        const std::size_t a = resources[i];
        alloc.assign(group[gi], a % F, a / F);
        r[gi] += rates.user_row(group[gi])[a];
    };

    for (std::size_t gi = 0; gi < group.size(); ++gi) take(gi, best_free(group[gi]));
    while (remaining > 0) {
        const auto gi = static_cast<std::size_t>(std::min_element(r.begin(), r.end()) - r.begin());
        take(gi, best_free(group[gi]));
    }
}

}  // namespace

AllocationMatrix max_rate_allocate(const RateTensor& rates) {
    AllocationMatrix alloc(rates.users(), rates.rbs(), rates.configs());
    for (std::size_t c = 0; c < rates.configs(); ++c) {
        for (std::size_t f = 0; f < rates.rbs(); ++f) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < rates.users(); ++k)
                if (rates.at(k, f, c) > rates.at(best, f, c)) best = k;
            alloc.assign(best, f, c);
        }
    }
    return alloc;
}

AllocationMatrix max_min_allocate(const RateTensor& rates) {
    const std::size_t A = rates.resources();
    if (A < rates.users())
        throw InfeasibleAllocation("max-min needs F*C >= K: " + std::to_string(A) + " resources for " +
                                   std::to_string(rates.users()) + " users");
    AllocationMatrix alloc(rates.users(), rates.rbs(), rates.configs());
    std::vector<std::size_t> group(rates.users());
    std::iota(group.begin(), group.end(), 0);
    std::vector<std::size_t> resources(A);
    std::iota(resources.begin(), resources.end(), 0);
    greedy_max_min(rates, group, resources, alloc);
    return alloc;
}

std::vector<std::size_t> assign_configs(const std::vector<PolarPosition>& users, const Codebook& codebook) {
    std::vector<std::size_t> out;
    out.reserve(users.size());
    for (const auto& u : users) {
        std::size_t best = 0;
        double best_dist = std::abs(codebook[0].center_azimuth - u.azimuth);
        for (std::size_t c = 1; c < codebook.size(); ++c) {
            const double d = std::abs(codebook[c].center_azimuth - u.azimuth);
            if (d < best_dist) {
                best = c;
                best_dist = d;
            }
        }
        out.push_back(best);
    }
    return out;
}

AllocationMatrix sequential_allocate(const RateTensor& rates, const std::vector<std::size_t>& partition,
                                     Objective objective, OverloadPolicy overload) {
    if (partition.size() != rates.users())
        throw std::invalid_argument("partition must map every user to a configuration");
    const std::size_t F = rates.rbs();
    std::vector<std::vector<std::size_t>> members(rates.configs());
    for (std::size_t k = 0; k < partition.size(); ++k) {
        if (partition[k] >= rates.configs()) throw std::invalid_argument("partition names an unknown configuration");
        members[partition[k]].push_back(k);
    }

    AllocationMatrix alloc(rates.users(), F, rates.configs());
    for (std::size_t c = 0; c < rates.configs(); ++c) {
        auto& group = members[c];
        if (group.empty()) continue;
        if (objective == Objective::max_rate) {
            for (std::size_t f = 0; f < F; ++f) {
                std::size_t best = group.front();
                for (std::size_t k : group)
                    if (rates.at(k, f, c) > rates.at(best, f, c)) best = k;
                alloc.assign(best, f, c);
            }
            continue;
        }
        if (group.size() > F) {
            if (overload == OverloadPolicy::error)
                throw InfeasibleAllocation("slot " + std::to_string(c + 1) + " holds " + std::to_string(group.size()) +
                                           " users but only " + std::to_string(F) + " RBs");
            group.resize(F);
        }
        std::vector<std::size_t> resources(F);
        std::iota(resources.begin(), resources.end(), c * F);
        greedy_max_min(rates, group, resources, alloc);
    }
    return alloc;
}

UserRates user_rates(const RateTensor& rates, const AllocationMatrix& alloc) {
    if (rates.users() != alloc.users() || rates.rbs() != alloc.rbs() || rates.configs() != alloc.configs())
        throw std::invalid_argument("allocation shape does not match the rate tensor");
    UserRates out{std::vector<double>(rates.users(), 0.0)};
    for (std::size_t c = 0; c < rates.configs(); ++c)
        for (std::size_t f = 0; f < rates.rbs(); ++f) {
            const int k = alloc.owner(f, c);
            if (k != AllocationMatrix::kUnassigned) out.r[static_cast<std::size_t>(k)] += rates.at(static_cast<std::size_t>(k), f, c);
        }
    return out;
}

std::string to_string(Objective objective) { return objective == Objective::max_rate ? "max_rate" : "max_min"; }

Objective parse_objective(const std::string& text) {
    if (text == "max_rate") return Objective::max_rate;
    if (text == "max_min") return Objective::max_min;
    throw std::invalid_argument("unknown objective '" + text + "' (expected max_rate or max_min)");
}

}  // namespace risched
