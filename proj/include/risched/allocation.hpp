#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "risched/codebook.hpp"
#include "risched/geometry.hpp"
#include "risched/rate_tensor.hpp"

namespace risched {

/// Raised when max-min cannot hand every user at least one resource.
class InfeasibleAllocation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binary K x F x C assignment. Each (f, c) resource stores its owner, so a
/// resource can never hold two users.
class AllocationMatrix {
public:
    static constexpr int kUnassigned = -1;

    AllocationMatrix(std::size_t users, std::size_t rbs, std::size_t configs);

    std::size_t users() const { return users_; }
    std::size_t rbs() const { return rbs_; }
    std::size_t configs() const { return configs_; }

    /// Gives resource (f, c) to user k. Throws std::logic_error if the
    /// resource already has an owner.
    void assign(std::size_t k, std::size_t f, std::size_t c);

    int owner(std::size_t f, std::size_t c) const { return owner_[c * rbs_ + f]; }
    bool rho(std::size_t k, std::size_t f, std::size_t c) const { return owner(f, c) == static_cast<int>(k); }
    std::size_t assigned_count() const;

    /// Slot x RB grid: one row per configuration, cell = user index or -1.
    void write_grid_csv(std::ostream& os) const;

    friend bool operator==(const AllocationMatrix&, const AllocationMatrix&) = default;

private:
    std::size_t users_;
    std::size_t rbs_;
    std::size_t configs_;
    std::vector<int> owner_;  // indexed by c * F + f
};

/// Aggregated spectral efficiency per user, sum over assigned resources.
struct UserRates {
    std::vector<double> r;

    double total() const;
};

enum class Objective { max_rate, max_min };

/// How sequential max-min treats a slot holding more users than RBs.
/// `error` raises InfeasibleAllocation; `truncate` serves the lowest-index
/// users of the slot and leaves the rest at zero rate.
enum class OverloadPolicy { error, truncate };

/// Every resource goes to the user with the highest rate on it
/// (ties to the lowest user index).
AllocationMatrix max_rate_allocate(const RateTensor& rates);

/// Greedy max-min heuristic. Phase 1 hands each user, in index order, its
/// best remaining resource; phase 2 repeatedly gives the currently poorest
/// user its best remaining resource. Resources are scanned as a = c * F + f,
/// ties going to the lowest index.
AllocationMatrix max_min_allocate(const RateTensor& rates);

/// Configuration (0-based position in the codebook) whose beam centre is
/// nearest to each user in azimuth, ties to the lower index.
std::vector<std::size_t> assign_configs(const std::vector<PolarPosition>& users, const Codebook& codebook);

/// Config-first allocation: each slot c serves only the users mapped to it
/// and only its own F RBs. Slots with no users stay empty.
AllocationMatrix sequential_allocate(const RateTensor& rates, const std::vector<std::size_t>& partition,
                                     Objective objective, OverloadPolicy overload = OverloadPolicy::error);

UserRates user_rates(const RateTensor& rates, const AllocationMatrix& alloc);

std::string to_string(Objective objective);
Objective parse_objective(const std::string& text);

}  // namespace risched
