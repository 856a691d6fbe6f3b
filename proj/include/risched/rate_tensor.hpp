#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace risched {

/// K x F x C grid of spectral efficiencies (bit/s/Hz).
///
/// Storage is user-major, then configuration, then RB, so that resource
/// a = c * F + f indexes one user's row contiguously. That flattening is also
/// the resource order used by the allocators.
class RateTensor {
public:
    RateTensor() = default;
    RateTensor(std::size_t users, std::size_t rbs, std::size_t configs);

    std::size_t users() const { return users_; }
    std::size_t rbs() const { return rbs_; }
    std::size_t configs() const { return configs_; }
    std::size_t resources() const { return rbs_ * configs_; }

    double& at(std::size_t k, std::size_t f, std::size_t c) { return data_[index(k, f, c)]; }
    double at(std::size_t k, std::size_t f, std::size_t c) const { return data_[index(k, f, c)]; }

    /// Rates of user k over all resources, indexed by a = c * F + f.
    std::span<const double> user_row(std::size_t k) const {
        return {data_.data() + k * resources(), resources()};
    }
    std::span<double> user_row(std::size_t k) { return {data_.data() + k * resources(), resources()}; }

    std::span<const double> values() const { return data_; }

    /// Same shape, every entry multiplied by alpha.
    RateTensor scaled(double alpha) const;

    /// CSV rows user,rb,config,rate with 0-based user/rb and 1-based config.
    void write_csv(std::ostream& os) const;

private:
    std::size_t index(std::size_t k, std::size_t f, std::size_t c) const {
        return (k * configs_ + c) * rbs_ + f;
    }

    std::size_t users_ = 0;
    std::size_t rbs_ = 0;
    std::size_t configs_ = 0;
    std::vector<double> data_;
};

}  // namespace risched
