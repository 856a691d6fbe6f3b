#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace risched {

/// Random stream used throughout the simulator. Every consumer takes the
/// stream explicitly; see substream() for the seeding contract.
using RandomStream = std::mt19937_64;

/// Derives an independent generator for (seed, trial, tag, index). The same
/// tuple always yields the same stream, regardless of call order or thread.
RandomStream substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag,
                       std::uint64_t index);

struct Cartesian {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Cartesian operator-(const Cartesian& a, const Cartesian& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Cartesian operator+(const Cartesian& a, const Cartesian& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    double norm() const;
};

/// Spherical position relative to the RIS centre. Elevation is measured from
/// the z axis, so the service plane is elevation = pi/2.
struct PolarPosition {
    double range = 1.0;
    double azimuth = std::numbers::pi / 2;
    double elevation = std::numbers::pi / 2;
};

Cartesian polar_to_cartesian(const PolarPosition& p);
PolarPosition cartesian_to_polar(const Cartesian& c);

/// Euclidean distance between two nodes.
double bs_ue_distance(const PolarPosition& bs, const PolarPosition& ue);

/// Uniform planar RIS lying in the x-z plane, centred at the origin.
class RisGeometry {
public:
    RisGeometry(std::size_t n_x, std::size_t n_z, double d_x, double d_z);

    /// Half-wavelength spacing on both axes at the given wavelength.
    static RisGeometry half_wavelength(std::size_t n_x, std::size_t n_z, double wavelength);

    std::size_t n_x() const { return n_x_; }
    std::size_t n_z() const { return n_z_; }
    std::size_t size() const { return n_x_ * n_z_; }
    double d_x() const { return d_x_; }
    double d_z() const { return d_z_; }

    /// Centre of element (n, n'), both 1-based.
    Cartesian element_center(std::size_t n, std::size_t n_prime) const;

    /// All centres, x index fastest.
    std::vector<Cartesian> element_centers() const;

private:
    std::size_t n_x_;
    std::size_t n_z_;
    double d_x_;
    double d_z_;
};

struct RingArea {
    double inner = 9.0;
    double outer = 30.0;
};

enum class RadiusLaw { area_uniform, range_uniform };

/// Azimuths are drawn from (kAzimuthMargin, pi - kAzimuthMargin).
inline constexpr double kAzimuthMargin = 1e-6;

/// One user position in the ring on the service plane.
PolarPosition sample_ring_position(const RingArea& ring, RandomStream& rng,
                                   RadiusLaw law = RadiusLaw::area_uniform);

/// K user positions drawn sequentially from one stream.
std::vector<PolarPosition> sample_ring(std::size_t k, const RingArea& ring, RandomStream& rng,
                                       RadiusLaw law = RadiusLaw::area_uniform);

struct Scenario {
    PolarPosition bs;
    std::vector<PolarPosition> users;
    RisGeometry ris;
    RingArea ring;

    /// Checks K >= 1 and that every user lies inside the ring.
    void validate() const;
};

double deg2rad(double deg);
double rad2deg(double rad);

}  // namespace risched
