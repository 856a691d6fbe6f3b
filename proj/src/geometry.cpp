#include "risched/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace risched {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RandomStream substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag,
                       std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ trial);
    h = splitmix64(h ^ tag);
    h = splitmix64(h ^ index);
    return RandomStream(h);
}

double Cartesian::norm() const { return std::sqrt(x * x + y * y + z * z); }

Cartesian polar_to_cartesian(const PolarPosition& p) {
    const double s = std::sin(p.elevation);
    return {p.range * s * std::cos(p.azimuth), p.range * s * std::sin(p.azimuth),
            p.range * std::cos(p.elevation)};
}

PolarPosition cartesian_to_polar(const Cartesian& c) {
    const double r = c.norm();
    if (r == 0.0) throw std::invalid_argument("cannot convert the origin to polar coordinates");
    return {r, std::atan2(c.y, c.x), std::atan2(std::hypot(c.x, c.y), c.z)};
}

double bs_ue_distance(const PolarPosition& bs, const PolarPosition& ue) {
    return (polar_to_cartesian(bs) - polar_to_cartesian(ue)).norm();
}

RisGeometry::RisGeometry(std::size_t n_x, std::size_t n_z, double d_x, double d_z)
    : n_x_(n_x), n_z_(n_z), d_x_(d_x), d_z_(d_z) {
    if (n_x == 0 || n_z == 0) throw std::invalid_argument("RIS needs at least one element per axis");
    if (!(d_x > 0.0) || !(d_z > 0.0)) throw std::invalid_argument("RIS element spacing must be positive");
}

RisGeometry RisGeometry::half_wavelength(std::size_t n_x, std::size_t n_z, double wavelength) {
    return {n_x, n_z, wavelength / 2.0, wavelength / 2.0};
}

Cartesian RisGeometry::element_center(std::size_t n, std::size_t n_prime) const {
    if (n < 1 || n > n_x_ || n_prime < 1 || n_prime > n_z_)
        throw std::invalid_argument("RIS element index out of range");
    const double cx = (static_cast<double>(n_x_) + 1.0) / 2.0;
    const double cz = (static_cast<double>(n_z_) + 1.0) / 2.0;
    return {d_x_ * (static_cast<double>(n) - cx), 0.0, d_z_ * (static_cast<double>(n_prime) - cz)};
}

std::vector<Cartesian> RisGeometry::element_centers() const {
    std::vector<Cartesian> out;
    out.reserve(size());
    for (std::size_t np = 1; np <= n_z_; ++np)
        for (std::size_t n = 1; n <= n_x_; ++n) out.push_back(element_center(n, np));
    return out;
}

PolarPosition sample_ring_position(const RingArea& ring, RandomStream& rng, RadiusLaw law) {
    if (!(ring.inner > 0.0) || !(ring.outer > ring.inner))
        throw std::invalid_argument("ring radii must satisfy 0 < inner < outer");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    double r = 0.0;
    if (law == RadiusLaw::area_uniform) {
        const double a2 = ring.inner * ring.inner;
        const double b2 = ring.outer * ring.outer;
        r = std::sqrt(a2 + u * (b2 - a2));
    } else {
        r = ring.inner + u * (ring.outer - ring.inner);
    }
    // sqrt rounding can step one ulp outside the ring
    r = std::clamp(r, ring.inner, ring.outer);
    const double lo = kAzimuthMargin;
    const double hi = std::numbers::pi - kAzimuthMargin;
    const double phi = lo + unit(rng) * (hi - lo);
    return {r, phi, std::numbers::pi / 2};
}

std::vector<PolarPosition> sample_ring(std::size_t k, const RingArea& ring, RandomStream& rng,
                                       RadiusLaw law) {
    if (k == 0) throw std::invalid_argument("need at least one user");
    std::vector<PolarPosition> users;
    users.reserve(k);
    for (std::size_t i = 0; i < k; ++i) users.push_back(sample_ring_position(ring, rng, law));
    return users;
}

void Scenario::validate() const {
    if (users.empty()) throw std::invalid_argument("scenario has no users");
    for (const auto& u : users) {
        if (u.range < ring.inner || u.range > ring.outer)
            throw std::invalid_argument("user outside the service ring");
    }
    if (!(bs.range > 0.0)) throw std::invalid_argument("BS range must be positive");
}

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace risched
