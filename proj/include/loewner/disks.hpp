#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "loewner/errors.hpp"
#include "loewner/series.hpp"

namespace loewner {

/// The hyperbolic disk U(alpha, k): pseudo-hyperbolic radius k about 1 in the
/// tilted half-plane Re(e^{i alpha} w) > 0. alpha = 0 gives U(k).
struct DiskSpec {
    double alpha = 0.0;
    double k = 0.0;
};

struct DiskGeometry {
    cplx center;
    double radius;
};

/// Smallest k with w in U(alpha, k): |w - 1| / |w + e^{-2 i alpha}|.
/// Values >= 1 mean w lies in no such disk; the excluded point -e^{-2 i alpha}
/// maps to +infinity.
inline double min_k(cplx w, double alpha = 0.0)
{
    const cplx pole = -std::polar(1.0, -2.0 * alpha);
    const double den = std::abs(w - pole);
    if (den == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::abs(w - cplx{1.0}) / den;
}

/// Closed-disk membership through |w - 1| <= k |w + e^{-2 i alpha}|, with 1e-12
/// slack in k so that computed boundary points count as members.
inline bool membership(cplx w, const DiskSpec& d)
{
    return std::abs(w - cplx{1.0}) <= (d.k + 1e-12) * std::abs(w + std::polar(1.0, -2.0 * d.alpha));
}

/// Center (1 + e^{-2 i alpha} k^2)/(1 - k^2) and radius 2 k cos(alpha)/(1 - k^2).
inline DiskGeometry disk_params(const DiskSpec& d)
{
    if (!(d.k >= 0.0 && d.k < 1.0))
        throw domain_error("disk_params: k must lie in [0, 1)");
    if (!(std::abs(d.alpha) < std::numbers::pi / 2))
        throw domain_error("disk_params: alpha must lie in (-pi/2, pi/2)");
    const double k2 = d.k * d.k;
    return {(cplx{1.0} + std::polar(k2, -2.0 * d.alpha)) / (1.0 - k2), 2.0 * d.k * std::cos(d.alpha) / (1.0 - k2)};
}

} // namespace loewner
