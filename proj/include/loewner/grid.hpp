#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/series.hpp"

namespace loewner {

/// Polar sampling of the disk |z| <= max(radii). The origin is always included.
struct GridSpec {
    std::vector<double> radii{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.995};
    std::size_t angles_per_circle = 512;
    std::size_t refinement = 8; // angular subdivision around the extremum; 0 or 1 disables

    double r_max() const { return radii.empty() ? 0.0 : radii.back(); }

    void validate() const
    {
        if (radii.empty())
            throw parameter_error("grid: radii must be nonempty");
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(radii[i] > 0.0 && radii[i] < 1.0))
                throw parameter_error("grid: radii must lie in (0, 1)");
            if (i > 0 && !(radii[i] > radii[i - 1]))
                throw parameter_error("grid: radii must be strictly ascending");
        }
        if (angles_per_circle < 8)
            throw parameter_error("grid: at least 8 angles per circle required");
    }

    /// Default radii capped at r, with r appended as the outermost circle.
    static GridSpec up_to(double r, std::size_t angles = 512)
    {
        GridSpec g;
        g.angles_per_circle = angles;
        std::erase_if(g.radii, [r](double x) { return x >= r; });
        g.radii.push_back(r);
        return g;
    }

    double angle(std::size_t j) const
    {
        return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles_per_circle);
    }

    /// Origin followed by every (radius, angle) pair in canonical order.
    std::vector<cplx> points() const
    {
        std::vector<cplx> pts;
        pts.reserve(1 + radii.size() * angles_per_circle);
        pts.emplace_back(0.0);
        for (double r : radii)
            for (std::size_t j = 0; j < angles_per_circle; ++j)
                pts.push_back(std::polar(r, angle(j)));
        return pts;
    }
};

} // namespace loewner
