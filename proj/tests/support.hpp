#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <complex>
#include <random>
#include <vector>

#include "loewner/series.hpp"

namespace testing_support {

using loewner::cplx;
using loewner::PowerSeries;

inline cplx random_complex(std::mt19937_64& rng, double scale = 1.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

inline cplx random_in_disk(std::mt19937_64& rng, double r)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(r * std::sqrt(u(rng)), 2.0 * 3.141592653589793 * u(rng));
}

/// Random series with the given constant term; coefficients decay like 0.5^n.
inline PowerSeries random_series(std::mt19937_64& rng, std::size_t N, std::optional<cplx> c0 = std::nullopt)
{
    std::vector<cplx> c(N + 1);
    double s = 1.0;
    for (auto& x : c) {
        x = random_complex(rng, s);
        s *= 0.5;
    }
    if (c0)
        c[0] = *c0;
    return PowerSeries(c);
}

inline double max_diff(const PowerSeries& a, const PowerSeries& b)
{
    double m = 0.0;
    for (std::size_t n = 0; n <= std::min(a.order(), b.order()); ++n)
        m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

} // namespace testing_support
