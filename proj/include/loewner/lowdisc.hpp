#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace loewner {

/// First two Sobol dimensions (van der Corput in base 2 and the x+1 primitive
/// polynomial), evaluated in natural order so any index can be drawn directly.
class Sobol2D {
public:
    explicit Sobol2D(std::uint64_t offset = 0) : index_(offset)
    {
        std::uint32_t m = 1;
        for (int k = 0; k < 32; ++k) {
            v1_[k] = std::uint32_t{1} << (31 - k);
            v2_[k] = m << (31 - k);
            m = (m << 1) ^ m;
        }
    }

    std::pair<double, double> at(std::uint64_t i) const
    {
        std::uint32_t x = 0, y = 0;
        for (int k = 0; k < 32 && i != 0; ++k, i >>= 1)
            if (i & 1u) {
                x ^= v1_[k];
                y ^= v2_[k];
            }
        constexpr double scale = 1.0 / 4294967296.0;
        return {x * scale, y * scale};
    }

    std::pair<double, double> next() { return at(index_++); }

private:
    std::uint64_t index_;
    std::array<std::uint32_t, 32> v1_{};
    std::array<std::uint32_t, 32> v2_{};
};

/// Maps the unit square onto the disk |z| <= r with uniform area density.
inline std::complex<double> square_to_disk(std::pair<double, double> u, double r)
{
    return std::polar(r * std::sqrt(u.first), 2.0 * std::numbers::pi * u.second);
}

} // namespace loewner
