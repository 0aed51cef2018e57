#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/series.hpp"

namespace loewner {

/// Where an evaluation is allowed to land. Closed-form kinds extend
/// continuously to the unit circle (minus their poles); series kinds do not.
enum class Domain { open_disk, closed_disk };

class AnalyticFunction;

namespace kinds {

struct Identity {};

/// z / (1 - z)^2
struct Koebe {};

/// z / (1 - z)
struct HalfPlane {};

/// z (1 - z)^(-2 e^{-i alpha} cos alpha), the extremal alpha-spirallike map.
struct SpiralKoebe {
    double alpha;
};

/// Finite polynomial with c_0 = 0, c_1 = 1; defined on the whole plane.
struct Polynomial {
    PowerSeries coeffs;
};

/// Truncated Taylor series with c_0 = 0, c_1 = 1; evaluable for |z| < 1 only.
struct SeriesBacked {
    PowerSeries series;
    PowerSeries log_ratio; // log(f(z)/z) as a series
};

/// Output of bazilevic_construct: f = z * core^{1/exponent}.
struct BazilevicBuilt {
    PowerSeries series;
    PowerSeries core;
    cplx exponent;
    PowerSeries log_ratio;
};

/// weight * f + (1 - weight) * z f'
struct CombinationOf {
    std::shared_ptr<const AnalyticFunction> base;
    cplx weight;
};

} // namespace kinds

/// Value and first two derivatives.
struct Jet {
    cplx value;
    cplx d1;
    cplx d2;
};

namespace detail {

/// (s)_n = s (s+1) ... (s+n-1)
inline cplx rising(cplx s, std::size_t n)
{
    cplx r{1.0};
    for (std::size_t k = 0; k < n; ++k)
        r *= s + static_cast<double>(k);
    return r;
}

inline double factorial(std::size_t n)
{
    double r = 1.0;
    for (std::size_t k = 2; k <= n; ++k)
        r *= static_cast<double>(k);
    return r;
}

inline void check_domain(cplx z, Domain d, bool closed_form)
{
    const double r = std::abs(z);
    if (d == Domain::open_disk || !closed_form) {
        if (!(r < 1.0))
            throw domain_error("evaluation requires |z| < 1");
    } else if (!(r <= 1.0 + 1e-12)) {
        throw domain_error("evaluation requires |z| <= 1");
    }
}

inline cplx log_one_minus(cplx z)
{
    const cplx w = cplx{1.0} - z;
    if (std::abs(w) < 1e-300)
        throw boundary_singularity("closed form has a pole at z = 1");
    return std::log(w);
}

inline PowerSeries normalized_series(PowerSeries s, const char* who)
{
    if (s.order() < 1 || std::abs(s[0]) > 1e-12 || std::abs(s[1] - cplx{1.0}) > 1e-12)
        throw normalization_error(std::string(who) + ": coefficients must start 0, 1");
    std::vector<cplx> c(s.coeffs().begin(), s.coeffs().end());
    c[0] = 0.0;
    c[1] = 1.0;
    return PowerSeries(std::move(c));
}

} // namespace detail

/// A function of class A (f(0) = 0, f'(0) = 1) on the unit disk with exact
/// derivatives. Immutable; cheap to copy.
class AnalyticFunction {
public:
    using Kind = std::variant<kinds::Identity, kinds::Koebe, kinds::HalfPlane, kinds::SpiralKoebe,
                              kinds::Polynomial, kinds::SeriesBacked, kinds::BazilevicBuilt,
                              kinds::CombinationOf>;

    explicit AnalyticFunction(Kind k) : kind_(std::move(k)) {}

    static AnalyticFunction identity() { return AnalyticFunction(kinds::Identity{}); }
    static AnalyticFunction koebe() { return AnalyticFunction(kinds::Koebe{}); }
    static AnalyticFunction half_plane() { return AnalyticFunction(kinds::HalfPlane{}); }

    static AnalyticFunction spiral_koebe(double alpha)
    {
        if (!(std::abs(alpha) < std::numbers::pi / 2))
            throw parameter_error("spiral_koebe: alpha must lie in (-pi/2, pi/2)");
        return AnalyticFunction(kinds::SpiralKoebe{alpha});
    }

    static AnalyticFunction polynomial(PowerSeries coeffs)
    {
        return AnalyticFunction(kinds::Polynomial{detail::normalized_series(std::move(coeffs), "polynomial")});
    }

    static AnalyticFunction series(PowerSeries s)
    {
        auto n = detail::normalized_series(std::move(s), "series");
        auto lr = log_unit(shift_down(n));
        return AnalyticFunction(kinds::SeriesBacked{std::move(n), std::move(lr)});
    }

    const Kind& kind() const noexcept { return kind_; }

    /// True when the function has a closed form that extends to |z| <= 1.
    bool closed_form() const
    {
        return std::visit(
            [](const auto& k) -> bool {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, kinds::SeriesBacked> ||
                              std::is_same_v<K, kinds::BazilevicBuilt>)
                    return false;
                else if constexpr (std::is_same_v<K, kinds::CombinationOf>)
                    return k.base->closed_form();
                else
                    return true;
            },
            kind_);
    }

    /// Angles of boundary points where the closed form has a pole.
    std::vector<double> singular_angles() const
    {
        return std::visit(
            [](const auto& k) -> std::vector<double> {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, kinds::Koebe> || std::is_same_v<K, kinds::HalfPlane> ||
                              std::is_same_v<K, kinds::SpiralKoebe>)
                    return {0.0};
                else if constexpr (std::is_same_v<K, kinds::CombinationOf>)
                    return k.base->singular_angles();
                else
                    return {};
            },
            kind_);
    }

    /// f, f', ..., f^{(count-1)} at z.
    std::vector<cplx> derivatives(cplx z, std::size_t count, Domain d = Domain::open_disk) const
    {
        detail::check_domain(z, d, closed_form());
        std::vector<cplx> out(count);
        std::visit([&](const auto& k) { fill(k, z, out); }, kind_);
        return out;
    }

    Jet jet(cplx z, Domain d = Domain::open_disk) const
    {
        auto v = derivatives(z, 3, d);
        return {v[0], v[1], v[2]};
    }

    /// log(f(z)/z) on the branch that vanishes at z = 0.
    cplx log_over_z(cplx z, Domain d = Domain::open_disk) const
    {
        detail::check_domain(z, d, closed_form());
        return std::visit(
            [&](const auto& k) -> cplx {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, kinds::Identity>)
                    return 0.0;
                else if constexpr (std::is_same_v<K, kinds::Koebe>)
                    return -2.0 * detail::log_one_minus(z);
                else if constexpr (std::is_same_v<K, kinds::HalfPlane>)
                    return -detail::log_one_minus(z);
                else if constexpr (std::is_same_v<K, kinds::SpiralKoebe>)
                    return -2.0 * spiral_b(k.alpha) * detail::log_one_minus(z);
                else if constexpr (std::is_same_v<K, kinds::SeriesBacked> ||
                                   std::is_same_v<K, kinds::BazilevicBuilt>)
                    return evaluate(k.log_ratio, z);
                else {
                    if (z == cplx{0.0})
                        return 0.0;
                    const cplx ratio = derivatives(z, 1, d)[0] / z;
                    if (ratio == cplx{0.0})
                        throw singular_error("log_over_z: f vanishes away from the origin");
                    return std::log(ratio);
                }
            },
            kind_);
    }

    /// Taylor coefficients c_0..c_N.
    PowerSeries taylor(std::size_t N) const
    {
        return std::visit(
            [&](const auto& k) -> PowerSeries {
                using K = std::decay_t<decltype(k)>;
                std::vector<cplx> c(N + 1);
                if constexpr (std::is_same_v<K, kinds::Identity>) {
                    if (N >= 1)
                        c[1] = 1.0;
                } else if constexpr (std::is_same_v<K, kinds::Koebe>) {
                    for (std::size_t n = 1; n <= N; ++n)
                        c[n] = static_cast<double>(n);
                } else if constexpr (std::is_same_v<K, kinds::HalfPlane>) {
                    for (std::size_t n = 1; n <= N; ++n)
                        c[n] = 1.0;
                } else if constexpr (std::is_same_v<K, kinds::SpiralKoebe>) {
                    const cplx s = 2.0 * spiral_b(k.alpha);
                    cplx term{1.0}; // (s)_{n-1} / (n-1)!
                    for (std::size_t n = 1; n <= N; ++n) {
                        c[n] = term;
                        term *= (s + static_cast<double>(n - 1)) / static_cast<double>(n);
                    }
                } else if constexpr (std::is_same_v<K, kinds::Polynomial>) {
                    return k.coeffs.truncated(N);
                } else if constexpr (std::is_same_v<K, kinds::SeriesBacked> ||
                                     std::is_same_v<K, kinds::BazilevicBuilt>) {
                    return k.series.truncated(N);
                } else {
                    const auto base = k.base->taylor(N);
                    for (std::size_t n = 0; n <= N; ++n)
                        c[n] = (k.weight + (1.0 - k.weight) * static_cast<double>(n)) * base[n];
                }
                return PowerSeries(std::move(c));
            },
            kind_);
    }

    std::string describe() const
    {
        std::ostringstream os;
        os.precision(17);
        std::visit(
            [&](const auto& k) {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, kinds::Identity>)
                    os << "identity";
                else if constexpr (std::is_same_v<K, kinds::Koebe>)
                    os << "koebe";
                else if constexpr (std::is_same_v<K, kinds::HalfPlane>)
                    os << "half-plane";
                else if constexpr (std::is_same_v<K, kinds::SpiralKoebe>)
                    os << "spiral-koebe(" << k.alpha << ")";
                else if constexpr (std::is_same_v<K, kinds::Polynomial>)
                    os << "polynomial(degree " << k.coeffs.order() << ")";
                else if constexpr (std::is_same_v<K, kinds::SeriesBacked>)
                    os << "series(order " << k.series.order() << ")";
                else if constexpr (std::is_same_v<K, kinds::BazilevicBuilt>)
                    os << "bazilevic(exponent " << k.exponent.real() << "," << k.exponent.imag()
                       << "; order " << k.series.order() << ")";
                else
                    os << "combination(" << k.base->describe() << "; weight " << k.weight.real() << ","
                       << k.weight.imag() << ")";
            },
            kind_);
        return os.str();
    }

    static cplx spiral_b(double alpha) { return std::polar(std::cos(alpha), -alpha); }

private:
    static void fill(const kinds::Identity&, cplx z, std::vector<cplx>& out)
    {
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = n == 0 ? z : (n == 1 ? cplx{1.0} : cplx{0.0});
    }

    // z/(1-z)^2 = (1-z)^{-2} - (1-z)^{-1}
    static void fill(const kinds::Koebe&, cplx z, std::vector<cplx>& out)
    {
        const cplx w = cplx{1.0} - z;
        if (std::abs(w) < 1e-300)
            throw boundary_singularity("koebe: pole at z = 1");
        for (std::size_t n = 0; n < out.size(); ++n) {
            if (n == 0)
                out[n] = z / (w * w);
            else
                out[n] = detail::factorial(n + 1) / std::pow(w, static_cast<int>(n + 2)) -
                         detail::factorial(n) / std::pow(w, static_cast<int>(n + 1));
        }
    }

    // z/(1-z) = (1-z)^{-1} - 1
    static void fill(const kinds::HalfPlane&, cplx z, std::vector<cplx>& out)
    {
        const cplx w = cplx{1.0} - z;
        if (std::abs(w) < 1e-300)
            throw boundary_singularity("half-plane: pole at z = 1");
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = n == 0 ? z / w : detail::factorial(n) / std::pow(w, static_cast<int>(n + 1));
    }

    // z (1-z)^{-s} = (1-z)^{-s} - (1-z)^{1-s}, s = 2b
    static void fill(const kinds::SpiralKoebe& k, cplx z, std::vector<cplx>& out)
    {
        const cplx s = 2.0 * spiral_b(k.alpha);
        const cplx L = detail::log_one_minus(z);
        for (std::size_t n = 0; n < out.size(); ++n) {
            if (n == 0) {
                out[n] = z * std::exp(-s * L);
            } else {
                const double dn = static_cast<double>(n);
                out[n] = detail::rising(s, n) * std::exp(-(s + dn) * L) -
                         detail::rising(s - 1.0, n) * std::exp(-(s - 1.0 + dn) * L);
            }
        }
    }

    static void fill(const kinds::Polynomial& k, cplx z, std::vector<cplx>& out)
    {
        PowerSeries cur = k.coeffs;
        for (auto& v : out) {
            v = evaluate_polynomial(cur, z);
            cur = differentiate(cur);
        }
    }

    static void fill(const kinds::SeriesBacked& k, cplx z, std::vector<cplx>& out)
    {
        out = evaluate_derivatives(k.series, z, out.size());
    }

    static void fill(const kinds::BazilevicBuilt& k, cplx z, std::vector<cplx>& out)
    {
        out = evaluate_derivatives(k.series, z, out.size());
    }

    // g^{(n)} = a f^{(n)} + (1-a)(z f^{(n+1)} + n f^{(n)})
    static void fill(const kinds::CombinationOf& k, cplx z, std::vector<cplx>& out)
    {
        const auto f = k.base->derivatives(z, out.size() + 1, Domain::closed_disk);
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = k.weight * f[n] + (1.0 - k.weight) * (z * f[n + 1] + static_cast<double>(n) * f[n]);
    }

    Kind kind_;
};

/// (f(z), f'(z), f''(z)) for |z| < 1.
inline Jet eval_derivatives(const AnalyticFunction& f, cplx z) { return f.jet(z); }

/// z f'(z) / f(z) from a precomputed jet; the removable singularity at 0 is filled by 1.
inline cplx log_derivative(cplx z, const Jet& j)
{
    if (z == cplx{0.0})
        return 1.0;
    if (j.value == cplx{0.0})
        throw singular_error("log_derivative: f vanishes away from the origin");
    return z * j.d1 / j.value;
}

/// 1 + z f''(z) / f'(z) from a precomputed jet.
inline cplx convexity_quantity(cplx z, const Jet& j)
{
    if (j.d1 == cplx{0.0})
        throw singular_error("convexity_quantity: f' vanishes");
    return 1.0 + z * j.d2 / j.d1;
}

inline cplx log_derivative(const AnalyticFunction& f, cplx z, Domain d = Domain::open_disk)
{
    return log_derivative(z, f.jet(z, d));
}

inline cplx convexity_quantity(const AnalyticFunction& f, cplx z, Domain d = Domain::open_disk)
{
    return convexity_quantity(z, f.jet(z, d));
}

/// Builds f(z) = [ (alpha+i beta) int_0^z g^alpha h zeta^{i beta - 1} dzeta ]^{1/(alpha+i beta)}
/// as a truncated series of order N.
///
/// The integrand is written as zeta^{gamma-1} q(zeta) with gamma = alpha + i beta and
/// q = (g/zeta)^alpha h, q(0) = 1. Term-wise integration gives
/// f = z * [gamma sum q_n z^n / (n + gamma)]^{1/gamma}; both fractional powers act on
/// series with constant term 1, so the principal branch is single valued.
inline AnalyticFunction bazilevic_construct(const AnalyticFunction& g, const PowerSeries& h, double alpha,
                                            double beta, std::size_t N)
{
    if (!(alpha > 0.0))
        throw parameter_error("bazilevic_construct: alpha must be positive");
    if (N < 1)
        throw usage_error("bazilevic_construct: order must be at least 1");
    if (!detail::is_unit_constant(h[0]))
        throw normalization_error("bazilevic_construct: h(0) must be 1");

    const cplx gamma{alpha, beta};
    const PowerSeries G = shift_down(g.taylor(N + 1)).truncated(N);
    const PowerSeries q = multiply(pow_principal(G, alpha), h.truncated(N));

    std::vector<cplx> core(N + 1);
    core[0] = 1.0;
    for (std::size_t n = 1; n <= N; ++n)
        core[n] = gamma * q[n] / (static_cast<double>(n) + gamma);
    PowerSeries S(std::move(core));

    const PowerSeries W = pow_principal(S, cplx{1.0} / gamma);
    PowerSeries f = shift_up(W);
    PowerSeries log_ratio = log_unit(W);
    return AnalyticFunction(kinds::BazilevicBuilt{std::move(f), std::move(S), gamma, std::move(log_ratio)});
}

/// alpha f(z) + (1 - alpha) z f'(z).
inline AnalyticFunction combine_with_derivative(const AnalyticFunction& f, cplx weight)
{
    return AnalyticFunction(kinds::CombinationOf{std::make_shared<const AnalyticFunction>(f), weight});
}

} // namespace loewner
