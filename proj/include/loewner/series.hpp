#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loewner/errors.hpp"

namespace loewner {

using cplx = std::complex<double>;

/// Truncated power series c_0 + c_1 z + ... + c_N z^N over the complex
/// numbers. Value type; every operation returns a new series of the same
/// truncation order.
class PowerSeries {
public:
    PowerSeries() : coeffs_(1, cplx{0.0}) {}

    explicit PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw usage_error("PowerSeries: empty coefficient list");
        for (const auto& c : coeffs_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw usage_error("PowerSeries: non-finite coefficient");
    }

    static PowerSeries zero(std::size_t order) { return PowerSeries(std::vector<cplx>(order + 1)); }

    static PowerSeries constant(cplx value, std::size_t order)
    {
        std::vector<cplx> c(order + 1);
        c[0] = value;
        return PowerSeries(std::move(c));
    }

    /// value * z^degree, truncated at `order`.
    static PowerSeries monomial(cplx value, std::size_t degree, std::size_t order)
    {
        std::vector<cplx> c(order + 1);
        if (degree <= order)
            c[degree] = value;
        return PowerSeries(std::move(c));
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const cplx& operator[](std::size_t n) const { return coeffs_.at(n); }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    /// Pads with zeros or drops high coefficients.
    PowerSeries truncated(std::size_t order) const
    {
        std::vector<cplx> c(order + 1);
        for (std::size_t n = 0; n <= std::min(order, this->order()); ++n)
            c[n] = coeffs_[n];
        return PowerSeries(std::move(c));
    }

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    std::vector<cplx> coeffs_;
};

namespace detail {

inline void require_same_order(const PowerSeries& a, const PowerSeries& b, const char* op)
{
    if (a.order() != b.order())
        throw usage_error(std::string(op) + ": truncation orders differ (" +
                          std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
}

inline bool is_unit_constant(cplx c0) { return std::abs(c0 - cplx{1.0}) <= 1e-12; }

} // namespace detail

inline PowerSeries add(const PowerSeries& a, const PowerSeries& b)
{
    detail::require_same_order(a, b, "add");
    std::vector<cplx> c(a.order() + 1);
    for (std::size_t n = 0; n < c.size(); ++n)
        c[n] = a[n] + b[n];
    return PowerSeries(std::move(c));
}

inline PowerSeries subtract(const PowerSeries& a, const PowerSeries& b)
{
    detail::require_same_order(a, b, "subtract");
    std::vector<cplx> c(a.order() + 1);
    for (std::size_t n = 0; n < c.size(); ++n)
        c[n] = a[n] - b[n];
    return PowerSeries(std::move(c));
}

inline PowerSeries scale(const PowerSeries& a, cplx s)
{
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : c)
        x *= s;
    return PowerSeries(std::move(c));
}

/// Cauchy product truncated at the common order.
inline PowerSeries multiply(const PowerSeries& a, const PowerSeries& b)
{
    detail::require_same_order(a, b, "multiply");
    const std::size_t N = a.order();
    std::vector<cplx> c(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        cplx acc{0.0};
        for (std::size_t j = 0; j <= n; ++j)
            acc += a[j] * b[n - j];
        c[n] = acc;
    }
    return PowerSeries(std::move(c));
}

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return add(a, b); }
inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return subtract(a, b); }
inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return multiply(a, b); }

inline PowerSeries reciprocal(const PowerSeries& a)
{
    if (a[0] == cplx{0.0})
        throw singular_error("reciprocal: constant term is zero");
    const std::size_t N = a.order();
    const cplx inv0 = cplx{1.0} / a[0];
    std::vector<cplx> b(N + 1);
    b[0] = inv0;
    for (std::size_t n = 1; n <= N; ++n) {
        cplx acc{0.0};
        for (std::size_t j = 1; j <= n; ++j)
            acc += a[j] * b[n - j];
        b[n] = -inv0 * acc;
    }
    return PowerSeries(std::move(b));
}

/// Term-wise derivative; the top coefficient becomes zero.
inline PowerSeries differentiate(const PowerSeries& a)
{
    const std::size_t N = a.order();
    std::vector<cplx> c(N + 1);
    for (std::size_t n = 0; n < N; ++n)
        c[n] = static_cast<double>(n + 1) * a[n + 1];
    return PowerSeries(std::move(c));
}

/// Antiderivative vanishing at 0; the input's top coefficient is dropped.
inline PowerSeries integrate(const PowerSeries& a)
{
    const std::size_t N = a.order();
    std::vector<cplx> c(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        c[n] = a[n - 1] / static_cast<double>(n);
    return PowerSeries(std::move(c));
}

/// Multiplies by z (truncating).
inline PowerSeries shift_up(const PowerSeries& a)
{
    const std::size_t N = a.order();
    std::vector<cplx> c(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        c[n] = a[n - 1];
    return PowerSeries(std::move(c));
}

/// Divides by z; requires c_0 = 0. The new top coefficient is zero.
inline PowerSeries shift_down(const PowerSeries& a)
{
    if (a[0] != cplx{0.0})
        throw usage_error("shift_down: constant term must vanish");
    const std::size_t N = a.order();
    std::vector<cplx> c(N + 1);
    for (std::size_t n = 0; n < N; ++n)
        c[n] = a[n + 1];
    return PowerSeries(std::move(c));
}

/// Principal logarithm of a series with c_0 = 1, through n L_n = n a_n - sum k L_k a_{n-k}.
inline PowerSeries log_unit(const PowerSeries& a)
{
    if (!detail::is_unit_constant(a[0]))
        throw normalization_error("log_unit: constant term must be 1");
    const std::size_t N = a.order();
    std::vector<cplx> L(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        cplx acc{0.0};
        for (std::size_t k = 1; k < n; ++k)
            acc += static_cast<double>(k) * L[k] * a[n - k];
        L[n] = a[n] - acc / static_cast<double>(n);
    }
    return PowerSeries(std::move(L));
}

/// exp of a series with c_0 = 0, through n E_n = sum k L_k E_{n-k}.
inline PowerSeries exp_nilpotent(const PowerSeries& L)
{
    if (L[0] != cplx{0.0})
        throw normalization_error("exp_nilpotent: constant term must be 0");
    const std::size_t N = L.order();
    std::vector<cplx> E(N + 1);
    E[0] = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        cplx acc{0.0};
        for (std::size_t k = 1; k <= n; ++k)
            acc += static_cast<double>(k) * L[k] * E[n - k];
        E[n] = acc / static_cast<double>(n);
    }
    return PowerSeries(std::move(E));
}

/// a^gamma = exp(gamma log a) for a unit-constant-term series (principal branch,
/// result has constant term exactly 1).
inline PowerSeries pow_principal(const PowerSeries& a, cplx gamma)
{
    if (!detail::is_unit_constant(a[0]))
        throw normalization_error("pow_principal: constant term must be 1");
    return exp_nilpotent(scale(log_unit(a), gamma));
}

/// Horner evaluation with no domain check; for series that are exact polynomials.
inline cplx evaluate_polynomial(const PowerSeries& a, cplx z)
{
    cplx acc{0.0};
    for (std::size_t n = a.order() + 1; n-- > 0;)
        acc = acc * z + a[n];
    return acc;
}

/// Horner evaluation inside the unit disk.
inline cplx evaluate(const PowerSeries& a, cplx z)
{
    if (!(std::abs(z) < 1.0))
        throw domain_error("evaluate: |z| must be < 1");
    return evaluate_polynomial(a, z);
}

/// Value and first `count - 1` derivatives at z, inside the unit disk.
inline std::vector<cplx> evaluate_derivatives(const PowerSeries& a, cplx z, std::size_t count)
{
    if (!(std::abs(z) < 1.0))
        throw domain_error("evaluate_derivatives: |z| must be < 1");
    std::vector<cplx> out;
    out.reserve(count);
    PowerSeries cur = a;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(evaluate_polynomial(cur, z));
        cur = differentiate(cur);
    }
    return out;
}

} // namespace loewner
