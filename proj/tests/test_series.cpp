#include "catch_amalgamated.hpp"

#include <random>

#include "loewner/series.hpp"
#include "support.hpp"

using namespace loewner;
using namespace testing_support;
using Catch::Matchers::WithinAbs;

TEST_CASE("multiply telescopes and has a unit", "[series]")
{
    const PowerSeries a({1.0, 1.0, 0.0, 0.0});
    const PowerSeries b({1.0, -1.0, 0.0, 0.0});
    const auto p = a * b;
    CHECK(p == PowerSeries({1.0, 0.0, -1.0, 0.0}));

    std::mt19937_64 rng(1);
    const auto r = random_series(rng, 6);
    CHECK(r * PowerSeries::constant(1.0, 6) == r);
}

TEST_CASE("multiply matches a direct convolution", "[series]")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, 8), b = random_series(rng, 8);
        std::vector<cplx> ref(9);
        for (std::size_t i = 0; i <= 8; ++i)
            for (std::size_t j = 0; i + j <= 8; ++j)
                ref[i + j] += a[i] * b[j];
        CHECK(max_diff(a * b, PowerSeries(ref)) <= 1e-14);
    }
}

TEST_CASE("multiply rejects mismatched orders", "[series]")
{
    CHECK_THROWS_AS(PowerSeries::constant(1.0, 3) * PowerSeries::constant(1.0, 4), usage_error);
}

TEST_CASE("multiply is commutative and associative on integer coefficients", "[series]")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-5, 5);
    auto ints = [&] {
        std::vector<cplx> c(11);
        for (auto& x : c)
            x = {static_cast<double>(d(rng)), static_cast<double>(d(rng))};
        return PowerSeries(c);
    };
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = ints(), b = ints(), c = ints();
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("reciprocal", "[series]")
{
    const auto geo = reciprocal(PowerSeries({1.0, -1.0, 0.0, 0.0, 0.0, 0.0}));
    for (std::size_t n = 0; n <= 5; ++n)
        CHECK(geo[n] == cplx{1.0});
    CHECK(reciprocal(PowerSeries::constant(1.0, 4)) == PowerSeries::constant(1.0, 4));
    CHECK_THROWS_AS(reciprocal(PowerSeries({0.0, 1.0})), singular_error);

    std::mt19937_64 rng(4);
    for (std::size_t N : {8u, 16u})
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_series(rng, N, cplx{1.0});
            CHECK(max_diff(a * reciprocal(a), PowerSeries::constant(1.0, N)) <= 1e-12);
        }
}

TEST_CASE("pow_principal", "[series]")
{
    const auto p = pow_principal(PowerSeries({1.0, -1.0, 0, 0, 0, 0, 0, 0, 0, 0}), -2.0);
    for (std::size_t n = 0; n <= 9; ++n)
        CHECK_THAT(std::abs(p[n] - cplx(static_cast<double>(n + 1))), WithinAbs(0.0, 1e-12));

    std::mt19937_64 rng(5);
    const auto a = random_series(rng, 16, cplx{1.0});
    CHECK(max_diff(pow_principal(a, 0.0), PowerSeries::constant(1.0, 16)) <= 1e-15);
    CHECK_THROWS_AS(pow_principal(PowerSeries({2.0, 1.0}), 0.5), normalization_error);
}

TEST_CASE("pow_principal round trip", "[series]")
{
    std::mt19937_64 rng(6);
    const cplx gamma{2.0, 1.0};
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 16, cplx{1.0});
        const auto back = pow_principal(pow_principal(a, 1.0 / gamma), gamma);
        CHECK(max_diff(back, a) <= 1e-10);
    }
}

TEST_CASE("pow_principal adds exponents", "[series]")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 16, cplx{1.0});
        const cplx g1 = random_complex(rng, 2.0), g2 = random_complex(rng, 2.0);
        CHECK(max_diff(pow_principal(a, g1 + g2), pow_principal(a, g1) * pow_principal(a, g2)) <= 1e-10);
    }
}

TEST_CASE("log and exp recurrences invert each other", "[series]")
{
    std::mt19937_64 rng(8);
    const auto a = random_series(rng, 16, cplx{1.0});
    CHECK(max_diff(exp_nilpotent(log_unit(a)), a) <= 1e-12);
    // derivative of log a equals a'/a below the (dropped) top degree
    const auto lhs = differentiate(log_unit(a)).truncated(15);
    const auto rhs = (differentiate(a) * reciprocal(a)).truncated(15);
    CHECK(max_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("differentiate inverts integrate", "[series]")
{
    std::mt19937_64 rng(9);
    const auto a = random_series(rng, 12);
    // the top coefficient is lost to truncation
    CHECK(max_diff(differentiate(integrate(a)).truncated(11), a.truncated(11)) <= 1e-15);
    const auto b = integrate(a);
    CHECK(b[0] == cplx{0.0});
    CHECK(max_diff(integrate(differentiate(b)), b) <= 1e-15);
}

TEST_CASE("evaluate", "[series]")
{
    const PowerSeries geo(std::vector<cplx>(65, 1.0));
    CHECK_THAT(std::abs(evaluate(geo, 0.5) - 2.0), WithinAbs(0.0, std::ldexp(1.0, -63)));

    std::mt19937_64 rng(10);
    const auto a = random_series(rng, 7);
    CHECK(evaluate(a, 0.0) == a[0]);

    std::vector<cplx> k(65);
    for (std::size_t n = 0; n <= 64; ++n)
        k[n] = static_cast<double>(n);
    CHECK_THAT(std::abs(evaluate(PowerSeries(k), 0.3) - 0.3 / 0.49), WithinAbs(0.0, 1e-10));

    CHECK_THROWS_AS(evaluate(geo, 1.0), domain_error);
    CHECK_THROWS_AS(evaluate(geo, cplx{0.0, -1.2}), domain_error);
}

TEST_CASE("evaluate_derivatives against finite differences", "[series]")
{
    std::mt19937_64 rng(11);
    const auto a = random_series(rng, 20);
    const cplx z{0.3, -0.2};
    const auto d = evaluate_derivatives(a, z, 3);
    const double h = 1e-5;
    const cplx fd1 = (evaluate(a, z + h) - evaluate(a, z - h)) / (2 * h);
    const cplx fd2 = (evaluate(a, z + h) - 2.0 * evaluate(a, z) + evaluate(a, z - h)) / (h * h);
    CHECK(std::abs(d[0] - evaluate(a, z)) <= 1e-15);
    CHECK(std::abs(d[1] - fd1) <= 1e-8);
    CHECK(std::abs(d[2] - fd2) <= 1e-4);
}

TEST_CASE("construction rejects bad coefficients", "[series]")
{
    CHECK_THROWS(PowerSeries(std::vector<cplx>{}));
    CHECK_THROWS(PowerSeries({1.0, std::numeric_limits<double>::infinity()}));
}
