#include "catch_amalgamated.hpp"

#include <numbers>

#include "loewner/criteria.hpp"
#include "loewner/oracle.hpp"

using namespace loewner;

namespace {

Holomorphic poly(cplx a2)
{
    return [a2](cplx z) { return std::pair{z + a2 * z * z, 1.0 + 2.0 * a2 * z}; };
}

const Holomorphic square = [](cplx z) { return std::pair{z * z, 2.0 * z}; };

} // namespace

TEST_CASE("winding counts", "[oracle]")
{
    const auto k = as_holomorphic(AnalyticFunction::koebe());
    CHECK(winding_count(k, 0.0, 0.5) == 1);
    CHECK(winding_count(k, -10.0, 0.5) == 0);
    CHECK(winding_count(square, 0.25, 0.9) == 2);
    CHECK(winding_count(square, cplx{0.0, 0.5}, 0.9) == 2);
    CHECK(winding_count(poly(1.5), -0.1, 0.9) == 2);
}

TEST_CASE("winding counts are stable under refinement", "[oracle]")
{
    const auto k = as_holomorphic(AnalyticFunction::spiral_koebe(0.6));
    for (cplx w : {cplx{0.1, 0.2}, cplx{-0.3, 0.0}, cplx{2.0, 1.0}, cplx{-5.0, 3.0}})
        for (double r : {0.3, 0.7, 0.9}) {
            try {
                const int c = winding_count(k, w, r, 1024);
                CHECK(winding_count(k, w, r, 2048) == c);
                CHECK(winding_count(k, w, r, 4096) == c);
            } catch (const contour_error&) {
            }
        }
}

TEST_CASE("contour too close to the target is rejected", "[oracle]")
{
    const auto id = as_holomorphic(AnalyticFunction::identity());
    CHECK_THROWS_AS(winding_count(id, 0.5, 0.5, 64), contour_error);
    CHECK_THROWS_AS(winding_count(id, 0.0, 1.2), domain_error);
}

TEST_CASE("injectivity falsifier", "[oracle]")
{
    const auto v = injectivity_falsifier(square, 0.9);
    REQUIRE(v.falsified);
    REQUIRE(v.witness);
    CHECK(std::abs(v.witness->z1 + v.witness->z2) <= 1e-8);
    CHECK(std::abs(v.witness->z1 - v.witness->z2) > v.sep_tol);
    CHECK(std::abs(square(v.witness->z1).first - square(v.witness->z2).first) < v.img_tol);

    CHECK_FALSE(injectivity_falsifier(as_holomorphic(AnalyticFunction::identity()), 0.9).falsified);
    InjectivityOptions opt;
    opt.n_points = 10000;
    CHECK_FALSE(injectivity_falsifier(as_holomorphic(AnalyticFunction::koebe()), 0.9, opt).falsified);
}

TEST_CASE("univalence scan", "[oracle]")
{
    const auto id = univalence_scan(as_holomorphic(AnalyticFunction::identity()), 0.9);
    CHECK_FALSE(id.falsified);
    CHECK(id.max_count <= 1);
    CHECK(id.targets_checked > 0);

    const auto bad = univalence_scan(poly(1.5), 0.9);
    REQUIRE(bad.falsified);
    if (bad.winding)
        CHECK(bad.winding->count == 2);
    REQUIRE(bad.witness);
    const auto f = poly(1.5);
    CHECK(std::abs(f(bad.witness->z1).first - f(bad.witness->z2).first) <= 1e-9);
    CHECK(std::abs(bad.witness->z1 - bad.witness->z2) > bad.sep_tol);
}

TEST_CASE("univalent catalog members are not falsified", "[oracle]")
{
    for (const auto& f : {AnalyticFunction::koebe(), AnalyticFunction::half_plane(), AnalyticFunction::spiral_koebe(0.5),
                          AnalyticFunction::spiral_koebe(-1.0)})
        for (double r : {0.5, 0.9, 0.99}) {
            INFO(f.describe() << " r=" << r);
            CHECK_FALSE(univalence_scan(as_holomorphic(f), r).falsified);
        }
}

TEST_CASE("convex combinations of the half-plane map stay univalent", "[oracle]")
{
    const auto hp = AnalyticFunction::half_plane();
    InjectivityOptions opt;
    opt.n_points = 10000;
    for (int i = 0; i < 20; ++i) {
        // |2 alpha - 1| <= 1: alpha = (1 + rho e^{i phi}) / 2
        const double rho = (i % 4 + 1) / 4.0;
        const cplx alpha = 0.5 * (1.0 + std::polar(rho, 2.0 * std::numbers::pi * i / 20.0));
        const auto g = as_holomorphic(convex_combination(hp, alpha));
        INFO("alpha=" << alpha);
        CHECK_FALSE(injectivity_falsifier(g, 0.95, opt).falsified);
    }
}

TEST_CASE("oracle output depends only on the seed", "[oracle]")
{
    const auto f = as_holomorphic(AnalyticFunction::spiral_koebe(0.3));
    ScanOptions opt;
    opt.injectivity.seed = 42;
    CHECK(univalence_scan(f, 0.9, opt).to_document().str() == univalence_scan(f, 0.9, opt).to_document().str());
}
