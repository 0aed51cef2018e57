#include "catch_amalgamated.hpp"

#include <random>

#include "loewner/chains.hpp"
#include "loewner/criteria.hpp"
#include "support.hpp"

using namespace loewner;
using namespace testing_support;
namespace cv = chain_variants;

namespace {

std::vector<LoewnerChain> hypothesis_chains()
{
    const auto hp = AnalyticFunction::half_plane();
    const auto sk = AnalyticFunction::spiral_koebe(0.5);
    return {make_chain(cv::ConvexCombination{hp, {0.5, 0.4}}),
            make_chain(cv::SpirallikeStandard{sk, 0.5}),
            make_chain(cv::Exponential{sk, std::polar(1.0, -0.5)}),
            make_chain(cv::SheilSmall{hp, 1.0, 0.0}),
            make_chain(cv::SheilSmall{AnalyticFunction::identity(), 1.0, 0.5}),
            make_chain(cv::BazilevicIntegral{AnalyticFunction::koebe(), PowerSeries::constant(1.0, 0), 1.0, 0.0})};
}

// chains outside the hypotheses still obey every closed-form identity
std::vector<LoewnerChain> formula_chains()
{
    auto out = hypothesis_chains();
    const auto hp = AnalyticFunction::half_plane();
    out.push_back(make_chain(cv::SheilSmall{hp, 1.0, 0.5}));
    out.push_back(make_chain(cv::SheilSmall{AnalyticFunction::spiral_koebe(-0.4), 0.6, -0.8}));
    out.push_back(make_chain(cv::ConvexCombination{AnalyticFunction::koebe(), {0.3, -0.2}}));
    out.push_back(make_chain(cv::Exponential{AnalyticFunction::koebe(), {0.7, 2.0}}));
    out.push_back(make_chain(cv::BazilevicIntegral{AnalyticFunction::spiral_koebe(0.3), PowerSeries({1.0, 0.3, 0.1}), 0.7, 0.6}));
    return out;
}

GridSpec quick_grid() { return GridSpec::up_to(0.95, 64); }

} // namespace

TEST_CASE("exponential chain of the identity has constant p", "[chains]")
{
    const cplx c = std::polar(1.0, -0.7);
    const auto ch = make_chain(cv::Exponential{AnalyticFunction::identity(), c});
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const cplx z = random_in_disk(rng, 0.99);
        CHECK(std::abs(ch.p(z, 0.37 * i) - c) <= 1e-15);
    }
}

TEST_CASE("chains start at their subject function", "[chains]")
{
    std::mt19937_64 rng(42);
    for (const auto& ch : formula_chains()) {
        if (std::holds_alternative<cv::BazilevicIntegral>(ch.spec()))
            continue;
        INFO(ch.describe());
        const auto& f = ch.subject();
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_in_disk(rng, 0.95);
            const cplx ref = std::holds_alternative<cv::ConvexCombination>(ch.spec())
                                 ? convex_combination(f, std::get<cv::ConvexCombination>(ch.spec()).alpha).jet(z).value
                                 : f.jet(z).value;
            CHECK(std::abs(ch.eval(z, 0.0).f - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("bazilevic chain starts at the constructed Bazilevic function", "[chains]")
{
    const auto g = AnalyticFunction::spiral_koebe(0.3);
    const PowerSeries h({1.0, 0.3, 0.1});
    const auto ch = make_chain(cv::BazilevicIntegral{g, h, 0.7, 0.6});
    const auto f = bazilevic_construct(g, h, 0.7, 0.6, 80);
    for (cplx z : {cplx{0.2, 0.1}, cplx{-0.4, 0.3}, cplx{0.1, -0.5}})
        CHECK(std::abs(ch.eval(z, 0.0).f - f.jet(z).value) <= 1e-10);

    const auto k = make_chain(cv::BazilevicIntegral{AnalyticFunction::koebe(), PowerSeries::constant(1.0, 0), 1.0, 0.0});
    for (cplx z : {cplx{0.3, 0.2}, cplx{0.9, -0.3}, cplx{-0.99, 0.0}})
        CHECK(std::abs(k.eval(z, 0.0).f - z / (1.0 - z)) <= 1e-12 * std::abs(z / (1.0 - z)));
}

TEST_CASE("a1 matches df/dz at the origin", "[chains]")
{
    for (const auto& ch : formula_chains()) {
        INFO(ch.describe());
        for (double t : {0.0, 0.3, 1.0, 2.5, 4.0}) {
            const cplx a = ch.a1(t);
            CHECK(std::abs(ch.eval(0.0, t).f_z - a) <= 1e-10 * std::abs(a));
            const double h = 1e-4;
            const cplx fd = (ch.eval(h, t).f - ch.eval(-h, t).f) / (2 * h);
            CHECK(std::abs(fd - a) <= 1e-6 * std::abs(a));
        }
    }
}

TEST_CASE("spirallike chain is standard", "[chains]")
{
    const auto ch = make_chain(cv::SpirallikeStandard{AnalyticFunction::spiral_koebe(0.9), 0.9});
    for (double t : {0.0, 0.5, 3.0})
        CHECK(std::abs(ch.a1(t) - std::exp(t)) <= 1e-15 * std::exp(t));
}

TEST_CASE("convex-combination p at a sample point", "[chains]")
{
    const auto ch = make_chain(cv::ConvexCombination{AnalyticFunction::half_plane(), 0.5});
    const cplx z = 0.3;
    // alpha/(1-alpha) = 1 and 1 + z f''/f' = (1+z)/(1-z)
    const cplx inv = 1.0 + (1.0 + z) / (1.0 - z);
    const cplx p = ch.p(z, 0.0);
    CHECK(std::abs(p - 1.0 / inv) <= 1e-15);
    CHECK(p.real() > 0.0);
}

TEST_CASE("df/dt matches a central difference in t", "[chains]")
{
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> td(1e-4, 4.0);
    const double h = 1e-5;
    for (const auto& ch : formula_chains()) {
        INFO(ch.describe());
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const cplx z = random_in_disk(rng, 0.9);
            const double t = td(rng);
            const auto cp = ch.eval(z, t);
            const cplx fd = (ch.eval(z, t + h).f - ch.eval(z, t - h).f) / (2 * h);
            worst = std::max(worst, std::abs(cp.f_t - fd) / (1.0 + std::abs(cp.f_t)));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("df/dz matches a central difference in z", "[chains]")
{
    std::mt19937_64 rng(44);
    const double h = 1e-6;
    for (const auto& ch : formula_chains()) {
        INFO(ch.describe());
        for (int i = 0; i < 30; ++i) {
            const cplx z = random_in_disk(rng, 0.9);
            const double t = 0.1 * i;
            const auto cp = ch.eval(z, t);
            const cplx fd = (ch.eval(z + h, t).f - ch.eval(z - h, t).f) / (2 * h);
            CHECK(std::abs(cp.f_z - fd) <= 1e-6 * (1.0 + std::abs(cp.f_z)));
        }
    }
}

TEST_CASE("Loewner identity df/dt = z f' p", "[chains]")
{
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> td(0.0, 6.0);
    for (const auto& ch : formula_chains()) {
        INFO(ch.describe());
        const int n = std::holds_alternative<cv::BazilevicIntegral>(ch.spec()) ? 200 : 1000;
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const cplx z = random_in_disk(rng, 0.999);
            const auto cp = ch.eval(z, td(rng));
            worst = std::max(worst, std::abs(cp.f_t - z * cp.f_z * cp.p) / (1.0 + std::abs(cp.f_t)));
        }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("the p-only path agrees with full evaluation", "[chains]")
{
    std::mt19937_64 rng(46);
    for (const auto& ch : formula_chains())
        for (int i = 0; i < 20; ++i) {
            const cplx z = random_in_disk(rng, 0.99);
            const double t = 0.2 * i;
            CHECK(std::abs(ch.p(z, t) - ch.eval(z, t).p) <= 1e-14 * std::abs(ch.p(z, t)));
        }
}

TEST_CASE("|a1| escapes", "[chains]")
{
    for (const auto& ch : formula_chains()) {
        const double T = escape_time(ch);
        CHECK(std::abs(ch.a1(T)) >= 1e6);
        CHECK(std::abs(ch.a1(T - 1e-6)) < 1e6);
    }
}

TEST_CASE("exponential chain transfers the disk condition", "[chains]")
{
    for (double a : {0.2, 0.5, 1.0}) {
        const auto f = AnalyticFunction::spiral_koebe(0.4);
        const auto ch = make_chain(cv::Exponential{f, std::polar(1.0, -a)});
        for (cplx z : GridSpec::up_to(0.95, 32).points())
            for (double t : {0.0, 1.0}) {
                const double kp = min_k(ch.p(z, t));
                const double kq = min_k(std::polar(1.0, a) * log_derivative(f, z));
                CHECK(std::abs(kp - kq) <= 1e-12);
            }
    }
}

TEST_CASE("make_chain validates parameters", "[chains]")
{
    const auto f = AnalyticFunction::half_plane();
    CHECK_THROWS_AS(make_chain(cv::ConvexCombination{f, 1.0}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::ConvexCombination{f, cplx{0.5, 0.5}}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::ConvexCombination{f, 1.5}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::Exponential{f, cplx{0.0, 1.0}}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::Exponential{f, -1.0}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::SheilSmall{f, 0.0, 1.0}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::SpirallikeStandard{f, 1.6}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::BazilevicIntegral{f, PowerSeries::constant(1.0, 0), -1.0, 0.0}), parameter_error);
    CHECK_THROWS_AS(make_chain(cv::BazilevicIntegral{f, PowerSeries::constant(2.0, 0), 1.0, 0.0}), normalization_error);
}

TEST_CASE("evaluation domain", "[chains]")
{
    const auto ch = make_chain(cv::Exponential{AnalyticFunction::koebe(), 1.0});
    CHECK_THROWS_AS(ch.eval(1.0, 0.0), domain_error);
    CHECK_THROWS_AS(ch.eval(0.5, -1.0), domain_error);
    CHECK(std::abs(ch.eval(cplx{0.0, 1.0}, 0.0, Domain::closed_disk).f + 0.5) <= 1e-15);
    const auto s = make_chain(cv::Exponential{AnalyticFunction::series(AnalyticFunction::koebe().taylor(20)), 1.0});
    CHECK_THROWS_AS(s.eval(-1.0, 0.0, Domain::closed_disk), domain_error);
    CHECK_FALSE(s.boundary_evaluable());
}

TEST_CASE("verify_chain on hypothesis instances", "[chains]")
{
    for (const auto& ch : hypothesis_chains()) {
        INFO(ch.describe());
        const auto rep = verify_chain(ch, quick_grid());
        CHECK(rep.herglotz_margin > 0.0);
        CHECK(rep.a1_monotone);
        CHECK(rep.subordination_violations.empty());
        CHECK(rep.subordination_inconclusive == 0);
        CHECK(std::isfinite(rep.growth_bound));
        CHECK(rep.consistency_residual <= 1e-6);
        CHECK(rep.loewner_residual <= 1e-9);
        CHECK(rep.passed());
    }
}

TEST_CASE("verify_chain finds the negative Herglotz witness for koebe", "[chains]")
{
    const auto ch = make_chain(cv::ConvexCombination{AnalyticFunction::koebe(), {0.5, 0.4}});
    const auto rep = verify_chain(ch);
    CHECK(rep.herglotz_margin < 0.0);
    CHECK(ch.p(rep.herglotz_witness_z, rep.herglotz_witness_t).real() == rep.herglotz_margin);
    CHECK_FALSE(rep.passed());
}

TEST_CASE("verify_chain with a disk", "[chains]")
{
    const auto ch = make_chain(cv::Exponential{AnalyticFunction::identity(), std::polar(1.0, -0.6)});
    VerifyOptions opt;
    opt.disk = DiskSpec{0.0, std::tan(0.3) + 1e-12};
    const auto rep = verify_chain(ch, quick_grid(), opt);
    CHECK(std::abs(rep.disk_dilatation - std::tan(0.3)) <= 1e-14);
    CHECK(rep.disk_ok);
    opt.disk = DiskSpec{0.0, 0.2};
    CHECK_FALSE(verify_chain(ch, quick_grid(), opt).passed());
}

TEST_CASE("verify_chain rejects bad times", "[chains]")
{
    const auto ch = make_chain(cv::Exponential{AnalyticFunction::identity(), 1.0});
    VerifyOptions opt;
    opt.times = {};
    CHECK_THROWS_AS(verify_chain(ch, quick_grid(), opt), usage_error);
    opt.times = {0.0, 1.0, 0.5};
    CHECK_THROWS_AS(verify_chain(ch, quick_grid(), opt), usage_error);
}

TEST_CASE("verify_chain is reproducible", "[chains]")
{
    const auto ch = hypothesis_chains()[1];
    CHECK(verify_chain(ch, quick_grid()).to_document().str() == verify_chain(ch, quick_grid()).to_document().str());
}

TEST_CASE("normalize_chain yields a standard chain", "[chains]")
{
    for (const auto& ch : formula_chains()) {
        INFO(ch.describe());
        for (double t : {0.0, 0.5, 1.0, 2.0}) {
            const auto n = normalize_chain(ch, t);
            CHECK(std::abs(n.h(0.0)) <= 1e-15);
            CHECK(std::abs(n.h_prime(0.0) - std::exp(t)) <= 1e-10 * std::exp(t));
        }
    }
}

TEST_CASE("normalize_chain closed forms", "[chains]")
{
    const auto s = make_chain(cv::SpirallikeStandard{AnalyticFunction::spiral_koebe(0.5), 0.5});
    for (double t : {0.0, 0.5, 2.0}) {
        const auto n = normalize_chain(s, t);
        CHECK(std::abs(n.lambda) <= 1e-12);
        CHECK(std::abs(n.s - t) <= 1e-11);
        const cplx z{0.3, 0.2};
        CHECK(std::abs(n.h(z) - s.eval(z, t).f) <= 1e-10 * std::abs(s.eval(z, t).f));
    }
    const cplx c{0.5, 3.0};
    const auto e = make_chain(cv::Exponential{AnalyticFunction::koebe(), c});
    for (double t : {0.5, 1.0, 2.0}) {
        const auto n = normalize_chain(e, t);
        CHECK(std::abs(n.s - t / 0.5) <= 1e-11);
        // arg a1 grows continuously as 3 s, beyond the principal range
        CHECK(std::abs(n.lambda + 3.0 * n.s) <= 1e-9);
    }
}
