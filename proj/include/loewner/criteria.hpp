#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "loewner/disks.hpp"
#include "loewner/errors.hpp"
#include "loewner/functions.hpp"
#include "loewner/grid.hpp"
#include "loewner/report.hpp"
#include "loewner/series.hpp"

namespace loewner {

enum class CriterionKind {
    Convexity,           // Re(1 + z f''/f') > 0
    Spirallikeness,      // Re(e^{i a} z f'/f) > 0
    StarlikeTilted,      // z f'/f in U(a, k)
    SpiralUk,            // e^{i a} z f'/f in U(k), k >= |tan(a/2)|
    Bazilevic1,          // 1 + z f''/f' + (a + i b - 1) z f'/f in U(k)
    Bazilevic2,          // h in U(k) and i b + a z g'/g in U(k)
    SheilSmallHalfPlane, // Re(1 + z f''/f' + (a + i b - 1) z f'/f) > 0
};

inline const char* to_string(CriterionKind k)
{
    switch (k) {
    case CriterionKind::Convexity: return "convexity";
    case CriterionKind::Spirallikeness: return "spirallike";
    case CriterionKind::StarlikeTilted: return "starlike-tilted";
    case CriterionKind::SpiralUk: return "spiral";
    case CriterionKind::Bazilevic1: return "bazilevic1";
    case CriterionKind::Bazilevic2: return "bazilevic2";
    case CriterionKind::SheilSmallHalfPlane: return "sheil-small";
    }
    return "?";
}

inline std::optional<CriterionKind> criterion_from_string(std::string_view s)
{
    for (auto k : {CriterionKind::Convexity, CriterionKind::Spirallikeness, CriterionKind::StarlikeTilted,
                   CriterionKind::SpiralUk, CriterionKind::Bazilevic1, CriterionKind::Bazilevic2,
                   CriterionKind::SheilSmallHalfPlane})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

/// Disk criteria produce a dilatation bound; the others are half-plane conditions.
inline bool is_disk_criterion(CriterionKind k)
{
    return k == CriterionKind::StarlikeTilted || k == CriterionKind::SpiralUk || k == CriterionKind::Bazilevic1 ||
           k == CriterionKind::Bazilevic2;
}

struct CriterionParams {
    double alpha = 0.0;
    double beta = 0.0;
};

/// f for every kind except Bazilevic2, which reads g and h.
struct CriterionInputs {
    std::optional<AnalyticFunction> f;
    std::optional<AnalyticFunction> g;
    std::optional<PowerSeries> h;
};

struct CriterionReport {
    CriterionKind kind{};
    CriterionParams params;
    std::string subject;
    GridSpec grid;
    std::size_t points_evaluated = 0;
    double margin = 0.0;
    cplx worst_point{};
    cplx worst_quantity{};
    double min_dilatation = 0.0;
    double floor = 0.0;
    bool floor_applied = false;
    bool passed = false;
    std::vector<std::string> warnings;

    KeyValueDocument to_document() const
    {
        KeyValueDocument doc;
        doc.section("criterion");
        doc.add("kind", to_string(kind));
        doc.add("alpha", params.alpha);
        doc.add("beta", params.beta);
        doc.add("subject", subject);
        doc.add_list("grid.radii", grid.radii);
        doc.add("grid.angles_per_circle", grid.angles_per_circle);
        doc.add("grid.refinement", grid.refinement);
        doc.add("r_max", grid.r_max());
        doc.add("points_evaluated", points_evaluated);
        doc.add("margin", margin);
        doc.add("worst_point", worst_point);
        doc.add("worst_quantity", worst_quantity);
        doc.add("min_dilatation", min_dilatation);
        doc.add("dilatation_floor", floor);
        doc.add("floor_applied", floor_applied);
        doc.add("passed", passed);
        for (std::size_t i = 0; i < warnings.size(); ++i)
            doc.add("warning." + std::to_string(i), warnings[i]);
        return doc;
    }
};

namespace detail {

struct PointValue {
    double slack;   // > 0 where the defining inequality holds with room
    double mink;    // pointwise minimal k (informational for half-plane kinds)
    cplx quantity;  // the tested quantity
};

class CriterionEvaluator {
public:
    CriterionEvaluator(CriterionKind kind, CriterionParams params, const CriterionInputs& in)
        : kind_(kind), params_(params), in_(in)
    {
        const bool tilted = kind == CriterionKind::Spirallikeness || kind == CriterionKind::StarlikeTilted ||
                            kind == CriterionKind::SpiralUk;
        if (tilted && !(std::abs(params.alpha) < std::numbers::pi / 2))
            throw parameter_error(std::string(to_string(kind)) + ": alpha must lie in (-pi/2, pi/2)");
        const bool bazilevic = kind == CriterionKind::Bazilevic1 || kind == CriterionKind::Bazilevic2 ||
                               kind == CriterionKind::SheilSmallHalfPlane;
        if (bazilevic && !(params.alpha > 0.0))
            throw parameter_error(std::string(to_string(kind)) + ": alpha must be positive");
        if (!std::isfinite(params.beta))
            throw parameter_error("beta must be finite");
        if (kind == CriterionKind::Bazilevic2) {
            if (!in.g || !in.h)
                throw usage_error("bazilevic2: inputs g and h are required");
            if (!detail::is_unit_constant((*in.h)[0]))
                throw normalization_error("bazilevic2: h(0) must be 1");
        } else if (!in.f) {
            throw usage_error(std::string(to_string(kind)) + ": input f is required");
        }
    }

    PointValue operator()(cplx z) const
    {
        const double a = params_.alpha;
        const cplx gamma{params_.alpha, params_.beta};
        const cplx tilt = std::polar(1.0, a);
        switch (kind_) {
        case CriterionKind::Convexity: {
            const cplx w = convexity_quantity(*in_.f, z);
            return {w.real(), min_k(w), w};
        }
        case CriterionKind::Spirallikeness: {
            const cplx w = tilt * log_derivative(*in_.f, z);
            return {w.real(), min_k(w), w};
        }
        case CriterionKind::StarlikeTilted: {
            const cplx w = log_derivative(*in_.f, z);
            const double k = min_k(w, a);
            return {1.0 - k, k, w};
        }
        case CriterionKind::SpiralUk: {
            const cplx w = tilt * log_derivative(*in_.f, z);
            const double k = min_k(w);
            return {1.0 - k, k, w};
        }
        case CriterionKind::Bazilevic1:
        case CriterionKind::SheilSmallHalfPlane: {
            const Jet j = in_.f->jet(z);
            const cplx w = convexity_quantity(z, j) + (gamma - 1.0) * log_derivative(z, j);
            const double k = min_k(w);
            if (kind_ == CriterionKind::SheilSmallHalfPlane)
                return {w.real(), k, w};
            return {1.0 - k, k, w};
        }
        case CriterionKind::Bazilevic2: {
            const cplx hv = evaluate(*in_.h, z);
            const cplx h0 = cplx{0.0, params_.beta} + params_.alpha * log_derivative(*in_.g, z);
            const double kh = min_k(hv);
            const double k0 = min_k(h0);
            return kh >= k0 ? PointValue{1.0 - kh, kh, hv} : PointValue{1.0 - k0, k0, h0};
        }
        }
        throw internal_error("unknown criterion kind");
    }

private:
    CriterionKind kind_;
    CriterionParams params_;
    const CriterionInputs& in_;
};

} // namespace detail

/// Sweeps the criterion's pointwise quantity over the grid (origin first, then
/// circles in ascending order, then one angular refinement pass around the
/// running extremum). Ties keep the earliest point, so the result does not
/// depend on anything but the grid.
inline CriterionReport evaluate_criterion(CriterionKind kind, CriterionParams params, const CriterionInputs& inputs,
                                          const GridSpec& grid = {})
{
    grid.validate();
    detail::CriterionEvaluator eval(kind, params, inputs);

    CriterionReport rep;
    rep.kind = kind;
    rep.params = params;
    rep.grid = grid;
    if (kind == CriterionKind::Bazilevic2)
        rep.subject = "g=" + inputs.g->describe() + "; h=series(order " + std::to_string(inputs.h->order()) + ")";
    else
        rep.subject = inputs.f->describe();

    double worst_slack = std::numeric_limits<double>::infinity();
    double worst_k = 0.0;
    cplx worst_z{}, worst_w{};
    std::optional<std::size_t> worst_circle;
    std::size_t worst_angle = 0;
    std::size_t count = 0;

    auto visit = [&](cplx z, std::optional<std::size_t> circle, std::size_t angle_index) {
        const auto v = eval(z);
        ++count;
        if (std::isnan(v.slack))
            throw singular_error("criterion quantity is not finite at " + format_complex(z));
        if (v.slack < worst_slack) {
            worst_slack = v.slack;
            worst_k = v.mink;
            worst_z = z;
            worst_w = v.quantity;
            worst_circle = circle;
            worst_angle = angle_index;
        }
    };

    visit(cplx{0.0}, std::nullopt, 0);
    for (std::size_t i = 0; i < grid.radii.size(); ++i)
        for (std::size_t j = 0; j < grid.angles_per_circle; ++j)
            visit(std::polar(grid.radii[i], grid.angle(j)), i, j);

    if (grid.refinement > 1 && worst_circle) {
        const double r = grid.radii[*worst_circle];
        const double step = grid.angle(1) / static_cast<double>(grid.refinement);
        const double centre = grid.angle(worst_angle);
        const auto m = static_cast<long>(grid.refinement);
        for (long s = -m + 1; s < m; ++s)
            if (s != 0)
                visit(std::polar(r, centre + static_cast<double>(s) * step), std::nullopt, 0);
    }

    rep.points_evaluated = count;
    rep.worst_point = worst_z;
    rep.worst_quantity = worst_w;
    if (is_disk_criterion(kind)) {
        rep.min_dilatation = worst_k;
        if (kind == CriterionKind::SpiralUk) {
            rep.floor = std::abs(std::tan(params.alpha / 2.0));
            if (rep.min_dilatation < rep.floor) {
                rep.min_dilatation = rep.floor;
                rep.floor_applied = true;
                rep.warnings.push_back("dilatation raised to the hypothesis floor |tan(alpha/2)|");
            }
        }
        rep.margin = 1.0 - rep.min_dilatation;
        rep.passed = rep.min_dilatation < 1.0;
        rep.warnings.push_back("min_dilatation is a lower bound for the supremum over the disk; sweep stops at r_max = " +
                               format_double(grid.r_max()));
    } else {
        rep.min_dilatation = worst_k;
        rep.margin = worst_slack;
        rep.passed = worst_slack > 0.0;
        rep.warnings.push_back("half-plane condition verified on the grid only; r_max = " + format_double(grid.r_max()));
    }
    return rep;
}

/// alpha f + (1 - alpha) z f' for |2 alpha - 1| <= 1. alpha = 1 returns f unchanged.
inline AnalyticFunction convex_combination(const AnalyticFunction& f, cplx alpha)
{
    if (std::abs(2.0 * alpha - 1.0) > 1.0 + 1e-12)
        throw parameter_error("convex_combination: |2 alpha - 1| must be <= 1");
    if (alpha == cplx{1.0})
        return f;
    return combine_with_derivative(f, alpha);
}

struct ConvexCombinationResult {
    AnalyticFunction function;
    CriterionReport convexity;
    std::vector<std::string> warnings;
};

/// convex_combination plus the convexity check of its input on `grid`. A non-convex
/// input still produces the function; the report carries a precondition warning.
inline ConvexCombinationResult convex_combination_checked(const AnalyticFunction& f, cplx alpha,
                                                          const GridSpec& grid = {})
{
    auto g = convex_combination(f, alpha);
    CriterionInputs in;
    in.f = f;
    auto rep = evaluate_criterion(CriterionKind::Convexity, {}, in, grid);
    std::vector<std::string> warnings;
    if (!rep.passed)
        warnings.push_back("precondition: input is not convex on the grid (worst point " +
                           format_complex(rep.worst_point) + "); univalence of the combination is not guaranteed");
    return {std::move(g), std::move(rep), std::move(warnings)};
}

} // namespace loewner
