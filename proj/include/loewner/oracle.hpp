#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/functions.hpp"
#include "loewner/lowdisc.hpp"
#include "loewner/report.hpp"

namespace loewner {

/// Anything the oracle can test: returns (f(z), f'(z)).
using Holomorphic = std::function<std::pair<cplx, cplx>(cplx)>;

inline Holomorphic as_holomorphic(const AnalyticFunction& f)
{
    return [f](cplx z) {
        auto d = f.derivatives(z, 2);
        return std::pair{d[0], d[1]};
    };
}

enum class OracleMethod { injectivity, winding };

struct UnivalenceWitness {
    cplx z1;
    cplx z2;
    double gap; // |f(z1) - f(z2)|
};

struct WindingWitness {
    cplx target;
    cplx source; // a known preimage of target
    int count;
};

struct UnivalenceVerdict {
    bool falsified = false;
    OracleMethod method = OracleMethod::injectivity;
    std::optional<UnivalenceWitness> witness;
    std::optional<WindingWitness> winding;
    double radius = 0.0;
    std::size_t samples = 0;
    double sep_tol = 0.0;
    double img_tol = 0.0;
    std::size_t contour_points = 0;
    std::size_t targets_checked = 0;
    std::size_t targets_skipped = 0;
    int max_count = 0;

    KeyValueDocument to_document() const
    {
        KeyValueDocument doc;
        doc.section("univalence");
        doc.add("falsified", falsified);
        doc.add("method", method == OracleMethod::injectivity ? "injectivity" : "winding");
        doc.add("radius", radius);
        doc.add("samples", samples);
        doc.add("sep_tol", sep_tol);
        doc.add("img_tol", img_tol);
        doc.add("contour_points", contour_points);
        doc.add("targets_checked", targets_checked);
        doc.add("targets_skipped", targets_skipped);
        doc.add("max_count", max_count);
        if (witness) {
            doc.add("witness.z1", witness->z1);
            doc.add("witness.z2", witness->z2);
            doc.add("witness.gap", witness->gap);
        }
        if (winding) {
            doc.add("winding.target", winding->target);
            doc.add("winding.source", winding->source);
            doc.add("winding.count", winding->count);
        }
        return doc;
    }
};

namespace detail {

/// Newton iteration for f(z) = w from `start`; nullopt when it does not settle.
inline std::optional<cplx> newton_solve(const Holomorphic& f, cplx w, cplx start, double bound)
{
    cplx z = start;
    for (int it = 0; it < 60; ++it) {
        const auto [v, d] = f(z);
        if (d == cplx{0.0} || !std::isfinite(std::abs(d)))
            return std::nullopt;
        const cplx step = (v - w) / d;
        z -= step;
        if (!(std::abs(z) <= bound))
            return std::nullopt;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z)))
            return z;
    }
    return std::nullopt;
}

} // namespace detail

/// Samples f and f' on |z| = r once; counts preimages of any number of targets.
class Contour {
public:
    Contour(const Holomorphic& f, double r, std::size_t m) : r_(r), z_(m), F_(m), D_(m), reach_(m)
    {
        if (!(r > 0.0 && r < 1.0))
            throw domain_error("contour radius must lie in (0, 1)");
        if (m < 16 || m % 2 != 0)
            throw usage_error("contour needs an even number (>= 16) of points");
        for (std::size_t j = 0; j < m; ++j) {
            z_[j] = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
            std::tie(F_[j], D_[j]) = f(z_[j]);
        }
        for (std::size_t j = 0; j < m; ++j) {
            const double step = std::abs(F_[(j + 1) % m] - F_[j]);
            reach_[j] = std::max(reach_[j], step);
            reach_[(j + 1) % m] = std::max(reach_[(j + 1) % m], step);
        }
    }

    double radius() const { return r_; }
    std::size_t size() const { return z_.size(); }

    /// Number of solutions of f(z) = w in |z| < r by the m-point trapezoid rule for
    /// (1/2 pi i) \oint f'/(f - w) dz.
    int count(cplx w) const
    {
        const std::size_t m = z_.size();
        // Every sample must sit more than three local image steps from w, i.e. the
        // preimage is several grid spacings off the circle.
        bool clear = true;
        for (std::size_t j = 0; j < m && clear; ++j)
            clear = std::abs(F_[j] - w) > 3.0 * reach_[j];
        if (!clear)
            throw contour_error("contour passes too close to target " + format_complex(w));

        cplx full{0.0}, half{0.0};
        for (std::size_t j = 0; j < m; ++j) {
            const cplx term = z_[j] * D_[j] / (F_[j] - w);
            full += term;
            if (j % 2 == 0)
                half += term;
        }
        full /= static_cast<double>(m);
        half /= static_cast<double>(m / 2);
        const double nearest = std::round(full.real());
        const double residual = std::abs(full - cplx{nearest});
        if (residual > 1e-6 || std::abs(full - half) > 1e-3)
            throw contour_error("winding sum " + format_complex(full) + " is not near an integer");
        return static_cast<int>(nearest);
    }

private:
    double r_;
    std::vector<cplx> z_, F_, D_;
    std::vector<double> reach_;
};

inline int winding_count(const Holomorphic& f, cplx w, double r, std::size_t m = 2048)
{
    return Contour(f, r, m).count(w);
}

struct InjectivityOptions {
    std::size_t n_points = 10000;
    std::optional<double> sep_tol; // default 1e-3 r
    std::optional<double> img_tol; // default 1e-9 * image diameter
    std::uint64_t seed = 0;        // low-discrepancy sequence offset
};

/// Looks for z1 != z2 in |z| <= r with f(z1) = f(z2). Candidate pairs come from a
/// spatial hash of the image points; each candidate is refined by Newton so that a
/// reported witness is an actual near-collision, not a sampling artefact.
inline UnivalenceVerdict injectivity_falsifier(const Holomorphic& f, double r, const InjectivityOptions& opt = {})
{
    if (!(r > 0.0 && r < 1.0))
        throw domain_error("injectivity_falsifier: r must lie in (0, 1)");
    const std::size_t n = opt.n_points;
    Sobol2D seq(opt.seed);
    std::vector<cplx> z(n), w(n);
    std::vector<double> reach(n);
    const double spacing = r * std::sqrt(std::numbers::pi / static_cast<double>(std::max<std::size_t>(n, 1)));
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = square_to_disk(seq.next(), r);
        const auto [v, d] = f(z[i]);
        w[i] = v;
        reach[i] = 2.0 * std::abs(d) * spacing;
        lo_x = std::min(lo_x, v.real());
        hi_x = std::max(hi_x, v.real());
        lo_y = std::min(lo_y, v.imag());
        hi_y = std::max(hi_y, v.imag());
    }
    const double diameter = std::hypot(hi_x - lo_x, hi_y - lo_y);

    UnivalenceVerdict out;
    out.method = OracleMethod::injectivity;
    out.radius = r;
    out.samples = n;
    out.sep_tol = opt.sep_tol.value_or(1e-3 * r);
    out.img_tol = opt.img_tol.value_or(1e-9 * std::max(diameter, 1e-300));
    if (n < 2)
        return out;

    std::vector<double> sorted = reach;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(n / 2), sorted.end());
    double cell = sorted[n / 2];
    if (!(cell > 0.0))
        cell = std::max(diameter / std::sqrt(static_cast<double>(n)), 1e-300);

    auto key = [cell](cplx v) {
        return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor(v.real() / cell)),
                                                     static_cast<std::int64_t>(std::floor(v.imag() / cell))};
    };
    struct PairHash {
        std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const
        {
            return std::hash<std::int64_t>{}(p.first * 73856093) ^ std::hash<std::int64_t>{}(p.second * 19349663);
        }
    };
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, PairHash> buckets;
    for (std::size_t i = 0; i < n; ++i)
        buckets[key(w[i])].push_back(i);

    const double near = std::max(out.sep_tol, 3.0 * spacing);
    std::size_t newton_budget = 20 * n;
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < n && newton_budget > 0; ++i) {
        const auto [kx, ky] = key(w[i]);
        const auto span = static_cast<std::int64_t>(std::min(2.0, std::ceil(reach[i] / cell)));
        cand.clear();
        for (std::int64_t dx = -span; dx <= span; ++dx)
            for (std::int64_t dy = -span; dy <= span; ++dy) {
                auto it = buckets.find({kx + dx, ky + dy});
                if (it == buckets.end())
                    continue;
                for (std::size_t j : it->second)
                    if (j > i && std::abs(w[i] - w[j]) <= std::max(reach[i], reach[j]) &&
                        std::abs(z[i] - z[j]) > near)
                        cand.push_back(j);
            }
        std::sort(cand.begin(), cand.end());
        for (std::size_t j : cand) {
            if (newton_budget-- == 0)
                break;
            auto sol = detail::newton_solve(f, w[i], z[j], r * (1.0 + 1e-12));
            if (!sol)
                continue;
            const double gap = std::abs(f(*sol).first - w[i]);
            if (std::abs(*sol - z[i]) > out.sep_tol && gap < out.img_tol) {
                out.falsified = true;
                out.witness = UnivalenceWitness{z[i], *sol, gap};
                return out;
            }
        }
    }
    return out;
}

struct ScanOptions {
    std::size_t image_samples = 256;
    std::size_t contour_points = 2048;
    InjectivityOptions injectivity{4096, std::nullopt, std::nullopt, 0};
};

/// Injectivity scan followed by argument-principle counts for targets f(z_k),
/// z_k drawn from |z| <= 0.9 r. Any count above one falsifies univalence on |z| < r.
inline UnivalenceVerdict univalence_scan(const Holomorphic& f, double r, const ScanOptions& opt = {})
{
    auto verdict = injectivity_falsifier(f, r, opt.injectivity);
    if (verdict.falsified)
        return verdict;

    verdict.method = OracleMethod::winding;
    verdict.contour_points = opt.contour_points;
    const Contour contour(f, r, opt.contour_points);
    Sobol2D seq(opt.injectivity.seed + 7919);
    for (std::size_t k = 0; k < opt.image_samples; ++k) {
        const cplx source = square_to_disk(seq.next(), 0.9 * r);
        const cplx target = f(source).first;
        int c = 0;
        try {
            c = contour.count(target);
        } catch (const contour_error&) {
            ++verdict.targets_skipped;
            continue;
        }
        ++verdict.targets_checked;
        verdict.max_count = std::max(verdict.max_count, c);
        if (c > 1) {
            verdict.falsified = true;
            verdict.winding = WindingWitness{target, source, c};
            // Recover a second preimage from a coarse polar grid of starts.
            for (int i = 1; i <= 8 && !verdict.witness; ++i)
                for (int j = 0; j < 32 && !verdict.witness; ++j) {
                    const cplx start = std::polar(r * i / 9.0, 2.0 * std::numbers::pi * j / 32.0);
                    auto sol = detail::newton_solve(f, target, start, r);
                    if (sol && std::abs(*sol - source) > verdict.sep_tol)
                        verdict.witness = UnivalenceWitness{source, *sol, std::abs(f(*sol).first - target)};
                }
            return verdict;
        }
    }
    return verdict;
}

} // namespace loewner
