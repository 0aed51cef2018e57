#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "loewner/disks.hpp"
#include "loewner/errors.hpp"
#include "loewner/functions.hpp"
#include "loewner/grid.hpp"
#include "loewner/oracle.hpp"
#include "loewner/report.hpp"
#include "loewner/series.hpp"

namespace loewner {

namespace chain_variants {

/// alpha f(z) + e^t (1 - alpha) z f'(z); needs Re(alpha/(1-alpha)) > 0.
struct ConvexCombination {
    AnalyticFunction f;
    cplx alpha;
};

/// e^{(1 - i a) t} f(e^{i a t} z), a = tan(alpha). Standard: a_1(t) = e^t.
struct SpirallikeStandard {
    AnalyticFunction f;
    double alpha;
};

/// e^{c t} f(z); needs Re c > 0.
struct Exponential {
    AnalyticFunction f;
    cplx c;
};

/// f(z) {1 + (e^t - 1) z f'(z)/f(z)}^{1/(alpha + i beta)}; needs alpha > 0.
struct SheilSmall {
    AnalyticFunction f;
    double alpha;
    double beta;
};

/// [gamma int_0^z g^alpha (h + (e^t - 1) h0) zeta^{i beta - 1} dzeta]^{1/gamma},
/// gamma = alpha + i beta, h0 = i beta + alpha z g'/g. h is used as an exact polynomial.
struct BazilevicIntegral {
    AnalyticFunction g;
    PowerSeries h;
    double alpha;
    double beta;
};

} // namespace chain_variants

using ChainSpec = std::variant<chain_variants::ConvexCombination, chain_variants::SpirallikeStandard,
                               chain_variants::Exponential, chain_variants::SheilSmall,
                               chain_variants::BazilevicIntegral>;

/// f(z,t), df/dt, df/dz and the Herglotz field p with df/dt = z f' p.
struct ChainPoint {
    cplx f;
    cplx f_t;
    cplx f_z;
    cplx p;
};

class LoewnerChain;
LoewnerChain make_chain(ChainSpec spec);

namespace detail {

inline boost::math::quadrature::tanh_sinh<double>& quadrature()
{
    thread_local boost::math::quadrature::tanh_sinh<double> q;
    return q;
}

// t-independent pieces of a chain evaluation at one z.
struct Prepared {
    cplx z;
    Jet jet{};
    cplx Q{1.0}; // z f'/f (or z g'/g)
    cplx C{1.0}; // 1 + z f''/f'
    cplx Lg{0.0};    // alpha log(g/z)
    cplx ratio{1.0}; // gamma J(z) (g/z)^{-alpha}
    cplx hval{1.0};
    cplx h0{0.0};
};

} // namespace detail

/// One of the five explicit chains with closed forms for every derivative.
/// Immutable once built; construct through make_chain.
class LoewnerChain {
public:
    const ChainSpec& spec() const noexcept { return spec_; }

    std::string variant_name() const
    {
        static constexpr const char* names[] = {"convex-combination", "spirallike", "exponential", "sheil-small",
                                                "bazilevic-integral"};
        return names[spec_.index()];
    }

    std::string describe() const
    {
        return std::visit(
            [&](const auto& v) -> std::string {
                using V = std::decay_t<decltype(v)>;
                std::string s = variant_name() + "(";
                if constexpr (std::is_same_v<V, chain_variants::ConvexCombination>)
                    s += v.f.describe() + "; alpha=" + format_complex(v.alpha);
                else if constexpr (std::is_same_v<V, chain_variants::SpirallikeStandard>)
                    s += v.f.describe() + "; alpha=" + format_double(v.alpha);
                else if constexpr (std::is_same_v<V, chain_variants::Exponential>)
                    s += v.f.describe() + "; c=" + format_complex(v.c);
                else if constexpr (std::is_same_v<V, chain_variants::SheilSmall>)
                    s += v.f.describe() + "; alpha=" + format_double(v.alpha) + "; beta=" + format_double(v.beta);
                else
                    s += "g=" + v.g.describe() + "; h=series(order " + std::to_string(v.h.order()) +
                         "); alpha=" + format_double(v.alpha) + "; beta=" + format_double(v.beta);
                return s + ")";
            },
            spec_);
    }

    /// The function the chain starts from, f(., 0).
    const AnalyticFunction& subject() const
    {
        return std::visit(
            [](const auto& v) -> const AnalyticFunction& {
                if constexpr (requires { v.f; })
                    return v.f;
                else
                    return v.g;
            },
            spec_);
    }

    /// Whether boundary values f(e^{i theta}, t) have a closed form.
    bool boundary_evaluable() const { return subject().closed_form(); }

    /// a_1(t) = df/dz(0, t), closed form.
    cplx a1(double t) const
    {
        return std::visit(
            [&](const auto& v) -> cplx {
                using V = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<V, chain_variants::ConvexCombination>)
                    return v.alpha + (1.0 - v.alpha) * std::exp(t);
                else if constexpr (std::is_same_v<V, chain_variants::SpirallikeStandard>)
                    return std::exp(t);
                else if constexpr (std::is_same_v<V, chain_variants::Exponential>)
                    return std::exp(v.c * t);
                else if constexpr (std::is_same_v<V, chain_variants::SheilSmall>)
                    return std::exp(t / cplx{v.alpha, v.beta});
                else {
                    const cplx gamma{v.alpha, v.beta};
                    // log(1 + (e^t - 1) gamma) = t + log(e^{-t} + (1 - e^{-t}) gamma)
                    const double em = std::exp(-t);
                    return std::exp((t + std::log(em + (1.0 - em) * gamma)) / gamma);
                }
            },
            spec_);
    }

    /// Boundary angles where the closed form at time t has a pole.
    std::vector<double> singular_angles(double t) const
    {
        auto base = subject().singular_angles();
        if (const auto* s = std::get_if<chain_variants::SpirallikeStandard>(&spec_)) {
            const double shift = std::tan(s->alpha) * t;
            for (auto& a : base)
                a = std::remainder(a - shift, 2.0 * std::numbers::pi);
        }
        return base;
    }

    /// Full evaluation. Domain::closed_disk admits |z| = 1 for closed-form subjects.
    ChainPoint eval(cplx z, double t, Domain d = Domain::open_disk) const
    {
        check(z, t, d);
        return combine(prepare(z, d, true), t, d);
    }

    /// Herglotz field only; skips the quadrature of the Bazilevic integral.
    cplx p(cplx z, double t, Domain d = Domain::open_disk) const
    {
        check(z, t, d);
        return herglotz(prepare(z, d, false), t, d);
    }

    detail::Prepared prepare(cplx z, Domain d, bool with_value) const
    {
        detail::Prepared pr;
        pr.z = z;
        std::visit(
            [&](const auto& v) {
                using V = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<V, chain_variants::SpirallikeStandard>) {
                    // the jet is taken at the rotated point in combine()
                } else if constexpr (std::is_same_v<V, chain_variants::BazilevicIntegral>) {
                    const cplx gamma{v.alpha, v.beta};
                    pr.jet = v.g.jet(z, d);
                    pr.Q = log_derivative(z, pr.jet);
                    pr.h0 = cplx{0.0, v.beta} + v.alpha * pr.Q;
                    pr.hval = evaluate_polynomial(v.h, z);
                    if (with_value) {
                        pr.Lg = v.alpha * v.g.log_over_z(z, d);
                        pr.ratio = bazilevic_ratio(v, gamma, z, pr.Lg, d);
                    }
                } else {
                    pr.jet = v.f.jet(z, d);
                    pr.Q = log_derivative(z, pr.jet);
                    // Exponential needs no C, so its value survives critical points of f
                    if constexpr (!std::is_same_v<V, chain_variants::Exponential>)
                        pr.C = convexity_quantity(z, pr.jet);
                }
            },
            spec_);
        return pr;
    }

    cplx herglotz(const detail::Prepared& pr, double t, Domain d) const
    {
        return std::visit(
            [&](const auto& v) -> cplx {
                using V = std::decay_t<decltype(v)>;
                const double em = std::exp(-t);
                if constexpr (std::is_same_v<V, chain_variants::ConvexCombination>)
                    return 1.0 / (em * v.alpha / (1.0 - v.alpha) + pr.C);
                else if constexpr (std::is_same_v<V, chain_variants::SpirallikeStandard>) {
                    const double a = std::tan(v.alpha);
                    const cplx w = std::polar(1.0, a * t) * pr.z;
                    const cplx Q = log_derivative(w, v.f.jet(w, d));
                    return cplx{1.0, -a} / Q + cplx{0.0, a};
                } else if constexpr (std::is_same_v<V, chain_variants::Exponential>)
                    return v.c / pr.Q;
                else if constexpr (std::is_same_v<V, chain_variants::SheilSmall>) {
                    const cplx gamma{v.alpha, v.beta};
                    return 1.0 / (gamma * em + (1.0 - em) * (pr.C + (gamma - 1.0) * pr.Q));
                } else
                    return 1.0 / (em * pr.hval + (1.0 - em) * pr.h0);
            },
            spec_);
    }

    ChainPoint combine(const detail::Prepared& pr, double t, Domain d) const
    {
        const cplx z = pr.z;
        return std::visit(
            [&](const auto& v) -> ChainPoint {
                using V = std::decay_t<decltype(v)>;
                const double E = std::exp(t);
                const double em = std::exp(-t);
                const Jet& j = pr.jet;
                if constexpr (std::is_same_v<V, chain_variants::ConvexCombination>) {
                    const cplx b = E * (1.0 - v.alpha);
                    ChainPoint cp;
                    cp.f = v.alpha * j.value + b * z * j.d1;
                    cp.f_t = b * z * j.d1;
                    cp.f_z = v.alpha * j.d1 + b * (j.d1 + z * j.d2);
                    cp.p = herglotz(pr, t, d);
                    return cp;
                } else if constexpr (std::is_same_v<V, chain_variants::SpirallikeStandard>) {
                    const double a = std::tan(v.alpha);
                    const cplx w = std::polar(1.0, a * t) * z;
                    const Jet jw = v.f.jet(w, d);
                    const cplx scale = std::exp(cplx{1.0, -a} * t);
                    ChainPoint cp;
                    cp.f = scale * jw.value;
                    cp.f_z = E * jw.d1;
                    cp.f_t = cplx{1.0, -a} * cp.f + cplx{0.0, a} * scale * w * jw.d1;
                    cp.p = herglotz(pr, t, d);
                    return cp;
                } else if constexpr (std::is_same_v<V, chain_variants::Exponential>) {
                    const cplx s = std::exp(v.c * t);
                    return {s * j.value, v.c * s * j.value, s * j.d1, herglotz(pr, t, d)};
                } else if constexpr (std::is_same_v<V, chain_variants::SheilSmall>) {
                    const cplx gamma{v.alpha, v.beta};
                    // B = e^t P with P = e^{-t} + (1 - e^{-t}) Q; B^{1/gamma} = e^{t/gamma} P^{1/gamma}
                    const cplx P = em + (1.0 - em) * pr.Q;
                    const cplx root = std::exp((t + std::log(P)) / gamma);
                    ChainPoint cp;
                    cp.f = j.value * root;
                    cp.f_t = root * z * j.d1 / (gamma * P);
                    cp.f_z = root * j.d1 * (1.0 + (1.0 - em) * (pr.C - pr.Q) / (gamma * P));
                    cp.p = herglotz(pr, t, d);
                    return cp;
                } else {
                    const cplx gamma{v.alpha, v.beta};
                    // f = z W, W = K^{1/gamma}, K = e^t (g/z)^alpha [e^{-t} ratio + (1 - e^{-t}) gamma]
                    const cplx Bt = em * pr.ratio + (1.0 - em) * gamma;
                    const cplx W = std::exp((t + pr.Lg + std::log(Bt)) / gamma);
                    ChainPoint cp;
                    cp.f = z * W;
                    cp.f_t = z * W / Bt;
                    cp.f_z = W * (em * pr.hval + (1.0 - em) * pr.h0) / Bt;
                    cp.p = herglotz(pr, t, d);
                    return cp;
                }
            },
            spec_);
    }

private:
    friend LoewnerChain make_chain(ChainSpec spec);
    explicit LoewnerChain(ChainSpec s) : spec_(std::move(s)) {}

    static void check(cplx z, double t, Domain d)
    {
        if (!(t >= 0.0) || !std::isfinite(t))
            throw domain_error("chain time must be finite and >= 0");
        const double r = std::abs(z);
        if (d == Domain::open_disk ? !(r < 1.0) : !(r <= 1.0 + 1e-12))
            throw domain_error("chain evaluation outside the disk");
    }

    // gamma J(z) (g(z)/z)^{-alpha} with J(z) = int_0^1 s^{gamma-1} q(s z) ds, q = (g/z)^alpha h.
    // Substituting s = v^{1/alpha} leaves the bounded weight v^{i beta/alpha}.
    static cplx bazilevic_ratio(const chain_variants::BazilevicIntegral& v, cplx gamma, cplx z, cplx Lg, Domain d)
    {
        if (z == cplx{0.0})
            return 1.0;
        const double a = v.alpha;
        const double b = v.beta;
        auto integrand = [&](double s) -> cplx {
            if (s <= 0.0)
                return std::exp(-Lg) * v.h[0];
            const double x = std::pow(s, 1.0 / a);
            const cplx zeta = x * z;
            const cplx weight = b == 0.0 ? cplx{1.0} : std::exp(cplx{0.0, b / a * std::log(s)});
            return weight * std::exp(a * v.g.log_over_z(zeta, d) - Lg) * evaluate_polynomial(v.h, zeta);
        };
        double err = 0.0;
        const cplx I = detail::quadrature().integrate(integrand, 0.0, 1.0, 1e-14, &err);
        return gamma / a * I;
    }

    ChainSpec spec_;
};

/// Validates the variant's admissible region and wires the closed forms.
inline LoewnerChain make_chain(ChainSpec spec)
{
    std::visit(
        [](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, chain_variants::ConvexCombination>) {
                if (v.alpha == cplx{1.0} || !((v.alpha / (1.0 - v.alpha)).real() > 0.0))
                    throw parameter_error("convex-combination chain needs Re(alpha/(1-alpha)) > 0");
            } else if constexpr (std::is_same_v<V, chain_variants::SpirallikeStandard>) {
                if (!(std::abs(v.alpha) < std::numbers::pi / 2))
                    throw parameter_error("spirallike chain needs alpha in (-pi/2, pi/2)");
            } else if constexpr (std::is_same_v<V, chain_variants::Exponential>) {
                if (!(v.c.real() > 0.0))
                    throw parameter_error("exponential chain needs Re c > 0");
            } else if constexpr (std::is_same_v<V, chain_variants::SheilSmall>) {
                if (!(v.alpha > 0.0) || !std::isfinite(v.beta))
                    throw parameter_error("sheil-small chain needs alpha > 0");
            } else {
                if (!(v.alpha > 0.0) || !std::isfinite(v.beta))
                    throw parameter_error("bazilevic-integral chain needs alpha > 0");
                if (!detail::is_unit_constant(v.h[0]))
                    throw normalization_error("bazilevic-integral chain needs h(0) = 1");
            }
        },
        spec);
    return LoewnerChain(std::move(spec));
}

/// f, df/dt, df/dz, p at (z, t) with |z| < 1.
inline ChainPoint eval_chain(const LoewnerChain& ch, cplx z, double t) { return ch.eval(z, t); }

/// Smallest sampled T (to 1e-9) with |a_1(T)| >= threshold.
inline double escape_time(const LoewnerChain& ch, double threshold = 1e6)
{
    double lo = 0.0, hi = 1.0;
    while (std::abs(ch.a1(hi)) < threshold) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e7)
            throw internal_error("escape_time: |a1| does not grow");
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(ch.a1(mid)) < threshold ? lo : hi) = mid;
    }
    return hi;
}

struct SubordinationViolation {
    double s;
    double t;
    cplx source; // point on |z| = r_max at time s
    cplx target; // f(source, s)
};

struct VerifyOptions {
    std::vector<double> times{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
    std::optional<DiskSpec> disk;
    std::size_t subordination_targets = 32;
    std::size_t consistency_angles = 16;
    double fd_step = 1e-5;
};

struct ChainReport {
    std::string chain;
    std::vector<double> times;
    GridSpec grid;
    double herglotz_margin = std::numeric_limits<double>::infinity();
    cplx herglotz_witness_z{};
    double herglotz_witness_t = 0.0;
    std::optional<DiskSpec> disk;
    double disk_dilatation = 0.0;
    bool disk_ok = true;
    std::vector<double> a1_abs;
    bool a1_monotone = true;
    double growth_bound = 0.0;
    std::size_t subordination_checked = 0;
    std::size_t subordination_inconclusive = 0;
    std::vector<SubordinationViolation> subordination_violations;
    double consistency_residual = 0.0;
    double loewner_residual = 0.0;

    bool passed() const
    {
        return herglotz_margin > 0.0 && a1_monotone && subordination_violations.empty() &&
               std::isfinite(growth_bound) && disk_ok;
    }

    KeyValueDocument to_document() const
    {
        KeyValueDocument doc;
        doc.section("chain");
        doc.add("chain", chain);
        doc.add_list("times", times);
        doc.add_list("grid.radii", grid.radii);
        doc.add("grid.angles_per_circle", grid.angles_per_circle);
        doc.add("herglotz_margin", herglotz_margin);
        doc.add("herglotz_witness.z", herglotz_witness_z);
        doc.add("herglotz_witness.t", herglotz_witness_t);
        if (disk) {
            doc.add("disk.alpha", disk->alpha);
            doc.add("disk.k", disk->k);
            doc.add("disk_dilatation", disk_dilatation);
            doc.add("disk_ok", disk_ok);
        }
        doc.add_list("a1_abs", a1_abs);
        doc.add("a1_monotone", a1_monotone);
        doc.add("growth_bound", growth_bound);
        doc.add("subordination_checked", subordination_checked);
        doc.add("subordination_inconclusive", subordination_inconclusive);
        doc.add("subordination_violations", subordination_violations.size());
        for (std::size_t i = 0; i < subordination_violations.size(); ++i) {
            const auto& v = subordination_violations[i];
            doc.add("violation." + std::to_string(i),
                    "s=" + format_double(v.s) + " t=" + format_double(v.t) + " source=" + format_complex(v.source) +
                        " target=" + format_complex(v.target));
        }
        doc.add("consistency_residual", consistency_residual);
        doc.add("loewner_residual", loewner_residual);
        doc.add("passed", passed());
        return doc;
    }
};

namespace detail {

inline Holomorphic chain_slice(const LoewnerChain& ch, double t)
{
    return [&ch, t](cplx z) {
        const auto cp = ch.eval(z, t);
        return std::pair{cp.f, cp.f_z};
    };
}

} // namespace detail

/// Numerical check of the chain conditions on grid x times: Re p > 0 (and p in the
/// optional disk), growth of |a_1|, boundedness of f/a_1, closed-form df/dt
/// against finite differences, and a winding-number falsifier for
/// f_s(D_r) inside f_t(D).
inline ChainReport verify_chain(const LoewnerChain& ch, const GridSpec& grid = {}, const VerifyOptions& opt = {})
{
    grid.validate();
    if (opt.times.empty())
        throw usage_error("verify_chain: times must be nonempty");
    for (std::size_t i = 0; i < opt.times.size(); ++i)
        if (!(opt.times[i] >= 0.0) || (i > 0 && !(opt.times[i] > opt.times[i - 1])))
            throw usage_error("verify_chain: times must be nonnegative and strictly increasing");

    ChainReport rep;
    rep.chain = ch.describe();
    rep.times = opt.times;
    rep.grid = grid;
    rep.disk = opt.disk;

    for (double t : opt.times)
        rep.a1_abs.push_back(std::abs(ch.a1(t)));
    for (std::size_t i = 1; i < rep.a1_abs.size(); ++i)
        if (!(rep.a1_abs[i] > rep.a1_abs[i - 1]))
            rep.a1_monotone = false;

    // Herglotz positivity, disk membership and growth over grid x times.
    for (cplx z : grid.points()) {
        const auto pr = ch.prepare(z, Domain::open_disk, true);
        for (std::size_t i = 0; i < opt.times.size(); ++i) {
            const double t = opt.times[i];
            const auto cp = ch.combine(pr, t, Domain::open_disk);
            if (cp.p.real() < rep.herglotz_margin) {
                rep.herglotz_margin = cp.p.real();
                rep.herglotz_witness_z = z;
                rep.herglotz_witness_t = t;
            }
            if (opt.disk)
                rep.disk_dilatation = std::max(rep.disk_dilatation, min_k(cp.p, opt.disk->alpha));
            const double growth = std::abs(cp.f) / rep.a1_abs[i];
            rep.growth_bound = std::isfinite(growth) ? std::max(rep.growth_bound, growth)
                                                     : std::numeric_limits<double>::infinity();
        }
    }
    if (opt.disk)
        rep.disk_ok = rep.disk_dilatation <= opt.disk->k;

    // Closed-form df/dt against finite differences in t, and the Loewner identity.
    const double h = opt.fd_step;
    for (double r : grid.radii)
        for (std::size_t j = 0; j < opt.consistency_angles; ++j) {
            const cplx z = std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / opt.consistency_angles);
            const auto pr = ch.prepare(z, Domain::open_disk, true);
            for (double t : opt.times) {
                const auto cp = ch.combine(pr, t, Domain::open_disk);
                cplx fd;
                if (t >= h)
                    fd = (ch.combine(pr, t + h, Domain::open_disk).f - ch.combine(pr, t - h, Domain::open_disk).f) /
                         (2.0 * h);
                else
                    fd = (-3.0 * cp.f + 4.0 * ch.combine(pr, t + h, Domain::open_disk).f -
                          ch.combine(pr, t + 2.0 * h, Domain::open_disk).f) /
                         (2.0 * h);
                const double scale = 1.0 + std::abs(cp.f_t);
                rep.consistency_residual = std::max(rep.consistency_residual, std::abs(cp.f_t - fd) / scale);
                rep.loewner_residual = std::max(rep.loewner_residual, std::abs(cp.f_t - z * cp.f_z * cp.p) / scale);
            }
        }

    // Subordination falsifier: f(r_max e^{i theta}, s) must have a preimage under f(., t).
    const double rmax = grid.r_max();
    for (std::size_t i = 0; i + 1 < opt.times.size(); ++i) {
        const double s = opt.times[i], t = opt.times[i + 1];
        const auto slice = detail::chain_slice(ch, t);
        std::vector<std::optional<Contour>> contours;
        auto contour_at = [&](std::size_t idx) -> const Contour& {
            static constexpr double fractions[] = {0.0, 0.5};
            static constexpr std::size_t sizes[] = {2048, 16384};
            const std::size_t ri = idx / 2, mi = idx % 2;
            if (contours.size() <= idx)
                contours.resize(idx + 1);
            if (!contours[idx])
                contours[idx].emplace(slice, rmax + fractions[ri] * (1.0 - rmax), sizes[mi]);
            return *contours[idx];
        };
        for (std::size_t k = 0; k < opt.subordination_targets; ++k) {
            const cplx src = std::polar(rmax, 2.0 * std::numbers::pi * (k + 0.25) / opt.subordination_targets);
            const cplx target = ch.eval(src, s).f;
            bool conclusive = false, found = false;
            for (std::size_t idx = 0; idx < 4 && !found; ++idx) {
                try {
                    const int c = contour_at(idx).count(target);
                    conclusive = true;
                    found = c >= 1;
                } catch (const contour_error&) {
                }
            }
            ++rep.subordination_checked;
            if (!conclusive)
                ++rep.subordination_inconclusive;
            else if (!found)
                rep.subordination_violations.push_back({s, t, src, target});
        }
    }
    return rep;
}

/// Reparametrization of a chain into a standard one: rotation by lambda = -arg a_1
/// (tracked continuously in time) and the time change s = b_1^{-1}(|a_1(0)| e^t) with
/// b_1 = |a_1|. h(z, t) = f(e^{i lambda(s)} z, s) / |a_1(0)| then has h'(0, t) = e^t.
struct NormalizedChain {
    double lambda = 0.0;
    double s = 0.0;
    double a1_0 = 1.0;
    std::function<cplx(cplx)> h;
    std::function<cplx(cplx)> h_prime;
};

/// arg a_1(t), continued from the principal value at t = 0.
inline double unwrapped_arg_a1(const LoewnerChain& ch, double t)
{
    double arg = std::arg(ch.a1(0.0));
    if (t <= 0.0)
        return arg;
    const auto steps = static_cast<std::size_t>(std::max(256.0, std::ceil(t / 0.01)));
    cplx prev = ch.a1(0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        const cplx cur = ch.a1(t * static_cast<double>(i) / static_cast<double>(steps));
        arg += std::arg(cur / prev);
        prev = cur;
    }
    return arg;
}

inline NormalizedChain normalize_chain(const LoewnerChain& ch, double t)
{
    if (!(t >= 0.0))
        throw domain_error("normalize_chain: t must be >= 0");
    NormalizedChain out;
    out.a1_0 = std::abs(ch.a1(0.0));
    const double target = out.a1_0 * std::exp(t);
    auto b1 = [&](double s) { return std::abs(ch.a1(s)); };

    double lo = 0.0, hi = std::max(1.0, t);
    while (b1(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6)
            throw internal_error("normalize_chain: bisection bracket failed (|a1| not increasing?)");
    }
    if (t == 0.0)
        hi = 0.0;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        (b1(mid) < target ? lo : hi) = mid;
    }
    out.s = (std::abs(b1(lo) - target) < std::abs(b1(hi) - target)) ? lo : hi;
    out.lambda = -unwrapped_arg_a1(ch, out.s);

    const cplx rot = std::polar(1.0, out.lambda);
    const double s = out.s, a0 = out.a1_0;
    out.h = [&ch, rot, s, a0](cplx z) { return ch.eval(rot * z, s).f / a0; };
    out.h_prime = [&ch, rot, s, a0](cplx z) { return rot * ch.eval(rot * z, s).f_z / a0; };
    return out;
}

} // namespace loewner
