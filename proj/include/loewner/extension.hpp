#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "loewner/chains.hpp"
#include "loewner/disks.hpp"
#include "loewner/errors.hpp"
#include "loewner/report.hpp"

namespace loewner {

/// The chain is sampled at rho z: rho = 1 extends f itself, rho < 1 extends
/// f(rho z)/rho, whose chain f(rho z, t)/rho has Herglotz field p(rho z, t).
struct ExtensionOptions {
    double rho = 1.0;
};

namespace detail {

inline Domain extension_domain(double rho) { return rho < 1.0 ? Domain::open_disk : Domain::closed_disk; }

inline void check_rho(double rho)
{
    if (!(rho > 0.0 && rho <= 1.0))
        throw parameter_error("extension: dilation rho must lie in (0, 1]");
}

inline cplx checked_value(cplx v, cplx z)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw boundary_singularity("extension is not finite at " + format_complex(z));
    return v;
}

} // namespace detail

/// h(z) = f(z, 0) inside the disk and f(z/|z|, log|z|) outside.
inline cplx becker_extend(const LoewnerChain& ch, cplx z, const ExtensionOptions& opt = {})
{
    detail::check_rho(opt.rho);
    const double r = std::abs(z);
    if (!std::isfinite(r))
        throw domain_error("becker_extend: z must be finite");
    if (r < 1.0)
        return detail::checked_value(ch.eval(opt.rho * z, 0.0).f / opt.rho, z);
    if (opt.rho == 1.0 && !ch.boundary_evaluable())
        throw boundary_singularity("boundary values of " + ch.describe() + " have no closed form");
    const cplx u = z / r;
    return detail::checked_value(ch.eval(opt.rho * u, std::log(r), detail::extension_domain(opt.rho)).f / opt.rho, z);
}

struct Wirtinger {
    cplx dz;
    cplx dzbar;
};

/// Polar Wirtinger derivatives of the extension by central differences in r and
/// theta with one Richardson step. The stencil reaches r +- step.
inline Wirtinger wirtinger_fd(const LoewnerChain& ch, double r, double theta, double step,
                              const ExtensionOptions& opt = {})
{
    if (!(step > 0.0) || !(r > step))
        throw usage_error("wirtinger_fd: need 0 < step < r");
    auto H = [&](double rr, double th) { return becker_extend(ch, std::polar(rr, th), opt); };
    auto d_r = [&](double h) { return (H(r + h, theta) - H(r - h, theta)) / (2.0 * h); };
    auto d_th = [&](double h) { return (H(r, theta + h) - H(r, theta - h)) / (2.0 * h); };
    const cplx hr = (4.0 * d_r(step / 2) - d_r(step)) / 3.0;
    const cplx ht = (4.0 * d_th(step / 2) - d_th(step)) / 3.0;
    const cplx I{0.0, 1.0};
    return {std::polar(0.5, -theta) * (hr - I / r * ht), std::polar(0.5, theta) * (hr + I / r * ht)};
}

/// mu = f_zbar / f_z of the extension at r e^{i theta}, r > 1 + 2 step.
inline cplx beltrami_fd(const LoewnerChain& ch, double r, double theta, double step = 1e-4,
                        const ExtensionOptions& opt = {})
{
    if (!(r > 1.0 + 2.0 * step))
        throw domain_error("beltrami_fd: need r > 1 + 2 step");
    const auto w = wirtinger_fd(ch, r, theta, step, opt);
    if (w.dz == cplx{0.0})
        throw singular_error("beltrami_fd: f_z vanishes");
    return w.dzbar / w.dz;
}

/// mu(r e^{i theta}) = e^{2 i theta} (p - 1)/(p + 1), p = p(e^{i theta}, log r).
inline cplx beltrami_closed(const LoewnerChain& ch, double r, double theta, const ExtensionOptions& opt = {})
{
    detail::check_rho(opt.rho);
    if (!(r >= 1.0))
        throw domain_error("beltrami_closed: need r >= 1");
    if (opt.rho == 1.0 && !ch.boundary_evaluable())
        throw boundary_singularity("boundary values of " + ch.describe() + " have no closed form");
    const cplx p = ch.p(std::polar(opt.rho, theta), std::log(r), detail::extension_domain(opt.rho));
    if (!std::isfinite(std::abs(p)))
        throw boundary_singularity("p is not finite at theta = " + format_double(theta));
    if (std::abs(p + 1.0) < 1e-300)
        throw singular_error("beltrami_closed: p = -1, the extension degenerates");
    return std::polar(1.0, 2.0 * theta) * (p - 1.0) / (p + 1.0);
}

struct BeltramiSample {
    double r;
    double theta;
    cplx value; // extension value at r e^{i theta}
    cplx mu_closed;
    std::optional<cplx> mu_fd;
    double modulus;
};

struct ExcludedRay {
    double r;
    double theta;
};

struct DilatationOptions {
    std::vector<double> radii{1.01, 1.1, 1.5, 2.0, 5.0, 20.0};
    std::size_t angles = 720;
    double exclusion = 1e-3;
    double fd_step = 1e-4;
    double rho = 1.0;
};

struct DilatationReport {
    std::string chain;
    DilatationOptions options;
    double sup_modulus = 0.0;
    std::optional<BeltramiSample> worst;
    double fd_discrepancy = std::numeric_limits<double>::quiet_NaN();
    std::vector<BeltramiSample> samples;
    std::vector<ExcludedRay> excluded;

    KeyValueDocument to_document() const
    {
        KeyValueDocument doc;
        doc.section("dilatation");
        doc.add("chain", chain);
        doc.add_list("radii", options.radii);
        doc.add("angles", options.angles);
        doc.add("rho", options.rho);
        doc.add("exclusion", options.exclusion);
        doc.add("samples", samples.size());
        doc.add("sup_modulus", sup_modulus);
        if (worst) {
            doc.add("worst.r", worst->r);
            doc.add("worst.theta", worst->theta);
            doc.add("worst.mu_closed", worst->mu_closed);
            if (worst->mu_fd)
                doc.add("worst.mu_fd", *worst->mu_fd);
        }
        doc.add("fd_discrepancy", fd_discrepancy);
        doc.add("excluded_rays", excluded.size());
        for (std::size_t i = 0; i < excluded.size(); ++i)
            doc.add("excluded." + std::to_string(i),
                    "r=" + format_double(excluded[i].r) + " theta=" + format_double(excluded[i].theta));
        return doc;
    }
};

namespace detail {

inline double angular_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi)); }

} // namespace detail

/// Closed-form |mu| over radii x angles (theta_j = 2 pi j / angles), with the
/// finite-difference estimate taken at the worst sample as a cross-check.
/// With rho = 1, samples within `exclusion` of a pole direction are skipped.
inline DilatationReport dilatation_report(const LoewnerChain& ch, const DilatationOptions& opt = {})
{
    detail::check_rho(opt.rho);
    if (opt.radii.empty() || opt.angles == 0)
        throw usage_error("dilatation_report: need radii and angles");
    for (double r : opt.radii)
        if (!(r > 1.0) || !std::isfinite(r))
            throw usage_error("dilatation_report: radii must be finite and > 1");

    DilatationReport rep;
    rep.chain = ch.describe();
    rep.options = opt;
    const ExtensionOptions ext{opt.rho};
    for (double r : opt.radii) {
        const double t = std::log(r);
        const auto poles = opt.rho < 1.0 ? std::vector<double>{} : ch.singular_angles(t);
        for (std::size_t j = 0; j < opt.angles; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(opt.angles);
            bool skip = false;
            for (double a : poles)
                skip = skip || detail::angular_distance(theta, a) < opt.exclusion;
            if (skip) {
                rep.excluded.push_back({r, theta});
                continue;
            }
            BeltramiSample s{r, theta, becker_extend(ch, std::polar(r, theta), ext), beltrami_closed(ch, r, theta, ext),
                             std::nullopt, 0.0};
            s.modulus = std::abs(s.mu_closed);
            if (!rep.worst || s.modulus > rep.sup_modulus) {
                rep.sup_modulus = s.modulus;
                rep.worst = s;
            }
            rep.samples.push_back(s);
        }
    }
    if (rep.worst && rep.worst->r > 1.0 + 2.0 * opt.fd_step) {
        try {
            rep.worst->mu_fd = beltrami_fd(ch, rep.worst->r, rep.worst->theta, opt.fd_step, ext);
            rep.fd_discrepancy = std::abs(*rep.worst->mu_fd - rep.worst->mu_closed);
        } catch (const error&) {
        }
    }
    return rep;
}

/// r,theta,re_h,im_h,re_mu,im_mu,abs_mu rows, one per sample.
inline std::string samples_csv(const DilatationReport& rep)
{
    std::string out = "r,theta,re_h,im_h,re_mu,im_mu,abs_mu\r\n";
    for (const auto& s : rep.samples) {
        out += format_double(s.r) + ',' + format_double(s.theta) + ',' + format_double(s.value.real()) + ',' +
               format_double(s.value.imag()) + ',' + format_double(s.mu_closed.real()) + ',' +
               format_double(s.mu_closed.imag()) + ',' + format_double(s.modulus) + "\r\n";
    }
    return out;
}

} // namespace loewner
