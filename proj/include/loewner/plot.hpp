#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "loewner/chains.hpp"
#include "loewner/extension.hpp"
#include "loewner/report.hpp"

namespace loewner {

namespace detail {

inline std::string fixed(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

inline std::string svg_header(double w, double h)
{
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           fixed(w) + "\" height=\"" + fixed(h) + "\" viewBox=\"0 0 " + fixed(w) + " " + fixed(h) + "\">\n";
}

// viridis, five stops
inline std::string colormap(double v)
{
    static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84},
                                                                 {59, 82, 139},
                                                                 {33, 145, 140},
                                                                 {94, 201, 98},
                                                                 {253, 231, 37}}};
    v = std::clamp(std::isfinite(v) ? v : 1.0, 0.0, 1.0) * 4.0;
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(v), 3);
    const double f = v - static_cast<double>(i);
    char buf[8];
    int c[3];
    for (int k = 0; k < 3; ++k)
        c[k] = static_cast<int>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

} // namespace detail

struct CurveSet {
    double r;
    std::vector<double> times;
    std::vector<std::vector<cplx>> curves; // one per time; non-finite points break the path
    std::size_t angles;
};

/// theta -> f(r e^{i theta}, t) for each t.
inline CurveSet image_curves(const LoewnerChain& ch, double r, const std::vector<double>& times, std::size_t angles = 720)
{
    if (!(r > 0.0 && r < 1.0))
        throw usage_error("image_curves: r must lie in (0, 1)");
    CurveSet cs{r, times, {}, angles};
    for (double t : times) {
        std::vector<cplx> c(angles + 1);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = 0; j <= angles; ++j) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles);
            try {
                c[j] = ch.eval(std::polar(r, th), t).f;
            } catch (const error&) {
                c[j] = {nan, nan};
            }
        }
        cs.curves.push_back(std::move(c));
    }
    return cs;
}

inline std::string curves_csv(const CurveSet& cs)
{
    std::string out = "t,theta,re_f,im_f\r\n";
    for (std::size_t i = 0; i < cs.times.size(); ++i)
        for (std::size_t j = 0; j < cs.curves[i].size(); ++j) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(cs.angles);
            out += format_double(cs.times[i]) + ',' + format_double(th) + ',' +
                   format_double(cs.curves[i][j].real()) + ',' + format_double(cs.curves[i][j].imag()) + "\r\n";
        }
    return out;
}

/// Nested image curves, one polyline per time, equal axis scaling.
inline std::string curves_svg(const CurveSet& cs, double size = 600.0)
{
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const auto& c : cs.curves)
        for (cplx w : c)
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
                lo_x = std::min(lo_x, w.real());
                hi_x = std::max(hi_x, w.real());
                lo_y = std::min(lo_y, w.imag());
                hi_y = std::max(hi_y, w.imag());
            }
    if (!(hi_x >= lo_x)) {
        lo_x = lo_y = -1.0;
        hi_x = hi_y = 1.0;
    }
    const double pad = 20.0;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double scale = (size - 2.0 * pad) / span;
    auto X = [&](double x) { return pad + (x - lo_x) * scale; };
    auto Y = [&](double y) { return size - pad - (y - lo_y) * scale; };

    std::string s = detail::svg_header(size, size);
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < cs.curves.size(); ++i) {
        const double v = cs.curves.size() > 1 ? static_cast<double>(i) / static_cast<double>(cs.curves.size() - 1) : 0.0;
        std::string d;
        bool pen = false;
        for (cplx w : cs.curves[i]) {
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                pen = false;
                continue;
            }
            d += (pen ? " L" : (d.empty() ? "M" : " M")) + detail::fixed(X(w.real())) + "," + detail::fixed(Y(w.imag()));
            pen = true;
        }
        s += "<path data-t=\"" + format_double(cs.times[i]) + "\" fill=\"none\" stroke=\"" + detail::colormap(v) +
             "\" stroke-width=\"1.5\" d=\"" + d + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

struct HeatSample {
    double r;
    double theta;
    double modulus;
};

/// Parses the sample CSV written by samples_csv.
inline std::vector<HeatSample> parse_samples_csv(const std::string& text)
{
    std::vector<HeatSample> out;
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos)
        throw usage_error("sample csv: missing header");
    while (++pos < text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string line = text.substr(pos, end - pos);
        pos = end;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<double> v;
        std::size_t a = 0;
        while (a <= line.size()) {
            const std::size_t b = std::min(line.find(',', a), line.size());
            char* stop = nullptr;
            const std::string cell = line.substr(a, b - a);
            v.push_back(std::strtod(cell.c_str(), &stop));
            if (cell.empty() || *stop != '\0')
                throw usage_error("sample csv: bad number '" + cell + "'");
            a = b + 1;
        }
        if (v.size() != 7)
            throw usage_error("sample csv: expected 7 columns");
        out.push_back({v[0], v[1], v[6]});
    }
    return out;
}

/// |mu| over the exterior annulus as a (theta, log r) cell map on the fixed scale [0, 1].
inline std::string heatmap_svg(const std::vector<HeatSample>& samples, double width = 720.0, double height = 360.0)
{
    std::vector<double> radii;
    for (const auto& s : samples)
        radii.push_back(s.r);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<double> thetas;
    for (const auto& s : samples)
        thetas.push_back(s.theta);
    std::sort(thetas.begin(), thetas.end());
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
    const double dtheta = thetas.size() > 1 ? thetas[1] - thetas[0] : 2.0 * std::numbers::pi;

    const double band = radii.empty() ? height : height / static_cast<double>(radii.size());
    std::string s = detail::svg_header(width, height);
    for (const auto& p : samples) {
        const auto row = static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), p.r) - radii.begin());
        const double x = p.theta / (2.0 * std::numbers::pi) * width;
        const double w = dtheta / (2.0 * std::numbers::pi) * width;
        const double y = height - band * static_cast<double>(row + 1);
        s += "<rect x=\"" + detail::fixed(x) + "\" y=\"" + detail::fixed(y) + "\" width=\"" + detail::fixed(w) +
             "\" height=\"" + detail::fixed(band) + "\" fill=\"" + detail::colormap(p.modulus) + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace loewner
