#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/chains.hpp"
#include "loewner/criteria.hpp"
#include "loewner/errors.hpp"
#include "loewner/functions.hpp"
#include "loewner/grid.hpp"
#include "loewner/series.hpp"

namespace loewner {

/// Raised for malformed spec text; the CLI maps it to exit status 2.
class parse_error : public error {
public:
    using error::error;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view s)
{
    const std::string buf(trim(s));
    char* stop = nullptr;
    const double v = std::strtod(buf.c_str(), &stop);
    if (buf.empty() || *stop != '\0' || !std::isfinite(v))
        throw parse_error("not a number: '" + buf + "'");
    return v;
}

} // namespace detail

/// "1.5", "-2i", "0.5+0.25i", "1e-3-2i", "i".
inline cplx parse_complex(std::string_view text)
{
    const std::string_view s = detail::trim(text);
    if (s.empty())
        throw parse_error("empty complex number");
    if (s.back() != 'i')
        return detail::parse_real(s);
    const std::string_view body = s.substr(0, s.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    auto imag_part = [](std::string_view v) {
        if (v.empty() || v == "+")
            return 1.0;
        if (v == "-")
            return -1.0;
        return detail::parse_real(v);
    };
    if (split == std::string_view::npos)
        return {0.0, imag_part(body)};
    return {detail::parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

inline std::vector<cplx> parse_complex_list(std::string_view text)
{
    std::vector<cplx> out;
    std::size_t a = 0;
    while (a <= text.size()) {
        const std::size_t b = std::min(text.find(',', a), text.size());
        out.push_back(parse_complex(text.substr(a, b - a)));
        a = b + 1;
    }
    return out;
}

inline std::vector<double> parse_real_list(std::string_view text)
{
    std::vector<double> out;
    for (cplx c : parse_complex_list(text)) {
        if (c.imag() != 0.0)
            throw parse_error("expected real values");
        out.push_back(c.real());
    }
    return out;
}

/// `key = value` lines; `#` starts a comment. Later keys override earlier ones.
using SpecMap = std::map<std::string, std::string, std::less<>>;

inline SpecMap parse_spec_text(std::string_view text)
{
    SpecMap out;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw parse_error("line " + std::to_string(line_no) + ": expected key = value");
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw parse_error("line " + std::to_string(line_no) + ": empty key");
        out[std::string(key)] = std::string(value);
    }
    return out;
}

/// identity, koebe, half-plane, spiral-koebe:<alpha>, polynomial, series.
/// The last two read their coefficients from `coeffs`.
inline AnalyticFunction parse_function(std::string_view token, const std::vector<cplx>& coeffs = {})
{
    const auto colon = token.find(':');
    const std::string_view name = detail::trim(token.substr(0, colon));
    const std::optional<std::string_view> arg =
        colon == std::string_view::npos ? std::nullopt : std::optional{token.substr(colon + 1)};
    auto no_arg = [&] {
        if (arg)
            throw parse_error("function '" + std::string(name) + "' takes no argument");
    };
    if (name == "identity") {
        no_arg();
        return AnalyticFunction::identity();
    }
    if (name == "koebe") {
        no_arg();
        return AnalyticFunction::koebe();
    }
    if (name == "half-plane") {
        no_arg();
        return AnalyticFunction::half_plane();
    }
    if (name == "spiral-koebe") {
        if (!arg)
            throw parse_error("spiral-koebe needs an angle, e.g. spiral-koebe:0.5");
        return AnalyticFunction::spiral_koebe(detail::parse_real(*arg));
    }
    if (name == "polynomial" || name == "series") {
        no_arg();
        if (coeffs.empty())
            throw parse_error(std::string(name) + " needs coeffs");
        PowerSeries s(coeffs);
        return name == "polynomial" ? AnalyticFunction::polynomial(s) : AnalyticFunction::series(s);
    }
    throw parse_error("unknown function '" + std::string(name) + "'");
}

/// Everything a CLI run can read from a spec file or flags.
struct RunSpec {
    std::optional<CriterionKind> criterion;
    std::optional<std::string> chain;
    std::optional<std::string> f;
    std::optional<std::string> g;
    std::vector<cplx> coeffs;
    std::vector<cplx> h_coeffs;
    cplx alpha{0.0};
    double beta = 0.0;
    std::optional<cplx> c;
    GridSpec grid;
    std::vector<double> times{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
};

inline RunSpec run_spec_from_map(const SpecMap& m)
{
    RunSpec rs;
    for (const auto& [key, value] : m) {
        if (key == "kind") {
            rs.criterion = criterion_from_string(value);
            if (!rs.criterion)
                throw parse_error("unknown criterion kind '" + value + "'");
        } else if (key == "chain") {
            rs.chain = value;
        } else if (key == "f" || key == "fn") {
            rs.f = value;
        } else if (key == "g") {
            rs.g = value;
        } else if (key == "coeffs") {
            rs.coeffs = parse_complex_list(value);
        } else if (key == "h_coeffs") {
            rs.h_coeffs = parse_complex_list(value);
        } else if (key == "alpha") {
            rs.alpha = parse_complex(value);
        } else if (key == "beta") {
            rs.beta = detail::parse_real(value);
        } else if (key == "c") {
            rs.c = parse_complex(value);
        } else if (key == "radii") {
            rs.grid.radii = parse_real_list(value);
        } else if (key == "r_max") {
            rs.grid = GridSpec::up_to(detail::parse_real(value), rs.grid.angles_per_circle);
        } else if (key == "angles") {
            rs.grid.angles_per_circle = static_cast<std::size_t>(detail::parse_real(value));
        } else if (key == "refinement") {
            rs.grid.refinement = static_cast<std::size_t>(detail::parse_real(value));
        } else if (key == "times") {
            rs.times = parse_real_list(value);
        } else {
            throw parse_error("unknown key '" + key + "'");
        }
    }
    return rs;
}

inline double real_alpha(const RunSpec& rs)
{
    if (rs.alpha.imag() != 0.0)
        throw parse_error("alpha must be real here");
    return rs.alpha.real();
}

inline AnalyticFunction subject_f(const RunSpec& rs)
{
    if (!rs.f)
        throw parse_error("missing f");
    return parse_function(*rs.f, rs.coeffs);
}

inline PowerSeries h_series(const RunSpec& rs)
{
    return rs.h_coeffs.empty() ? PowerSeries::constant(1.0, 0) : PowerSeries(rs.h_coeffs);
}

/// Chain named by `chain`: convex-combination, spirallike, exponential,
/// sheil-small, bazilevic-integral.
inline LoewnerChain chain_from_spec(const RunSpec& rs)
{
    if (!rs.chain)
        throw parse_error("missing chain");
    const std::string& n = *rs.chain;
    namespace cv = chain_variants;
    if (n == "convex-combination")
        return make_chain(cv::ConvexCombination{subject_f(rs), rs.alpha});
    if (n == "spirallike")
        return make_chain(cv::SpirallikeStandard{subject_f(rs), real_alpha(rs)});
    if (n == "exponential")
        return make_chain(cv::Exponential{subject_f(rs), rs.c.value_or(std::polar(1.0, -real_alpha(rs)))});
    if (n == "sheil-small")
        return make_chain(cv::SheilSmall{subject_f(rs), real_alpha(rs), rs.beta});
    if (n == "bazilevic-integral") {
        if (!rs.g)
            throw parse_error("bazilevic-integral needs g");
        return make_chain(cv::BazilevicIntegral{parse_function(*rs.g, rs.coeffs), h_series(rs), real_alpha(rs), rs.beta});
    }
    throw parse_error("unknown chain '" + n + "'");
}

/// The chain whose Herglotz field realizes a disk criterion's hypothesis.
inline std::optional<LoewnerChain> chain_for_criterion(CriterionKind kind, const RunSpec& rs)
{
    namespace cv = chain_variants;
    const double a = real_alpha(rs);
    switch (kind) {
    case CriterionKind::StarlikeTilted: return make_chain(cv::SpirallikeStandard{subject_f(rs), a});
    case CriterionKind::SpiralUk: return make_chain(cv::Exponential{subject_f(rs), std::polar(1.0, -a)});
    case CriterionKind::Bazilevic1: return make_chain(cv::SheilSmall{subject_f(rs), a, rs.beta});
    case CriterionKind::Bazilevic2:
        if (!rs.g)
            throw parse_error("bazilevic2 needs g");
        return make_chain(cv::BazilevicIntegral{parse_function(*rs.g, rs.coeffs), h_series(rs), a, rs.beta});
    default: return std::nullopt;
    }
}

inline CriterionInputs criterion_inputs(CriterionKind kind, const RunSpec& rs)
{
    CriterionInputs in;
    if (kind == CriterionKind::Bazilevic2) {
        if (!rs.g)
            throw parse_error("bazilevic2 needs g");
        in.g = parse_function(*rs.g, rs.coeffs);
        in.h = h_series(rs);
    } else {
        in.f = subject_f(rs);
    }
    return in;
}

} // namespace loewner
