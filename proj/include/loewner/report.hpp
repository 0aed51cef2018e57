#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/series.hpp"

namespace loewner {

/// Shortest round-trip-safe decimal text for a double; "inf"/"nan" spelled out.
inline std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// a+bi form, e.g. "0.5-0.25i".
inline std::string format_complex(cplx z)
{
    std::string im = format_double(z.imag());
    if (im.front() != '-')
        im.insert(im.begin(), '+');
    return format_double(z.real()) + im + "i";
}

/// Flat `key = value` document with insertion-ordered fields.
class KeyValueDocument {
public:
    void add(std::string_view key, std::string_view value)
    {
        lines_.push_back(std::string(key) + " = " + std::string(value));
    }
    void add(std::string_view key, const char* value) { add(key, std::string_view(value)); }
    void add(std::string_view key, const std::string& value) { add(key, std::string_view(value)); }
    void add(std::string_view key, double value) { add(key, format_double(value)); }
    void add(std::string_view key, cplx value) { add(key, format_complex(value)); }
    void add(std::string_view key, bool value) { add(key, value ? "true" : "false"); }
    void add(std::string_view key, std::size_t value) { add(key, std::to_string(value)); }
    void add(std::string_view key, int value) { add(key, std::to_string(value)); }

    void add_list(std::string_view key, const std::vector<double>& values)
    {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i)
                s += ", ";
            s += format_double(values[i]);
        }
        add(key, s);
    }

    void section(std::string_view name) { lines_.push_back("[" + std::string(name) + "]"); }

    std::string str() const
    {
        std::string out;
        for (const auto& l : lines_) {
            out += l;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::string> lines_;
};

} // namespace loewner
