#ifndef PARASUSY_RATIONAL_HPP
#define PARASUSY_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parasusy {

/// Arbitrary-precision exact rational. Every closed-form quantity in the
/// library (structure functions, coefficient squares, energies) lives here.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline int sign_of(const Rational& r) { return r.sign(); }

/// "num/den" with den >= 1; integers are still written with "/1".
inline std::string to_fraction_string(const Rational& r)
{
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Compact form for diagnostics: "5" or "-1/2".
inline std::string to_display_string(const Rational& r)
{
    if (denominator_of(r) == 1) return numerator_of(r).str();
    return to_fraction_string(r);
}

/// Parses "7", "-3", "1/2", "-5/4" and finite decimals such as "0.25".
inline Rational parse_rational(std::string_view text)
{
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    };
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) return fail();

    auto parse_decimal = [&](std::string_view part) -> Rational {
        std::size_t i = 0;
        bool negative = false;
        if (i < part.size() && (part[i] == '+' || part[i] == '-')) {
            negative = part[i] == '-';
            ++i;
        }
        Integer whole = 0;
        Integer scale = 1;
        bool digits = false;
        bool seen_point = false;
        for (; i < part.size(); ++i) {
            const char c = part[i];
            if (c >= '0' && c <= '9') {
                whole = whole * 10 + (c - '0');
                if (seen_point) scale *= 10;
                digits = true;
            } else if (c == '.' && !seen_point) {
                seen_point = true;
            } else {
                return fail();
            }
        }
        if (!digits) return fail();
        Rational value(whole, scale);
        return negative ? Rational(-value) : value;
    };

    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    const Rational num = parse_decimal(std::string_view(s).substr(0, slash));
    const Rational den = parse_decimal(std::string_view(s).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

/// Floor modulus into {0, ..., m-1}.
constexpr std::int64_t mod_floor(std::int64_t value, std::int64_t m)
{
    const std::int64_t r = value % m;
    return r < 0 ? r + m : r;
}

} // namespace parasusy

#endif // PARASUSY_RATIONAL_HPP
