#include "mrf/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace mrf {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        BigInt d{std::string(den)};
        if (d == 0) return std::nullopt;
        Rat r{BigInt{std::string(num)}, d};
        return negative ? Rat(-r) : r;
    }

    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (!whole.empty() && !all_digits(whole)) return std::nullopt;
        if (!frac.empty() && !all_digits(frac)) return std::nullopt;
        BigInt scaled = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
        BigInt den = 1;
        for (char c : frac) {
            scaled = scaled * 10 + (c - '0');
            den *= 10;
        }
        Rat r(scaled, den);
        return negative ? Rat(-r) : r;
    }

    if (!all_digits(text)) return std::nullopt;
    Rat r{BigInt{std::string(text)}};
    return negative ? Rat(-r) : r;
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    BigInt m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rat r(m);
    if (exp > 0) {
        r *= Rat(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rat(BigInt(1) << -exp);
    }
    return r;
}

double rat_to_double(const Rat& r) {
    return r.convert_to<double>();
}

std::string rat_to_string(const Rat& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace mrf
