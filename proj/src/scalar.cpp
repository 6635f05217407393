#include "bogolat/scalar.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "bogolat/error.hpp"

namespace bogolat {
namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void malformed(std::string_view text) {
    fail(ErrorKind::InvalidArgument, "malformed rational literal '" + std::string(text) + "'");
}

Rational parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) malformed(whole);
    Rational r{std::string(s)};
    return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) malformed(text);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const Rational num = parse_integer(text.substr(0, slash), text);
        const std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) malformed(text);
        const Rational den(std::string{den_text});
        if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
        return num / den;
    }

    std::string_view s = text;
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) malformed(text);
        if (exponent > 4000 || exponent < -4000) malformed(text);
        s = s.substr(0, e);
    }

    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = s.substr(0, dot);
        const std::string_view frac_part = s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) malformed(text);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            malformed(text);
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) malformed(text);
        digits = std::string(s);
    }

    Rational value(digits);
    Rational ten_power(1);
    for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) ten_power *= 10;
    value = exponent < 0 ? value / ten_power : value * ten_power;
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& x) {
    return x.str();
}

std::string to_string(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace bogolat
