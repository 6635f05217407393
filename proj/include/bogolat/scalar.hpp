#ifndef BOGOLAT_SCALAR_HPP_
#define BOGOLAT_SCALAR_HPP_

#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace bogolat {

/// Exact rational arithmetic (GMP backed, expression templates disabled so
/// that `auto` and template deduction behave like ordinary value types).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class Backend { ExactRational, Float64 };

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr Backend backend = Backend::ExactRational;
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational abs(const Rational& x) { return boost::multiprecision::abs(x); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static Rational from_double(double x) { return Rational(x); }
};

template <class F>
struct FloatTraits {
    static constexpr bool exact = false;
    static constexpr Backend backend = Backend::Float64;
    static bool is_zero(F x) { return x == F(0); }
    static F abs(F x) { return std::fabs(x); }
    static double to_double(F x) { return static_cast<double>(x); }
    static F from_double(double x) { return static_cast<F>(x); }
};

template <>
struct ScalarTraits<double> : FloatTraits<double> {};

/// Extended precision is supported by the time integrators only.
template <>
struct ScalarTraits<long double> : FloatTraits<long double> {};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
double to_double(const T& x) {
    return ScalarTraits<T>::to_double(x);
}

template <class T>
T scalar_abs(const T& x) {
    return ScalarTraits<T>::abs(x);
}

/// Parses "num/den", integers, and decimal notation with an optional exponent
/// ("-0.125", "3e-2") into an exact rational. Throws bogolat::Error on
/// malformed input.
Rational parse_rational(std::string_view text);

/// "num/den" (or "num" when the denominator is 1).
std::string to_string(const Rational& x);

/// Shortest round-trip decimal representation.
std::string to_string(double x);

}  // namespace bogolat

#endif  // BOGOLAT_SCALAR_HPP_
