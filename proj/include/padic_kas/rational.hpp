#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace padic_kas {

// Expression templates are off: `auto x = a * b` must hold a value, not a
// lazy expression referring to temporaries.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline BigInt big_pow(std::uint64_t base, std::size_t exp) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

/// `a/b` in lowest terms; integers print without a denominator.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Exact conversion of a finite double into a rational.
inline Rational to_rational(double v) { return Rational(v); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

}  // namespace padic_kas
