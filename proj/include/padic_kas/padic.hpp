#pragma once

#include "padic_kas/error.hpp"
#include "padic_kas/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padic_kas {

using digit_t = std::uint32_t;

inline bool is_prime(std::uint64_t p) noexcept {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(std::uint64_t p) {
    if (!is_prime(p)) raise(errc::non_prime_modulus, std::to_string(p) + " is not prime");
}

/// p^e, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t p, std::size_t e) noexcept {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p) return std::nullopt;
        r *= p;
    }
    return r;
}

inline std::uint64_t pow_or_throw(std::uint64_t p, std::size_t e) {
    auto r = checked_pow(p, e);
    if (!r) raise(errc::size_limit_exceeded, std::to_string(p) + "^" + std::to_string(e) + " overflows 64 bits");
    return *r;
}

/// An element of Z_p known to K base-p digits, i.e. a residue mod p^K.
/// Digits are little-endian: index 0 is the units digit.
class TruncatedPadicInt {
public:
    TruncatedPadicInt(std::uint32_t p, std::size_t precision, std::vector<digit_t> digits)
        : p_(p), digits_(std::move(digits)) {
        require_prime(p);
        if (precision == 0) raise(errc::precision_mismatch, "precision must be at least 1");
        if (digits_.size() > precision)
            raise(errc::precision_mismatch, std::to_string(digits_.size()) + " digits exceed precision " +
                                                std::to_string(precision));
        for (std::size_t i = 0; i < digits_.size(); ++i)
            if (digits_[i] >= p)
                raise(errc::digit_out_of_range,
                      "digit " + std::to_string(digits_[i]) + " at index " + std::to_string(i) + " not in [0, " +
                          std::to_string(p - 1) + "]");
        digits_.resize(precision, 0);
    }

    static TruncatedPadicInt zero(std::uint32_t p, std::size_t precision) { return {p, precision, {}}; }

    /// The residue of `value` mod p^K.
    static TruncatedPadicInt from_uint(std::uint32_t p, std::size_t precision, std::uint64_t value) {
        require_prime(p);
        std::vector<digit_t> d(precision, 0);
        for (std::size_t i = 0; i < precision && value != 0; ++i) {
            d[i] = static_cast<digit_t>(value % p);
            value /= p;
        }
        return {p, precision, std::move(d)};
    }

    std::uint32_t p() const noexcept { return p_; }
    std::size_t precision() const noexcept { return digits_.size(); }
    std::span<const digit_t> digits() const noexcept { return digits_; }
    digit_t digit(std::size_t i) const noexcept { return digits_[i]; }

    bool is_zero() const noexcept {
        return std::all_of(digits_.begin(), digits_.end(), [](digit_t d) { return d == 0; });
    }

    /// Index of the first nonzero digit; equals precision() for zero.
    std::size_t valuation() const noexcept {
        auto it = std::find_if(digits_.begin(), digits_.end(), [](digit_t d) { return d != 0; });
        return static_cast<std::size_t>(it - digits_.begin());
    }

    /// Number of leading (least significant) digits shared with `other`.
    std::size_t common_prefix(const TruncatedPadicInt& other) const noexcept {
        std::size_t n = std::min(precision(), other.precision());
        std::size_t i = 0;
        while (i < n && digits_[i] == other.digits_[i]) ++i;
        return i;
    }

    /// The representative in [0, p^K).
    std::uint64_t to_uint() const {
        std::uint64_t v = 0;
        for (std::size_t i = digits_.size(); i-- > 0;) {
            if (v > (UINT64_MAX - digits_[i]) / p_)
                raise(errc::size_limit_exceeded, "value does not fit in 64 bits");
            v = v * p_ + digits_[i];
        }
        return v;
    }

    BigInt to_bigint() const {
        BigInt v = 0;
        for (std::size_t i = digits_.size(); i-- > 0;) v = v * p_ + digits_[i];
        return v;
    }

    /// The same residue read at a lower precision (drops high digits).
    TruncatedPadicInt truncated(std::size_t precision) const {
        return {p_, precision, std::vector<digit_t>(digits_.begin(), digits_.begin() + std::min(precision, digits_.size()))};
    }

    /// Zero-extends to a higher precision.
    TruncatedPadicInt extended(std::size_t precision) const { return {p_, precision, digits_}; }

    friend bool operator==(const TruncatedPadicInt&, const TruncatedPadicInt&) = default;

private:
    std::uint32_t p_;
    std::vector<digit_t> digits_;
};

/// Checked constructor taking possibly-invalid digits.
inline TruncatedPadicInt make_padic(std::span<const std::int64_t> digits, std::uint32_t p, std::size_t precision) {
    require_prime(p);
    if (digits.size() > precision)
        raise(errc::precision_mismatch,
              std::to_string(digits.size()) + " digits exceed precision " + std::to_string(precision));
    std::vector<digit_t> d;
    d.reserve(precision);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= static_cast<std::int64_t>(p))
            raise(errc::digit_out_of_range, "digit " + std::to_string(digits[i]) + " at index " + std::to_string(i) +
                                                " not in [0, " + std::to_string(p - 1) + "]");
        d.push_back(static_cast<digit_t>(digits[i]));
    }
    return {p, precision, std::move(d)};
}

inline TruncatedPadicInt make_padic(std::initializer_list<std::int64_t> digits, std::uint32_t p, std::size_t precision) {
    return make_padic(std::span<const std::int64_t>(digits.begin(), digits.size()), p, precision);
}

namespace detail {

inline void require_same_ring(const TruncatedPadicInt& x, const TruncatedPadicInt& y) {
    if (x.p() != y.p() || x.precision() != y.precision())
        raise(errc::precision_mismatch, "operands differ in p or precision (" + std::to_string(x.p()) + ":" +
                                            std::to_string(x.precision()) + " vs " + std::to_string(y.p()) + ":" +
                                            std::to_string(y.precision()) + ")");
}

}  // namespace detail

/// Addition mod p^K, digit by digit with carry.
inline TruncatedPadicInt padic_add(const TruncatedPadicInt& x, const TruncatedPadicInt& y) {
    detail::require_same_ring(x, y);
    const auto p = x.p();
    std::vector<digit_t> out(x.precision());
    digit_t carry = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        digit_t s = x.digit(i) + y.digit(i) + carry;
        carry = s >= p ? 1 : 0;
        out[i] = s - carry * p;
    }
    return {p, x.precision(), std::move(out)};
}

/// Subtraction mod p^K with borrow.
inline TruncatedPadicInt padic_sub(const TruncatedPadicInt& x, const TruncatedPadicInt& y) {
    detail::require_same_ring(x, y);
    const auto p = x.p();
    std::vector<digit_t> out(x.precision());
    digit_t borrow = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        digit_t sub = y.digit(i) + borrow;
        if (x.digit(i) >= sub) {
            out[i] = x.digit(i) - sub;
            borrow = 0;
        } else {
            out[i] = x.digit(i) + p - sub;
            borrow = 1;
        }
    }
    return {p, x.precision(), std::move(out)};
}

/// |x|_p = p^(-v) with v the index of the first nonzero digit. A value whose
/// K known digits are all zero reports 0.
inline Rational padic_norm(const TruncatedPadicInt& x) {
    if (x.is_zero()) return Rational(0);
    return Rational(BigInt(1), big_pow(x.p(), x.valuation()));
}

/// A point of Z_p^n; all coordinates share p and precision.
class PadicPoint {
public:
    explicit PadicPoint(std::vector<TruncatedPadicInt> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) raise(errc::dimension_mismatch, "a point needs at least one coordinate");
        for (const auto& c : coords_) detail::require_same_ring(coords_.front(), c);
    }

    std::size_t dimension() const noexcept { return coords_.size(); }
    std::uint32_t p() const noexcept { return coords_.front().p(); }
    std::size_t precision() const noexcept { return coords_.front().precision(); }
    std::span<const TruncatedPadicInt> coords() const noexcept { return coords_; }
    const TruncatedPadicInt& operator[](std::size_t i) const noexcept { return coords_[i]; }

    friend bool operator==(const PadicPoint&, const PadicPoint&) = default;

private:
    std::vector<TruncatedPadicInt> coords_;
};

inline void require_compatible(const PadicPoint& x, const PadicPoint& y) {
    if (x.dimension() != y.dimension())
        raise(errc::dimension_mismatch,
              "dimensions " + std::to_string(x.dimension()) + " and " + std::to_string(y.dimension()) + " differ");
    if (x.p() != y.p() || x.precision() != y.precision())
        raise(errc::precision_mismatch, "points differ in p or precision");
}

/// Ultrametric max-norm distance on Z_p^n.
inline Rational point_distance(const PadicPoint& x, const PadicPoint& y) {
    require_compatible(x, y);
    Rational d = 0;
    for (std::size_t i = 0; i < x.dimension(); ++i) d = std::max(d, padic_norm(padic_sub(x[i], y[i])));
    return d;
}

/// An element of Q_p: p^valuation * unit, where the unit has nonzero units
/// digit. Zero keeps the number of digits known to vanish.
class PadicScalar {
public:
    /// p^shift * x. The valuation of x is folded into the stored valuation.
    static PadicScalar from_int(const TruncatedPadicInt& x, int shift = 0) {
        if (x.is_zero()) return PadicScalar(x, 0, true);
        auto v = x.valuation();
        std::vector<digit_t> unit(x.digits().begin() + static_cast<std::ptrdiff_t>(v), x.digits().end());
        const auto length = unit.size();
        return PadicScalar(TruncatedPadicInt(x.p(), length, std::move(unit)), static_cast<int>(v) + shift, false);
    }

    static PadicScalar zero(std::uint32_t p, std::size_t precision = 1) {
        return from_int(TruncatedPadicInt::zero(p, precision));
    }

    std::uint32_t p() const noexcept { return unit_.p(); }
    bool is_zero() const noexcept { return zero_; }
    int valuation() const noexcept { return valuation_; }
    const TruncatedPadicInt& unit() const noexcept { return unit_; }

    Rational norm() const {
        if (zero_) return Rational(0);
        if (valuation_ >= 0) return Rational(BigInt(1), big_pow(p(), static_cast<std::size_t>(valuation_)));
        return Rational(big_pow(p(), static_cast<std::size_t>(-valuation_)));
    }

    friend bool operator==(const PadicScalar&, const PadicScalar&) = default;

private:
    PadicScalar(TruncatedPadicInt unit, int valuation, bool zero)
        : unit_(std::move(unit)), valuation_(valuation), zero_(zero) {}

    TruncatedPadicInt unit_;
    int valuation_;
    bool zero_;
};

// ---------------------------------------------------------------------------
// Textual forms. `p:K:d0,d1,...` little-endian for p-adic integers.

namespace detail {

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        raise(errc::parse_error, "bad " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

inline std::int64_t parse_int(std::string_view s, std::string_view what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        raise(errc::parse_error, "bad " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

struct DigitText {
    std::uint64_t radix;
    std::uint64_t count;
    std::vector<std::int64_t> digits;
};

/// Splits `r:L:d0,d1,...` without interpreting the radix.
inline DigitText split_digit_text(std::string_view text) {
    auto c1 = text.find(':');
    auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos)
        raise(errc::parse_error, "expected 'radix:count:digits', got '" + std::string(text) + "'");
    DigitText out{parse_uint(text.substr(0, c1), "radix"), parse_uint(text.substr(c1 + 1, c2 - c1 - 1), "digit count"),
                  {}};
    auto rest = text.substr(c2 + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        out.digits.push_back(parse_int(rest.substr(0, comma), "digit"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
        if (rest.empty()) raise(errc::parse_error, "trailing comma in '" + std::string(text) + "'");
    }
    if (out.digits.size() > out.count)
        raise(errc::parse_error, std::to_string(out.digits.size()) + " digits given for count " +
                                     std::to_string(out.count) + " in '" + std::string(text) + "'");
    return out;
}

inline std::string join_digits(std::span<const digit_t> digits) {
    std::string s;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(digits[i]);
    }
    return s;
}

}  // namespace detail

inline std::string to_string(const TruncatedPadicInt& x) {
    return std::to_string(x.p()) + ":" + std::to_string(x.precision()) + ":" + detail::join_digits(x.digits());
}

/// Parses `p:K:d0,...`; fewer than K digits are zero-padded.
inline TruncatedPadicInt parse_padic(std::string_view text) {
    auto t = detail::split_digit_text(text);
    if (t.radix > UINT32_MAX) raise(errc::non_prime_modulus, std::to_string(t.radix) + " is not a supported prime");
    return make_padic(t.digits, static_cast<std::uint32_t>(t.radix), t.count);
}

/// Scalars with nonnegative valuation print as the p-adic integer they equal
/// (valuation zeros followed by the unit digits); negative valuations append
/// `@v`, meaning the digits are scaled by p^v.
inline std::string to_string(const PadicScalar& s) {
    if (s.is_zero()) return to_string(s.unit());
    if (s.valuation() < 0) return to_string(s.unit()) + "@" + std::to_string(s.valuation());
    auto v = static_cast<std::size_t>(s.valuation());
    std::vector<digit_t> d(v, 0);
    d.insert(d.end(), s.unit().digits().begin(), s.unit().digits().end());
    const auto length = d.size();
    return to_string(TruncatedPadicInt(s.p(), length, std::move(d)));
}

inline PadicScalar parse_scalar(std::string_view text) {
    auto at = text.find('@');
    if (at == std::string_view::npos) return PadicScalar::from_int(parse_padic(text));
    auto shift = detail::parse_int(text.substr(at + 1), "valuation shift");
    return PadicScalar::from_int(parse_padic(text.substr(0, at)), static_cast<int>(shift));
}

}  // namespace padic_kas
