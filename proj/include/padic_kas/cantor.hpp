#pragma once

#include "padic_kas/error.hpp"
#include "padic_kas/padic.hpp"
#include "padic_kas/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace padic_kas {

/// Base q = n(p-1)+1 used by the arity-n Cantor-like set C_p.
inline std::uint64_t cantor_base(std::uint32_t p, std::uint32_t n) noexcept {
    return static_cast<std::uint64_t>(n) * (p - 1) + 1;
}

/// An exact point of the Cantor-like set C_p inside [0,1], stored as base-q
/// digits with the most significant digit (coefficient of q^-1) first. Every
/// digit is n*c with 0 <= c <= p-1.
class CantorValue {
public:
    CantorValue(std::uint32_t p, std::uint32_t n, std::vector<digit_t> digits) : p_(p), n_(n), digits_(std::move(digits)) {
        require_prime(p);
        if (n == 0) raise(errc::arity_mismatch, "arity must be at least 1");
        const auto top = static_cast<std::uint64_t>(n) * (p - 1);
        for (std::size_t i = 0; i < digits_.size(); ++i)
            if (digits_[i] % n != 0 || digits_[i] > top)
                raise(errc::invalid_cantor_digit, "digit " + std::to_string(digits_[i]) + " at position " +
                                                      std::to_string(i) + " is not a multiple of " + std::to_string(n) +
                                                      " in [0, " + std::to_string(top) + "]");
    }

    static CantorValue zero(std::uint32_t p, std::uint32_t n, std::size_t length) {
        return {p, n, std::vector<digit_t>(length, 0)};
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t arity() const noexcept { return n_; }
    std::uint64_t base() const noexcept { return cantor_base(p_, n_); }
    std::size_t length() const noexcept { return digits_.size(); }
    std::span<const digit_t> digits() const noexcept { return digits_; }
    digit_t digit(std::size_t i) const noexcept { return digits_[i]; }

    std::size_t common_prefix(const CantorValue& other) const noexcept {
        std::size_t n = std::min(length(), other.length());
        std::size_t i = 0;
        while (i < n && digits_[i] == other.digits_[i]) ++i;
        return i;
    }

    friend bool operator==(const CantorValue&, const CantorValue&) = default;

private:
    std::uint32_t p_;
    std::uint32_t n_;
    std::vector<digit_t> digits_;
};

/// varphi: x -> sum n*x_i q^(-i-1). Stride one; length K.
inline CantorValue cantor_encode(const TruncatedPadicInt& x, std::uint32_t n) {
    std::vector<digit_t> d(x.precision());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = n * x.digit(i);
    return {x.p(), n, std::move(d)};
}

/// psi, the inverse of cantor_encode.
inline TruncatedPadicInt cantor_decode(const CantorValue& c) {
    std::vector<digit_t> d(c.length());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = c.digit(i) / c.arity();
    return {c.p(), d.size(), std::move(d)};
}

/// Moves digit i to position n*i. Output keeps only the digits the input
/// determines: n*(L-1)+1 of them.
inline CantorValue spread(const CantorValue& c) {
    if (c.length() == 0) return c;
    const auto n = c.arity();
    std::vector<digit_t> d(n * (c.length() - 1) + 1, 0);
    for (std::size_t i = 0; i < c.length(); ++i) d[n * i] = c.digit(i);
    return {c.p(), n, std::move(d)};
}

/// Phi_n(parts) = sum_k q^-k spread(parts[k]): position n*i+k carries digit i
/// of part k. Digits never exceed q-1, so the sum is a pure interleave.
inline CantorValue combine(std::span<const CantorValue> parts) {
    if (parts.empty()) raise(errc::arity_mismatch, "combine needs at least one part");
    const auto& first = parts.front();
    const auto n = first.arity();
    if (parts.size() != n)
        raise(errc::arity_mismatch, "combine got " + std::to_string(parts.size()) + " parts for arity " + std::to_string(n));
    for (const auto& part : parts)
        if (part.p() != first.p() || part.arity() != n || part.length() != first.length())
            raise(errc::precision_mismatch, "combine parts differ in p, arity or length");
    std::vector<digit_t> d(n * first.length());
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < first.length(); ++i) d[n * i + k] = parts[k].digit(i);
    return {first.p(), n, std::move(d)};
}

/// chi_k: digits of z at positions n*i+k.
inline CantorValue extract(const CantorValue& z, std::size_t k) {
    const auto n = z.arity();
    if (k >= n) raise(errc::index_out_of_range, "extract index " + std::to_string(k) + " for arity " + std::to_string(n));
    std::vector<digit_t> d;
    for (std::size_t pos = k; pos < z.length(); pos += n) d.push_back(z.digit(pos));
    return {z.p(), n, std::move(d)};
}

/// phi of the real-valued superposition: x -> sum n*x_i q^(-n*i-1).
inline CantorValue phi_full(const TruncatedPadicInt& x, std::uint32_t n) { return spread(cantor_encode(x, n)); }

/// Inverse of phi_full; off-stride positions must be zero.
inline TruncatedPadicInt phi_full_inverse(const CantorValue& c) {
    const auto n = c.arity();
    for (std::size_t pos = 0; pos < c.length(); ++pos)
        if (pos % n != 0 && c.digit(pos) != 0)
            raise(errc::invalid_cantor_digit, "nonzero digit at off-stride position " + std::to_string(pos));
    return cantor_decode(extract(c, 0));
}

/// The digits read as a base-q integer m, so that value = m / q^L.
inline BigInt cantor_numerator(const CantorValue& c) {
    BigInt m = 0;
    for (auto d : c.digits()) m = m * c.base() + d;
    return m;
}

inline Rational cantor_to_rational(const CantorValue& c) {
    return Rational(cantor_numerator(c), big_pow(c.base(), c.length()));
}

/// Index of the level-L cell holding c in the base-p enumeration of valid
/// prefixes (digit i contributes (d_i/n) p^(L-1-i)). Increasing in value.
inline std::uint64_t cantor_prefix_index(const CantorValue& c) {
    std::uint64_t j = 0;
    for (auto d : c.digits()) j = j * c.p() + d / c.arity();
    return j;
}

inline CantorValue cantor_prefix_from_index(std::uint32_t p, std::uint32_t n, std::size_t length, std::uint64_t index) {
    std::vector<digit_t> d(length, 0);
    for (std::size_t i = length; i-- > 0;) {
        d[i] = n * static_cast<digit_t>(index % p);
        index /= p;
    }
    return {p, n, std::move(d)};
}

struct GapInterval {
    Rational left;
    Rational right;
    friend bool operator==(const GapInterval&, const GapInterval&) = default;
};

/// Upper bound on p^L accepted by enumeration helpers.
inline constexpr std::uint64_t max_enumerated_cells = std::uint64_t{1} << 26;

/// Open intervals of [0,1] not covered by the level-L approximation of C_p,
/// in increasing order. The level-L cells are [m/q^L, (m+1)/q^L] for m with
/// all base-q digits in {0, n, ..., n(p-1)}.
inline std::vector<GapInterval> gap_intervals(std::uint32_t p, std::uint32_t n, std::size_t level) {
    require_prime(p);
    if (n == 0) raise(errc::arity_mismatch, "arity must be at least 1");
    auto cells = checked_pow(p, level);
    if (!cells || *cells > max_enumerated_cells)
        raise(errc::size_limit_exceeded, "p^L cells exceed the enumeration limit");
    std::vector<GapInterval> gaps;
    if (n == 1) return gaps;
    const BigInt scale = big_pow(cantor_base(p, n), level);
    BigInt prev_end;
    for (std::uint64_t j = 0; j < *cells; ++j) {
        BigInt m = cantor_numerator(cantor_prefix_from_index(p, n, level, j));
        if (j > 0 && prev_end < m) gaps.push_back({Rational(prev_end, scale), Rational(m, scale)});
        prev_end = m + 1;
    }
    return gaps;
}

/// Textual form `q:L:d0,d1,...`, most significant digit first.
inline std::string to_string(const CantorValue& c) {
    return std::to_string(c.base()) + ":" + std::to_string(c.length()) + ":" + detail::join_digits(c.digits());
}

/// Parses `q:L:digits` for arity n; p is recovered from q = n(p-1)+1.
inline CantorValue parse_cantor(std::string_view text, std::uint32_t n) {
    if (n == 0) raise(errc::arity_mismatch, "arity must be at least 1");
    auto t = detail::split_digit_text(text);
    if (t.radix < 2 || (t.radix - 1) % n != 0)
        raise(errc::parse_error, "base " + std::to_string(t.radix) + " is not n(p-1)+1 for arity " + std::to_string(n));
    auto p = (t.radix - 1) / n + 1;
    if (p > UINT32_MAX) raise(errc::non_prime_modulus, std::to_string(p) + " is not a supported prime");
    std::vector<digit_t> d(t.count, 0);
    for (std::size_t i = 0; i < t.digits.size(); ++i) {
        if (t.digits[i] < 0 || static_cast<std::uint64_t>(t.digits[i]) >= t.radix)
            raise(errc::invalid_cantor_digit, "digit " + std::to_string(t.digits[i]) + " outside base " +
                                                  std::to_string(t.radix));
        d[i] = static_cast<digit_t>(t.digits[i]);
    }
    return {static_cast<std::uint32_t>(p), n, std::move(d)};
}

}  // namespace padic_kas
