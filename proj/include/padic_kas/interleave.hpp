#pragma once

#include "padic_kas/error.hpp"
#include "padic_kas/padic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace padic_kas {

/// A p-adic integer of precision n*K whose digit n*i+k belongs to coordinate k.
class InterleavedPadic {
public:
    InterleavedPadic(TruncatedPadicInt value, std::uint32_t arity) : value_(std::move(value)), arity_(arity) {
        if (arity == 0) raise(errc::arity_mismatch, "arity must be at least 1");
        if (value_.precision() % arity != 0)
            raise(errc::precision_mismatch, "precision " + std::to_string(value_.precision()) +
                                                " is not divisible by arity " + std::to_string(arity));
    }

    const TruncatedPadicInt& value() const noexcept { return value_; }
    std::uint32_t arity() const noexcept { return arity_; }
    std::size_t coordinate_precision() const noexcept { return value_.precision() / arity_; }

    friend bool operator==(const InterleavedPadic&, const InterleavedPadic&) = default;

private:
    TruncatedPadicInt value_;
    std::uint32_t arity_;
};

/// omega(x) = sum x_i p^(n*i), at precision n*K.
inline TruncatedPadicInt omega(const TruncatedPadicInt& x, std::uint32_t n) {
    if (n == 0) raise(errc::arity_mismatch, "arity must be at least 1");
    std::vector<digit_t> d(n * x.precision(), 0);
    for (std::size_t i = 0; i < x.precision(); ++i) d[n * i] = x.digit(i);
    return {x.p(), d.size(), std::move(d)};
}

/// Phi(x_1..x_n) = sum_k p^k omega(x_{k+1}), built by digit placement.
inline InterleavedPadic interleave(const PadicPoint& x) {
    const auto n = static_cast<std::uint32_t>(x.dimension());
    const auto k_digits = x.precision();
    std::vector<digit_t> d(n * k_digits);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < k_digits; ++i) d[n * i + k] = x[k].digit(i);
    const auto length = d.size();
    return {TruncatedPadicInt(x.p(), length, std::move(d)), n};
}

/// sigma_k: digits of z at positions n*i+k.
inline TruncatedPadicInt deinterleave_k(const InterleavedPadic& z, std::size_t k) {
    const auto n = z.arity();
    if (k >= n) raise(errc::index_out_of_range, "coordinate " + std::to_string(k) + " for arity " + std::to_string(n));
    std::vector<digit_t> d(z.coordinate_precision());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = z.value().digit(n * i + k);
    return {z.value().p(), d.size(), std::move(d)};
}

/// Psi(z) = (sigma_0(z), ..., sigma_{n-1}(z)).
inline PadicPoint deinterleave(const InterleavedPadic& z) {
    std::vector<TruncatedPadicInt> coords;
    coords.reserve(z.arity());
    for (std::size_t k = 0; k < z.arity(); ++k) coords.push_back(deinterleave_k(z, k));
    return PadicPoint(std::move(coords));
}

}  // namespace padic_kas
