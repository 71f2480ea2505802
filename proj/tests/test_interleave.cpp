#include "padic_kas/interleave.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

using namespace padic_kas;

namespace {

PadicPoint point(std::uint32_t p, std::size_t K, std::vector<std::uint64_t> values) {
    std::vector<TruncatedPadicInt> coords;
    for (auto v : values) coords.push_back(TruncatedPadicInt::from_uint(p, K, v));
    return PadicPoint(std::move(coords));
}

// omega as integer arithmetic: sum x_i p^(n i).
std::uint64_t omega_oracle(std::uint64_t x, std::uint32_t p, std::uint32_t n) {
    std::uint64_t out = 0, w = 1, stride = 1;
    for (std::uint32_t i = 0; i < n; ++i) stride *= p;
    for (; x > 0; x /= p, w *= stride) out += (x % p) * w;
    return out;
}

InterleavedPadic z_of(std::uint32_t p, std::uint32_t n, std::size_t K, std::uint64_t v) {
    return {TruncatedPadicInt::from_uint(p, n * K, v), n};
}

}  // namespace

TEST(Omega, Examples) {
    EXPECT_TRUE(omega(TruncatedPadicInt::zero(2, 3), 2).is_zero());
    EXPECT_EQ(omega(TruncatedPadicInt::from_uint(2, 2, 3), 2).to_uint(), 5u);
    EXPECT_EQ(omega(TruncatedPadicInt::from_uint(3, 2, 2), 3).to_uint(), 2u);
}

TEST(Omega, MatchesIntegerOracle) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint32_t n : {1u, 2u, 3u})
            for (std::uint64_t v = 0; v < pow_or_throw(p, 3); ++v)
                ASSERT_EQ(omega(TruncatedPadicInt::from_uint(p, 3, v), n).to_uint(), omega_oracle(v, p, n));
}

TEST(Interleave, Examples) {
    EXPECT_TRUE(interleave(point(2, 2, {0, 0})).value().is_zero());
    EXPECT_EQ(interleave(point(2, 2, {1, 1})).value().to_uint(), 3u);
    auto z = interleave(point(2, 2, {1, 3})).value();
    EXPECT_EQ(z.to_uint(), 11u);
    EXPECT_EQ(to_string(z), "2:4:1,1,0,1");
}

TEST(Interleave, EqualsWeightedOmegaSumWithoutCarries) {
    // sum_k p^k omega(x_k) computed two ways: integer oracle and padic_add.
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t n : {2u, 3u}) {
            const std::size_t K = 2;
            const auto per = pow_or_throw(p, K);
            for (std::uint64_t c = 0; c < pow_or_throw(per, n); ++c) {
                std::vector<std::uint64_t> xs;
                for (std::uint32_t k = 0, v = static_cast<std::uint32_t>(c); k < n; ++k, v /= per) xs.push_back(v % per);
                auto x = point(p, K, xs);
                std::uint64_t expected = 0, shift = 1;
                auto acc = TruncatedPadicInt::zero(p, n * K);
                for (std::uint32_t k = 0; k < n; ++k, shift *= p) {
                    expected += shift * omega_oracle(xs[k], p, n);
                    auto term = TruncatedPadicInt::from_uint(p, n * K, shift * omega(x[k], n).to_uint());
                    acc = padic_add(acc, term);
                }
                auto z = interleave(x).value();
                ASSERT_EQ(z.to_uint(), expected);
                ASSERT_EQ(z, acc);
            }
        }
}

TEST(Deinterleave, Examples) {
    EXPECT_TRUE(deinterleave_k(z_of(2, 2, 2, 0), 0).is_zero());
    auto three = z_of(2, 2, 2, 3);
    EXPECT_EQ(deinterleave_k(three, 0).to_uint(), 1u);
    EXPECT_EQ(deinterleave_k(three, 1).to_uint(), 1u);

    auto eleven = z_of(2, 2, 2, 11);
    EXPECT_EQ(to_string(deinterleave_k(eleven, 0)), "2:2:1,0");
    EXPECT_EQ(to_string(deinterleave_k(eleven, 1)), "2:2:1,1");

    EXPECT_EQ(deinterleave(z_of(2, 2, 2, 0)), point(2, 2, {0, 0}));
    EXPECT_EQ(deinterleave(three), point(2, 2, {1, 1}));
    EXPECT_EQ(deinterleave(z_of(3, 2, 1, 5)), point(3, 1, {2, 1}));
    EXPECT_EQ(interleave(point(3, 1, {2, 1})).value().to_uint(), 5u);
}

TEST(Deinterleave, Errors) {
    try {
        deinterleave_k(z_of(2, 2, 2, 3), 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::index_out_of_range);
    }
    try {
        InterleavedPadic(TruncatedPadicInt::zero(2, 5), 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::precision_mismatch);
    }
}

TEST(Interleave, IsABijection) {
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t n : {1u, 2u, 3u}) {
            const std::size_t K = 2;
            const auto total = pow_or_throw(p, n * K);
            std::vector<bool> seen(total, false);
            for (std::uint64_t v = 0; v < total; ++v) {
                auto z = z_of(p, n, K, v);
                auto x = deinterleave(z);
                ASSERT_EQ(interleave(x), z);
                auto image = interleave(x).value().to_uint();
                ASSERT_FALSE(seen[image]);
                seen[image] = true;
            }
        }
}

TEST(InterleaveBound, ImageDistanceIsAtMostDistanceToTheN) {
    // |Phi(A) - Phi(B)|_p <= d(A,B)^n, exhaustive over (Z/2^3)^2 and (Z/3^2)^2 pairs.
    struct Case {
        std::uint32_t p, n;
        std::size_t K;
    };
    for (auto [p, n, K] : {Case{2, 2, 3}, Case{3, 2, 2}, Case{2, 3, 2}}) {
        const auto total = pow_or_throw(p, n * K);
        std::vector<PadicPoint> points;
        for (std::uint64_t v = 0; v < total; ++v) points.push_back(deinterleave(z_of(p, n, K, v)));
        for (const auto& a : points)
            for (const auto& b : points) {
                Rational image = padic_norm(padic_sub(interleave(a).value(), interleave(b).value()));
                Rational bound = 1;
                for (std::uint32_t i = 0; i < n; ++i) bound *= point_distance(a, b);
                ASSERT_LE(image, bound);
            }
    }
}

TEST(InterleaveBound, BoundIsAttained) {
    // A = (2, 0), B = (0, 0): d = 1/2; x digit 1 lands at position 2, so the image norm is 1/4.
    auto a = point(2, 2, {2, 0});
    auto b = point(2, 2, {0, 0});
    EXPECT_EQ(point_distance(a, b), Rational(1, 2));
    EXPECT_EQ(padic_norm(padic_sub(interleave(a).value(), interleave(b).value())), Rational(1, 4));
}
