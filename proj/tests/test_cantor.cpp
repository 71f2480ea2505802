#include "padic_kas/cantor.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

using namespace padic_kas;

namespace {

std::vector<digit_t> digits_of(const CantorValue& c) { return {c.digits().begin(), c.digits().end()}; }

CantorValue cv(std::uint32_t p, std::uint32_t n, std::vector<digit_t> d) { return {p, n, std::move(d)}; }

// Direct sum of d_i q^(-i-1), written independently of cantor_to_rational.
Rational digit_sum(const std::vector<digit_t>& d, std::uint64_t q) {
    Rational acc = 0;
    BigInt w = 1;
    for (auto x : d) {
        w *= q;
        acc += Rational(BigInt(x), w);
    }
    return acc;
}

// Gap oracle: walk every base-q cell of level L and merge runs of cells
// whose digits are not all multiples of n.
std::vector<GapInterval> gap_oracle(std::uint32_t p, std::uint32_t n, std::size_t L) {
    const std::uint64_t q = cantor_base(p, n);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < L; ++i) total *= q;
    auto valid = [&](std::uint64_t m) {
        for (std::size_t i = 0; i < L; ++i, m /= q)
            if (m % q % n != 0) return false;
        return true;
    };
    std::vector<GapInterval> out;
    std::uint64_t m = 0;
    while (m < total) {
        if (valid(m)) {
            ++m;
            continue;
        }
        auto start = m;
        while (m < total && !valid(m)) ++m;
        out.push_back({Rational(BigInt(start), BigInt(total)), Rational(BigInt(m), BigInt(total))});
    }
    return out;
}

}  // namespace

TEST(CantorEncode, Examples) {
    EXPECT_EQ(cantor_to_rational(cantor_encode(TruncatedPadicInt::zero(2, 3), 2)), Rational(0));

    auto one = cantor_encode(TruncatedPadicInt::from_uint(2, 3, 1), 2);
    EXPECT_EQ(digits_of(one), (std::vector<digit_t>{2, 0, 0}));
    EXPECT_EQ(cantor_to_rational(one), Rational(2, 3));

    auto all_ones = cantor_encode(TruncatedPadicInt::from_uint(2, 3, 7), 2);
    EXPECT_EQ(digits_of(all_ones), (std::vector<digit_t>{2, 2, 2}));
    EXPECT_EQ(cantor_to_rational(all_ones), Rational(26, 27));
    EXPECT_EQ(digit_sum({2, 2, 2}, 3), Rational(26, 27));

    auto two = cantor_encode(TruncatedPadicInt::from_uint(3, 1, 2), 2);
    EXPECT_EQ(two.base(), 5u);
    EXPECT_EQ(digits_of(two), (std::vector<digit_t>{4}));
    EXPECT_EQ(cantor_to_rational(two), Rational(4, 5));
}

TEST(CantorDecode, Examples) {
    EXPECT_EQ(cantor_decode(CantorValue::zero(2, 2, 3)), TruncatedPadicInt::zero(2, 3));
    EXPECT_EQ(cantor_decode(cv(2, 2, {2, 0, 0})), TruncatedPadicInt::from_uint(2, 3, 1));
    try {
        cv(2, 2, {1, 0, 0});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::invalid_cantor_digit);
    }
    EXPECT_THROW(cv(3, 2, {6}), error);
}

TEST(CantorCodec, RoundTripsExhaustively) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint32_t n : {1u, 2u, 3u})
            for (std::size_t K = 1; K <= 4; ++K)
                for (std::uint64_t v = 0; v < pow_or_throw(p, K); ++v) {
                    auto x = TruncatedPadicInt::from_uint(p, K, v);
                    ASSERT_EQ(cantor_decode(cantor_encode(x, n)), x);
                    ASSERT_EQ(phi_full_inverse(phi_full(x, n)), x);
                }
}

TEST(CantorPrefix, IndexOrdersValues) {
    for (std::uint32_t p : {2u, 3u}) {
        Rational prev = -1;
        for (std::uint64_t j = 0; j < pow_or_throw(p, 4); ++j) {
            auto c = cantor_prefix_from_index(p, 2, 4, j);
            ASSERT_EQ(cantor_prefix_index(c), j);
            auto v = cantor_to_rational(c);
            ASSERT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(Spread, Examples) {
    EXPECT_EQ(cantor_to_rational(spread(CantorValue::zero(2, 2, 2))), Rational(0));
    auto s = spread(cv(2, 2, {2, 2}));
    EXPECT_EQ(digits_of(s), (std::vector<digit_t>{2, 0, 2}));
    EXPECT_EQ(cantor_to_rational(s), Rational(20, 27));
    EXPECT_EQ(digit_sum({2, 0, 2}, 3), Rational(2, 3) + Rational(2, 27));
    auto c = cv(3, 1, {1, 2, 0});
    EXPECT_EQ(spread(c), c);
}

TEST(Combine, Examples) {
    std::vector<CantorValue> zeros{CantorValue::zero(2, 2, 2), CantorValue::zero(2, 2, 2)};
    EXPECT_EQ(cantor_to_rational(combine(zeros)), Rational(0));

    std::vector<CantorValue> halves{cv(2, 2, {2}), cv(2, 2, {2})};
    auto z = combine(halves);
    EXPECT_EQ(digits_of(z), (std::vector<digit_t>{2, 2}));
    EXPECT_EQ(cantor_to_rational(z), Rational(8, 9));
    EXPECT_EQ(Rational(2, 3) + Rational(2, 9), Rational(8, 9));

    std::vector<CantorValue> one_zero{cantor_encode(TruncatedPadicInt::from_uint(2, 1, 1), 2),
                                      cantor_encode(TruncatedPadicInt::zero(2, 1), 2)};
    EXPECT_EQ(cantor_to_rational(combine(one_zero)), Rational(2, 3));
}

TEST(Combine, Errors) {
    std::vector<CantorValue> one{cv(2, 2, {2})};
    try {
        combine(one);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::arity_mismatch);
    }
    std::vector<CantorValue> ragged{cv(2, 2, {2}), cv(2, 2, {2, 0})};
    EXPECT_THROW(combine(ragged), error);
}

TEST(Extract, Examples) {
    auto zero = CantorValue::zero(2, 2, 4);
    EXPECT_EQ(cantor_to_rational(extract(zero, 0)), Rational(0));

    auto z = cv(2, 2, {2, 2});
    EXPECT_EQ(cantor_to_rational(extract(z, 0)), Rational(2, 3));
    EXPECT_EQ(cantor_to_rational(extract(z, 1)), Rational(2, 3));

    auto w = cv(2, 2, {2, 0, 2, 0});
    EXPECT_EQ(digits_of(extract(w, 0)), (std::vector<digit_t>{2, 2}));
    EXPECT_EQ(cantor_to_rational(extract(w, 0)), Rational(8, 9));
    EXPECT_EQ(cantor_to_rational(extract(w, 1)), Rational(0));

    try {
        extract(w, 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::index_out_of_range);
    }
}

TEST(Extract, InvertsCombineExhaustively) {
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t n : {2u, 3u}) {
            const std::size_t L = 2;
            const auto per = pow_or_throw(p, L);
            const auto total = pow_or_throw(per, n);
            for (std::uint64_t c = 0; c < total; ++c) {
                std::vector<CantorValue> parts;
                auto v = c;
                for (std::uint32_t k = 0; k < n; ++k, v /= per) parts.push_back(cantor_prefix_from_index(p, n, L, v % per));
                auto z = combine(parts);
                for (std::uint32_t k = 0; k < n; ++k) ASSERT_EQ(extract(z, k), parts[k]);
            }
        }
}

TEST(PhiFull, Examples) {
    EXPECT_EQ(cantor_to_rational(phi_full(TruncatedPadicInt::zero(2, 2), 2)), Rational(0));
    EXPECT_EQ(cantor_to_rational(phi_full(TruncatedPadicInt::from_uint(2, 2, 3), 2)), Rational(20, 27));
    EXPECT_EQ(cantor_to_rational(phi_full(TruncatedPadicInt::from_uint(2, 3, 1), 2)), Rational(2, 3));
    EXPECT_THROW(phi_full_inverse(cv(2, 2, {2, 2, 0})), error);
}

TEST(CantorToRational, Examples) {
    EXPECT_EQ(to_string(cantor_to_rational(CantorValue::zero(2, 2, 1))), "0");
    EXPECT_EQ(cantor_to_rational(cv(2, 2, {2, 2})), Rational(8, 9));
    EXPECT_EQ(cantor_to_rational(cv(3, 2, {4})), Rational(4, 5));
}

TEST(CantorToRational, MatchesDigitSum) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint64_t j = 0; j < pow_or_throw(p, 3); ++j) {
            auto c = cantor_prefix_from_index(p, 3, 3, j);
            ASSERT_EQ(cantor_to_rational(c), digit_sum(digits_of(c), c.base()));
        }
}

TEST(GapIntervals, Examples) {
    EXPECT_EQ(gap_intervals(2, 2, 1), (std::vector<GapInterval>{{Rational(1, 3), Rational(2, 3)}}));
    EXPECT_EQ(gap_intervals(2, 2, 2), (std::vector<GapInterval>{{Rational(1, 9), Rational(2, 9)},
                                                                {Rational(1, 3), Rational(2, 3)},
                                                                {Rational(7, 9), Rational(8, 9)}}));
    EXPECT_TRUE(gap_intervals(5, 1, 3).empty());
}

TEST(GapIntervals, MatchCellScanOracle) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint32_t n : {2u, 3u})
            for (std::size_t L = 1; L <= 4; ++L) {
                auto gaps = gap_intervals(p, n, L);
                ASSERT_EQ(gaps, gap_oracle(p, n, L)) << "p=" << p << " n=" << n << " L=" << L;
                // p^L cells leave p^L - 1 gaps. The (p-1)p^(j-1) gaps opened at
                // level j have width (n-1)/q^j.
                ASSERT_EQ(gaps.size(), pow_or_throw(p, L) - 1);
                for (std::size_t j = 1; j <= L; ++j) {
                    const Rational width(BigInt(n - 1), big_pow(cantor_base(p, n), j));
                    auto count = std::count_if(gaps.begin(), gaps.end(),
                                               [&](const GapInterval& g) { return g.right - g.left == width; });
                    ASSERT_EQ(static_cast<std::uint64_t>(count), (p - 1) * pow_or_throw(p, j - 1));
                }
            }
}

TEST(GapIntervals, SizeLimit) {
    try {
        gap_intervals(2, 2, 40);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::size_limit_exceeded);
    }
}

TEST(Continuity, SharedInputPrefixBoundsOutputDistance) {
    // Inputs sharing j digits give encodings sharing j digits, at distance
    // at most q^-j.
    for (std::uint32_t p : {2u, 3u}) {
        const std::size_t K = 4;
        const auto q = cantor_base(p, 2);
        for (std::uint64_t a = 0; a < pow_or_throw(p, K); ++a)
            for (std::uint64_t b = 0; b < pow_or_throw(p, K); ++b) {
                auto x = TruncatedPadicInt::from_uint(p, K, a);
                auto y = TruncatedPadicInt::from_uint(p, K, b);
                auto j = x.common_prefix(y);
                auto ex = cantor_encode(x, 2);
                auto ey = cantor_encode(y, 2);
                ASSERT_GE(ex.common_prefix(ey), j);
                ASSERT_LE(abs(cantor_to_rational(ex) - cantor_to_rational(ey)), Rational(BigInt(1), big_pow(q, j)));
            }
    }
}

// The two-part combine is not bounded by ((2p-1)^2-1)/(2(p-1)^2) times the
// squared Euclidean distance. Hand-checked witnesses:
//   p=2, L=3: x1 = 0.022_3 = 8/27, x2 = 0.200_3 = 18/27, y1 = y2 = 0.
//     image 0.002020_3 vs 0.200000_3, gap 142/243; d^2 = 100/729; ratio 213/50 > 4.
//   p=3, L=2: x1 = 0.04_5 = 4/25, x2 = 0.20_5 = 10/25, y1 = y2 = 0.
//     image 0.0040_5 vs 0.2000_5, gap 46/125; d^2 = 36/625; ratio 115/18 > 3.
TEST(CombineBound, StatedConstantHasCounterexamples) {
    auto ratio = [](std::uint32_t p, std::vector<digit_t> x1, std::vector<digit_t> x2) {
        auto y = CantorValue::zero(p, 2, x1.size());
        std::vector<CantorValue> a{cv(p, 2, x1), y};
        std::vector<CantorValue> b{cv(p, 2, x2), y};
        Rational image = abs(cantor_to_rational(combine(a)) - cantor_to_rational(combine(b)));
        Rational dx = cantor_to_rational(a[0]) - cantor_to_rational(b[0]);
        return std::pair{image, dx * dx};
    };
    auto [img2, d2] = ratio(2, {0, 2, 2}, {2, 0, 0});
    EXPECT_EQ(img2, Rational(142, 243));
    EXPECT_EQ(d2, Rational(100, 729));
    EXPECT_EQ(img2 / d2, Rational(213, 50));
    EXPECT_GT(img2, 4 * d2);

    auto [img3, d3] = ratio(3, {0, 4}, {2, 0});
    EXPECT_EQ(img3, Rational(46, 125));
    EXPECT_EQ(d3, Rational(36, 625));
    EXPECT_GT(img3, 3 * d3);
}

TEST(CombineBound, SquaredBaseBoundHoldsExhaustively) {
    // |combine(a) - combine(b)| <= q^2 (|dx|^2 + |dy|^2) over all level-3
    // pairs of pairs, p = 2.
    const std::uint32_t p = 2;
    const std::size_t L = 3;
    const auto per = pow_or_throw(p, L);
    std::vector<CantorValue> cells;
    for (std::uint64_t j = 0; j < per; ++j) cells.push_back(cantor_prefix_from_index(p, 2, L, j));
    const Rational q2(9);
    for (const auto& x1 : cells)
        for (const auto& y1 : cells)
            for (const auto& x2 : cells)
                for (const auto& y2 : cells) {
                    std::vector<CantorValue> a{x1, y1};
                    std::vector<CantorValue> b{x2, y2};
                    Rational image = abs(cantor_to_rational(combine(a)) - cantor_to_rational(combine(b)));
                    Rational dx = cantor_to_rational(x1) - cantor_to_rational(x2);
                    Rational dy = cantor_to_rational(y1) - cantor_to_rational(y2);
                    ASSERT_LE(image, q2 * (dx * dx + dy * dy));
                }
}

TEST(TextForm, CantorRoundTrip) {
    auto c = cv(3, 2, {4, 0, 2});
    EXPECT_EQ(to_string(c), "5:3:4,0,2");
    EXPECT_EQ(parse_cantor("5:3:4,0,2", 2), c);
    EXPECT_EQ(parse_cantor("3:3:2", 2), cv(2, 2, {2, 0, 0}));
    try {
        parse_cantor("3:1:1", 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::invalid_cantor_digit);
    }
    EXPECT_THROW(parse_cantor("4:1:0", 2), error);
    EXPECT_THROW(parse_cantor("3:1:3", 2), error);
}
