#pragma once

#include "padic_kas/cantor.hpp"
#include "padic_kas/cylinder.hpp"
#include "padic_kas/error.hpp"
#include "padic_kas/interleave.hpp"
#include "padic_kas/padic.hpp"
#include "padic_kas/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace padic_kas {

// ---------------------------------------------------------------------------
// Real-valued functions: f(x_1..x_n) = g(sum_i q^-i phi(x_{i+1})).

/// sum_i q^-i phi_full(x_{i+1}) as an exact Cantor value of length n*K:
/// coordinate i's digit j lands at position n*j+i.
inline CantorValue superposition_argument(const PadicPoint& x) {
    const auto n = static_cast<std::uint32_t>(x.dimension());
    std::vector<digit_t> d(n * x.precision(), 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto phi = phi_full(x[i], n);
        for (std::size_t pos = 0; pos < phi.length(); ++pos)
            if (phi.digit(pos) != 0) d[pos + i] = phi.digit(pos);
    }
    return {x.p(), n, std::move(d)};
}

/// One complementary gap of the level-L Cantor approximation with the table
/// values of the cells on either side.
struct GapPiece {
    Rational left;
    Rational right;
    double left_value;
    double right_value;

    /// The linear piece on the closed gap [left, right].
    Rational at(const Rational& t) const {
        const Rational lo = to_rational(left_value);
        const Rational hi = to_rational(right_value);
        return lo + (t - left) / (right - left) * (hi - lo);
    }
};

/// The univariate g of the real-valued superposition. Exact on level-L Cantor
/// cells (L = n*K), linear across the gaps between them, defined on [0,1].
class GFunction {
public:
    GFunction(CylinderShape shape, std::vector<double> values) : shape_(shape), values_(std::move(values)) {
        if (values_.size() != pow_or_throw(shape_.p, level()))
            raise(errc::table_format_error, "g table must have p^(nK) entries");
    }

    const CylinderShape& shape() const noexcept { return shape_; }
    std::size_t level() const noexcept { return static_cast<std::size_t>(shape_.n) * shape_.K; }
    std::uint64_t base() const noexcept { return cantor_base(shape_.p, shape_.n); }

    /// Table value for a level-L Cantor prefix.
    double at_prefix(const CantorValue& prefix) const {
        if (prefix.p() != shape_.p || prefix.arity() != shape_.n || prefix.length() != level())
            raise(errc::precision_mismatch, "prefix does not match g's p, arity and level");
        return values_[cantor_prefix_index(prefix)];
    }

    double at_index(std::uint64_t prefix_index) const { return values_.at(prefix_index); }
    std::size_t size() const noexcept { return values_.size(); }

private:
    CylinderShape shape_;
    std::vector<double> values_;
};

inline GFunction build_g(const CylinderFunction& f) {
    if (f.codomain() != Codomain::real)
        raise(errc::codomain_mismatch, "build_g needs a real-valued function, '" + f.name() + "' is p-adic valued");
    const auto& shape = f.shape();
    const auto count = shape.point_count();
    if (count > max_enumerated_cells) raise(errc::size_limit_exceeded, "p^(nK) exceeds the table limit");
    std::vector<double> values(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        auto x = point_from_index(shape, i);
        std::vector<CantorValue> parts;
        parts.reserve(shape.n);
        for (const auto& c : x.coords()) parts.push_back(cantor_encode(c, shape.n));
        values[cantor_prefix_index(combine(parts))] = f.eval_real(x);
    }
    return {shape, std::move(values)};
}

namespace detail {

struct CellHit {
    std::uint64_t prefix_index;
};

struct GapHit {
    std::uint64_t left_index;
    std::uint64_t right_index;
    Rational left;
    Rational right;
};

inline std::uint64_t prefix_index_of_cell(const std::vector<digit_t>& q_digits, std::uint32_t p, std::uint32_t n) {
    std::uint64_t j = 0;
    for (auto d : q_digits) j = j * p + d / n;
    return j;
}

/// Finds the level-L cell holding t, or the gap around it. A cell is closed;
/// where two cells touch (n = 1) the point goes to the right-hand cell.
inline std::variant<CellHit, GapHit> locate(const GFunction& g, const Rational& t) {
    if (t < 0 || t > 1) raise(errc::domain_violation, "g is defined on [0,1], got " + to_string(t));
    const auto& shape = g.shape();
    const auto n = shape.n;
    const auto q = g.base();
    const auto L = g.level();
    const BigInt scale = big_pow(q, L);
    BigInt m = floor_div(numerator(t) * scale, denominator(t));
    if (m == scale) m = scale - 1;

    auto q_digits_of = [&](BigInt v) {
        std::vector<digit_t> d(L);
        for (std::size_t i = L; i-- > 0;) {
            d[i] = static_cast<digit_t>(v % q);
            v /= q;
        }
        return d;
    };
    auto first_invalid = [&](const std::vector<digit_t>& d) {
        std::size_t i = 0;
        while (i < d.size() && d[i] % n == 0) ++i;
        return i;
    };

    auto digits = q_digits_of(m);
    auto j = first_invalid(digits);
    if (j == L) return CellHit{prefix_index_of_cell(digits, shape.p, n)};
    if (m > 0 && t * scale == Rational(m)) {
        auto below = q_digits_of(m - 1);
        if (first_invalid(below) == L) return CellHit{prefix_index_of_cell(below, shape.p, n)};
    }
    // Nearest valid cells: round digit j down (rest maximal) or up (rest zero).
    auto lo = digits;
    auto hi = digits;
    lo[j] = (digits[j] / n) * n;
    hi[j] = (digits[j] / n + 1) * n;
    for (std::size_t i = j + 1; i < L; ++i) {
        lo[i] = n * (shape.p - 1);
        hi[i] = 0;
    }
    auto as_int = [&](const std::vector<digit_t>& d) {
        BigInt v = 0;
        for (auto x : d) v = v * q + x;
        return v;
    };
    return GapHit{prefix_index_of_cell(lo, shape.p, n), prefix_index_of_cell(hi, shape.p, n),
                  Rational(as_int(lo) + 1, scale), Rational(as_int(hi), scale)};
}

}  // namespace detail

/// g(t) as an exact rational: the cell's table value (as a rational) or the
/// linear interpolation across the gap.
inline Rational eval_g_exact(const GFunction& g, const Rational& t) {
    auto hit = detail::locate(g, t);
    if (auto cell = std::get_if<detail::CellHit>(&hit)) return to_rational(g.at_index(cell->prefix_index));
    const auto& gap = std::get<detail::GapHit>(hit);
    GapPiece piece{gap.left, gap.right, g.at_index(gap.left_index), g.at_index(gap.right_index)};
    return piece.at(t);
}

/// g(t). On a Cantor cell this is the stored double itself.
inline double eval_g(const GFunction& g, const Rational& t) {
    auto hit = detail::locate(g, t);
    if (auto cell = std::get_if<detail::CellHit>(&hit)) return g.at_index(cell->prefix_index);
    const auto& gap = std::get<detail::GapHit>(hit);
    GapPiece piece{gap.left, gap.right, g.at_index(gap.left_index), g.at_index(gap.right_index)};
    return to_double(piece.at(t));
}

/// All gaps of g's level with their neighbouring cell values, increasing.
inline std::vector<GapPiece> gap_pieces(const GFunction& g) {
    const auto& shape = g.shape();
    auto gaps = gap_intervals(shape.p, shape.n, g.level());
    std::vector<GapPiece> out;
    out.reserve(gaps.size());
    for (auto& gap : gaps) {
        auto hit_left = detail::locate(g, gap.left);
        auto hit_right = detail::locate(g, gap.right);
        out.push_back({gap.left, gap.right, g.at_index(std::get<detail::CellHit>(hit_left).prefix_index),
                       g.at_index(std::get<detail::CellHit>(hit_right).prefix_index)});
    }
    return out;
}

inline void require_matching_point(const CylinderShape& shape, const PadicPoint& x) {
    if (x.dimension() != shape.n)
        raise(errc::dimension_mismatch,
              "point of dimension " + std::to_string(x.dimension()) + " for arity " + std::to_string(shape.n));
    if (x.p() != shape.p || x.precision() != shape.K)
        raise(errc::precision_mismatch, "point p/precision differ from the representative's");
}

/// g(sum_i q^-i phi(x_{i+1})).
inline double superpose1(const GFunction& g, const PadicPoint& x) {
    require_matching_point(g.shape(), x);
    return eval_g(g, cantor_to_rational(superposition_argument(x)));
}

// ---------------------------------------------------------------------------
// p-adic-valued functions: f(x_1..x_n) = h(sum_k p^k omega(x_{k+1})).

/// Which weights multiply omega(x_k). `unit` uses p^0..p^(n-1), so h lives
/// on all of Z_p; `shifted` uses p^1..p^n, so h lives on p Z_p.
enum class WeightConvention { unit, shifted };

inline std::string_view weight_name(WeightConvention w) noexcept {
    return w == WeightConvention::unit ? "unit" : "shifted";
}

/// The argument handed to h: interleave(x), shifted one digit up under the
/// `shifted` weights.
inline TruncatedPadicInt h_argument(const PadicPoint& x, WeightConvention weights) {
    auto z = interleave(x).value();
    if (weights == WeightConvention::unit) return z;
    std::vector<digit_t> d{0};
    d.insert(d.end(), z.digits().begin(), z.digits().end());
    return {z.p(), d.size(), std::move(d)};
}

/// The univariate h of the p-adic-valued superposition, tabulated over
/// Z/p^(nK) by z -> f(deinterleave(z)).
class HFunction {
public:
    HFunction(CylinderShape shape, WeightConvention weights, std::vector<PadicScalar> values)
        : shape_(shape), weights_(weights), values_(std::move(values)) {
        if (values_.size() != pow_or_throw(shape_.p, static_cast<std::size_t>(shape_.n) * shape_.K))
            raise(errc::table_format_error, "h table must have p^(nK) entries");
    }

    const CylinderShape& shape() const noexcept { return shape_; }
    WeightConvention weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Precision of h's argument: n*K, plus one under the `shifted` weights.
    std::size_t argument_precision() const noexcept {
        return static_cast<std::size_t>(shape_.n) * shape_.K + (weights_ == WeightConvention::shifted ? 1 : 0);
    }

    const PadicScalar& operator()(const TruncatedPadicInt& z) const {
        if (z.p() != shape_.p || z.precision() != argument_precision())
            raise(errc::precision_mismatch, "h expects an argument of precision " +
                                                std::to_string(argument_precision()) + " over p=" +
                                                std::to_string(shape_.p));
        if (weights_ == WeightConvention::shifted) {
            if (z.digit(0) != 0) raise(errc::domain_violation, "h is defined on p Z_p under shifted weights");
            std::vector<digit_t> d(z.digits().begin() + 1, z.digits().end());
            const auto length = d.size();
            return values_[TruncatedPadicInt(z.p(), length, std::move(d)).to_uint()];
        }
        return values_[z.to_uint()];
    }

private:
    CylinderShape shape_;
    WeightConvention weights_;
    std::vector<PadicScalar> values_;
};

inline HFunction build_h(const CylinderFunction& f, WeightConvention weights = WeightConvention::unit) {
    if (f.codomain() != Codomain::padic)
        raise(errc::codomain_mismatch, "build_h needs a p-adic valued function, '" + f.name() + "' is real valued");
    const auto& shape = f.shape();
    const auto count = shape.point_count();
    if (count > max_enumerated_cells) raise(errc::size_limit_exceeded, "p^(nK) exceeds the table limit");
    const std::size_t precision = static_cast<std::size_t>(shape.n) * shape.K;
    std::vector<PadicScalar> values;
    values.reserve(count);
    for (std::uint64_t z = 0; z < count; ++z) {
        InterleavedPadic zi(TruncatedPadicInt::from_uint(shape.p, precision, z), shape.n);
        values.push_back(f.eval_padic(deinterleave(zi)));
    }
    return {shape, weights, std::move(values)};
}

inline PadicScalar superpose2(const HFunction& h, const PadicPoint& x) {
    require_matching_point(h.shape(), x);
    return h(h_argument(x, h.weights()));
}

}  // namespace padic_kas
