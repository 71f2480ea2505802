#pragma once

#include "padic_kas/error.hpp"
#include "padic_kas/padic.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace padic_kas {

enum class Codomain { real, padic };

inline std::string_view codomain_name(Codomain c) noexcept { return c == Codomain::real ? "real" : "padic"; }

/// Parameters shared by every level-K cylinder function on Z_p^n.
struct CylinderShape {
    std::uint32_t p = 2;
    std::uint32_t n = 2;
    std::size_t K = 1;

    std::uint64_t point_count() const { return pow_or_throw(p, static_cast<std::size_t>(n) * K); }
    friend bool operator==(const CylinderShape&, const CylinderShape&) = default;
};

/// Mixed-radix index of a point: coordinate 0 is least significant, each
/// coordinate contributes its value in [0, p^K).
inline std::uint64_t point_index(const PadicPoint& x) {
    const auto radix = pow_or_throw(x.p(), x.precision());
    std::uint64_t idx = 0;
    for (std::size_t k = x.dimension(); k-- > 0;) idx = idx * radix + x[k].to_uint();
    return idx;
}

inline PadicPoint point_from_index(const CylinderShape& shape, std::uint64_t index) {
    const auto radix = pow_or_throw(shape.p, shape.K);
    std::vector<TruncatedPadicInt> coords;
    coords.reserve(shape.n);
    for (std::uint32_t k = 0; k < shape.n; ++k) {
        coords.push_back(TruncatedPadicInt::from_uint(shape.p, shape.K, index % radix));
        index /= radix;
    }
    return PadicPoint(std::move(coords));
}

/// A level-K locally constant function Z_p^n -> R or Z_p^n -> Q_p, given by a
/// total table or by a formula over the first K digits of each coordinate.
class CylinderFunction {
public:
    using RealRule = std::function<double(const PadicPoint&)>;
    using PadicRule = std::function<PadicScalar(const PadicPoint&)>;

    static CylinderFunction real_table(CylinderShape shape, std::vector<double> values, std::string name = "table") {
        check_table_size(shape, values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i]))
                raise(errc::table_format_error, "non-finite value at point index " + std::to_string(i));
        auto table = std::make_shared<const std::vector<double>>(std::move(values));
        return {shape, Codomain::real, std::move(name), table};
    }

    static CylinderFunction padic_table(CylinderShape shape, std::vector<PadicScalar> values,
                                        std::string name = "table") {
        check_table_size(shape, values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i].p() != shape.p)
                raise(errc::table_format_error, "value at point index " + std::to_string(i) + " has p=" +
                                                    std::to_string(values[i].p()));
        auto table = std::make_shared<const std::vector<PadicScalar>>(std::move(values));
        return {shape, Codomain::padic, std::move(name), table};
    }

    static CylinderFunction real_rule(CylinderShape shape, std::string name, RealRule rule) {
        return {shape, Codomain::real, std::move(name), std::move(rule)};
    }

    static CylinderFunction padic_rule(CylinderShape shape, std::string name, PadicRule rule) {
        return {shape, Codomain::padic, std::move(name), std::move(rule)};
    }

    const CylinderShape& shape() const noexcept { return shape_; }
    Codomain codomain() const noexcept { return codomain_; }
    const std::string& name() const noexcept { return name_; }

    double eval_real(const PadicPoint& x) const {
        require_point(x);
        if (auto t = std::get_if<RealTable>(&body_)) return (**t)[point_index(x)];
        if (auto r = std::get_if<RealRule>(&body_)) return (*r)(x);
        raise(errc::codomain_mismatch, "function '" + name_ + "' is p-adic valued");
    }

    PadicScalar eval_padic(const PadicPoint& x) const {
        require_point(x);
        if (auto t = std::get_if<PadicTable>(&body_)) return (**t)[point_index(x)];
        if (auto r = std::get_if<PadicRule>(&body_)) return (*r)(x);
        raise(errc::codomain_mismatch, "function '" + name_ + "' is real valued");
    }

    /// The same function viewed at level K+extra: new digits are ignored.
    CylinderFunction lifted(std::size_t extra) const {
        CylinderShape up = shape_;
        up.K += extra;
        const std::size_t K = shape_.K;
        auto base = *this;
        auto truncate = [K](const PadicPoint& x) {
            std::vector<TruncatedPadicInt> coords;
            for (const auto& c : x.coords()) coords.push_back(c.truncated(K));
            return PadicPoint(std::move(coords));
        };
        if (codomain_ == Codomain::real)
            return real_rule(up, name_, [base, truncate](const PadicPoint& x) { return base.eval_real(truncate(x)); });
        return padic_rule(up, name_, [base, truncate](const PadicPoint& x) { return base.eval_padic(truncate(x)); });
    }

private:
    using RealTable = std::shared_ptr<const std::vector<double>>;
    using PadicTable = std::shared_ptr<const std::vector<PadicScalar>>;
    using Body = std::variant<RealTable, PadicTable, RealRule, PadicRule>;

    CylinderFunction(CylinderShape shape, Codomain codomain, std::string name, Body body)
        : shape_(shape), codomain_(codomain), name_(std::move(name)), body_(std::move(body)) {
        require_prime(shape_.p);
        if (shape_.n == 0) raise(errc::arity_mismatch, "arity must be at least 1");
        if (shape_.K == 0) raise(errc::precision_mismatch, "level must be at least 1");
    }

    static void check_table_size(const CylinderShape& shape, std::size_t size) {
        if (size != shape.point_count())
            raise(errc::table_format_error, "table has " + std::to_string(size) + " entries, expected " +
                                                std::to_string(shape.point_count()));
    }

    void require_point(const PadicPoint& x) const {
        if (x.dimension() != shape_.n)
            raise(errc::dimension_mismatch, "point of dimension " + std::to_string(x.dimension()) + " for arity " +
                                                std::to_string(shape_.n));
        if (x.p() != shape_.p || x.precision() != shape_.K)
            raise(errc::precision_mismatch, "point p/precision differ from the function's");
    }

    CylinderShape shape_;
    Codomain codomain_;
    std::string name_;
    Body body_;
};

namespace detail {

/// Parses the 1-based coordinate suffix of names like `proj-2`.
inline std::optional<std::size_t> builtin_coordinate(std::string_view name, std::string_view stem, std::uint32_t n) {
    if (name.size() <= stem.size() || name.substr(0, stem.size()) != stem) return std::nullopt;
    auto digits = name.substr(stem.size());
    std::uint64_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
        raise(errc::config_error, "unknown builtin function '" + std::string(name) + "'");
    if (k < 1 || k > n)
        raise(errc::config_error, "coordinate " + std::to_string(k) + " out of range 1.." + std::to_string(n));
    return static_cast<std::size_t>(k - 1);
}

}  // namespace detail

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"zero", "proj-k", "padic-sum", "norm-k", "norm-product", "digit0-k"};
    return names;
}

/// Builtins: zero, proj-k, padic-sum, norm-k, norm-product, digit0-k, with k
/// 1-based. `zero` takes the requested codomain (real when unspecified); the
/// others have a fixed codomain.
inline CylinderFunction make_builtin(std::string_view name, CylinderShape shape,
                                     std::optional<Codomain> codomain = std::nullopt) {
    const std::string label(name);
    auto check = [&](Codomain fixed) {
        if (codomain && *codomain != fixed)
            raise(errc::codomain_mismatch,
                  "builtin '" + label + "' is " + std::string(codomain_name(fixed)) + " valued");
    };
    if (name == "zero") {
        if (codomain.value_or(Codomain::real) == Codomain::real)
            return CylinderFunction::real_rule(shape, label, [](const PadicPoint&) { return 0.0; });
        return CylinderFunction::padic_rule(shape, label, [p = shape.p, K = shape.K](const PadicPoint&) {
            return PadicScalar::zero(p, K);
        });
    }
    if (name == "padic-sum") {
        check(Codomain::padic);
        return CylinderFunction::padic_rule(shape, label, [](const PadicPoint& x) {
            auto acc = x[0];
            for (std::size_t k = 1; k < x.dimension(); ++k) acc = padic_add(acc, x[k]);
            return PadicScalar::from_int(acc);
        });
    }
    if (name == "norm-product") {
        check(Codomain::real);
        return CylinderFunction::real_rule(shape, label, [](const PadicPoint& x) {
            double prod = 1.0;
            for (const auto& c : x.coords()) prod *= to_double(padic_norm(c));
            return prod;
        });
    }
    if (auto k = detail::builtin_coordinate(name, "proj-", shape.n)) {
        check(Codomain::padic);
        return CylinderFunction::padic_rule(shape, label,
                                            [k = *k](const PadicPoint& x) { return PadicScalar::from_int(x[k]); });
    }
    if (auto k = detail::builtin_coordinate(name, "norm-", shape.n)) {
        check(Codomain::real);
        return CylinderFunction::real_rule(shape, label,
                                           [k = *k](const PadicPoint& x) { return to_double(padic_norm(x[k])); });
    }
    if (auto k = detail::builtin_coordinate(name, "digit0-", shape.n)) {
        check(Codomain::real);
        return CylinderFunction::real_rule(shape, label,
                                           [k = *k](const PadicPoint& x) { return static_cast<double>(x[k].digit(0)); });
    }
    raise(errc::config_error, "unknown builtin function '" + label + "'");
}

}  // namespace padic_kas
