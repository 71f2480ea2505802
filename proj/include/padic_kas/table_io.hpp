#pragma once

#include "padic_kas/cylinder.hpp"
#include "padic_kas/error.hpp"
#include "padic_kas/padic.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace padic_kas {

// Table files:
//   {"p": 2, "n": 2, "K": 1, "codomain": "real" | "padic",
//    "entries": [{"x": [[d0, d1, ...], ...], "value": 1.5 | "p:K:d0,..."}, ...]}
// Every point of (Z/p^K)^n must appear exactly once.

namespace detail {

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

[[noreturn]] inline void table_field_error(const std::string& field, const std::string& what) {
    raise(errc::table_format_error, field + ": " + what);
}

inline std::uint64_t table_uint(const nlohmann::json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) table_field_error(field, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

}  // namespace detail

inline CylinderFunction load_table_json(std::string_view text, std::string name = "table") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        raise(errc::table_format_error,
              "line " + std::to_string(detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0)) + ": " + e.what());
    }
    if (!doc.is_object()) detail::table_field_error("<root>", "expected an object");
    for (const char* key : {"p", "n", "K", "codomain", "entries"})
        if (!doc.contains(key)) detail::table_field_error(key, "missing");

    CylinderShape shape;
    auto p = detail::table_uint(doc["p"], "p");
    if (!is_prime(p)) detail::table_field_error("p", std::to_string(p) + " is not prime");
    shape.p = static_cast<std::uint32_t>(p);
    shape.n = static_cast<std::uint32_t>(detail::table_uint(doc["n"], "n"));
    shape.K = detail::table_uint(doc["K"], "K");
    if (shape.n == 0) detail::table_field_error("n", "must be at least 1");
    if (shape.K == 0) detail::table_field_error("K", "must be at least 1");

    if (!doc["codomain"].is_string()) detail::table_field_error("codomain", "expected \"real\" or \"padic\"");
    const auto codomain_text = doc["codomain"].get<std::string>();
    Codomain codomain;
    if (codomain_text == "real")
        codomain = Codomain::real;
    else if (codomain_text == "padic")
        codomain = Codomain::padic;
    else
        detail::table_field_error("codomain", "expected \"real\" or \"padic\", got \"" + codomain_text + "\"");

    const auto& entries = doc["entries"];
    if (!entries.is_array()) detail::table_field_error("entries", "expected an array");
    const auto count = shape.point_count();
    if (count > (std::uint64_t{1} << 26)) raise(errc::size_limit_exceeded, "table too large");

    std::vector<std::optional<double>> reals(codomain == Codomain::real ? count : 0);
    std::vector<std::optional<PadicScalar>> padics(codomain == Codomain::padic ? count : 0);

    for (std::size_t e = 0; e < entries.size(); ++e) {
        const std::string at = "entries[" + std::to_string(e) + "]";
        const auto& entry = entries[e];
        if (!entry.is_object() || !entry.contains("x") || !entry.contains("value"))
            detail::table_field_error(at, "expected an object with \"x\" and \"value\"");
        const auto& xs = entry["x"];
        if (!xs.is_array() || xs.size() != shape.n)
            detail::table_field_error(at + ".x", "expected " + std::to_string(shape.n) + " digit arrays");
        std::vector<TruncatedPadicInt> coords;
        for (std::size_t k = 0; k < shape.n; ++k) {
            const std::string xat = at + ".x[" + std::to_string(k) + "]";
            if (!xs[k].is_array()) detail::table_field_error(xat, "expected a digit array");
            std::vector<std::int64_t> digits;
            for (const auto& d : xs[k]) {
                if (!d.is_number_integer()) detail::table_field_error(xat, "digits must be integers");
                digits.push_back(d.get<std::int64_t>());
            }
            try {
                coords.push_back(make_padic(digits, shape.p, shape.K));
            } catch (const error& err) {
                detail::table_field_error(xat, err.what());
            }
        }
        const auto idx = point_index(PadicPoint(std::move(coords)));
        const auto& value = entry["value"];
        if (codomain == Codomain::real) {
            if (!value.is_number()) detail::table_field_error(at + ".value", "expected a number");
            if (reals[idx]) detail::table_field_error(at + ".x", "duplicate point");
            reals[idx] = value.get<double>();
        } else {
            if (!value.is_string()) detail::table_field_error(at + ".value", "expected a p-adic string 'p:K:digits'");
            if (padics[idx]) detail::table_field_error(at + ".x", "duplicate point");
            try {
                auto s = parse_scalar(value.get<std::string>());
                if (s.p() != shape.p) detail::table_field_error(at + ".value", "p differs from the table's p");
                padics[idx] = std::move(s);
            } catch (const error& err) {
                if (err.code() == errc::table_format_error) throw;
                detail::table_field_error(at + ".value", err.what());
            }
        }
    }

    auto missing = [&](std::uint64_t idx) {
        std::string where;
        const auto x = point_from_index(shape, idx);
        for (const auto& c : x.coords()) where += " " + to_string(c);
        detail::table_field_error("entries", "no entry for point" + where);
    };
    if (codomain == Codomain::real) {
        std::vector<double> values;
        values.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            if (!reals[i]) missing(i);
            values.push_back(*reals[i]);
        }
        return CylinderFunction::real_table(shape, std::move(values), std::move(name));
    }
    std::vector<PadicScalar> values;
    values.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        if (!padics[i]) missing(i);
        values.push_back(std::move(*padics[i]));
    }
    return CylinderFunction::padic_table(shape, std::move(values), std::move(name));
}

inline CylinderFunction load_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_error, "cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_table_json(text, path);
}

/// Materializes f into the table-file form, entries in point-index order.
inline nlohmann::json table_to_json(const CylinderFunction& f) {
    const auto& shape = f.shape();
    nlohmann::json doc{{"p", shape.p},
                       {"n", shape.n},
                       {"K", shape.K},
                       {"codomain", std::string(codomain_name(f.codomain()))},
                       {"entries", nlohmann::json::array()}};
    for (std::uint64_t i = 0; i < shape.point_count(); ++i) {
        auto x = point_from_index(shape, i);
        nlohmann::json xs = nlohmann::json::array();
        for (const auto& c : x.coords()) xs.push_back(std::vector<digit_t>(c.digits().begin(), c.digits().end()));
        nlohmann::json entry{{"x", xs}};
        if (f.codomain() == Codomain::real)
            entry["value"] = f.eval_real(x);
        else
            entry["value"] = to_string(f.eval_padic(x));
        doc["entries"].push_back(std::move(entry));
    }
    return doc;
}

}  // namespace padic_kas
