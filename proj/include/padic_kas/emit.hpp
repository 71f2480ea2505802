#pragma once

#include "padic_kas/cantor.hpp"
#include "padic_kas/error.hpp"
#include "padic_kas/padic.hpp"
#include "padic_kas/rational.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>

namespace padic_kas {

inline constexpr std::uint64_t max_csv_rows = 1'000'000;

/// Shortest round-tripping decimal form of a double.
inline std::string shortest_decimal(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

/// Writes `index,rational,decimal` rows for the left endpoints of all level-L
/// Cantor cells, increasing.
inline void emit_cantor_csv(std::uint32_t p, std::uint32_t n, std::size_t level, std::ostream& out) {
    require_prime(p);
    if (n == 0) raise(errc::arity_mismatch, "arity must be at least 1");
    auto rows = checked_pow(p, level);
    if (!rows || *rows > max_csv_rows)
        raise(errc::size_limit_exceeded, "p^L exceeds " + std::to_string(max_csv_rows) + " rows");
    out << "index,rational,decimal\n";
    for (std::uint64_t j = 0; j < *rows; ++j) {
        auto left = cantor_to_rational(cantor_prefix_from_index(p, n, level, j));
        out << j << ',' << to_string(left) << ',' << shortest_decimal(to_double(left)) << '\n';
    }
    if (!out) raise(errc::io_error, "write failed");
}

inline void emit_cantor_csv(std::uint32_t p, std::uint32_t n, std::size_t level, const std::string& path) {
    // Validate before touching the file system.
    auto rows = checked_pow(p, level);
    if (!rows || *rows > max_csv_rows)
        raise(errc::size_limit_exceeded, "p^L exceeds " + std::to_string(max_csv_rows) + " rows");
    std::ofstream out(path);
    if (!out) raise(errc::io_error, "cannot open '" + path + "' for writing");
    emit_cantor_csv(p, n, level, out);
}

}  // namespace padic_kas
