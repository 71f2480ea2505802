#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padic_kas {

enum class errc {
    non_prime_modulus,
    digit_out_of_range,
    dimension_mismatch,
    precision_mismatch,
    invalid_cantor_digit,
    arity_mismatch,
    index_out_of_range,
    codomain_mismatch,
    domain_violation,
    size_limit_exceeded,
    parse_error,
    config_error,
    table_format_error,
    io_error,
};

inline constexpr std::string_view errc_name(errc e) noexcept {
    switch (e) {
        case errc::non_prime_modulus: return "NonPrimeModulus";
        case errc::digit_out_of_range: return "DigitOutOfRange";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::precision_mismatch: return "PrecisionMismatch";
        case errc::invalid_cantor_digit: return "InvalidCantorDigit";
        case errc::arity_mismatch: return "ArityMismatch";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::codomain_mismatch: return "CodomainMismatch";
        case errc::domain_violation: return "DomainViolation";
        case errc::size_limit_exceeded: return "SizeLimitExceeded";
        case errc::parse_error: return "ParseError";
        case errc::config_error: return "ConfigError";
        case errc::table_format_error: return "TableFormatError";
        case errc::io_error: return "IOError";
    }
    return "Unknown";
}

/// Every failure raised by the library. The message is prefixed with the
/// error kind so CLI diagnostics can be matched on it.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace padic_kas
