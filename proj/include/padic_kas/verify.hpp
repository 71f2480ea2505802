#pragma once

#include "padic_kas/cantor.hpp"
#include "padic_kas/cylinder.hpp"
#include "padic_kas/error.hpp"
#include "padic_kas/interleave.hpp"
#include "padic_kas/padic.hpp"
#include "padic_kas/rational.hpp"
#include "padic_kas/superposition.hpp"
#include "padic_kas/table_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace padic_kas {

/// Case spaces up to this size are enumerated; larger ones are sampled.
inline constexpr std::uint64_t exhaustive_limit = 1'000'000;

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"roundtrip", "chain",     "real-identity",  "padic-identity",  "combine-bound",
                                                "interleave-bound",    "holder",    "extension", "refinement"};
    return names;
}

struct RunConfig {
    std::uint32_t p = 2;
    std::uint32_t n = 2;
    std::size_t K = 3;
    std::string function;    // builtin name; empty picks each suite's default
    std::string table_path;  // table file, overrides `function`
    std::vector<std::string> suites{"all"};
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 0;
    WeightConvention weights = WeightConvention::unit;

    CylinderShape shape() const { return {p, n, K}; }
};

inline void validate(const RunConfig& c) {
    if (!is_prime(c.p)) raise(errc::config_error, "p=" + std::to_string(c.p) + " is not prime");
    if (c.n < 1) raise(errc::config_error, "n must be at least 1");
    if (c.K < 1) raise(errc::config_error, "K must be at least 1");
    if (c.suites.empty()) raise(errc::config_error, "no suite selected");
    for (const auto& s : c.suites)
        if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            raise(errc::config_error, "unknown suite '" + s + "'");
}

struct Counterexample {
    std::vector<std::string> inputs;
    std::string lhs;
    std::string rhs;
};

struct CheckResult {
    std::string name;
    bool exhaustive = true;
    std::uint64_t cases = 0;
    std::uint64_t failure_count = 0;
    std::vector<Counterexample> failures;  // first max_recorded_failures of them

    bool pass() const noexcept { return failure_count == 0; }
};

inline constexpr std::size_t max_recorded_failures = 100;

struct VerificationReport {
    std::vector<std::string> suites;
    RunConfig config;
    std::vector<CheckResult> checks;
    double wall_seconds = 0;

    bool pass() const noexcept {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
    }
    std::uint64_t cases() const noexcept {
        std::uint64_t total = 0;
        for (const auto& c : checks) total += c.cases;
        return total;
    }
    const CheckResult* find(std::string_view name) const noexcept {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Deterministic JSON form. Wall time is left out unless asked for, so two
/// runs with the same config serialize byte-identically.
inline nlohmann::json to_json(const VerificationReport& r, bool include_timing = false) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json failures = nlohmann::json::array();
        for (const auto& f : c.failures) failures.push_back({{"inputs", f.inputs}, {"lhs", f.lhs}, {"rhs", f.rhs}});
        checks.push_back({{"name", c.name},
                          {"mode", c.exhaustive ? "exhaustive" : "sampled"},
                          {"cases", c.cases},
                          {"failure_count", c.failure_count},
                          {"failures", failures},
                          {"pass", c.pass()}});
    }
    nlohmann::json out{{"suites", r.suites},
                       {"parameters",
                        {{"p", r.config.p},
                         {"n", r.config.n},
                         {"K", r.config.K},
                         {"function", r.config.function},
                         {"table", r.config.table_path},
                         {"samples", r.config.samples},
                         {"seed", r.config.seed},
                         {"weights", std::string(weight_name(r.config.weights))}}},
                       {"checks", checks},
                       {"cases", r.cases()},
                       {"pass", r.pass()}};
    if (include_timing) out["wall_seconds"] = r.wall_seconds;
    return out;
}

namespace detail {

using CaseBody = std::function<std::optional<Counterexample>(std::span<const digit_t>)>;

/// Runs `body` over every digit vector in [0,p)^width when that space has at
/// most exhaustive_limit elements, otherwise over `samples` random ones.
inline CheckResult run_cases(std::string name, std::uint32_t p, std::size_t width, std::uint64_t samples,
                             std::mt19937_64& rng, const CaseBody& body) {
    CheckResult result{std::move(name)};
    auto space = checked_pow(p, width);
    result.exhaustive = space && *space <= exhaustive_limit;
    std::vector<digit_t> digits(width, 0);
    auto record = [&](std::optional<Counterexample> failure) {
        ++result.cases;
        if (!failure) return;
        ++result.failure_count;
        if (result.failures.size() < max_recorded_failures) result.failures.push_back(std::move(*failure));
    };
    if (result.exhaustive) {
        for (std::uint64_t c = 0; c < *space; ++c) {
            auto v = c;
            for (auto& d : digits) {
                d = static_cast<digit_t>(v % p);
                v /= p;
            }
            record(body(digits));
        }
    } else {
        std::uniform_int_distribution<digit_t> digit(0, p - 1);
        for (std::uint64_t s = 0; s < samples; ++s) {
            for (auto& d : digits) d = digit(rng);
            record(body(digits));
        }
    }
    return result;
}

inline TruncatedPadicInt padic_from(std::span<const digit_t> digits, std::uint32_t p) {
    return {p, digits.size(), std::vector<digit_t>(digits.begin(), digits.end())};
}

inline PadicPoint point_from(std::span<const digit_t> digits, std::uint32_t p, std::uint32_t n, std::size_t K) {
    std::vector<TruncatedPadicInt> coords;
    for (std::uint32_t k = 0; k < n; ++k) coords.push_back(padic_from(digits.subspan(k * K, K), p));
    return PadicPoint(std::move(coords));
}

inline CantorValue cantor_from(std::span<const digit_t> digits, std::uint32_t p, std::uint32_t n) {
    std::vector<digit_t> d(digits.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = n * digits[i];
    return {p, n, std::move(d)};
}

inline std::vector<std::string> point_text(const PadicPoint& x) {
    std::vector<std::string> out;
    for (const auto& c : x.coords()) out.push_back(to_string(c));
    return out;
}

inline std::string double_text(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::size_t extract_prefix_guarantee(std::size_t shared, std::size_t k, std::size_t n) {
    return shared < k ? 0 : (shared - k + n - 1) / n;
}

inline CylinderFunction resolve_function(const RunConfig& c, Codomain codomain, std::string_view fallback) {
    if (!c.table_path.empty()) {
        auto f = load_table_file(c.table_path);
        if (!(f.shape() == c.shape()))
            raise(errc::config_error, "table shape (p, n, K) differs from the configured one");
        if (f.codomain() == codomain) return f;
    } else if (!c.function.empty()) {
        // `zero` fits either codomain; other builtins only their own.
        if (c.function == "zero") return make_builtin("zero", c.shape(), codomain);
        auto f = make_builtin(c.function, c.shape());
        if (f.codomain() == codomain) return f;
    }
    return make_builtin(fallback, c.shape(), codomain);
}

// --- suites ----------------------------------------------------------------

inline void suite_roundtrip(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const auto p = c.p;
    const auto n = c.n;
    const auto K = c.K;
    const std::size_t nK = n * K;
    out.push_back(run_cases("cantor-roundtrip", p, nK, c.samples, rng, [&](auto d) -> std::optional<Counterexample> {
        auto x = padic_from(d, p);
        auto via_encode = cantor_decode(cantor_encode(x, n));
        auto via_phi = phi_full_inverse(phi_full(x, n));
        if (via_encode == x && via_phi == x) return std::nullopt;
        return Counterexample{{to_string(x)}, to_string(via_encode) + " " + to_string(via_phi), to_string(x)};
    }));
    out.push_back(run_cases("deinterleave-interleave", p, nK, c.samples, rng,
                            [&](auto d) -> std::optional<Counterexample> {
                                auto x = point_from(d, p, n, K);
                                auto back = deinterleave(interleave(x));
                                if (back == x) return std::nullopt;
                                auto lhs = point_text(back);
                                return Counterexample{point_text(x), lhs.front(), point_text(x).front()};
                            }));
    out.push_back(run_cases("interleave-deinterleave", p, nK, c.samples, rng,
                            [&](auto d) -> std::optional<Counterexample> {
                                InterleavedPadic z(padic_from(d, p), n);
                                auto back = interleave(deinterleave(z));
                                if (back == z) return std::nullopt;
                                return Counterexample{{to_string(z.value())}, to_string(back.value()),
                                                      to_string(z.value())};
                            }));
}

inline void suite_chain(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const auto p = c.p;
    const auto n = c.n;
    const auto K = c.K;
    out.push_back(run_cases("chain", p, n * K, c.samples, rng, [&](auto d) -> std::optional<Counterexample> {
        auto x = point_from(d, p, n, K);
        std::vector<CantorValue> parts;
        for (const auto& xi : x.coords()) parts.push_back(cantor_encode(xi, n));
        auto z = combine(parts);
        std::vector<TruncatedPadicInt> back;
        for (std::size_t k = 0; k < n; ++k) back.push_back(cantor_decode(extract(z, k)));
        PadicPoint y(std::move(back));
        auto direct = superposition_argument(x);
        if (y == x && direct == z) return std::nullopt;
        return Counterexample{point_text(x), to_string(z) + " " + point_text(y).front(), to_string(direct)};
    }));
}

inline void suite_real_identity(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    auto f = resolve_function(c, Codomain::real, "norm-product");
    auto g = build_g(f);
    out.push_back(run_cases("real-identity:" + f.name(), c.p, c.n * c.K, c.samples, rng,
                            [&](auto d) -> std::optional<Counterexample> {
                                auto x = point_from(d, c.p, c.n, c.K);
                                const double lhs = superpose1(g, x);
                                const double rhs = f.eval_real(x);
                                if (std::bit_cast<std::uint64_t>(lhs) == std::bit_cast<std::uint64_t>(rhs))
                                    return std::nullopt;
                                return Counterexample{point_text(x), double_text(lhs), double_text(rhs)};
                            }));
}

inline void suite_padic_identity(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    auto f = resolve_function(c, Codomain::padic, "padic-sum");
    auto h = build_h(f, c.weights);
    out.push_back(run_cases("padic-identity:" + f.name(), c.p, c.n * c.K, c.samples, rng,
                            [&](auto d) -> std::optional<Counterexample> {
                                auto x = point_from(d, c.p, c.n, c.K);
                                auto lhs = superpose2(h, x);
                                auto rhs = f.eval_padic(x);
                                if (lhs == rhs) return std::nullopt;
                                return Counterexample{point_text(x), to_string(lhs), to_string(rhs)};
                            }));
}

/// The bound is stated for two parts, so this suite always uses arity 2 and
/// Cantor points of K digits per coordinate.
inline void suite_combine_bound(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const auto p = c.p;
    const std::uint32_t n = 2;
    const auto L = c.K;
    const auto q = cantor_base(p, n);
    const Rational stated(BigInt(q * q - 1), BigInt(2) * (p - 1) * (p - 1));
    const Rational sharp(BigInt(q * q));
    auto check = [&](std::string name, const Rational& constant) {
        return run_cases(std::move(name), p, 4 * L, c.samples, rng, [&, constant](auto d) -> std::optional<Counterexample> {
            auto x1 = cantor_from(d.subspan(0, L), p, n);
            auto y1 = cantor_from(d.subspan(L, L), p, n);
            auto x2 = cantor_from(d.subspan(2 * L, L), p, n);
            auto y2 = cantor_from(d.subspan(3 * L, L), p, n);
            std::vector<CantorValue> a{x1, y1};
            std::vector<CantorValue> b{x2, y2};
            Rational image = abs(cantor_to_rational(combine(a)) - cantor_to_rational(combine(b)));
            Rational dx = cantor_to_rational(x1) - cantor_to_rational(x2);
            Rational dy = cantor_to_rational(y1) - cantor_to_rational(y2);
            Rational bound = constant * (dx * dx + dy * dy);
            if (image <= bound) return std::nullopt;
            return Counterexample{{to_string(x1), to_string(y1), to_string(x2), to_string(y2)}, to_string(image),
                                  to_string(bound)};
        });
    };
    out.push_back(check("combine-bound", stated));
    out.push_back(check("combine-bound-sharp", sharp));
}

inline void suite_interleave_bound(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const auto p = c.p;
    const auto n = c.n;
    const auto K = c.K;
    const std::size_t nK = n * K;
    out.push_back(run_cases("interleave-bound", p, 2 * nK, c.samples, rng, [&](auto d) -> std::optional<Counterexample> {
        auto a = point_from(d.subspan(0, nK), p, n, K);
        auto b = point_from(d.subspan(nK, nK), p, n, K);
        Rational image = padic_norm(padic_sub(interleave(a).value(), interleave(b).value()));
        Rational dist = point_distance(a, b);
        Rational bound = 1;
        for (std::uint32_t i = 0; i < n; ++i) bound *= dist;
        if (image <= bound) return std::nullopt;
        auto inputs = point_text(a);
        for (auto& s : point_text(b)) inputs.push_back(s);
        return Counterexample{inputs, to_string(image), to_string(bound)};
    }));
}

inline void suite_holder(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    const auto p = c.p;
    const auto n = c.n;
    const auto K = c.K;
    const auto q = cantor_base(p, n);
    out.push_back(run_cases("encode-prefix", p, 2 * K, c.samples, rng, [&](auto d) -> std::optional<Counterexample> {
        auto x = padic_from(d.subspan(0, K), p);
        auto y = padic_from(d.subspan(K, K), p);
        const auto shared = x.common_prefix(y);
        auto ex = cantor_encode(x, n);
        auto ey = cantor_encode(y, n);
        Rational gap = abs(cantor_to_rational(ex) - cantor_to_rational(ey));
        Rational bound(BigInt(1), big_pow(q, shared));
        if (ex.common_prefix(ey) >= shared && gap <= bound) return std::nullopt;
        return Counterexample{{to_string(x), to_string(y)}, to_string(gap), to_string(bound)};
    }));
    out.push_back(run_cases("extract-prefix", p, 2 * K, c.samples, rng, [&](auto d) -> std::optional<Counterexample> {
        auto z = cantor_from(d.subspan(0, K), p, n);
        auto w = cantor_from(d.subspan(K, K), p, n);
        const auto shared = z.common_prefix(w);
        for (std::size_t k = 0; k < n; ++k) {
            auto need = extract_prefix_guarantee(shared, k, n);
            auto got = extract(z, k).common_prefix(extract(w, k));
            if (got < need)
                return Counterexample{{to_string(z), to_string(w), std::to_string(k)}, std::to_string(got),
                                      std::to_string(need)};
        }
        return std::nullopt;
    }));
    out.push_back(run_cases("deinterleave-prefix", p, 2 * n * K, c.samples, rng,
                            [&](auto d) -> std::optional<Counterexample> {
                                InterleavedPadic z(padic_from(d.subspan(0, n * K), p), n);
                                InterleavedPadic w(padic_from(d.subspan(n * K, n * K), p), n);
                                const auto shared = z.value().common_prefix(w.value());
                                for (std::size_t k = 0; k < n; ++k) {
                                    auto need = extract_prefix_guarantee(shared, k, n);
                                    auto got = deinterleave_k(z, k).common_prefix(deinterleave_k(w, k));
                                    if (got < need)
                                        return Counterexample{
                                            {to_string(z.value()), to_string(w.value()), std::to_string(k)},
                                            std::to_string(got), std::to_string(need)};
                                }
                                return std::nullopt;
                            }));
}

inline void suite_extension(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    auto f = resolve_function(c, Codomain::real, "norm-product");
    auto g = build_g(f);
    auto pieces = gap_pieces(g);
    CheckResult result{"extension:" + f.name()};
    std::vector<std::size_t> chosen;
    if (pieces.size() <= exhaustive_limit) {
        for (std::size_t i = 0; i < pieces.size(); ++i) chosen.push_back(i);
    } else {
        result.exhaustive = false;
        std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
        for (std::uint64_t s = 0; s < c.samples; ++s) chosen.push_back(pick(rng));
    }
    for (auto i : chosen) {
        const auto& piece = pieces[i];
        const Rational lo = to_rational(piece.left_value);
        const Rational hi = to_rational(piece.right_value);
        const Rational mid = (piece.left + piece.right) / 2;
        const Rational quarter = piece.left + (piece.right - piece.left) / 4;
        std::string what;
        if (eval_g_exact(g, piece.left) != piece.at(piece.left) || piece.at(piece.left) != lo)
            what = "left endpoint";
        else if (eval_g_exact(g, piece.right) != piece.at(piece.right) || piece.at(piece.right) != hi)
            what = "right endpoint";
        else if (eval_g_exact(g, mid) != (lo + hi) / 2)
            what = "midpoint";
        else if (eval_g_exact(g, quarter) != lo + (hi - lo) / 4)
            what = "quarter point";
        ++result.cases;
        if (what.empty()) continue;
        ++result.failure_count;
        if (result.failures.size() < max_recorded_failures)
            result.failures.push_back({{to_string(piece.left), to_string(piece.right), what},
                                       double_text(piece.left_value), double_text(piece.right_value)});
    }
    out.push_back(std::move(result));
}

inline void suite_refinement(const RunConfig& c, std::mt19937_64& rng, std::vector<CheckResult>& out) {
    auto f = resolve_function(c, Codomain::real, "norm-product");
    auto coarse = build_g(f);
    auto fine = build_g(f.lifted(1));
    const auto p = c.p;
    const auto n = c.n;
    const std::size_t L = n * c.K;
    out.push_back(run_cases("refinement:" + f.name(), p, L, c.samples, rng,
                            [&](auto d) -> std::optional<Counterexample> {
                                auto prefix = cantor_from(d, p, n);
                                auto t = cantor_to_rational(prefix);
                                const double want = eval_g(coarse, t);
                                const double got = eval_g(fine, t);
                                bool ok = std::bit_cast<std::uint64_t>(want) == std::bit_cast<std::uint64_t>(got);
                                // Every level-(K+1) refinement of the prefix carries the same value.
                                const auto base = cantor_prefix_index(prefix) * pow_or_throw(p, n);
                                for (std::uint64_t child = 0; ok && child < pow_or_throw(p, n); ++child)
                                    ok = std::bit_cast<std::uint64_t>(fine.at_index(base + child)) ==
                                         std::bit_cast<std::uint64_t>(want);
                                if (ok) return std::nullopt;
                                return Counterexample{{to_string(prefix)}, double_text(got), double_text(want)};
                            }));
}

}  // namespace detail

/// Runs the selected suites. Every check draws from one generator seeded with
/// config.seed, in suite order, so reports are reproducible.
inline VerificationReport run_verify(const RunConfig& config) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> selected;
    for (const auto& name : suite_names())
        if (std::find(config.suites.begin(), config.suites.end(), "all") != config.suites.end() ||
            std::find(config.suites.begin(), config.suites.end(), name) != config.suites.end())
            selected.push_back(name);

    VerificationReport report{selected, config, {}, 0};
    std::mt19937_64 rng(config.seed);
    using Suite = void (*)(const RunConfig&, std::mt19937_64&, std::vector<CheckResult>&);
    const std::vector<std::pair<std::string, Suite>> table{
        {"roundtrip", detail::suite_roundtrip}, {"chain", detail::suite_chain},
        {"real-identity", detail::suite_real_identity},   {"padic-identity", detail::suite_padic_identity},
        {"combine-bound", detail::suite_combine_bound},       {"interleave-bound", detail::suite_interleave_bound},
        {"holder", detail::suite_holder},       {"extension", detail::suite_extension},
        {"refinement", detail::suite_refinement}};
    for (const auto& [name, run] : table)
        if (std::find(selected.begin(), selected.end(), name) != selected.end()) run(config, rng, report.checks);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace padic_kas
