#pragma once

#include "padic_kas/cantor.hpp"
#include "padic_kas/cylinder.hpp"
#include "padic_kas/emit.hpp"
#include "padic_kas/error.hpp"
#include "padic_kas/interleave.hpp"
#include "padic_kas/padic.hpp"
#include "padic_kas/superposition.hpp"
#include "padic_kas/table_io.hpp"
#include "padic_kas/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace padic_kas {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_usage = 2;

namespace detail {

struct FunctionArgs {
    std::uint32_t p = 2;
    std::uint32_t n = 2;
    std::size_t K = 1;
    std::string function;
    std::string table;
    std::string weights = "unit";
    std::string codomain;
};

inline void add_function_options(CLI::App& cmd, FunctionArgs& a) {
    cmd.add_option("--p", a.p, "prime p");
    cmd.add_option("--n", a.n, "arity n");
    cmd.add_option("--K", a.K, "level K (digits per coordinate)");
    auto* fn = cmd.add_option("--function", a.function, "builtin: zero, proj-k, padic-sum, norm-k, norm-product, digit0-k");
    auto* tb = cmd.add_option("--table", a.table, "JSON table file");
    fn->excludes(tb);
    cmd.add_option("--codomain", a.codomain, "codomain for `zero`: real or padic")->check(CLI::IsMember({"real", "padic"}));
    cmd.add_option("--weights", a.weights, "weights in the p-adic superposition: unit (p^0..p^(n-1)) or shifted (p^1..p^n)")
        ->check(CLI::IsMember({"unit", "shifted"}));
}

inline WeightConvention parse_weights(const std::string& w) {
    return w == "shifted" ? WeightConvention::shifted : WeightConvention::unit;
}

inline CylinderFunction resolve(const FunctionArgs& a, std::optional<Codomain> want) {
    if (!a.table.empty()) return load_table_file(a.table);
    if (a.function.empty()) raise(errc::config_error, "one of --function or --table is required");
    if (!is_prime(a.p)) raise(errc::config_error, "p=" + std::to_string(a.p) + " is not prime");
    if (a.n < 1 || a.K < 1) raise(errc::config_error, "n and K must be at least 1");
    std::optional<Codomain> codomain = want;
    if (a.codomain == "real") codomain = Codomain::real;
    if (a.codomain == "padic") codomain = Codomain::padic;
    return make_builtin(a.function, {a.p, a.n, a.K}, codomain);
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) raise(errc::io_error, "cannot open '" + path + "' for writing");
    file << text;
    if (!file) raise(errc::io_error, "write to '" + path + "' failed");
}

inline std::vector<std::string> split_commas(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) out.push_back(part);
    }
    return out;
}

inline PadicPoint parse_point(const std::vector<std::string>& xs) {
    std::vector<TruncatedPadicInt> coords;
    for (const auto& x : xs) coords.push_back(parse_padic(x));
    return PadicPoint(std::move(coords));
}

}  // namespace detail

/// Runs the command line. Returns 0 on success, 1 when a verification suite
/// finds a counterexample, 2 on usage, configuration or input errors.
inline int cli_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
    CLI::App app{"Cantor codecs, p-adic interleaving and one-variable superpositions"};
    app.require_subcommand(1);
    int status = exit_ok;

    // encode / decode: phi_full and its inverse.
    std::string x_text, cantor_text, z_text;
    std::uint32_t n = 2;
    auto* encode = app.add_subcommand("encode", "x -> phi(x) = sum n*x_i q^(-n*i-1) (spread layout)");
    encode->add_option("--x", x_text, "p-adic integer p:K:d0,...")->required();
    encode->add_option("--n", n, "arity");
    auto* decode = app.add_subcommand("decode", "inverse of encode");
    decode->add_option("--cantor", cantor_text, "Cantor value q:L:d0,...")->required();
    decode->add_option("--n", n, "arity");
    auto* phi = app.add_subcommand("phi", "x -> varphi(x) = sum n*x_i q^(-i-1)");
    phi->add_option("--x", x_text, "p-adic integer p:K:d0,...")->required();
    phi->add_option("--n", n, "arity");
    std::uint32_t p_check = 0;
    phi->add_option("--p", p_check, "expected prime (checked against --x)");
    encode->add_option("--p", p_check, "expected prime (checked against --x)");
    auto* psi = app.add_subcommand("psi", "inverse of phi");
    psi->add_option("--cantor", cantor_text, "Cantor value q:L:d0,...")->required();
    psi->add_option("--n", n, "arity");

    std::vector<std::string> point_texts;
    std::string weights_text = "unit";
    auto* inter = app.add_subcommand("interleave", "(x_1..x_n) -> sum_k p^k omega(x_{k+1})");
    inter->add_option("--x", point_texts, "coordinates, repeat once per coordinate")->required();
    inter->add_option("--weights", weights_text, "unit or shifted")->check(CLI::IsMember({"unit", "shifted"}));
    auto* deinter = app.add_subcommand("deinterleave", "z -> (sigma_0(z), ..., sigma_{n-1}(z))");
    deinter->add_option("--z", z_text, "p-adic integer of precision n*K")->required();
    deinter->add_option("--n", n, "arity");

    detail::FunctionArgs fa;
    std::string out_path;
    auto* bg = app.add_subcommand("build-g", "tabulate g for a real-valued cylinder function");
    detail::add_function_options(*bg, fa);
    bg->add_option("--out", out_path, "output JSON path (stdout if omitted)");
    auto* bh = app.add_subcommand("build-h", "tabulate h for a p-adic valued cylinder function");
    detail::add_function_options(*bh, fa);
    bh->add_option("--out", out_path, "output JSON path (stdout if omitted)");
    auto* sp = app.add_subcommand("superpose", "evaluate f(x) through its univariate representative");
    detail::add_function_options(*sp, fa);
    sp->add_option("--x", point_texts, "coordinates, repeat once per coordinate")->required();

    RunConfig config;
    std::vector<std::string> suites;
    std::string report_path;
    bool json_to_stdout = false;
    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("--p", config.p, "prime p");
    ver->add_option("--n", config.n, "arity n");
    ver->add_option("--K", config.K, "level K");
    ver->add_option("--suite", suites, "all, or any of: roundtrip chain real-identity padic-identity combine-bound interleave-bound holder extension refinement");
    ver->add_option("--function", config.function, "builtin function for the identity suites");
    ver->add_option("--table", config.table_path, "table file for the identity suites");
    ver->add_option("--samples", config.samples, "sample count when a case space exceeds 10^6");
    auto* seed_opt = ver->add_option("--seed", config.seed, "random seed (default 0, or $PADIC_KAS_SEED)");
    ver->add_option("--weights", weights_text, "unit or shifted")->check(CLI::IsMember({"unit", "shifted"}));
    ver->add_option("--out", report_path, "write the JSON report here");
    ver->add_flag("--json", json_to_stdout, "print the JSON report on stdout");

    std::uint32_t ep = 2, en = 2;
    std::size_t level = 1;
    auto* emit = app.add_subcommand("emit-cantor", "CSV of the level-L Cantor cell left endpoints");
    emit->add_option("--p", ep, "prime p")->required();
    emit->add_option("--n", en, "arity n");
    emit->add_option("--L", level, "level L")->required();
    emit->add_option("--out", out_path, "output CSV path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (encode->parsed() || phi->parsed()) {
            auto x = parse_padic(x_text);
            if (p_check != 0 && p_check != x.p())
                raise(errc::config_error, "--p " + std::to_string(p_check) + " differs from the p of --x");
            auto c = encode->parsed() ? phi_full(x, n) : cantor_encode(x, n);
            out << to_string(c) << '\n' << to_string(cantor_to_rational(c)) << '\n';
        } else if (decode->parsed()) {
            out << to_string(phi_full_inverse(parse_cantor(cantor_text, n))) << '\n';
        } else if (psi->parsed()) {
            out << to_string(cantor_decode(parse_cantor(cantor_text, n))) << '\n';
        } else if (inter->parsed()) {
            out << to_string(h_argument(detail::parse_point(point_texts), detail::parse_weights(weights_text))) << '\n';
        } else if (deinter->parsed()) {
            auto x = deinterleave(InterleavedPadic(parse_padic(z_text), n));
            for (const auto& c : x.coords()) out << to_string(c) << '\n';
        } else if (bg->parsed()) {
            auto g = build_g(detail::resolve(fa, Codomain::real));
            const auto& s = g.shape();
            nlohmann::json doc{{"p", s.p}, {"n", s.n}, {"K", s.K}, {"level", g.level()}, {"base", g.base()}};
            doc["table"] = nlohmann::json::array();
            for (std::uint64_t j = 0; j < g.size(); ++j)
                doc["table"].push_back(
                    {{"prefix", to_string(cantor_prefix_from_index(s.p, s.n, g.level(), j))}, {"value", g.at_index(j)}});
            doc["gaps"] = nlohmann::json::array();
            for (const auto& piece : gap_pieces(g))
                doc["gaps"].push_back({{"left", to_string(piece.left)},
                                       {"right", to_string(piece.right)},
                                       {"left_value", piece.left_value},
                                       {"right_value", piece.right_value}});
            detail::write_output(out_path, doc.dump(1) + "\n", out);
        } else if (bh->parsed()) {
            auto h = build_h(detail::resolve(fa, Codomain::padic), detail::parse_weights(fa.weights));
            const auto& s = h.shape();
            nlohmann::json doc{{"p", s.p}, {"n", s.n}, {"K", s.K}, {"weights", std::string(weight_name(h.weights()))}};
            doc["table"] = nlohmann::json::array();
            const std::size_t precision = static_cast<std::size_t>(s.n) * s.K;
            for (std::uint64_t z = 0; z < h.size(); ++z) {
                auto zi = TruncatedPadicInt::from_uint(s.p, precision, z);
                auto key = h.weights() == WeightConvention::unit ? zi : h_argument(deinterleave(InterleavedPadic(zi, s.n)), h.weights());
                doc["table"].push_back({{"z", to_string(key)}, {"value", to_string(h(key))}});
            }
            detail::write_output(out_path, doc.dump(1) + "\n", out);
        } else if (sp->parsed()) {
            auto f = detail::resolve(fa, std::nullopt);
            auto x = detail::parse_point(point_texts);
            if (f.codomain() == Codomain::real) {
                auto g = build_g(f);
                auto s = superposition_argument(x);
                require_matching_point(g.shape(), x);
                out << to_string(s) << '\n' << to_string(cantor_to_rational(s)) << '\n'
                    << detail::double_text(superpose1(g, x)) << '\n';
            } else {
                auto h = build_h(f, detail::parse_weights(fa.weights));
                require_matching_point(h.shape(), x);
                out << to_string(h_argument(x, h.weights())) << '\n' << to_string(superpose2(h, x)) << '\n';
            }
        } else if (ver->parsed()) {
            if (!suites.empty()) config.suites = detail::split_commas(suites);
            config.weights = detail::parse_weights(weights_text);
            if (seed_opt->count() == 0)
                if (const char* env = std::getenv("PADIC_KAS_SEED"))
                    config.seed = detail::parse_uint(env, "PADIC_KAS_SEED");
            auto report = run_verify(config);
            // With --json, stdout carries only the report.
            auto& lines = json_to_stdout ? err : out;
            for (const auto& c : report.checks)
                lines << (c.pass() ? "PASS " : "FAIL ") << c.name << ": " << c.cases << " cases ("
                    << (c.exhaustive ? "exhaustive" : "sampled") << "), " << c.failure_count << " failures\n";
            lines << (report.pass() ? "PASS" : "FAIL") << " total: " << report.cases() << " cases\n";
            err << "wall time: " << report.wall_seconds << " s\n";
            const auto json = to_json(report).dump(1) + "\n";
            if (!report_path.empty()) detail::write_output(report_path, json, out);
            if (json_to_stdout) out << json;
            status = report.pass() ? exit_ok : exit_verification_failed;
        } else if (emit->parsed()) {
            if (out_path.empty())
                emit_cantor_csv(ep, en, level, out);
            else
                emit_cantor_csv(ep, en, level, out_path);
        }
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return status;
}

}  // namespace padic_kas
