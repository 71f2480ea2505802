// Factors a two-variable cylinder function through one univariate g and
// samples g across [0,1], gaps included.
//
//   superpose_demo [table.json]

#include "padic_kas/padic_kas.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    using namespace padic_kas;
    const std::string path = argc > 1 ? argv[1] : PADIC_KAS_SAMPLE_DIR "/real_p2_n2_k1.json";
    try {
        auto f = load_table_file(path);
        if (f.codomain() != Codomain::real) {
            auto h = build_h(f);
            for (std::uint64_t i = 0; i < f.shape().point_count(); ++i) {
                auto x = point_from_index(f.shape(), i);
                std::cout << to_string(h_argument(x, h.weights())) << " -> " << to_string(superpose2(h, x)) << '\n';
            }
            return 0;
        }
        auto g = build_g(f);
        std::cout << "f(x) = g(s(x)):\n";
        for (std::uint64_t i = 0; i < f.shape().point_count(); ++i) {
            auto x = point_from_index(f.shape(), i);
            auto s = superposition_argument(x);
            std::cout << "  s = " << to_string(cantor_to_rational(s)) << "  g(s) = " << superpose1(g, x)
                      << "  f(x) = " << f.eval_real(x) << '\n';
        }
        std::cout << "g on a grid of [0,1]:\n";
        for (int k = 0; k <= 20; ++k) {
            Rational t(k, 20);
            std::cout << "  " << to_string(t) << '\t' << eval_g(g, t) << '\n';
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
