// Flops the rank-2 fixture, checks that the three-point function continues
// across the wall, and prints the two chambers of the movable cone.

#include "chamber/descriptor.hpp"

#include <iostream>

using namespace chamber;

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : CHAMBER_FIXTURES "/flop_fixture.json";
    try {
        const ModelChart x = load_descriptor(path);
        const ModelChart y = flop(x, 0);

        std::cout << "chart " << x.id << ": nef " << format_vector(x.nef.rays()[0]) << " "
                  << format_vector(x.nef.rays()[1]) << ", c111 = " << x.cubic.coefficient(0, 0, 0) << "\n";
        std::cout << "chart " << y.id << ": nef " << format_vector(y.nef.rays()[0]) << " "
                  << format_vector(y.nef.rays()[1]) << ", c111 = " << y.cubic.coefficient(0, 0, 0) << "\n";

        const DivisorClass a{1, 0}, c{0, 1};
        std::cout << "<A,A,C> on " << x.id << ": " << three_point_series(x, a, a, c, 4).render() << "\n";
        std::cout << "<A,A,C> on " << y.id << ": " << three_point_series(y, a, a, c, 4).render() << "\n";

        const LemmaReport lemma = verify_flop_lemma(x, x.walls[0], a, a, c);
        std::cout << "continuation: " << lemma.lhs.str() << " vs " << lemma.rhs.str() << " -> "
                  << (lemma.holds() ? "same function" : "MISMATCH") << "\n";

        const Atlas atlas{{x, y}, {{x.id, y.id, 0}}};
        const Cone mov = movable_cone(atlas);
        std::cout << "movable cone rays:";
        for (const auto& r : mov.rays()) std::cout << " " << format_vector(r);
        std::cout << "\n";
        return lemma.holds() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
