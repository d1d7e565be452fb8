// Cross-ratios on a line of PG(2,4) and the orders found by restriction-extension.
#include <iostream>

#include "geomrep/geomrep.hpp"

int main() {
    using namespace geomrep;
    auto field = make_field(2, 2);
    auto geom = pgl_cross_ratio_geometry(3, field);
    std::cout << "elements " << geom.system.size() << ", types";
    for (const auto& t : geom.system.types()) std::cout << ' ' << t;
    std::cout << '\n';

    const auto& q = geom.quadruples.front();
    std::cout << "first quadruple:";
    for (auto p : q) std::cout << ' ' << geom.space.format(geom.space.point(p));
    std::cout << " -> " << field.format(geom.values.front()) << '\n';

    auto analysis = analyse_by_extension(geom);
    std::cout << "subspace truncation: |Aut| " << analysis.truncation.aut_order << ", |Aut_I| "
              << analysis.truncation.aut_i_order << '\n';
    std::cout << "extended: |Aut| " << analysis.extended.aut_order << ", |Aut_I| " << analysis.extended.aut_i_order
              << '\n';
    for (const auto& attempt : analysis.coset_attempts) {
        std::cout << "duality: " << (attempt.map ? "extends" : attempt.reason) << '\n';
    }
}
