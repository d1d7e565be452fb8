// Subgroups of F_2 from the rose cover: ranks, intersections and the action of K.
#include <iostream>

#include "geomrep/geomrep.hpp"

int main() {
    using namespace geomrep;
    using namespace geomrep::free;
    auto family = rose_cover_family(2);
    for (std::size_t i = 0; i < family.generators.size(); ++i) {
        std::cout << "s" << i + 1 << " = " << format(family.generators[i]) << ", G_s rank " << family.graphs[i].rank()
                  << '\n';
    }
    auto whole = stallings_graph(2, family.generators);
    std::cout << "<S>: " << whole.vertex_count() << " vertices, " << whole.edge_count() << " edges, rank " << whole.rank()
              << '\n';
    std::cout << "G_1 meet G_2 rank " << parabolic_intersection(family, {0, 1}).rank() << '\n';
    auto action = subgroup_action(k_group(2), family);
    for (const auto& p : action.permutations) std::cout << "K generator on subgroups: " << p.cycles() << '\n';
    std::cout << "|K image| = " << action.group.order() << '\n';
    std::cout << "residually connected: " << (rc_check_exact(family).pass ? "yes" : "no") << '\n';
}
