// Correlation groups of the dihedral systems next to the holomorph orders.
#include <iostream>

#include "geomrep/geomrep.hpp"

int main() {
    using namespace geomrep;
    std::cout << "n  elements  |Aut|  |Aut_I|  n*phi(n)  geometry\n";
    for (std::size_t n = 3; n <= 12; ++n) {
        auto sys = dihedral_geometry(n);
        auto r = correlation_group(sys);
        std::cout << n << "  " << sys.size() << "  " << r.aut_order << "  " << r.aut_i_order << "  "
                  << n * euler_phi(n) << "  " << (is_geometry(sys) ? "yes" : "no") << '\n';
    }
}
