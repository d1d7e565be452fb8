#ifndef GEOMREP_GEOMREP_HPP
#define GEOMREP_GEOMREP_HPP

#include "geomrep/autsolver.hpp"
#include "geomrep/constructions.hpp"
#include "geomrep/coset.hpp"
#include "geomrep/error.hpp"
#include "geomrep/freegroup.hpp"
#include "geomrep/galois.hpp"
#include "geomrep/incidence.hpp"
#include "geomrep/interchange.hpp"
#include "geomrep/perm_group.hpp"
#include "geomrep/permutation.hpp"
#include "geomrep/projective.hpp"
#include "geomrep/report.hpp"

#endif // GEOMREP_GEOMREP_HPP
