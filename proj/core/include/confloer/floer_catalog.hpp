#ifndef CONFLOER_FLOER_CATALOG_HPP
#define CONFLOER_FLOER_CATALOG_HPP

#include <string>
#include <vector>

#include "confloer/equivariant.hpp"

namespace confloer {

/// Built-in equivariant complexes: "S3", "Sigma_2_3_5", "Sigma_2_3_11",
/// in both flavors.  S3 and Sigma_2_3_5 are tower-only (n = 0 and n = -1);
/// Sigma_2_3_11 carries the irreducibles in grading 1 with differentials
/// onto the tower bottom (two S1-orbits; one Pin2-orbit).
EquivariantComplex catalog_complex(const std::string& name, Flavor flavor, long p = 2);
std::vector<std::string> floer_catalog_names();

} // namespace confloer

#endif
