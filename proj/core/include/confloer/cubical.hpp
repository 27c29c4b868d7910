#ifndef CONFLOER_CUBICAL_HPP
#define CONFLOER_CUBICAL_HPP

#include "confloer/chain_complex.hpp"
#include "confloer/transition.hpp"

namespace confloer {

/// Chain complex of the cubical pair: all faces of the full cubes in
/// `n_cubes`, modulo the subcomplex generated by the cubes of `l_cubes`
/// and their faces.  Gradings are cube dimensions.
GradedChainComplex relative_cubical_complex(const GridGeometry& grid, const CellSet& n_cubes,
                                            const CellSet& l_cubes,
                                            Coefficients coeffs = Coefficients::integers());

} // namespace confloer

#endif
