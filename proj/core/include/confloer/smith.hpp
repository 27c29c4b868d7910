#ifndef CONFLOER_SMITH_HPP
#define CONFLOER_SMITH_HPP

#include <vector>

#include "confloer/exact_matrix.hpp"

namespace confloer {

/// Smith normal form  left * m * right = diag(d_1, ..., d_k),
/// d_i >= 0, d_1 | d_2 | ... | d_k, transforms invertible over Z.
struct SmithResult {
    std::vector<mpz_class> diagonal; // length min(rows, cols), zeros trailing
    ExactMatrix left;
    ExactMatrix right;
};

/// Full decomposition with transforms. Pivot choice is deterministic
/// (smallest absolute value, then lowest row/column index), so the output
/// is bit-exact across runs. Integer matrices only.
SmithResult smith_normal_form(const ExactMatrix& m);

/// Diagonal only, no transforms. Same pivot rule, but tuned for the large
/// sparse boundary matrices coming out of cubical complexes.
std::vector<mpz_class> smith_diagonal(const ExactMatrix& m);

/// Number of nonzero diagonal entries (= rank over Q).
int integer_rank(const ExactMatrix& m);

} // namespace confloer

#endif
