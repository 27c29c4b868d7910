#ifndef CONFLOER_CONLEY_HPP
#define CONFLOER_CONLEY_HPP

#include <string>
#include <vector>

#include "confloer/chain_complex.hpp"
#include "confloer/transition.hpp"

namespace confloer {

/// Cells of n admitting bi-infinite orbits: cells that reach a directed
/// cycle (self-loops included) within n and are reachable from one.
/// Outer-box-boundary cells are treated as outside every candidate set.
CellSet invariant_part(const TransitionSystem& t, const CellSet& n);

/// True when the invariant part keeps a one-cell collar inside n: no cell
/// of it is face-adjacent to a cell outside n or touches the box boundary.
bool is_isolating(const TransitionSystem& t, const CellSet& n);

struct ConditionReport {
    bool pass = true;
    std::string witness;
};

struct IndexPairReport {
    ConditionReport invariant_interior; // (i)
    ConditionReport exits_through_l;    // (ii)
    ConditionReport l_positively_invariant; // (iii)
    bool all() const {
        return invariant_interior.pass && exits_through_l.pass && l_positively_invariant.pass;
    }
};

/// Pair (N', L) with L contained in N'.  `verified` is set only after the
/// combinatorial index-pair conditions have been checked.
struct IndexPair {
    CellSet n_prime;
    CellSet exit_set;
    bool verified = false;
    IndexPairReport report;
};

/// N' = forward closure of the invariant part S within n, L = N' minus S.
/// Requires is_isolating(t, n); raises CollarTooThin when an S cell has a
/// direct edge leaving N' (exit condition (ii) unfixable at this
/// resolution).
IndexPair construct_index_pair(const TransitionSystem& t, const CellSet& n);

IndexPairReport verify_index_pair(const TransitionSystem& t, const IndexPair& p, const CellSet& n);

/// Relative homology of the cubical pair (closure N', closure L); reduced
/// homology of N'/L.  With L empty this is the unreduced homology of N'.
GradedHomology conley_index_homology(const TransitionSystem& t, const IndexPair& p,
                                     Coefficients coeffs = Coefficients::integers());

struct ContinuationReport {
    std::vector<GradedHomology> homologies;
    bool all_equal = true;
};

/// Verifies n isolates in every member flow, and that the index homology
/// is constant along the family.  IsolationViolated names the first
/// failing parameter index.
ContinuationReport continuation_check(const std::vector<FlowSpec>& family, const CellSet& n);

/// Setwise invariance of the constructed pair under a grid symmetry.
struct EquivarianceReport {
    bool n_prime_invariant = false;
    bool exit_set_invariant = false;
    bool pass() const { return n_prime_invariant && exit_set_invariant; }
};
EquivarianceReport check_pair_equivariance(const TransitionSystem& t, const GroupAction& action,
                                           const CellSet& n);

} // namespace confloer

#endif
