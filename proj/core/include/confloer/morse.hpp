#ifndef CONFLOER_MORSE_HPP
#define CONFLOER_MORSE_HPP

#include <string>
#include <vector>

#include "confloer/chain_complex.hpp"
#include "confloer/conley.hpp"

namespace confloer {

/// Critical points with Morse indices plus signed flow-line counts for
/// index-difference-one pairs.  The compactness flag is the user's
/// assertion that the connecting set is closed under broken limits; it has
/// no finite certificate and is only echoed in reports.
struct MorseData {
    struct CriticalPoint {
        std::string name;
        int index = 0; // Morse index, >= 0
    };
    struct FlowLineCount {
        std::string from; // higher-index point
        std::string to;   // index exactly one lower
        long count = 0;   // signed
    };

    std::vector<CriticalPoint> points;
    std::vector<FlowLineCount> lines;
    bool connecting_set_compact = true;

    void validate() const;
    int index_of(const std::string& name) const; // position in points
};

/// One generator per critical point in its index grading; boundary
/// matrices assembled from the flow-line counts.  d^2 is NOT assumed.
GradedChainComplex morse_boundary(const MorseData& d);

struct DSquaredReport {
    bool pass = true;
    std::string witness_from, witness_to; // generator pair with nonzero composite
    mpz_class value;
};

DSquaredReport check_d_squared(const MorseData& d);

/// Homology of the Morse complex; DSquaredNonzero (with the witness pair)
/// when the differential does not square to zero.
GradedHomology morse_homology(const MorseData& d);

struct ComparisonRow {
    int grading = 0;
    int morse_rank = 0;
    int conley_rank = 0;
};

struct FloerComparisonReport {
    bool match = false;
    std::vector<ComparisonRow> diff; // gradings where the two sides differ
    GradedHomology morse;
    GradedHomology conley;
};

/// Morse homology against the Conley index homology of the invariant set
/// isolated by n, grading by grading.
FloerComparisonReport floer_comparison(const MorseData& d, const TransitionSystem& t,
                                       const CellSet& n);

} // namespace confloer

#endif
