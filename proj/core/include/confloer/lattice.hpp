#ifndef CONFLOER_LATTICE_HPP
#define CONFLOER_LATTICE_HPP

#include <string>
#include <vector>

#include "confloer/chain_complex.hpp"

namespace confloer {

/// Negative-definite intersection form: m copies of <-1> plus even
/// negative-definite blocks given by integer Gram matrices.
struct IntersectionForm {
    int diagonal_count = 0;                 // m
    std::vector<ExactMatrix> even_blocks;   // symmetric, even diagonal, negative definite

    void validate() const; // NotNegativeDefinite / InvalidInput
    int rank() const;
    int signature() const { return -rank(); }
};

/// Gram matrix of -E8 (the E8 Cartan matrix negated).
ExactMatrix minus_e8_gram();

struct CharMinResult {
    mpz_class value;       // min |c . Q c| over characteristic vectors
    bool exact = true;     // false when a bounded search was used
    int bound_used = 0;
};

/// Minimum of |c.Qc| over characteristic vectors c.  Exact for the
/// supported structure (each <-1> contributes 1, each even block 0); a
/// general odd block falls back to a bounded coordinate search and is
/// flagged as such.
CharMinResult char_min_abs_square(const IntersectionForm& f, int bound = 3);

struct FroyshovCheck {
    bool allowed = false;
    mpz_class required;    // (|sigma| - char_min)/8, the best case over spin-c structures
    mpz_class margin;      // h - required
    CharMinResult char_min;
};

/// h(boundary) >= (c1^2 + |sigma|)/8 test with Y0 = S3.
FroyshovCheck froyshov_inequality_check(long h_boundary, const IntersectionForm& f, int bound = 3);

struct FurutaCheck {
    bool satisfied = false;
    // 8*b2 versus 10*|sigma| + 16, kept exact
    long lhs_times_8 = 0;
    long rhs_times_8 = 0;
};

/// b2 >= (10/8)|sigma| + 2, exact rational comparison.
FurutaCheck furuta_bound_check(long b2, long sigma);

struct SmithCheck {
    bool satisfied = false;
    long fixed_total = 0;
    long total_total = 0;
};

/// Total F_p dimension of the fixed-set homology against the total space.
SmithCheck smith_inequality_check(const GradedHomology& total, const GradedHomology& fixed);

} // namespace confloer

#endif
