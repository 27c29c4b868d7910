#ifndef CONFLOER_EXACT_MATRIX_HPP
#define CONFLOER_EXACT_MATRIX_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "confloer/error.hpp"

namespace confloer {

/// Coefficient ring tag: the integers, or the prime field F_p.
struct Coefficients {
    enum class Ring { Integers, ModP };
    Ring ring = Ring::Integers;
    long p = 0; // prime when ring == ModP

    static Coefficients integers() { return {Ring::Integers, 0}; }
    static Coefficients mod_p(long p);

    bool is_integers() const { return ring == Ring::Integers; }
    bool is_mod_p() const { return ring == Ring::ModP; }
    bool operator==(const Coefficients&) const = default;
};

/// Exact sparse matrix over Z (arbitrary precision) or F_p.
/// Entries are stored column-wise; zero entries are absent.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols, Coefficients coeffs = Coefficients::integers());

    static ExactMatrix identity(int n, Coefficients coeffs = Coefficients::integers());

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Coefficients& coefficients() const { return coeffs_; }

    mpz_class at(int r, int c) const;
    void set(int r, int c, const mpz_class& v);
    void add_to(int r, int c, const mpz_class& v);

    const std::map<int, mpz_class>& column(int c) const { return columns_[c]; }
    std::size_t nonzero_count() const;
    bool is_zero() const;

    ExactMatrix transposed() const;
    ExactMatrix multiplied_by(const ExactMatrix& rhs) const;

    // Elementary operations (used by the normal form routines).
    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row_multiple(int dst, int src, const mpz_class& factor);   // row dst += factor * row src
    void add_col_multiple(int dst, int src, const mpz_class& factor);   // col dst += factor * col src
    void negate_row(int i);
    void negate_col(int i);

    bool operator==(const ExactMatrix& other) const;

private:
    mpz_class normalized(mpz_class v) const;

    int rows_, cols_;
    Coefficients coeffs_;
    std::vector<std::map<int, mpz_class>> columns_; // columns_[c][r] = entry
};

/// Rank over F_p by Gaussian elimination (matrix may be tagged Z; entries
/// are reduced mod p first).
int rank_mod_p(const ExactMatrix& m, long p);

} // namespace confloer

#endif
