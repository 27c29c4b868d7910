#ifndef CONFLOER_FP_HPP
#define CONFLOER_FP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "confloer/error.hpp"

namespace confloer {

/// Small dense matrix over the prime field F_p, row-major.
/// Workhorse for the equivariant module computations, where per-grading
/// dimensions stay small.
class FpMatrix {
public:
    FpMatrix() : rows_(0), cols_(0), p_(2) {}
    FpMatrix(int rows, int cols, long p);

    static FpMatrix identity(int n, long p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long p() const { return p_; }

    long at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, long v);
    void add_to(int r, int c, long v) { set(r, c, at(r, c) + v); }

    FpMatrix multiplied_by(const FpMatrix& rhs) const;
    FpMatrix transposed() const;
    std::vector<long> apply(const std::vector<long>& v) const; // matrix * column
    bool is_zero() const;
    bool operator==(const FpMatrix&) const = default;

    /// Columns spanning the kernel.
    FpMatrix nullspace() const;
    int rank() const;

private:
    int rows_, cols_;
    long p_;
    std::vector<long> a_;
};

long fp_normalize(long v, long p);
long fp_inverse(long v, long p);

/// Incremental reduced column space over F_p with coordinate tracking:
/// each inserted generator is remembered, and any vector in the span can
/// be expressed in terms of the generators that were inserted.
class FpColumnSpace {
public:
    FpColumnSpace(int ambient_dim, long p) : n_(ambient_dim), p_(p) {}

    /// Insert a generator column; returns true when the dimension grew.
    bool insert(const std::vector<long>& col);
    int dim() const { return static_cast<int>(basis_.size()); }
    int generators_inserted() const { return gen_count_; }

    bool contains(const std::vector<long>& col) const;
    /// Coordinates of col over the inserted generators; nullopt when the
    /// vector is outside the span.
    std::optional<std::vector<long>> coordinates(const std::vector<long>& col) const;

    /// Basis matrix (reduced columns).
    FpMatrix basis_matrix() const;

private:
    struct Element {
        int pivot;
        std::vector<long> col;  // normalized: col[pivot] == 1
        std::vector<long> expr; // over inserted generators
    };
    void reduce(std::vector<long>& col, std::vector<long>& expr) const;

    int n_;
    long p_;
    int gen_count_ = 0;
    std::vector<Element> basis_; // kept sorted by pivot
};

/// Column space of a matrix as an FpColumnSpace.
FpColumnSpace column_space(const FpMatrix& m);

} // namespace confloer

#endif
