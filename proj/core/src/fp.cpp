#include "confloer/fp.hpp"

#include <algorithm>

namespace confloer {

long fp_normalize(long v, long p) {
    v %= p;
    if (v < 0) v += p;
    return v;
}

long fp_inverse(long v, long p) {
    v = fp_normalize(v, p);
    if (v == 0) fail(ErrorCode::InvalidInput, "division by zero in F_p");
    long t = 0, new_t = 1, r = p, new_r = v;
    while (new_r != 0) {
        long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return fp_normalize(t, p);
}

FpMatrix::FpMatrix(int rows, int cols, long p)
    : rows_(rows), cols_(cols), p_(p), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) fail(ErrorCode::InvalidInput, "matrix dimensions must be non-negative");
    if (p < 2) fail(ErrorCode::InvalidInput, "field characteristic must be >= 2");
}

FpMatrix FpMatrix::identity(int n, long p) {
    FpMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void FpMatrix::set(int r, int c, long v) {
    a_[static_cast<std::size_t>(r) * cols_ + c] = fp_normalize(v, p_);
}

FpMatrix FpMatrix::multiplied_by(const FpMatrix& rhs) const {
    if (cols_ != rhs.rows_) fail(ErrorCode::InvalidInput, "F_p matrix product dimension mismatch");
    if (p_ != rhs.p_) fail(ErrorCode::FieldMismatch, "F_p matrix product characteristic mismatch");
    FpMatrix out(rows_, rhs.cols_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            long v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < rhs.cols_; ++c)
                out.set(r, c, out.at(r, c) + v * rhs.at(k, c));
        }
    return out;
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix out(cols_, rows_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
    return out;
}

std::vector<long> FpMatrix::apply(const std::vector<long>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        fail(ErrorCode::InvalidInput, "F_p matrix apply dimension mismatch");
    std::vector<long> out(rows_, 0);
    for (int r = 0; r < rows_; ++r) {
        long acc = 0;
        for (int c = 0; c < cols_; ++c) acc = fp_normalize(acc + at(r, c) * v[c], p_);
        out[r] = acc;
    }
    return out;
}

bool FpMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](long v) { return v == 0; });
}

FpMatrix FpMatrix::nullspace() const {
    // Insert every column (dependent or not) so that generator indices in
    // the column space coincide with column indices; a dependent column c
    // with coordinates (a_i) over columns i < c gives the kernel vector
    // e_c - sum a_i e_i.
    FpColumnSpace space(rows_, p_);
    std::vector<std::vector<long>> kernel;
    for (int c = 0; c < cols_; ++c) {
        std::vector<long> col(rows_);
        for (int r = 0; r < rows_; ++r) col[r] = at(r, c);
        auto coords = space.coordinates(col);
        if (coords) {
            std::vector<long> k(cols_, 0);
            for (std::size_t i = 0; i < coords->size(); ++i)
                k[i] = fp_normalize(-(*coords)[i], p_);
            k[c] = 1;
            kernel.push_back(std::move(k));
        }
        space.insert(col);
    }
    FpMatrix out(cols_, static_cast<int>(kernel.size()), p_);
    for (int j = 0; j < static_cast<int>(kernel.size()); ++j)
        for (int r = 0; r < cols_; ++r) out.set(r, j, kernel[j][r]);
    return out;
}

int FpMatrix::rank() const {
    FpColumnSpace space(rows_, p_);
    for (int c = 0; c < cols_; ++c) {
        std::vector<long> col(rows_);
        for (int r = 0; r < rows_; ++r) col[r] = at(r, c);
        space.insert(col);
    }
    return space.dim();
}

void FpColumnSpace::reduce(std::vector<long>& col, std::vector<long>& expr) const {
    for (const auto& e : basis_) {
        long v = col[e.pivot];
        if (v == 0) continue;
        for (int r = 0; r < n_; ++r) col[r] = fp_normalize(col[r] - v * e.col[r], p_);
        if (!expr.empty()) {
            if (expr.size() < e.expr.size()) expr.resize(e.expr.size(), 0);
            for (std::size_t i = 0; i < e.expr.size(); ++i)
                expr[i] = fp_normalize(expr[i] - v * e.expr[i], p_);
        }
    }
}

bool FpColumnSpace::insert(const std::vector<long>& col) {
    if (static_cast<int>(col.size()) != n_)
        fail(ErrorCode::InvalidInput, "column dimension mismatch");
    std::vector<long> c = col;
    for (auto& v : c) v = fp_normalize(v, p_);
    std::vector<long> expr(static_cast<std::size_t>(gen_count_) + 1, 0);
    expr[gen_count_] = 1;
    reduce(c, expr);
    ++gen_count_;
    int pivot = -1;
    for (int r = 0; r < n_; ++r)
        if (c[r] != 0) {
            pivot = r;
            break;
        }
    if (pivot < 0) return false;
    long inv = fp_inverse(c[pivot], p_);
    for (auto& v : c) v = fp_normalize(v * inv, p_);
    for (auto& v : expr) v = fp_normalize(v * inv, p_);
    // back-substitute into existing basis to keep columns reduced
    for (auto& e : basis_) {
        long v = e.col[pivot];
        if (v == 0) continue;
        for (int r = 0; r < n_; ++r) e.col[r] = fp_normalize(e.col[r] - v * c[r], p_);
        if (e.expr.size() < expr.size()) e.expr.resize(expr.size(), 0);
        for (std::size_t i = 0; i < expr.size(); ++i)
            e.expr[i] = fp_normalize(e.expr[i] - v * expr[i], p_);
    }
    Element el{pivot, std::move(c), std::move(expr)};
    auto pos = std::lower_bound(basis_.begin(), basis_.end(), el,
                                [](const Element& a, const Element& b) { return a.pivot < b.pivot; });
    basis_.insert(pos, std::move(el));
    return true;
}

bool FpColumnSpace::contains(const std::vector<long>& col) const {
    std::vector<long> c = col;
    for (auto& v : c) v = fp_normalize(v, p_);
    std::vector<long> dummy;
    reduce(c, dummy);
    return std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
}

std::optional<std::vector<long>> FpColumnSpace::coordinates(const std::vector<long>& col) const {
    std::vector<long> c = col;
    for (auto& v : c) v = fp_normalize(v, p_);
    std::vector<long> combo(static_cast<std::size_t>(gen_count_), 0);
    for (const auto& e : basis_) {
        long v = c[e.pivot];
        if (v == 0) continue;
        for (int r = 0; r < n_; ++r) c[r] = fp_normalize(c[r] - v * e.col[r], p_);
        for (std::size_t i = 0; i < e.expr.size(); ++i)
            combo[i] = fp_normalize(combo[i] + v * e.expr[i], p_);
    }
    if (!std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) return std::nullopt;
    return combo;
}

FpMatrix FpColumnSpace::basis_matrix() const {
    FpMatrix m(n_, static_cast<int>(basis_.size()), p_);
    for (int c = 0; c < static_cast<int>(basis_.size()); ++c)
        for (int r = 0; r < n_; ++r) m.set(r, c, basis_[c].col[r]);
    return m;
}

FpColumnSpace column_space(const FpMatrix& m) {
    FpColumnSpace space(m.rows(), m.p());
    for (int c = 0; c < m.cols(); ++c) {
        std::vector<long> col(m.rows());
        for (int r = 0; r < m.rows(); ++r) col[r] = m.at(r, c);
        space.insert(col);
    }
    return space;
}

} // namespace confloer
