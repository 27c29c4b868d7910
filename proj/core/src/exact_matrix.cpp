#include "confloer/exact_matrix.hpp"

#include <algorithm>

namespace confloer {

namespace {

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

Coefficients Coefficients::mod_p(long p) {
    if (!is_prime_long(p))
        fail(ErrorCode::InvalidInput, "coefficient modulus must be prime, got " + std::to_string(p));
    return {Ring::ModP, p};
}

ExactMatrix::ExactMatrix(int rows, int cols, Coefficients coeffs)
    : rows_(rows), cols_(cols), coeffs_(coeffs), columns_(static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0)
        fail(ErrorCode::InvalidInput, "matrix dimensions must be non-negative");
}

ExactMatrix ExactMatrix::identity(int n, Coefficients coeffs) {
    ExactMatrix m(n, n, coeffs);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

mpz_class ExactMatrix::normalized(mpz_class v) const {
    if (coeffs_.is_mod_p()) {
        v %= coeffs_.p;
        if (v < 0) v += coeffs_.p;
    }
    return v;
}

mpz_class ExactMatrix::at(int r, int c) const {
    const auto& col = columns_[c];
    auto it = col.find(r);
    return it == col.end() ? mpz_class(0) : it->second;
}

void ExactMatrix::set(int r, int c, const mpz_class& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        fail(ErrorCode::InvalidInput, "matrix index out of range");
    mpz_class w = normalized(v);
    if (w == 0)
        columns_[c].erase(r);
    else
        columns_[c][r] = w;
}

void ExactMatrix::add_to(int r, int c, const mpz_class& v) {
    set(r, c, at(r, c) + v);
}

std::size_t ExactMatrix::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& col : columns_) n += col.size();
    return n;
}

bool ExactMatrix::is_zero() const { return nonzero_count() == 0; }

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix t(cols_, rows_, coeffs_);
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : columns_[c]) t.set(c, r, v);
    return t;
}

ExactMatrix ExactMatrix::multiplied_by(const ExactMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        fail(ErrorCode::InvalidInput, "matrix product dimension mismatch");
    if (!(coeffs_ == rhs.coeffs_))
        fail(ErrorCode::FieldMismatch, "matrix product coefficient mismatch");
    ExactMatrix out(rows_, rhs.cols_, coeffs_);
    for (int c = 0; c < rhs.cols_; ++c) {
        std::map<int, mpz_class> acc;
        for (const auto& [k, w] : rhs.columns_[c]) {
            for (const auto& [r, v] : columns_[k]) acc[r] += v * w;
        }
        for (const auto& [r, v] : acc) out.set(r, c, v);
    }
    return out;
}

void ExactMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (auto& col : columns_) {
        auto ii = col.find(i);
        auto jj = col.find(j);
        mpz_class vi = ii == col.end() ? mpz_class(0) : ii->second;
        mpz_class vj = jj == col.end() ? mpz_class(0) : jj->second;
        if (ii != col.end()) col.erase(ii);
        if (jj != col.end()) col.erase(jj);
        if (vj != 0) col[i] = vj;
        if (vi != 0) col[j] = vi;
    }
}

void ExactMatrix::swap_cols(int i, int j) {
    if (i != j) std::swap(columns_[i], columns_[j]);
}

void ExactMatrix::add_row_multiple(int dst, int src, const mpz_class& factor) {
    if (factor == 0) return;
    for (auto& col : columns_) {
        auto s = col.find(src);
        if (s == col.end()) continue;
        auto d = col.find(dst);
        mpz_class v = normalized((d == col.end() ? mpz_class(0) : d->second) + factor * s->second);
        if (v == 0) {
            if (d != col.end()) col.erase(d);
        } else {
            col[dst] = v;
        }
    }
}

void ExactMatrix::add_col_multiple(int dst, int src, const mpz_class& factor) {
    if (factor == 0) return;
    auto& d = columns_[dst];
    for (const auto& [r, v] : columns_[src]) {
        mpz_class w = normalized((d.count(r) ? d[r] : mpz_class(0)) + factor * v);
        if (w == 0)
            d.erase(r);
        else
            d[r] = w;
    }
}

void ExactMatrix::negate_row(int i) {
    for (auto& col : columns_) {
        auto it = col.find(i);
        if (it != col.end()) it->second = normalized(-it->second);
    }
}

void ExactMatrix::negate_col(int i) {
    for (auto& [r, v] : columns_[i]) v = normalized(-v);
}

bool ExactMatrix::operator==(const ExactMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && coeffs_ == other.coeffs_ &&
           columns_ == other.columns_;
}

int rank_mod_p(const ExactMatrix& m, long p) {
    Coefficients::mod_p(p); // validates primality
    const mpz_class mod(p);
    // column reduction keyed by leading row
    std::map<int, std::map<int, mpz_class>> pivots;
    for (int c = 0; c < m.cols(); ++c) {
        std::map<int, mpz_class> col;
        for (const auto& [r, v] : m.column(c)) {
            mpz_class w = v % mod;
            if (w < 0) w += mod;
            if (w != 0) col[r] = w;
        }
        while (!col.empty()) {
            int lead = col.begin()->first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                pivots.emplace(lead, std::move(col));
                break;
            }
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), it->second.begin()->second.get_mpz_t(), mod.get_mpz_t());
            mpz_class factor = (mod - ((col.begin()->second * inv) % mod)) % mod;
            for (const auto& [r, v] : it->second) {
                auto d = col.find(r);
                mpz_class w = ((d == col.end() ? mpz_class(0) : d->second) + factor * v) % mod;
                if (w < 0) w += mod;
                if (w == 0) {
                    if (d != col.end()) col.erase(d);
                } else {
                    col[r] = w;
                }
            }
        }
    }
    return static_cast<int>(pivots.size());
}

} // namespace confloer
