#include "confloer/lattice.hpp"

#include <algorithm>
#include <functional>

namespace confloer {

namespace {

mpz_class determinant(const ExactMatrix& m) {
    // Bareiss fraction-free elimination
    const int n = m.rows();
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);

    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

ExactMatrix leading_minor(const ExactMatrix& m, int k) {
    ExactMatrix out(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out.set(i, j, m.at(i, j));
    return out;
}

bool block_is_even(const ExactMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        if (m.at(i, i) % 2 != 0) return false;
    return true;
}

} // namespace

void IntersectionForm::validate() const {
    if (diagonal_count < 0)
        fail(ErrorCode::InvalidInput, "number of <-1> summands must be >= 0");
    for (const auto& block : even_blocks) {
        if (block.rows() != block.cols() || block.rows() == 0)
            fail(ErrorCode::InvalidInput, "Gram blocks must be square and nonempty");
        if (!block.coefficients().is_integers())
            fail(ErrorCode::InvalidInput, "Gram blocks must be integer matrices");
        if (!(block == block.transposed()))
            fail(ErrorCode::InvalidInput, "Gram blocks must be symmetric");
        // negative definite: leading principal minors alternate sign
        for (int k = 1; k <= block.rows(); ++k) {
            mpz_class det = determinant(leading_minor(block, k));
            bool ok = (k % 2 == 1) ? det < 0 : det > 0;
            if (!ok)
                fail(ErrorCode::NotNegativeDefinite,
                     "leading principal minor of order " + std::to_string(k) +
                         " has the wrong sign: " + det.get_str());
        }
    }
}

int IntersectionForm::rank() const {
    int r = diagonal_count;
    for (const auto& block : even_blocks) r += block.rows();
    return r;
}

ExactMatrix minus_e8_gram() {
    // Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4
    ExactMatrix e8(8, 8);
    for (int i = 0; i < 8; ++i) e8.set(i, i, 2);
    auto bond = [&](int i, int j) {
        e8.set(i, j, -1);
        e8.set(j, i, -1);
    };
    for (int i = 0; i < 6; ++i) bond(i, i + 1);
    bond(4, 7);
    ExactMatrix out(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out.set(i, j, -e8.at(i, j));
    return out;
}

namespace {

// minimum |c.Qc| over characteristic vectors of one block, coordinates in
// [-bound, bound]
mpz_class block_char_min_search(const ExactMatrix& q, int bound) {
    const int n = q.rows();
    std::vector<long> c(n, 0);
    mpz_class best;
    bool have = false;

    std::function<void(int)> recurse = [&](int pos) {
        if (pos == n) {
            // characteristic: (Qc)_i = Q_ii (mod 2)
            for (int i = 0; i < n; ++i) {
                mpz_class qi = 0;
                for (int j = 0; j < n; ++j) qi += q.at(i, j) * c[j];
                if ((qi - q.at(i, i)) % 2 != 0) return;
            }
            mpz_class val = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) val += q.at(i, j) * c[i] * c[j];
            val = abs(val);
            if (!have || val < best) {
                best = val;
                have = true;
            }
            return;
        }
        for (long v = -bound; v <= bound; ++v) {
            c[pos] = v;
            recurse(pos + 1);
        }
    };
    recurse(0);
    if (!have)
        fail(ErrorCode::InvalidInput, "no characteristic vector found within the search bound");
    return best;
}

} // namespace

CharMinResult char_min_abs_square(const IntersectionForm& f, int bound) {
    if (bound < 1) fail(ErrorCode::InvalidInput, "search bound must be >= 1");
    f.validate();

    CharMinResult out;
    out.bound_used = bound;
    out.value = f.diagonal_count; // odd coordinates, minimized at +-1
    for (const auto& block : f.even_blocks) {
        if (block_is_even(block)) continue; // zero vector is characteristic
        out.exact = false;
        out.value += block_char_min_search(block, bound);
    }
    return out;
}

FroyshovCheck froyshov_inequality_check(long h_boundary, const IntersectionForm& f, int bound) {
    FroyshovCheck check;
    check.char_min = char_min_abs_square(f, bound);
    mpz_class abs_sigma = f.rank();
    mpz_class num = abs_sigma - check.char_min.value;
    if (num % 8 != 0)
        fail(ErrorCode::DivisibilityError,
             "(|sigma| - char_min) = " + num.get_str() + " is not divisible by 8");
    check.required = num / 8;
    check.margin = mpz_class(h_boundary) - check.required;
    check.allowed = check.margin >= 0;
    return check;
}

FurutaCheck furuta_bound_check(long b2, long sigma) {
    long abs_sigma = sigma < 0 ? -sigma : sigma;
    if (b2 < abs_sigma)
        fail(ErrorCode::InvalidInput, "b2 must be at least |sigma|");
    FurutaCheck check;
    check.lhs_times_8 = 8 * b2;
    check.rhs_times_8 = 10 * abs_sigma + 16;
    check.satisfied = check.lhs_times_8 >= check.rhs_times_8;
    return check;
}

SmithCheck smith_inequality_check(const GradedHomology& total, const GradedHomology& fixed) {
    if (!total.coeffs.is_mod_p() || !fixed.coeffs.is_mod_p() || total.coeffs.p != fixed.coeffs.p)
        fail(ErrorCode::FieldMismatch,
             "Smith inequality compares dimensions over one prime field");
    SmithCheck check;
    check.total_total = total.total_rank();
    check.fixed_total = fixed.total_rank();
    check.satisfied = check.fixed_total <= check.total_total;
    return check;
}

} // namespace confloer
