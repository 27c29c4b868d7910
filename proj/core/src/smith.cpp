#include "confloer/smith.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

namespace confloer {

namespace {

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Rearranges a diagonal multiset into the divisibility chain
// d_1 | d_2 | ... (diag(a,b) and diag(gcd,lcm) are equivalent).
void fix_divisibility_chain(std::vector<mpz_class>& d) {
    std::vector<mpz_class> ones, others, zeros;
    for (auto& v : d) {
        if (v == 0)
            zeros.push_back(v);
        else if (v == 1)
            ones.push_back(v);
        else
            others.push_back(v);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(others.begin(), others.end());
        for (std::size_t i = 0; i < others.size(); ++i) {
            for (std::size_t j = i + 1; j < others.size(); ++j) {
                if (others[j] % others[i] != 0) {
                    mpz_class g = gcd(others[i], others[j]);
                    mpz_class l = others[i] / g * others[j];
                    others[i] = g;
                    others[j] = l;
                    changed = true;
                }
            }
        }
    }
    d.clear();
    d.insert(d.end(), ones.begin(), ones.end());
    d.insert(d.end(), others.begin(), others.end());
    d.insert(d.end(), zeros.begin(), zeros.end());
}

mpz_class truncated_quotient(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SmithResult smith_normal_form(const ExactMatrix& m) {
    if (!m.coefficients().is_integers())
        fail(ErrorCode::InvalidInput, "smith normal form requires integer coefficients");

    const int rows = m.rows(), cols = m.cols();
    const int steps = std::min(rows, cols);
    ExactMatrix d = m;
    ExactMatrix left = ExactMatrix::identity(rows);
    ExactMatrix right = ExactMatrix::identity(cols);

    auto find_pivot = [&](int step, int& pr, int& pc) -> bool {
        bool found = false;
        mpz_class best;
        for (int c = step; c < cols; ++c) {
            for (const auto& [r, v] : d.column(c)) {
                if (r < step) continue;
                mpz_class a = abs(v);
                if (!found || a < best || (a == best && (r < pr || (r == pr && c < pc)))) {
                    found = true;
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        }
        return found;
    };

    for (int step = 0; step < steps; ++step) {
        while (true) {
            int pr = step, pc = step;
            if (!find_pivot(step, pr, pc)) break; // remaining submatrix is zero
            if (pr != step) {
                d.swap_rows(step, pr);
                left.swap_rows(step, pr);
            }
            if (pc != step) {
                d.swap_cols(step, pc);
                right.swap_cols(step, pc);
            }
            mpz_class pivot = d.at(step, step);

            bool clean = true;
            for (int r = 0; r < rows; ++r) {
                if (r == step) continue;
                mpz_class v = d.at(r, step);
                if (v == 0) continue;
                mpz_class q = truncated_quotient(v, pivot);
                if (q != 0) {
                    d.add_row_multiple(r, step, -q);
                    left.add_row_multiple(r, step, -q);
                }
                if (d.at(r, step) != 0) clean = false;
            }
            for (int c = 0; c < cols; ++c) {
                if (c == step) continue;
                mpz_class v = d.at(step, c);
                if (v == 0) continue;
                mpz_class q = truncated_quotient(v, pivot);
                if (q != 0) {
                    d.add_col_multiple(c, step, -q);
                    right.add_col_multiple(c, step, -q);
                }
                if (d.at(step, c) != 0) clean = false;
            }
            if (!clean) continue; // smaller remainders exist, re-pick pivot

            // pivot is lone; pull in any entry the pivot does not divide
            bool divides_all = true;
            for (int c = step + 1; c < cols && divides_all; ++c) {
                for (const auto& [r, v] : d.column(c)) {
                    if (r <= step) continue;
                    if (v % pivot != 0) {
                        d.add_row_multiple(step, r, 1);
                        left.add_row_multiple(step, r, 1);
                        divides_all = false;
                        break;
                    }
                }
            }
            if (divides_all) break;
        }
        if (d.at(step, step) < 0) {
            d.negate_row(step);
            left.negate_row(step);
        }
    }

    SmithResult out;
    out.diagonal.reserve(steps);
    for (int i = 0; i < steps; ++i) out.diagonal.push_back(d.at(i, i));
    out.left = std::move(left);
    out.right = std::move(right);
    return out;
}

namespace {

// Sparse eliminator for the diagonal-only path: column maps plus a
// row-occupancy index and a bucket of unit entries for pivot search.
class SparseEliminator {
public:
    explicit SparseEliminator(const ExactMatrix& m)
        : rows_(m.rows()), cols_(m.cols()), columns_(m.cols()), row_occ_(m.rows()) {
        for (int c = 0; c < cols_; ++c)
            for (const auto& [r, v] : m.column(c)) set_entry(r, c, v);
    }

    std::vector<mpz_class> run() {
        std::vector<mpz_class> diag;
        while (true) {
            auto [pr, pc, ok] = pick_pivot();
            if (!ok) break;
            if (!eliminate(pr, pc)) continue; // remainders appeared, retry
            diag.push_back(abs(columns_[pc].begin()->second));
            clear_entry(pr, pc);
        }
        fix_divisibility_chain(diag);
        int steps = std::min(rows_, cols_);
        while (static_cast<int>(diag.size()) < steps) diag.emplace_back(0);
        return diag;
    }

private:
    void set_entry(int r, int c, const mpz_class& v) {
        auto& col = columns_[c];
        auto it = col.find(r);
        if (it != col.end()) {
            if (abs(it->second) == 1) units_.erase({r, c});
            col.erase(it);
            row_occ_[r].erase(c);
        }
        if (v != 0) {
            col[r] = v;
            row_occ_[r].insert(c);
            if (abs(v) == 1) units_.insert({r, c});
        }
    }

    void clear_entry(int r, int c) { set_entry(r, c, 0); }

    mpz_class get(int r, int c) const {
        auto it = columns_[c].find(r);
        return it == columns_[c].end() ? mpz_class(0) : it->second;
    }

    std::tuple<int, int, bool> pick_pivot() const {
        if (!units_.empty()) {
            auto [r, c] = *units_.begin();
            return {r, c, true};
        }
        bool found = false;
        int pr = 0, pc = 0;
        mpz_class best;
        for (int c = 0; c < cols_; ++c) {
            for (const auto& [r, v] : columns_[c]) {
                mpz_class a = abs(v);
                if (!found || a < best || (a == best && (r < pr || (r == pr && c < pc)))) {
                    found = true;
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        }
        return {pr, pc, found};
    }

    // Returns true when the pivot ended up lone in its row and column.
    bool eliminate(int pr, int pc) {
        mpz_class pivot = get(pr, pc);
        bool clean = true;

        // clear the pivot column with row operations
        std::vector<std::pair<int, mpz_class>> col_entries(columns_[pc].begin(), columns_[pc].end());
        for (const auto& [r, v] : col_entries) {
            if (r == pr) continue;
            mpz_class q = truncated_quotient(v, pivot);
            if (q != 0) add_row_multiple(r, pr, -q);
            if (get(r, pc) != 0) clean = false;
        }
        // clear the pivot row with column operations
        std::vector<int> row_cols(row_occ_[pr].begin(), row_occ_[pr].end());
        for (int c : row_cols) {
            if (c == pc) continue;
            mpz_class v = get(pr, c);
            if (v == 0) continue;
            mpz_class q = truncated_quotient(v, pivot);
            if (q != 0) add_col_multiple(c, pc, -q);
            if (get(pr, c) != 0) clean = false;
        }
        return clean && columns_[pc].size() == 1 && row_occ_[pr].size() == 1;
    }

    void add_row_multiple(int dst, int src, const mpz_class& factor) {
        std::vector<int> src_cols(row_occ_[src].begin(), row_occ_[src].end());
        for (int c : src_cols) set_entry(dst, c, get(dst, c) + factor * get(src, c));
    }

    void add_col_multiple(int dst, int src, const mpz_class& factor) {
        std::vector<std::pair<int, mpz_class>> src_entries(columns_[src].begin(), columns_[src].end());
        for (const auto& [r, v] : src_entries) set_entry(r, dst, get(r, dst) + factor * v);
    }

    int rows_, cols_;
    std::vector<std::map<int, mpz_class>> columns_;
    std::vector<std::set<int>> row_occ_;
    std::set<std::pair<int, int>> units_;
};

} // namespace

std::vector<mpz_class> smith_diagonal(const ExactMatrix& m) {
    if (!m.coefficients().is_integers())
        fail(ErrorCode::InvalidInput, "smith diagonal requires integer coefficients");
    SparseEliminator elim(m);
    return elim.run();
}

int integer_rank(const ExactMatrix& m) {
    auto d = smith_diagonal(m);
    int r = 0;
    for (const auto& v : d)
        if (v != 0) ++r;
    return r;
}

} // namespace confloer
