// Shared helpers for the test and acceptance suites: seeded generators for
// random complexes/matrices, plus independent oracles (minor-gcd Smith
// diagonal, brute-force reachability).

#ifndef CONFLOER_TESTS_SUPPORT_HPP
#define CONFLOER_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "confloer/chain_complex.hpp"
#include "confloer/equivariant.hpp"
#include "confloer/module_homology.hpp"
#include "confloer/transition.hpp"

namespace confloer::testing {

using Rng = std::mt19937_64;

inline long default_seed() { return 0x5eed; }

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---------------------------------------------------------------------
// Smith normal form oracle: d_k = gcd of all k x k minors; the diagonal
// entries are d_k / d_{k-1}.  Exponential, fine for tiny matrices, and
// fully independent of the elimination code.
// ---------------------------------------------------------------------

inline mpz_class minor_determinant(const ExactMatrix& m, const std::vector<int>& rows,
                                   const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    if (k == 1) return m.at(rows[0], cols[0]);
    mpz_class det = 0;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (int j = 0; j < k; ++j) {
        std::vector<int> sub_cols;
        for (int t = 0; t < k; ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        mpz_class term = m.at(rows[0], cols[j]) * minor_determinant(m, sub_rows, sub_cols);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

inline void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) {
            cur[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (k <= n && k >= 1) rec(0, 0);
}

inline std::vector<mpz_class> smith_diagonal_oracle(const ExactMatrix& m) {
    const int steps = std::min(m.rows(), m.cols());
    std::vector<mpz_class> dk(steps + 1);
    dk[0] = 1;
    for (int k = 1; k <= steps; ++k) {
        std::vector<std::vector<int>> row_sets, col_sets;
        subsets_of_size(m.rows(), k, row_sets);
        subsets_of_size(m.cols(), k, col_sets);
        mpz_class g = 0;
        for (const auto& rows : row_sets)
            for (const auto& cols : col_sets) {
                mpz_class det = abs(minor_determinant(m, rows, cols));
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
            }
        dk[k] = g;
    }
    std::vector<mpz_class> diag(steps);
    for (int k = 1; k <= steps; ++k) {
        if (dk[k] == 0) {
            diag[k - 1] = 0;
            // once a determinant divisor vanishes all later ones do too
        } else {
            diag[k - 1] = dk[k] / dk[k - 1];
        }
    }
    return diag;
}

inline ExactMatrix random_matrix(Rng& rng, int max_dim = 5, int max_entry = 9) {
    int rows = pick(rng, 1, max_dim);
    int cols = pick(rng, 1, max_dim);
    ExactMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (pick(rng, 0, 3) == 0) continue; // keep some sparsity
            m.set(r, c, pick(rng, -max_entry, max_entry));
        }
    return m;
}

// ---------------------------------------------------------------------
// Designed chain complexes with known homology: free generators plus
// torsion pairs, scrambled by unimodular basis changes.
// ---------------------------------------------------------------------

struct DesignedComplex {
    GradedChainComplex complex;
    GradedHomology expected; // over Z
};

inline DesignedComplex designed_complex(Rng& rng) {
    struct Piece {
        int grading;
        long torsion; // 0 = free generator, 1 = cancelling pair, else torsion
    };
    std::vector<Piece> pieces;
    int count = pick(rng, 1, 5);
    const long torsion_choices[] = {0, 0, 1, 2, 3, 4, 6, 12};
    for (int i = 0; i < count; ++i)
        pieces.push_back({pick(rng, -2, 4), torsion_choices[pick(rng, 0, 7)]});

    std::map<int, int> counts;
    std::vector<std::pair<std::string, int>> gens;
    struct Entry {
        int grading;
        int col, row;
        long value;
    };
    std::vector<Entry> entries;
    GradedHomology expected;
    expected.coeffs = Coefficients::integers();

    auto add_gen = [&](int g) {
        int idx = counts[g]++;
        gens.emplace_back("g" + std::to_string(gens.size()), g);
        return idx;
    };

    for (const auto& piece : pieces) {
        if (piece.torsion == 0) {
            add_gen(piece.grading);
            expected.groups[piece.grading].rank += 1;
        } else {
            int src = add_gen(piece.grading);
            int dst = add_gen(piece.grading - 1);
            entries.push_back({piece.grading, src, dst, piece.torsion});
            if (piece.torsion > 1)
                expected.groups[piece.grading - 1].torsion.push_back(piece.torsion);
        }
    }
    // normalize each torsion list into divisor-chain form
    for (auto it = expected.groups.begin(); it != expected.groups.end();) {
        auto& tors = it->second.torsion;
        bool changed = true;
        while (changed) {
            changed = false;
            std::sort(tors.begin(), tors.end());
            for (std::size_t i = 0; i < tors.size(); ++i)
                for (std::size_t j = i + 1; j < tors.size(); ++j)
                    if (tors[j] % tors[i] != 0) {
                        mpz_class g;
                        mpz_gcd(g.get_mpz_t(), tors[i].get_mpz_t(), tors[j].get_mpz_t());
                        mpz_class l = tors[i] / g * tors[j];
                        tors[i] = g;
                        tors[j] = l;
                        changed = true;
                    }
        }
        tors.erase(std::remove(tors.begin(), tors.end(), mpz_class(1)), tors.end());
        if (it->second.trivial())
            it = expected.groups.erase(it);
        else
            ++it;
    }

    std::map<int, ExactMatrix> boundaries;
    for (const auto& e : entries) {
        auto it = boundaries.find(e.grading);
        if (it == boundaries.end())
            it = boundaries
                     .emplace(e.grading, ExactMatrix(counts.count(e.grading - 1)
                                                         ? counts[e.grading - 1]
                                                         : 0,
                                                     counts[e.grading]))
                     .first;
        it->second.add_to(e.row, e.col, e.value);
    }
    // every grading with generators needs a boundary matrix of the right
    // shape for the basis-change scrambling below
    for (const auto& [g, n] : counts) {
        if (!boundaries.count(g))
            boundaries.emplace(g, ExactMatrix(counts.count(g - 1) ? counts[g - 1] : 0, n));
    }

    // unimodular scrambling: basis change e_i <- e_i + f * e_j inside one
    // grading acts as a column operation on d(g) and an inverse row
    // operation on d(g+1)
    int ops = pick(rng, 10, 40);
    for (int t = 0; t < ops; ++t) {
        int g = pick(rng, -3, 5);
        auto it = counts.find(g);
        if (it == counts.end() || it->second < 2) continue;
        int i = pick(rng, 0, it->second - 1);
        int j = pick(rng, 0, it->second - 1);
        if (i == j) continue;
        long f = pick(rng, -2, 2);
        if (f == 0) continue;
        if (auto b = boundaries.find(g); b != boundaries.end() && b->second.rows() > 0)
            b->second.add_col_multiple(i, j, f);
        if (auto b = boundaries.find(g + 1); b != boundaries.end() && b->second.cols() > 0)
            b->second.add_row_multiple(j, i, -f);
    }

    DesignedComplex out{GradedChainComplex::checked(std::move(gens), std::move(boundaries)),
                        std::move(expected)};
    return out;
}

// ---------------------------------------------------------------------
// Random valid equivariant complexes: two-layer differentials (sources hit
// differential-free sinks), bottom killers, and occasional tail extensions
// through the period operator.
// ---------------------------------------------------------------------

inline EquivariantComplex random_equivariant(Rng& rng, Flavor flavor, long p,
                                             bool allow_extension = true) {
    int n = pick(rng, -3, 3);
    int bottom = -2 * n;

    std::vector<IrreducibleSpec> irr;
    std::vector<EquivariantComplex::CotowerHit> cotower;

    int killers = pick(rng, 0, 2);
    for (int i = 0; i < killers; ++i) {
        IrreducibleSpec spec;
        spec.grading = bottom + 1;
        spec.d.push_back({true, -1, static_cast<long>(pick(rng, 1, static_cast<int>(p - 1)))});
        irr.push_back(spec);
    }
    int free_count = pick(rng, 0, 2);
    std::vector<int> free_indices;
    for (int i = 0; i < free_count; ++i) {
        IrreducibleSpec spec;
        spec.grading = bottom + pick(rng, -2, 6);
        free_indices.push_back(static_cast<int>(irr.size()));
        irr.push_back(spec);
    }
    int sources = pick(rng, 0, 2);
    for (int i = 0; i < sources && !free_indices.empty(); ++i) {
        int target = free_indices[pick(rng, 0, static_cast<int>(free_indices.size()) - 1)];
        IrreducibleSpec spec;
        spec.grading = irr[target].grading + 1;
        spec.d.push_back({false, target, static_cast<long>(pick(rng, 1, static_cast<int>(p - 1)))});
        irr.push_back(spec);
    }

    EquivariantComplex base = flavor == Flavor::S1 ? build_s1_complex(n, irr, p)
                                                   : build_pin2_complex(n, irr);

    // occasionally extend the tail below the tower bottom (the chain-level
    // commutation rules out mixing this with bottom killers)
    if (allow_extension && killers == 0 && pick(rng, 0, 2) == 0) {
        std::vector<EquivariantComplex::Irreducible> gens(base.irreducibles());
        std::vector<EquivariantComplex::IrrHit> irr_hits(base.irr_entries());
        if (flavor == Flavor::S1) {
            gens.push_back({"ext", bottom - 2});
            cotower.push_back({Op::U, bottom, static_cast<int>(gens.size()) - 1,
                               static_cast<long>(pick(rng, 1, static_cast<int>(p - 1)))});
        } else {
            // one full period below, with its own q-ladder, so that qv = vq
            // holds through the old bottom triple
            int e0 = static_cast<int>(gens.size());
            gens.push_back({"ext0", bottom - 4});
            gens.push_back({"ext1", bottom - 3});
            gens.push_back({"ext2", bottom - 2});
            cotower.push_back({Op::V, bottom, e0, 1});
            cotower.push_back({Op::V, bottom + 1, e0 + 1, 1});
            cotower.push_back({Op::V, bottom + 2, e0 + 2, 1});
            irr_hits.push_back({Op::Q, e0 + 1, e0, 1});
            irr_hits.push_back({Op::Q, e0 + 2, e0 + 1, 1});
        }
        return EquivariantComplex::make(flavor, p, n, std::move(gens), std::move(irr_hits),
                                        base.tower_entries(), cotower);
    }
    return base;
}

// ---------------------------------------------------------------------
// Invariant comparison that ignores the window provenance.
// ---------------------------------------------------------------------

inline bool same_invariants(const InvariantReport& a, const InvariantReport& b) {
    return a.flavor == b.flavor && a.p == b.p && a.n == b.n && a.mu == b.mu && a.d == b.d &&
           a.h == b.h && a.a == b.a && a.b == b.b && a.c == b.c && a.alpha == b.alpha &&
           a.beta == b.beta && a.gamma == b.gamma;
}

// ---------------------------------------------------------------------
// Independent reachability oracle for invariant parts.
// ---------------------------------------------------------------------

inline CellSet invariant_part_oracle(const TransitionSystem& t, const CellSet& n) {
    std::vector<int> cells;
    for (int c : n)
        if (t.has_cell(c) && !t.on_box_boundary(c)) cells.push_back(c);
    const int k = static_cast<int>(cells.size());
    auto local = [&](int cell) {
        auto it = std::lower_bound(cells.begin(), cells.end(), cell);
        return it != cells.end() && *it == cell ? static_cast<int>(it - cells.begin()) : -1;
    };
    // transitive closure
    std::vector<std::vector<char>> reach(k, std::vector<char>(k, 0));
    for (int i = 0; i < k; ++i) {
        for (int d : t.out_edges(cells[i])) {
            int j = local(d);
            if (j >= 0) reach[i][j] = 1;
        }
        if (t.self_loop(cells[i])) reach[i][i] = 1;
    }
    for (int m = 0; m < k; ++m)
        for (int i = 0; i < k; ++i)
            if (reach[i][m])
                for (int j = 0; j < k; ++j)
                    if (reach[m][j]) reach[i][j] = 1;

    CellSet out;
    for (int i = 0; i < k; ++i) {
        // bi-infinite orbit through i: some cycle vertex reachable forward
        // and some cycle vertex reaching i
        bool fwd = false, bwd = false;
        for (int m = 0; m < k; ++m) {
            if (!reach[m][m]) continue;
            if (m == i || reach[i][m]) fwd = true;
            if (m == i || reach[m][i]) bwd = true;
        }
        if (fwd && bwd) out.insert(cells[i]);
    }
    return out;
}

} // namespace confloer::testing

#endif
