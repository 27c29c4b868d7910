#include "confloer/conley.hpp"

#include <algorithm>

#include "confloer/cubical.hpp"

namespace confloer {

namespace {

CellSet effective_candidate(const TransitionSystem& t, const CellSet& n) {
    t.require_within(n, "candidate set");
    CellSet eff;
    for (int c : n)
        if (!t.on_box_boundary(c)) eff.insert(c);
    return eff;
}

struct LocalGraph {
    std::vector<int> cells; // sorted ambient ids
    std::vector<std::vector<int>> out;
    std::vector<char> loop;

    int local(int cell) const {
        auto it = std::lower_bound(cells.begin(), cells.end(), cell);
        if (it == cells.end() || *it != cell) return -1;
        return static_cast<int>(it - cells.begin());
    }
};

LocalGraph restrict_graph(const TransitionSystem& t, const CellSet& n) {
    LocalGraph g;
    g.cells.assign(n.begin(), n.end());
    g.out.resize(g.cells.size());
    g.loop.assign(g.cells.size(), 0);
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        int c = g.cells[i];
        g.loop[i] = t.self_loop(c) ? 1 : 0;
        for (int d : t.out_edges(c)) {
            int j = g.local(d);
            if (j >= 0) g.out[i].push_back(j);
        }
    }
    return g;
}

// Iterative Tarjan; returns the SCC id per node and the SCC sizes.
void strongly_connected_components(const LocalGraph& g, std::vector<int>& comp,
                                   std::vector<int>& comp_size) {
    const int n = static_cast<int>(g.cells.size());
    comp.assign(n, -1);
    comp_size.clear();
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& f = call.back();
            int v = f.v;
            if (f.child == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (f.child < g.out[v].size()) {
                int w = g.out[v][f.child++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                int id = static_cast<int>(comp_size.size());
                int size = 0;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = id;
                    ++size;
                    if (w == v) break;
                }
                comp_size.push_back(size);
            }
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
}

std::vector<char> reachable_from(const LocalGraph& g, const std::vector<char>& seeds,
                                 bool reversed) {
    const int n = static_cast<int>(g.cells.size());
    std::vector<std::vector<int>> adj;
    const std::vector<std::vector<int>>* edges = &g.out;
    if (reversed) {
        adj.resize(n);
        for (int v = 0; v < n; ++v)
            for (int w : g.out[v]) adj[w].push_back(v);
        edges = &adj;
    }
    std::vector<char> seen(seeds.begin(), seeds.end());
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (seen[v]) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w : (*edges)[v])
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    return seen;
}

} // namespace

CellSet invariant_part(const TransitionSystem& t, const CellSet& n) {
    CellSet eff = effective_candidate(t, n);
    if (eff.empty()) return {};
    LocalGraph g = restrict_graph(t, eff);

    std::vector<int> comp, comp_size;
    strongly_connected_components(g, comp, comp_size);

    const int nn = static_cast<int>(g.cells.size());
    std::vector<char> cycle(nn, 0);
    for (int v = 0; v < nn; ++v)
        if (g.loop[v] || comp_size[comp[v]] >= 2) cycle[v] = 1;

    std::vector<char> fwd = reachable_from(g, cycle, true);  // reaches a cycle cell
    std::vector<char> bwd = reachable_from(g, cycle, false); // reachable from a cycle cell

    CellSet inv;
    for (int v = 0; v < nn; ++v)
        if (fwd[v] && bwd[v]) inv.insert(g.cells[v]);
    return inv;
}

bool is_isolating(const TransitionSystem& t, const CellSet& n) {
    CellSet eff = effective_candidate(t, n);
    CellSet inv = invariant_part(t, n);
    for (int c : inv) {
        if (t.on_box_boundary(c)) return false;
        for (int d : t.neighbors(c))
            if (!eff.count(d)) return false;
    }
    return true;
}

IndexPair construct_index_pair(const TransitionSystem& t, const CellSet& n) {
    if (!is_isolating(t, n))
        fail(ErrorCode::IsolationViolated, "candidate set is not isolating");
    CellSet eff = effective_candidate(t, n);
    CellSet s = invariant_part(t, n);

    LocalGraph g = restrict_graph(t, eff);
    std::vector<char> seeds(g.cells.size(), 0);
    for (std::size_t i = 0; i < g.cells.size(); ++i)
        if (s.count(g.cells[i])) seeds[i] = 1;
    std::vector<char> closure = reachable_from(g, seeds, false);

    IndexPair pair;
    for (std::size_t i = 0; i < g.cells.size(); ++i)
        if (closure[i]) pair.n_prime.insert(g.cells[i]);
    for (int c : pair.n_prime)
        if (!s.count(c)) pair.exit_set.insert(c);

    pair.report = verify_index_pair(t, pair, n);
    if (!pair.report.all()) {
        if (!pair.report.exits_through_l.pass)
            fail(ErrorCode::CollarTooThin,
                 "an invariant-part cell exits N' directly; increase resolution or enlarge N",
                 pair.report.exits_through_l.witness);
        fail(ErrorCode::InvalidInput, "constructed index pair failed verification");
    }
    pair.verified = true;
    return pair;
}

IndexPairReport verify_index_pair(const TransitionSystem& t, const IndexPair& p, const CellSet& n) {
    t.require_within(p.n_prime, "N'");
    t.require_within(p.exit_set, "L");
    for (int c : p.exit_set)
        if (!p.n_prime.count(c))
            fail(ErrorCode::InvalidInput, "exit set not contained in N'");

    IndexPairReport report;

    // (i) Inv(N' \ L) = Inv(n), with a one-cell collar inside the grid
    CellSet interior;
    for (int c : p.n_prime)
        if (!p.exit_set.count(c)) interior.insert(c);
    CellSet inv_interior = invariant_part(t, interior);
    CellSet inv_n = invariant_part(t, n);
    if (inv_interior != inv_n) {
        report.invariant_interior.pass = false;
        report.invariant_interior.witness = "Inv(N'-L) has " + std::to_string(inv_interior.size()) +
                                            " cells, Inv(N) has " + std::to_string(inv_n.size());
    } else {
        CellSet eff = effective_candidate(t, n);
        for (int c : inv_interior) {
            if (t.on_box_boundary(c)) {
                report.invariant_interior.pass = false;
                report.invariant_interior.witness = "cell " + std::to_string(c) + " on box boundary";
                break;
            }
            for (int d : t.neighbors(c))
                if (!eff.count(d)) {
                    report.invariant_interior.pass = false;
                    report.invariant_interior.witness =
                        "cell " + std::to_string(c) + " adjacent to exterior cell " + std::to_string(d);
                    break;
                }
            if (!report.invariant_interior.pass) break;
        }
    }

    // (ii) every edge leaving N' originates in L
    for (int c : p.n_prime) {
        if (p.exit_set.count(c)) continue;
        for (int d : t.out_edges(c))
            if (!p.n_prime.count(d)) {
                report.exits_through_l.pass = false;
                report.exits_through_l.witness =
                    "edge " + std::to_string(c) + " -> " + std::to_string(d) + " exits N' outside L";
                break;
            }
        if (!report.exits_through_l.pass) break;
    }

    // (iii) edges from L staying in N' land in L
    for (int c : p.exit_set) {
        for (int d : t.out_edges(c))
            if (p.n_prime.count(d) && !p.exit_set.count(d)) {
                report.l_positively_invariant.pass = false;
                report.l_positively_invariant.witness =
                    "edge " + std::to_string(c) + " -> " + std::to_string(d) + " re-enters N' - L";
                break;
            }
        if (!report.l_positively_invariant.pass) break;
    }

    return report;
}

GradedHomology conley_index_homology(const TransitionSystem& t, const IndexPair& p,
                                     Coefficients coeffs) {
    if (!p.verified)
        fail(ErrorCode::InvalidInput, "index pair is not verified");
    GradedChainComplex complex =
        relative_cubical_complex(t.grid(), p.n_prime, p.exit_set, coeffs);
    return homology_of_complex(complex);
}

ContinuationReport continuation_check(const std::vector<FlowSpec>& family, const CellSet& n) {
    if (family.empty()) fail(ErrorCode::InvalidInput, "empty continuation family");
    const GridGeometry& g0 = family.front().grid;
    for (const auto& spec : family)
        if (!(spec.grid == g0))
            fail(ErrorCode::InvalidInput, "continuation family members must share the grid");

    ContinuationReport report;
    for (std::size_t i = 0; i < family.size(); ++i) {
        TransitionSystem t = discretize_flow(family[i]);
        if (!is_isolating(t, n))
            fail(ErrorCode::IsolationViolated,
                 "isolation fails at family parameter " + std::to_string(i), std::to_string(i));
        IndexPair p = construct_index_pair(t, n);
        report.homologies.push_back(conley_index_homology(t, p));
    }
    for (std::size_t i = 1; i < report.homologies.size(); ++i)
        if (!(report.homologies[i] == report.homologies.front())) report.all_equal = false;
    return report;
}

EquivarianceReport check_pair_equivariance(const TransitionSystem& t, const GroupAction& action,
                                           const CellSet& n) {
    IndexPair p = construct_index_pair(t, n);
    EquivarianceReport r;
    r.n_prime_invariant = map_cell_set(t.grid(), action, p.n_prime) == p.n_prime;
    r.exit_set_invariant = map_cell_set(t.grid(), action, p.exit_set) == p.exit_set;
    return r;
}

} // namespace confloer
