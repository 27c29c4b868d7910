#include "confloer/transition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace confloer {

namespace {
const std::vector<int> kNoEdges;
}

bool TransitionSystem::has_cell(int cell) const { return local_index(cell) >= 0; }

int TransitionSystem::local_index(int cell) const {
    if (cell < 0 || cell >= static_cast<int>(local_of_.size())) return -1;
    return local_of_[cell];
}

const std::vector<int>& TransitionSystem::out_edges(int cell) const {
    int i = local_index(cell);
    return i < 0 ? kNoEdges : out_[i];
}

bool TransitionSystem::self_loop(int cell) const {
    int i = local_index(cell);
    return i >= 0 && self_loop_[i];
}

bool TransitionSystem::on_box_boundary(int cell) const {
    int i = local_index(cell);
    return i >= 0 && boundary_[i];
}

std::vector<int> TransitionSystem::neighbors(int cell) const {
    std::vector<int> out;
    auto multi = spec_.grid.cell_multi(cell);
    for (int a = 0; a < spec_.grid.dimension; ++a) {
        for (int dir : {-1, 1}) {
            auto m = multi;
            m[a] += dir;
            if (m[a] < 0 || m[a] >= spec_.grid.resolution[a]) continue;
            int c = spec_.grid.cell_index(m);
            if (has_cell(c)) out.push_back(c);
        }
    }
    return out;
}

CellSet TransitionSystem::interior_cells() const {
    CellSet s;
    for (int c : cells_)
        if (!on_box_boundary(c)) s.insert(c);
    return s;
}

void TransitionSystem::require_within(const CellSet& n, const char* what) const {
    for (int c : n)
        if (!has_cell(c))
            fail(ErrorCode::InvalidInput,
                 std::string(what) + " contains cell " + std::to_string(c) + " outside the system");
}

TransitionSystem discretize_flow(const FlowSpec& spec) {
    spec.validate();
    const GridGeometry& g = spec.grid;
    const int d = g.dimension;
    const int n = g.cell_count();

    TransitionSystem t;
    t.spec_ = spec;
    t.cells_.resize(n);
    t.local_of_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        t.cells_[i] = i;
        t.local_of_[i] = i;
    }
    t.out_.assign(n, {});
    t.self_loop_.assign(n, 0);
    t.boundary_.assign(n, 0);
    t.slack_.resize(d);
    for (int a = 0; a < d; ++a) t.slack_[a] = spec.lipschitz[a] * g.width(a) / 2.0;

    // enumerate the corners of a cell / of a face
    std::vector<int> corner_multi(d);
    auto cell_corner_range = [&](const std::vector<int>& cell, int comp, double& lo, double& hi) {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        int combos = 1 << d;
        for (int mask = 0; mask < combos; ++mask) {
            for (int a = 0; a < d; ++a) corner_multi[a] = cell[a] + ((mask >> a) & 1);
            double v = spec.sample(comp, g.corner_index(corner_multi));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    };
    auto face_corner_range = [&](const std::vector<int>& cell, int axis, double& lo, double& hi) {
        // upper face of `cell` in direction `axis`
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        int combos = 1 << (d - 1);
        for (int mask = 0; mask < combos; ++mask) {
            int bit = 0;
            for (int a = 0; a < d; ++a) {
                if (a == axis) {
                    corner_multi[a] = cell[a] + 1;
                } else {
                    corner_multi[a] = cell[a] + ((mask >> bit) & 1);
                    ++bit;
                }
            }
            double v = spec.sample(axis, g.corner_index(corner_multi));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    };

    for (int c = 0; c < n; ++c) {
        auto multi = g.cell_multi(c);
        t.boundary_[c] = g.on_box_boundary(multi) ? 1 : 0;

        bool loop = true;
        for (int a = 0; a < d && loop; ++a) {
            double lo, hi;
            cell_corner_range(multi, a, lo, hi);
            if (lo - t.slack_[a] > 0.0 || hi + t.slack_[a] < 0.0) loop = false;
        }
        t.self_loop_[c] = loop ? 1 : 0;

        for (int a = 0; a < d; ++a) {
            if (multi[a] + 1 >= g.resolution[a]) continue;
            double lo, hi;
            face_corner_range(multi, a, lo, hi);
            auto m2 = multi;
            m2[a] += 1;
            int c2 = g.cell_index(m2);
            if (hi + t.slack_[a] > 0.0) t.out_[c].push_back(c2);   // flow c -> c2 possible
            if (lo - t.slack_[a] < 0.0) t.out_[c2].push_back(c);   // flow c2 -> c possible
        }
    }
    for (auto& e : t.out_) std::sort(e.begin(), e.end());
    return t;
}

TransitionSystem reverse_system(const TransitionSystem& t) {
    TransitionSystem r = t;
    for (auto& e : r.out_) e.clear();
    for (std::size_t i = 0; i < t.cells_.size(); ++i) {
        int src = t.cells_[i];
        for (int dst : t.out_[i]) r.out_[r.local_index(dst)].push_back(src);
    }
    for (auto& e : r.out_) std::sort(e.begin(), e.end());
    return r;
}

int map_cell(const GridGeometry& grid, const GroupAction& action, int cell) {
    auto multi = grid.cell_multi(cell);
    std::vector<int> image(grid.dimension);
    for (int a = 0; a < grid.dimension; ++a) {
        int target = action.permutation[a];
        image[target] = action.signs[a] == 1 ? multi[a] : grid.resolution[a] - 1 - multi[a];
    }
    return grid.cell_index(image);
}

CellSet map_cell_set(const GridGeometry& grid, const GroupAction& action, const CellSet& s) {
    CellSet out;
    for (int c : s) out.insert(map_cell(grid, action, c));
    return out;
}

namespace {

void check_grid_symmetry(const GridGeometry& g, const GroupAction& action) {
    action.validate(g.dimension);
    for (int a = 0; a < g.dimension; ++a) {
        int b = action.permutation[a];
        if (g.resolution[a] != g.resolution[b])
            fail(ErrorCode::ActionNotSymmetry, "action does not preserve the grid resolution");
        double lo = g.box[a].first, hi = g.box[a].second;
        double tlo = action.signs[a] == 1 ? lo : -hi;
        double thi = action.signs[a] == 1 ? hi : -lo;
        if (g.box[b].first != tlo || g.box[b].second != thi)
            fail(ErrorCode::ActionNotSymmetry, "action does not map the box to itself");
    }
}

void check_sample_symmetry(const FlowSpec& spec, const GroupAction& action) {
    const GridGeometry& g = spec.grid;
    std::vector<int> image(g.dimension);
    for (int idx = 0; idx < g.corner_count(); ++idx) {
        auto multi = g.corner_multi(idx);
        for (int a = 0; a < g.dimension; ++a) {
            int target = action.permutation[a];
            image[target] = action.signs[a] == 1 ? multi[a] : g.resolution[a] - multi[a];
        }
        int image_idx = g.corner_index(image);
        for (int a = 0; a < g.dimension; ++a) {
            double expected = action.signs[a] == 1 ? spec.sample(a, idx) : -spec.sample(a, idx);
            if (spec.sample(action.permutation[a], image_idx) != expected)
                fail(ErrorCode::ActionNotSymmetry,
                     "field samples are not equivariant under the action",
                     "corner " + std::to_string(idx) + " component " + std::to_string(a));
        }
    }
}

// Does the closed cell meet the fixed locus of the action?
bool cell_meets_fixed_locus(const GridGeometry& g, const GroupAction& action,
                            const std::vector<int>& multi) {
    const int d = g.dimension;
    std::vector<char> visited(d, 0);
    for (int start = 0; start < d; ++start) {
        if (visited[start]) continue;
        // walk the permutation cycle through `start`
        std::vector<int> cycle;
        std::vector<int> sign_along; // sign applied when stepping cycle[i] -> cycle[i+1]
        int a = start;
        do {
            visited[a] = 1;
            cycle.push_back(a);
            sign_along.push_back(action.signs[a]);
            a = action.permutation[a];
        } while (a != start);

        // On the fixed locus, x[cycle[i+1]] = sign_along[i] * x[cycle[i]].
        // Intersect the cell's intervals transported to the first coordinate.
        double lo = g.box[cycle[0]].first + multi[cycle[0]] * g.width(cycle[0]);
        double hi = lo + g.width(cycle[0]);
        int sign_product = 1;
        double cum_sign = 1.0;
        for (std::size_t i = 1; i <= cycle.size(); ++i) {
            sign_product *= sign_along[i - 1];
            if (i == cycle.size()) break;
            cum_sign *= sign_along[i - 1];
            int axis = cycle[i];
            double alo = g.box[axis].first + multi[axis] * g.width(axis);
            double ahi = alo + g.width(axis);
            // constraint: x[axis] = cum_sign * u  =>  u in [alo, ahi] / cum_sign
            double ulo = cum_sign > 0 ? alo : -ahi;
            double uhi = cum_sign > 0 ? ahi : -alo;
            lo = std::max(lo, ulo);
            hi = std::min(hi, uhi);
            if (lo > hi) return false;
        }
        if (sign_product == -1) {
            // closing the cycle forces u = 0
            if (lo > 0.0 || hi < 0.0) return false;
        }
        // sign_product == +1: any u in [lo, hi] works (nonempty checked above)
    }
    return true;
}

} // namespace

TransitionSystem restrict_to_fixed_subgrid(const TransitionSystem& t, const GroupAction& action) {
    const FlowSpec& spec = t.spec();
    check_grid_symmetry(spec.grid, action);
    check_sample_symmetry(spec, action);

    if (action.is_identity()) return t;

    TransitionSystem sub;
    sub.spec_ = spec;
    sub.slack_ = t.slack_;
    sub.local_of_.assign(spec.grid.cell_count(), -1);
    for (int c : t.cells()) {
        if (cell_meets_fixed_locus(spec.grid, action, spec.grid.cell_multi(c))) {
            sub.local_of_[c] = static_cast<int>(sub.cells_.size());
            sub.cells_.push_back(c);
        }
    }
    sub.out_.assign(sub.cells_.size(), {});
    sub.self_loop_.assign(sub.cells_.size(), 0);
    sub.boundary_.assign(sub.cells_.size(), 0);
    for (std::size_t i = 0; i < sub.cells_.size(); ++i) {
        int c = sub.cells_[i];
        sub.self_loop_[i] = t.self_loop(c) ? 1 : 0;
        sub.boundary_[i] = t.on_box_boundary(c) ? 1 : 0;
        for (int dst : t.out_edges(c))
            if (sub.local_of_[dst] >= 0) sub.out_[i].push_back(dst);
    }
    return sub;
}

} // namespace confloer
