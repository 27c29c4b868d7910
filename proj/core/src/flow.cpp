#include "confloer/flow.hpp"

#include <cmath>

namespace confloer {

GroupAction GroupAction::identity(int dimension) {
    GroupAction a;
    a.permutation.resize(dimension);
    a.signs.assign(dimension, 1);
    for (int i = 0; i < dimension; ++i) a.permutation[i] = i;
    return a;
}

bool GroupAction::is_identity() const {
    for (int i = 0; i < static_cast<int>(permutation.size()); ++i)
        if (permutation[i] != i || signs[i] != 1) return false;
    return true;
}

void GroupAction::validate(int dimension) const {
    if (static_cast<int>(permutation.size()) != dimension ||
        static_cast<int>(signs.size()) != dimension)
        fail(ErrorCode::InvalidInput, "group action arity does not match flow dimension");
    std::vector<char> seen(dimension, 0);
    for (int i = 0; i < dimension; ++i) {
        if (permutation[i] < 0 || permutation[i] >= dimension || seen[permutation[i]])
            fail(ErrorCode::InvalidInput, "group action permutation is not a bijection");
        seen[permutation[i]] = 1;
        if (signs[i] != 1 && signs[i] != -1)
            fail(ErrorCode::InvalidInput, "group action signs must be +1 or -1");
    }
}

std::vector<double> GroupAction::apply_vector(const std::vector<double>& v) const {
    std::vector<double> out(v.size(), 0.0);
    for (int a = 0; a < static_cast<int>(v.size()); ++a)
        out[permutation[a]] = signs[a] == 1 ? v[a] : -v[a];
    return out;
}

int GridGeometry::cell_count() const {
    int n = 1;
    for (int r : resolution) n *= r;
    return n;
}

int GridGeometry::corner_count() const {
    int n = 1;
    for (int r : resolution) n *= r + 1;
    return n;
}

double GridGeometry::width(int axis) const {
    return (box[axis].second - box[axis].first) / resolution[axis];
}

int GridGeometry::cell_index(const std::vector<int>& multi) const {
    int idx = 0;
    for (int a = 0; a < dimension; ++a) idx = idx * resolution[a] + multi[a];
    return idx;
}

std::vector<int> GridGeometry::cell_multi(int index) const {
    std::vector<int> multi(dimension);
    for (int a = dimension - 1; a >= 0; --a) {
        multi[a] = index % resolution[a];
        index /= resolution[a];
    }
    return multi;
}

int GridGeometry::corner_index(const std::vector<int>& multi) const {
    int idx = 0;
    for (int a = 0; a < dimension; ++a) idx = idx * (resolution[a] + 1) + multi[a];
    return idx;
}

std::vector<int> GridGeometry::corner_multi(int index) const {
    std::vector<int> multi(dimension);
    for (int a = dimension - 1; a >= 0; --a) {
        multi[a] = index % (resolution[a] + 1);
        index /= resolution[a] + 1;
    }
    return multi;
}

double GridGeometry::corner_coordinate(int axis, int lattice) const {
    // convex combination of the endpoints: keeps mirrored corners exactly
    // negated on symmetric boxes at every resolution
    return (box[axis].first * (resolution[axis] - lattice) + box[axis].second * lattice) /
           resolution[axis];
}

bool GridGeometry::on_box_boundary(const std::vector<int>& multi) const {
    for (int a = 0; a < dimension; ++a)
        if (multi[a] == 0 || multi[a] == resolution[a] - 1) return true;
    return false;
}

void FlowSpec::validate() const {
    if (grid.dimension < 1) fail(ErrorCode::InvalidInput, "flow dimension must be >= 1");
    if (static_cast<int>(grid.box.size()) != grid.dimension ||
        static_cast<int>(grid.resolution.size()) != grid.dimension)
        fail(ErrorCode::InvalidInput, "box/resolution arity does not match dimension");
    for (int a = 0; a < grid.dimension; ++a) {
        if (grid.resolution[a] < 2)
            fail(ErrorCode::InvalidInput, "resolution must be >= 2 per axis");
        if (!(grid.box[a].first < grid.box[a].second))
            fail(ErrorCode::InvalidInput, "box bounds must satisfy lo < hi");
    }
    if (static_cast<int>(samples.size()) != grid.dimension)
        fail(ErrorCode::InvalidInput, "need one sample array per field component");
    for (const auto& comp : samples) {
        if (static_cast<int>(comp.size()) != grid.corner_count())
            fail(ErrorCode::InvalidInput, "sample array size does not match corner lattice");
        for (double v : comp)
            if (!std::isfinite(v)) fail(ErrorCode::InvalidInput, "non-finite field sample");
    }
    if (static_cast<int>(lipschitz.size()) != grid.dimension)
        fail(ErrorCode::InvalidInput, "need one Lipschitz bound per component");
    for (double l : lipschitz)
        if (!(l >= 0) || !std::isfinite(l))
            fail(ErrorCode::InvalidInput, "Lipschitz bounds must be finite and >= 0");
    if (action) action->validate(grid.dimension);
}

FlowSpec FlowSpec::from_field(GridGeometry grid,
                              const std::function<std::vector<double>(const std::vector<double>&)>& field,
                              std::vector<double> lipschitz, std::string name,
                              std::optional<GroupAction> action) {
    FlowSpec spec;
    spec.grid = std::move(grid);
    spec.lipschitz = std::move(lipschitz);
    spec.name = std::move(name);
    spec.action = std::move(action);
    const int d = spec.grid.dimension;
    spec.samples.assign(d, std::vector<double>(spec.grid.corner_count(), 0.0));
    std::vector<double> x(d);
    for (int idx = 0; idx < spec.grid.corner_count(); ++idx) {
        auto multi = spec.grid.corner_multi(idx);
        for (int a = 0; a < d; ++a) x[a] = spec.grid.corner_coordinate(a, multi[a]);
        std::vector<double> f = field(x);
        for (int a = 0; a < d; ++a) spec.samples[a][idx] = f[a];
    }
    spec.validate();
    return spec;
}

namespace {

GridGeometry grid_1d(double lo, double hi, int res) {
    GridGeometry g;
    g.dimension = 1;
    g.box = {{lo, hi}};
    g.resolution = {res};
    return g;
}

// The linear catalog fields vanish on the axes, and a face enclosure
// [-s, +s] around a zero forces edges in both directions (spurious
// 2-cycles that destroy isolation).  The face slack equals half a cell
// width, so the origin must sit exactly at a cell center: shift the
// width-2 box by half a cell for even resolutions, keep it symmetric for
// odd ones.
GridGeometry grid_2d(int res) {
    double lo = res % 2 == 0 ? -1.0 - 1.0 / res : -1.0;
    double hi = lo + 2.0;
    GridGeometry g;
    g.dimension = 2;
    g.box = {{lo, hi}, {lo, hi}};
    g.resolution = {res, res};
    return g;
}

} // namespace

FlowSpec catalog_flow(const std::string& name, int resolution) {
    if (name == "double_well_1d") {
        int res = resolution > 0 ? resolution : 64;
        GroupAction mirror;
        mirror.permutation = {0};
        mirror.signs = {-1};
        return FlowSpec::from_field(
            grid_1d(-2.0, 2.0, res),
            [](const std::vector<double>& x) {
                return std::vector<double>{-4.0 * x[0] * (x[0] * x[0] - 1.0)};
            },
            {44.0}, "double_well_1d", mirror);
    }
    if (name == "saddle_2d") {
        int res = resolution > 0 ? resolution : 64;
        return FlowSpec::from_field(
            grid_2d(res),
            [](const std::vector<double>& x) { return std::vector<double>{x[0], -x[1]}; },
            {1.0, 1.0}, "saddle_2d");
    }
    if (name == "min_2d") {
        int res = resolution > 0 ? resolution : 64;
        return FlowSpec::from_field(
            grid_2d(res),
            [](const std::vector<double>& x) { return std::vector<double>{-x[0], -x[1]}; },
            {1.0, 1.0}, "min_2d");
    }
    if (name == "max_2d") {
        int res = resolution > 0 ? resolution : 64;
        return FlowSpec::from_field(
            grid_2d(res),
            [](const std::vector<double>& x) { return std::vector<double>{x[0], x[1]}; },
            {1.0, 1.0}, "max_2d");
    }
    fail(ErrorCode::InvalidInput, "unknown catalog flow: " + name);
}

std::vector<std::string> flow_catalog_names() {
    return {"double_well_1d", "saddle_2d", "min_2d", "max_2d"};
}

} // namespace confloer
