#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confloer/conley.hpp"
#include "confloer/cubical.hpp"
#include "confloer/morse.hpp"
#include "support.hpp"

using namespace confloer;

namespace {

FlowSpec constant_right_1d(int cells) {
    GridGeometry g;
    g.dimension = 1;
    g.box = {{0.0, 1.0}};
    g.resolution = {cells};
    return FlowSpec::from_field(
        g, [](const std::vector<double>&) { return std::vector<double>{1.0}; }, {0.0});
}

CellSet cells_in_range(const TransitionSystem& t, double lo, double hi) {
    CellSet out;
    const GridGeometry& g = t.grid();
    for (int c : t.cells()) {
        auto multi = g.cell_multi(c);
        bool inside = true;
        for (int a = 0; a < g.dimension; ++a) {
            double cell_lo = g.box[a].first + multi[a] * g.width(a);
            if (cell_lo < lo - 1e-12 || cell_lo + g.width(a) > hi + 1e-12) inside = false;
        }
        if (inside) out.insert(c);
    }
    return out;
}

MorseData double_well_morse() {
    MorseData d;
    d.points = {{"top", 1}, {"left", 0}, {"right", 0}};
    d.lines = {{"top", "left", 1}, {"top", "right", -1}};
    return d;
}

} // namespace

TEST_CASE("constant rightward field: only rightward edges, no loops") {
    TransitionSystem t = discretize_flow(constant_right_1d(4));
    for (int c : t.cells()) {
        CHECK_FALSE(t.self_loop(c));
        for (int d : t.out_edges(c)) CHECK(d == c + 1);
    }
    CHECK(t.out_edges(0).size() == 1);
    CHECK(t.out_edges(3).empty());
}

TEST_CASE("double well self-loops match directly evaluated enclosures") {
    FlowSpec spec = catalog_flow("double_well_1d", 64);
    TransitionSystem t = discretize_flow(spec);
    double h = spec.grid.width(0);
    double s = spec.lipschitz[0] * h / 2.0;
    for (int c : t.cells()) {
        double x0 = spec.grid.box[0].first + c * h;
        double f0 = -4.0 * x0 * (x0 * x0 - 1.0);
        double x1 = x0 + h;
        double f1 = -4.0 * x1 * (x1 * x1 - 1.0);
        double lo = std::min(f0, f1) - s, hi = std::max(f0, f1) + s;
        CHECK(t.self_loop(c) == (lo <= 0.0 && hi >= 0.0));
    }
}

TEST_CASE("all-zero samples give a self-loop") {
    GridGeometry g;
    g.dimension = 1;
    g.box = {{0.0, 1.0}};
    g.resolution = {2};
    FlowSpec spec = FlowSpec::from_field(
        g, [](const std::vector<double>&) { return std::vector<double>{0.0}; }, {0.0});
    TransitionSystem t = discretize_flow(spec);
    CHECK(t.self_loop(0));
    CHECK(t.self_loop(1));
}

TEST_CASE("discretize rejects non-finite samples") {
    GridGeometry g;
    g.dimension = 1;
    g.box = {{0.0, 1.0}};
    g.resolution = {2};
    FlowSpec spec;
    spec.grid = g;
    spec.samples = {{0.0, 1.0, std::numeric_limits<double>::infinity()}};
    spec.lipschitz = {1.0};
    CHECK_THROWS_AS(discretize_flow(spec), Error);
}

TEST_CASE("invariant part of the empty set is empty") {
    TransitionSystem t = discretize_flow(catalog_flow("double_well_1d", 16));
    CHECK(invariant_part(t, {}).empty());
}

TEST_CASE("invariant part of the double well covers the wells, matches the oracle") {
    TransitionSystem t = discretize_flow(catalog_flow("double_well_1d", 64));
    CellSet all(t.cells().begin(), t.cells().end());
    CellSet inv = invariant_part(t, all);
    CHECK(inv == testing::invariant_part_oracle(t, all));
    // covers [-1, 1] and stays well inside [-2, 2]
    const GridGeometry& g = t.grid();
    double lo = 10, hi = -10;
    for (int c : inv) {
        double x = g.box[0].first + c * g.width(0);
        lo = std::min(lo, x);
        hi = std::max(hi, x + g.width(0));
    }
    CHECK(lo < -1.0);
    CHECK(hi > 1.0);
    CHECK(lo > -1.5);
    CHECK(hi < 1.5);
}

TEST_CASE("acyclic restriction has empty invariant part") {
    TransitionSystem t = discretize_flow(constant_right_1d(8));
    CellSet all(t.cells().begin(), t.cells().end());
    CHECK(invariant_part(t, all).empty());
}

TEST_CASE("isolation: vacuous, full double well, and a cut through the dynamics") {
    TransitionSystem t = discretize_flow(catalog_flow("double_well_1d", 64));
    CHECK(is_isolating(t, {}));
    CellSet all(t.cells().begin(), t.cells().end());
    CHECK(is_isolating(t, all));
    CHECK_FALSE(is_isolating(t, cells_in_range(t, -1.0, 0.5)));
}

TEST_CASE("attractor pair has an empty exit set") {
    TransitionSystem t = discretize_flow(catalog_flow("min_2d", 32));
    IndexPair p = construct_index_pair(t, t.interior_cells());
    CHECK(p.exit_set.empty());
    CHECK(p.verified);
    CHECK(p.report.all());
}

TEST_CASE("saddle pair exits through two opposite strips in the x direction") {
    TransitionSystem t = discretize_flow(catalog_flow("saddle_2d", 32));
    IndexPair p = construct_index_pair(t, t.interior_cells());
    CHECK(p.report.all());
    CHECK_FALSE(p.exit_set.empty());
    // every exit cell sits at the candidate's x extremes, on both sides
    const GridGeometry& g = t.grid();
    bool left = false, right = false;
    for (int c : p.exit_set) {
        auto multi = g.cell_multi(c);
        if (multi[0] <= g.resolution[0] / 2) left = true;
        if (multi[0] >= g.resolution[0] / 2) right = true;
    }
    CHECK(left);
    CHECK(right);
    // and the exit set splits into the two x-sides of the invariant part
    CellSet s;
    for (int c : p.n_prime)
        if (!p.exit_set.count(c)) s.insert(c);
    int s_min = g.resolution[0], s_max = 0;
    for (int c : s) {
        auto multi = g.cell_multi(c);
        s_min = std::min(s_min, multi[0]);
        s_max = std::max(s_max, multi[0]);
    }
    for (int c : p.exit_set) {
        auto multi = g.cell_multi(c);
        bool outside_x = multi[0] < s_min || multi[0] > s_max;
        CHECK(outside_x);
    }
}

TEST_CASE("empty invariant set gives the empty pair") {
    TransitionSystem t = discretize_flow(constant_right_1d(8));
    CellSet all(t.cells().begin(), t.cells().end());
    IndexPair p = construct_index_pair(t, all);
    CHECK(p.n_prime.empty());
    CHECK(p.exit_set.empty());
}

TEST_CASE("degenerate pair with L = N' fails condition (i)") {
    TransitionSystem t = discretize_flow(catalog_flow("double_well_1d", 32));
    CellSet all(t.cells().begin(), t.cells().end());
    IndexPair good = construct_index_pair(t, all);
    IndexPair degenerate;
    degenerate.n_prime = good.n_prime;
    degenerate.exit_set = good.n_prime;
    IndexPairReport report = verify_index_pair(t, degenerate, all);
    CHECK_FALSE(report.invariant_interior.pass);
}

TEST_CASE("index homology of the three planar blocks") {
    struct Row {
        const char* name;
        int grading;
    };
    for (Row row : {Row{"min_2d", 0}, Row{"saddle_2d", 1}, Row{"max_2d", 2}}) {
        TransitionSystem t = discretize_flow(catalog_flow(row.name, 32));
        IndexPair p = construct_index_pair(t, t.interior_cells());
        GradedHomology h = conley_index_homology(t, p);
        CHECK(h.rank_at(row.grading) == 1);
        CHECK(h.total_rank() == 1);
    }
}

TEST_CASE("index homology of nondegenerate blocks in three dimensions") {
    // box shifted by half a cell so the equilibrium sits at a cell center
    const int res = 8;
    GridGeometry g;
    g.dimension = 3;
    g.box.assign(3, {-1.0 - 1.0 / res, 1.0 - 1.0 / res});
    g.resolution.assign(3, res);
    struct Block {
        int index;
        std::vector<double> signs; // +1 = expanding axis
    };
    for (const Block& block : {Block{0, {-1, -1, -1}}, Block{1, {1, -1, -1}},
                               Block{2, {1, 1, -1}}, Block{3, {1, 1, 1}}}) {
        FlowSpec spec = FlowSpec::from_field(
            g,
            [&](const std::vector<double>& x) {
                return std::vector<double>{block.signs[0] * x[0], block.signs[1] * x[1],
                                           block.signs[2] * x[2]};
            },
            {1.0, 1.0, 1.0});
        TransitionSystem t = discretize_flow(spec);
        IndexPair p = construct_index_pair(t, t.interior_cells());
        GradedHomology h = conley_index_homology(t, p);
        CHECK(h.rank_at(block.index) == 1);
        CHECK(h.total_rank() == 1);
    }
}

TEST_CASE("reversing twice is the identity") {
    TransitionSystem t = discretize_flow(catalog_flow("saddle_2d", 16));
    TransitionSystem rr = reverse_system(reverse_system(t));
    for (int c : t.cells()) {
        CHECK(t.out_edges(c) == rr.out_edges(c));
        CHECK(t.self_loop(c) == rr.self_loop(c));
    }
}

TEST_CASE("constant field reversed points the other way") {
    TransitionSystem t = discretize_flow(constant_right_1d(4));
    TransitionSystem r = reverse_system(t);
    for (int c : r.cells())
        for (int d : r.out_edges(c)) CHECK(d == c - 1);
}

TEST_CASE("saddle duality: reverse index homology in grading n - k") {
    TransitionSystem t = discretize_flow(catalog_flow("saddle_2d", 32));
    TransitionSystem r = reverse_system(t);
    IndexPair p = construct_index_pair(r, r.interior_cells());
    GradedHomology h = conley_index_homology(r, p);
    CHECK(h.rank_at(1) == 1); // S^(2-1)
    CHECK(h.total_rank() == 1);
}

TEST_CASE("forward homology matches reverse cohomology in three dimensions") {
    const int res = 8;
    GridGeometry g;
    g.dimension = 3;
    g.box.assign(3, {-1.0 - 1.0 / res, 1.0 - 1.0 / res});
    g.resolution.assign(3, res);
    FlowSpec spec = FlowSpec::from_field(
        g,
        [](const std::vector<double>& x) {
            return std::vector<double>{x[0], x[1], -x[2]}; // index-2 block
        },
        {1.0, 1.0, 1.0});
    TransitionSystem t = discretize_flow(spec);
    IndexPair p = construct_index_pair(t, t.interior_cells());
    GradedHomology fwd = conley_index_homology(t, p);

    TransitionSystem r = reverse_system(t);
    IndexPair rp = construct_index_pair(r, r.interior_cells());
    GradedHomology reverse_coh =
        cohomology_of_complex(relative_cubical_complex(r.grid(), rp.n_prime, rp.exit_set));
    for (int k = 0; k <= 3; ++k)
        CHECK(fwd.rank_at(k) == reverse_coh.rank_at(-(3 - k)));
}

TEST_CASE("continuation: constant saddle family") {
    std::vector<FlowSpec> family(3, catalog_flow("saddle_2d", 16));
    TransitionSystem t = discretize_flow(family[0]);
    ContinuationReport report = continuation_check(family, t.interior_cells());
    CHECK(report.all_equal);
    CHECK(report.homologies.size() == 3);
}

TEST_CASE("continuation: interpolated well depths keep the index") {
    std::vector<FlowSpec> family;
    GridGeometry g;
    g.dimension = 1;
    g.box = {{-2.0, 2.0}};
    g.resolution = {64};
    for (int i = 0; i <= 5; ++i) {
        double depth = 1.0 + 0.35 * i / 5.0;
        family.push_back(FlowSpec::from_field(
            g,
            [depth](const std::vector<double>& x) {
                return std::vector<double>{-4.0 * depth * x[0] * (x[0] * x[0] - 1.0)};
            },
            {60.0}));
    }
    TransitionSystem t = discretize_flow(family[0]);
    ContinuationReport report = continuation_check(family, t.interior_cells());
    CHECK(report.all_equal);
}

TEST_CASE("continuation: an equilibrium crossing the cut raises IsolationViolated") {
    GridGeometry g;
    g.dimension = 1;
    g.box = {{-2.0, 2.0}};
    g.resolution = {64};
    std::vector<FlowSpec> family;
    for (int i = 0; i <= 4; ++i) {
        double radius = 1.0 + 0.3 * i; // outer equilibria drift to +-(1+0.3i)
        family.push_back(FlowSpec::from_field(
            g,
            [radius](const std::vector<double>& x) {
                return std::vector<double>{-4.0 * x[0] * (x[0] * x[0] - radius * radius)};
            },
            {80.0}));
    }
    TransitionSystem t = discretize_flow(family[0]);
    CellSet n = cells_in_range(t, -1.75, 1.75);
    try {
        continuation_check(family, n);
        FAIL("expected IsolationViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IsolationViolated);
        CHECK_FALSE(e.witness().empty());
    }
}

TEST_CASE("fixed subgrid of the even double well is the column at the origin") {
    FlowSpec spec = catalog_flow("double_well_1d", 64);
    TransitionSystem t = discretize_flow(spec);
    TransitionSystem fixed = restrict_to_fixed_subgrid(t, *spec.action);
    CHECK(fixed.cells().size() == 2);
    for (int c : fixed.cells()) {
        double lo = spec.grid.box[0].first + c * spec.grid.width(0);
        CHECK(lo <= 0.0);
        CHECK(lo + spec.grid.width(0) >= 0.0);
    }
}

TEST_CASE("trivial action returns the system unchanged") {
    FlowSpec spec = catalog_flow("double_well_1d", 16);
    TransitionSystem t = discretize_flow(spec);
    TransitionSystem fixed = restrict_to_fixed_subgrid(t, GroupAction::identity(1));
    CHECK(fixed.cells().size() == t.cells().size());
}

TEST_CASE("asymmetric field is rejected as not a symmetry") {
    GridGeometry g;
    g.dimension = 1;
    g.box = {{-2.0, 2.0}};
    g.resolution = {16};
    FlowSpec spec = FlowSpec::from_field(
        g, [](const std::vector<double>& x) { return std::vector<double>{x[0] + 0.25}; }, {1.0});
    TransitionSystem t = discretize_flow(spec);
    GroupAction mirror;
    mirror.permutation = {0};
    mirror.signs = {-1};
    CHECK_THROWS_AS(restrict_to_fixed_subgrid(t, mirror), Error);
}

TEST_CASE("constructed pairs are setwise invariant for symmetric flows") {
    FlowSpec spec = catalog_flow("double_well_1d", 64);
    TransitionSystem t = discretize_flow(spec);
    EquivarianceReport r = check_pair_equivariance(t, *spec.action, t.interior_cells());
    CHECK(r.pass());
}

TEST_CASE("refining the resolution never removes invariant cells after coarsening") {
    // fixed boxes here: coarsening needs the two grids aligned
    auto saddle = [](const std::vector<double>& x) { return std::vector<double>{x[0], -x[1]}; };
    auto bowl = [](const std::vector<double>& x) { return std::vector<double>{-x[0], -x[1]}; };
    auto well = [](const std::vector<double>& x) {
        return std::vector<double>{-4.0 * x[0] * (x[0] * x[0] - 1.0)};
    };
    auto grid = [](int dim, int res) {
        GridGeometry g;
        g.dimension = dim;
        g.box.assign(dim, {dim == 1 ? -2.0 : -1.0, dim == 1 ? 2.0 : 1.0});
        g.resolution.assign(dim, res);
        return g;
    };
    struct Case {
        int dim;
        std::function<std::vector<double>(const std::vector<double>&)> field;
        std::vector<double> lipschitz;
    };
    std::vector<Case> cases = {{1, well, {44.0}}, {2, saddle, {1.0, 1.0}}, {2, bowl, {1.0, 1.0}}};
    for (const auto& c : cases) {
        for (int res : {16, 32}) {
            TransitionSystem tc =
                discretize_flow(FlowSpec::from_field(grid(c.dim, res), c.field, c.lipschitz));
            TransitionSystem tf =
                discretize_flow(FlowSpec::from_field(grid(c.dim, 2 * res), c.field, c.lipschitz));
            CellSet inv_c = invariant_part(tc, CellSet(tc.cells().begin(), tc.cells().end()));
            CellSet inv_f = invariant_part(tf, CellSet(tf.cells().begin(), tf.cells().end()));
            for (int cell : inv_f) {
                auto multi = tf.grid().cell_multi(cell);
                for (auto& m : multi) m /= 2;
                // box-boundary cells are outside every candidate set, so a
                // parent on the coarse rim carries no containment claim
                if (tc.grid().on_box_boundary(multi)) continue;
                CHECK(inv_c.count(tc.grid().cell_index(multi)) == 1);
            }
        }
    }
}

TEST_CASE("morse boundary matrices") {
    SUBCASE("no flow lines give the zero differential") {
        MorseData d;
        d.points = {{"a", 0}, {"b", 1}};
        GradedChainComplex c = morse_boundary(d);
        CHECK(c.boundary(1).is_zero());
    }
    SUBCASE("max-saddle-min chain") {
        MorseData d;
        d.points = {{"x", 2}, {"y", 1}, {"z", 0}};
        d.lines = {{"x", "y", 1}, {"y", "z", 1}};
        GradedChainComplex c = morse_boundary(d);
        CHECK(c.boundary(2).at(0, 0) == 1);
        CHECK(c.boundary(1).at(0, 0) == 1);
    }
    SUBCASE("double well signs") {
        GradedChainComplex c = morse_boundary(double_well_morse());
        ExactMatrix b = c.boundary(1);
        CHECK(b.rows() == 2);
        CHECK(b.cols() == 1);
        CHECK(b.at(0, 0) * b.at(1, 0) == -1);
    }
}

TEST_CASE("d^2 detection") {
    MorseData bad;
    bad.points = {{"x", 2}, {"y", 1}, {"z", 0}};
    bad.lines = {{"x", "y", 1}, {"y", "z", 1}};
    bad.connecting_set_compact = false;
    DSquaredReport r = check_d_squared(bad);
    CHECK_FALSE(r.pass);
    CHECK(r.witness_from == "x");
    CHECK(r.witness_to == "z");
    CHECK(abs(r.value) == 1);

    CHECK(check_d_squared(double_well_morse()).pass);

    MorseData two_pairs;
    two_pairs.points = {{"s1", 1}, {"m1", 0}, {"s2", 1}, {"m2", 0}};
    two_pairs.lines = {{"s1", "m1", 1}, {"s2", "m2", 1}};
    CHECK(check_d_squared(two_pairs).pass);
}

TEST_CASE("morse homology of the double well") {
    GradedHomology h = morse_homology(double_well_morse());
    CHECK(h.rank_at(0) == 1);
    CHECK(h.total_rank() == 1);
}

TEST_CASE("morse homology refuses the broken complex") {
    MorseData bad;
    bad.points = {{"x", 2}, {"y", 1}, {"z", 0}};
    bad.lines = {{"x", "y", 1}, {"y", "z", 1}};
    CHECK_THROWS_AS(morse_homology(bad), Error);
}

TEST_CASE("empty morse data has zero homology") {
    CHECK(morse_homology(MorseData{}).groups.empty());
}

TEST_CASE("floer comparison: double well matches, wrong data does not") {
    TransitionSystem t = discretize_flow(catalog_flow("double_well_1d", 64));
    CellSet n = t.interior_cells();
    FloerComparisonReport match = floer_comparison(double_well_morse(), t, n);
    CHECK(match.match);

    MorseData saddle_data;
    saddle_data.points = {{"s", 1}};
    FloerComparisonReport mismatch = floer_comparison(saddle_data, t, n);
    CHECK_FALSE(mismatch.match);
    CHECK_FALSE(mismatch.diff.empty());
}

TEST_CASE("saddle morse data matches the saddle index") {
    TransitionSystem t = discretize_flow(catalog_flow("saddle_2d", 32));
    MorseData d;
    d.points = {{"s", 1}};
    FloerComparisonReport r = floer_comparison(d, t, t.interior_cells());
    CHECK(r.match);
}

TEST_CASE("cubical complexes satisfy d^2 = 0 in dimensions 2 and 3") {
    GridGeometry g2;
    g2.dimension = 2;
    g2.box = {{0.0, 3.0}, {0.0, 3.0}};
    g2.resolution = {3, 3};
    CellSet block2;
    for (int c = 0; c < 9; ++c) block2.insert(c);
    CHECK_NOTHROW(relative_cubical_complex(g2, block2, {}));

    GridGeometry g3;
    g3.dimension = 3;
    g3.box = {{0.0, 2.0}, {0.0, 2.0}, {0.0, 2.0}};
    g3.resolution = {2, 2, 2};
    CellSet block3;
    for (int c = 0; c < 8; ++c) block3.insert(c);
    GradedChainComplex c3 = relative_cubical_complex(g3, block3, {});
    GradedHomology h3 = homology_of_complex(c3);
    CHECK(h3.rank_at(0) == 1);
    CHECK(h3.total_rank() == 1);
}

TEST_CASE("cubical homology of an annulus keeps the hole") {
    GridGeometry g;
    g.dimension = 2;
    g.box = {{0.0, 3.0}, {0.0, 3.0}};
    g.resolution = {3, 3};
    CellSet ring;
    for (int c = 0; c < 9; ++c)
        if (c != 4) ring.insert(c); // all cells except the middle one
    GradedHomology h = homology_of_complex(relative_cubical_complex(g, ring, {}));
    CHECK(h.rank_at(0) == 1);
    CHECK(h.rank_at(1) == 1);
    CHECK(h.total_rank() == 2);
}

TEST_CASE("invariant part is idempotent and monotone") {
    testing::Rng rng(testing::default_seed() + 7);
    TransitionSystem t = discretize_flow(catalog_flow("double_well_1d", 32));
    std::vector<int> cells = t.cells();
    for (int trial = 0; trial < 25; ++trial) {
        CellSet n1, n2;
        for (int c : cells) {
            if (testing::pick(rng, 0, 1)) n2.insert(c);
        }
        for (int c : n2)
            if (testing::pick(rng, 0, 1)) n1.insert(c);
        CellSet inv1 = invariant_part(t, n1);
        CellSet inv2 = invariant_part(t, n2);
        for (int c : inv1) CHECK(inv2.count(c) == 1);
        CHECK(invariant_part(t, inv2) == inv2);
    }
}
