#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confloer/floer_catalog.hpp"
#include "confloer/json_io.hpp"
#include "confloer/module_homology.hpp"
#include "support.hpp"

using namespace confloer;

namespace {

std::vector<int> dims_on(const HomologyModule& h, int lo, int hi) {
    std::vector<int> out;
    for (int g = lo; g <= hi; ++g) out.push_back(h.dim_at(g + h.offset));
    return out;
}

bool same_presentation(const EquivariantComplex& a, const EquivariantComplex& b) {
    return io::to_json(a) == io::to_json(b);
}

} // namespace

TEST_CASE("tower-only builders put the bottom where n says") {
    EquivariantComplex s3 = build_s1_complex(0, {});
    HomologyModule h = module_homology(s3);
    CHECK(h.dim_at(-2) == 0);
    CHECK(h.dim_at(0) == 1);
    CHECK(h.dim_at(1) == 0);
    CHECK(h.dim_at(2) == 1);

    EquivariantComplex poincare = build_pin2_complex(-1, {});
    HomologyModule hp = module_homology(poincare);
    CHECK(hp.dim_at(0) == 0);
    CHECK(hp.dim_at(1) == 0);
    CHECK(hp.dim_at(2) == 1);
    CHECK(hp.dim_at(3) == 1);
    CHECK(hp.dim_at(4) == 1);
    CHECK(hp.dim_at(5) == 0);
    CHECK(hp.dim_at(6) == 1);
}

TEST_CASE("builder rejects degree mismatches and broken differentials") {
    IrreducibleSpec wrong{"w", 2, {{false, 0, 1}}, {}, {}, {}};
    CHECK_THROWS_AS(build_s1_complex(0, {wrong}), Error); // d to itself, wrong degree

    // x (grading 2) -> y (grading 1) -> tower bottom: d^2(x) = t0 != 0
    IrreducibleSpec y{"y", 1, {{true, -1, 1}}, {}, {}, {}};
    IrreducibleSpec x{"x", 2, {{false, 0, 1}}, {}, {}, {}};
    try {
        build_s1_complex(0, {y, x});
        FAIL("expected DSquaredNonzero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DSquaredNonzero);
    }
}

TEST_CASE("builder rejects flavor-foreign operator targets") {
    IrreducibleSpec bad{"b", 1, {}, {}, {{true, -1, 1}}, {}};
    CHECK_THROWS_AS(build_s1_complex(0, {bad}), Error);
}

TEST_CASE("homology of the S1 catalog complexes") {
    HomologyModule h = module_homology(catalog_complex("Sigma_2_3_11", Flavor::S1));
    // tower with the bottom Z pushed up to degree 2, plus the degree-1 remnant
    CHECK(dims_on(h, 0, 8) == std::vector<int>{0, 1, 1, 0, 1, 0, 1, 0, 1});

    HomologyModule s3 = module_homology(catalog_complex("S3", Flavor::S1));
    CHECK(dims_on(s3, 0, 4) == std::vector<int>{1, 0, 1, 0, 1});

    HomologyModule p = module_homology(catalog_complex("Sigma_2_3_5", Flavor::S1));
    CHECK(dims_on(p, 0, 6) == std::vector<int>{0, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("homology of the Pin2 catalog complexes") {
    HomologyModule h = module_homology(catalog_complex("Sigma_2_3_11", Flavor::Pin2));
    CHECK(dims_on(h, 0, 10) == std::vector<int>{0, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1});

    HomologyModule s3 = module_homology(catalog_complex("S3", Flavor::Pin2));
    CHECK(dims_on(s3, 0, 6) == std::vector<int>{1, 1, 1, 0, 1, 1, 1});
}

TEST_CASE("zero-differential complexes keep chain-level homology") {
    EquivariantComplex c = build_pin2_complex(0, {IrreducibleSpec{"f", 5, {}, {}, {}, {}}});
    HomologyModule h = module_homology(c);
    CHECK(h.dim_at(5) == 2); // tower generator plus the free irreducible
}

TEST_CASE("invariants of the catalog") {
    InvariantReport s3 = extract_invariants(catalog_complex("S3", Flavor::S1));
    CHECK(s3.d == 0);
    CHECK(s3.h == 0);

    InvariantReport sig11 = extract_invariants(catalog_complex("Sigma_2_3_11", Flavor::S1));
    CHECK(sig11.d == 2);
    CHECK(sig11.h == -1);

    InvariantReport sig5 = extract_invariants(catalog_complex("Sigma_2_3_5", Flavor::S1));
    CHECK(sig5.d == 2);
    CHECK(sig5.h == -1);

    InvariantReport p11 = extract_invariants(catalog_complex("Sigma_2_3_11", Flavor::Pin2));
    CHECK(p11.a == 4);
    CHECK(p11.b == 1);
    CHECK(p11.c == 2);
    CHECK(p11.alpha == 2);
    CHECK(p11.beta == 0);
    CHECK(p11.gamma == 0);
    CHECK(p11.mu == 0);

    InvariantReport ps3 = extract_invariants(catalog_complex("S3", Flavor::Pin2));
    CHECK(ps3.a == 0);
    CHECK(ps3.b == 1);
    CHECK(ps3.c == 2);
    CHECK(ps3.alpha == 0);
    CHECK(ps3.beta == 0);
    CHECK(ps3.gamma == 0);

    InvariantReport p5 = extract_invariants(catalog_complex("Sigma_2_3_5", Flavor::Pin2));
    CHECK(p5.a == 2);
    CHECK(p5.b == 3);
    CHECK(p5.c == 4);
    CHECK(p5.mu == 1);
}

TEST_CASE("extraction works over other prime fields") {
    InvariantReport r = extract_invariants(catalog_complex("Sigma_2_3_11", Flavor::S1, 7));
    CHECK(r.d == 2);
    CHECK(r.h == -1);
}

TEST_CASE("window independence and the too-small window error") {
    EquivariantComplex c = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    auto aw = c.auto_window();
    InvariantReport base = extract_invariants(c);
    InvariantReport wide = extract_invariants(c, std::make_pair(aw.first - 8, aw.second + 8));
    InvariantReport wider = extract_invariants(c, std::make_pair(aw.first - 16, aw.second + 16));
    CHECK(base.a == wide.a);
    CHECK(base.b == wide.b);
    CHECK(base.c == wide.c);
    CHECK(wide.a == wider.a);

    CHECK_THROWS_AS(module_homology(c, std::make_pair(0, 10)), Error);
}

TEST_CASE("dualize is an involution on the catalog") {
    for (const char* name : {"S3", "Sigma_2_3_5", "Sigma_2_3_11"}) {
        for (Flavor flavor : {Flavor::S1, Flavor::Pin2}) {
            EquivariantComplex c = catalog_complex(name, flavor);
            CHECK(same_presentation(dualize(dualize(c)), c));
        }
    }
}

TEST_CASE("the S3 complex is self-dual") {
    EquivariantComplex c = catalog_complex("S3", Flavor::Pin2);
    CHECK(same_presentation(dualize(c), c));
}

TEST_CASE("duality relations on extracted invariants") {
    for (const char* name : {"S3", "Sigma_2_3_5", "Sigma_2_3_11"}) {
        EquivariantComplex s1 = catalog_complex(name, Flavor::S1);
        InvariantReport f = extract_invariants(s1);
        InvariantReport r = extract_invariants(dualize(s1));
        CHECK(r.h == -f.h);

        EquivariantComplex pin = catalog_complex(name, Flavor::Pin2);
        InvariantReport pf = extract_invariants(pin);
        InvariantReport pr = extract_invariants(dualize(pin));
        CHECK(pr.alpha == -pf.gamma);
        CHECK(pr.beta == -pf.beta);
        CHECK(pr.gamma == -pf.alpha);
    }
}

TEST_CASE("dual of the Brieskorn Pin2 complex has (0, 0, -2)") {
    InvariantReport r = extract_invariants(dualize(catalog_complex("Sigma_2_3_11", Flavor::Pin2)));
    CHECK(r.alpha == 0);
    CHECK(r.beta == 0);
    CHECK(r.gamma == -2);
}

TEST_CASE("degree shift") {
    EquivariantComplex c = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    SUBCASE("zero shift is the identity") {
        CHECK(same_presentation(degree_shift(c, 0, true), c));
    }
    SUBCASE("compensated shifts leave the invariants alone") {
        InvariantReport base = extract_invariants(c);
        InvariantReport shifted = extract_invariants(degree_shift(c, 4, true));
        CHECK(shifted.a == base.a);
        CHECK(shifted.b == base.b);
        CHECK(shifted.c == base.c);
        CHECK(shifted.mu == base.mu);

        EquivariantComplex s3 = catalog_complex("S3", Flavor::S1);
        CHECK(extract_invariants(degree_shift(s3, 2, true)).d == 0);
    }
    SUBCASE("uncompensated shifts move the invariants") {
        InvariantReport shifted = extract_invariants(degree_shift(c, 4, false));
        CHECK(shifted.a == 8);
        CHECK(shifted.b == 5);
        CHECK(shifted.c == 6);
    }
    SUBCASE("parity guards") {
        CHECK_THROWS_AS(degree_shift(c, 3, false), Error);
        CHECK_THROWS_AS(degree_shift(c, 2, true), Error); // Pin2 compensated needs 4 | k
        CHECK_NOTHROW(degree_shift(catalog_complex("S3", Flavor::S1), 2, true));
    }
}

TEST_CASE("shifts compose with duality and tensor products") {
    EquivariantComplex c = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    InvariantReport dual_base = extract_invariants(dualize(c));
    InvariantReport dual_shifted = extract_invariants(dualize(degree_shift(c, 4, true)));
    CHECK(dual_shifted.alpha == dual_base.alpha);
    CHECK(dual_shifted.beta == dual_base.beta);
    CHECK(dual_shifted.gamma == dual_base.gamma);

    EquivariantComplex b = catalog_complex("Sigma_2_3_5", Flavor::Pin2);
    InvariantReport left = extract_invariants(tensor_disjoint_union(degree_shift(c, 4, true), b));
    InvariantReport right =
        extract_invariants(degree_shift(tensor_disjoint_union(c, b), 4, true));
    CHECK(testing::same_invariants(left, right));
}

TEST_CASE("n invariant arithmetic") {
    CHECK(n_invariant(0, 0, 0) == 0);
    CHECK(n_invariant(0, 0, -8) == -1);
    CHECK(n_invariant(2, 0, 0) == 2);
    CHECK_THROWS_AS(n_invariant(0, 1, 0), Error);
}

TEST_CASE("rokhlin invariant") {
    CHECK(rokhlin_mu(-8) == 1);
    CHECK(rokhlin_mu(0) == 0);
    CHECK(rokhlin_mu(-16) == 0);
    CHECK_THROWS_AS(rokhlin_mu(-4), Error);
}

TEST_CASE("tensor with the sphere is the identity on invariants and presentation") {
    EquivariantComplex y = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    EquivariantComplex s3 = catalog_complex("S3", Flavor::Pin2);
    EquivariantComplex prod = tensor_disjoint_union(y, s3);
    CHECK(extract_invariants(prod) == extract_invariants(y));
    CHECK(same_presentation(prod, y));
}

TEST_CASE("disjoint union of the Brieskorn sphere with itself") {
    EquivariantComplex y = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    EquivariantComplex yy = tensor_disjoint_union(y, y);
    CHECK(yy.n_materialized() == 0);

    HomologyModule h = module_homology(yy);
    // leftmost element in degree 2, the rank-2 summand one degree above,
    // then the three tails
    CHECK(dims_on(h, 0, 12) == std::vector<int>{0, 0, 1, 2, 1, 1, 1, 0, 1, 1, 1, 0, 1});

    InvariantReport r = extract_invariants(yy);
    CHECK(r.a == 4);
    CHECK(r.b == 5);
    CHECK(r.c == 2);
    CHECK(r.alpha == 2);
    CHECK(r.beta == 2);
    CHECK(r.gamma == 0);
    CHECK(r.mu == 0);
}

TEST_CASE("beta fails additivity with defect 2, alpha with defect -2") {
    EquivariantComplex y = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    AdditivityDefect beta = additivity_defect(0, 1, 0, {y});
    CHECK(beta.defect[0][0] == 2);
    AdditivityDefect alpha = additivity_defect(1, 0, 0, {y});
    CHECK(alpha.defect[0][0] == -2);
    AdditivityDefect unit = additivity_defect(3, -1, 2, {catalog_complex("S3", Flavor::Pin2)});
    CHECK(unit.defect[0][0] == 0);
}

TEST_CASE("tensor adds n and mu") {
    EquivariantComplex a = catalog_complex("Sigma_2_3_5", Flavor::Pin2);
    EquivariantComplex b = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    EquivariantComplex prod = tensor_disjoint_union(a, b);
    CHECK(prod.n_materialized() == a.n_materialized() + b.n_materialized());
    CHECK(prod.mu() == (a.mu() + b.mu()) % 2);
    InvariantReport r = extract_invariants(prod);
    InvariantReport ra = extract_invariants(a);
    InvariantReport rb = extract_invariants(b);
    CHECK(r.mu == (ra.mu + rb.mu) % 2);
}

TEST_CASE("S1 tensor keeps the Froyshov invariant additive on the catalog") {
    for (const char* left : {"S3", "Sigma_2_3_5", "Sigma_2_3_11"}) {
        for (const char* right : {"S3", "Sigma_2_3_5", "Sigma_2_3_11"}) {
            EquivariantComplex a = catalog_complex(left, Flavor::S1);
            EquivariantComplex b = catalog_complex(right, Flavor::S1);
            InvariantReport r = extract_invariants(tensor_disjoint_union(a, b));
            CHECK(r.h == extract_invariants(a).h + extract_invariants(b).h);
        }
    }
}

TEST_CASE("tensor flavor guard") {
    CHECK_THROWS_AS(tensor_disjoint_union(catalog_complex("S3", Flavor::S1),
                                          catalog_complex("S3", Flavor::Pin2)),
                    Error);
}

TEST_CASE("tate patterns hold across the catalog") {
    for (const char* name : {"S3", "Sigma_2_3_5", "Sigma_2_3_11"}) {
        for (Flavor flavor : {Flavor::S1, Flavor::Pin2}) {
            HomologyModule h = module_homology(catalog_complex(name, flavor));
            TateReport r = tate_pattern_check(h);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("tate check fails when the tail is absent") {
    HomologyModule h;
    h.flavor = Flavor::S1;
    h.p = 2;
    h.window_lo = -4;
    h.window_hi = 40;
    h.generator_budget = 3;
    h.certified = true; // zero module: bijective on nothing
    TateReport r = tate_pattern_check(h);
    CHECK_FALSE(r.pass);
}

TEST_CASE("froyshov parity guard on a hand-built odd tail") {
    HomologyModule h;
    h.flavor = Flavor::S1;
    h.p = 2;
    h.window_lo = -1;
    h.window_hi = 29;
    h.generator_budget = 1;
    h.certified = true;
    for (int g = 1; g <= 29; g += 2) h.dims[g] = 1;
    auto& u = h.actions[static_cast<int>(Op::U)];
    for (int g = 3; g <= 29; g += 2) u.emplace(g, FpMatrix::identity(1, 2));
    CHECK(u_tail_bottom(h) == 1);
    CHECK_THROWS_AS(froyshov_h(h), Error);
}

TEST_CASE("congruence guard on hand-fed tail bottoms") {
    CHECK_THROWS_AS(alpha_beta_gamma(VTailBottoms{1, 1, 2}, 0), Error);
    CHECK_THROWS_AS(alpha_beta_gamma(VTailBottoms{0, 1, 3}, 0), Error);
    AlphaBetaGamma ok = alpha_beta_gamma(VTailBottoms{4, 1, 2}, 0);
    CHECK(ok.alpha == 2);
}

TEST_CASE("dualize rejects interactions without a dual tower slot") {
    // a q-interaction into the bottom tower generator is a valid complex,
    // but its transpose has no home in the dual tower pattern
    std::vector<EquivariantComplex::Irreducible> irr = {{"x", 1}};
    std::vector<EquivariantComplex::TowerHit> hits = {{Op::Q, 0, 0, 1}};
    EquivariantComplex c = EquivariantComplex::make(Flavor::Pin2, 2, 0, irr, {}, hits, {});
    try {
        dualize(c);
        FAIL("expected UnsupportedInteraction");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedInteraction);
    }
}

TEST_CASE("nonsplitting certificates") {
    NonSplittingCertificate c11 =
        nonsplitting_certificate(catalog_complex("Sigma_2_3_11", Flavor::Pin2));
    CHECK(c11.forward.beta == 0);
    CHECK(c11.forward.mu == 0);
    CHECK(c11.beta_negates);
    CHECK(c11.beta_lifts_rokhlin);

    NonSplittingCertificate s3 = nonsplitting_certificate(catalog_complex("S3", Flavor::Pin2));
    CHECK(s3.forward.beta == 0);
    CHECK(s3.forward.mu == 0);

    // bare tower with mu = 1: beta is odd, so such a manifold cannot have
    // order two in homology cobordism
    NonSplittingCertificate odd = nonsplitting_certificate(build_pin2_complex(1, {}));
    CHECK(odd.forward.mu == 1);
    CHECK(odd.forward.beta % 2 != 0);
    CHECK(odd.beta_negates);
    CHECK(odd.beta_lifts_rokhlin);
    CHECK(odd.conclusion.find("cannot represent an order-two class") != std::string::npos);

    CHECK_THROWS_AS(nonsplitting_certificate(catalog_complex("S3", Flavor::S1)), Error);
}

TEST_CASE("operator relations hold on homology for the catalog") {
    for (const char* name : {"S3", "Sigma_2_3_5", "Sigma_2_3_11"}) {
        HomologyModule h = module_homology(catalog_complex(name, Flavor::Pin2));
        CHECK(h.certified);
        for (const auto& [g, q3_src] : h.dims) {
            const FpMatrix* q1 = h.action(Op::Q, g);
            const FpMatrix* q2 = h.action(Op::Q, g - 1);
            const FpMatrix* q3 = h.action(Op::Q, g - 2);
            if (q1 && q2 && q3 && q1->cols() > 0 && q3->rows() >= 0) {
                FpMatrix comp = q3->multiplied_by(q2->multiplied_by(*q1));
                CHECK(comp.is_zero());
            }
            const FpMatrix* v = h.action(Op::V, g);
            const FpMatrix* q_low = h.action(Op::Q, g - 4);
            const FpMatrix* q_top = h.action(Op::Q, g);
            const FpMatrix* v_low = h.action(Op::V, g - 1);
            if (v && q_low && q_top && v_low) {
                FpMatrix lhs = q_low->multiplied_by(*v);
                FpMatrix rhs = v_low->multiplied_by(*q_top);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("random equivariant complexes round-trip their invariants across windows") {
    testing::Rng rng(testing::default_seed() + 11);
    for (int trial = 0; trial < 30; ++trial) {
        Flavor flavor = testing::pick(rng, 0, 1) ? Flavor::Pin2 : Flavor::S1;
        long p = flavor == Flavor::Pin2 ? 2 : std::vector<long>{2, 3, 5}[testing::pick(rng, 0, 2)];
        EquivariantComplex c = testing::random_equivariant(rng, flavor, p);
        auto aw = c.auto_window();
        InvariantReport base = extract_invariants(c);
        InvariantReport wide =
            extract_invariants(c, std::make_pair(aw.first - 8, aw.second + 8));
        CHECK(testing::same_invariants(base, wide));
    }
}
