#include "confloer/module_homology.hpp"

#include <algorithm>

namespace confloer {

int HomologyModule::dim_at(int g) const {
    auto it = dims.find(g);
    return it == dims.end() ? 0 : it->second;
}

const FpMatrix* HomologyModule::action(Op op, int g) const {
    auto oit = actions.find(static_cast<int>(op));
    if (oit == actions.end()) return nullptr;
    auto git = oit->second.find(g);
    return git == oit->second.end() ? nullptr : &git->second;
}

namespace {

std::vector<Op> module_ops(Flavor f) {
    return f == Flavor::S1 ? std::vector<Op>{Op::U} : std::vector<Op>{Op::Q, Op::V};
}

Op period_op(Flavor f) { return f == Flavor::S1 ? Op::U : Op::V; }
int period_of(Flavor f) { return f == Flavor::S1 ? 2 : 4; }

struct GradingBasis {
    FpColumnSpace space;       // boundaries first, then cycle candidates
    FpColumnSpace boundaries;  // boundaries alone
    std::vector<std::vector<long>> boundary_cols;
    std::vector<std::vector<long>> reps; // homology representatives (chains)
    std::vector<int> rep_gen_index;      // generator index of each rep in `space`

    GradingBasis(int dim, long p) : space(dim, p), boundaries(dim, p) {}

    std::vector<long> coords_of(const std::vector<long>& chain) const {
        auto co = space.coordinates(chain);
        if (!co)
            fail(ErrorCode::InvalidInput, "operator image is not a cycle on homology");
        std::vector<long> out(reps.size(), 0);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            int gi = rep_gen_index[i];
            if (gi < static_cast<int>(co->size())) out[i] = (*co)[gi];
        }
        return out;
    }
};

} // namespace

HomologyModule module_homology(const EquivariantComplex& c,
                               std::optional<std::pair<int, int>> window) {
    auto [alo, ahi] = c.auto_window();
    int lo = alo, hi = ahi;
    if (window) {
        lo = window->first + c.grading_offset();
        hi = window->second + c.grading_offset();
        if (lo > alo || hi < ahi)
            fail(ErrorCode::WindowTooSmall,
                 "window must contain the auto window [" + std::to_string(alo - c.grading_offset()) +
                     ", " + std::to_string(ahi - c.grading_offset()) + "]");
    }
    // extend internally so the image iteration still leaves two periods of
    // stable band above the requested window
    const int period = c.flavor() == Flavor::Pin2 ? 4 : 2;
    hi += period * (c.generator_budget() + 4) + 2 * period;

    const long p = c.field();
    EquivariantComplex::Materialized m = c.materialize(lo, hi);

    HomologyModule h;
    h.flavor = c.flavor();
    h.p = p;
    h.window_lo = lo;
    h.window_hi = hi;
    h.offset = c.grading_offset();
    h.n_reported = c.n_reported();
    h.mu = c.mu();
    h.generator_budget = c.generator_budget();

    std::map<int, GradingBasis> bases;
    for (int g = lo; g <= hi; ++g) {
        int dim = m.dim(g);
        if (dim == 0) continue;
        GradingBasis basis(dim, p);

        // boundaries from one grading up (none materialized above hi: the
        // window construction keeps every irreducible far below hi, and
        // tower generators have zero differential)
        const FpMatrix& upper = m.matrix(Op::D, g + 1);
        if (upper.cols() > 0 && upper.rows() == dim) {
            for (int col = 0; col < upper.cols(); ++col) {
                std::vector<long> b(dim);
                for (int r = 0; r < dim; ++r) b[r] = upper.at(r, col);
                basis.space.insert(b);
                basis.boundaries.insert(b);
                basis.boundary_cols.push_back(std::move(b));
            }
        }

        // cycles: kernel of the outgoing differential
        const FpMatrix& lower = m.matrix(Op::D, g);
        FpMatrix cycles(0, 0, p);
        if (lower.cols() == dim && lower.rows() > 0) {
            cycles = lower.nullspace();
        } else {
            cycles = FpMatrix::identity(dim, p);
        }
        for (int col = 0; col < cycles.cols(); ++col) {
            std::vector<long> z(dim);
            for (int r = 0; r < dim; ++r) z[r] = cycles.at(r, col);
            int gen_index = basis.space.generators_inserted();
            if (basis.space.insert(z)) {
                basis.reps.push_back(z);
                basis.rep_gen_index.push_back(gen_index);
            }
        }
        if (!basis.reps.empty()) h.dims[g] = static_cast<int>(basis.reps.size());
        bases.emplace(g, std::move(basis));
    }

    // induced operators, with the well-definedness checks
    for (Op op : module_ops(c.flavor())) {
        int deg = op_degree(op);
        auto& slot = h.actions[static_cast<int>(op)];
        for (auto& [g, basis] : bases) {
            if (basis.reps.empty()) continue;
            if (g - deg < lo) continue;
            auto target_it = bases.find(g - deg);
            int target_dim = target_it == bases.end() ? 0 : static_cast<int>(target_it->second.reps.size());
            const FpMatrix& mat = m.matrix(op, g);
            FpMatrix induced(target_dim, static_cast<int>(basis.reps.size()), p);
            for (std::size_t j = 0; j < basis.reps.size(); ++j) {
                if (mat.cols() == 0) continue;
                std::vector<long> w = mat.apply(basis.reps[j]);
                bool zero = std::all_of(w.begin(), w.end(), [](long v) { return v == 0; });
                if (zero) continue;
                if (target_it == bases.end())
                    fail(ErrorCode::InvalidInput, "operator image lands outside the complex");
                std::vector<long> coords = target_it->second.coords_of(w);
                for (std::size_t r = 0; r < coords.size(); ++r)
                    if (coords[r] != 0) induced.set(static_cast<int>(r), static_cast<int>(j), coords[r]);
            }
            // boundaries map to boundaries
            for (const auto& b : basis.boundary_cols) {
                if (mat.cols() == 0) continue;
                std::vector<long> w = mat.apply(b);
                bool zero = std::all_of(w.begin(), w.end(), [](long v) { return v == 0; });
                if (!zero) {
                    if (target_it == bases.end() || !target_it->second.boundaries.contains(w))
                        fail(ErrorCode::InvalidInput,
                             "operator does not map boundaries to boundaries at grading " +
                                 std::to_string(g));
                }
            }
            slot.emplace(g, std::move(induced));
        }
    }

    // periodicity certificate: on the top two periods of the window the
    // period operator is bijective grading-by-grading
    int per = period_of(c.flavor());
    Op pop = period_op(c.flavor());
    h.certificate_hi = hi;
    h.certificate_lo = hi - 2 * per + 1;
    h.certified = true;
    for (int g = h.certificate_lo; g <= h.certificate_hi; ++g) {
        if (g - per < lo) continue;
        int src = h.dim_at(g);
        int dst = h.dim_at(g - per);
        if (src != dst) {
            h.certified = false;
            break;
        }
        if (src == 0) continue;
        const FpMatrix* a = h.action(pop, g);
        if (!a || a->rank() != src) {
            h.certified = false;
            break;
        }
    }
    return h;
}

namespace {

FpMatrix full_basis(int dim, long p) { return FpMatrix::identity(dim, p); }

// column space basis of product A * V
FpMatrix image_of(const FpMatrix& a, const FpMatrix& v, int target_dim, long p) {
    if (a.cols() == 0 || v.cols() == 0) return FpMatrix(target_dim, 0, p);
    FpMatrix prod = a.multiplied_by(v);
    FpColumnSpace space = column_space(prod);
    return space.basis_matrix();
}

} // namespace

Tail stable_tail(const HomologyModule& h) {
    if (!h.certified)
        fail(ErrorCode::WindowTooSmall, "periodicity certificate failed; enlarge the window");

    const long p = h.p;
    const int per = period_of(h.flavor);
    const Op pop = period_op(h.flavor);
    const int iterations = h.generator_budget + 2;

    std::map<int, FpMatrix> current;
    for (const auto& [g, d] : h.dims) current[g] = full_basis(d, p);

    std::map<int, FpMatrix> previous;
    int top = h.window_hi;
    for (int step = 1; step <= iterations + 1; ++step) {
        std::map<int, FpMatrix> next;
        top -= per;
        for (int g = h.window_lo; g <= top; ++g) {
            int dim = h.dim_at(g);
            if (dim == 0) continue;
            const FpMatrix* a = h.action(pop, g + per);
            auto src = current.find(g + per);
            FpMatrix img = (a && src != current.end())
                               ? image_of(*a, src->second, dim, p)
                               : FpMatrix(dim, 0, p);
            if (img.cols() > 0) next[g] = std::move(img);
        }
        if (step == iterations) previous = next;
        current = std::move(next);
    }

    // stability: nested images, so equal dimensions mean equality
    for (int g = h.window_lo; g <= top; ++g) {
        int prev_dim = previous.count(g) ? previous[g].cols() : 0;
        int cur_dim = current.count(g) ? current[g].cols() : 0;
        if (prev_dim != cur_dim)
            fail(ErrorCode::WindowTooSmall,
                 "image iteration did not stabilize at grading " + std::to_string(g) +
                     "; enlarge the window");
    }

    Tail t;
    t.band_lo = h.window_lo;
    t.band_hi = top;
    t.spaces = std::move(current);
    return t;
}

int Tail::dim_at(int g) const {
    auto it = spaces.find(g);
    return it == spaces.end() ? 0 : it->second.cols();
}

int u_tail_bottom(const HomologyModule& h) {
    if (h.flavor != Flavor::S1)
        fail(ErrorCode::FlavorMismatch, "u_tail_bottom applies to S1 complexes");
    Tail t = stable_tail(h);
    for (int g = t.band_lo; g <= t.band_hi; ++g)
        if (t.dim_at(g) > 0) return g - h.offset;
    fail(ErrorCode::TailPatternViolation, "the U-tail is empty in the certified window");
}

int froyshov_h(const HomologyModule& h) {
    int d = u_tail_bottom(h);
    if (d % 2 != 0)
        fail(ErrorCode::ParityViolation, "d = " + std::to_string(d) + " is odd; not of Floer form");
    return -d / 2;
}

VTailBottoms v_tail_bottoms(const HomologyModule& h) {
    if (h.flavor != Flavor::Pin2)
        fail(ErrorCode::FlavorMismatch, "v_tail_bottoms applies to Pin2 complexes");
    Tail t = stable_tail(h);

    // residues anchored at the materialized tower bottom (2mu mod 4)
    int bottom = -2 * (h.n_reported - h.offset / 2); // materialized bottom
    auto residue = [&](int g) { return ((g - bottom) % 4 + 4) % 4; };

    int found[3] = {0, 0, 0};
    int minimum[3] = {0, 0, 0};
    for (int g = t.band_lo; g <= t.band_hi; ++g) {
        if (t.dim_at(g) == 0) continue;
        int r = residue(g);
        if (r == 3)
            fail(ErrorCode::TailPatternViolation,
                 "stable tail occupies the forbidden residue class at grading " +
                     std::to_string(g - h.offset));
        if (!found[r]) {
            found[r] = 1;
            minimum[r] = g;
        }
    }
    if (!found[0] || !found[1] || !found[2])
        fail(ErrorCode::TailPatternViolation, "stable tail does not have three v-tails");

    // eventually exactly one dimension per tail
    for (int g = std::max(bottom, t.band_hi - 8 + 1); g <= t.band_hi; ++g) {
        int expect = residue(g) == 3 ? 0 : 1;
        if (t.dim_at(g) != expect)
            fail(ErrorCode::TailPatternViolation,
                 "tail dimension " + std::to_string(t.dim_at(g)) + " at grading " +
                     std::to_string(g - h.offset) + " breaks the three-tails pattern");
    }

    VTailBottoms abc;
    abc.a = minimum[0] - h.offset;
    abc.b = minimum[1] - h.offset;
    abc.c = minimum[2] - h.offset;
    return abc;
}

AlphaBetaGamma alpha_beta_gamma(const VTailBottoms& abc, int mu) {
    auto congruent = [&](int value, int anchor) { return ((value - anchor) % 4 + 4) % 4 == 0; };
    if (!congruent(abc.a, 2 * mu) || !congruent(abc.b - 1, 2 * mu) || !congruent(abc.c - 2, 2 * mu))
        fail(ErrorCode::CongruenceViolation,
             "(a, b, c) = (" + std::to_string(abc.a) + ", " + std::to_string(abc.b) + ", " +
                 std::to_string(abc.c) + ") violates the mod-4 congruences for mu = " +
                 std::to_string(mu));
    AlphaBetaGamma out;
    out.alpha = abc.a / 2;
    out.beta = (abc.b - 1) / 2;
    out.gamma = (abc.c - 2) / 2;
    auto parity = [&](int v) { return ((v % 2) + 2) % 2; };
    if (parity(out.alpha) != parity(mu) || parity(out.beta) != parity(mu) ||
        parity(out.gamma) != parity(mu))
        fail(ErrorCode::CongruenceViolation, "alpha/beta/gamma parities disagree with mu");
    return out;
}

TateReport tate_pattern_check(const HomologyModule& h) {
    Tail t = stable_tail(h);
    TateReport report;

    if (h.flavor == Flavor::S1) {
        int d = -1;
        for (int g = t.band_lo; g <= t.band_hi; ++g)
            if (t.dim_at(g) > 0) {
                d = g;
                break;
            }
        if (d < 0) {
            report.detail = "no tail: localized module is zero";
            return report;
        }
        for (int g = d; g <= t.band_hi; ++g) {
            int expect = ((g - d) % 2 + 2) % 2 == 0 ? 1 : 0;
            if (t.dim_at(g) != expect) {
                report.detail = "tail dimension " + std::to_string(t.dim_at(g)) + " at grading " +
                                std::to_string(g - h.offset) + " breaks the periodic pattern";
                return report;
            }
        }
        report.pass = true;
        report.detail = "one copy per even grading from " + std::to_string(d - h.offset) +
                        ", periodicity operator invertible";
        return report;
    }

    // Pin2: three tails with the q-ladder
    VTailBottoms abc;
    try {
        abc = v_tail_bottoms(h);
    } catch (const Error& e) {
        report.detail = e.message();
        return report;
    }
    int bottom = -2 * (h.n_reported - h.offset / 2);
    auto residue = [&](int g) { return ((g - bottom) % 4 + 4) % 4; };
    int start = std::max({abc.a, abc.b, abc.c}) + h.offset;
    for (int g = start; g <= t.band_hi; ++g) {
        int expect = residue(g) == 3 ? 0 : 1;
        if (t.dim_at(g) != expect) {
            report.detail = "tail dimension breaks the three-tails pattern at grading " +
                            std::to_string(g - h.offset);
            return report;
        }
    }
    // q maps middle tail onto bottom tail and top onto middle
    for (int g = start; g <= t.band_hi; ++g) {
        int r = residue(g);
        if (r != 1 && r != 2) continue;
        if (t.dim_at(g) == 0 || t.dim_at(g - 1) == 0) continue;
        const FpMatrix* q = h.action(Op::Q, g);
        if (!q || q->cols() == 0) {
            report.detail = "q-ladder missing at grading " + std::to_string(g - h.offset);
            return report;
        }
        const FpMatrix& basis = t.spaces.at(g);
        std::vector<long> v(basis.rows());
        for (int r2 = 0; r2 < basis.rows(); ++r2) v[r2] = basis.at(r2, 0);
        std::vector<long> img = q->apply(v);
        bool zero = std::all_of(img.begin(), img.end(), [](long x) { return x == 0; });
        if (zero) {
            report.detail = "q-ladder vanishes at grading " + std::to_string(g - h.offset);
            return report;
        }
    }
    report.pass = true;
    report.detail = "three v-tails with the q-ladder, periodicity operator invertible";
    return report;
}

InvariantReport extract_invariants(const EquivariantComplex& c,
                                   std::optional<std::pair<int, int>> window) {
    HomologyModule h = module_homology(c, window);
    InvariantReport report;
    report.flavor = c.flavor();
    report.p = c.field();
    report.n = c.n_reported();
    report.mu = c.mu();
    report.window = {h.window_lo - h.offset, h.window_hi - h.offset};
    if (c.flavor() == Flavor::S1) {
        report.d = u_tail_bottom(h);
        report.h = froyshov_h(h);
    } else {
        VTailBottoms abc = v_tail_bottoms(h);
        report.a = abc.a;
        report.b = abc.b;
        report.c = abc.c;
        AlphaBetaGamma abg = alpha_beta_gamma(abc, report.mu);
        report.alpha = abg.alpha;
        report.beta = abg.beta;
        report.gamma = abg.gamma;
    }
    return report;
}

NonSplittingCertificate nonsplitting_certificate(const EquivariantComplex& c) {
    if (c.flavor() != Flavor::Pin2)
        fail(ErrorCode::FlavorMismatch, "the non-splitting argument lives in the Pin2 theory");
    NonSplittingCertificate cert;
    cert.forward = extract_invariants(c);
    cert.reverse = extract_invariants(dualize(c));
    cert.beta_negates = (cert.reverse.beta == -cert.forward.beta);
    cert.beta_lifts_rokhlin = (((cert.forward.beta - cert.forward.mu) % 2 + 2) % 2 == 0);
    if (cert.beta_negates && cert.beta_lifts_rokhlin) {
        cert.conclusion =
            "beta negates under orientation reversal and lifts the Rokhlin invariant: a class "
            "of order two in homology cobordism satisfies beta = -beta = 0, hence mu = 0";
        if (cert.forward.mu == 1)
            cert.conclusion += "; this complex has mu = 1, so it cannot represent an order-two class";
    } else {
        cert.conclusion = "input is not of Floer form: certificate facts failed";
    }
    return cert;
}

AdditivityDefect additivity_defect(long c_alpha, long c_beta, long c_gamma,
                                   const std::vector<EquivariantComplex>& complexes) {
    for (const auto& c : complexes)
        if (c.flavor() != Flavor::Pin2)
            fail(ErrorCode::FlavorMismatch, "additivity defects live in the Pin2 theory");

    auto comb = [&](const InvariantReport& r) {
        return c_alpha * r.alpha + c_beta * r.beta + c_gamma * r.gamma;
    };
    std::vector<InvariantReport> reports;
    reports.reserve(complexes.size());
    for (const auto& c : complexes) reports.push_back(extract_invariants(c));

    AdditivityDefect out;
    out.defect.assign(complexes.size(), std::vector<long>(complexes.size(), 0));
    for (std::size_t i = 0; i < complexes.size(); ++i)
        for (std::size_t j = 0; j < complexes.size(); ++j) {
            EquivariantComplex prod = tensor_disjoint_union(complexes[i], complexes[j]);
            InvariantReport r = extract_invariants(prod);
            out.defect[i][j] = comb(r) - comb(reports[i]) - comb(reports[j]);
        }
    return out;
}

} // namespace confloer
