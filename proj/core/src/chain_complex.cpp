#include "confloer/chain_complex.hpp"

#include <algorithm>

namespace confloer {

int GradedHomology::rank_at(int grading) const {
    auto it = groups.find(grading);
    return it == groups.end() ? 0 : it->second.rank;
}

const std::vector<mpz_class>* GradedHomology::torsion_at(int grading) const {
    auto it = groups.find(grading);
    return it == groups.end() ? nullptr : &it->second.torsion;
}

long GradedHomology::total_rank() const {
    long t = 0;
    for (const auto& [g, grp] : groups) t += grp.rank;
    return t;
}

GradedChainComplex GradedChainComplex::build(std::vector<std::pair<std::string, int>> generators,
                                             std::map<int, ExactMatrix> boundaries,
                                             Coefficients coeffs, bool check) {
    GradedChainComplex c;
    c.generators_ = std::move(generators);
    c.coeffs_ = coeffs;
    for (int i = 0; i < static_cast<int>(c.generators_.size()); ++i)
        c.basis_[c.generators_[i].second].push_back(i);

    for (auto& [g, m] : boundaries) {
        int src = c.generator_count(g);
        int tgt = c.generator_count(g - 1);
        if (m.cols() != src || m.rows() != tgt)
            fail(ErrorCode::DegreeMismatch,
                 "boundary matrix at grading " + std::to_string(g) + " has shape " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(tgt) + "x" + std::to_string(src));
        if (!(m.coefficients() == coeffs))
            fail(ErrorCode::FieldMismatch, "boundary coefficient tag mismatch at grading " + std::to_string(g));
    }
    c.boundaries_ = std::move(boundaries);

    if (check) {
        int bad = 0;
        if (!c.d_squared_ok(&bad))
            fail(ErrorCode::DSquaredNonzero,
                 "d^2 != 0 at grading " + std::to_string(bad), std::to_string(bad));
    }
    return c;
}

GradedChainComplex GradedChainComplex::checked(std::vector<std::pair<std::string, int>> generators,
                                               std::map<int, ExactMatrix> boundaries,
                                               Coefficients coeffs) {
    return build(std::move(generators), std::move(boundaries), coeffs, true);
}

GradedChainComplex GradedChainComplex::unchecked(std::vector<std::pair<std::string, int>> generators,
                                                 std::map<int, ExactMatrix> boundaries,
                                                 Coefficients coeffs) {
    return build(std::move(generators), std::move(boundaries), coeffs, false);
}

int GradedChainComplex::generator_count(int grading) const {
    auto it = basis_.find(grading);
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<int>& GradedChainComplex::grading_basis(int grading) const {
    auto it = basis_.find(grading);
    return it == basis_.end() ? empty_ : it->second;
}

std::vector<int> GradedChainComplex::gradings_present() const {
    std::vector<int> gs;
    for (const auto& [g, v] : basis_) gs.push_back(g);
    return gs;
}

ExactMatrix GradedChainComplex::boundary(int grading) const {
    auto it = boundaries_.find(grading);
    if (it != boundaries_.end()) return it->second;
    return ExactMatrix(generator_count(grading - 1), generator_count(grading), coeffs_);
}

bool GradedChainComplex::d_squared_ok(int* offending_grading) const {
    for (const auto& [g, m] : boundaries_) {
        if (m.is_zero()) continue;
        ExactMatrix lower = boundary(g - 1);
        if (lower.is_zero()) continue;
        if (!lower.multiplied_by(m).is_zero()) {
            if (offending_grading) *offending_grading = g;
            return false;
        }
    }
    return true;
}

GradedChainComplex GradedChainComplex::transposed_negated() const {
    std::vector<std::pair<std::string, int>> gens;
    gens.reserve(generators_.size());
    // keep per-grading column order aligned with the original
    for (const auto& [g, idx] : basis_)
        for (int i : idx) gens.emplace_back(generators_[i].first + "^", -g);

    std::map<int, ExactMatrix> bnds;
    for (const auto& [g, m] : boundaries_) {
        // d(g): C_g -> C_{g-1} becomes a map -(g-1) -> -g
        bnds.emplace(-(g - 1), m.transposed());
    }
    return build(std::move(gens), std::move(bnds), coeffs_, false);
}

long GradedChainComplex::euler_characteristic() const {
    long chi = 0;
    for (const auto& [g, idx] : basis_)
        chi += (g % 2 == 0) ? static_cast<long>(idx.size()) : -static_cast<long>(idx.size());
    return chi;
}

GradedHomology homology_of_complex(const GradedChainComplex& c) {
    int bad = 0;
    if (!c.d_squared_ok(&bad))
        fail(ErrorCode::DSquaredNonzero, "d^2 != 0 at grading " + std::to_string(bad),
             std::to_string(bad));

    GradedHomology h;
    h.coeffs = c.coefficients();

    std::vector<int> gradings = c.gradings_present();
    std::map<int, int> rank_d;                       // rank of d(g)
    std::map<int, std::vector<mpz_class>> torsion_d; // torsion of coker via d(g)

    auto ensure_rank = [&](int g) {
        if (rank_d.count(g)) return;
        ExactMatrix m = c.boundary(g);
        if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) {
            rank_d[g] = 0;
            torsion_d[g] = {};
            return;
        }
        if (c.coefficients().is_integers()) {
            auto diag = smith_diagonal(m);
            int r = 0;
            std::vector<mpz_class> tors;
            for (const auto& v : diag) {
                if (v != 0) ++r;
                if (v > 1) tors.push_back(v);
            }
            rank_d[g] = r;
            torsion_d[g] = std::move(tors);
        } else {
            rank_d[g] = rank_mod_p(m, c.coefficients().p);
            torsion_d[g] = {};
        }
    };

    for (int g : gradings) {
        ensure_rank(g);
        ensure_rank(g + 1);
        HomologyGroup grp;
        grp.rank = c.generator_count(g) - rank_d[g] - rank_d[g + 1];
        grp.torsion = torsion_d[g + 1];
        if (!grp.trivial()) h.groups[g] = std::move(grp);
    }
    return h;
}

GradedHomology cohomology_of_complex(const GradedChainComplex& c) {
    return homology_of_complex(c.transposed_negated());
}

long euler_characteristic(const GradedHomology& h) {
    long chi = 0;
    for (const auto& [g, grp] : h.groups) chi += (g % 2 == 0) ? grp.rank : -grp.rank;
    return chi;
}

} // namespace confloer
