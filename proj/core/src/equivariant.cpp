#include "confloer/equivariant.hpp"

#include <algorithm>

namespace confloer {

int op_degree(Op op) {
    switch (op) {
        case Op::D: return 1;
        case Op::U: return 2;
        case Op::Q: return 1;
        case Op::V: return 4;
    }
    return 0;
}

const char* op_name(Op op) {
    switch (op) {
        case Op::D: return "d";
        case Op::U: return "u";
        case Op::Q: return "q";
        case Op::V: return "v";
    }
    return "?";
}

namespace {

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool op_allowed(Flavor f, Op op) {
    if (op == Op::D) return true;
    if (f == Flavor::S1) return op == Op::U;
    return op == Op::Q || op == Op::V;
}

std::vector<Op> flavor_ops(Flavor f) {
    if (f == Flavor::S1) return {Op::D, Op::U};
    return {Op::D, Op::Q, Op::V};
}

} // namespace

bool EquivariantComplex::is_tower_grading(int g) const {
    int b = tower_bottom();
    if (g < b) return false;
    if (flavor_ == Flavor::S1) return (g - b) % 2 == 0;
    return (g - b) % 4 <= 2;
}

int EquivariantComplex::generator_budget() const {
    return static_cast<int>(irr_.size()) + (flavor_ == Flavor::Pin2 ? 3 : 1) + 2;
}

std::pair<int, int> EquivariantComplex::auto_window() const {
    int lo = tower_bottom();
    int hi = tower_bottom() + (flavor_ == Flavor::Pin2 ? 2 : 2);
    for (const auto& x : irr_) {
        lo = std::min(lo, x.grading);
        hi = std::max(hi, x.grading);
    }
    return {lo - 4, hi + 4 * (generator_budget() + 3)};
}

int EquivariantComplex::Materialized::dim(int g) const {
    auto it = by_grading.find(g);
    return it == by_grading.end() ? 0 : static_cast<int>(it->second.size());
}

const FpMatrix& EquivariantComplex::Materialized::matrix(Op op, int g) const {
    static const FpMatrix empty;
    auto it = matrices.find({static_cast<int>(op), g});
    return it == matrices.end() ? empty : it->second;
}

EquivariantComplex::Materialized EquivariantComplex::materialize(int lo, int hi) const {
    Materialized m;
    m.flavor = flavor_;
    m.p = p_;
    m.lo = lo;
    m.hi = hi;

    // generators: tower generator first within each grading, then
    // irreducibles in declaration order
    std::map<int, std::vector<int>> irr_at;
    for (int i = 0; i < static_cast<int>(irr_.size()); ++i)
        irr_at[irr_[i].grading].push_back(i);
    for (int g = lo; g <= hi; ++g) {
        std::vector<Generator> gens;
        if (is_tower_grading(g)) gens.push_back({true, -1, g, "t" + std::to_string(g)});
        if (auto it = irr_at.find(g); it != irr_at.end())
            for (int i : it->second) gens.push_back({false, i, g, irr_[i].id});
        if (!gens.empty()) m.by_grading.emplace(g, std::move(gens));
    }

    auto position = [&](int g, bool tower, int irr) -> int {
        auto it = m.by_grading.find(g);
        if (it == m.by_grading.end()) return -1;
        for (int k = 0; k < static_cast<int>(it->second.size()); ++k) {
            const Generator& gen = it->second[k];
            if (tower && gen.tower) return k;
            if (!tower && !gen.tower && gen.irr == irr) return k;
        }
        return -1;
    };

    for (Op op : flavor_ops(flavor_)) {
        int deg = op_degree(op);
        for (int g = lo + deg; g <= hi; ++g) {
            int cols = m.dim(g);
            int rows = m.dim(g - deg);
            if (cols == 0) continue;
            FpMatrix mat(rows, cols, p_);

            // structural tower action
            if (is_tower_grading(g) && is_tower_grading(g - deg)) {
                bool structural = false;
                int b = tower_bottom();
                if (flavor_ == Flavor::S1) {
                    structural = (op == Op::U);
                } else if (op == Op::Q) {
                    structural = ((g - b) % 4 == 1 || (g - b) % 4 == 2);
                } else if (op == Op::V) {
                    structural = (g - 4 >= b);
                }
                if (structural && rows > 0) {
                    int src = position(g, true, -1);
                    int dst = position(g - deg, true, -1);
                    if (src >= 0 && dst >= 0) mat.add_to(dst, src, 1);
                }
            }
            for (const auto& e : tower_entries_) {
                if (e.op != op || irr_[e.irr].grading != g) continue;
                int src = position(g, false, e.irr);
                int dst = position(g - deg, true, -1);
                if (src >= 0 && dst >= 0) mat.add_to(dst, src, e.coeff);
            }
            for (const auto& e : irr_entries_) {
                if (e.op != op || irr_[e.from].grading != g) continue;
                int src = position(g, false, e.from);
                int dst = position(g - deg, false, e.to);
                if (src >= 0 && dst >= 0) mat.add_to(dst, src, e.coeff);
            }
            for (const auto& e : cotower_entries_) {
                if (e.op != op || e.tower_grading != g) continue;
                int src = position(g, true, -1);
                int dst = position(g - deg, false, e.irr);
                if (src >= 0 && dst >= 0) mat.add_to(dst, src, e.coeff);
            }
            m.matrices.emplace(std::make_pair(static_cast<int>(op), g), std::move(mat));
        }
    }
    return m;
}

void EquivariantComplex::validate() const {
    if (!is_prime_long(p_)) fail(ErrorCode::InvalidInput, "field characteristic must be prime");
    if (flavor_ == Flavor::Pin2 && p_ != 2)
        fail(ErrorCode::FieldMismatch, "Pin2 complexes are defined over F_2");
    if (offset_ % 2 != 0 || (flavor_ == Flavor::Pin2 && offset_ % 4 != 0))
        fail(ErrorCode::ShiftParityError, "grading offset breaks the tower period");

    for (const auto& e : tower_entries_) {
        if (!op_allowed(flavor_, e.op))
            fail(ErrorCode::InvalidInput, std::string("operator ") + op_name(e.op) + " not in this flavor");
        if (e.irr < 0 || e.irr >= static_cast<int>(irr_.size()))
            fail(ErrorCode::InvalidInput, "tower entry references unknown irreducible");
        if (e.tower_grading != irr_[e.irr].grading - op_degree(e.op))
            fail(ErrorCode::DegreeMismatch,
                 std::string(op_name(e.op)) + " entry from " + irr_[e.irr].id +
                     " does not respect the operator degree");
        if (!is_tower_grading(e.tower_grading))
            fail(ErrorCode::DegreeMismatch,
                 "no tower generator in grading " + std::to_string(e.tower_grading));
        if (e.coeff % p_ == 0) fail(ErrorCode::InvalidInput, "interaction coefficient is zero mod p");
    }
    for (const auto& e : irr_entries_) {
        if (!op_allowed(flavor_, e.op))
            fail(ErrorCode::InvalidInput, std::string("operator ") + op_name(e.op) + " not in this flavor");
        if (e.from < 0 || e.from >= static_cast<int>(irr_.size()) || e.to < 0 ||
            e.to >= static_cast<int>(irr_.size()))
            fail(ErrorCode::InvalidInput, "irreducible entry references unknown generator");
        if (irr_[e.to].grading != irr_[e.from].grading - op_degree(e.op))
            fail(ErrorCode::DegreeMismatch,
                 std::string(op_name(e.op)) + " entry " + irr_[e.from].id + " -> " + irr_[e.to].id +
                     " does not respect the operator degree");
        if (e.coeff % p_ == 0) fail(ErrorCode::InvalidInput, "interaction coefficient is zero mod p");
    }
    for (const auto& e : cotower_entries_) {
        if (!op_allowed(flavor_, e.op))
            fail(ErrorCode::InvalidInput, std::string("operator ") + op_name(e.op) + " not in this flavor");
        if (e.irr < 0 || e.irr >= static_cast<int>(irr_.size()))
            fail(ErrorCode::InvalidInput, "cotower entry references unknown irreducible");
        if (!is_tower_grading(e.tower_grading))
            fail(ErrorCode::DegreeMismatch,
                 "no tower generator in grading " + std::to_string(e.tower_grading));
        if (irr_[e.irr].grading != e.tower_grading - op_degree(e.op))
            fail(ErrorCode::DegreeMismatch,
                 std::string(op_name(e.op)) + " entry t" + std::to_string(e.tower_grading) + " -> " +
                     irr_[e.irr].id + " does not respect the operator degree");
        if (e.coeff % p_ == 0) fail(ErrorCode::InvalidInput, "interaction coefficient is zero mod p");
    }

    auto [lo, hi] = auto_window();
    Materialized m = materialize(lo, hi);

    auto check_zero = [&](const FpMatrix& mat, const char* what, int g) {
        if (!mat.is_zero())
            fail(ErrorCode::InvalidInput,
                 std::string(what) + " fails at grading " + std::to_string(g), std::to_string(g));
    };

    for (int g = lo + 2; g <= hi; ++g) {
        const FpMatrix& upper = m.matrix(Op::D, g);
        const FpMatrix& lower = m.matrix(Op::D, g - 1);
        if (upper.cols() == 0 || lower.cols() == 0) continue;
        if (!lower.multiplied_by(upper).is_zero())
            fail(ErrorCode::DSquaredNonzero, "d^2 != 0 at grading " + std::to_string(g),
                 std::to_string(g));
    }
    for (Op op : flavor_ops(flavor_)) {
        if (op == Op::D) continue;
        int deg = op_degree(op);
        for (int g = lo + deg + 1; g <= hi; ++g) {
            const FpMatrix& o_then_d = m.matrix(Op::D, g - deg);
            const FpMatrix& o_g = m.matrix(op, g);
            const FpMatrix& d_g = m.matrix(Op::D, g);
            const FpMatrix& o_lower = m.matrix(op, g - 1);
            if (o_g.cols() == 0 && d_g.cols() == 0) continue;
            if (m.dim(g) == 0) continue;
            FpMatrix lhs = o_then_d.cols() ? o_then_d.multiplied_by(o_g)
                                           : FpMatrix(m.dim(g - deg - 1), m.dim(g), p_);
            FpMatrix rhs = o_lower.cols() ? o_lower.multiplied_by(d_g)
                                          : FpMatrix(m.dim(g - deg - 1), m.dim(g), p_);
            if (!(lhs == rhs))
                fail(ErrorCode::InvalidInput,
                     std::string("d does not commute with ") + op_name(op) + " at grading " +
                         std::to_string(g),
                     std::to_string(g));
        }
    }
    if (flavor_ == Flavor::Pin2) {
        for (int g = lo + 3; g <= hi; ++g) {
            if (m.dim(g) == 0) continue;
            const FpMatrix& q1 = m.matrix(Op::Q, g);
            const FpMatrix& q2 = m.matrix(Op::Q, g - 1);
            const FpMatrix& q3 = m.matrix(Op::Q, g - 2);
            if (q1.cols() == 0 || q2.cols() == 0 || q3.cols() == 0) continue;
            check_zero(q3.multiplied_by(q2.multiplied_by(q1)), "q^3 = 0", g);
        }
        for (int g = lo + 5; g <= hi; ++g) {
            if (m.dim(g) == 0) continue;
            const FpMatrix& v_g = m.matrix(Op::V, g);
            const FpMatrix& q_low = m.matrix(Op::Q, g - 4);
            const FpMatrix& q_g = m.matrix(Op::Q, g);
            const FpMatrix& v_low = m.matrix(Op::V, g - 1);
            FpMatrix lhs = (q_low.cols() && v_g.cols())
                               ? q_low.multiplied_by(v_g)
                               : FpMatrix(m.dim(g - 5), m.dim(g), p_);
            FpMatrix rhs = (v_low.cols() && q_g.cols())
                               ? v_low.multiplied_by(q_g)
                               : FpMatrix(m.dim(g - 5), m.dim(g), p_);
            if (!(lhs == rhs))
                fail(ErrorCode::InvalidInput, "qv != vq at grading " + std::to_string(g),
                     std::to_string(g));
        }
    }
}

EquivariantComplex EquivariantComplex::make(Flavor flavor, long p, int n,
                                            std::vector<Irreducible> irr,
                                            std::vector<IrrHit> irr_entries,
                                            std::vector<TowerHit> tower_entries,
                                            std::vector<CotowerHit> cotower_entries,
                                            int grading_offset) {
    EquivariantComplex c;
    c.flavor_ = flavor;
    c.p_ = flavor == Flavor::Pin2 ? 2 : p;
    c.n_ = n;
    c.offset_ = grading_offset;
    c.irr_ = std::move(irr);
    c.irr_entries_ = std::move(irr_entries);
    c.tower_entries_ = std::move(tower_entries);
    c.cotower_entries_ = std::move(cotower_entries);
    for (std::size_t i = 0; i < c.irr_.size(); ++i)
        if (c.irr_[i].id.empty()) c.irr_[i].id = "x" + std::to_string(i);
    c.validate();
    return c;
}

namespace {

EquivariantComplex build_complex(Flavor flavor, int n,
                                 const std::vector<IrreducibleSpec>& irreducibles, long p) {
    std::vector<EquivariantComplex::Irreducible> irr;
    std::vector<EquivariantComplex::IrrHit> irr_entries;
    std::vector<EquivariantComplex::TowerHit> tower_entries;

    for (int i = 0; i < static_cast<int>(irreducibles.size()); ++i) {
        const auto& spec = irreducibles[i];
        irr.push_back({spec.id.empty() ? "x" + std::to_string(i) : spec.id, spec.grading});
    }
    auto add = [&](Op op, int i, const std::vector<IrreducibleSpec::Target>& targets) {
        for (const auto& t : targets) {
            if (t.tower) {
                tower_entries.push_back({op, i, irreducibles[i].grading - op_degree(op), t.coeff});
            } else {
                if (t.irr < 0 || t.irr >= static_cast<int>(irreducibles.size()))
                    fail(ErrorCode::InvalidInput, "target irreducible index out of range");
                irr_entries.push_back({op, i, t.irr, t.coeff});
            }
        }
    };
    for (int i = 0; i < static_cast<int>(irreducibles.size()); ++i) {
        const auto& spec = irreducibles[i];
        add(Op::D, i, spec.d);
        if (flavor == Flavor::S1) {
            add(Op::U, i, spec.u);
            if (!spec.q.empty() || !spec.v.empty())
                fail(ErrorCode::FlavorMismatch, "q/v targets on an S1 complex");
        } else {
            add(Op::Q, i, spec.q);
            add(Op::V, i, spec.v);
            if (!spec.u.empty()) fail(ErrorCode::FlavorMismatch, "U targets on a Pin2 complex");
        }
    }
    return EquivariantComplex::make(flavor, p, n, std::move(irr), std::move(irr_entries),
                                    std::move(tower_entries), {});
}

} // namespace

EquivariantComplex build_s1_complex(int n, const std::vector<IrreducibleSpec>& irreducibles,
                                    long p) {
    return build_complex(Flavor::S1, n, irreducibles, p);
}

EquivariantComplex build_pin2_complex(int n, const std::vector<IrreducibleSpec>& irreducibles) {
    return build_complex(Flavor::Pin2, n, irreducibles, 2);
}

namespace {

std::string dual_id(const std::string& id) {
    if (!id.empty() && id.back() == '*') return id.substr(0, id.size() - 1);
    return id + "*";
}

Op dual_partner(Flavor flavor, Op op) {
    if (flavor == Flavor::S1) {
        if (op == Op::D) return Op::U;
        return Op::D; // U
    }
    if (op == Op::D) return Op::V;
    if (op == Op::V) return Op::D;
    return Op::Q;
}

} // namespace

EquivariantComplex dualize(const EquivariantComplex& c) {
    const int dual_n = -c.n_materialized();
    const int dual_bottom = -2 * dual_n;

    std::vector<EquivariantComplex::Irreducible> irr;
    for (const auto& x : c.irreducibles()) irr.push_back({dual_id(x.id), -x.grading - 1});

    std::vector<EquivariantComplex::IrrHit> irr_entries;
    for (const auto& e : c.irr_entries()) irr_entries.push_back({e.op, e.to, e.from, e.coeff});

    auto dual_is_tower = [&](int g) {
        if (g < dual_bottom) return false;
        if (c.flavor() == Flavor::S1) return (g - dual_bottom) % 2 == 0;
        return (g - dual_bottom) % 4 <= 2;
    };

    std::vector<EquivariantComplex::TowerHit> tower_entries;
    std::vector<EquivariantComplex::CotowerHit> cotower_entries;

    for (const auto& e : c.tower_entries()) {
        if (e.op != Op::D)
            fail(ErrorCode::UnsupportedInteraction,
                 std::string("no dual for a ") + op_name(e.op) + " interaction into the tower");
        Op partner = dual_partner(c.flavor(), Op::D);
        int dual_g = -c.irreducibles()[e.irr].grading - 1;
        int m = dual_g + op_degree(partner);
        if (!dual_is_tower(m))
            fail(ErrorCode::UnsupportedInteraction,
                 "dual tower slot " + std::to_string(m) + " does not exist (interaction too deep)");
        cotower_entries.push_back({partner, m, e.irr, e.coeff});
    }
    for (const auto& e : c.cotower_entries()) {
        Op expected = dual_partner(c.flavor(), Op::D); // U for S1, V for Pin2
        if (e.op != expected)
            fail(ErrorCode::UnsupportedInteraction,
                 std::string("no dual for a ") + op_name(e.op) + " interaction out of the tower");
        int dual_g = -c.irreducibles()[e.irr].grading - 1;
        int m = dual_g - op_degree(Op::D);
        if (!dual_is_tower(m))
            fail(ErrorCode::UnsupportedInteraction,
                 "dual tower slot " + std::to_string(m) + " does not exist (interaction too deep)");
        tower_entries.push_back({Op::D, e.irr, m, e.coeff});
    }

    return EquivariantComplex::make(c.flavor(), c.field(), dual_n, std::move(irr),
                                    std::move(irr_entries), std::move(tower_entries),
                                    std::move(cotower_entries), -c.grading_offset());
}

namespace {

long bottom_coeff(const EquivariantComplex& c, int irr) {
    for (const auto& e : c.tower_entries())
        if (e.op == Op::D && e.irr == irr && e.tower_grading == c.tower_bottom()) return e.coeff;
    return 0;
}

void require_tensorable_factor(const EquivariantComplex& c, const char* side) {
    if (!c.cotower_entries().empty())
        fail(ErrorCode::UnsupportedInteraction,
             std::string(side) + " factor carries tower-to-irreducible entries; tensor model "
                                 "covers differential-only interactions");
    for (const auto& e : c.irr_entries())
        if (e.op != Op::D)
            fail(ErrorCode::UnsupportedInteraction,
                 std::string(side) + " factor carries module-operator entries between "
                                     "irreducibles; tensor model covers differential-only "
                                     "interactions");
    for (const auto& e : c.tower_entries()) {
        if (e.op != Op::D)
            fail(ErrorCode::UnsupportedInteraction,
                 std::string(side) + " factor carries module-operator entries into the tower");
        if (e.tower_grading != c.tower_bottom())
            fail(ErrorCode::UnsupportedInteraction,
                 std::string(side) + " factor hits the tower above its bottom generator");
    }
}

} // namespace

EquivariantComplex tensor_disjoint_union(const EquivariantComplex& a, const EquivariantComplex& b) {
    if (a.flavor() != b.flavor())
        fail(ErrorCode::FlavorMismatch, "tensor factors have different flavors");
    if (a.field() != b.field())
        fail(ErrorCode::FieldMismatch, "tensor factors have different coefficient fields");

    const Flavor flavor = a.flavor();
    const long p = a.field();
    const int n_c = a.n_materialized() + b.n_materialized();
    const int offset_c = a.grading_offset() + b.grading_offset();
    const int bottom_c = -2 * n_c;

    // one factor without irreducibles: relabel the other through the
    // suspension by the trivial factor's tower dimension
    auto carbon_copy = [&](const EquivariantComplex& keep, const EquivariantComplex& sphere) {
        const int shift = -2 * sphere.n_materialized();
        std::vector<EquivariantComplex::Irreducible> irr;
        for (const auto& x : keep.irreducibles()) irr.push_back({x.id, x.grading + shift});
        std::vector<EquivariantComplex::TowerHit> tower_entries;
        for (const auto& e : keep.tower_entries())
            tower_entries.push_back({e.op, e.irr, e.tower_grading + shift, e.coeff});
        std::vector<EquivariantComplex::CotowerHit> cotower_entries;
        for (const auto& e : keep.cotower_entries())
            cotower_entries.push_back({e.op, e.tower_grading + shift, e.irr, e.coeff});
        return EquivariantComplex::make(flavor, p, n_c, std::move(irr), keep.irr_entries(),
                                        std::move(tower_entries), std::move(cotower_entries),
                                        offset_c);
    };
    if (b.irreducibles().empty()) return carbon_copy(a, b);
    if (a.irreducibles().empty()) return carbon_copy(b, a);

    require_tensorable_factor(a, "left");
    require_tensorable_factor(b, "right");

    const int na = static_cast<int>(a.irreducibles().size());
    const int nb = static_cast<int>(b.irreducibles().size());
    const int per_pair = flavor == Flavor::Pin2 ? 4 : 2;

    std::vector<EquivariantComplex::Irreducible> irr;
    std::vector<EquivariantComplex::IrrHit> irr_entries;
    std::vector<EquivariantComplex::TowerHit> tower_entries;

    // index layout: [0, na) left copies, [na, na+nb) right copies, then
    // per_pair generators per (i, j) pair
    auto left_index = [&](int i) { return i; };
    auto right_index = [&](int j) { return na + j; };
    auto pair_index = [&](int i, int j, int slot) {
        return na + nb + (i * nb + j) * per_pair + slot;
    };
    // slots: 0 = p, 1 = p-bar (Pin2 only), last two = suspended pair
    const int slot_p = 0;
    const int slot_pbar = 1;                                // Pin2
    const int slot_P = flavor == Flavor::Pin2 ? 2 : 1;
    const int slot_Pbar = 3;                                // Pin2

    for (const auto& x : a.irreducibles())
        irr.push_back({"l." + x.id, x.grading - 2 * b.n_materialized()});
    for (const auto& y : b.irreducibles())
        irr.push_back({"r." + y.id, y.grading - 2 * a.n_materialized()});
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            int s = a.irreducibles()[i].grading + b.irreducibles()[j].grading;
            std::string base = a.irreducibles()[i].id + "." + b.irreducibles()[j].id;
            irr.push_back({"m." + base, s});
            if (flavor == Flavor::Pin2) irr.push_back({"m'." + base, s});
            irr.push_back({"s." + base, s + 1});
            if (flavor == Flavor::Pin2) irr.push_back({"s'." + base, s + 1});
        }

    auto sign_of = [&](int grading) -> long { return grading % 2 == 0 ? 1 : p - 1; };

    // left copies: differentials carried over, tower hits land on the new bottom
    for (const auto& e : a.irr_entries())
        irr_entries.push_back({Op::D, left_index(e.from), left_index(e.to), e.coeff});
    for (const auto& e : a.tower_entries())
        tower_entries.push_back({Op::D, left_index(e.irr), bottom_c, e.coeff});
    for (const auto& e : b.irr_entries())
        irr_entries.push_back({Op::D, right_index(e.from), right_index(e.to), e.coeff});
    for (const auto& e : b.tower_entries())
        tower_entries.push_back({Op::D, right_index(e.irr), bottom_c, e.coeff});

    // pair blocks
    for (int i = 0; i < na; ++i) {
        const int ai = a.irreducibles()[i].grading;
        const long ca = bottom_coeff(a, i);
        for (int j = 0; j < nb; ++j) {
            const int bj = b.irreducibles()[j].grading;
            const long cb = bottom_coeff(b, j);
            const long koszul = sign_of(ai);
            const int s = ai + bj;

            auto leibniz = [&](int slot, long second_factor_sign) {
                for (const auto& e : a.irr_entries())
                    if (e.from == i)
                        irr_entries.push_back(
                            {Op::D, pair_index(i, j, slot), pair_index(e.to, j, slot), e.coeff});
                for (const auto& e : b.irr_entries())
                    if (e.from == j)
                        irr_entries.push_back({Op::D, pair_index(i, j, slot),
                                               pair_index(i, e.to, slot),
                                               fp_normalize(second_factor_sign * e.coeff, p)});
            };

            // p (and p-bar): full Leibniz including the bottom-tower terms
            for (int slot : flavor == Flavor::Pin2 ? std::vector<int>{slot_p, slot_pbar}
                                                   : std::vector<int>{slot_p}) {
                leibniz(slot, koszul);
                if (ca != 0)
                    irr_entries.push_back({Op::D, pair_index(i, j, slot), right_index(j), ca});
                if (cb != 0)
                    irr_entries.push_back({Op::D, pair_index(i, j, slot), left_index(i),
                                           fp_normalize(koszul * cb, p)});
            }
            // suspended generators: irreducible-level Leibniz only
            for (int slot : flavor == Flavor::Pin2 ? std::vector<int>{slot_P, slot_Pbar}
                                                   : std::vector<int>{slot_P}) {
                leibniz(slot, fp_normalize(-koszul, p));
            }

            // gluing differential into the tower (needs both factors to
            // hit their bottoms) and the module-operator witness for the
            // chain-level commutation (needs only the right factor)
            if (ca != 0 && cb != 0) {
                long cc = fp_normalize(ca * cb, p);
                if (flavor == Flavor::Pin2)
                    tower_entries.push_back({Op::D, pair_index(i, j, slot_p), s - 1, cc});
                else
                    tower_entries.push_back({Op::D, pair_index(i, j, slot_P), s, cc});
            }
            if (cb != 0) {
                if (flavor == Flavor::Pin2)
                    irr_entries.push_back({Op::Q, pair_index(i, j, slot_p), left_index(i), cb});
                else
                    irr_entries.push_back({Op::U, pair_index(i, j, slot_P), left_index(i), cb});
            }
        }
    }

    return EquivariantComplex::make(flavor, p, n_c, std::move(irr), std::move(irr_entries),
                                    std::move(tower_entries), {}, offset_c);
}

EquivariantComplex degree_shift(const EquivariantComplex& c, int k, bool compensate) {
    if (k % 2 != 0)
        fail(ErrorCode::ShiftParityError, "degree shifts must be even (tower period)");
    if (c.flavor() == Flavor::Pin2 && compensate && k % 4 != 0)
        fail(ErrorCode::ShiftParityError,
             "compensated Pin2 shifts must be multiples of 4 (quaternionic suspension)");

    std::vector<EquivariantComplex::Irreducible> irr;
    for (const auto& x : c.irreducibles()) irr.push_back({x.id, x.grading + k});
    std::vector<EquivariantComplex::TowerHit> tower_entries;
    for (const auto& e : c.tower_entries())
        tower_entries.push_back({e.op, e.irr, e.tower_grading + k, e.coeff});
    std::vector<EquivariantComplex::CotowerHit> cotower_entries;
    for (const auto& e : c.cotower_entries())
        cotower_entries.push_back({e.op, e.tower_grading + k, e.irr, e.coeff});

    return EquivariantComplex::make(c.flavor(), c.field(), c.n_materialized() - k / 2,
                                    std::move(irr), c.irr_entries(), std::move(tower_entries),
                                    std::move(cotower_entries),
                                    c.grading_offset() + (compensate ? k : 0));
}

long n_invariant(long ind_c, long c1_squared, long sigma) {
    long num = c1_squared - sigma;
    if (num % 8 != 0)
        fail(ErrorCode::DivisibilityError,
             "(c1^2 - sigma) = " + std::to_string(num) + " is not divisible by 8");
    return ind_c - num / 8;
}

int rokhlin_mu(long sigma) {
    if (sigma % 8 != 0)
        fail(ErrorCode::DivisibilityError,
             "signature " + std::to_string(sigma) + " is not divisible by 8");
    long mu = (sigma / 8) % 2;
    return static_cast<int>((mu + 2) % 2);
}

} // namespace confloer
