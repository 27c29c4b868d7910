#ifndef CONFLOER_EQUIVARIANT_HPP
#define CONFLOER_EQUIVARIANT_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confloer/fp.hpp"

namespace confloer {

enum class Flavor { S1, Pin2 };

inline const char* flavor_name(Flavor f) { return f == Flavor::S1 ? "S1" : "Pin2"; }

/// Module operators: the differential plus the equivariant actions.
/// S1 complexes carry U (degree -2); Pin2 complexes carry q (degree -1)
/// and v (degree -4).  The differential has degree -1.
enum class Op { D, U, Q, V };

int op_degree(Op op);
const char* op_name(Op op);

/// Graded complex over F_p with an infinite reducible tower (implied by
/// the integer n: bottom generator in grading -2n) plus finitely many
/// irreducible generators and their interaction entries.  Everything the
/// invariant extraction needs is materialized on finite windows.
class EquivariantComplex {
public:
    struct Irreducible {
        std::string id;
        int grading = 0; // materialized grading
    };
    /// irr --op--> tower generator (tower grading = source - degree)
    struct TowerHit {
        Op op;
        int irr = 0;
        int tower_grading = 0;
        long coeff = 1;
    };
    /// irr --op--> irr
    struct IrrHit {
        Op op;
        int from = 0, to = 0;
        long coeff = 1;
    };
    /// tower generator --op--> irr
    struct CotowerHit {
        Op op;
        int tower_grading = 0;
        int irr = 0;
        long coeff = 1;
    };

    /// General constructor; validates degrees, d^2 = 0, operator
    /// commutation, q^3 = 0 and qv = vq on a materialized window.
    static EquivariantComplex make(Flavor flavor, long p, int n, std::vector<Irreducible> irr,
                                   std::vector<IrrHit> irr_entries,
                                   std::vector<TowerHit> tower_entries,
                                   std::vector<CotowerHit> cotower_entries, int grading_offset = 0);

    Flavor flavor() const { return flavor_; }
    long field() const { return p_; }
    /// Structural n: the materialized tower bottom sits in grading -2n.
    int n_materialized() const { return n_; }
    /// Reported n (compensated shifts fold back in).
    int n_reported() const { return n_ + offset_ / 2; }
    int mu() const { return ((n_reported() % 2) + 2) % 2; }
    int grading_offset() const { return offset_; }

    const std::vector<Irreducible>& irreducibles() const { return irr_; }
    const std::vector<IrrHit>& irr_entries() const { return irr_entries_; }
    const std::vector<TowerHit>& tower_entries() const { return tower_entries_; }
    const std::vector<CotowerHit>& cotower_entries() const { return cotower_entries_; }

    /// Tower-generator gradings: -2n + 2k for S1; -2n + {0,1,2} mod 4
    /// pattern for Pin2.
    bool is_tower_grading(int g) const;
    int tower_bottom() const { return -2 * n_; }

    /// Window sizing: each irreducible can move a tail bottom by a bounded
    /// amount and image iteration stabilizes within G+2 steps.
    int generator_budget() const; // G
    std::pair<int, int> auto_window() const; // materialized gradings

    struct Generator {
        bool tower = false;
        int irr = -1; // index when !tower
        int grading = 0;
        std::string id;
    };
    struct Materialized {
        Flavor flavor;
        long p = 2;
        int lo = 0, hi = 0;
        std::map<int, std::vector<Generator>> by_grading;
        std::map<std::pair<int, int>, FpMatrix> matrices; // (op as int, grading) -> matrix

        int dim(int g) const;
        const FpMatrix& matrix(Op op, int g) const; // from g to g - deg(op)
    };
    Materialized materialize(int lo, int hi) const;

private:
    EquivariantComplex() = default;
    void validate() const;

    Flavor flavor_ = Flavor::S1;
    long p_ = 2;
    int n_ = 0;
    int offset_ = 0;
    std::vector<Irreducible> irr_;
    std::vector<IrrHit> irr_entries_;
    std::vector<TowerHit> tower_entries_;
    std::vector<CotowerHit> cotower_entries_;
};

/// Builder input: one irreducible with its outgoing operator targets.
/// A tower target's grading is implied by the source grading and the
/// operator degree.
struct IrreducibleSpec {
    std::string id; // optional; defaults to x<k>
    int grading = 0;
    struct Target {
        bool tower = false;
        int irr = -1; // index into the irreducible list when !tower
        long coeff = 1;
    };
    std::vector<Target> d, u, q, v;
};

EquivariantComplex build_s1_complex(int n, const std::vector<IrreducibleSpec>& irreducibles,
                                    long p = 2);
EquivariantComplex build_pin2_complex(int n, const std::vector<IrreducibleSpec>& irreducibles);

/// Gradings negated, interaction entries transposed (tower interactions
/// pair with the period-complement operator), n replaced by -n.
EquivariantComplex dualize(const EquivariantComplex& c);

/// Disjoint-union complex: tensor over the operator ring in the cell
/// model.  n adds; irreducibles of one factor re-grade by the other
/// factor's tower dimension; irreducible pairs produce a free-orbit block.
EquivariantComplex tensor_disjoint_union(const EquivariantComplex& a, const EquivariantComplex& b);

/// Gradings shifted by k; with compensate the reporting offset moves too,
/// so extracted invariants are unchanged.
EquivariantComplex degree_shift(const EquivariantComplex& c, int k, bool compensate);

/// n =  ind_C - (c1^2 - sigma)/8.
long n_invariant(long ind_c, long c1_squared, long sigma);

/// (sigma/8) mod 2 for a spin filling; DivisibilityError unless 8 | sigma.
int rokhlin_mu(long sigma);

} // namespace confloer

#endif
