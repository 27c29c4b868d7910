#ifndef CONFLOER_MODULE_HOMOLOGY_HPP
#define CONFLOER_MODULE_HOMOLOGY_HPP

#include <map>
#include <optional>
#include <string>

#include "confloer/equivariant.hpp"

namespace confloer {

/// Homology of an equivariant complex on a finite window, with the
/// induced module-operator matrices and a periodicity certificate for the
/// top band (where the action from above is bijective onto the tower
/// part).  Gradings here are materialized; reported gradings subtract
/// `offset`.
struct HomologyModule {
    Flavor flavor = Flavor::S1;
    long p = 2;
    int window_lo = 0, window_hi = 0;
    int offset = 0;
    int n_reported = 0;
    int mu = 0;
    int generator_budget = 0;

    std::map<int, int> dims; // nonzero gradings only
    /// induced operators: op -> grading -> matrix H_g -> H_{g-deg}
    std::map<int, std::map<int, FpMatrix>> actions;
    /// homology coordinates of each grading's chosen representatives are
    /// implicit; only dimensions and actions are exposed

    bool certified = false;
    int certificate_lo = 0, certificate_hi = 0;

    int dim_at(int materialized_grading) const;
    const FpMatrix* action(Op op, int materialized_grading) const;
    int reported(int materialized_grading) const { return materialized_grading - offset; }
};

/// Homology with induced operators.  The window (given in reported
/// gradings) must contain the auto window; WindowTooSmall otherwise, or
/// when the top-band periodicity certificate fails.
HomologyModule module_homology(const EquivariantComplex& c,
                               std::optional<std::pair<int, int>> window = std::nullopt);

/// Stable tail: intersection of the images of the periodicity operator
/// (U for S1, v for Pin2), per grading, on the reliable part of the
/// window.
struct Tail {
    std::map<int, FpMatrix> spaces; // grading -> column basis inside H_g
    int band_lo = 0, band_hi = 0;   // gradings where the tail is defined
    int dim_at(int g) const;
};
Tail stable_tail(const HomologyModule& h);

/// Minimal reported grading of a nonzero element of the U-tail.
int u_tail_bottom(const HomologyModule& h);
/// h = -d/2, with d even (ParityViolation otherwise).
int froyshov_h(const HomologyModule& h);

struct VTailBottoms {
    int a = 0, b = 0, c = 0;
};
/// Minimal reported gradings of the three v-tails, in the residue classes
/// 2mu, 2mu+1, 2mu+2 (mod 4); TailPatternViolation when the stable tail
/// does not have the three-tails shape.
VTailBottoms v_tail_bottoms(const HomologyModule& h);

struct AlphaBetaGamma {
    int alpha = 0, beta = 0, gamma = 0;
};
/// alpha = a/2, beta = (b-1)/2, gamma = (c-2)/2, after checking the mod-4
/// congruences against mu (CongruenceViolation otherwise).
AlphaBetaGamma alpha_beta_gamma(const VTailBottoms& abc, int mu);

struct TateReport {
    bool pass = false;
    std::string detail;
};
/// Pattern of the localized module: one copy of F per even grading with U
/// invertible (S1), or one copy per residue 2mu,2mu+1,2mu+2 with the
/// q-ladder and v invertible (Pin2).
TateReport tate_pattern_check(const HomologyModule& h);

struct InvariantReport {
    Flavor flavor = Flavor::S1;
    long p = 2;
    int n = 0, mu = 0;
    // S1
    int d = 0, h = 0;
    // Pin2
    int a = 0, b = 0, c = 0;
    int alpha = 0, beta = 0, gamma = 0;
    std::pair<int, int> window{0, 0}; // reported window used

    bool operator==(const InvariantReport&) const = default;
};

InvariantReport extract_invariants(const EquivariantComplex& c,
                                   std::optional<std::pair<int, int>> window = std::nullopt);

struct NonSplittingCertificate {
    InvariantReport forward;
    InvariantReport reverse; // of the dualized complex
    bool beta_negates = false;      // beta(-Y) == -beta(Y)
    bool beta_lifts_rokhlin = false; // beta == mu (mod 2)
    /// the deduced statement: an order-two class in homology cobordism has
    /// vanishing Rokhlin invariant
    std::string conclusion;
};

/// Runs the orientation-reversal argument on a Pin2 complex and records
/// every intermediate number.
NonSplittingCertificate nonsplitting_certificate(const EquivariantComplex& c);

struct AdditivityDefect {
    std::vector<std::vector<long>> defect; // pair (i, j) entries
};

/// Defect of c_alpha*alpha + c_beta*beta + c_gamma*gamma on pairwise
/// disjoint unions against the sum over the factors.
AdditivityDefect additivity_defect(long c_alpha, long c_beta, long c_gamma,
                                   const std::vector<EquivariantComplex>& complexes);

} // namespace confloer

#endif
