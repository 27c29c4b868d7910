#ifndef CONFLOER_CHAIN_COMPLEX_HPP
#define CONFLOER_CHAIN_COMPLEX_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "confloer/exact_matrix.hpp"
#include "confloer/smith.hpp"

namespace confloer {

/// One graded piece of a homology computation: free rank plus torsion
/// coefficients over Z (each > 1, each dividing the next), or just the
/// dimension over F_p (torsion empty, rank = dimension).
struct HomologyGroup {
    int rank = 0;
    std::vector<mpz_class> torsion;

    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;
};

struct GradedHomology {
    Coefficients coeffs;
    std::map<int, HomologyGroup> groups; // nonzero gradings only

    int rank_at(int grading) const;
    const std::vector<mpz_class>* torsion_at(int grading) const;
    long total_rank() const;
    bool operator==(const GradedHomology&) const = default;
};

/// Finitely generated chain complex with integer gradings.  The boundary
/// map of grading g goes to grading g-1.  A checked complex satisfies
/// d(g-1) . d(g) = 0 for every g.
class GradedChainComplex {
public:
    /// Validates matrix dimensions and the d^2 = 0 identity; throws
    /// DSquaredNonzero naming the offending grading.
    static GradedChainComplex checked(std::vector<std::pair<std::string, int>> generators,
                                      std::map<int, ExactMatrix> boundaries,
                                      Coefficients coeffs = Coefficients::integers());

    /// Dimension-validated only. Used where d^2 = 0 is itself the question
    /// (Morse data on non-compact sets).
    static GradedChainComplex unchecked(std::vector<std::pair<std::string, int>> generators,
                                        std::map<int, ExactMatrix> boundaries,
                                        Coefficients coeffs = Coefficients::integers());

    const std::vector<std::pair<std::string, int>>& generators() const { return generators_; }
    const Coefficients& coefficients() const { return coeffs_; }

    int generator_count(int grading) const;
    /// Indices (into generators()) of the generators in one grading,
    /// in matrix column order.
    const std::vector<int>& grading_basis(int grading) const;
    std::vector<int> gradings_present() const;

    /// Boundary matrix from grading g to g-1 (zero matrix when absent).
    ExactMatrix boundary(int grading) const;
    bool d_squared_ok(int* offending_grading = nullptr) const;

    GradedChainComplex transposed_negated() const;
    long euler_characteristic() const;

private:
    GradedChainComplex() = default;
    static GradedChainComplex build(std::vector<std::pair<std::string, int>> generators,
                                    std::map<int, ExactMatrix> boundaries, Coefficients coeffs,
                                    bool check);

    std::vector<std::pair<std::string, int>> generators_;
    std::map<int, std::vector<int>> basis_; // grading -> generator indices
    std::map<int, ExactMatrix> boundaries_;
    Coefficients coeffs_;
    std::vector<int> empty_;
};

/// Exact homology: over Z, rank and torsion from Smith normal forms;
/// over F_p, dimensions from ranks mod p.  Rejects complexes with
/// d^2 != 0, naming the offending grading.
GradedHomology homology_of_complex(const GradedChainComplex& c);

/// Homology of the transposed complex with gradings negated.
GradedHomology cohomology_of_complex(const GradedChainComplex& c);

long euler_characteristic(const GradedHomology& h);

} // namespace confloer

#endif
