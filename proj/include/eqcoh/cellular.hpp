#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqcoh/abelian.hpp"
#include "eqcoh/mackey.hpp"
#include "eqcoh/repring.hpp"

namespace eqcoh {

// A formal Z-combination of translations: exponent t -> coefficient of rho^t.
// As an entry from an orbit G/C_s cell to a G/C_t cell (s | t), rho^t means
// the G-map sending the source generator to rho^t times the target generator;
// exponents are kept reduced mod n/t.
using GroupRingElt = std::map<long, long>;

struct ConjugationNontrivial : std::runtime_error {
    explicit ConjugationNontrivial(const std::string& what) : std::runtime_error(what) {}
};

// Augmented equivariant cellular chain complex: one orbit G/C_d per cell,
// degrees starting at -1 with the single G/G augmentation cell.
struct EquivChainComplex {
    GroupSpec spec{1};
    // cells[q + 1] lists the orbit divisors in augmented degree q
    std::vector<std::vector<long>> cells;
    // boundary[i], i >= 1: key (target cell, source cell) within
    // cells[i-1] x cells[i]; boundary[0] stays empty
    std::vector<std::map<std::pair<long, long>, GroupRingElt>> boundary;

    long top_degree() const { return static_cast<long>(cells.size()) - 2; }
    // composes adjacent boundaries in the group ring and checks the result
    // is identically zero, before any coefficients are applied
    bool formal_square_zero() const;
    std::string str() const;
};

// The augmented cellular complex of the unit sphere S(V) for
// V = xi^{r_1} + ... + xi^{r_k}. Each factor contributes the circle
//   Z[G/C_d] --(rho^t - 1)--> Z[G/C_d] --> Z[G/G],   d = gcd(r, n),
// with t the smallest positive inverse of r/d mod n/d, and factors are
// combined by the join (tensor with a degree shift of one and Koszul signs),
// decomposing products of orbits into orbits as it goes. Throws
// std::invalid_argument unless every exponent satisfies 1 <= r < n.
EquivChainComplex sphere_complex(const GroupSpec& g, const std::vector<long>& exponents);

// Chain homotopy reduction: repeatedly cancels a pair of cells in adjacent
// degrees joined by a boundary entry that is a single +-rho^t between orbits
// of the same divisor (an invertible Z[G]-module map), applying the Gaussian
// elimination lemma to the surrounding entries. The result is homotopy
// equivalent, so it has the same homology after evaluation at every level;
// joins of circles collapse to a small fraction of their cell count.
EquivChainComplex morse_reduce(const EquivChainComplex& c);

enum class Variance { Homology, Cohomology };

// The complex with coefficients applied at level m. A G/C_d cell contributes
// n/lcm(m, d) copies of coeff(G/C_{gcd(m, d)}); translations permute copies
// and projections act by transfers (homology) or restrictions (cohomology).
struct EvaluatedComplex {
    long level = 1;
    Variance variance = Variance::Homology;
    std::vector<BasedGroup> groups;  // per degree index, degree = index - 1
    // diff[i] for i >= 1, as sparse triplets:
    //   Homology:    groups[i] -> groups[i-1]
    //   Cohomology:  groups[i-1] -> groups[i]
    std::vector<std::vector<SparseTriplet>> diff;

    IntMat dense_diff(long i) const;
};

// Throws ConjugationNontrivial if the coefficient table carries a
// non-identity Weyl action (the copy bookkeeping below folds it away).
EvaluatedComplex evaluate(const EquivChainComplex& c, const MackeyTable& coeff, long m,
                          Variance v);

// Homology of the evaluated complex at augmented degree k - 1, which is the
// reduced (co)homology of S^V smashed with G/C_m+ in degree k. Torsion in the
// coefficient values is handled by passing to the free resolution of the
// complex; the heavy lifting is sparse Smith reduction.
FgAbelianGroup evaluated_homology(const EvaluatedComplex& ec, long k);

// All degrees at once, reducing each differential a single time; entry k is
// the degree-k answer. This is what sweeps should call.
std::vector<FgAbelianGroup> evaluated_homology_all(const EvaluatedComplex& ec);

FgAbelianGroup bredon_homology(const GroupSpec& g, const std::vector<long>& exponents, long k,
                               const MackeyTable& coeff, long m);
FgAbelianGroup bredon_cohomology(const GroupSpec& g, const std::vector<long>& exponents, long k,
                                 const MackeyTable& coeff, long m);

// Degree-k values at every level assembled into a Mackey functor, with
// restrictions and transfers induced on homology by the evident chain maps.
// Checks that the generator of G acts as the identity on each level and that
// the assembled table satisfies the Mackey axioms; throws std::runtime_error
// if either fails.
MackeyTable mackey_assemble(const GroupSpec& g, const std::vector<long>& exponents, long k,
                            const MackeyTable& coeff, Variance v);

// Same assembly for an arbitrary prebuilt complex (degree k is read against
// the usual index k convention).
MackeyTable assemble_complex(const GroupSpec& g, const EquivChainComplex& c, long k,
                             const MackeyTable& coeff, Variance v);

// Reduced cellular complex of S^W smashed with the unreduced sphere
// S(xi^d)+, indexed so that degree-k homology again sits at index k. This is
// what lets the boundary-sphere splitting be cross-checked cell by cell.
EquivChainComplex sphere_boundary_smash(const GroupSpec& g, const std::vector<long>& W, long d);

}  // namespace eqcoh
