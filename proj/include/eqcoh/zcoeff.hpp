#pragma once

#include "eqcoh/mackey.hpp"
#include "eqcoh/repring.hpp"

namespace eqcoh {

struct CohomologyAnswer {
    VirtualRep grading;
    FgAbelianGroup group;  // value at the top level G/G
    MackeyExpr mackey;
    // Set only by the Burnside-side engine when the Mackey functor is not
    // determined by fixed-point dimensions alone (many-zeros gradings).
    bool rep_dependent = false;
};

// Reduced RO(G)-graded cohomology of S^0 with constant Z coefficients:
//   |alpha| = 0        -> Z^J               (group Z)
//   |alpha| > 0 even   -> (+) K_i<Z/p_i> over |alpha^{C_{p_i}}| <= 0, group Z/m(alpha)
//   |alpha| < 0 odd    -> (+) K_i<Z/p_i> over |alpha^{C_{p_i}}| > 1,  group Z/m(alpha)
//   otherwise 0
// For the trivial group this degenerates to Z when alpha = 0 and 0 otherwise.
CohomologyAnswer cohomology_Z(const VirtualRep& alpha);

// Bredon homology of the representation sphere S^V in integer degree m,
// which is the S^0 cohomology in grading V - m.
CohomologyAnswer homology_of_rep_sphere(const VirtualRep& V, long m);

enum class CoeffKind { Z, Burnside };

// Cohomology of the sphere S(xi^d)_+ (d | n, d < n) as the split pair
// (C_{n,d} part from grading alpha - 1, K_{n,d} part from grading alpha),
// inner functors computed over the subgroup C_d with the restricted grading.
struct SpherePair {
    MackeyExpr c_part;
    MackeyExpr k_part;
};
SpherePair sphere_boundary_splitting(const VirtualRep& alpha, long d, CoeffKind coeff);

// 3 - xi - alpha, the grading paired with alpha under Anderson duality.
VirtualRep duality_partner(const VirtualRep& alpha);

// Embed an expr over the subgroup with prime set S into the ambient group,
// boxing ConstZ (K-style) or DualZ (C-style) in the complementary factors.
MackeyExpr embed_expr(const GroupSpec& ambient, long d, const MackeyExpr& inner,
                      FactorKind complement);

}  // namespace eqcoh
