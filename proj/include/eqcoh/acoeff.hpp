#pragma once

#include <set>

#include "eqcoh/zcoeff.hpp"

namespace eqcoh {

// Coefficient system A_I box Z_J: Burnside factors at the primes in I,
// constant-Z factors at the complementary primes J. I is stored by prime
// value so the same system restricts to any subgroup containing I.
struct CoeffSystem {
    std::set<long> I;

    static CoeffSystem full(const GroupSpec& g);
    static CoeffSystem const_z() { return {}; }
    CoeffSystem without(long p) const;
    std::string str(const GroupSpec& g) const;
};

struct ACohomologyAnswer {
    VirtualRep grading;
    FgAbelianGroup group_at_top;
    MackeyExpr mackey;  // valid only when !rep_dependent
    bool rep_dependent = false;
    GradingClass grading_class = GradingClass::NonZero;
};

// Group at the top orbit level, valid for every grading:
//   |alpha| even: rank #{S subset I : |alpha^{C_S}| = 0},
//     p-torsion exponent #{S subset I, p not in S : |alpha^{C_S}| > 0 and
//     |alpha^{C_{Sp}}| < 0 (p in I) / <= 0 (p in J)}
//   |alpha| odd: rank 0, p-torsion exponent
//     #{S subset I, p not in S : |alpha^{C_S}| < 0, |alpha^{C_{Sp}}| > 1}
// All torsion is elementary (np = 0).
FgAbelianGroup cohomology_A_group(const VirtualRep& alpha, const CoeffSystem& c);

// Mackey-level answer. Emitted when I is empty (constant-Z coefficients),
// when every |alpha^{C_S}| with S subset I is nonzero, or when alpha is
// mostly non-zero; in the last case the sum
//   (+)_{S subset I} <Z>_S box (Z-answer of alpha^{C_S} over C_{n/S})
// drops one copy of K_p<Z/p> for each prime p in zeta_alpha(S) cap I.
// Otherwise the functor is not determined by fixed-point dimensions and
// only the group is reported (rep_dependent flag).
ACohomologyAnswer cohomology_A_mackey(const VirtualRep& alpha, const CoeffSystem& c);

// H^alpha(S^0; <Z>_p box M) = <Z>_p box (the C_{n/p} answer M at grading
// alpha^{C_p}): embed the inner expression with a <Z> bracket at p.
MackeyExpr bZ_reduction(const VirtualRep& alpha, long p, const MackeyExpr& inner);

}  // namespace eqcoh
