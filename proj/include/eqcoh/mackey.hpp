#pragma once

#include "eqcoh/abelian.hpp"
#include "eqcoh/repring.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace eqcoh {

// One tensor factor of a Mackey atom, living over C_{p_i}.
//   ConstZ  : Z at both levels, res = 1, tr = p
//   DualZ   : Z at both levels, res = p, tr = 1
//   Bracket : <Z/c> (c = 0 means <Z>): c at the top level, 0 at the bottom
//   Burnside: A over C_p: Z^2 at the top, Z at the bottom, res = [1 p], tr = [0 1]^T
// Order matters for the canonical sort of atoms: non-constant factors sort
// before ConstZ, so e.g. K[3]<Z/3> precedes K[5]<Z/5>.
enum class FactorKind { Bracket, DualZ, Burnside, ConstZ };

struct AtomFactor {
    FactorKind kind = FactorKind::ConstZ;
    long c = 0;  // Bracket torsion; 0 and p are the only values used
    auto operator<=>(const AtomFactor&) const = default;
};

// Box product of one factor per prime of n (the decomposition C_n = prod C_{p_i}).
struct MackeyAtom {
    std::vector<AtomFactor> factors;
    auto operator<=>(const MackeyAtom&) const = default;
};

// Formal direct sum of atoms, canonically sorted.
struct MackeyExpr {
    std::vector<MackeyAtom> atoms;

    bool is_zero() const { return atoms.empty(); }
    MackeyExpr& canonicalize();
    bool operator==(const MackeyExpr& o) const = default;
};

MackeyExpr expr_sum(const MackeyExpr& a, const MackeyExpr& b);

// Convenience constructors (k = number of primes of the group).
MackeyAtom atom_const_z(size_t k);
MackeyAtom atom_burnside(size_t k);
// K_{n,p_i}<Z/p_i>: Bracket(p) at position i, ConstZ elsewhere.
MackeyAtom atom_K_bracket(const GroupSpec& g, size_t i);
// Z^J: ConstZ where J_i = 0, DualZ where J_i = 1 (so Z^(0,...,0) = Z and
// Z^(1,...,1) = Z*).
MackeyAtom atom_z_power_j(const std::vector<int>& j);

std::string atom_str(const GroupSpec& g, const MackeyAtom& a);
std::string expr_str(const GroupSpec& g, const MackeyExpr& e);

// A concrete Mackey functor given by based values at each divisor level and
// matrices for the cover-pair restrictions and transfers. Longer maps are
// composites (path independence is part of check_axioms). Conjugations are
// identity throughout: the group is abelian and the Weyl action is trivial on
// everything built here (asserted where checkable).
struct MackeyTable {
    GroupSpec spec{1};
    std::map<long, BasedGroup> levels;
    // res[(dp, d)]: value(dp) -> value(d);  tr[(d, dp)]: value(d) -> value(dp)
    std::map<std::pair<long, long>, IntMat> res;
    std::map<std::pair<long, long>, IntMat> tr;
    // Action of the group generator on value(d) (the Weyl action of C_{n/d}).
    // Absent entries mean identity, which covers every coefficient functor
    // used here; induced orbit functors store the genuine copy permutation.
    std::map<long, IntMat> conj;

    const BasedGroup& level(long d) const { return levels.at(d); }
    FgAbelianGroup value(long d) const { return levels.at(d).normal_form(); }
    IntMat conj_at(long d) const;
    // composite restriction a -> b (b | a) and transfer b -> a
    IntMat res_to(long a, long b) const;
    IntMat tr_to(long b, long a) const;
};

MackeyTable concretize(const MackeyExpr& e, const GroupSpec& g);
MackeyTable concretize(const MackeyAtom& a, const GroupSpec& g);

struct AxiomReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Verifies cover-square path independence, naturality of the conjugation
// action, and the double coset identity
//   res^a_b tr^a_c = tr^b_g (sum over a/lcm(b,c) coset reps of c_x) res^c_g
// for all b, c | a with g = gcd(b, c); when conjugation is trivial the sum is
// just the count a/lcm(b,c). With z_module set, also tr o res = index.
AxiomReport check_axioms(const MackeyTable& t, bool z_module = false);

// The Mackey functor obtained from a C_d functor by inducing along the orbit
// G/C_d: value at level m is n/lcm(d,m) copies of inner(gcd(d,m)), with
// diagonal restrictions and fold transfers across the free directions.
MackeyTable induce_orbit(const GroupSpec& g, long d, const MackeyTable& inner);

struct ExactnessReport {
    bool ok = false;
    std::vector<std::string> details;  // per-level cokernel vs expected sum
};

// The short exact sequence 0 -> Z* -> Z -> (+)_i K_{n,p_i}<Z/p_i> -> 0, with
// the inclusion given levelwise by multiplication by the level index.
ExactnessReport exactness_witness(long n);

bool tables_levelwise_iso(const MackeyTable& a, const MackeyTable& b);

// Stable structured-text serialization, round-trips through parse_table.
std::string table_to_text(const MackeyTable& t);
MackeyTable parse_table(const std::string& text);

}  // namespace eqcoh
