#include "eqcoh/zcoeff.hpp"

#include <stdexcept>

#include "eqcoh/acoeff.hpp"

namespace eqcoh {

CohomologyAnswer cohomology_Z(const VirtualRep& alpha) {
    GroupSpec g(alpha.n);
    CohomologyAnswer ans;
    ans.grading = alpha;
    long dim = alpha.virtual_dim();
    if (dim == 0) {
        ans.mackey.atoms.push_back(atom_z_power_j(j_vector(alpha)));
        ans.group.free_rank = 1;
        return ans;
    }
    if ((dim > 0 && dim % 2 == 0) || (dim < 0 && (-dim) % 2 == 1)) {
        for (size_t i = 0; i < g.primes.size(); ++i) {
            long dp = fixed_dim(alpha, g.primes[i]);
            bool keep = dim > 0 ? dp <= 0 : dp > 1;
            if (keep) ans.mackey.atoms.push_back(atom_K_bracket(g, i));
        }
        ans.mackey.canonicalize();
        ans.group = group_from_orders({Int(m_alpha(alpha))});
        return ans;
    }
    return ans;  // zero
}

CohomologyAnswer homology_of_rep_sphere(const VirtualRep& V, long m) {
    if (V.trivial < 0) throw std::runtime_error("homology_of_rep_sphere: V must be an actual representation");
    for (auto& [d, c] : V.twists)
        if (c < 0) throw std::runtime_error("homology_of_rep_sphere: V must be an actual representation");
    VirtualRep shift;
    shift.n = V.n;
    shift.trivial = m;
    return cohomology_Z(V - shift);
}

VirtualRep duality_partner(const VirtualRep& alpha) {
    VirtualRep r = -alpha;
    r.trivial += 3;
    r.twists[1] -= 1;
    if (r.twists[1] == 0) r.twists.erase(1);
    return r;
}

MackeyExpr embed_expr(const GroupSpec& ambient, long d, const MackeyExpr& inner,
                      FactorKind complement) {
    if (complement != FactorKind::ConstZ && complement != FactorKind::DualZ)
        throw std::runtime_error("embed_expr: complement must be ConstZ or DualZ");
    GroupSpec sub(d);
    MackeyExpr out;
    for (const MackeyAtom& a : inner.atoms) {
        if (a.factors.size() != sub.primes.size()) throw std::runtime_error("embed_expr: arity mismatch");
        MackeyAtom b;
        size_t src = 0;
        for (long p : ambient.primes) {
            if (d % p == 0) b.factors.push_back(a.factors.at(src++));
            else b.factors.push_back(AtomFactor{complement, 0});
        }
        out.atoms.push_back(b);
    }
    return out.canonicalize();
}

SpherePair sphere_boundary_splitting(const VirtualRep& alpha, long d, CoeffKind coeff) {
    GroupSpec g(alpha.n);
    if (g.n % d != 0 || d == g.n) throw std::runtime_error("sphere_boundary_splitting: need d | n, d < n");
    VirtualRep one;
    one.n = alpha.n;
    one.trivial = 1;
    VirtualRep a_sub = restrict_to_subgroup(alpha, d);
    VirtualRep am1_sub = restrict_to_subgroup(alpha - one, d);
    SpherePair pr;
    if (coeff == CoeffKind::Z) {
        pr.c_part = embed_expr(g, d, cohomology_Z(am1_sub).mackey, FactorKind::DualZ);
        pr.k_part = embed_expr(g, d, cohomology_Z(a_sub).mackey, FactorKind::ConstZ);
    } else {
        CoeffSystem full = CoeffSystem::full(GroupSpec(d));
        ACohomologyAnswer c_inner = cohomology_A_mackey(am1_sub, full);
        ACohomologyAnswer k_inner = cohomology_A_mackey(a_sub, full);
        if (c_inner.rep_dependent || k_inner.rep_dependent)
            throw std::runtime_error(
                "sphere_boundary_splitting: inner Burnside answer is representation-dependent");
        pr.c_part = embed_expr(g, d, c_inner.mackey, FactorKind::DualZ);
        pr.k_part = embed_expr(g, d, k_inner.mackey, FactorKind::ConstZ);
    }
    return pr;
}

}  // namespace eqcoh
