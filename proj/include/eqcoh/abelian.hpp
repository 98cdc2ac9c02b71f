#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace eqcoh {

using Int = mpz_class;

// Dense integer matrix over GMP integers, row-major.
struct IntMat {
    long rows = 0;
    long cols = 0;
    std::vector<Int> data;

    IntMat() = default;
    IntMat(long r, long c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    Int& at(long i, long j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Int& at(long i, long j) const { return data[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(long n);
    static IntMat zero(long r, long c) { return IntMat(r, c); }

    IntMat mul(const IntMat& rhs) const;
    IntMat transpose() const;
    // [this | rhs], same row count.
    IntMat hstack(const IntMat& rhs) const;
    // column j as a vector
    std::vector<Int> col(long j) const;

    bool operator==(const IntMat& o) const = default;
};

IntMat mat_from(const std::vector<std::vector<long>>& rows);

// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr,
// diagonal entries nonnegative. Pivot selection: entry of minimal absolute
// value, which keeps intermediate entries small on the sparse matrices we
// feed it.
struct SmithResult {
    IntMat U;  // rows x rows
    IntMat D;  // rows x cols
    IntMat V;  // cols x cols
    long rank = 0;
    std::vector<Int> diag() const;
};

SmithResult smith(const IntMat& A);

// Finitely generated abelian group in normal form: Z^free_rank plus
// Z/d1 (+) ... (+) Z/dk with 1 < d1 | d2 | ... | dk.
struct FgAbelianGroup {
    long free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const FgAbelianGroup& o) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    // 0 means infinite
    Int order() const;
    std::string str() const;
};

// orders: 0 for a free generator, k >= 1 for Z/k (1s are dropped).
FgAbelianGroup group_from_orders(const std::vector<Int>& orders);
FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b);
FgAbelianGroup tensor(const FgAbelianGroup& a, const FgAbelianGroup& b);
bool iso_check(const FgAbelianGroup& a, const FgAbelianGroup& b);

// A based abelian group: an explicit direct sum of cyclic pieces in a fixed
// generator order. orders[i] = 0 means Z; order-1 slots are kept so that
// generator indexing of Kronecker products stays aligned.
// Sparse integer matrix entry. Duplicate (r, c) pairs are summed.
struct SparseTriplet {
    long r = 0;
    long c = 0;
    Int v;
};

struct SparseSmithResult {
    long rank = 0;
    // invariant factors > 1, in divisibility order
    std::vector<Int> nonunit;
};

// Smith normal form data (rank and nonunit invariant factors) of a sparse
// matrix. Eliminates +-1 pivots with a fill-minimizing heuristic, then hands
// whatever survives to the dense routine. This is what makes homology of the
// large evaluated cell complexes feasible: their differentials are mostly
// signed permutation blocks.
SparseSmithResult sparse_smith(long rows, long cols, const std::vector<SparseTriplet>& entries);

struct BasedGroup {
    std::vector<Int> orders;

    long ngens() const { return static_cast<long>(orders.size()); }
    FgAbelianGroup normal_form() const { return group_from_orders(orders); }
    static BasedGroup free_of_rank(long n) { return BasedGroup{std::vector<Int>(n, Int(0))}; }
    bool operator==(const BasedGroup& o) const = default;
};

// Direct sum concatenates generators; tensor is Kronecker order (first factor
// outermost).
BasedGroup based_direct_sum(const BasedGroup& a, const BasedGroup& b);
BasedGroup based_tensor(const BasedGroup& a, const BasedGroup& b);
IntMat kronecker(const IntMat& a, const IntMat& b);

// True if the two matrices induce the same map of based groups, i.e. agree
// entrywise modulo the target generator orders.
bool maps_equal_mod(const IntMat& a, const IntMat& b, const BasedGroup& target);
IntMat reduce_mod(const IntMat& a, const BasedGroup& target);

// Homology of  C_in --d_in--> C --d_out--> C_out  at the middle spot, where
// the chain groups may carry ambient torsion (BasedGroup orders). Retains
// enough data to push cycles to homology coordinates and to express homology
// generators as chains, which is what lets chain maps induce maps on
// homology.
struct HomologyData {
    FgAbelianGroup group;
    // Per retained homology generator: 0 for free, k > 1 for torsion, in the
    // d1 | d2 | ... order produced by Smith reduction (free part last).
    std::vector<Int> gen_orders;
    // ngens(C) x (number of retained generators): column j is a chain
    // representing homology generator j.
    IntMat gens;

    // internals for coordinates_of_cycle
    IntMat K;         // cycle lattice generators (columns)
    SmithResult Ksnf; // Smith form of K, for solving K w = v
    IntMat Ux;        // coordinate change on K-coordinates
    std::vector<Int> full_orders;
    std::vector<long> keep;
};

HomologyData homology_at(const BasedGroup& C_in_src, const IntMat& d_in,
                         const BasedGroup& C, const IntMat& d_out,
                         const BasedGroup& C_out);

// Free-ambient convenience.
HomologyData homology_at(const IntMat& d_in, const IntMat& d_out);

// Coordinates of a cycle (a chain vector killed by d_out modulo ambient
// torsion) in the homology generators, one entry per retained generator,
// reduced mod gen_orders. Throws std::runtime_error if v is not a cycle.
std::vector<Int> coordinates_of_cycle(const HomologyData& h, const std::vector<Int>& v);

}  // namespace eqcoh
