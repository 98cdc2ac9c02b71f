#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqcoh/repring.hpp"

namespace eqcoh {

// One generalized cell G x_{C_isotropy} D(rep). A cell is "even" if rep is an
// actual representation whose fixed-point dimension is even at every level.
struct CellSpec {
    long isotropy = 0;  // divisor d, the subgroup C_d
    VirtualRep rep;
};

// Monotone sequence 0 <= a_1 <= ... <= a_m <= l - m indexing a Schubert cell
// of the Grassmannian of m-planes in an l-dimensional sum of distinct
// characters. Total cell dimension is 2 * sum(a).
struct SchubertSymbol {
    std::vector<long> a;

    long total() const;
    std::string str() const;  // "(a_1,...,a_m)"
};

// The attachment partial order: W << V iff whenever some fixed-point
// dimension drops strictly, |W^{C_s}| < |V^{C_s}|, it keeps not exceeding at
// every larger subgroup: |W^{C_t}| <= |V^{C_t}| for all t with s | t.
// Reflexive and transitive, not antisymmetric.
bool ll_compare(const VirtualRep& W, const VirtualRep& V);

// Same test on precomputed fixed-dimension tables (divisor -> dim).
bool ll_dims(const GroupSpec& g, const std::map<long, long>& W, const std::map<long, long>& V);

struct BasisElt {
    VirtualRep grading;
    long isotropy = 0;
};

struct EvenTypeReport {
    bool ok = true;
    // human-readable descriptions of every violation found
    std::vector<std::string> problems;
    // on success, one free-module generator per cell: the suspension grading
    // and the orbit whose cohomology it carries
    std::vector<BasisElt> basis;
};

// Verifies that the cells, in the given attachment order, form an even-type
// complex: every cell even, and earlier << later for every pair. On success
// the cohomology is a free module with the emitted basis. When dims_override
// is supplied (one table per cell, aligned with `cells`), the << comparisons
// and the evenness of dimensions use those tables instead of the dimensions
// of the stored representations.
EvenTypeReport check_even_type(const GroupSpec& g, const std::vector<CellSpec>& cells,
                               const std::vector<std::map<long, long>>* dims_override = nullptr);

// Cells of the projective space of lines in U(m_top) + C, the sum of the
// first m_top nontrivial characters and a trivial summand: cell r carries
// W_r = xi^{-1} + xi^{-2} + ... + xi^{-r} (exponents mod n), isotropy G.
std::vector<CellSpec> cp_cells(const GroupSpec& g, long m_top);

// The closed-form dimension table 2*floor(r/d) the construction should match.
std::map<long, long> cp_dims_floor(const GroupSpec& g, long r);

struct GrassmannCell {
    SchubertSymbol symbol;
    CellSpec cell;
    std::map<long, long> dims_direct;  // fixed dims of the constructed rep
    std::map<long, long> dims_floor;   // 2 * sum_i floor(a_i / d)
    bool mismatch = false;             // direct and floor tables disagree
};

// All C(l, m) Schubert cells of the Grassmannian of m-planes in U(l), in
// attachment order (total dimension, then lexicographic symbol). The cell
// representation is built literally as
//   W_a = sum_i sum_j xi^{j - (a_i + i)},  1 <= j <= a_i + i - 1,
//                                          j not in {a_k + k : k < i},
// and its dimension table is compared against the floor formula; rows where
// the two disagree are flagged, not resolved.
std::vector<GrassmannCell> grassmann_cells(const GroupSpec& g, long l, long m);

}  // namespace eqcoh
