#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace eqcoh {

// The ambient cyclic group C_n with n odd and squarefree.
struct GroupSpec {
    long n = 1;
    std::vector<long> primes;    // ascending
    std::vector<long> divisors;  // ascending, includes 1 and n

    explicit GroupSpec(long n_value = 1);
    bool operator==(const GroupSpec& o) const { return n == o.n; }

    // divisor identified by the subset of primes it contains
    long divisor_of_mask(unsigned mask) const;
    unsigned mask_of_divisor(long d) const;
    GroupSpec subgroup(long d) const { return GroupSpec(d); }
    GroupSpec quotient(long d) const { return GroupSpec(n / d); }
};

// Virtual representation a0 * 1 + sum c_r * xi^r, stored reduced: every
// nontrivial character index folded to the divisor gcd(r, n), since xi^r and
// xi^r' have the same cohomological data iff gcd(r,n) = gcd(r',n) for the
// theories computed here (fixed-point dimensions only depend on the gcd).
struct VirtualRep {
    long n = 1;
    long trivial = 0;            // coefficient of the trivial character
    std::map<long, long> twists; // proper divisor d of n -> coefficient of xi^d

    long virtual_dim() const;
    bool is_zero() const { return trivial == 0 && twists.empty(); }
    VirtualRep operator+(const VirtualRep& o) const;
    VirtualRep operator-(const VirtualRep& o) const;
    VirtualRep operator-() const;
    bool operator==(const VirtualRep& o) const = default;
    std::string str() const;  // e.g. "2*xi^3 - 2*xi^1 - 1"
};

// raw constructor: xi^r with arbitrary r (mod n); r = 0 counts 2 toward the
// fixed-dimension bookkeeping of an underlying real representation only when
// the caller says so; here xi^0 is the complex trivial rep = 2 real trivials.
VirtualRep rep_from_raw(long n, long trivial, const std::map<long, long>& raw_twists);

// dim of the C_d fixed subspace, counting each xi^r as 2 real dimensions.
long fixed_dim(const VirtualRep& a, long d);
std::map<long, long> fixed_dims(const VirtualRep& a);  // all divisors of n

// Reconstruct the reduced form from its fixed-dimension vector (triangular).
VirtualRep rep_from_fixed_dims(long n, const std::map<long, long>& dims);

// m(alpha): for |alpha| even, the product of primes p with |alpha^{C_p}| <= 0;
// for |alpha| odd, the product of primes p with |alpha^{C_p}| > 1.
long m_alpha(const VirtualRep& a);

// J-indicator per prime: J_i = 0 iff |alpha^{C_{p_i}}| <= 0 (meaningful when
// |alpha| = 0: the value of the theory is Z^J as a box of Z and dual-Z atoms).
std::vector<int> j_vector(const VirtualRep& a);

enum class GradingClass { NonZero, MostlyNonZero, ManyZeros };
// NonZero: |alpha^{C_d}| != 0 for every divisor d. MostlyNonZero: whenever
// |alpha^{C_d}| = 0, every prime q dividing n but not d has
// |alpha^{C_{dq}}| != 0. ManyZeros: neither.
GradingClass classify(const VirtualRep& a);

// alpha^{C_d} as a representation of C_{n/d} (characters not fixed by C_d die,
// xi^e with d | e becomes xi^{e/d}).
VirtualRep quotient_fixed(const VirtualRep& a, long d);

// restriction to the subgroup C_m (m | n): xi^e pulls back to xi^{e mod m}.
VirtualRep restrict_to_subgroup(const VirtualRep& a, long m);

// zeta set for the A-coefficient stripping rule: primes p_i (given as prime
// set indices into spec.primes) with i outside mask and |alpha^{C_{dI * p_i}}| = 0
// where dI = divisor_of_mask(mask).
std::set<int> zeta_set(const GroupSpec& g, const VirtualRep& a, unsigned mask);

// grading expression parser: terms like "2*xi^3", "xi^5", "- 1", "+3".
// Throws std::runtime_error with a helpful message on bad syntax.
VirtualRep parse_grading(long n, const std::string& expr);

}  // namespace eqcoh
