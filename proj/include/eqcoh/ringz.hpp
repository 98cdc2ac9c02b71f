#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqcoh/repring.hpp"

namespace eqcoh {

// A class in the integral theory at a single grading. The group at the
// grading is Z when |grading| = 0, Z/m(grading) when nonzero even or
// negative odd, and 0 otherwise; value is the canonical representative
// in [0, m) for finite groups and an arbitrary integer for Z.
// The positive part embeds in Z (|grading| = 0) or Z/n (|grading| > 0 even)
// with the inclusion given by multiplication by n/m(grading); we call that
// coordinate the ambient coordinate of the class.
struct RingClass {
    VirtualRep grading;
    long value = 0;
};

// Thrown when a monomial's ambient coordinate is not divisible by
// n/m(grading), i.e. the expression denotes an element of the ambient
// localization that does not lie in the cohomology subring. Reachable
// with negative u-exponents, e.g. a(1) u(5)^-1 for n = 15.
struct NotInSubring : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Product of generator classes u_{xi^d}^{e_d} and a_{xi^d}^{f_d}.
// u_{xi^d} sits in grading xi^d - 2 and a_{xi^d} in grading xi^d.
struct Monomial {
    long n = 1;
    std::map<long, long> u_exponents;  // d -> e_d, any sign, d | n, d < n
    std::map<long, long> a_exponents;  // d -> f_d >= 0

    VirtualRep grading() const;
    long a_degree() const;  // sum of the f_d
    Monomial operator*(const Monomial& o) const;
    std::string str() const;  // e.g. "u(3)^2 a(1) u(5)^-1"
};

// Evaluate a monomial: ambient coordinate prod_d d^{f_d} (an integer when
// the a-degree is 0, an element of Z/n otherwise), divided back by
// n/m(grading). Throws NotInSubring when that division is impossible.
RingClass class_of_monomial(const Monomial& m);

// Graded product. Both gradings nonnegative even: ambient product.
// One nonnegative even (beta), one negative odd (alpha): module action
//   w = x * y * (n/m(beta)) mod m(alpha+beta)
// when |alpha+beta| < 0 odd, and 0 otherwise. All other sign/parity
// combinations land in a vanishing group.
RingClass multiply(const RingClass& x, const RingClass& y);

// k * x in the group at x's grading.
RingClass scale(const RingClass& x, long k);

// Additive order of the monomial's class: gcd over a-factors delta with
// f_delta > 0 of n/delta. Requires a-degree >= 1 and u-exponents >= 0.
long monomial_order(const Monomial& m);

// Exhaustive check of the relations (n/d) a_{xi^d} = 0 and
// (d/g) a_{xi^s} u_{xi^d} = (s/g) u_{xi^s} a_{xi^d} (g = gcd(d, s)) over all
// proper divisors, plus random checks that class_of_monomial is
// multiplicative on a- and u-parts separately.
struct RelationsReport {
    bool ok = true;
    long checks = 0;
    std::vector<std::string> violations;
};
RelationsReport relations_suite(long n, unsigned seed = 12345);

// Parser for the CLI monomial syntax: "u(3)^2 a(1) u(5)^-1".
Monomial parse_monomial(long n, const std::string& expr);

}  // namespace eqcoh
