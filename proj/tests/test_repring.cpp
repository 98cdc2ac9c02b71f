#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqcoh/repring.hpp"

#include <random>

using namespace eqcoh;

TEST_CASE("group spec factors odd squarefree n") {
    GroupSpec g(105);
    CHECK(g.primes == std::vector<long>{3, 5, 7});
    CHECK(g.divisors == std::vector<long>{1, 3, 5, 7, 15, 21, 35, 105});
    CHECK(g.divisor_of_mask(0b101) == 21);
    CHECK(g.mask_of_divisor(35) == 0b110);
    CHECK_THROWS(GroupSpec(12));
    CHECK_THROWS(GroupSpec(9));
}

TEST_CASE("grading parser and printer") {
    VirtualRep a = parse_grading(15, "2*xi^3 - 2*xi^1 - 1");
    CHECK(a.trivial == -1);
    CHECK(a.twists.at(3) == 2);
    CHECK(a.twists.at(1) == -2);
    CHECK(a.virtual_dim() == -1);
    CHECK(parse_grading(15, a.str()) == a);

    // folding: xi^7 on C_15 has gcd(7,15) = 1, same as xi
    VirtualRep b = parse_grading(15, "xi^7 + xi^1");
    CHECK(b.twists.at(1) == 2);
    // xi^0 = complex trivial = 2 real dimensions
    CHECK(parse_grading(15, "xi^0").trivial == 2);
    CHECK(parse_grading(15, "xi^-2") == parse_grading(15, "xi^13"));
    CHECK(parse_grading(15, "0").is_zero());
    CHECK_THROWS(parse_grading(15, "xi^3 xi^5"));
    CHECK_THROWS(parse_grading(15, "2 +"));
}

TEST_CASE("fixed point dimensions of xi + xi^3 over C_15") {
    VirtualRep a = parse_grading(15, "xi^1 + xi^3");
    CHECK(fixed_dim(a, 1) == 4);
    CHECK(fixed_dim(a, 3) == 2);
    CHECK(fixed_dim(a, 5) == 0);
    CHECK(fixed_dim(a, 15) == 0);
    VirtualRep back = rep_from_fixed_dims(15, fixed_dims(a));
    CHECK(back == a);
}

TEST_CASE("m(alpha) for even and odd gradings") {
    // |alpha| > 0 even: product of primes with |alpha^{C_p}| <= 0
    VirtualRep a = parse_grading(15, "xi^3");  // dims 2,2,0,0
    CHECK(m_alpha(a) == 5);
    VirtualRep b = parse_grading(15, "xi^1 + xi^3 - 2");  // dims 2,0,-2,-2
    CHECK(m_alpha(b) == 15);
    // odd: product of primes with |alpha^{C_p}| > 1
    VirtualRep c = parse_grading(15, "xi^1 + xi^3 - 2*xi^5 + 1");  // dims 1,3,-3,-3
    CHECK(m_alpha(c) == 3);
}

TEST_CASE("classification of gradings") {
    CHECK(classify(parse_grading(15, "xi^1 + 1")) == GradingClass::NonZero);
    // xi alone has zero fixed dims at C_3, C_5 and C_15
    CHECK(classify(parse_grading(15, "xi^1")) == GradingClass::ManyZeros);
    // dims 2,0,0,-2: zeros at C_3 and C_5, both covered by nonzero neighbors
    CHECK(classify(parse_grading(15, "xi^3 + xi^5 - 2")) == GradingClass::MostlyNonZero);
    // zero at C_15 and at C_5 with C_15 above it also zero -> many zeros
    VirtualRep mz = rep_from_fixed_dims(15, {{1, 2}, {3, 2}, {5, 0}, {15, 0}});
    CHECK(classify(mz) == GradingClass::ManyZeros);
    CHECK(classify(parse_grading(15, "0")) == GradingClass::ManyZeros);
}

TEST_CASE("quotient by fixed points and restriction to subgroups") {
    VirtualRep a = parse_grading(15, "xi^3 + 2*xi^1 - 1");
    VirtualRep q = quotient_fixed(a, 3);  // xi^1 over C_5 minus a trivial
    CHECK(q.n == 5);
    CHECK(q.trivial == -1);
    CHECK(q.twists == std::map<long, long>{{1, 1}});
    // fixed dims of the quotient agree with upper fixed dims of a
    CHECK(fixed_dim(q, 1) == fixed_dim(a, 3));
    CHECK(fixed_dim(q, 5) == fixed_dim(a, 15));

    VirtualRep r = restrict_to_subgroup(a, 3);  // xi^3 restricts trivially to C_3
    CHECK(r.n == 3);
    CHECK(r.trivial == 1);  // -1 + 2 from xi^3|C_3
    CHECK(r.twists == std::map<long, long>{{1, 2}});
    for (long d : GroupSpec(3).divisors) CHECK(fixed_dim(r, d) == fixed_dim(a, d));
}

TEST_CASE("restriction preserves fixed dims on random gradings") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-3, 3);
    GroupSpec g(105);
    for (int t = 0; t < 200; ++t) {
        VirtualRep a;
        a.n = 105;
        a.trivial = coeff(rng);
        for (long d : g.divisors)
            if (d != 105 && coeff(rng) != 0) {
                long c = coeff(rng);
                if (c) a.twists[d] = c;
            }
        for (long m : {3L, 15L, 35L, 105L}) {
            VirtualRep r = restrict_to_subgroup(a, m);
            for (long d : GroupSpec(m).divisors) CHECK(fixed_dim(r, d) == fixed_dim(a, d));
        }
        CHECK(rep_from_fixed_dims(105, fixed_dims(a)) == a);
    }
}

TEST_CASE("zeta sets for the stripping rule") {
    GroupSpec g(15);
    // alpha = xi^3 + xi^5 - 2: dims 2,0,0,-2
    VirtualRep a = parse_grading(15, "xi^3 + xi^5 - 2");
    // mask {} -> dI = 1: zeros at C_3 (i=0) and C_5 (i=1)
    CHECK(zeta_set(g, a, 0b00) == std::set<int>{0, 1});
    // mask {3} -> dI = 3: check C_15: dim -2, nonzero
    CHECK(zeta_set(g, a, 0b01) == std::set<int>{});
}
