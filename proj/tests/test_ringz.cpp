#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "eqcoh/ringz.hpp"
#include "eqcoh/zcoeff.hpp"

using namespace eqcoh;

namespace {

Monomial mono(long n, std::map<long, long> u, std::map<long, long> a) {
    return Monomial{n, std::move(u), std::move(a)};
}

long order_in(long v, long m) { return m / std::gcd(((v % m) + m) % m, m); }

// random virtual rep over C_n with total dimension in [-10, 10]
VirtualRep random_grading(long n, std::mt19937& rng) {
    GroupSpec spec(n);
    std::uniform_int_distribution<long> coeff(-2, 2);
    std::map<long, long> tw;
    for (long d : spec.divisors)
        if (d < n) tw[d] = coeff(rng);
    VirtualRep base = rep_from_raw(n, 0, tw);
    std::uniform_int_distribution<long> dim(-5, 5);
    long target = 2 * dim(rng) + (rng() % 2);
    VirtualRep r = base;
    r.trivial = target - 2 * [&] {
        long s = 0;
        for (auto [d, c] : base.twists) s += c;
        return s;
    }();
    return r;
}

RingClass random_class(const VirtualRep& g, std::mt19937& rng) {
    long dim = g.virtual_dim();
    if (dim == 0) return {g, (long)(rng() % 11) - 5};
    bool finite = (dim > 0 && dim % 2 == 0) || (dim < 0 && dim % 2 != 0);
    if (!finite) return {g, 0};
    long m = m_alpha(g);
    return {g, (long)(rng() % m)};
}

}  // namespace

TEST_CASE("generator classes at n = 15") {
    long n = 15;
    RingClass a3 = class_of_monomial(mono(n, {}, {{3, 1}}));
    CHECK(cohomology_Z(a3.grading).group.str() == "Z/5");
    CHECK(a3.value == 1);
    CHECK(order_in(a3.value, m_alpha(a3.grading)) == 5);
    CHECK(monomial_order(mono(n, {}, {{3, 1}})) == 5);

    for (long d : {1L, 3L, 5L}) {
        RingClass u = class_of_monomial(mono(n, {{d, 1}}, {}));
        CHECK(u.grading.virtual_dim() == 0);
        CHECK(u.value == 1);
        CHECK(cohomology_Z(u.grading).group.str() == "Z");
    }
}

TEST_CASE("gold relation in grading xi + xi^3 - 2") {
    long n = 15;
    RingClass au = class_of_monomial(mono(n, {{3, 1}}, {{1, 1}}));  // a(1) u(3)
    RingClass ua = class_of_monomial(mono(n, {{1, 1}}, {{3, 1}}));  // u(1) a(3)
    CHECK(cohomology_Z(au.grading).group.str() == "Z/15");
    CHECK(au.value == 1);
    CHECK(ua.value == 3);
    RingClass lhs = scale(au, 3);
    CHECK(lhs.grading == ua.grading);
    CHECK(lhs.value == ua.value);
}

TEST_CASE("products of Euler classes") {
    long n = 15;
    RingClass a1 = class_of_monomial(mono(n, {}, {{1, 1}}));
    RingClass sq = multiply(a1, a1);
    CHECK(sq.grading.str() == "2*xi^1");
    CHECK(cohomology_Z(sq.grading).group.str() == "Z/15");
    CHECK(sq.value == 1);

    // (n/d) a(d) = 0
    for (long d : {1L, 3L, 5L}) {
        RingClass a = class_of_monomial(mono(n, {}, {{d, 1}}));
        CHECK(scale(a, n / d).value == 0);
    }

    // a(1) a(3): order gcd(15, 5) = 5
    Monomial m13 = mono(n, {}, {{1, 1}, {3, 1}});
    RingClass c13 = class_of_monomial(m13);
    CHECK(order_in(c13.value, m_alpha(c13.grading)) == 5);
    CHECK(monomial_order(m13) == 5);
}

TEST_CASE("subgroup join in grading xi^3 + xi^5 - 2") {
    long n = 15;
    Monomial m1 = mono(n, {{5, 1}}, {{3, 1}});  // a(3) u(5)
    Monomial m2 = mono(n, {{3, 1}}, {{5, 1}});  // u(3) a(5)
    CHECK(monomial_order(m1) == 5);
    CHECK(monomial_order(m2) == 3);
    RingClass c1 = class_of_monomial(m1);
    RingClass c2 = class_of_monomial(m2);
    CHECK(c1.grading == c2.grading);
    long m = m_alpha(c1.grading);
    CHECK(m == 15);
    CHECK(std::gcd(std::gcd(c1.value, c2.value), m) == 1);  // together generate Z/15
}

TEST_CASE("expressions outside the subring are rejected") {
    long n = 15;
    CHECK_THROWS_AS(class_of_monomial(mono(n, {{5, -1}}, {{1, 1}})), NotInSubring);
    CHECK_THROWS_AS(class_of_monomial(mono(n, {{3, -1}}, {{1, 1}})), NotInSubring);
    CHECK_THROWS_AS(class_of_monomial(mono(n, {{3, -1}}, {})), NotInSubring);
    // a(1) a(3) u(5)^-1 has ambient coordinate 3 with index 3: fine
    RingClass ok = class_of_monomial(mono(n, {{5, -1}}, {{1, 1}, {3, 1}}));
    CHECK(ok.value == 1);
}

TEST_CASE("module action of u(1) on the negative part is the identity") {
    long n = 15;
    VirtualRep beta = class_of_monomial(mono(n, {{1, 1}}, {})).grading;  // xi - 2
    VirtualRep alpha = parse_grading(n, "3*xi^3 - 5*xi^1 - 1");
    CHECK(cohomology_Z(alpha).group.str() == "Z/3");
    VirtualRep target = alpha + beta;
    CHECK(cohomology_Z(target).group.str() == "Z/3");
    for (long y : {0L, 1L, 2L}) {
        RingClass w = multiply(RingClass{beta, 1}, RingClass{alpha, y});
        CHECK(w.grading == target);
        CHECK(w.value == y);
    }
}

TEST_CASE("products of two negative-part classes vanish") {
    long n = 15;
    std::mt19937 rng(7);
    int seen = 0;
    while (seen < 50) {
        VirtualRep a = random_grading(n, rng);
        VirtualRep b = random_grading(n, rng);
        long da = a.virtual_dim(), db = b.virtual_dim();
        if (!(da < 0 && da % 2 != 0 && db < 0 && db % 2 != 0)) continue;
        ++seen;
        RingClass p = multiply(random_class(a, rng), random_class(b, rng));
        CHECK(p.value == 0);
    }
}

TEST_CASE("relation suites pass for n = 15, 21, 105") {
    for (long n : {15L, 21L, 105L}) {
        RelationsReport rep = relations_suite(n);
        CHECK(rep.ok);
        CHECK(rep.violations.empty());
        CHECK(rep.checks > 0);
    }
}

TEST_CASE("commutativity and associativity on random triples") {
    for (long n : {15L, 105L}) {
        std::mt19937 rng(2024);
        for (int iter = 0; iter < 1000; ++iter) {
            RingClass x = random_class(random_grading(n, rng), rng);
            RingClass y = random_class(random_grading(n, rng), rng);
            RingClass z = random_class(random_grading(n, rng), rng);
            RingClass xy = multiply(x, y);
            RingClass yx = multiply(y, x);
            CHECK(xy.value == yx.value);
            RingClass l = multiply(xy, z);
            RingClass r = multiply(x, multiply(y, z));
            CHECK(l.grading == r.grading);
            CHECK(l.value == r.value);
        }
    }
}

TEST_CASE("class_of_monomial is multiplicative") {
    for (long n : {15L, 21L}) {
        GroupSpec spec(n);
        std::vector<long> proper;
        for (long d : spec.divisors)
            if (d < n) proper.push_back(d);
        std::mt19937 rng(99);
        for (int iter = 0; iter < 300; ++iter) {
            Monomial m1{n, {}, {}}, m2{n, {}, {}};
            for (long d : proper) {
                if (long e = (long)(rng() % 3)) m1.u_exponents[d] = e;
                if (long f = (long)(rng() % 3)) m1.a_exponents[d] = f;
                if (long e = (long)(rng() % 3)) m2.u_exponents[d] = e;
                if (long f = (long)(rng() % 3)) m2.a_exponents[d] = f;
            }
            RingClass sep = multiply(class_of_monomial(m1), class_of_monomial(m2));
            RingClass joint = class_of_monomial(m1 * m2);
            CHECK(sep.grading == joint.grading);
            CHECK(sep.value == joint.value);
        }
    }
}

TEST_CASE("monomial classes generate the full group at each even grading") {
    for (long n : {15L, 21L}) {
        GroupSpec spec(n);
        std::vector<long> proper;
        for (long d : spec.divisors)
            if (d < n) proper.push_back(d);
        // exponent vectors (e_1.., f_1..) with total degree <= 8
        size_t slots = 2 * proper.size();
        std::map<std::string, long> gcds;  // grading label -> gcd of values and m
        std::vector<long> exps(slots, 0);
        long total_checked = 0;
        std::function<void(size_t, long)> walk = [&](size_t pos, long budget) {
            if (pos == slots) {
                Monomial mo{n, {}, {}};
                for (size_t i = 0; i < proper.size(); ++i) {
                    if (exps[i]) mo.u_exponents[proper[i]] = exps[i];
                    if (exps[proper.size() + i]) mo.a_exponents[proper[i]] = exps[proper.size() + i];
                }
                VirtualRep g = mo.grading();
                if (g.virtual_dim() <= 0) return;
                RingClass c = class_of_monomial(mo);
                long m = m_alpha(g);
                auto it = gcds.find(g.str());
                long cur = (it == gcds.end()) ? m : it->second;
                gcds[g.str()] = std::gcd(cur, std::gcd(c.value, m));
                return;
            }
            for (long e = 0; e <= budget; ++e) {
                exps[pos] = e;
                walk(pos + 1, budget - e);
            }
            exps[pos] = 0;
        };
        walk(0, 8);
        for (auto& [g, gc] : gcds) {
            ++total_checked;
            CHECK(gc == 1);  // generated subgroup is all of Z/m
        }
        CHECK(total_checked > 50);
    }
}

TEST_CASE("negative-part order duality and action well-definedness") {
    long n = 15;
    std::mt19937 rng(5150);
    int seen = 0;
    while (seen < 200) {
        VirtualRep a = random_grading(n, rng);
        long d = a.virtual_dim();
        if (!(d < 0 && d % 2 != 0)) continue;
        ++seen;
        VirtualRep partner = duality_partner(a);
        CHECK(cohomology_Z(a).group.order() == cohomology_Z(partner).group.order());
        // annihilator of the generator matches the dual's exponent
        CHECK(m_alpha(a) == m_alpha(partner));
        // well-definedness of the module action against a random even grading
        VirtualRep b = random_grading(n, rng);
        long db = b.virtual_dim();
        if (db >= 0 && db % 2 == 0) {
            long target = (a + b).virtual_dim();
            if (target < 0)
                CHECK((m_alpha(a) * (n / m_alpha(b))) % m_alpha(a + b) == 0);
        }
    }
}

TEST_CASE("monomial parser") {
    long n = 15;
    Monomial mo = parse_monomial(n, "u(3)^2 a(1) u(5)^-1");
    CHECK(mo.u_exponents == std::map<long, long>{{3, 2}, {5, -1}});
    CHECK(mo.a_exponents == std::map<long, long>{{1, 1}});
    CHECK(parse_monomial(n, mo.str()).u_exponents == mo.u_exponents);
    CHECK(parse_monomial(n, "a(3)*a(3)").a_exponents == std::map<long, long>{{3, 2}});
    CHECK(parse_monomial(n, "1").a_exponents.empty());
    CHECK_THROWS(parse_monomial(n, "a(2)"));     // not a divisor
    CHECK_THROWS(parse_monomial(n, "a(15)"));    // not proper
    CHECK_THROWS(parse_monomial(n, "a(3)^-1"));  // negative a-exponent
    CHECK_THROWS(parse_monomial(n, "b(3)"));
    CHECK_THROWS(parse_monomial(n, "u(3"));
}
