#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqcoh/cellular.hpp"

#include <algorithm>
#include <numeric>

#include "eqcoh/acoeff.hpp"
#include "eqcoh/zcoeff.hpp"

using namespace eqcoh;

namespace {

VirtualRep rep_of(long n, const std::vector<long>& exponents) {
    VirtualRep v;
    v.n = n;
    for (long r : exponents) {
        long d = std::gcd(r, n);
        if (d == n)
            v.trivial += 1;  // xi^n would be two trivial coordinates, not used below
        else
            v.twists[d] += 1;
    }
    return v;
}

VirtualRep grading_of(long n, const std::vector<long>& exponents, long k, Variance var) {
    VirtualRep v = rep_of(n, exponents);
    VirtualRep kk = rep_from_raw(n, k, {});
    return var == Variance::Homology ? v - kk : kk - v;
}

// every proper-divisor multiset of size <= 2, the oracle sweep grid
std::vector<std::vector<long>> pairs_grid(const GroupSpec& g) {
    std::vector<std::vector<long>> out;
    for (size_t i = 0; i < g.divisors.size(); ++i) {
        long a = g.divisors[i];
        if (a == g.n) continue;
        out.push_back({a});
        for (size_t j = i; j < g.divisors.size(); ++j) {
            long b = g.divisors[j];
            if (b == g.n) continue;
            out.push_back({a, b});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("circle complex of a single factor") {
    GroupSpec g(15);
    EquivChainComplex c = sphere_complex(g, {3});
    REQUIRE(c.cells.size() == 3);
    CHECK(c.cells[0] == std::vector<long>{15});
    CHECK(c.cells[1] == std::vector<long>{3});
    CHECK(c.cells[2] == std::vector<long>{3});
    CHECK(c.formal_square_zero());

    // top boundary is rho^t - 1 with t the inverse of r/d mod n/d; here
    // r = 3, d = 3, so t = 1
    GroupRingElt top = c.boundary[2].at({0, 0});
    CHECK(top == GroupRingElt{{0, 1}, {1, -1}});

    CHECK_THROWS_AS(sphere_complex(g, {0}), std::invalid_argument);
    CHECK_THROWS_AS(sphere_complex(g, {15}), std::invalid_argument);
}

TEST_CASE("orbit cell counts of the join S(xi + xi^3), n = 15") {
    GroupSpec g(15);
    EquivChainComplex c = sphere_complex(g, {1, 3});
    REQUIRE(c.cells.size() == 5);
    auto count = [&](long q, long d) {
        return std::count(c.cells[q + 1].begin(), c.cells[q + 1].end(), d);
    };
    // degree -1: the augmentation cell
    CHECK(c.cells[0] == std::vector<long>{15});
    // degree 0: one G/C_3 (from S(xi^3), the C_3-fixed circle) and one free orbit
    CHECK(count(0, 3) == 1);
    CHECK(count(0, 1) == 1);
    CHECK(c.cells[1].size() == 2);
    // degree 1: one G/C_3 and six free orbits
    CHECK(count(1, 3) == 1);
    CHECK(count(1, 1) == 6);
    // degrees 2 and 3: all free, 10 and 5 orbits
    CHECK(c.cells[3] == std::vector<long>(10, 1));
    CHECK(c.cells[4] == std::vector<long>(5, 1));
    CHECK(c.formal_square_zero());
}

TEST_CASE("formal d^2 = 0 survives joins and reduction") {
    for (long n : {15L, 105L}) {
        GroupSpec g(n);
        for (auto V : std::vector<std::vector<long>>{{1}, {1, 3}, {3, 5}, {1, 3, 5}}) {
            EquivChainComplex c = sphere_complex(g, V);
            CHECK(c.formal_square_zero());
            EquivChainComplex r = morse_reduce(c);
            CHECK(r.formal_square_zero());
            CHECK(r.cells.size() <= c.cells.size());
        }
    }
}

TEST_CASE("evaluation at the free level is nonequivariant homology") {
    GroupSpec g(15);
    MackeyTable Z = concretize(atom_const_z(g.primes.size()), g);
    MackeyTable A = concretize(atom_burnside(g.primes.size()), g);
    // S^V smashed with G/e+ is a wedge of n spheres of dimension |V|, but
    // after quotienting by the free action only one Z (or one Burnside value
    // of the trivial group) survives in the orbit complex
    for (auto V : std::vector<std::vector<long>>{{1}, {1, 3}}) {
        long dim = 2 * static_cast<long>(V.size());
        for (const MackeyTable* coeff : {&Z, &A}) {
            for (long k = 0; k <= dim + 1; ++k) {
                FgAbelianGroup h = bredon_homology(g, V, k, *coeff, 1);
                if (k == dim)
                    CHECK(h.str() == "Z");
                else
                    CHECK(h.is_trivial());
            }
        }
    }
}

TEST_CASE("empty product: degree 0 of S^0 is the coefficient value") {
    GroupSpec g(15);
    MackeyTable A = concretize(atom_burnside(g.primes.size()), g);
    for (long m : g.divisors) {
        CHECK(iso_check(bredon_homology(g, {}, 0, A, m), A.value(m)));
        CHECK(bredon_homology(g, {}, 1, A, m).is_trivial());
        CHECK(iso_check(bredon_cohomology(g, {}, 0, A, m), A.value(m)));
    }
}

TEST_CASE("frozen values for S^(xi + xi^3), n = 15, constant Z") {
    GroupSpec g(15);
    MackeyTable Z = concretize(atom_const_z(g.primes.size()), g);
    CHECK(bredon_homology(g, {1, 3}, 4, Z, 15).str() == "Z");
    CHECK(bredon_homology(g, {1, 3}, 2, Z, 15).str() == "Z/15");
    CHECK(bredon_homology(g, {1, 3}, 0, Z, 15).str() == "Z/5");
    CHECK(bredon_homology(g, {1, 3}, 1, Z, 15).is_trivial());
    CHECK(bredon_homology(g, {1, 3}, 3, Z, 15).is_trivial());
    // level G/C_3 only sees the xi^3 coordinate of the 3-divisible part
    CHECK(bredon_homology(g, {1, 3}, 2, Z, 3).str() == "Z/3");
    CHECK(bredon_cohomology(g, {1, 3}, 4, Z, 15).str() == "Z");
    CHECK(bredon_cohomology(g, {1, 3}, 3, Z, 15).str() == "Z/5");
}

TEST_CASE("oracle agrees with the closed-form engine, both variances") {
    for (long n : {15L, 21L}) {
        GroupSpec g(n);
        MackeyTable Z = concretize(atom_const_z(g.primes.size()), g);
        for (const auto& V : pairs_grid(g)) {
            EquivChainComplex c = morse_reduce(sphere_complex(g, V));
            long dim = 2 * static_cast<long>(V.size());
            for (long m : g.divisors) {
                for (Variance var : {Variance::Homology, Variance::Cohomology}) {
                    EvaluatedComplex ec = evaluate(c, Z, m, var);
                    std::vector<FgAbelianGroup> hs = evaluated_homology_all(ec);
                    for (long k = 0; k <= dim + 1; ++k) {
                        VirtualRep alpha =
                                restrict_to_subgroup(grading_of(n, V, k, var), m);
                        FgAbelianGroup got = (k < static_cast<long>(hs.size()))
                                                     ? hs[k]
                                                     : FgAbelianGroup{};
                        CHECK(iso_check(got, cohomology_Z(alpha).group));
                    }
                }
            }
        }
    }
}

TEST_CASE("oracle agrees with the Burnside engine at every level") {
    long n = 15;
    GroupSpec g(n);
    MackeyTable A = concretize(atom_burnside(g.primes.size()), g);
    for (const auto& V : pairs_grid(g)) {
        EquivChainComplex c = morse_reduce(sphere_complex(g, V));
        long dim = 2 * static_cast<long>(V.size());
        for (long m : g.divisors) {
            GroupSpec gm(m);
            CoeffSystem full = CoeffSystem::full(gm);
            EvaluatedComplex ec = evaluate(c, A, m, Variance::Cohomology);
            std::vector<FgAbelianGroup> hs = evaluated_homology_all(ec);
            for (long k = 0; k <= dim + 1; ++k) {
                VirtualRep alpha = restrict_to_subgroup(
                        grading_of(n, V, k, Variance::Cohomology), m);
                FgAbelianGroup got =
                        (k < static_cast<long>(hs.size())) ? hs[k] : FgAbelianGroup{};
                CHECK(iso_check(got, cohomology_A_group(alpha, full)));
            }
        }
    }
}

TEST_CASE("the sphere only depends on the kernel of the character") {
    GroupSpec g(15);
    MackeyTable Z = concretize(atom_const_z(g.primes.size()), g);
    MackeyTable A = concretize(atom_burnside(g.primes.size()), g);
    for (auto [r, d] : std::vector<std::pair<long, long>>{{2, 1}, {6, 3}, {10, 5}}) {
        for (long m : g.divisors)
            for (long k = 0; k <= 3; ++k)
                for (const MackeyTable* coeff : {&Z, &A}) {
                    CHECK(iso_check(bredon_homology(g, {r}, k, *coeff, m),
                                    bredon_homology(g, {d}, k, *coeff, m)));
                    CHECK(iso_check(bredon_homology(g, {r, 3}, k, *coeff, m),
                                    bredon_homology(g, {d, 3}, k, *coeff, m)));
                }
    }
}

TEST_CASE("reduction preserves every evaluation") {
    GroupSpec g(15);
    MackeyTable Z = concretize(atom_const_z(g.primes.size()), g);
    MackeyTable A = concretize(atom_burnside(g.primes.size()), g);
    for (auto V : std::vector<std::vector<long>>{{1, 3}, {3, 5}, {5, 5}}) {
        EquivChainComplex c = sphere_complex(g, V);
        EquivChainComplex r = morse_reduce(c);
        for (long m : g.divisors)
            for (Variance var : {Variance::Homology, Variance::Cohomology})
                for (const MackeyTable* coeff : {&Z, &A}) {
                    auto h0 = evaluated_homology_all(evaluate(c, *coeff, m, var));
                    auto h1 = evaluated_homology_all(evaluate(r, *coeff, m, var));
                    h0.resize(6);
                    h1.resize(6);
                    for (int k = 0; k < 6; ++k) CHECK(iso_check(h0[k], h1[k]));
                }
    }
}

TEST_CASE("Euler characteristic of each evaluated level matches homology") {
    GroupSpec g(21);
    MackeyTable A = concretize(atom_burnside(g.primes.size()), g);
    EquivChainComplex c = sphere_complex(g, {1, 7});
    for (long m : g.divisors) {
        EvaluatedComplex ec = evaluate(c, A, m, Variance::Homology);
        // index i holds the chains computing degree-i homology
        long chain = 0, sign = 1;
        for (const BasedGroup& b : ec.groups) {
            chain += sign * static_cast<long>(b.ngens());
            sign = -sign;
        }
        long homol = 0;
        sign = 1;
        std::vector<FgAbelianGroup> hs = evaluated_homology_all(ec);
        for (const FgAbelianGroup& h : hs) {
            homol += sign * h.free_rank;
            sign = -sign;
        }
        CHECK(chain == homol);
    }
}

TEST_CASE("assembled Mackey functor matches the closed-form expression") {
    GroupSpec g(15);
    MackeyTable Z = concretize(atom_const_z(g.primes.size()), g);
    MackeyTable t = mackey_assemble(g, {1, 3}, 2, Z, Variance::Homology);
    MackeyExpr expect{{atom_K_bracket(g, 0), atom_K_bracket(g, 1)}};
    CHECK(tables_levelwise_iso(t, concretize(expect, g)));
    CHECK(t.value(15).str() == "Z/15");
    CHECK(t.value(3).str() == "Z/3");
    CHECK(t.value(5).str() == "Z/5");
    CHECK(t.value(1).is_trivial());
    CHECK(check_axioms(t, true).ok());

    MackeyTable top = mackey_assemble(g, {1, 3}, 4, Z, Variance::Homology);
    CHECK(tables_levelwise_iso(top, concretize(atom_const_z(g.primes.size()), g)));

    MackeyTable beyond = mackey_assemble(g, {1, 3}, 9, Z, Variance::Homology);
    for (long d : g.divisors) CHECK(beyond.value(d).is_trivial());
}

TEST_CASE("assembled functors satisfy the double coset formula") {
    GroupSpec g(105);
    MackeyTable A = concretize(atom_burnside(g.primes.size()), g);
    for (long k : {0L, 1L, 2L}) {
        MackeyTable t = mackey_assemble(g, {1, 3}, k, A, Variance::Cohomology);
        CHECK(check_axioms(t).ok());
    }
}

TEST_CASE("boundary sphere splitting against the smash complex") {
    GroupSpec g(15);
    MackeyTable Z = concretize(atom_const_z(g.primes.size()), g);
    for (long d : {3L, 5L}) {
        for (auto W : std::vector<std::vector<long>>{{}, {1}, {3}, {1, 3}, {3, 5}}) {
            EquivChainComplex sm = morse_reduce(sphere_boundary_smash(g, W, d));
            for (long k = 0; k <= 2 * static_cast<long>(W.size()) + 1; ++k) {
                VirtualRep alpha = grading_of(15, W, k, Variance::Cohomology);
                SpherePair pr = sphere_boundary_splitting(alpha, d, CoeffKind::Z);
                MackeyTable lhs = assemble_complex(g, sm, k, Z, Variance::Cohomology);
                CHECK(tables_levelwise_iso(lhs, concretize(expr_sum(pr.c_part, pr.k_part), g)));
            }
        }
    }
}

TEST_CASE("coefficients with a genuine Weyl action are rejected") {
    GroupSpec g(3);
    MackeyTable t = concretize(atom_const_z(g.primes.size()), g);
    IntMat flip = IntMat::identity(1);
    flip.at(0, 0) = -1;
    t.conj[1] = flip;
    EquivChainComplex c = sphere_complex(g, {1});
    CHECK_THROWS_AS(evaluate(c, t, 3, Variance::Homology), ConjugationNontrivial);
}
