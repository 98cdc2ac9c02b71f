#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqcoh/report.hpp"

#include <cstdio>
#include <fstream>

#include "eqcoh/acoeff.hpp"
#include "eqcoh/zcoeff.hpp"

using namespace eqcoh;
using nlohmann::json;

TEST_CASE("coefficient tables round-trip through json") {
    GroupSpec g(15);
    for (MackeyAtom atom : {atom_const_z(g.primes.size()), atom_burnside(g.primes.size())}) {
        MackeyTable t = concretize(atom, g);
        MackeyTable back = table_from_json(table_to_json(t));
        CHECK(back.spec.n == t.spec.n);
        CHECK(back.levels == t.levels);
        CHECK(back.res.size() == t.res.size());
        for (auto& [key, mat] : t.res) CHECK(back.res.at(key).data == mat.data);
        for (auto& [key, mat] : t.tr) CHECK(back.tr.at(key).data == mat.data);
    }
    CHECK_THROWS_AS(table_from_json(json{{"kind", "something"}}), std::invalid_argument);
}

TEST_CASE("reports parse back to themselves") {
    std::vector<json> reports = {
            cohomology_report(15, "Z", {"xi^1 + xi^3 - 2", "0"}, true),
            cohomology_report(15, "A", {"xi^1"}, false),
            cohomology_report(15, "split:3", {"xi^3 - 2"}, false),
            ring_mul_report(15, "a(1)", "a(1)"),
            oracle_report(15, 1, "Z", 25, 42),
            freeness_cp_report(15, 4),
            freeness_grassmann_report(15, 4, 2),
    };
    for (const json& r : reports) {
        CHECK(json::parse(r.dump()) == r);
        CHECK(json::parse(r.dump(2)) == r);
        CHECK(r.at("schema").get<int>() == 1);
        CHECK_FALSE(render_text(r).empty());
    }
}

TEST_CASE("flagship outputs") {
    json r = cohomology_report(15, "Z", {"xi^1 + xi^3 - 2"}, false);
    const json& e = r.at("entries").at(0);
    CHECK(e.at("group") == "Z/15");
    CHECK(e.at("mackey") == "K[3]<Z/3> (+) K[5]<Z/5>");

    json a = cohomology_report(15, "A", {"xi^1"}, false);
    CHECK(a.at("entries").at(0).at("group") == "Z^3");
    CHECK(a.at("entries").at(0).at("rep_dependent") == true);

    json m = ring_mul_report(15, "a(1)", "a(1)");
    CHECK(m.at("grading") == "2*xi^1");
    CHECK(m.at("group") == "Z/15");
    CHECK(m.at("value") == 1);

    // gold relation: 3 * (u(3) a(1)) = 1 * (u(1) a(3)) in grading xi+xi^3-2
    json lhs = ring_mul_report(15, "u(3)", "a(1)", 3);
    json rhs = ring_mul_report(15, "u(1)", "a(3)", 1);
    CHECK(lhs.at("grading") == rhs.at("grading"));
    CHECK(lhs.at("value") == rhs.at("value"));

    // product landing in an odd positive grading vanishes
    json v = ring_mul_report(15, "class(3 - xi^1 - xi^3, 2)", "a(1) a(3)");
    CHECK(v.at("vanishes") == true);
    CHECK(render_text(v).find("0 (group vanishes)") != std::string::npos);

    // a negative-part class times a positive class in the module action
    RingClass neg = parse_ring_class(15, "class(3 - xi^1 - xi^3, 2)");
    CHECK(cohomology_Z(neg.grading).group.str() == "Z/5");
    CHECK(neg.value == 2);

    // not every ambient expression lies in the subring
    CHECK_THROWS_AS(ring_mul_report(15, "a(1) u(5)^-1", "a(1)"), NotInSubring);
}

TEST_CASE("oracle report is seeded and clean") {
    json r1 = oracle_report(15, 2, "Z", 40, 7);
    json r2 = oracle_report(15, 2, "Z", 40, 7);
    CHECK(r1.dump() == r2.dump());
    CHECK(r1.at("comparisons").get<long>() == 384 + 40);
    CHECK(r1.at("mismatches").get<long>() == 0);
    CHECK(report_exit_code(r1) == 0);

    json a = oracle_report(21, 2, "A", 0, 7);
    CHECK(a.at("mismatches").get<long>() == 0);
}

TEST_CASE("exit codes reflect verification state") {
    json ok = freeness_cp_report(15, 6);
    CHECK(report_exit_code(ok) == 0);
    json fail = ok;
    fail["even_type"] = false;
    CHECK(report_exit_code(fail) == 2);
    json mm = oracle_report(15, 1, "Z", 0, 1);
    mm["mismatches"] = 3;
    CHECK(report_exit_code(mm) == 2);
}

TEST_CASE("custom coefficient tables drive the cellular engine") {
    GroupSpec g(15);
    MackeyTable t = concretize(atom_const_z(g.primes.size()), g);
    std::string path = "custom_table_test.json";
    {
        std::ofstream out(path);
        out << table_to_json(t).dump();
    }
    json r = cohomology_report(15, path, {"2 - xi^1"}, false);
    const json& e = r.at("entries").at(0);
    // matches the constant-Z engine at every level since the table is <Z>
    GroupSpec g15(15);
    for (long m : g15.divisors) {
        VirtualRep a = restrict_to_subgroup(parse_grading(15, "2 - xi^1"), m);
        CHECK(e.at("group_by_level").at(std::to_string(m)) == cohomology_Z(a).group.str());
    }
    CHECK_THROWS_AS(cohomology_report(15, path, {"xi^3 - xi^1"}, false), std::invalid_argument);
    std::remove(path.c_str());
}
