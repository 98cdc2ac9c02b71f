#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "eqcoh/mackey.hpp"
#include "eqcoh/ringz.hpp"

namespace eqcoh {

// Serialization of coefficient tables, used for the custom-coefficient file
// format of the command line tool. Matrix entries travel as decimal strings
// so arbitrary-precision values survive the round trip.
nlohmann::json table_to_json(const MackeyTable& t);
MackeyTable table_from_json(const nlohmann::json& j);
MackeyTable load_table(const std::string& path);

// Every report is a json object with "schema" and "kind" fields; render_text
// turns any of them into the aligned human-readable form. parse(dump())
// reproduces the object exactly.

// coeff: "Z", "A", "split:p,q,..." (Burnside factors at the listed primes),
// or a path to a coefficient table file. With `oracle`, sphere-reachable
// gradings are recomputed through the cellular chain complex and the entry
// carries a match/mismatch verdict.
nlohmann::json cohomology_report(long n, const std::string& coeff,
                                 const std::vector<std::string>& alphas, bool oracle);

// Ring operands are either monomials ("u(3)^2 a(1)") or explicit classes at
// an arbitrary grading: "class(3 - xi^1 - xi^3, 2)" is the element 2 of the
// group at that grading (reduced into the canonical representative).
RingClass parse_ring_class(long n, const std::string& expr);

nlohmann::json ring_mul_report(long n, const std::string& lhs, const std::string& rhs,
                               long scale_by = 1);

// Deterministic sweep comparing the cellular complex against the closed-form
// engine on every multiset of at most max_factors irreducibles, every level
// and both variances, plus `random_gradings` seeded structural spot checks.
nlohmann::json oracle_report(long n, int max_factors, const std::string& coeff,
                             long random_gradings, unsigned seed);

nlohmann::json freeness_cp_report(long n, long m);
nlohmann::json freeness_grassmann_report(long n, long l, long m);

std::string render_text(const nlohmann::json& report);

// 0 clean, 2 when the report records a verification failure
int report_exit_code(const nlohmann::json& report);

}  // namespace eqcoh
