#include <CLI11.hpp>
#include <iostream>

#include "eqcoh/report.hpp"

using nlohmann::json;

namespace {

int emit(const json& report, const std::string& format) {
    if (format == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << eqcoh::render_text(report);
    return eqcoh::report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RO(C_n)-graded Bredon cohomology calculator (n odd squarefree)"};
    app.require_subcommand(1);

    long n = 15;
    std::string coeff = "Z";
    std::string format = "table";
    unsigned seed = 12345;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "group order, odd and squarefree")->required();
        cmd->add_option("--format", format, "output format: table or json")
                ->check(CLI::IsMember({"table", "json"}));
        cmd->add_option("--seed", seed, "seed for randomized checks");
    };

    // cohomology
    std::vector<std::string> alphas;
    bool oracle_toggle = false;
    CLI::App* coh = app.add_subcommand("cohomology", "evaluate H^alpha(S^0) at gradings");
    add_common(coh);
    coh->add_option("--coeff", coeff,
                    "Z | A | split:p,q,... | path to a coefficient table file");
    coh->add_option("--alpha", alphas, "grading expression, e.g. \"xi^1 + xi^3 - 2\"")
            ->required();
    coh->add_flag("--oracle", oracle_toggle,
                  "cross-check sphere-reachable gradings against the cellular complex");

    // ring
    std::string lhs, rhs;
    long scale_by = 1;
    CLI::App* ring = app.add_subcommand("ring", "multiply classes in the positive-part ring");
    add_common(ring);
    CLI::App* mul = ring->add_subcommand("mul", "multiply two monomials");
    mul->add_option("lhs", lhs, "monomial, e.g. \"a(1)\" or \"u(3)^2 a(5)\"")->required();
    mul->add_option("rhs", rhs, "monomial")->required();
    mul->add_option("--scale", scale_by, "integer scalar applied to the product");
    mul->fallthrough();

    // oracle
    int max_factors = 2;
    long random_gradings = 0;
    CLI::App* orc = app.add_subcommand("oracle", "cellular vs closed-form sweep");
    add_common(orc);
    orc->add_option("--coeff", coeff, "Z or A");
    orc->add_option("--max-factors", max_factors, "largest multiset of irreducibles");
    orc->add_option("--random", random_gradings, "extra seeded structural spot checks");

    // freeness
    CLI::App* fr = app.add_subcommand("freeness", "even-type complexes and free bases");
    add_common(fr);
    long cp_m = 10, gr_l = 4, gr_m = 2;
    CLI::App* cp = fr->add_subcommand("cp", "projective space CP(U(m) + C)");
    cp->add_option("--m", cp_m, "number of nontrivial characters")->required();
    cp->fallthrough();
    CLI::App* gr = fr->add_subcommand("grassmann", "Grassmannian G(U(l), m)");
    gr->add_option("--l", gr_l)->required();
    gr->add_option("--m", gr_m)->required();
    gr->fallthrough();
    fr->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (coh->parsed()) return emit(eqcoh::cohomology_report(n, coeff, alphas, oracle_toggle), format);
        if (ring->parsed()) {
            if (!mul->parsed()) {
                std::cerr << "ring: expected the mul subcommand\n";
                return 1;
            }
            return emit(eqcoh::ring_mul_report(n, lhs, rhs, scale_by), format);
        }
        if (orc->parsed())
            return emit(eqcoh::oracle_report(n, max_factors, coeff, random_gradings, seed),
                        format);
        if (fr->parsed()) {
            if (cp->parsed()) return emit(eqcoh::freeness_cp_report(n, cp_m), format);
            return emit(eqcoh::freeness_grassmann_report(n, gr_l, gr_m), format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
