#include "eqcoh/report.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "eqcoh/acoeff.hpp"
#include "eqcoh/cellular.hpp"
#include "eqcoh/freeness.hpp"
#include "eqcoh/ringz.hpp"
#include "eqcoh/zcoeff.hpp"

using nlohmann::json;

namespace eqcoh {

namespace {

json mat_to_json(const IntMat& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", rows}};
}

IntMat mat_from_json(const json& j) {
    IntMat m(j.at("rows").get<long>(), j.at("cols").get<long>());
    const json& rows = j.at("data");
    for (long i = 0; i < m.rows; ++i)
        for (long c = 0; c < m.cols; ++c)
            m.at(i, c) = Int(rows.at(i).at(c).get<std::string>());
    return m;
}

json dims_to_json(const GroupSpec& g, const std::map<long, long>& dims) {
    json out = json::object();
    for (long d : g.divisors) out[std::to_string(d)] = dims.at(d);
    return out;
}

std::string dims_to_text(const GroupSpec& g, const std::map<long, long>& dims) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < g.divisors.size(); ++i)
        os << (i ? "," : "") << dims.at(g.divisors[i]);
    os << ")";
    return os.str();
}

const char* class_name(GradingClass c) {
    switch (c) {
        case GradingClass::NonZero: return "nonzero";
        case GradingClass::MostlyNonZero: return "mostly-nonzero";
        default: return "many-zeros";
    }
}

// exponent list of an actual representation (one entry per xi summand)
std::vector<long> exponent_list(const VirtualRep& v) {
    std::vector<long> out;
    for (auto& [d, c] : v.twists) out.insert(out.end(), c, d);
    return out;
}

// sphere-reachability: alpha = V - k (homology side, twists >= 0) or
// alpha = k - V (cohomology side, twists <= 0), with k >= 0 in both cases
enum class Reach { No, HomologySide, CohomologySide };

Reach reachability(const VirtualRep& a) {
    bool pos = true, neg = true;
    for (auto& [d, c] : a.twists) {
        pos = pos && c >= 0;
        neg = neg && c <= 0;
    }
    if (pos && a.trivial <= 0) return Reach::HomologySide;
    if (neg && a.trivial >= 0) return Reach::CohomologySide;
    return Reach::No;
}

CoeffSystem parse_split(const GroupSpec& g, const std::string& coeff) {
    CoeffSystem cs;
    std::stringstream ss(coeff.substr(6));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        long p = std::stol(tok);
        if (g.n % p != 0) throw std::invalid_argument("split prime " + tok + " does not divide n");
        cs.I.insert(p);
    }
    return cs;
}

FgAbelianGroup engine_group_at_level(const std::string& coeff, const VirtualRep& alpha, long m) {
    VirtualRep a = restrict_to_subgroup(alpha, m);
    if (coeff == "Z") return cohomology_Z(a).group;
    return cohomology_A_group(a, CoeffSystem::full(GroupSpec(m)));
}

}  // namespace

json table_to_json(const MackeyTable& t) {
    json levels = json::object();
    for (auto& [d, b] : t.levels) {
        json orders = json::array();
        for (const Int& o : b.orders) orders.push_back(o.get_str());
        levels[std::to_string(d)] = std::move(orders);
    }
    auto maps = [](const std::map<std::pair<long, long>, IntMat>& mm) {
        json out = json::array();
        for (auto& [key, mat] : mm)
            out.push_back(json{{"from", key.first}, {"to", key.second}, {"mat", mat_to_json(mat)}});
        return out;
    };
    json conj = json::array();
    for (auto& [d, mat] : t.conj)
        conj.push_back(json{{"level", d}, {"mat", mat_to_json(mat)}});
    return json{{"schema", 1},       {"kind", "mackey_table"}, {"n", t.spec.n},
                {"levels", levels},  {"res", maps(t.res)},     {"tr", maps(t.tr)},
                {"conj", conj}};
}

MackeyTable table_from_json(const json& j) {
    if (j.value("kind", "") != "mackey_table")
        throw std::invalid_argument("not a coefficient table document");
    MackeyTable t;
    t.spec = GroupSpec(j.at("n").get<long>());
    for (auto& [key, orders] : j.at("levels").items()) {
        BasedGroup b;
        for (const json& o : orders) b.orders.emplace_back(o.get<std::string>());
        t.levels[std::stol(key)] = std::move(b);
    }
    for (const json& e : j.at("res"))
        t.res[{e.at("from").get<long>(), e.at("to").get<long>()}] = mat_from_json(e.at("mat"));
    for (const json& e : j.at("tr"))
        t.tr[{e.at("from").get<long>(), e.at("to").get<long>()}] = mat_from_json(e.at("mat"));
    for (const json& e : j.at("conj"))
        t.conj[e.at("level").get<long>()] = mat_from_json(e.at("mat"));
    return t;
}

MackeyTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open coefficient table file: " + path);
    json j;
    in >> j;
    return table_from_json(j);
}

json cohomology_report(long n, const std::string& coeff, const std::vector<std::string>& alphas,
                       bool oracle) {
    GroupSpec g(n);
    bool is_z = coeff == "Z", is_a = coeff == "A";
    bool is_split = coeff.rfind("split:", 0) == 0;
    CoeffSystem cs = is_a ? CoeffSystem::full(g)
                          : (is_split ? parse_split(g, coeff) : CoeffSystem::const_z());
    MackeyTable custom;
    bool is_custom = !is_z && !is_a && !is_split;
    if (is_custom) {
        custom = load_table(coeff);
        if (custom.spec.n != n) throw std::invalid_argument("coefficient table is for a different n");
    }
    MackeyTable oracle_coeff;
    if (oracle && (is_z || is_a))
        oracle_coeff = concretize(is_z ? atom_const_z(g.primes.size())
                                       : atom_burnside(g.primes.size()),
                                  g);

    long mismatches = 0;
    json entries = json::array();
    for (const std::string& s : alphas) {
        VirtualRep a = parse_grading(n, s);
        json e{{"alpha", a.str()},
               {"fixed_dims", dims_to_json(g, fixed_dims(a))},
               {"class", class_name(classify(a))}};
        if (is_z) {
            CohomologyAnswer ans = cohomology_Z(a);
            e["group"] = ans.group.str();
            e["mackey"] = expr_str(g, ans.mackey);
        } else if (is_a || is_split) {
            ACohomologyAnswer ans = cohomology_A_mackey(a, cs);
            e["group"] = ans.group_at_top.str();
            if (ans.rep_dependent)
                e["mackey"] = "representation-dependent";
            else
                e["mackey"] = expr_str(g, ans.mackey);
            e["rep_dependent"] = ans.rep_dependent;
        } else {
            Reach r = reachability(a);
            if (r == Reach::No)
                throw std::invalid_argument(
                        "grading " + a.str() +
                        " is not sphere-reachable; custom coefficients need one-sided gradings");
            json per_level = json::object();
            for (long m : g.divisors) {
                FgAbelianGroup h =
                        r == Reach::HomologySide
                                ? bredon_homology(g, exponent_list(a), -a.trivial, custom, m)
                                : bredon_cohomology(g, exponent_list(-a), a.trivial, custom, m);
                per_level[std::to_string(m)] = h.str();
            }
            e["group_by_level"] = per_level;
            e["group"] = per_level[std::to_string(n)];
        }
        if (oracle && (is_z || is_a)) {
            Reach r = reachability(a);
            if (r == Reach::No) {
                e["oracle"] = "skipped";
            } else {
                bool ok = true;
                for (long m : g.divisors) {
                    FgAbelianGroup got =
                            r == Reach::HomologySide
                                    ? bredon_homology(g, exponent_list(a), -a.trivial,
                                                      oracle_coeff, m)
                                    : bredon_cohomology(g, exponent_list(-a), a.trivial,
                                                        oracle_coeff, m);
                    ok = ok && iso_check(got, engine_group_at_level(coeff, a, m));
                }
                e["oracle"] = ok ? "match" : "mismatch";
                if (!ok) ++mismatches;
            }
        }
        entries.push_back(std::move(e));
    }
    return json{{"schema", 1},        {"kind", "cohomology"}, {"n", n},
                {"coeff", coeff},     {"entries", entries},   {"mismatches", mismatches}};
}

RingClass parse_ring_class(long n, const std::string& expr) {
    size_t a = expr.find_first_not_of(" \t");
    if (a != std::string::npos && expr.compare(a, 6, "class(") == 0) {
        size_t close = expr.rfind(')');
        size_t comma = expr.rfind(',');
        if (close == std::string::npos || comma == std::string::npos || comma > close)
            throw std::invalid_argument("malformed class expression: " + expr);
        RingClass c;
        c.grading = parse_grading(n, expr.substr(a + 6, comma - a - 6));
        c.value = std::stol(expr.substr(comma + 1, close - comma - 1));
        long dim = fixed_dim(c.grading, 1);
        bool lives = dim == 0 || (dim > 0 && dim % 2 == 0) || (dim < 0 && dim % 2 != 0);
        if (!lives)
            c.value = 0;
        else if (dim != 0) {
            long m = m_alpha(c.grading);
            c.value = ((c.value % m) + m) % m;
        }
        return c;
    }
    return class_of_monomial(parse_monomial(n, expr));
}

json ring_mul_report(long n, const std::string& lhs, const std::string& rhs, long scale_by) {
    RingClass x = parse_ring_class(n, lhs);
    RingClass y = parse_ring_class(n, rhs);
    RingClass p = scale(multiply(x, y), scale_by);
    FgAbelianGroup grp = cohomology_Z(p.grading).group;
    return json{{"schema", 1},
                {"kind", "ring"},
                {"n", n},
                {"lhs", lhs},
                {"rhs", rhs},
                {"scale", scale_by},
                {"grading", p.grading.str()},
                {"group", grp.str()},
                {"value", p.value},
                {"vanishes", grp.is_trivial()}};
}

json oracle_report(long n, int max_factors, const std::string& coeff, long random_gradings,
                   unsigned seed) {
    if (coeff != "Z" && coeff != "A")
        throw std::invalid_argument("oracle sweep supports Z or A coefficients");
    GroupSpec g(n);
    MackeyTable table = concretize(
            coeff == "Z" ? atom_const_z(g.primes.size()) : atom_burnside(g.primes.size()), g);

    std::vector<long> proper;
    for (long d : g.divisors)
        if (d != n) proper.push_back(d);

    std::vector<std::vector<long>> grid;
    std::vector<long> cur;
    auto extend = [&](auto&& self, size_t start) -> void {
        if (!cur.empty()) grid.push_back(cur);
        if (static_cast<int>(cur.size()) == max_factors) return;
        for (size_t i = start; i < proper.size(); ++i) {
            cur.push_back(proper[i]);
            self(self, i);
            cur.pop_back();
        }
    };
    extend(extend, 0);

    long comparisons = 0, mismatches = 0;
    json details = json::array();
    for (const auto& V : grid) {
        EquivChainComplex c = morse_reduce(sphere_complex(g, V));
        VirtualRep vrep = rep_from_raw(n, 0, {});
        for (long r : V) vrep = vrep + rep_from_raw(n, 0, {{r, 1}});
        long dim = 2 * static_cast<long>(V.size());
        for (Variance var : {Variance::Homology, Variance::Cohomology}) {
            for (long m : g.divisors) {
                EvaluatedComplex ec = evaluate(c, table, m, var);
                std::vector<FgAbelianGroup> hs = evaluated_homology_all(ec);
                for (long k = 0; k <= dim + 1; ++k) {
                    VirtualRep kk = rep_from_raw(n, k, {});
                    VirtualRep alpha = var == Variance::Homology ? vrep - kk : kk - vrep;
                    FgAbelianGroup got =
                            k < static_cast<long>(hs.size()) ? hs[k] : FgAbelianGroup{};
                    FgAbelianGroup want = engine_group_at_level(coeff, alpha, m);
                    ++comparisons;
                    if (!iso_check(got, want)) {
                        ++mismatches;
                        details.push_back(json{{"V", V},
                                               {"k", k},
                                               {"level", m},
                                               {"variance",
                                                var == Variance::Homology ? "homology"
                                                                          : "cohomology"},
                                               {"cellular", got.str()},
                                               {"engine", want.str()}});
                    }
                }
            }
        }
    }

    // seeded structural spot checks on virtual gradings outside oracle range
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> cd(-3, 3);
    for (long i = 0; i < random_gradings; ++i) {
        std::map<long, long> raw;
        for (long d : proper) raw[d] = cd(rng);
        VirtualRep a = rep_from_raw(n, cd(rng), raw);
        FgAbelianGroup grp = coeff == "Z" ? cohomology_Z(a).group
                                          : cohomology_A_group(a, CoeffSystem::full(g));
        bool ok = true;
        if (fixed_dim(a, 1) % 2 != 0 && grp.free_rank != 0) ok = false;
        for (const Int& t : grp.torsion)
            if (t != 0 && Int(n) % t != 0) ok = false;
        bool all_pos = true, all_neg = true;
        for (long d : g.divisors) {
            all_pos = all_pos && fixed_dim(a, d) > 0;
            all_neg = all_neg && fixed_dim(a, d) < 0;
        }
        if ((all_pos || all_neg) && !grp.is_trivial()) ok = false;
        ++comparisons;
        if (!ok) {
            ++mismatches;
            details.push_back(json{{"alpha", a.str()}, {"group", grp.str()}});
        }
    }

    return json{{"schema", 1},
                {"kind", "oracle"},
                {"n", n},
                {"coeff", coeff},
                {"max_factors", max_factors},
                {"random_gradings", random_gradings},
                {"seed", seed},
                {"comparisons", comparisons},
                {"mismatches", mismatches},
                {"details", details}};
}

json freeness_cp_report(long n, long m) {
    GroupSpec g(n);
    std::vector<CellSpec> cells = cp_cells(g, m);
    EvenTypeReport rep = check_even_type(g, cells);
    json rows = json::array();
    for (long r = 0; r <= m; ++r) {
        std::map<long, long> dims = fixed_dims(cells[r].rep);
        rows.push_back(json{{"r", r},
                            {"grading", cells[r].rep.str()},
                            {"dims", dims_to_json(g, dims)},
                            {"floor_agrees", dims == cp_dims_floor(g, r)},
                            {"isotropy", cells[r].isotropy}});
    }
    return json{{"schema", 1},       {"kind", "freeness_cp"},
                {"n", n},            {"m", m},
                {"even_type", rep.ok}, {"generators", rep.basis.size()},
                {"problems", rep.problems}, {"rows", rows}};
}

json freeness_grassmann_report(long n, long l, long m) {
    GroupSpec g(n);
    std::vector<GrassmannCell> rows = grassmann_cells(g, l, m);
    std::vector<CellSpec> cells;
    std::vector<std::map<long, long>> floors;
    for (const GrassmannCell& r : rows) {
        cells.push_back(r.cell);
        floors.push_back(r.dims_floor);
    }
    EvenTypeReport rep = check_even_type(g, cells, &floors);
    json jrows = json::array();
    for (const GrassmannCell& r : rows)
        jrows.push_back(json{{"symbol", r.symbol.str()},
                             {"grading", r.cell.rep.str()},
                             {"dims_direct", dims_to_json(g, r.dims_direct)},
                             {"dims_floor", dims_to_json(g, r.dims_floor)},
                             {"mismatch", r.mismatch}});
    return json{{"schema", 1},
                {"kind", "freeness_grassmann"},
                {"n", n},
                {"l", l},
                {"m", m},
                {"even_type_floor", rep.ok},
                {"generators", rep.basis.size()},
                {"problems", rep.problems},
                {"rows", jrows}};
}

namespace {

std::string dims_obj_text(const json& dims) {
    std::vector<long> keys;
    for (auto& [k, v] : dims.items()) {
        (void)v;
        keys.push_back(std::stol(k));
    }
    std::sort(keys.begin(), keys.end());
    std::string out = "(";
    for (size_t i = 0; i < keys.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(dims.at(std::to_string(keys[i])).get<long>());
    }
    return out + ")";
}

}  // namespace

std::string render_text(const json& report) {
    std::ostringstream os;
    const std::string kind = report.value("kind", "");
    if (kind == "cohomology") {
        for (const json& e : report.at("entries")) {
            os << "alpha = " << e.at("alpha").get<std::string>()
               << "  dims = " << dims_obj_text(e.at("fixed_dims"))
               << "  [" << e.at("class").get<std::string>() << "]\n";
            if (e.contains("group_by_level")) {
                for (auto& [lvl, grp] : e.at("group_by_level").items())
                    os << "  level " << lvl << ": " << grp.get<std::string>() << "\n";
            } else {
                os << "  " << e.at("group").get<std::string>();
                if (e.value("rep_dependent", false))
                    os << "; Mackey: representation-dependent";
                else
                    os << "; " << e.at("mackey").get<std::string>();
                os << "\n";
            }
            if (e.contains("oracle"))
                os << "  oracle: "
                   << (e.at("oracle") == "match"
                               ? "MATCH"
                               : (e.at("oracle") == "mismatch" ? "MISMATCH" : "skipped"))
                   << "\n";
        }
    } else if (kind == "ring") {
        if (report.at("vanishes").get<bool>())
            os << "grading " << report.at("grading").get<std::string>()
               << ": 0 (group vanishes)\n";
        else
            os << "grading " << report.at("grading").get<std::string>() << ": "
               << report.at("group").get<std::string>() << ", value "
               << report.at("value").get<long>() << "\n";
    } else if (kind == "oracle") {
        os << report.at("comparisons").get<long>() << " comparisons, "
           << report.at("mismatches").get<long>() << " mismatches\n";
        for (const json& d : report.at("details")) os << "  MISMATCH " << d.dump() << "\n";
    } else if (kind == "freeness_cp") {
        os << "CP cells, n = " << report.at("n").get<long>() << ":\n";
        for (const json& r : report.at("rows"))
            os << "  r = " << r.at("r").get<long>() << "  dims = "
               << dims_obj_text(r.at("dims")) << "  W_r = "
               << r.at("grading").get<std::string>() << "\n";
        os << (report.at("even_type").get<bool>() ? "even type: PASS, " : "even type: FAIL, ")
           << report.at("generators").get<long>() << " generators\n";
        for (const json& p : report.at("problems")) os << "  " << p.get<std::string>() << "\n";
    } else if (kind == "freeness_grassmann") {
        os << "Schubert cells, n = " << report.at("n").get<long>() << ", G(U("
           << report.at("l").get<long>() << "), " << report.at("m").get<long>() << "):\n";
        for (const json& r : report.at("rows"))
            os << "  " << r.at("symbol").get<std::string>() << "  direct = "
               << dims_obj_text(r.at("dims_direct")) << "  floor = "
               << dims_obj_text(r.at("dims_floor"))
               << (r.at("mismatch").get<bool>() ? "  MISMATCH" : "") << "  W = "
               << r.at("grading").get<std::string>() << "\n";
        os << (report.at("even_type_floor").get<bool>() ? "even type (floor dims): PASS, "
                                                        : "even type (floor dims): FAIL, ")
           << report.at("generators").get<long>() << " generators\n";
        for (const json& p : report.at("problems")) os << "  " << p.get<std::string>() << "\n";
    } else {
        os << report.dump(2) << "\n";
    }
    return os.str();
}

int report_exit_code(const json& report) {
    if (report.value("mismatches", 0L) > 0) return 2;
    if (report.contains("even_type") && !report.at("even_type").get<bool>()) return 2;
    if (report.contains("even_type_floor") && !report.at("even_type_floor").get<bool>()) return 2;
    return 0;
}

}  // namespace eqcoh
