#include "eqcoh/mackey.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eqcoh {

MackeyExpr& MackeyExpr::canonicalize() {
    std::sort(atoms.begin(), atoms.end());
    return *this;
}

MackeyExpr expr_sum(const MackeyExpr& a, const MackeyExpr& b) {
    MackeyExpr r = a;
    r.atoms.insert(r.atoms.end(), b.atoms.begin(), b.atoms.end());
    return r.canonicalize();
}

MackeyAtom atom_const_z(size_t k) {
    MackeyAtom a;
    a.factors.assign(k, AtomFactor{FactorKind::ConstZ, 0});
    return a;
}

MackeyAtom atom_burnside(size_t k) {
    MackeyAtom a;
    a.factors.assign(k, AtomFactor{FactorKind::Burnside, 0});
    return a;
}

MackeyAtom atom_K_bracket(const GroupSpec& g, size_t i) {
    MackeyAtom a = atom_const_z(g.primes.size());
    a.factors.at(i) = AtomFactor{FactorKind::Bracket, g.primes.at(i)};
    return a;
}

MackeyAtom atom_z_power_j(const std::vector<int>& j) {
    MackeyAtom a;
    for (int ji : j) a.factors.push_back(AtomFactor{ji ? FactorKind::DualZ : FactorKind::ConstZ, 0});
    return a;
}

std::string atom_str(const GroupSpec& g, const MackeyAtom& a) {
    if (a.factors.size() != g.primes.size()) throw std::runtime_error("atom_str: arity mismatch");
    std::vector<std::string> parts;
    bool all_burnside = !a.factors.empty();
    for (size_t i = 0; i < a.factors.size(); ++i) {
        const AtomFactor& f = a.factors[i];
        if (f.kind != FactorKind::Burnside) all_burnside = false;
        std::string p = std::to_string(g.primes[i]);
        switch (f.kind) {
            case FactorKind::ConstZ: break;  // default factor, omitted
            case FactorKind::DualZ: parts.push_back("Z*[" + p + "]"); break;
            case FactorKind::Bracket:
                if (f.c == 0) parts.push_back("K[" + p + "]<Z>");
                else parts.push_back("K[" + p + "]<Z/" + std::to_string(f.c) + ">");
                break;
            case FactorKind::Burnside: parts.push_back("A[" + p + "]"); break;
        }
    }
    if (parts.empty()) return "Z";
    if (all_burnside) return "A";
    std::string s;
    for (const auto& p : parts) {
        if (!s.empty()) s += " (x) ";
        s += p;
    }
    return s;
}

std::string expr_str(const GroupSpec& g, const MackeyExpr& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const MackeyAtom& a : e.atoms) {
        if (!s.empty()) s += " (+) ";
        s += atom_str(g, a);
    }
    return s;
}

namespace {

struct FactorData {
    BasedGroup bottom, top;
    IntMat res;  // top -> bottom
    IntMat tr;   // bottom -> top
};

FactorData factor_data(const AtomFactor& f, long p) {
    FactorData d;
    switch (f.kind) {
        case FactorKind::ConstZ:
            d.bottom = d.top = BasedGroup::free_of_rank(1);
            d.res = mat_from({{1}});
            d.tr = mat_from({{p}});
            break;
        case FactorKind::DualZ:
            d.bottom = d.top = BasedGroup::free_of_rank(1);
            d.res = mat_from({{p}});
            d.tr = mat_from({{1}});
            break;
        case FactorKind::Bracket:
            d.bottom = BasedGroup{};  // zero group
            d.top = BasedGroup{{Int(f.c)}};
            d.res = IntMat(0, 1);
            d.tr = IntMat(1, 0);
            break;
        case FactorKind::Burnside:
            d.bottom = BasedGroup::free_of_rank(1);
            d.top = BasedGroup::free_of_rank(2);
            d.res = mat_from({{1, p}});
            d.tr = mat_from({{0}, {1}});
            break;
    }
    return d;
}

}  // namespace

IntMat MackeyTable::conj_at(long d) const {
    auto it = conj.find(d);
    if (it != conj.end()) return it->second;
    return IntMat::identity(levels.at(d).ngens());
}

IntMat MackeyTable::res_to(long a, long b) const {
    if (a % b != 0) throw std::runtime_error("res_to: not a divisor");
    IntMat m = IntMat::identity(levels.at(a).ngens());
    long cur = a;
    for (long p : spec.primes) {
        if (cur % p == 0 && b % p != 0) {
            m = res.at({cur, cur / p}).mul(m);
            cur /= p;
        }
    }
    return m;
}

IntMat MackeyTable::tr_to(long b, long a) const {
    if (a % b != 0) throw std::runtime_error("tr_to: not a divisor");
    IntMat m = IntMat::identity(levels.at(b).ngens());
    long cur = b;
    for (long p : spec.primes) {
        if (a % p == 0 && cur % p != 0) {
            m = tr.at({cur, cur * p}).mul(m);
            cur *= p;
        }
    }
    return m;
}

MackeyTable concretize(const MackeyAtom& a, const GroupSpec& g) {
    const size_t k = g.primes.size();
    if (a.factors.size() != k) throw std::runtime_error("concretize: arity mismatch");
    std::vector<FactorData> fd;
    for (size_t i = 0; i < k; ++i) fd.push_back(factor_data(a.factors[i], g.primes[i]));

    MackeyTable t;
    t.spec = g;
    auto level_group = [&](long d) {
        BasedGroup b = BasedGroup::free_of_rank(1);  // empty tensor = Z
        for (size_t i = 0; i < k; ++i)
            b = based_tensor(b, d % g.primes[i] == 0 ? fd[i].top : fd[i].bottom);
        return b;
    };
    for (long d : g.divisors) t.levels[d] = level_group(d);
    for (long d : g.divisors) {
        for (size_t j = 0; j < k; ++j) {
            long p = g.primes[j];
            if (d % p == 0) continue;
            long dp = d * p;
            IntMat rm = IntMat::identity(1), tm = IntMat::identity(1);
            for (size_t i = 0; i < k; ++i) {
                if (i == j) {
                    rm = kronecker(rm, fd[i].res);
                    tm = kronecker(tm, fd[i].tr);
                } else {
                    long rank = (d % g.primes[i] == 0) ? fd[i].top.ngens() : fd[i].bottom.ngens();
                    IntMat id = IntMat::identity(rank);
                    rm = kronecker(rm, id);
                    tm = kronecker(tm, id);
                }
            }
            t.res[{dp, d}] = rm;
            t.tr[{d, dp}] = tm;
        }
    }
    return t;
}

namespace {

// direct sum of tables (block structure levelwise)
MackeyTable table_sum(const MackeyTable& a, const MackeyTable& b) {
    MackeyTable t;
    t.spec = a.spec;
    for (long d : a.spec.divisors) t.levels[d] = based_direct_sum(a.levels.at(d), b.levels.at(d));
    auto block = [](const IntMat& x, const IntMat& y) {
        IntMat m(x.rows + y.rows, x.cols + y.cols);
        for (long i = 0; i < x.rows; ++i)
            for (long j = 0; j < x.cols; ++j) m.at(i, j) = x.at(i, j);
        for (long i = 0; i < y.rows; ++i)
            for (long j = 0; j < y.cols; ++j) m.at(x.rows + i, x.cols + j) = y.at(i, j);
        return m;
    };
    for (auto& [key, m] : a.res) t.res[key] = block(m, b.res.at(key));
    for (auto& [key, m] : a.tr) t.tr[key] = block(m, b.tr.at(key));
    for (long d : a.spec.divisors)
        if (a.conj.count(d) || b.conj.count(d)) t.conj[d] = block(a.conj_at(d), b.conj_at(d));
    return t;
}

MackeyTable zero_table(const GroupSpec& g) {
    MackeyTable t;
    t.spec = g;
    for (long d : g.divisors) t.levels[d] = BasedGroup{};
    for (long d : g.divisors)
        for (long p : g.primes)
            if (d % p != 0) {
                t.res[{d * p, d}] = IntMat(0, 0);
                t.tr[{d, d * p}] = IntMat(0, 0);
            }
    return t;
}

}  // namespace

MackeyTable concretize(const MackeyExpr& e, const GroupSpec& g) {
    MackeyTable t = zero_table(g);
    for (const MackeyAtom& a : e.atoms) t = table_sum(t, concretize(a, g));
    return t;
}

AxiomReport check_axioms(const MackeyTable& t, bool z_module) {
    AxiomReport rep;
    const GroupSpec& g = t.spec;
    auto fail = [&](const std::string& s) { rep.violations.push_back(s); };

    // path independence across cover squares
    for (long a : g.divisors)
        for (long p : g.primes)
            for (long q : g.primes) {
                if (p >= q || a % (p * q) != 0) continue;
                long ap = a / p, aq = a / q, apq = a / (p * q);
                IntMat r1 = t.res.at({ap, apq}).mul(t.res.at({a, ap}));
                IntMat r2 = t.res.at({aq, apq}).mul(t.res.at({a, aq}));
                if (!maps_equal_mod(r1, r2, t.levels.at(apq)))
                    fail("res square at (" + std::to_string(a) + "; " + std::to_string(p) + "," + std::to_string(q) + ")");
                IntMat t1 = t.tr.at({ap, a}).mul(t.tr.at({apq, ap}));
                IntMat t2 = t.tr.at({aq, a}).mul(t.tr.at({apq, aq}));
                if (!maps_equal_mod(t1, t2, t.levels.at(a)))
                    fail("tr square at (" + std::to_string(a) + "; " + std::to_string(p) + "," + std::to_string(q) + ")");
            }

    // conjugation naturality and order
    for (long d : g.divisors) {
        if (!t.conj.count(d)) continue;
        IntMat c = t.conj_at(d);
        IntMat pw = IntMat::identity(c.rows);
        for (long i = 0; i < g.n / d; ++i) pw = c.mul(pw);
        if (!maps_equal_mod(pw, IntMat::identity(c.rows), t.levels.at(d)))
            fail("conjugation order at " + std::to_string(d));
        for (long p : g.primes) {
            if (d % p == 0) continue;
            long dp = d * p;
            IntMat lhs = t.conj_at(d).mul(t.res.at({dp, d}));
            IntMat rhs = t.res.at({dp, d}).mul(t.conj_at(dp));
            if (!maps_equal_mod(lhs, rhs, t.levels.at(d)))
                fail("conjugation/res naturality at " + std::to_string(dp));
            IntMat lt = t.conj_at(dp).mul(t.tr.at({d, dp}));
            IntMat rt = t.tr.at({d, dp}).mul(t.conj_at(d));
            if (!maps_equal_mod(lt, rt, t.levels.at(dp)))
                fail("conjugation/tr naturality at " + std::to_string(dp));
        }
    }

    // double coset: res^a_b tr^a_c = tr^b_g (sum_x c_x) res^c_g with x
    // running over the a/lcm(b,c) cosets, acting at level g = gcd(b,c) by
    // powers of the generator action
    for (long a : g.divisors)
        for (long b : g.divisors)
            for (long c : g.divisors) {
                if (a % b != 0 || a % c != 0) continue;
                long gc = std::gcd(b, c), l = std::lcm(b, c);
                IntMat lhs = t.res_to(a, b).mul(t.tr_to(c, a));
                long count = a / l;
                IntMat conj_sum(t.levels.at(gc).ngens(), t.levels.at(gc).ngens());
                IntMat cg = t.conj_at(gc);
                // step between coset reps: generator of C_a is rho^{n/a}
                IntMat step = IntMat::identity(cg.rows);
                for (long i = 0; i < g.n / a; ++i) step = cg.mul(step);
                IntMat pw = IntMat::identity(cg.rows);
                for (long j = 0; j < count; ++j) {
                    for (long i = 0; i < conj_sum.rows; ++i)
                        for (long jj = 0; jj < conj_sum.cols; ++jj) conj_sum.at(i, jj) += pw.at(i, jj);
                    pw = step.mul(pw);
                }
                IntMat rhs = t.tr_to(gc, b).mul(conj_sum).mul(t.res_to(c, gc));
                if (!maps_equal_mod(lhs, rhs, t.levels.at(b)))
                    fail("double coset at (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                         ", c=" + std::to_string(c) + ")");
            }

    if (z_module) {
        for (long a : g.divisors)
            for (long b : g.divisors) {
                if (a % b != 0 || a == b) continue;
                IntMat m = t.tr_to(b, a).mul(t.res_to(a, b));
                IntMat id = IntMat::identity(t.levels.at(a).ngens());
                Int mult(a / b);
                for (auto& x : id.data) x *= mult;
                if (!maps_equal_mod(m, id, t.levels.at(a)))
                    fail("tr o res != index at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
            }
    }
    return rep;
}

MackeyTable induce_orbit(const GroupSpec& g, long d, const MackeyTable& inner) {
    if (g.n % d != 0) throw std::runtime_error("induce_orbit: d must divide n");
    if (inner.spec.n != d) throw std::runtime_error("induce_orbit: inner table over wrong group");
    if (!inner.conj.empty()) throw std::runtime_error("induce_orbit: inner conjugation must be trivial");
    MackeyTable t;
    t.spec = g;
    auto copies = [&](long m) { return g.n / std::lcm(d, m); };
    for (long m : g.divisors) {
        BasedGroup b;
        const BasedGroup& ib = inner.levels.at(std::gcd(d, m));
        long cm = copies(m);
        for (long j = 0; j < cm; ++j) b = based_direct_sum(b, ib);
        t.levels[m] = b;
        if (cm > 1) {
            // the generator permutes the orbit copies cyclically
            long r = ib.ngens();
            IntMat c(cm * r, cm * r);
            for (long j = 0; j < cm; ++j)
                for (long x = 0; x < r; ++x) c.at(((j + 1) % cm) * r + x, j * r + x) = 1;
            t.conj[m] = c;
        }
    }
    for (long m : g.divisors)
        for (long p : g.primes) {
            if (m % p == 0) continue;
            long mp = m * p;
            long cm = copies(m), cmp = copies(mp);
            long gm = std::gcd(d, m), gmp = std::gcd(d, mp);
            const long rm = inner.levels.at(gm).ngens();
            const long rmp = inner.levels.at(gmp).ngens();
            IntMat R(cm * rm, cmp * rmp), T(cmp * rmp, cm * rm);
            if (d % p == 0) {
                // p divides d: copy counts agree, blocks are the inner maps
                const IntMat& ir = inner.res.at({gmp, gm});
                const IntMat& it = inner.tr.at({gm, gmp});
                for (long j = 0; j < cm; ++j)
                    for (long x = 0; x < ir.rows; ++x)
                        for (long y = 0; y < ir.cols; ++y) R.at(j * rm + x, j * rmp + y) = ir.at(x, y);
                for (long j = 0; j < cm; ++j)
                    for (long x = 0; x < it.rows; ++x)
                        for (long y = 0; y < it.cols; ++y) T.at(j * rmp + x, j * rm + y) = it.at(x, y);
            } else {
                // p is a free direction: res is the p-fold diagonal, tr the fold
                for (long j = 0; j < cm; ++j) {
                    long jp = j % cmp;
                    for (long x = 0; x < rm; ++x) {
                        R.at(j * rm + x, jp * rm + x) = 1;
                        T.at(jp * rm + x, j * rm + x) = 1;
                    }
                }
            }
            t.res[{mp, m}] = R;
            t.tr[{m, mp}] = T;
        }
    return t;
}

bool tables_levelwise_iso(const MackeyTable& a, const MackeyTable& b) {
    if (!(a.spec == b.spec)) return false;
    for (long d : a.spec.divisors)
        if (!iso_check(a.value(d), b.value(d))) return false;
    return true;
}

ExactnessReport exactness_witness(long n) {
    GroupSpec g(n);
    const size_t k = g.primes.size();
    MackeyTable zt = concretize(MackeyExpr{{atom_const_z(k)}}, g);
    MackeyTable zs;  // Z*
    {
        MackeyAtom a;
        a.factors.assign(k, AtomFactor{FactorKind::DualZ, 0});
        zs = concretize(MackeyExpr{{a}}, g);
    }
    MackeyExpr sum;
    for (size_t i = 0; i < k; ++i) sum.atoms.push_back(atom_K_bracket(g, i));
    MackeyTable expected = concretize(sum.canonicalize(), g);

    ExactnessReport rep;
    rep.ok = true;
    // the inclusion iota: Z* -> Z is multiplication by d at level d; check it
    // commutes with res and tr, is injective, and has the expected cokernel.
    std::map<long, IntMat> iota;
    for (long d : g.divisors) {
        iota[d] = IntMat(1, 1);
        iota[d].at(0, 0) = d;
    }
    for (long d : g.divisors)
        for (long p : g.primes) {
            if (d % p != 0) continue;
            long e = d / p;
            IntMat res_then = zt.res.at({d, e}).mul(iota[d]);
            IntMat then_res = iota[e].mul(zs.res.at({d, e}));
            IntMat tr_then = zt.tr.at({e, d}).mul(iota[e]);
            IntMat then_tr = iota[d].mul(zs.tr.at({e, d}));
            if (!(res_then == then_res)) {
                rep.ok = false;
                rep.details.push_back("iota does not commute with res at " + std::to_string(d));
            }
            if (!(tr_then == then_tr)) {
                rep.ok = false;
                rep.details.push_back("iota does not commute with tr at " + std::to_string(d));
            }
        }
    for (long d : g.divisors) {
        // cokernel of (x d): Z/d
        FgAbelianGroup coker = group_from_orders({Int(d)});
        FgAbelianGroup want = expected.value(d);
        bool match = iso_check(coker, want);
        if (!match) rep.ok = false;
        rep.details.push_back("level " + std::to_string(d) + ": coker(x" + std::to_string(d) +
                              ") = " + coker.str() + ", expected " + want.str() +
                              (match ? " [ok]" : " [FAIL]"));
    }
    return rep;
}

std::string table_to_text(const MackeyTable& t) {
    std::ostringstream os;
    os << "mackeytable n=" << t.spec.n << "\n";
    auto write_orders = [&](const BasedGroup& b) {
        os << "[";
        for (size_t i = 0; i < b.orders.size(); ++i) os << (i ? "," : "") << b.orders[i].get_str();
        os << "]";
    };
    auto write_mat = [&](const IntMat& m) {
        os << m.rows << "x" << m.cols << " [";
        for (long i = 0; i < m.rows; ++i) {
            if (i) os << ";";
            for (long j = 0; j < m.cols; ++j) os << (j ? "," : "") << m.at(i, j).get_str();
        }
        os << "]";
    };
    for (long d : t.spec.divisors) {
        os << "level " << d << " ";
        write_orders(t.levels.at(d));
        os << "\n";
    }
    for (long d : t.spec.divisors)
        for (long p : t.spec.primes) {
            if (d % p != 0) continue;
            long e = d / p;
            os << "res " << d << "->" << e << " ";
            write_mat(t.res.at({d, e}));
            os << "\n";
            os << "tr " << e << "->" << d << " ";
            write_mat(t.tr.at({e, d}));
            os << "\n";
        }
    for (long d : t.spec.divisors)
        if (t.conj.count(d)) {
            os << "conj " << d << " ";
            write_mat(t.conj.at(d));
            os << "\n";
        }
    return os.str();
}

MackeyTable parse_table(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    MackeyTable t;
    bool have_header = false;
    auto parse_orders = [](const std::string& s) {
        BasedGroup b;
        size_t a = s.find('['), z = s.find(']');
        if (a == std::string::npos || z == std::string::npos) throw std::runtime_error("table parse: bad orders");
        std::string body = s.substr(a + 1, z - a - 1);
        std::istringstream bs(body);
        std::string tok;
        while (std::getline(bs, tok, ',')) if (!tok.empty()) b.orders.push_back(Int(tok));
        return b;
    };
    auto parse_mat = [](std::istringstream& ls) {
        std::string shape;
        ls >> shape;
        size_t xp = shape.find('x');
        long rows = std::stol(shape.substr(0, xp)), cols = std::stol(shape.substr(xp + 1));
        std::string rest;
        std::getline(ls, rest);
        size_t a = rest.find('['), z = rest.find(']');
        std::string body = rest.substr(a + 1, z - a - 1);
        IntMat m(rows, cols);
        std::istringstream rs(body);
        std::string row;
        long i = 0;
        while (std::getline(rs, row, ';')) {
            std::istringstream cs(row);
            std::string cell;
            long j = 0;
            while (std::getline(cs, cell, ',')) {
                if (!cell.empty()) m.at(i, j++) = Int(cell);
            }
            ++i;
        }
        return m;
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "mackeytable") {
            std::string nspec;
            ls >> nspec;
            if (nspec.rfind("n=", 0) != 0) throw std::runtime_error("table parse: expected n=");
            t.spec = GroupSpec(std::stol(nspec.substr(2)));
            have_header = true;
        } else if (kw == "level") {
            long d;
            ls >> d;
            std::string rest;
            std::getline(ls, rest);
            t.levels[d] = parse_orders(rest);
        } else if (kw == "res" || kw == "tr") {
            std::string arrow;
            ls >> arrow;
            size_t ap = arrow.find("->");
            long from = std::stol(arrow.substr(0, ap)), to = std::stol(arrow.substr(ap + 2));
            IntMat m = parse_mat(ls);
            if (kw == "res") t.res[{from, to}] = m;
            else t.tr[{from, to}] = m;
        } else if (kw == "conj") {
            long d;
            ls >> d;
            t.conj[d] = parse_mat(ls);
        } else {
            throw std::runtime_error("table parse: unknown keyword '" + kw + "'");
        }
    }
    if (!have_header) throw std::runtime_error("table parse: missing header");
    return t;
}

}  // namespace eqcoh
