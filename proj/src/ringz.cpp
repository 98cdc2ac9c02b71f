#include "eqcoh/ringz.hpp"

#include <cctype>
#include <numeric>
#include <random>
#include <sstream>

namespace eqcoh {

namespace {

// Sign/parity trichotomy of the group at a grading.
enum class Part { PosEven, NegOdd, Vanishing };

Part part_of(const VirtualRep& g) {
    long dim = g.virtual_dim();
    if (dim >= 0 && dim % 2 == 0) return Part::PosEven;
    if (dim < 0 && dim % 2 != 0) return Part::NegOdd;
    return Part::Vanishing;
}

long mod_pos(long v, long m) { return ((v % m) + m) % m; }

// ambient coordinate of a positive-part class, reduced mod n
long ambient_mod_n(const RingClass& x) {
    long n = x.grading.n;
    long f = n / m_alpha(x.grading);
    return mod_pos(f * mod_pos(x.value, n), n);
}

}  // namespace

VirtualRep Monomial::grading() const {
    std::map<long, long> tw;
    long triv = 0;
    for (auto [d, e] : u_exponents) {
        tw[d] += e;
        triv -= 2 * e;
    }
    for (auto [d, f] : a_exponents) tw[d] += f;
    return rep_from_raw(n, triv, tw);
}

long Monomial::a_degree() const {
    long s = 0;
    for (auto [d, f] : a_exponents) s += f;
    return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (auto [d, e] : o.u_exponents) {
        r.u_exponents[d] += e;
        if (r.u_exponents[d] == 0) r.u_exponents.erase(d);
    }
    for (auto [d, f] : o.a_exponents) {
        r.a_exponents[d] += f;
        if (r.a_exponents[d] == 0) r.a_exponents.erase(d);
    }
    return r;
}

std::string Monomial::str() const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](char c, long d, long e) {
        if (e == 0) return;
        if (!first) os << ' ';
        first = false;
        os << c << '(' << d << ')';
        if (e != 1) os << '^' << e;
    };
    for (auto [d, f] : a_exponents) put('a', d, f);
    for (auto [d, e] : u_exponents) put('u', d, e);
    if (first) os << "1";
    return os.str();
}

RingClass class_of_monomial(const Monomial& mo) {
    long n = mo.n;
    for (auto [d, f] : mo.a_exponents)
        if (f < 0) throw std::invalid_argument("negative a-exponent in monomial");
    VirtualRep g = mo.grading();
    long m = m_alpha(g);
    if (mo.a_degree() == 0) {
        // pure u-monomial: restriction to the trivial group is 1, so the
        // class exists in H^g = Z exactly when the inclusion n/m(g) is 1
        if (m != n)
            throw NotInSubring("monomial " + mo.str() + " lies outside the image of H^{" +
                               g.str() + "} (index " + std::to_string(n / m) + ")");
        return {g, 1};
    }
    long amb = 1;
    for (auto [d, f] : mo.a_exponents)
        for (long i = 0; i < f; ++i) amb = mod_pos(amb * d, n);
    long idx = n / m;
    if (amb % idx != 0)
        throw NotInSubring("monomial " + mo.str() + " has ambient coordinate " +
                           std::to_string(amb) + ", not divisible by " + std::to_string(idx));
    return {g, mod_pos(amb / idx, m)};
}

RingClass multiply(const RingClass& x, const RingClass& y) {
    if (x.grading.n != y.grading.n) throw std::invalid_argument("mixed group orders");
    long n = x.grading.n;
    VirtualRep g = x.grading + y.grading;
    RingClass r{g, 0};
    Part px = part_of(x.grading);
    Part py = part_of(y.grading);
    if (px == Part::Vanishing || py == Part::Vanishing) return r;
    if (px == Part::PosEven && py == Part::PosEven) {
        long m = m_alpha(g);
        if (g.virtual_dim() == 0) {
            // both factors free; ambient product over Z
            long ax = (n / m_alpha(x.grading)) * x.value;
            long ay = (n / m_alpha(y.grading)) * y.value;
            long prod = ax * ay;
            long idx = n / m;
            if (prod % idx != 0)
                throw std::logic_error("ambient product escaped the subring at " + g.str());
            r.value = prod / idx;
        } else {
            long prod = mod_pos(ambient_mod_n(x) * ambient_mod_n(y), n);
            long idx = n / m;
            if (prod % idx != 0)
                throw std::logic_error("ambient product escaped the subring at " + g.str());
            r.value = mod_pos(prod / idx, m);
        }
        return r;
    }
    if (px == Part::NegOdd && py == Part::NegOdd) return r;
    // module action of the positive part on the negative part
    const RingClass& pos = (px == Part::PosEven) ? x : y;
    const RingClass& neg = (px == Part::PosEven) ? y : x;
    if (g.virtual_dim() >= 0) return r;  // positive odd total: group vanishes
    long m = m_alpha(g);
    long scale = n / m_alpha(pos.grading);
    r.value = mod_pos(mod_pos(pos.value * neg.value, m) * mod_pos(scale, m), m);
    return r;
}

RingClass scale(const RingClass& x, long k) {
    RingClass r = x;
    switch (part_of(x.grading)) {
        case Part::Vanishing: r.value = 0; break;
        case Part::PosEven:
            if (x.grading.virtual_dim() == 0) {
                r.value = x.value * k;
                break;
            }
            [[fallthrough]];
        case Part::NegOdd: r.value = mod_pos(x.value * k, m_alpha(x.grading)); break;
    }
    return r;
}

long monomial_order(const Monomial& mo) {
    if (mo.a_degree() < 1) throw std::invalid_argument("monomial_order requires a-degree >= 1");
    for (auto [d, e] : mo.u_exponents)
        if (e < 0) throw std::invalid_argument("monomial_order requires u-exponents >= 0");
    long g = 0;
    for (auto [d, f] : mo.a_exponents)
        if (f > 0) g = std::gcd(g, mo.n / d);
    return g;
}

RelationsReport relations_suite(long n, unsigned seed) {
    GroupSpec spec(n);
    RelationsReport rep;
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.violations.push_back(s);
    };
    std::vector<long> proper;
    for (long d : spec.divisors)
        if (d < n) proper.push_back(d);

    // (n/d) a_{xi^d} = 0
    for (long d : proper) {
        RingClass c = class_of_monomial({n, {}, {{d, 1}}});
        ++rep.checks;
        if (scale(c, n / d).value != 0)
            fail("(n/d) a(" + std::to_string(d) + ") != 0");
    }

    // (d/g) a_{xi^s} u_{xi^d} = (s/g) u_{xi^s} a_{xi^d}
    for (long d : proper)
        for (long s : proper) {
            long g = std::gcd(d, s);
            RingClass lhs = scale(class_of_monomial({n, {{d, 1}}, {{s, 1}}}), d / g);
            RingClass rhs = scale(class_of_monomial({n, {{s, 1}}, {{d, 1}}}), s / g);
            ++rep.checks;
            if (!(lhs.grading == rhs.grading) || lhs.value != rhs.value)
                fail("gold relation fails at d=" + std::to_string(d) +
                     " s=" + std::to_string(s));
        }

    // a_V a_W = a_{V + W} and u_V u_W = u_{V + W} on random V, W
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> exp_dist(0, 2);
    auto random_pure = [&](bool a_part) {
        Monomial mo{n, {}, {}};
        for (long d : proper) {
            long e = exp_dist(rng);
            if (e == 0) continue;
            (a_part ? mo.a_exponents : mo.u_exponents)[d] = e;
        }
        return mo;
    };
    for (int iter = 0; iter < 100; ++iter)
        for (bool a_part : {true, false}) {
            Monomial m1 = random_pure(a_part);
            Monomial m2 = random_pure(a_part);
            RingClass sep = multiply(class_of_monomial(m1), class_of_monomial(m2));
            RingClass joint = class_of_monomial(m1 * m2);
            ++rep.checks;
            if (!(sep.grading == joint.grading) || sep.value != joint.value)
                fail("product of " + m1.str() + " and " + m2.str() +
                     " disagrees with the joint monomial");
        }
    return rep;
}

Monomial parse_monomial(long n, const std::string& expr) {
    GroupSpec spec(n);
    Monomial mo{n, {}, {}};
    size_t i = 0;
    auto skip = [&] {
        while (i < expr.size() && (std::isspace(static_cast<unsigned char>(expr[i])) || expr[i] == '*'))
            ++i;
    };
    auto bad = [&](const std::string& what) {
        throw std::runtime_error("monomial parse error at position " + std::to_string(i) +
                                 ": " + what);
    };
    auto read_long = [&]() -> long {
        bool negate = false;
        if (i < expr.size() && (expr[i] == '-' || expr[i] == '+')) negate = (expr[i++] == '-');
        size_t start = i;
        while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) ++i;
        if (i == start) bad("expected an integer");
        long v = std::stol(expr.substr(start, i - start));
        return negate ? -v : v;
    };
    skip();
    if (i < expr.size() && expr[i] == '1' && i + 1 == expr.size()) return mo;  // unit
    while (i < expr.size()) {
        char kind = expr[i];
        if (kind != 'u' && kind != 'a') bad("expected 'u' or 'a'");
        ++i;
        if (i >= expr.size() || expr[i] != '(') bad("expected '('");
        ++i;
        long d = read_long();
        if (i >= expr.size() || expr[i] != ')') bad("expected ')'");
        ++i;
        long e = 1;
        if (i < expr.size() && expr[i] == '^') {
            ++i;
            e = read_long();
        }
        if (d < 1 || n % d != 0 || d == n) bad("index " + std::to_string(d) +
                                               " is not a proper divisor of " + std::to_string(n));
        if (kind == 'a' && e < 0) bad("a-exponents must be non-negative");
        auto& slot = (kind == 'u') ? mo.u_exponents[d] : mo.a_exponents[d];
        slot += e;
        if (slot == 0) (kind == 'u' ? mo.u_exponents : mo.a_exponents).erase(d);
        skip();
    }
    return mo;
}

}  // namespace eqcoh
