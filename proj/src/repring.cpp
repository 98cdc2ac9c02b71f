#include "eqcoh/repring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace eqcoh {

GroupSpec::GroupSpec(long n_value) : n(n_value) {
    if (n < 1) throw std::runtime_error("GroupSpec: n must be positive");
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(p);
            m /= p;
            if (m % p == 0) throw std::runtime_error("GroupSpec: n must be squarefree");
        }
    }
    if (m > 1) primes.push_back(m);
    if (n % 2 == 0) throw std::runtime_error("GroupSpec: n must be odd");
    unsigned k = static_cast<unsigned>(primes.size());
    for (unsigned mask = 0; mask < (1u << k); ++mask) divisors.push_back(divisor_of_mask(mask));
    std::sort(divisors.begin(), divisors.end());
}

long GroupSpec::divisor_of_mask(unsigned mask) const {
    long d = 1;
    for (size_t i = 0; i < primes.size(); ++i)
        if (mask & (1u << i)) d *= primes[i];
    return d;
}

unsigned GroupSpec::mask_of_divisor(long d) const {
    unsigned mask = 0;
    for (size_t i = 0; i < primes.size(); ++i)
        if (d % primes[i] == 0) mask |= (1u << i);
    if (divisor_of_mask(mask) != d) throw std::runtime_error("mask_of_divisor: not a divisor");
    return mask;
}

long VirtualRep::virtual_dim() const {
    long d = trivial;
    for (auto& [r, c] : twists) d += 2 * c;
    return d;
}

VirtualRep VirtualRep::operator+(const VirtualRep& o) const {
    if (n != o.n) throw std::runtime_error("VirtualRep: group mismatch");
    VirtualRep r = *this;
    r.trivial += o.trivial;
    for (auto& [d, c] : o.twists) {
        r.twists[d] += c;
        if (r.twists[d] == 0) r.twists.erase(d);
    }
    return r;
}

VirtualRep VirtualRep::operator-() const {
    VirtualRep r = *this;
    r.trivial = -r.trivial;
    for (auto& [d, c] : r.twists) c = -c;
    return r;
}

VirtualRep VirtualRep::operator-(const VirtualRep& o) const { return *this + (-o); }

std::string VirtualRep::str() const {
    std::string s;
    auto term = [&](long coeff, const std::string& base) {
        if (coeff == 0) return;
        if (s.empty()) {
            if (coeff == -1 && !base.empty()) s += "-";
            else if (coeff != 1 || base.empty()) s += std::to_string(coeff) + (base.empty() ? "" : "*");
        } else {
            s += coeff > 0 ? " + " : " - ";
            long a = std::abs(coeff);
            if (a != 1 || base.empty()) s += std::to_string(a) + (base.empty() ? "" : "*");
        }
        s += base;
    };
    for (auto it = twists.rbegin(); it != twists.rend(); ++it)
        term(it->second, "xi^" + std::to_string(it->first));
    term(trivial, "");
    return s.empty() ? "0" : s;
}

VirtualRep rep_from_raw(long n, long trivial, const std::map<long, long>& raw_twists) {
    VirtualRep v;
    v.n = n;
    v.trivial = trivial;
    for (auto [r, c] : raw_twists) {
        long rr = ((r % n) + n) % n;
        if (rr == 0) {
            // complex trivial character: two real trivial dimensions
            v.trivial += 2 * c;
            continue;
        }
        long d = std::gcd(rr, n);
        v.twists[d] += c;
        if (v.twists[d] == 0) v.twists.erase(d);
    }
    return v;
}

long fixed_dim(const VirtualRep& a, long d) {
    long s = a.trivial;
    for (auto& [e, c] : a.twists)
        if (e % d == 0) s += 2 * c;
    return s;
}

std::map<long, long> fixed_dims(const VirtualRep& a) {
    GroupSpec g(a.n);
    std::map<long, long> out;
    for (long d : g.divisors) out[d] = fixed_dim(a, d);
    return out;
}

VirtualRep rep_from_fixed_dims(long n, const std::map<long, long>& dims) {
    GroupSpec g(n);
    VirtualRep v;
    v.n = n;
    v.trivial = dims.at(n);
    // downward induction over divisors (largest first): the coefficient of
    // xi^d is determined by |alpha^{C_d}| and the coefficients above it.
    for (auto it = g.divisors.rbegin(); it != g.divisors.rend(); ++it) {
        long d = *it;
        if (d == n) continue;
        long s = v.trivial;
        for (auto& [e, c] : v.twists)
            if (e % d == 0) s += 2 * c;
        long deficit = dims.at(d) - s;
        if (deficit % 2 != 0) throw std::runtime_error("rep_from_fixed_dims: odd twist deficit");
        if (deficit != 0) v.twists[d] = deficit / 2;
    }
    return v;
}

long m_alpha(const VirtualRep& a) {
    GroupSpec g(a.n);
    long dim = a.virtual_dim();
    long m = 1;
    for (long p : g.primes) {
        long dp = fixed_dim(a, p);
        if (dim % 2 == 0 ? dp <= 0 : dp > 1) m *= p;
    }
    return m;
}

std::vector<int> j_vector(const VirtualRep& a) {
    GroupSpec g(a.n);
    std::vector<int> j;
    for (long p : g.primes) j.push_back(fixed_dim(a, p) <= 0 ? 0 : 1);
    return j;
}

GradingClass classify(const VirtualRep& a) {
    GroupSpec g(a.n);
    bool has_zero = false;
    for (long d : g.divisors) {
        if (fixed_dim(a, d) != 0) continue;
        has_zero = true;
        for (long p : g.primes)
            if (d % p != 0 && fixed_dim(a, d * p) == 0) return GradingClass::ManyZeros;
    }
    return has_zero ? GradingClass::MostlyNonZero : GradingClass::NonZero;
}

VirtualRep quotient_fixed(const VirtualRep& a, long d) {
    if (a.n % d != 0) throw std::runtime_error("quotient_fixed: not a divisor");
    VirtualRep v;
    v.n = a.n / d;
    v.trivial = a.trivial;
    for (auto& [e, c] : a.twists) {
        if (e % d != 0) continue;
        long e2 = e / d;
        if (e2 == v.n) v.trivial += 2 * c;  // e = n impossible, but e/d = n/d means trivial char
        else v.twists[e2] += c;
    }
    std::erase_if(v.twists, [](auto& kv) { return kv.second == 0; });
    return v;
}

VirtualRep restrict_to_subgroup(const VirtualRep& a, long m) {
    if (a.n % m != 0) throw std::runtime_error("restrict_to_subgroup: not a divisor");
    std::map<long, long> raw;
    for (auto& [e, c] : a.twists) raw[e % m] += c;
    return rep_from_raw(m, a.trivial, raw);
}

std::set<int> zeta_set(const GroupSpec& g, const VirtualRep& a, unsigned mask) {
    std::set<int> out;
    long dI = g.divisor_of_mask(mask);
    for (size_t i = 0; i < g.primes.size(); ++i) {
        if (mask & (1u << i)) continue;
        if (fixed_dim(a, dI * g.primes[i]) == 0) out.insert(static_cast<int>(i));
    }
    return out;
}

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    long number() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw std::runtime_error("grading parse error: expected number at '" + s.substr(start) + "'");
        return std::stol(s.substr(start, pos - start));
    }
};

}  // namespace

VirtualRep parse_grading(long n, const std::string& expr) {
    Lexer lx(expr);
    long trivial = 0;
    std::map<long, long> raw;
    bool first = true;
    while (!lx.done()) {
        long sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++lx.pos;
        } else if (!first) {
            throw std::runtime_error("grading parse error: expected '+' or '-' at '" + expr.substr(lx.pos) + "'");
        }
        first = false;
        long coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coeff = lx.number();
            saw_coeff = true;
            if (lx.peek() == '*') ++lx.pos;
        }
        if (lx.peek() == 'x') {
            if (lx.s.compare(lx.pos, 2, "xi") != 0)
                throw std::runtime_error("grading parse error: expected 'xi'");
            lx.pos += 2;
            long r = 1;
            if (lx.peek() == '^') {
                ++lx.pos;
                long rsign = 1;
                if (lx.peek() == '-') { rsign = -1; ++lx.pos; }
                r = rsign * lx.number();
            }
            raw[((r % n) + n) % n] += sign * coeff;
        } else if (saw_coeff) {
            trivial += sign * coeff;
        } else {
            throw std::runtime_error("grading parse error: unexpected '" + expr.substr(lx.pos) + "'");
        }
    }
    return rep_from_raw(n, trivial, raw);
}

}  // namespace eqcoh
