#include "eqcoh/acoeff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace eqcoh {

namespace {

std::vector<int> prime_indices(const GroupSpec& g, const CoeffSystem& c) {
    std::vector<int> out;
    for (size_t i = 0; i < g.primes.size(); ++i)
        if (c.I.count(g.primes[i])) out.push_back((int)i);
    return out;
}

// all |alpha^{C_S}| != 0 for S subset of the Burnside primes
bool nonzero_below_CI(const GroupSpec& g, const std::map<long, long>& dims,
                      const std::vector<int>& idx) {
    for (unsigned sub = 0; sub < (1u << idx.size()); ++sub) {
        long d = 1;
        for (size_t j = 0; j < idx.size(); ++j)
            if (sub & (1u << j)) d *= g.primes[idx[j]];
        if (dims.at(d) == 0) return false;
    }
    return true;
}

// box <Z>_S onto an expression over C_{n/dS}
MackeyExpr embed_with_brackets(const GroupSpec& ambient, long dS, const MackeyExpr& inner) {
    GroupSpec sub(ambient.n / dS);
    MackeyExpr out;
    for (const MackeyAtom& a : inner.atoms) {
        if (a.factors.size() != sub.primes.size())
            throw std::runtime_error("embed_with_brackets: arity mismatch");
        MackeyAtom b;
        size_t src = 0;
        for (long p : ambient.primes) {
            if (dS % p == 0) b.factors.push_back(AtomFactor{FactorKind::Bracket, 0});
            else b.factors.push_back(a.factors.at(src++));
        }
        out.atoms.push_back(b);
    }
    return out.canonicalize();
}

// drop one copy of K_p<Z/p> for each prime in strip, when present
MackeyExpr strip_brackets(const GroupSpec& sub, MackeyExpr e, const std::set<long>& strip) {
    for (long p : strip) {
        size_t pos = 0;
        while (pos < sub.primes.size() && sub.primes[pos] != p) ++pos;
        if (pos == sub.primes.size()) continue;
        MackeyAtom victim = atom_K_bracket(sub, pos);
        auto it = std::find(e.atoms.begin(), e.atoms.end(), victim);
        if (it != e.atoms.end()) e.atoms.erase(it);
    }
    return e.canonicalize();
}

std::string cache_key(const VirtualRep& alpha, const CoeffSystem& c) {
    std::ostringstream os;
    os << alpha.n;
    for (auto [d, v] : fixed_dims(alpha)) os << ':' << d << '=' << v;
    os << '|';
    for (long p : c.I) os << p << ',';
    return os.str();
}

std::mutex cache_mutex;

}  // namespace

CoeffSystem CoeffSystem::full(const GroupSpec& g) {
    CoeffSystem c;
    c.I.insert(g.primes.begin(), g.primes.end());
    return c;
}

CoeffSystem CoeffSystem::without(long p) const {
    CoeffSystem c = *this;
    c.I.erase(p);
    return c;
}

std::string CoeffSystem::str(const GroupSpec& g) const {
    if (I.empty()) return "Z";
    if ((long)I.size() == (long)g.primes.size()) return "A";
    std::ostringstream os;
    os << "A[";
    bool first = true;
    for (long p : I) {
        if (!first) os << ',';
        first = false;
        os << p;
    }
    os << "]xZ";
    return os.str();
}

FgAbelianGroup cohomology_A_group(const VirtualRep& alpha, const CoeffSystem& c) {
    static std::map<std::string, FgAbelianGroup> cache;
    std::string key = cache_key(alpha, c);
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    GroupSpec g(alpha.n);
    auto dims = fixed_dims(alpha);
    std::vector<int> idx = prime_indices(g, c);
    bool even = alpha.virtual_dim() % 2 == 0;
    long rank = 0;
    std::map<long, long> tors;  // prime -> exponent
    for (unsigned sub = 0; sub < (1u << idx.size()); ++sub) {
        long dS = 1;
        unsigned in_S = 0;
        for (size_t j = 0; j < idx.size(); ++j)
            if (sub & (1u << j)) {
                dS *= g.primes[idx[j]];
                in_S |= 1u << idx[j];
            }
        long a0 = dims.at(dS);
        if (even && a0 == 0) ++rank;
        for (size_t i = 0; i < g.primes.size(); ++i) {
            if (in_S & (1u << i)) continue;
            long p = g.primes[i];
            long a1 = dims.at(dS * p);
            if (even) {
                bool burnside_prime = c.I.count(p) > 0;
                if (a0 > 0 && (burnside_prime ? a1 < 0 : a1 <= 0)) ++tors[p];
            } else {
                if (a0 < 0 && a1 > 1) ++tors[p];
            }
        }
    }
    std::vector<Int> orders(rank, Int(0));
    for (auto [p, e] : tors)
        for (long t = 0; t < e; ++t) orders.push_back(Int(p));
    FgAbelianGroup out = group_from_orders(orders);
    std::lock_guard<std::mutex> lk(cache_mutex);
    cache.emplace(std::move(key), out);
    return out;
}

ACohomologyAnswer cohomology_A_mackey(const VirtualRep& alpha, const CoeffSystem& c) {
    GroupSpec g(alpha.n);
    ACohomologyAnswer ans;
    ans.grading = alpha;
    ans.group_at_top = cohomology_A_group(alpha, c);

    auto dims = fixed_dims(alpha);
    std::vector<int> idx = prime_indices(g, c);
    bool rel_nonzero = nonzero_below_CI(g, dims, idx);
    ans.grading_class = rel_nonzero ? GradingClass::NonZero : classify(alpha);

    if (c.I.empty()) {
        ans.mackey = cohomology_Z(alpha).mackey;
        return ans;
    }
    if (!rel_nonzero && ans.grading_class == GradingClass::ManyZeros) {
        ans.rep_dependent = true;
        return ans;
    }
    bool strip = !rel_nonzero;  // mostly non-zero: apply the zeta stripping
    MackeyExpr total;
    for (unsigned sub = 0; sub < (1u << idx.size()); ++sub) {
        long dS = 1;
        unsigned mask = 0;
        for (size_t j = 0; j < idx.size(); ++j)
            if (sub & (1u << j)) {
                dS *= g.primes[idx[j]];
                mask |= 1u << idx[j];
            }
        GroupSpec quot(g.n / dS);
        MackeyExpr inner = cohomology_Z(quotient_fixed(alpha, dS)).mackey;
        if (strip && !inner.is_zero()) {
            std::set<long> kill;
            for (int i : zeta_set(g, alpha, mask))
                if (c.I.count(g.primes[i]) && dS % g.primes[i] != 0) kill.insert(g.primes[i]);
            inner = strip_brackets(quot, inner, kill);
        }
        total = expr_sum(total, embed_with_brackets(g, dS, inner));
    }
    ans.mackey = total;
    return ans;
}

MackeyExpr bZ_reduction(const VirtualRep& alpha, long p, const MackeyExpr& inner) {
    GroupSpec g(alpha.n);
    if (std::find(g.primes.begin(), g.primes.end(), p) == g.primes.end())
        throw std::runtime_error("bZ_reduction: p must be a prime factor of n");
    return embed_with_brackets(g, p, inner);
}

}  // namespace eqcoh
