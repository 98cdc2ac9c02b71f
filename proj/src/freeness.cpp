#include "eqcoh/freeness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eqcoh {

long SchubertSymbol::total() const { return std::accumulate(a.begin(), a.end(), 0L); }

std::string SchubertSymbol::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

bool ll_dims(const GroupSpec& g, const std::map<long, long>& W, const std::map<long, long>& V) {
    for (long s : g.divisors) {
        if (W.at(s) >= V.at(s)) continue;
        for (long t : g.divisors)
            if (t % s == 0 && W.at(t) > V.at(t)) return false;
    }
    return true;
}

bool ll_compare(const VirtualRep& W, const VirtualRep& V) {
    GroupSpec g(W.n);
    return ll_dims(g, fixed_dims(W), fixed_dims(V));
}

namespace {

bool is_actual(const VirtualRep& v) {
    if (v.trivial < 0) return false;
    for (auto& [d, c] : v.twists)
        if (c < 0) return false;
    return true;
}

std::string dims_str(const GroupSpec& g, const std::map<long, long>& dims) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < g.divisors.size(); ++i)
        os << (i ? "," : "") << dims.at(g.divisors[i]);
    os << ")";
    return os.str();
}

}  // namespace

EvenTypeReport check_even_type(const GroupSpec& g, const std::vector<CellSpec>& cells,
                               const std::vector<std::map<long, long>>* dims_override) {
    EvenTypeReport rep;
    std::vector<std::map<long, long>> dims;
    dims.reserve(cells.size());
    for (size_t i = 0; i < cells.size(); ++i)
        dims.push_back(dims_override ? dims_override->at(i) : fixed_dims(cells[i].rep));

    for (size_t i = 0; i < cells.size(); ++i) {
        if (!is_actual(cells[i].rep))
            rep.problems.push_back("cell " + std::to_string(i) + " is virtual: " +
                                   cells[i].rep.str());
        for (long d : g.divisors)
            if (dims[i].at(d) % 2 != 0) {
                rep.problems.push_back("cell " + std::to_string(i) + " has odd fixed dims " +
                                       dims_str(g, dims[i]));
                break;
            }
    }
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j) {
            // attachment must be by weakly increasing total dimension; the
            // << implication alone is vacuous whenever the earlier cell
            // dominates the later one, which is exactly the situation the
            // freeness argument cannot tolerate
            if (dims[i].at(1) > dims[j].at(1)) {
                rep.problems.push_back("cell " + std::to_string(i) + " (dim " +
                                       std::to_string(dims[i].at(1)) + ") attached before cell " +
                                       std::to_string(j) + " (dim " +
                                       std::to_string(dims[j].at(1)) + ")");
                continue;
            }
            if (!ll_dims(g, dims[i], dims[j]))
                rep.problems.push_back("cells " + std::to_string(i) + " and " +
                                       std::to_string(j) + " violate the attachment order: " +
                                       dims_str(g, dims[i]) + " !<< " + dims_str(g, dims[j]));
        }

    rep.ok = rep.problems.empty();
    if (rep.ok)
        for (const CellSpec& c : cells) rep.basis.push_back({c.rep, c.isotropy});
    return rep;
}

std::vector<CellSpec> cp_cells(const GroupSpec& g, long m_top) {
    std::vector<CellSpec> out;
    std::map<long, long> raw;
    for (long r = 0; r <= m_top; ++r) {
        if (r > 0) raw[-r] += 1;
        out.push_back({g.n, rep_from_raw(g.n, 0, raw)});
    }
    return out;
}

std::map<long, long> cp_dims_floor(const GroupSpec& g, long r) {
    std::map<long, long> out;
    for (long d : g.divisors) out[d] = 2 * (r / d);
    return out;
}

std::vector<GrassmannCell> grassmann_cells(const GroupSpec& g, long l, long m) {
    if (m < 1 || m > l) throw std::invalid_argument("grassmann_cells: need 1 <= m <= l");
    std::vector<GrassmannCell> out;
    std::vector<long> a(m, 0);
    while (true) {
        GrassmannCell row;
        row.symbol.a = a;
        std::map<long, long> raw;
        for (long i = 1; i <= m; ++i) {
            std::vector<bool> excluded(a[i - 1] + i, false);
            for (long k = 1; k < i; ++k) {
                long e = a[k - 1] + k;
                if (e < static_cast<long>(excluded.size())) excluded[e] = true;
            }
            for (long j = 1; j <= a[i - 1] + i - 1; ++j)
                if (!excluded[j]) raw[j - (a[i - 1] + i)] += 1;
        }
        row.cell = {g.n, rep_from_raw(g.n, 0, raw)};
        row.dims_direct = fixed_dims(row.cell.rep);
        for (long d : g.divisors) {
            long s = 0;
            for (long ai : a) s += ai / d;
            row.dims_floor[d] = 2 * s;
        }
        row.mismatch = row.dims_direct != row.dims_floor;
        out.push_back(std::move(row));

        // next monotone symbol
        long i = m - 1;
        while (i >= 0 && a[i] == l - m) --i;
        if (i < 0) break;
        long v = a[i] + 1;
        for (long k = i; k < m; ++k) a[k] = v;
    }
    std::stable_sort(out.begin(), out.end(), [](const GrassmannCell& x, const GrassmannCell& y) {
        long tx = x.symbol.total(), ty = y.symbol.total();
        return tx != ty ? tx < ty : x.symbol.a < y.symbol.a;
    });
    return out;
}

}  // namespace eqcoh
