#include "eqcoh/cellular.hpp"

#include <array>
#include <cassert>
#include <numeric>
#include <sstream>

namespace eqcoh {

namespace {

long lcml(long a, long b) { return a / std::gcd(a, b) * b; }

long pmod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// smallest nonnegative w with w = 0 mod A and w = r mod B; gcd(A, B) | r
long crt_zero_mod(long A, long B, long r, long n) {
    long g = std::gcd(A, B);
    assert(r % g == 0);
    // k * A = r mod B  =>  k = (r/g) * (A/g)^{-1} mod B/g
    long Bg = B / g;
    long Ag = pmod(A / g, Bg);
    long inv = 1;
    for (long c = 0; c < Bg; ++c)
        if (Ag * c % Bg == 1 % Bg) {
            inv = c;
            break;
        }
    long k = pmod(r / g % Bg * inv, Bg);
    return pmod(A * k, n);
}

void add_term(GroupRingElt& e, long exp, long coeff) {
    long& c = e[exp];
    c += coeff;
    if (c == 0) e.erase(exp);
}

EquivChainComplex point_complex(const GroupSpec& g) {
    EquivChainComplex c;
    c.spec = g;
    c.cells = {{g.n}};
    c.boundary.resize(1);
    return c;
}

EquivChainComplex circle_complex(const GroupSpec& g, long r) {
    const long n = g.n;
    const long d = std::gcd(r, n);
    // rho^t rotates the circle by one vertex: t * (r/d) = 1 mod n/d
    long t = 1;
    const long q = n / d;
    for (long c = 1; c <= q; ++c)
        if (c * (r / d) % q == 1 % q) {
            t = c;
            break;
        }
    EquivChainComplex c;
    c.spec = g;
    c.cells = {{n}, {d}, {d}};
    c.boundary.resize(3);
    c.boundary[1][{0, 0}] = GroupRingElt{{0, 1}};
    GroupRingElt edge;
    add_term(edge, pmod(t, n / d), 1);
    add_term(edge, 0, -1);
    c.boundary[2][{0, 0}] = edge;
    return c;
}

EquivChainComplex circle_complex_unaugmented(const GroupSpec& g, long d) {
    EquivChainComplex c = circle_complex(g, d);
    c.cells[0].clear();
    c.boundary[1].clear();
    return c;
}

// join of augmented complexes: degree q of the result collects degree
// (q1, q2) pairs with q1 + q2 + 1 = q, and each pair of orbits G/C_a x G/C_b
// splits into n/lcm(a, b) orbits G/C_gcd(a,b) with representatives
// (e C_a, rho^j C_b)
EquivChainComplex join(const EquivChainComplex& X, const EquivChainComplex& Y) {
    const GroupSpec& g = X.spec;
    const long n = g.n;
    const long NX = static_cast<long>(X.cells.size());
    const long NY = static_cast<long>(Y.cells.size());
    EquivChainComplex out;
    out.spec = g;
    out.cells.resize(NX + NY - 1);
    out.boundary.resize(NX + NY - 1);

    // base[(i, x, j, y)] = first flat cell index of the orbit copies
    std::map<std::array<long, 4>, long> base;
    for (long q = 0; q < NX + NY - 1; ++q)
        for (long i = std::max(0L, q - NY + 1); i < std::min(NX, q + 1); ++i) {
            long j = q - i;
            for (long x = 0; x < (long)X.cells[i].size(); ++x)
                for (long y = 0; y < (long)Y.cells[j].size(); ++y) {
                    long a = X.cells[i][x], b = Y.cells[j][y];
                    long copies = n / lcml(a, b);
                    base[{i, x, j, y}] = (long)out.cells[q].size();
                    for (long c = 0; c < copies; ++c)
                        out.cells[q].push_back(std::gcd(a, b));
                }
        }

    for (long q = 1; q < NX + NY - 1; ++q)
        for (long i = std::max(0L, q - NY + 1); i < std::min(NX, q + 1); ++i) {
            long j = q - i;
            for (long x = 0; x < (long)X.cells[i].size(); ++x)
                for (long y = 0; y < (long)Y.cells[j].size(); ++y) {
                    long a = X.cells[i][x], b = Y.cells[j][y];
                    long copies = n / lcml(a, b);
                    long src0 = base.at({i, x, j, y});
                    for (long c = 0; c < copies; ++c) {
                        long src = src0 + c;
                        if (i >= 1) {
                            for (const auto& [key, elt] : X.boundary[i]) {
                                if (key.second != x) continue;
                                long xp = key.first;
                                long ap = X.cells[i - 1][xp];
                                long copies_t = n / lcml(ap, b);
                                long tgt0 = base.at({i - 1, xp, j, y});
                                long nmod = n / std::gcd(ap, b);
                                for (const auto& [u, cf] : elt) {
                                    // (rho^u C_a', rho^c C_b) lands in copy
                                    // iota, shifted by a group element that
                                    // fixes the first coordinate
                                    long iota = pmod(c - u, copies_t);
                                    long w = crt_zero_mod(n / ap, n / b, pmod(c - u - iota, n), n);
                                    auto& entry = out.boundary[q][{tgt0 + iota, src}];
                                    add_term(entry, pmod(u + w, nmod), cf);
                                    if (entry.empty()) out.boundary[q].erase({tgt0 + iota, src});
                                }
                            }
                        }
                        if (j >= 1) {
                            long sign = ((i - 1) % 2 != 0) ? -1 : 1;  // Koszul, degree of x is i-1
                            for (const auto& [key, elt] : Y.boundary[j]) {
                                if (key.second != y) continue;
                                long yp = key.first;
                                long bp = Y.cells[j - 1][yp];
                                long copies_t = n / lcml(a, bp);
                                long tgt0 = base.at({i, x, j - 1, yp});
                                long nmod = n / std::gcd(a, bp);
                                for (const auto& [v, cf] : elt) {
                                    long iota = pmod(c + v, copies_t);
                                    long w = crt_zero_mod(n / a, n / bp, pmod(c + v - iota, n), n);
                                    auto& entry = out.boundary[q][{tgt0 + iota, src}];
                                    add_term(entry, pmod(w, nmod), sign * cf);
                                    if (entry.empty()) out.boundary[q].erase({tgt0 + iota, src});
                                }
                            }
                        }
                    }
                }
        }
    return out;
}

}  // namespace

bool EquivChainComplex::formal_square_zero() const {
    for (size_t q = 2; q < cells.size(); ++q) {
        // composite of boundary[q] followed by boundary[q-1]
        std::map<std::pair<long, long>, GroupRingElt> comp;
        for (const auto& [k1, e1] : boundary[q])
            for (const auto& [k2, e2] : boundary[q - 1]) {
                if (k2.second != k1.first) continue;
                long nmod = spec.n / cells[q - 2][k2.first];
                auto& acc = comp[{k2.first, k1.second}];
                for (const auto& [u, cu] : e1)
                    for (const auto& [v, cv] : e2) add_term(acc, pmod(u + v, nmod), cu * cv);
            }
        for (const auto& [key, e] : comp)
            if (!e.empty()) return false;
    }
    return true;
}

std::string EquivChainComplex::str() const {
    std::ostringstream os;
    os << "complex n=" << spec.n << "\n";
    for (size_t i = 0; i < cells.size(); ++i) {
        os << "degree " << (long)i - 1 << ":";
        for (long d : cells[i]) os << " G/C" << d;
        os << "\n";
        if (i == 0) continue;
        for (const auto& [key, e] : boundary[i]) {
            os << "  d(" << key.second << ") -> " << key.first << ":";
            for (const auto& [u, c] : e) os << " " << (c >= 0 ? "+" : "") << c << "*r^" << u;
            os << "\n";
        }
    }
    return os.str();
}

EquivChainComplex sphere_complex(const GroupSpec& g, const std::vector<long>& exponents) {
    for (long r : exponents)
        if (r < 1 || r >= g.n) throw std::invalid_argument("sphere_complex: exponent out of range");
    EquivChainComplex c = point_complex(g);
    for (long r : exponents) c = join(c, circle_complex(g, r));
    return c;
}

EquivChainComplex morse_reduce(const EquivChainComplex& c) {
    const long n = c.spec.n;
    const long N = static_cast<long>(c.cells.size());
    std::vector<std::vector<long>> cells = c.cells;
    std::vector<std::vector<bool>> alive(N);
    for (long q = 0; q < N; ++q) alive[q].assign(cells[q].size(), true);
    auto bd = c.boundary;

    bool progress = true;
    while (progress) {
        progress = false;
        for (long q = 1; q < N; ++q) {
            // an invertible entry: single term, coefficient +-1, same divisor
            std::pair<long, long> pk{-1, -1};
            for (const auto& [key, e] : bd[q]) {
                if (e.size() != 1) continue;
                long cf = e.begin()->second;
                if (cf != 1 && cf != -1) continue;
                if (cells[q][key.second] != cells[q - 1][key.first]) continue;
                pk = key;
                break;
            }
            if (pk.first < 0) continue;
            progress = true;
            const long ty = pk.first, sx = pk.second;
            const long d = cells[q][sx];
            const long ainv_exp = pmod(-bd[q].at(pk).begin()->first, n / d);
            const long ainv_cf = bd[q].at(pk).begin()->second;  // +-1 is its own inverse

            std::map<long, GroupRingElt> row, col;  // other entries hitting y / leaving x
            for (const auto& [key, e] : bd[q]) {
                if (key.first == ty && key.second != sx) row[key.second] = e;
                if (key.second == sx && key.first != ty) col[key.first] = e;
            }
            for (const auto& [s2, b] : row)
                for (const auto& [t2, cc] : col) {
                    long nmod = n / cells[q - 1][t2];
                    auto& acc = bd[q][{t2, s2}];
                    for (const auto& [eb, cb] : b)
                        for (const auto& [ec2, cc2] : cc)
                            add_term(acc, pmod(eb + ainv_exp + ec2, nmod),
                                     -cb * ainv_cf * cc2);
                    if (acc.empty()) bd[q].erase({t2, s2});
                }
            for (auto it = bd[q].begin(); it != bd[q].end();)
                it = (it->first.first == ty || it->first.second == sx) ? bd[q].erase(it) : ++it;
            if (q + 1 < N)
                for (auto it = bd[q + 1].begin(); it != bd[q + 1].end();)
                    it = (it->first.first == sx) ? bd[q + 1].erase(it) : ++it;
            if (q >= 2)
                for (auto it = bd[q - 1].begin(); it != bd[q - 1].end();)
                    it = (it->first.second == ty) ? bd[q - 1].erase(it) : ++it;
            alive[q][sx] = false;
            alive[q - 1][ty] = false;
        }
    }

    EquivChainComplex out;
    out.spec = c.spec;
    out.cells.resize(N);
    out.boundary.resize(N);
    std::vector<std::vector<long>> renum(N);
    for (long q = 0; q < N; ++q) {
        renum[q].assign(cells[q].size(), -1);
        for (size_t i = 0; i < cells[q].size(); ++i)
            if (alive[q][i]) {
                renum[q][i] = (long)out.cells[q].size();
                out.cells[q].push_back(cells[q][i]);
            }
    }
    for (long q = 1; q < N; ++q)
        for (const auto& [key, e] : bd[q])
            out.boundary[q][{renum[q - 1][key.first], renum[q][key.second]}] = e;
    // trailing empty degrees can be dropped
    while (out.cells.size() > 1 && out.cells.back().empty()) {
        out.cells.pop_back();
        out.boundary.pop_back();
    }
    return out;
}

IntMat EvaluatedComplex::dense_diff(long i) const {
    long rows, cols;
    if (variance == Variance::Homology) {
        rows = groups[i - 1].ngens();
        cols = groups[i].ngens();
    } else {
        rows = groups[i].ngens();
        cols = groups[i - 1].ngens();
    }
    IntMat m(rows, cols);
    for (const auto& t : diff[i]) m.at(t.r, t.c) += t.v;
    return m;
}

EvaluatedComplex evaluate(const EquivChainComplex& c, const MackeyTable& coeff, long m,
                          Variance v) {
    const long n = c.spec.n;
    for (const auto& [d, mat] : coeff.conj)
        if (!(mat == IntMat::identity(coeff.level(d).ngens())))
            throw ConjugationNontrivial("evaluate: coefficient table has a nontrivial Weyl action");

    EvaluatedComplex ec;
    ec.level = m;
    ec.variance = v;
    const long N = static_cast<long>(c.cells.size());
    ec.groups.resize(N);
    ec.diff.resize(N);

    // offsets[i][cell] = first generator of the cell's copy block
    std::vector<std::vector<long>> off(N);
    for (long i = 0; i < N; ++i) {
        for (long s = 0; s < (long)c.cells[i].size(); ++s) {
            long d = c.cells[i][s];
            long copies = n / lcml(m, d);
            const BasedGroup& blk = coeff.level(std::gcd(m, d));
            off[i].push_back(ec.groups[i].ngens());
            for (long cp = 0; cp < copies; ++cp)
                ec.groups[i].orders.insert(ec.groups[i].orders.end(), blk.orders.begin(),
                                           blk.orders.end());
        }
    }

    for (long i = 1; i < N; ++i) {
        for (const auto& [key, elt] : c.boundary[i]) {
            long s = key.second, t = key.first;
            long sd = c.cells[i][s], td = c.cells[i - 1][t];
            long gs = std::gcd(m, sd), gt = std::gcd(m, td);
            long copies_s = n / lcml(m, sd), copies_t = n / lcml(m, td);
            long bs = coeff.level(gs).ngens(), bt = coeff.level(gt).ngens();
            IntMat blk = (v == Variance::Homology) ? coeff.tr_to(gs, gt) : coeff.res_to(gt, gs);
            for (const auto& [u, cf] : elt)
                for (long j = 0; j < copies_s; ++j) {
                    long iota = pmod(j + u, copies_t);
                    long so = off[i][s] + j * bs;
                    long to = off[i - 1][t] + iota * bt;
                    for (long a = 0; a < blk.rows; ++a)
                        for (long b = 0; b < blk.cols; ++b) {
                            if (blk.at(a, b) == 0) continue;
                            Int val = cf * blk.at(a, b);
                            if (v == Variance::Homology)
                                ec.diff[i].push_back({to + a, so + b, val});
                            else
                                ec.diff[i].push_back({so + a, to + b, val});
                        }
                }
        }
    }
    return ec;
}

namespace {

// chain-oriented view: groups G[0..N-1], D[i]: G[i] -> G[i-1]
struct ChainView {
    std::vector<const BasedGroup*> G;
    std::vector<std::vector<SparseTriplet>> D;  // D[0] unused
};

ChainView chain_view(const EvaluatedComplex& ec) {
    const long N = static_cast<long>(ec.groups.size());
    ChainView cv;
    cv.G.resize(N);
    cv.D.resize(N);
    if (ec.variance == Variance::Homology) {
        for (long i = 0; i < N; ++i) cv.G[i] = &ec.groups[i];
        for (long i = 1; i < N; ++i) cv.D[i] = ec.diff[i];
    } else {
        // reverse the indexing so arrows again lower the index; triplets keep
        // their (row, col) meaning
        for (long i = 0; i < N; ++i) cv.G[i] = &ec.groups[N - 1 - i];
        for (long i = 1; i < N; ++i) cv.D[N - i] = ec.diff[i];
    }
    return cv;
}

std::vector<std::map<long, Int>> by_column(const std::vector<SparseTriplet>& ts, long cols) {
    std::vector<std::map<long, Int>> col(cols);
    for (const auto& t : ts) {
        Int& e = col[t.c][t.r];
        e += t.v;
        if (e == 0) col[t.c].erase(t.r);
    }
    return col;
}

}  // namespace

namespace {

// free resolution of the chain-oriented complex: each torsion generator of
// G[i] adds a generator one degree up, mapping by its order; the lifted
// differential on those generators is the original one rescaled by the order
// ratio. Valid because the integer matrices square to zero strictly (checked).
struct ResolvedComplex {
    ChainView cv;
    long N = 0;
    std::vector<std::vector<std::map<long, Int>>> cols;
    std::vector<std::vector<long>> tslot;  // positions of torsion generators

    long fsize(long j) const {
        long f = (j < N) ? cv.G[j]->ngens() : 0;
        return f + (j >= 1 ? (long)tslot[j - 1].size() : 0);
    }

    std::vector<SparseTriplet> build(long j) const {  // D'_j : j -> j-1
        std::vector<SparseTriplet> out;
        long fj = (j < N) ? cv.G[j]->ngens() : 0;
        long fjm = cv.G[j - 1]->ngens();
        if (j < N) out = cv.D[j];
        std::map<long, long> tpos;
        if (j >= 2)
            for (long a = 0; a < (long)tslot[j - 2].size(); ++a) tpos[tslot[j - 2][a]] = a;
        for (long sidx = 0; sidx < (long)tslot[j - 1].size(); ++sidx) {
            long p = tslot[j - 1][sidx];
            const Int& o_src = cv.G[j - 1]->orders[p];
            out.push_back({p, fj + sidx, o_src});
            if (j < 2) continue;
            for (const auto& [r, v] : cols[j - 1][p]) {
                const Int& o_tgt = cv.G[j - 2]->orders[r];
                Int num = v * o_src;
                if (o_tgt == 0) {
                    if (num != 0)
                        throw std::runtime_error(
                            "evaluated_homology: differential not defined on torsion");
                    continue;
                }
                assert(num % o_tgt == 0);
                out.push_back({fjm + tpos.at(r), fj + sidx, -(num / o_tgt)});
            }
        }
        return out;
    }
};

ResolvedComplex resolve(const EvaluatedComplex& ec) {
    ResolvedComplex rc;
    rc.N = static_cast<long>(ec.groups.size());
    rc.cv = chain_view(ec);
    const long N = rc.N;
    rc.cols.resize(N);
    for (long i = 1; i < N; ++i) rc.cols[i] = by_column(rc.cv.D[i], rc.cv.G[i]->ngens());
    // strict d^2 = 0 on the integer matrices is what lets torsion in the
    // coefficient values be replaced by its free resolution
    for (long i = 2; i < N; ++i)
        for (long c = 0; c < rc.cv.G[i]->ngens(); ++c) {
            std::map<long, Int> acc;
            for (const auto& [r, v] : rc.cols[i][c])
                for (const auto& [r2, v2] : rc.cols[i - 1][r]) {
                    Int& e = acc[r2];
                    e += v * v2;
                    if (e == 0) acc.erase(r2);
                }
            if (!acc.empty())
                throw std::runtime_error("evaluated_homology: differentials do not square to zero");
        }
    rc.tslot.resize(N);
    for (long i = 0; i < N; ++i)
        for (long p = 0; p < rc.cv.G[i]->ngens(); ++p)
            if (rc.cv.G[i]->orders[p] != 0) rc.tslot[i].push_back(p);
    return rc;
}

// the chain group splits off its image freely, so the torsion of the homology
// is exactly the torsion of coker of the incoming differential
FgAbelianGroup homology_from_ranks(long middle, long rankA, const SparseSmithResult& sB) {
    long free = middle - rankA - sB.rank;
    assert(free >= 0);
    std::vector<Int> orders(free, Int(0));
    orders.insert(orders.end(), sB.nonunit.begin(), sB.nonunit.end());
    return group_from_orders(orders);
}

}  // namespace

FgAbelianGroup evaluated_homology(const EvaluatedComplex& ec, long k) {
    const long N = static_cast<long>(ec.groups.size());
    const long kq = (ec.variance == Variance::Homology) ? k : N - 1 - k;
    if (kq < 0 || kq >= N) return {};
    ResolvedComplex rc = resolve(ec);
    long rankA = 0;
    if (kq >= 1) rankA = sparse_smith(rc.fsize(kq - 1), rc.fsize(kq), rc.build(kq)).rank;
    SparseSmithResult sB = sparse_smith(rc.fsize(kq), rc.fsize(kq + 1), rc.build(kq + 1));
    return homology_from_ranks(rc.fsize(kq), rankA, sB);
}

std::vector<FgAbelianGroup> evaluated_homology_all(const EvaluatedComplex& ec) {
    const long N = static_cast<long>(ec.groups.size());
    ResolvedComplex rc = resolve(ec);
    std::vector<SparseSmithResult> sm(N + 1);
    for (long j = 1; j <= N; ++j) sm[j] = sparse_smith(rc.fsize(j - 1), rc.fsize(j), rc.build(j));
    std::vector<FgAbelianGroup> out(N);
    for (long kq = 0; kq < N; ++kq) {
        long degree = (ec.variance == Variance::Homology) ? kq : N - 1 - kq;
        out[degree] = homology_from_ranks(rc.fsize(kq), kq >= 1 ? sm[kq].rank : 0, sm[kq + 1]);
    }
    return out;
}

FgAbelianGroup bredon_homology(const GroupSpec& g, const std::vector<long>& exponents, long k,
                               const MackeyTable& coeff, long m) {
    if (k < 0) return {};
    EquivChainComplex c = morse_reduce(sphere_complex(g, exponents));
    return evaluated_homology(evaluate(c, coeff, m, Variance::Homology), k);
}

FgAbelianGroup bredon_cohomology(const GroupSpec& g, const std::vector<long>& exponents, long k,
                                 const MackeyTable& coeff, long m) {
    if (k < 0) return {};
    EquivChainComplex c = morse_reduce(sphere_complex(g, exponents));
    return evaluated_homology(evaluate(c, coeff, m, Variance::Cohomology), k);
}

namespace {

// chain map between evaluations of the same complex at two levels, at degree
// index i. kind: true for restriction (value at dp spreads over the extra
// copies at d), false for transfer (copies at d fold down onto dp).
IntMat level_chain_map(const EquivChainComplex& c, const MackeyTable& coeff, long d, long dp,
                       long i, bool restriction, const EvaluatedComplex& ec_d,
                       const EvaluatedComplex& ec_dp) {
    const long n = c.spec.n;
    long rows = restriction ? ec_d.groups[i].ngens() : ec_dp.groups[i].ngens();
    long colsn = restriction ? ec_dp.groups[i].ngens() : ec_d.groups[i].ngens();
    IntMat M(rows, colsn);
    long off_d = 0, off_dp = 0;
    for (long s = 0; s < (long)c.cells[i].size(); ++s) {
        long sd = c.cells[i][s];
        long gd = std::gcd(d, sd), gdp = std::gcd(dp, sd);
        long cd = n / lcml(d, sd), cdp = n / lcml(dp, sd);
        long bd = coeff.level(gd).ngens(), bdp = coeff.level(gdp).ngens();
        IntMat blk = restriction ? coeff.res_to(gdp, gd) : coeff.tr_to(gd, gdp);
        for (long j = 0; j < cd; ++j) {
            long jp = j % cdp;
            for (long a = 0; a < blk.rows; ++a)
                for (long b = 0; b < blk.cols; ++b) {
                    if (blk.at(a, b) == 0) continue;
                    if (restriction)
                        M.at(off_d + j * bd + a, off_dp + jp * bdp + b) += blk.at(a, b);
                    else
                        M.at(off_dp + jp * bdp + a, off_d + j * bd + b) += blk.at(a, b);
                }
        }
        off_d += cd * bd;
        off_dp += cdp * bdp;
    }
    return M;
}

struct LevelHomology {
    EvaluatedComplex ec;
    HomologyData hd;
};

HomologyData homology_at_index(const EvaluatedComplex& ec, long k) {
    const long N = static_cast<long>(ec.groups.size());
    BasedGroup empty;
    const BasedGroup& C = ec.groups[k];
    if (ec.variance == Variance::Homology) {
        const BasedGroup& Cin = (k + 1 < N) ? ec.groups[k + 1] : empty;
        const BasedGroup& Cout = (k >= 1) ? ec.groups[k - 1] : empty;
        IntMat din = (k + 1 < N) ? ec.dense_diff(k + 1) : IntMat(C.ngens(), 0);
        IntMat dout = (k >= 1) ? ec.dense_diff(k) : IntMat(0, C.ngens());
        return homology_at(Cin, din, C, dout, Cout);
    }
    const BasedGroup& Cin = (k >= 1) ? ec.groups[k - 1] : empty;
    const BasedGroup& Cout = (k + 1 < N) ? ec.groups[k + 1] : empty;
    IntMat din = (k >= 1) ? ec.dense_diff(k) : IntMat(C.ngens(), 0);
    IntMat dout = (k + 1 < N) ? ec.dense_diff(k + 1) : IntMat(0, C.ngens());
    return homology_at(Cin, din, C, dout, Cout);
}

// does the chain map at indices k-1, k, k+1 commute with the differentials
// around index k, modulo the ambient orders of the target level
void check_chain_map(const EquivChainComplex& c, const MackeyTable& coeff, long d, long dp,
                     bool restriction, const EvaluatedComplex& src, const EvaluatedComplex& tgt,
                     long k) {
    const long N = static_cast<long>(src.groups.size());
    auto cmap = [&](long i) {
        return restriction ? level_chain_map(c, coeff, d, dp, i, true, tgt, src)
                           : level_chain_map(c, coeff, d, dp, i, false, src, tgt);
    };
    auto tgt_diff_pair = [&](long i) {  // (src level diff, tgt level diff) at index i
        return std::make_pair(src.dense_diff(i), tgt.dense_diff(i));
    };
    for (long i = std::max(1L, k); i <= std::min(N - 1, k + 1); ++i) {
        auto [ds, dt] = tgt_diff_pair(i);
        IntMat lhs, rhs;
        long tgt_index;
        if (src.variance == Variance::Homology) {
            lhs = cmap(i - 1).mul(ds);
            rhs = dt.mul(cmap(i));
            tgt_index = i - 1;
        } else {
            lhs = cmap(i).mul(ds);
            rhs = dt.mul(cmap(i - 1));
            tgt_index = i;
        }
        if (!maps_equal_mod(lhs, rhs, tgt.groups[tgt_index]))
            throw std::runtime_error("mackey_assemble: chain map does not commute");
    }
}

IntMat induced_on_homology(const IntMat& cmap, const HomologyData& src, const HomologyData& tgt) {
    IntMat out((long)tgt.gen_orders.size(), (long)src.gen_orders.size());
    for (long j = 0; j < src.gens.cols; ++j) {
        std::vector<Int> v(cmap.rows, Int(0));
        for (long r = 0; r < cmap.rows; ++r)
            for (long cidx = 0; cidx < cmap.cols; ++cidx)
                if (cmap.at(r, cidx) != 0 && src.gens.at(cidx, j) != 0)
                    v[r] += cmap.at(r, cidx) * src.gens.at(cidx, j);
        std::vector<Int> coords = coordinates_of_cycle(tgt, v);
        for (size_t r = 0; r < coords.size(); ++r) out.at((long)r, j) = coords[r];
    }
    return out;
}

}  // namespace

MackeyTable mackey_assemble(const GroupSpec& g, const std::vector<long>& exponents, long k,
                            const MackeyTable& coeff, Variance v) {
    return assemble_complex(g, morse_reduce(sphere_complex(g, exponents)), k, coeff, v);
}

EquivChainComplex sphere_boundary_smash(const GroupSpec& g, const std::vector<long>& W, long d) {
    if (d < 1 || g.n % d != 0 || d == g.n)
        throw std::invalid_argument("sphere_boundary_smash: d must be a proper divisor");
    EquivChainComplex base = sphere_complex(g, W);
    EquivChainComplex circ = circle_complex_unaugmented(g, d);
    EquivChainComplex sm = join(base, circ);
    // index 0 pairs the base augmentation with the removed circle
    // augmentation, so it is empty; dropping it restores the degree-k-at-
    // index-k convention for the smash
    sm.cells.erase(sm.cells.begin());
    sm.boundary.erase(sm.boundary.begin());
    sm.boundary[0].clear();
    return sm;
}

MackeyTable assemble_complex(const GroupSpec& g, const EquivChainComplex& c, long k,
                             const MackeyTable& coeff, Variance v) {
    const long N = static_cast<long>(c.cells.size());
    const long n = g.n;
    if (k < 0 || k >= N) {
        MackeyTable t;
        t.spec = g;
        for (long d : g.divisors) t.levels[d] = BasedGroup{};
        for (long d : g.divisors)
            for (long p : g.primes)
                if (d * p <= n && n % (d * p) == 0) {
                    t.res[{d * p, d}] = IntMat(0, 0);
                    t.tr[{d, d * p}] = IntMat(0, 0);
                }
        return t;
    }

    std::map<long, LevelHomology> lv;
    for (long d : g.divisors) {
        LevelHomology L;
        L.ec = evaluate(c, coeff, d, v);
        L.hd = homology_at_index(L.ec, k);
        lv[d] = std::move(L);
    }

    // the group generator must act trivially on each level before the values
    // can be read as a Mackey functor with identity conjugations
    for (long d : g.divisors) {
        const EvaluatedComplex& ec = lv[d].ec;
        long ng = ec.groups[k].ngens();
        IntMat P(ng, ng);
        long offset = 0;
        for (long s = 0; s < (long)c.cells[k].size(); ++s) {
            long sd = c.cells[k][s];
            long copies = n / lcml(d, sd);
            long bs = coeff.level(std::gcd(d, sd)).ngens();
            for (long j = 0; j < copies; ++j) {
                long jt = pmod(j - 1, copies);
                for (long a = 0; a < bs; ++a) P.at(offset + jt * bs + a, offset + j * bs + a) = 1;
            }
            offset += copies * bs;
        }
        IntMat act = induced_on_homology(P, lv[d].hd, lv[d].hd);
        IntMat id = IntMat::identity((long)lv[d].hd.gen_orders.size());
        IntMat idc = id;
        BasedGroup hg{lv[d].hd.gen_orders};
        if (!maps_equal_mod(act, idc, hg))
            throw std::runtime_error("mackey_assemble: Weyl action is not the identity");
    }

    MackeyTable t;
    t.spec = g;
    for (long d : g.divisors) t.levels[d] = BasedGroup{lv[d].hd.gen_orders};
    for (long d : g.divisors)
        for (long p : g.primes) {
            long dp = d * p;
            if (n % dp != 0) continue;
            check_chain_map(c, coeff, d, dp, true, lv[dp].ec, lv[d].ec, k);
            check_chain_map(c, coeff, d, dp, false, lv[d].ec, lv[dp].ec, k);
            IntMat rmap = level_chain_map(c, coeff, d, dp, k, true, lv[d].ec, lv[dp].ec);
            IntMat tmap = level_chain_map(c, coeff, d, dp, k, false, lv[d].ec, lv[dp].ec);
            t.res[{dp, d}] = induced_on_homology(rmap, lv[dp].hd, lv[d].hd);
            t.tr[{d, dp}] = induced_on_homology(tmap, lv[d].hd, lv[dp].hd);
        }

    AxiomReport rep = check_axioms(t);
    if (!rep.ok())
        throw std::runtime_error("mackey_assemble: axiom check failed: " + rep.violations[0]);
    return t;
}

}  // namespace eqcoh
