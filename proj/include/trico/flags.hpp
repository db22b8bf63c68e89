#pragma once
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

#include "graph.hpp"

namespace trico {

// a type: fully labeled small graph plus the color permutations fixing it
struct TypeSigma {
    TricoloredGraph g;
    std::vector<std::array<uint8_t, 4>> stab;

    explicit TypeSigma(TricoloredGraph t) : g(std::move(t)) {
        for (const auto& cp : color_perms()) {
            bool fix = true;
            for (uint8_t c : g.col)
                if (cp[c] != c) { fix = false; break; }
            if (fix) stab.push_back(cp);
        }
    }

    int k() const { return g.n; }
    bool operator==(const TypeSigma& o) const { return g == o.g; }
    bool operator<(const TypeSigma& o) const {
        return std::tie(g.n, g.col) < std::tie(o.g.n, o.g.col);
    }
};

// flag on l vertices: the first type.k() carry the type labeling
struct Flag {
    int k;
    TricoloredGraph g;
};

// canonical color array: minimal over free-vertex permutations and
// the type's color stabilizer (labels 0..k-1 stay fixed)
inline std::vector<uint8_t> flag_canon(const TypeSigma& sigma, const TricoloredGraph& g) {
    int k = sigma.k(), l = g.n;
    std::vector<int> p(l);
    std::iota(p.begin(), p.end(), 0);
    std::vector<uint8_t> best = g.col;
    do {
        for (const auto& cp : sigma.stab) {
            std::vector<uint8_t> cand = relabel(g, p, cp);
            if (cand < best) best = cand;
        }
    } while (std::next_permutation(p.begin() + k, p.end()));
    return best;
}

// all flag classes of a type at level l, keys in ascending order
inline std::vector<std::vector<uint8_t>> enumerate_flags(const TypeSigma& sigma, int l) {
    int k = sigma.k();
    if (l < k || l > 5) throw std::invalid_argument("enumerate_flags: level out of range");
    int m = pair_count(l);
    std::vector<int> freeslot;
    std::vector<uint8_t> base(m, 1);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            base[pair_index(i, j, l)] = sigma.g.color(i, j);
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            if (j >= k) freeslot.push_back(pair_index(i, j, l));
    std::map<std::vector<uint8_t>, bool> seen;
    int f = static_cast<int>(freeslot.size());
    std::vector<int> digits(f, 0);
    while (true) {
        std::vector<uint8_t> colors = base;
        for (int t = 0; t < f; ++t)
            colors[freeslot[t]] = static_cast<uint8_t>(digits[t] + 1);
        seen[flag_canon(sigma, TricoloredGraph(l, colors))] = true;
        int t = f - 1;
        while (t >= 0 && digits[t] == 2) digits[t--] = 0;
        if (t < 0) break;
        ++digits[t];
    }
    std::vector<std::vector<uint8_t>> out;
    out.reserve(seen.size());
    for (auto& [key, _] : seen) out.push_back(key);
    return out;
}

// exact probability that a random (|h|-k)-subset of g's free vertices,
// together with the labels, induces a flag isomorphic to h
inline Rat flag_density(const TypeSigma& sigma, const TricoloredGraph& h,
                        const TricoloredGraph& g) {
    int k = sigma.k();
    if (h.n > g.n) throw std::invalid_argument("flag_density: |h| > |g|");
    std::vector<uint8_t> hkey = flag_canon(sigma, h);
    int pick = h.n - k, freeN = g.n - k;
    if (pick == 0) return Rat(1);
    std::vector<int> sel(pick);
    for (int i = 0; i < pick; ++i) sel[i] = i;
    long hits = 0, total = 0;
    while (true) {
        ++total;
        std::vector<int> verts(h.n);
        for (int i = 0; i < k; ++i) verts[i] = i;
        for (int i = 0; i < pick; ++i) verts[k + i] = k + sel[i];
        std::vector<uint8_t> sub(pair_count(h.n));
        for (int a = 0; a < h.n; ++a)
            for (int b = a + 1; b < h.n; ++b)
                sub[pair_index(a, b, h.n)] = g.color(verts[a], verts[b]);
        if (flag_canon(sigma, TricoloredGraph(h.n, sub)) == hkey) ++hits;
        int t = pick - 1;
        while (t >= 0 && sel[t] == freeN - pick + t) --t;
        if (t < 0) break;
        ++sel[t];
        for (int j = t + 1; j < pick; ++j) sel[j] = sel[j - 1] + 1;
    }
    Rat r(hits, total);
    r.canonicalize();
    return r;
}

// linear combination of flag classes of one type and level
struct FlagVector {
    TypeSigma type;
    int level;
    std::map<std::vector<uint8_t>, Rat> coeffs;

    FlagVector(TypeSigma t, int l) : type(std::move(t)), level(l) {}

    void add(const TricoloredGraph& flag_graph, const Rat& c) {
        coeffs[flag_canon(type, flag_graph)] += c;
    }
};

inline FlagVector unit_flag(const TypeSigma& sigma) {
    FlagVector v(sigma, sigma.k());
    v.add(sigma.g, Rat(1));
    return v;
}

// bilinear flag product; result level = la + lb - k
inline FlagVector flag_product(const FlagVector& a, const FlagVector& b) {
    if (!(a.type == b.type)) throw std::invalid_argument("flag_product: type mismatch");
    int k = a.type.k();
    int L = a.level + b.level - k;
    if (L > 5) throw std::invalid_argument("flag_product: level above 5");
    FlagVector out(a.type, L);
    int fa = a.level - k, fb = b.level - k, f = L - k;
    // iterate result classes once; split free vertices between the factors
    for (const auto& key : enumerate_flags(a.type, L)) {
        TricoloredGraph hg(L, key);
        long total = 0;
        Rat acc(0);
        // enumerate subset splits via bitmask (f <= 2 in practice, stays exact anyway)
        for (int m1 = 0; m1 < (1 << f); ++m1) {
            if (__builtin_popcount(m1) != fa) continue;
            int rest = ((1 << f) - 1) & ~m1;
            for (int m2 = rest;; m2 = (m2 - 1) & rest) {
                if (__builtin_popcount(m2) == fb) {
                    ++total;
                    auto induce = [&](int mask, int cnt) {
                        std::vector<int> verts(k + cnt);
                        for (int i = 0; i < k; ++i) verts[i] = i;
                        int t = k;
                        for (int i = 0; i < f; ++i)
                            if (mask & (1 << i)) verts[t++] = k + i;
                        std::vector<uint8_t> sub(pair_count(k + cnt));
                        for (int x = 0; x < k + cnt; ++x)
                            for (int y = x + 1; y < k + cnt; ++y)
                                sub[pair_index(x, y, k + cnt)] = hg.color(verts[x], verts[y]);
                        return flag_canon(a.type, TricoloredGraph(k + cnt, sub));
                    };
                    auto k1 = induce(m1, fa);
                    auto k2 = induce(m2, fb);
                    auto it1 = a.coeffs.find(k1);
                    auto it2 = b.coeffs.find(k2);
                    if (it1 != a.coeffs.end() && it2 != b.coeffs.end())
                        acc += it1->second * it2->second;
                }
                if (m2 == 0) break;
            }
        }
        if (acc != 0) {
            Rat p = acc / total;
            p.canonicalize();
            out.coeffs[key] += p;
        }
    }
    return out;
}

// 142-entry coefficient vector over the level-5 basis
using RationalVector = std::vector<Rat>;

inline RationalVector zero_vector() { return RationalVector(class_count(5), Rat(0)); }

// coordinates of h's density profile in the level-5 basis: for small h the
// expansion of p(h, .), for a host of 5+ vertices its class frequencies.
// either way, dot(v, lift(h)) evaluates a level-5 coefficient vector on h.
inline RationalVector lift(const TricoloredGraph& h) {
    RationalVector out = zero_vector();
    for (int i = 0; i < class_count(5); ++i)
        out[i] = h.n >= 5 ? density(class_rep(5, i), h) : density(h, class_rep(5, i));
    return out;
}

namespace detail {

// averaging matrix of a type at level l: for each level-l unlabeled class,
// distribute its injections over flag classes.  entry[flagkey][class] =
// (#injections realizing the type and yielding that flag) / (#injections)
struct AvgMatrix {
    std::map<std::vector<uint8_t>, std::vector<Rat>> rows;
    long inj_total;
};

inline AvgMatrix build_avg_matrix(const TypeSigma& sigma, int l) {
    int k = sigma.k();
    AvgMatrix M;
    int nc = class_count(l);
    std::vector<int> verts(l);
    long inj = 1;
    for (int t = 0; t < k; ++t) inj *= (l - t);
    M.inj_total = inj;
    for (int ci = 0; ci < nc; ++ci) {
        TricoloredGraph U = class_rep(l, ci);
        // ordered injective k-tuples
        std::vector<int> theta(k, -1);
        std::vector<bool> used(l, false);
        std::function<void(int)> rec = [&](int depth) {
            if (depth == k) {
                // find a color twist mapping the type onto this tuple
                const std::array<uint8_t, 4>* pi = nullptr;
                for (const auto& cp : color_perms()) {
                    bool ok = true;
                    for (int a = 0; a < k && ok; ++a)
                        for (int b = a + 1; b < k && ok; ++b)
                            if (cp[sigma.g.color(a, b)] != U.color(theta[a], theta[b]))
                                ok = false;
                    if (ok) { pi = &cp; break; }
                }
                if (!pi) return;
                std::array<uint8_t, 4> inv{};
                for (uint8_t c = 1; c <= 3; ++c) inv[(*pi)[c]] = c;
                // relabel U: tuple first, the rest ascending; colors pulled
                // back into the type's frame
                std::vector<int> order(theta.begin(), theta.end());
                for (int v = 0; v < l; ++v)
                    if (!used[v]) order.push_back(v);
                std::vector<uint8_t> sub(pair_count(l));
                for (int a = 0; a < l; ++a)
                    for (int b = a + 1; b < l; ++b)
                        sub[pair_index(a, b, l)] = inv[U.color(order[a], order[b])];
                auto key = flag_canon(sigma, TricoloredGraph(l, sub));
                auto& row = M.rows[key];
                if (row.empty()) row.assign(nc, Rat(0));
                row[ci] += Rat(1, inj);
                return;
            }
            for (int v = 0; v < l; ++v) {
                if (used[v]) continue;
                used[v] = true;
                theta[depth] = v;
                rec(depth + 1);
                used[v] = false;
            }
        };
        rec(0);
    }
    for (auto& [key, row] : M.rows)
        for (auto& q : row) q.canonicalize();
    return M;
}

inline const AvgMatrix& avg_matrix(const TypeSigma& sigma, int l) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<uint8_t>, int>, AvgMatrix> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto mk = std::make_pair(sigma.g.col, l);
    auto it = cache.find(mk);
    if (it == cache.end())
        it = cache.emplace(mk, build_avg_matrix(sigma, l)).first;
    return it->second;
}

} // namespace detail

// averaging operator: forget labels, weight by the probability that a random
// injection realizes the type and yields the flag; expand into the F5 basis
inline RationalVector average(const FlagVector& a) {
    const auto& M = detail::avg_matrix(a.type, a.level);
    int nc = class_count(a.level);
    std::vector<Rat> at_level(nc, Rat(0));
    for (const auto& [key, c] : a.coeffs) {
        auto it = M.rows.find(key);
        if (it == M.rows.end()) continue;  // flag class unreachable: zero average
        for (int i = 0; i < nc; ++i)
            if (it->second[i] != 0) at_level[i] += c * it->second[i];
    }
    if (a.level == 5) {
        for (auto& q : at_level) q.canonicalize();
        return at_level;
    }
    RationalVector out = zero_vector();
    for (int i = 0; i < nc; ++i) {
        if (at_level[i] == 0) continue;
        TricoloredGraph rep = class_rep(a.level, i);
        for (int j = 0; j < class_count(5); ++j) {
            Rat d = density(rep, class_rep(5, j));
            if (d != 0) out[j] += at_level[i] * d;
        }
    }
    for (auto& q : out) q.canonicalize();
    return out;
}

// JSON round-trip for coefficient vectors, class keys in hex
inline nlohmann::json vector_json(const RationalVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (v[i] == 0) continue;
        nlohmann::json e = rat_json(v[i]);
        e["classKey"] = key_hex(class_rep(5, i).col);
        arr.push_back(e);
    }
    return arr;
}

} // namespace trico
