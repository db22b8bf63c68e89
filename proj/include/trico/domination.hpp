#pragma once
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace trico {

// word-packed neighborhoods split by color: masks[c-1][v] has bit u set iff
// color(u,v) = c
struct ColorAdjacency {
    int n;
    int words;
    std::array<std::vector<uint64_t>, 3> masks;

    explicit ColorAdjacency(const TricoloredGraph& g)
        : n(g.n), words((g.n + 63) / 64) {
        for (auto& m : masks) m.assign(static_cast<size_t>(n) * words, 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int c = g.color(i, j) - 1;
                masks[c][static_cast<size_t>(i) * words + j / 64] |= 1ull << (j % 64);
                masks[c][static_cast<size_t>(j) * words + i / 64] |= 1ull << (i % 64);
            }
    }

    const uint64_t* row(int c, int v) const {
        return masks[c - 1].data() + static_cast<size_t>(v) * words;
    }
};

// {y : some x in a, x != y, has color(xy) = c}; the single formula covers
// vertices inside and outside a alike
inline std::vector<int> strongly_dominated(const TricoloredGraph& g,
                                           const std::vector<int>& a, int c) {
    if (a.empty()) throw std::invalid_argument("strongly_dominated: empty set");
    if (c < 1 || c > 3) throw std::invalid_argument("strongly_dominated: bad color");
    ColorAdjacency adj(g);
    std::vector<uint64_t> acc(adj.words, 0);
    for (int x : a) {
        if (x < 0 || x >= g.n) throw std::invalid_argument("vertex out of range");
        const uint64_t* r = adj.row(c, x);
        for (int w = 0; w < adj.words; ++w) acc[w] |= r[w];
    }
    std::vector<int> out;
    for (int y = 0; y < g.n; ++y)
        if (acc[y / 64] >> (y % 64) & 1) out.push_back(y);
    return out;
}

struct DominationResult {
    int color = 0;
    std::vector<int> dominators;
    std::vector<int> dominated;
    int size = 0;
    bool lower_bound_only = false;  // set when the subset search was sampled

    nlohmann::json to_json(int n, int t) const {
        nlohmann::json j;
        j["n"] = n;
        j["t"] = t;
        j["color"] = color;
        j["dominators"] = dominators;
        j["size"] = size;
        j["ratio"] = {{"num", std::to_string(size)}, {"den", std::to_string(n)}};
        if (lower_bound_only) j["lowerBoundOnly"] = true;
        return j;
    }
};

namespace detail {

inline int count_dominated(const ColorAdjacency& adj, const std::vector<int>& a,
                           int c, std::vector<uint64_t>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (int x : a) {
        const uint64_t* r = adj.row(c, x);
        for (int w = 0; w < adj.words; ++w) scratch[w] |= r[w];
    }
    int s = 0;
    for (uint64_t w : scratch) s += std::popcount(w);
    return s;
}

// enumerate subsets of `pool` of exactly `sz` elements in lexicographic order
template <typename F>
void for_subsets(const std::vector<int>& pool, int sz, F&& f) {
    int n = static_cast<int>(pool.size());
    if (sz > n) return;
    std::vector<int> idx(sz);
    for (int i = 0; i < sz; ++i) idx[i] = i;
    std::vector<int> cur(sz);
    while (true) {
        for (int i = 0; i < sz; ++i) cur[i] = pool[idx[i]];
        f(cur);
        int i = sz - 1;
        while (i >= 0 && idx[i] == n - sz + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

// maximize |strongly_dominated| over colors and subsets of `pool` of size
// <= t.  ties resolve toward smaller subsets, then lexicographic subset
// order, then lower color.  beyond 40 pool vertices the subset space is
// sampled instead and the result is marked as a lower bound.
inline DominationResult best_domination(const TricoloredGraph& g, int t,
                                        std::vector<int> pool = {},
                                        uint64_t heuristic_seed = 1) {
    if (t < 1 || t > g.n) throw std::invalid_argument("best_domination: bad t");
    if (pool.empty())
        for (int v = 0; v < g.n; ++v) pool.push_back(v);
    ColorAdjacency adj(g);
    std::vector<uint64_t> scratch(adj.words);
    DominationResult best;
    auto consider = [&](const std::vector<int>& a) {
        for (int c = 1; c <= 3; ++c) {
            int s = detail::count_dominated(adj, a, c, scratch);
            if (s > best.size) {
                best.size = s;
                best.color = c;
                best.dominators = a;
            }
        }
    };
    if (static_cast<int>(pool.size()) <= 40) {
        for (int sz = 1; sz <= t && sz <= static_cast<int>(pool.size()); ++sz)
            detail::for_subsets(pool, sz, consider);
    } else {
        best.lower_bound_only = true;
        for (int v : pool) consider({v});
        // grow the current best greedily, then probe random subsets
        for (int round = 1; round < t; ++round) {
            std::vector<int> base = best.dominators;
            DominationResult saved = best;
            for (int v : pool) {
                bool in = false;
                for (int x : base)
                    if (x == v) in = true;
                if (in) continue;
                std::vector<int> a = base;
                a.push_back(v);
                std::sort(a.begin(), a.end());
                consider(a);
            }
            if (best.size == saved.size) break;
        }
        Rng rng(heuristic_seed);
        int n = static_cast<int>(pool.size());
        for (int trial = 0; t >= 2 && trial < 20000; ++trial) {
            int sz = rng.range(2, t);
            std::vector<int> a;
            while (static_cast<int>(a.size()) < sz) {
                int v = pool[rng.below(n)];
                bool in = false;
                for (int x : a)
                    if (x == v) in = true;
                if (!in) a.push_back(v);
            }
            std::sort(a.begin(), a.end());
            consider(a);
        }
    }
    best.dominated = strongly_dominated(g, best.dominators, best.color);
    if (static_cast<int>(best.dominated.size()) != best.size)
        throw std::runtime_error("domination recount mismatch");
    return best;
}

// true iff no <=4-vertex set strongly dominates at least 2n/3 vertices in
// any color (3*size >= 2n, exact)
inline bool is_counterexample(const TricoloredGraph& g) {
    if (g.n < 2) throw std::invalid_argument("is_counterexample: need n >= 2");
    return best_domination(g, std::min(4, g.n)).size * 3 < 2 * g.n;
}

struct TheoremCheckReport {
    int n = 0;
    long colorings = 0;        // colorings visited (or classes when by_class)
    bool by_class = false;
    long counterexamples = 0;
    int min_best_size = 0;

    nlohmann::json to_json() const {
        return {{"n", n},
                {"colorings", colorings},
                {"byClass", by_class},
                {"counterexamples", counterexamples},
                {"minBestSize", min_best_size}};
    }
};

// sweep every coloring of K_n (n <= 5), or every class representative at
// n = 6, asserting none is a counterexample
inline TheoremCheckReport exhaustive_theorem_check(int n) {
    if (n < 2 || n > 6) throw std::invalid_argument("exhaustive_theorem_check: n in [2,6]");
    TheoremCheckReport rep;
    rep.n = n;
    rep.min_best_size = n + 1;
    auto visit = [&](const TricoloredGraph& g) {
        ++rep.colorings;
        DominationResult r = best_domination(g, std::min(4, n));
        if (r.size < rep.min_best_size) rep.min_best_size = r.size;
        if (r.size * 3 < 2 * n) {
            ++rep.counterexamples;
            throw std::runtime_error("theorem check failed on " + key_hex(g.col));
        }
    };
    if (n <= 5) {
        int pc = pair_count(n);
        std::vector<uint8_t> colors(pc, 1);
        long total = 1;
        for (int i = 0; i < pc; ++i) total *= 3;
        for (long code = 0; code < total; ++code) {
            long v = code;
            for (int t = pc - 1; t >= 0; --t) { colors[t] = static_cast<uint8_t>(v % 3 + 1); v /= 3; }
            visit(TricoloredGraph(n, colors));
        }
    } else {
        rep.by_class = true;
        for (const auto& g : enumerate_n6()) visit(g);
    }
    return rep;
}

// three near-equal parts; an edge between parts i <= j gets color i when the
// parts are identical or adjacent, and the first/last parts meet in color 3
inline TricoloredGraph kierstead(int n) {
    if (n < 3 || n % 3 != 0) throw std::invalid_argument("kierstead: n must be a positive multiple of 3");
    int part = n / 3;
    auto part_of = [part](int v) { return v / part + 1; };
    std::vector<uint8_t> colors(pair_count(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int i = part_of(u), j = part_of(v);
            if (i > j) std::swap(i, j);
            int c = (j - i <= 1) ? i : 3;
            colors[pair_index(u, v, n)] = static_cast<uint8_t>(c);
        }
    return TricoloredGraph(n, colors);
}

// clique of order 2m in color 1, one rainbow triangle, and for i in {1,2}
// exactly m clique vertices joined to all three triangle vertices in color i
inline TricoloredGraph rainbow_block(int m) {
    if (m < 1) throw std::invalid_argument("rainbow_block: m >= 1");
    int n = 2 * m + 3;
    int t1 = 2 * m, t2 = 2 * m + 1, t3 = 2 * m + 2;
    std::vector<uint8_t> colors(pair_count(n), 1);
    colors[pair_index(t1, t2, n)] = 1;
    colors[pair_index(t1, t3, n)] = 2;
    colors[pair_index(t2, t3, n)] = 3;
    for (int u = 0; u < 2 * m; ++u) {
        uint8_t c = u < m ? 1 : 2;
        colors[pair_index(u, t1, n)] = c;
        colors[pair_index(u, t2, n)] = c;
        colors[pair_index(u, t3, n)] = c;
    }
    return TricoloredGraph(n, colors);
}

// the three distinguished triangle vertices of rainbow_block(m)
inline std::vector<int> rainbow_block_triangle(int m) {
    return {2 * m, 2 * m + 1, 2 * m + 2};
}

struct PairBoundStat {
    int n = 0;
    long pairs = 0;
    uint64_t seed = 0;
    double max_fraction = 0;        // max over sampled pairs and colors
    double mean_pair_color = 0;     // mean over (pair, color)
    double mean_pair_best = 0;      // mean over pairs of the best color

    nlohmann::json to_json() const {
        return {{"n", n},           {"pairs", pairs},
                {"seed", seed},     {"maxFraction", max_fraction},
                {"meanPairColor", mean_pair_color}, {"meanPairBest", mean_pair_best}};
    }
};

// color K_n uniformly at random and measure how much of the graph sampled
// vertex pairs dominate
inline PairBoundStat random_pair_bound(int n, uint64_t seed, long pairs) {
    if (n < 100) throw std::invalid_argument("random_pair_bound: n >= 100");
    Rng rng(seed);
    std::vector<uint8_t> colors(pair_count(n));
    for (auto& c : colors) c = static_cast<uint8_t>(rng.below(3) + 1);
    TricoloredGraph g(n, colors);
    PairBoundStat st;
    st.n = n;
    st.pairs = pairs;
    st.seed = seed;
    double sum_all = 0, sum_best = 0;
    for (long s = 0; s < pairs; ++s) {
        int x = static_cast<int>(rng.below(n));
        int y = static_cast<int>(rng.below(n - 1));
        if (y >= x) ++y;
        int dom[4] = {0, 0, 0, 0};
        for (int v = 0; v < n; ++v) {
            for (int c = 1; c <= 3; ++c) {
                bool hit = (v != x && g.color(v, x) == c) || (v != y && g.color(v, y) == c);
                if (hit) ++dom[c];
            }
        }
        double best = 0;
        for (int c = 1; c <= 3; ++c) {
            double f = static_cast<double>(dom[c]) / n;
            sum_all += f;
            if (f > best) best = f;
            if (f > st.max_fraction) st.max_fraction = f;
        }
        sum_best += best;
    }
    st.mean_pair_color = sum_all / (3.0 * pairs);
    st.mean_pair_best = sum_best / pairs;
    return st;
}

// does every vertex of g meet exactly two distinct edge colors?
inline bool every_vertex_bichromatic(const TricoloredGraph& g) {
    for (int v = 0; v < g.n; ++v) {
        int mask = 0;
        for (int u = 0; u < g.n; ++u)
            if (u != v) mask |= 1 << g.color(u, v);
        if (std::popcount(static_cast<unsigned>(mask)) != 2) return false;
    }
    return true;
}

} // namespace trico
