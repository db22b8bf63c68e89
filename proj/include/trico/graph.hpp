#pragma once
#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace trico {

// edge (i,j), i<j, listed lexicographically: (0,1),(0,2),...,(0,n-1),(1,2),...
inline int pair_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

struct TricoloredGraph {
    int n = 1;
    std::vector<uint8_t> col;  // colors 1..3, upper-triangular order

    TricoloredGraph() = default;
    TricoloredGraph(int n_, std::vector<uint8_t> c) : n(n_), col(std::move(c)) {
        if (static_cast<int>(col.size()) != pair_count(n))
            throw std::invalid_argument("color array size mismatch");
        for (uint8_t x : col)
            if (x < 1 || x > 3) throw std::invalid_argument("color out of range");
    }

    uint8_t color(int i, int j) const { return col[pair_index(i, j, n)]; }
    void set_color(int i, int j, uint8_t c) { col[pair_index(i, j, n)] = c; }

    bool operator==(const TricoloredGraph& o) const { return n == o.n && col == o.col; }
};

// all 6 permutations of {1,2,3}, entry [c] = image of color c
inline const std::array<std::array<uint8_t, 4>, 6>& color_perms() {
    static const std::array<std::array<uint8_t, 4>, 6> ps = {{
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3},
        {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
    }};
    return ps;
}

// relabel vertices by p (old -> new) and colors by cp
inline std::vector<uint8_t> relabel(const TricoloredGraph& g,
                                    const std::vector<int>& p,
                                    const std::array<uint8_t, 4>& cp) {
    std::vector<uint8_t> out(g.col.size());
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            out[pair_index(p[i], p[j], g.n)] = cp[g.color(i, j)];
    return out;
}

// lexicographically minimal color array over all vertex and color permutations
inline std::vector<uint8_t> canonical_form(const TricoloredGraph& g) {
    if (g.n > 7) throw std::invalid_argument("canonical_form limited to n <= 7");
    std::vector<int> p(g.n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<uint8_t> best = relabel(g, p, color_perms()[0]);
    do {
        for (const auto& cp : color_perms()) {
            std::vector<uint8_t> cand = relabel(g, p, cp);
            if (cand < best) best = cand;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

inline std::string key_hex(const std::vector<uint8_t>& key) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(key.size() * 2);
    for (uint8_t b : key) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

inline std::string canonical_key_hex(const TricoloredGraph& g) {
    return key_hex(canonical_form(g));
}

namespace detail {

inline uint32_t pow3(int e) {
    uint32_t v = 1;
    while (e-- > 0) v *= 3;
    return v;
}

inline uint32_t code_of(const std::vector<uint8_t>& colors) {
    uint32_t c = 0;
    for (uint8_t x : colors) c = c * 3 + (x - 1);
    return c;
}

inline std::vector<uint8_t> colors_of(uint32_t code, int m) {
    std::vector<uint8_t> out(m);
    for (int pos = m - 1; pos >= 0; --pos) {
        out[pos] = static_cast<uint8_t>(code % 3 + 1);
        code /= 3;
    }
    return out;
}

// per-level class table: raw code -> class index, plus canonical reps in
// ascending key order (this order defines every downstream basis index)
struct LevelTable {
    int n;
    std::vector<int16_t> classof;
    std::vector<std::vector<uint8_t>> reps;
};

inline void build_level(LevelTable& t, int l) {
    t.n = l;
    if (l == 1) {
        t.classof = {0};
        t.reps = {{}};
        return;
    }
    int m = pair_count(l);
    uint32_t total = pow3(m);
    t.classof.assign(total, -1);
    std::vector<int> p(l);
    for (uint32_t code = 0; code < total; ++code) {
        if (t.classof[code] >= 0) continue;
        int16_t idx = static_cast<int16_t>(t.reps.size());
        std::vector<uint8_t> colors = colors_of(code, m);
        t.reps.push_back(colors);
        TricoloredGraph g(l, colors);
        std::iota(p.begin(), p.end(), 0);
        do {
            for (const auto& cp : color_perms())
                t.classof[code_of(relabel(g, p, cp))] = idx;
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

inline const LevelTable& level_table(int l) {
    if (l < 1 || l > 5) throw std::invalid_argument("level table limited to 1..5");
    // one thread-safe eager build for all levels
    static const std::array<LevelTable, 6> cache = [] {
        std::array<LevelTable, 6> c;
        for (int lv = 1; lv <= 5; ++lv) build_level(c[lv], lv);
        return c;
    }();
    return cache[l];
}

} // namespace detail

inline int class_count(int l) {
    return static_cast<int>(detail::level_table(l).reps.size());
}

inline int class_index(const TricoloredGraph& g) {
    const auto& t = detail::level_table(g.n);
    return t.classof[detail::code_of(g.col)];
}

inline TricoloredGraph class_rep(int l, int idx) {
    return TricoloredGraph(l, detail::level_table(l).reps.at(idx));
}

// one representative per isomorphism class, sorted by canonical key;
// this ordering is the basis index used everywhere downstream
inline std::vector<TricoloredGraph> enumerate_unlabeled(int l) {
    if (l < 1 || l > 5) throw std::invalid_argument("enumerate_unlabeled limited to 1..5");
    std::vector<TricoloredGraph> out;
    int cnt = class_count(l);
    out.reserve(cnt);
    for (int i = 0; i < cnt; ++i) out.push_back(class_rep(l, i));
    return out;
}

// exact induced-subgraph density p(h, g)
inline Rat density(const TricoloredGraph& h, const TricoloredGraph& g) {
    if (h.n > g.n) throw std::invalid_argument("density: |h| > |g|");
    if (h.n == 1) return Rat(1);
    const bool small = h.n <= 5;
    const int hclass = small ? class_index(h) : -1;
    const std::vector<uint8_t> hkey = small ? std::vector<uint8_t>{} : canonical_form(h);
    std::vector<int> sel(h.n);
    long hits = 0, total = 0;
    std::vector<uint8_t> sub(pair_count(h.n));
    // iterate combinations of g's vertices
    for (int i = 0; i < h.n; ++i) sel[i] = i;
    while (true) {
        ++total;
        int t = 0;
        for (int a = 0; a < h.n; ++a)
            for (int b = a + 1; b < h.n; ++b)
                sub[t++] = g.color(sel[a], sel[b]);
        TricoloredGraph ind(h.n, sub);
        if (small ? class_index(ind) == hclass : canonical_form(ind) == hkey) ++hits;
        int k = h.n - 1;
        while (k >= 0 && sel[k] == g.n - h.n + k) --k;
        if (k < 0) break;
        ++sel[k];
        for (int j = k + 1; j < h.n; ++j) sel[j] = sel[j - 1] + 1;
    }
    Rat r(hits, total);
    r.canonicalize();
    return r;
}

// canonical representatives at n=6 (too big for a full code table)
inline std::vector<TricoloredGraph> enumerate_n6() {
    const int m = 15;
    const uint32_t total = detail::pow3(m);
    std::vector<bool> seen(total, false);
    std::vector<TricoloredGraph> reps;
    std::vector<int> p(6);
    for (uint32_t code = 0; code < total; ++code) {
        if (seen[code]) continue;
        TricoloredGraph g(6, detail::colors_of(code, m));
        reps.push_back(g);
        std::iota(p.begin(), p.end(), 0);
        do {
            for (const auto& cp : color_perms())
                seen[detail::code_of(relabel(g, p, cp))] = true;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return reps;
}

// ".tcg" text format: line 1 = n, line 2 = space-separated colors
inline void write_tcg(std::ostream& os, const TricoloredGraph& g) {
    os << g.n << "\n";
    for (size_t i = 0; i < g.col.size(); ++i)
        os << (i ? " " : "") << static_cast<int>(g.col[i]);
    os << "\n";
}

inline TricoloredGraph read_tcg(std::istream& is) {
    int n;
    if (!(is >> n) || n < 1) throw std::runtime_error("tcg: bad vertex count");
    std::vector<uint8_t> colors(pair_count(n));
    for (auto& c : colors) {
        int v;
        if (!(is >> v)) throw std::runtime_error("tcg: truncated color list");
        if (v < 1 || v > 3) throw std::runtime_error("tcg: color out of range");
        c = static_cast<uint8_t>(v);
    }
    return TricoloredGraph(n, colors);
}

} // namespace trico
