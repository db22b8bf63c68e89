#pragma once
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "domination.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace trico {

// incident-color set of each base vertex, as a 3-bit mask
inline std::vector<int> incident_color_masks(const TricoloredGraph& g) {
    std::vector<int> m(g.n, 0);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            m[i] |= 1 << (g.color(i, j) - 1);
            m[j] |= 1 << (g.color(i, j) - 1);
        }
    return m;
}

struct BlowupSpec {
    TricoloredGraph base;
    int k = 1;
    uint64_t seed = 0;
};

// each base vertex becomes a k-clique colored i.i.d. uniformly inside the
// vertex's incident-color set; edges across cliques copy the base edge.
// vertex (v, t) of the base maps to index v*k + t.
inline TricoloredGraph blow_up(const BlowupSpec& spec) {
    const TricoloredGraph& g = spec.base;
    if (g.n < 2) throw std::invalid_argument("blow_up: base needs >= 2 vertices");
    if (spec.k < 1) throw std::invalid_argument("blow_up: k >= 1");
    long n = static_cast<long>(g.n) * spec.k;
    if (n > 5000) throw std::invalid_argument("blow_up: result exceeds 5000 vertices");
    std::vector<int> mask = incident_color_masks(g);
    std::vector<std::vector<uint8_t>> palette(g.n);
    for (int v = 0; v < g.n; ++v)
        for (int c = 1; c <= 3; ++c)
            if (mask[v] >> (c - 1) & 1) palette[v].push_back(static_cast<uint8_t>(c));
    Rng rng(spec.seed);
    int N = static_cast<int>(n);
    std::vector<uint8_t> colors(pair_count(N));
    for (int u = 0; u < N; ++u) {
        int vu = u / spec.k;
        for (int w = u + 1; w < N; ++w) {
            int vw = w / spec.k;
            uint8_t c = vu == vw ? palette[vu][rng.below(palette[vu].size())]
                                 : static_cast<uint8_t>(g.color(vu, vw));
            colors[pair_index(u, w, N)] = c;
        }
    }
    return TricoloredGraph(N, colors);
}

struct DensityEstimate {
    double value = 0;
    double radius = 0;   // 3 * sqrt(p(1-p)/samples); 0 for exact counts
    long samples = 0;
    bool exact = false;
};

namespace detail {

// class index of the subgraph of g induced on (sorted) verts; -1-safe only
// for |verts| in 1..5
inline int induced_class(const TricoloredGraph& g, const std::vector<int>& verts) {
    int m = static_cast<int>(verts.size());
    std::vector<uint8_t> colors(pair_count(m));
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            colors[pair_index(a, b, m)] = static_cast<uint8_t>(g.color(verts[a], verts[b]));
    return class_index(TricoloredGraph(m, colors));
}

} // namespace detail

// sample fraction of |h|-subsets of g inducing a copy of h; exact count when
// g is small enough to enumerate
inline DensityEstimate estimate_density(const TricoloredGraph& h, const TricoloredGraph& g,
                                        long samples, uint64_t seed) {
    if (h.n > 5) throw std::invalid_argument("estimate_density: |h| <= 5");
    if (h.n > g.n) return {0.0, 0.0, 0, true};
    int target = class_index(h);
    if (g.n <= 12) {
        long total = 0, hit = 0;
        std::vector<int> verts;
        std::function<void(int)> rec = [&](int lo) {
            if (static_cast<int>(verts.size()) == h.n) {
                ++total;
                if (detail::induced_class(g, verts) == target) ++hit;
                return;
            }
            for (int v = lo; v <= g.n - (h.n - static_cast<int>(verts.size())); ++v) {
                verts.push_back(v);
                rec(v + 1);
                verts.pop_back();
            }
        };
        rec(0);
        return {static_cast<double>(hit) / total, 0.0, total, true};
    }
    Rng rng(seed);
    long hit = 0;
    for (long s = 0; s < samples; ++s) {
        std::vector<int> verts = rng.sample(g.n, h.n);
        if (detail::induced_class(g, verts) == target) ++hit;
    }
    double p = static_cast<double>(hit) / samples;
    return {p, 3.0 * std::sqrt(p * (1 - p) / samples), samples, false};
}

// evaluate a level-5 vector against sampled induced-class frequencies of g;
// one shared sample set serves all 142 classes
inline double empirical_functional(const RationalVector& v, const TricoloredGraph& g,
                                   long samples, uint64_t seed) {
    std::vector<long> count(class_count(5), 0);
    if (g.n < 5) throw std::invalid_argument("empirical_functional: |g| >= 5");
    if (g.n <= 12) {
        long total = 0;
        std::vector<int> verts;
        std::function<void(int)> rec = [&](int lo) {
            if (verts.size() == 5) {
                ++total;
                ++count[detail::induced_class(g, verts)];
                return;
            }
            for (int w = lo; w <= g.n - (5 - static_cast<int>(verts.size())); ++w) {
                verts.push_back(w);
                rec(w + 1);
                verts.pop_back();
            }
        };
        rec(0);
        double out = 0;
        for (int i = 0; i < class_count(5); ++i)
            if (count[i]) out += v[i].get_d() * count[i] / total;
        return out;
    }
    Rng rng(seed);
    for (long s = 0; s < samples; ++s)
        ++count[detail::induced_class(g, rng.sample(g.n, 5))];
    double out = 0;
    for (int i = 0; i < class_count(5); ++i)
        if (count[i]) out += v[i].get_d() * count[i] / samples;
    return out;
}

// convenience: blow up the base and evaluate the functional on the result
inline double empirical_functional(const RationalVector& v, const TricoloredGraph& base,
                                   int k, long samples, uint64_t seed) {
    Rng master(seed);
    TricoloredGraph gk = blow_up({base, k, master.stream(0).state});
    return empirical_functional(v, gk, samples, master.stream(1).state);
}

struct SlackReport {
    std::string base_key;
    int slot = 0;       // 1..7
    int color = 0;
    int k = 0;
    uint64_t seed = 0;
    long trials = 0;
    long matched_embeddings = 0;  // quadruple matches found in the base
    long ran = 0;
    long violations = 0;
    bool vacuous = false;
    Rat epsilon;
    Rat additive;       // (epsilon + 1/3) * k

    bool pass() const { return vacuous || violations * 100 <= ran; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["base"] = base_key;
        j["case"] = {{"slot", slot}, {"color", color}, {"epsilon", rat_json(epsilon)}};
        j["k"] = k;
        j["seed"] = seed;
        j["trials"] = trials;
        j["matchedEmbeddings"] = matched_embeddings;
        j["ran"] = ran;
        j["violations"] = violations;
        j["vacuous"] = vacuous;
        j["bound"] = {{"additive", rat_json(additive)}, {"slackPerK", "1/20"}};
        j["pass"] = pass();
        return j;
    }
};

// sample quadruples of the blow-up that realize configuration slot `i` (one
// vertex per base clique), measure the strongly dominated set, and compare
// against the base-level bound |V|k plus the case's additive term and a
// 0.05k tolerance
inline SlackReport check_domination_slack(const TricoloredGraph& base, int i, int c,
                                          int k, long trials, uint64_t seed) {
    if (base.n < 4) throw std::invalid_argument("check_domination_slack: base needs >= 4 vertices");
    if (i < 1 || i > 7 || c < 1 || c > 3) throw std::invalid_argument("bad case selector");
    TricoloredGraph config = profile_candidates(i - 1).at(0);
    SlackReport rep;
    rep.base_key = key_hex(base.col);
    rep.slot = i;
    rep.color = c;
    rep.k = k;
    rep.seed = seed;
    rep.trials = trials;
    rep.epsilon = epsilon_profiles()[i - 1][c - 1];
    rep.additive = (rep.epsilon + Rat(1, 3)) * k;
    rep.additive.canonicalize();

    // all embeddings: ordered base-vertex tuples plus a color twist carrying
    // the configuration onto the induced coloring
    struct Embedding { std::array<int, 4> verts; int twisted_color; };
    std::vector<Embedding> embs;
    std::vector<int> all_verts;
    for (int v = 0; v < base.n; ++v) all_verts.push_back(v);
    detail::for_subsets(all_verts, 4, [&](const std::vector<int>& q) {
        std::array<int, 4> perm = {0, 1, 2, 3};
        do {
            for (const auto& cp : color_perms()) {
                bool ok = true;
                for (int a = 0; a < 4 && ok; ++a)
                    for (int b = a + 1; b < 4 && ok; ++b)
                        if (base.color(q[perm[a]], q[perm[b]]) != cp[config.color(a, b)])
                            ok = false;
                if (ok)
                    embs.push_back({{q[perm[0]], q[perm[1]], q[perm[2]], q[perm[3]]},
                                    cp[c]});
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    });
    rep.matched_embeddings = static_cast<long>(embs.size());
    if (embs.empty()) {
        rep.vacuous = true;
        return rep;
    }

    Rng master(seed);
    TricoloredGraph gk = blow_up({base, k, master.stream(0).state});
    Rng rng = master.stream(1);
    Rat bound_rhs_extra = rep.additive + Rat(k, 20);
    for (long t = 0; t < trials; ++t) {
        const Embedding& e = embs[rng.below(embs.size())];
        std::array<int, 4> w;
        for (int j = 0; j < 4; ++j)
            w[j] = e.verts[j] * k + static_cast<int>(rng.below(k));
        int cp = e.twisted_color;
        // |V|: base vertices whose clique is wholly dominated via cross edges
        std::vector<int> quadv(e.verts.begin(), e.verts.end());
        long V = static_cast<long>(strongly_dominated(base, quadv, cp).size());
        long W = 0;
        for (int y = 0; y < gk.n; ++y) {
            for (int j = 0; j < 4; ++j)
                if (y != w[j] && gk.color(y, w[j]) == cp) { ++W; break; }
        }
        ++rep.ran;
        if (Rat(W) > Rat(V * k) + bound_rhs_extra) ++rep.violations;
    }
    return rep;
}

// random base whose every vertex avoids one color: pick a forbidden color
// per vertex, then color each edge uniformly among the colors neither
// endpoint forbids
inline TricoloredGraph random_bichromatic_base(int n, Rng& rng) {
    std::vector<int> forbid(n);
    for (auto& f : forbid) f = static_cast<int>(rng.below(3)) + 1;
    std::vector<uint8_t> colors(pair_count(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<uint8_t> allowed;
            for (int c = 1; c <= 3; ++c)
                if (c != forbid[i] && c != forbid[j]) allowed.push_back(static_cast<uint8_t>(c));
            colors[pair_index(i, j, n)] = allowed[rng.below(allowed.size())];
        }
    return TricoloredGraph(n, colors);
}

} // namespace trico
