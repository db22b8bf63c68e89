#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trico/certificate.hpp"
#include "trico/rng.hpp"

using namespace trico;

namespace {

TricoloredGraph random_graph(int n, Rng& rng) {
    std::vector<uint8_t> colors(pair_count(n));
    for (auto& c : colors) c = static_cast<uint8_t>(rng.below(3) + 1);
    return TricoloredGraph(n, colors);
}

Rat dot(const RationalVector& a, const RationalVector& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    s.canonicalize();
    return s;
}

struct VecStats {
    int support = 0;
    Rat abs_sum;
    Rat sum;
};

VecStats stats(const RationalVector& v) {
    VecStats s;
    s.abs_sum = 0;
    s.sum = 0;
    for (const auto& q : v) {
        if (q == 0) continue;
        ++s.support;
        s.sum += q;
        s.abs_sum += abs(q);
    }
    s.sum.canonicalize();
    s.abs_sum.canonicalize();
    return s;
}

// fully independent evaluation of the averaged one-extension inequality on a
// host graph: scan ordered injective 4-tuples, all color twists matching the
// configuration, and every fifth vertex, averaging the pointwise
// (2/3 - [c among pulled-back extension colors]) term
Rat direct_inequality_eval(const TricoloredGraph& s, int c, const TricoloredGraph& G) {
    int n = G.n;
    Rat total(0);
    long tuples = 0;
    std::vector<int> theta(4);
    std::vector<bool> used(n, false);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == 4) {
            ++tuples;
            std::vector<const std::array<uint8_t, 4>*> valid;
            for (const auto& cp : color_perms()) {
                bool ok = true;
                for (int a = 0; a < 4 && ok; ++a)
                    for (int b = a + 1; b < 4 && ok; ++b)
                        if (cp[s.color(a, b)] != G.color(theta[a], theta[b])) ok = false;
                if (ok) valid.push_back(&cp);
            }
            if (valid.empty()) return;
            Rat tupleval(0);
            for (const auto* pi : valid) {
                std::array<uint8_t, 4> inv{};
                for (uint8_t x = 1; x <= 3; ++x) inv[(*pi)[x]] = x;
                Rat pival(0);
                for (int u = 0; u < n; ++u) {
                    if (used[u]) continue;
                    bool hit = false;
                    for (int j = 0; j < 4 && !hit; ++j)
                        if (inv[G.color(theta[j], u)] == c) hit = true;
                    pival += Rat(2, 3) - (hit ? Rat(1) : Rat(0));
                }
                tupleval += pival / (n - 4);
            }
            total += tupleval / static_cast<long>(valid.size());
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            theta[depth] = v;
            rec(depth + 1);
            used[v] = false;
        }
    };
    rec(0);
    Rat out = total / tuples;
    out.canonicalize();
    return out;
}

// independent evaluation of the averaged square: scan ordered injective
// 3-tuples, matching twists, and ordered pairs of extension vertices,
// multiplying the two pulled-back weight lookups
Rat direct_square_eval(const SquareSpec& sp, const TricoloredGraph& G) {
    int n = G.n;
    Rat total(0);
    long tuples = 0;
    std::vector<int> theta(3);
    std::vector<bool> used(n, false);
    auto weight = [&](const std::array<uint8_t, 3>& d) {
        auto it = sp.weights.find(d);
        return it == sp.weights.end() ? Rat(0) : Rat(it->second);
    };
    std::function<void(int)> rec = [&](int depth) {
        if (depth == 3) {
            ++tuples;
            std::vector<const std::array<uint8_t, 4>*> valid;
            for (const auto& cp : color_perms()) {
                bool ok = true;
                for (int a = 0; a < 3 && ok; ++a)
                    for (int b = a + 1; b < 3 && ok; ++b)
                        if (cp[sp.sigma.color(a, b)] != G.color(theta[a], theta[b])) ok = false;
                if (ok) valid.push_back(&cp);
            }
            if (valid.empty()) return;
            Rat tupleval(0);
            for (const auto* pi : valid) {
                std::array<uint8_t, 4> inv{};
                for (uint8_t x = 1; x <= 3; ++x) inv[(*pi)[x]] = x;
                Rat pival(0);
                long pairs = 0;
                for (int u = 0; u < n; ++u) {
                    if (used[u]) continue;
                    for (int v = 0; v < n; ++v) {
                        if (used[v] || v == u) continue;
                        ++pairs;
                        std::array<uint8_t, 3> du{}, dv{};
                        for (int j = 0; j < 3; ++j) {
                            du[j] = inv[G.color(theta[j], u)];
                            dv[j] = inv[G.color(theta[j], v)];
                        }
                        pival += weight(du) * weight(dv);
                    }
                }
                tupleval += pival / pairs;
            }
            total += tupleval / static_cast<long>(valid.size());
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            theta[depth] = v;
            rec(depth + 1);
            used[v] = false;
        }
    };
    rec(0);
    Rat out = total / tuples;
    out.canonicalize();
    return out;
}

} // namespace

TEST_CASE("epsilon rule on hand-checked configurations") {
    TricoloredGraph s(4, {1, 1, 1, 1, 2, 3});
    CHECK(compute_epsilon(s, 1) == Rat(-1, 3));  // every vertex has a 1-edge
    CHECK(compute_epsilon(s, 2) == Rat(1, 2));   // single 2-edge
    CHECK(compute_epsilon(s, 3) == Rat(1, 2));   // single 3-edge
    TricoloredGraph t(4, {1, 1, 1, 2, 2, 3});
    CHECK(compute_epsilon(t, 2) == Rat(1, 6));   // exceptional vertex sees only color 1
    TricoloredGraph u(4, {1, 1, 2, 3, 2, 3});
    CHECK(compute_epsilon(u, 1) == Rat(0));      // exceptional vertex sees two colors
    TricoloredGraph mono(4, {2, 2, 2, 2, 2, 2});
    CHECK(compute_epsilon(mono, 1) == Rat(0));   // color absent
    CHECK(compute_epsilon(mono, 2) == Rat(-1, 3));
}

TEST_CASE("epsilon is relabeling-invariant and twist-equivariant") {
    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        TricoloredGraph s = random_graph(4, rng);
        std::vector<int> p = {0, 1, 2, 3};
        for (int t = 3; t > 0; --t) std::swap(p[t], p[rng.below(t + 1)]);
        const auto& cp = color_perms()[rng.below(6)];
        TricoloredGraph s2(4, relabel(s, p, cp));
        for (int c = 1; c <= 3; ++c)
            CHECK(compute_epsilon(s, c) == compute_epsilon(s2, cp[c]));
    }
}

TEST_CASE("configuration profiles: exact table of 21 values") {
    const auto& P = epsilon_profiles();
    const Rat m3(-1, 3), h(1, 2), s6(1, 6), z(0);
    std::array<std::array<Rat, 3>, 7> expect = {{{m3, h, h},
                                                 {z, z, h},
                                                 {m3, s6, h},
                                                 {m3, m3, h},
                                                 {z, m3, h},
                                                 {z, m3, z},
                                                 {z, z, z}}};
    for (int i = 0; i < 7; ++i)
        for (int c = 0; c < 3; ++c) CHECK(P[i][c] == expect[i][c]);
}

TEST_CASE("candidate configurations per profile: frozen canonical forms") {
    using V = std::vector<std::vector<uint8_t>>;
    V expect[7] = {
        {{1, 1, 1, 1, 2, 3}, {1, 1, 2, 3, 1, 1}},
        {{1, 1, 2, 1, 2, 3}, {1, 1, 3, 2, 2, 2}},
        {{1, 1, 1, 2, 2, 3}},
        {{1, 1, 2, 2, 1, 3}, {1, 2, 2, 2, 3, 1}},
        {{1, 1, 2, 2, 2, 3}, {2, 2, 2, 2, 2, 3}},
        {{1, 1, 2, 2, 3, 3}, {2, 2, 2, 2, 2, 2}},
        {{1, 1, 2, 3, 2, 3}, {1, 1, 3, 2, 2, 3}},
    };
    for (int i = 0; i < 7; ++i) {
        auto cands = profile_candidates(i);
        REQUIRE(cands.size() == expect[i].size());
        for (size_t j = 0; j < cands.size(); ++j) {
            CHECK(cands[j].col == expect[i][j]);
            // each candidate really matches the profile
            for (int c = 1; c <= 3; ++c)
                CHECK(compute_epsilon(cands[j], c) == epsilon_profiles()[i][c - 1]);
        }
    }
}

TEST_CASE("interpretations and admissible pairs") {
    CHECK(all_interpretations().size() == 64);
    auto adm = admissible_pairs();
    CHECK(adm.size() == 14);
    // nonpositive entries only
    for (const auto& [i, c] : adm)
        CHECK(epsilon_profiles()[i][c - 1] <= 0);
    // first and last for order pinning
    CHECK(adm.front() == std::make_pair(0, 1));
    CHECK(adm.back() == std::make_pair(6, 3));
}

TEST_CASE("inequality vectors match frozen fingerprints") {
    auto check_vec = [](std::vector<uint8_t> cfg, int c, int support, const char* abs_s,
                        const char* sum_s) {
        RationalVector v = build_inequality_vector(TricoloredGraph(4, std::move(cfg)), c);
        VecStats st = stats(v);
        CHECK(st.support == support);
        CHECK(st.abs_sum == rat_parse(abs_s));
        CHECK(st.sum == rat_parse(sum_s));
    };
    check_vec({1, 1, 1, 1, 2, 3}, 1, 40, "67/180", "-11/60");
    check_vec({1, 1, 2, 2, 3, 3}, 2, 29, "1/2", "-17/90");
    check_vec({1, 1, 2, 3, 2, 3}, 1, 13, "17/120", "-1/8");
}

TEST_CASE("square vectors match frozen fingerprints") {
    const auto& specs = square_specs();
    REQUIRE(specs.size() == 4);
    CHECK(specs[0].name == "wB");
    CHECK(specs[2].name == "wC");
    VecStats sB = stats(build_square_vector(specs[0]));
    CHECK(sB.support == 58);
    CHECK(sB.abs_sum == rat_parse("954739/12"));
    CHECK(sB.sum == rat_parse("650999/20"));
    VecStats sC = stats(build_square_vector(specs[2]));
    CHECK(sC.support == 35);
    CHECK(sC.abs_sum == rat_parse("310623/20"));
    CHECK(sC.sum == rat_parse("366869/60"));
}

TEST_CASE("trichromatic-vertex indicator: support and direct probability") {
    RationalVector w3 = build_w3();
    VecStats st = stats(w3);
    CHECK(st.support == 116);
    for (const auto& q : w3) CHECK((q == 0 || q == 1));
    // independent check on random hosts: dot(w3, lift(G)) equals the exact
    // probability that a random 5-subset contains a trichromatic vertex
    Rng rng(77);
    for (int trial = 0; trial < 3; ++trial) {
        TricoloredGraph G = random_graph(7, rng);
        Rat lhs = dot(w3, lift(G));
        long hits = 0, total = 0;
        std::vector<int> sel = {0, 1, 2, 3, 4};
        while (true) {
            ++total;
            std::vector<uint8_t> sub(pair_count(5));
            for (int a = 0; a < 5; ++a)
                for (int b = a + 1; b < 5; ++b)
                    sub[pair_index(a, b, 5)] = G.color(sel[a], sel[b]);
            if (has_trichromatic_vertex(TricoloredGraph(5, sub))) ++hits;
            int t = 4;
            while (t >= 0 && sel[t] == 2 + t) --t;
            if (t < 0) break;
            ++sel[t];
            for (int j = t + 1; j < 5; ++j) sel[j] = sel[j - 1] + 1;
        }
        Rat rhs(hits, total);
        rhs.canonicalize();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("averaged inequality vectors agree with the direct scan exactly") {
    Rng rng(101);
    std::vector<std::pair<std::vector<uint8_t>, int>> probes = {
        {{1, 1, 1, 1, 2, 3}, 1},
        {{1, 1, 2, 3, 2, 3}, 2},
        {{2, 2, 2, 2, 2, 2}, 1},  // symmetric configuration: twist averaging matters
    };
    for (const auto& [cfg, c] : probes) {
        TricoloredGraph s(4, cfg);
        RationalVector v = build_inequality_vector(s, c);
        for (int trial = 0; trial < 2; ++trial) {
            TricoloredGraph G = random_graph(7, rng);
            CHECK(dot(v, lift(G)) == direct_inequality_eval(s, c, G));
        }
    }
}

TEST_CASE("averaged squares agree with the direct scan exactly") {
    Rng rng(103);
    for (int which : {0, 2}) {  // wB and wC
        const SquareSpec& sp = square_specs()[which];
        RationalVector v = build_square_vector(sp);
        TricoloredGraph G = random_graph(7, rng);
        CHECK(dot(v, lift(G)) == direct_square_eval(sp, G));
    }
}

TEST_CASE("symmetric configuration has 41 one-extension flag classes") {
    TypeSigma mono4(TricoloredGraph(4, {2, 2, 2, 2, 2, 2}));
    CHECK(mono4.stab.size() == 2);
    CHECK(enumerate_flags(mono4, 5).size() == 41);
}

TEST_CASE("reference coefficients parse and split by magnitude") {
    auto ref = reference_coefficients();
    REQUIRE(ref.size() == 14);
    for (const auto& q : ref) CHECK(q > 0);
    for (int i = 0; i < 10; ++i) CHECK(ref[i] > 1);    // inequality weights
    for (int i = 10; i < 14; ++i) CHECK(ref[i] < 1);   // square weights
}

TEST_CASE("assignment checking reports exact slack and worst violation") {
    RationalVector w3 = zero_vector();
    std::vector<CertColumn> cols(1);
    cols[0].kind = "inequality";
    cols[0].key = "synthetic";
    cols[0].vec = zero_vector();
    cols[0].vec[5] = Rat(1);
    cols[0].vec[7] = Rat(-2);
    SlackCheck ok = check_assignment(cols, {Rat(0)}, w3);
    CHECK(ok.valid);
    SlackCheck bad = check_assignment(cols, {Rat(3)}, w3);
    CHECK(!bad.valid);
    CHECK(bad.worst_class == 5);
    CHECK(bad.worst == Rat(-3));
    CHECK(bad.slack[7] == Rat(6));
}

TEST_CASE("certificate columns: 14 inequalities plus 4 squares, keys well-formed") {
    Interpretation it;
    for (int i = 0; i < 7; ++i) it.fig[i] = profile_candidates(i)[0];
    it.index = 0;
    auto cols = certificate_columns(it);
    REQUIRE(cols.size() == 18);
    int ineq = 0, sq = 0;
    for (const auto& col : cols) {
        if (col.kind == "inequality") {
            ++ineq;
            CHECK(col.key.find(":c") == 12);
            CHECK(col.key.find(":slot") != std::string::npos);
        } else {
            ++sq;
        }
        CHECK(col.vec.size() == static_cast<size_t>(class_count(5)));
    }
    CHECK(ineq == 14);
    CHECK(sq == 4);
}
