// inspect a .tcg file: order, color balance, per-vertex palettes, class key
#include "trico/blowup.hpp"
#include "trico/domination.hpp"
#include "trico/graph.hpp"

#include <bit>
#include <fstream>
#include <iostream>

using namespace trico;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: tcg-info <file.tcg | ->\n";
        return 64;
    }
    TricoloredGraph g = [&] {
        std::string path = argv[1];
        if (path == "-") return read_tcg(std::cin);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        return read_tcg(in);
    }();

    std::cout << "order        " << g.n << "\n";
    long cnt[4] = {0, 0, 0, 0};
    for (uint8_t c : g.col) ++cnt[c];
    std::cout << "edge colors  1:" << cnt[1] << " 2:" << cnt[2] << " 3:" << cnt[3] << "\n";
    if (g.n <= 7) std::cout << "class key    " << canonical_key_hex(g) << "\n";

    auto masks = incident_color_masks(g);
    int tri = 0, bi = 0, mono = 0;
    for (int m : masks) {
        int k = std::popcount(static_cast<unsigned>(m));
        (k == 3 ? tri : k == 2 ? bi : mono)++;
    }
    std::cout << "vertices     trichromatic:" << tri << " bichromatic:" << bi
              << " single:" << mono << "\n";
    if (g.n <= 16) {
        for (int v = 0; v < g.n; ++v) {
            std::cout << "  v" << v << " sees";
            for (int c = 1; c <= 3; ++c)
                if (masks[v] >> (c - 1) & 1) std::cout << " " << c;
            std::cout << "\n";
        }
    }

    if (g.n >= 2) {
        int t = std::min(4, g.n);
        DominationResult r = best_domination(g, t);
        std::cout << "best " << t << "-set dominates " << r.size << "/" << g.n << " (color "
                  << r.color << (r.lower_bound_only ? ", heuristic" : "") << ")\n";
    }
    return 0;
}
