// inventory of the certificate column pool: per-slot candidates with their
// additive corrections, the admissible colors, and the distinct averaged
// vectors after twist collapse
#include "trico/certificate.hpp"

#include <iostream>
#include <map>

using namespace trico;

static std::string vec_stats(const RationalVector& v) {
    int support = 0;
    Rat abs_sum(0);
    for (const Rat& x : v)
        if (x != 0) {
            ++support;
            abs_sum += x < 0 ? -x : x;
        }
    return "support " + std::to_string(support) + ", |sum| " + rat_str(abs_sum);
}

int main() {
    auto pairs = admissible_pairs();
    std::cout << "admissible (slot, color) pairs: " << pairs.size() << "\n\n";

    std::vector<RationalVector> distinct;
    std::vector<std::vector<std::string>> members;
    for (int slot = 0; slot < 7; ++slot) {
        auto cands = profile_candidates(slot);
        std::cout << "slot " << slot << ": " << cands.size() << " candidate configuration"
                  << (cands.size() == 1 ? "" : "s") << "\n";
        for (size_t i = 0; i < cands.size(); ++i) {
            std::cout << "  [" << i << "] " << key_hex(cands[i].col) << "  corrections";
            for (int c = 1; c <= 3; ++c) std::cout << " " << rat_str(compute_epsilon(cands[i], c));
            std::cout << "\n";
            for (int c = 1; c <= 3; ++c) {
                bool admissible = false;
                for (auto [s, cc] : pairs)
                    if (s == slot && cc == c) admissible = true;
                if (!admissible) continue;
                RationalVector v = build_inequality_vector(cands[i], c);
                std::string tag =
                    "slot" + std::to_string(slot) + "." + std::to_string(i) + ".c" + std::to_string(c);
                size_t j = 0;
                for (; j < distinct.size(); ++j)
                    if (distinct[j] == v) break;
                if (j == distinct.size()) {
                    distinct.push_back(std::move(v));
                    members.push_back({});
                }
                members[j].push_back(tag);
            }
        }
    }

    std::cout << "\ndistinct inequality vectors: " << distinct.size() << "\n";
    for (size_t j = 0; j < distinct.size(); ++j) {
        std::cout << "  #" << j << " (" << vec_stats(distinct[j]) << "):";
        for (const auto& t : members[j]) std::cout << " " << t;
        std::cout << "\n";
    }

    std::cout << "\nsquares:\n";
    for (const auto& sp : square_specs())
        std::cout << "  " << sp.name << "  " << vec_stats(build_square_vector(sp)) << "\n";

    RationalVector w3 = build_w3();
    int s = 0;
    for (const Rat& x : w3)
        if (x != 0) ++s;
    std::cout << "\ntrichromatic indicator support: " << s << " of " << w3.size() << "\n";
    return 0;
}
