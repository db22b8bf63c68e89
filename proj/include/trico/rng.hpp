#pragma once
#include <cstdint>
#include <vector>

namespace trico {

// splitmix64: tiny, seedable, identical output on every platform.
// std::mt19937 + distributions are not portable across standard libraries,
// and reports must be reproducible from their seed alone.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // unbiased via rejection
    uint64_t below(uint64_t n) {
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do { v = next(); } while (v >= lim);
        return v % n;
    }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double unit() {  // 53-bit mantissa in [0,1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // k distinct values from [0,n), order of draw
    std::vector<int> sample(int n, int k) {
        std::vector<int> out;
        out.reserve(k);
        while (static_cast<int>(out.size()) < k) {
            int v = static_cast<int>(below(static_cast<uint64_t>(n)));
            bool dup = false;
            for (int x : out) if (x == v) { dup = true; break; }
            if (!dup) out.push_back(v);
        }
        return out;
    }

    // deterministic derived stream, for per-thread generators
    Rng stream(uint64_t idx) const {
        Rng r(state ^ (0x9e3779b97f4a7c15ull * (idx + 1)));
        r.next();
        return r;
    }
};

} // namespace trico
