#pragma once
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace trico {

// feasibility of { A x <= b, x >= 0 } in exact rationals.
// feasible: returns a basic solution x (Bland's rule, so the entering order
// follows column index and the result is deterministic).
// infeasible: returns y >= 0 with yA >= 0 componentwise and y.b < 0,
// an exact impossibility witness for the whole system.
struct LpResult {
    bool feasible = false;
    std::vector<Rat> x;
    std::vector<Rat> farkas;
    long pivots = 0;
};

inline LpResult solve_leq(const std::vector<std::vector<Rat>>& A,
                          const std::vector<Rat>& b) {
    const int m = static_cast<int>(A.size());
    const int n = m ? static_cast<int>(A[0].size()) : 0;
    // columns: n structural, m slack, artificials appended for negative rows
    std::vector<int> sign(m, 1);
    int arts = 0;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) { sign[i] = -1; ++arts; }
    const int slack0 = n, art0 = n + m, N = n + m + arts;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(N, Rat(0)));
    std::vector<Rat> r(m);
    std::vector<int> basis(m);
    std::vector<bool> is_art(N, false);
    int ai = art0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = sign[i] * A[i][j];
        T[i][slack0 + i] = Rat(sign[i]);
        r[i] = sign[i] * b[i];
        if (sign[i] < 0) {
            T[i][ai] = Rat(1);
            is_art[ai] = true;
            basis[i] = ai++;
        } else {
            basis[i] = slack0 + i;
        }
    }

    LpResult res;
    auto reduced_cost = [&](int j) {
        // phase-1 cost: 1 on artificials, 0 elsewhere
        Rat d = is_art[j] ? Rat(1) : Rat(0);
        for (int i = 0; i < m; ++i)
            if (is_art[basis[i]] && T[i][j] != 0) d -= T[i][j];
        return d;
    };

    while (true) {
        int enter = -1;
        for (int j = 0; j < N; ++j) {
            if (reduced_cost(j) < 0) { enter = j; break; }  // Bland: lowest index
        }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rat ratio = r[i] / T[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw std::runtime_error("phase-1 unbounded: broken tableau");
        // pivot
        Rat piv = T[leave][enter];
        for (int j = 0; j < N; ++j) if (T[leave][j] != 0) T[leave][j] /= piv;
        r[leave] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (int j = 0; j < N; ++j)
                if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
            r[i] -= f * r[leave];
        }
        basis[leave] = enter;
        ++res.pivots;
    }

    Rat infeas(0);
    for (int i = 0; i < m; ++i)
        if (is_art[basis[i]]) infeas += r[i];

    if (infeas == 0) {
        res.feasible = true;
        res.x.assign(n, Rat(0));
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) res.x[basis[i]] = r[i];
        return res;
    }
    // infeasible: the final reduced costs of the slack columns are the witness
    res.feasible = false;
    res.farkas.assign(m, Rat(0));
    for (int i = 0; i < m; ++i) {
        Rat y = reduced_cost(slack0 + i);
        y.canonicalize();
        res.farkas[i] = y;
    }
    return res;
}

// exact check of the infeasibility witness against the original data
inline bool farkas_valid(const std::vector<std::vector<Rat>>& A,
                         const std::vector<Rat>& b,
                         const std::vector<Rat>& y) {
    const int m = static_cast<int>(A.size());
    const int n = m ? static_cast<int>(A[0].size()) : 0;
    Rat yb(0);
    for (int i = 0; i < m; ++i) {
        if (y[i] < 0) return false;
        yb += y[i] * b[i];
    }
    if (yb >= 0) return false;
    for (int j = 0; j < n; ++j) {
        Rat s(0);
        for (int i = 0; i < m; ++i) s += y[i] * A[i][j];
        if (s < 0) return false;
    }
    return true;
}

} // namespace trico
