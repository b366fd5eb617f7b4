#pragma once

#include <optional>
#include <vector>

#include "tormori/lattice.hpp"
#include "tormori/numeric.hpp"

namespace tormori {
namespace lp {

// Phase-1 simplex over exact rationals: find x >= 0 with A x = b, or report
// infeasible. Bland's rule throughout, so no cycling. Sizes here are tiny
// (dozens of variables at most), exactness matters more than speed.
inline std::optional<std::vector<Rat>> feasible_nonnegative(RatMatrix a, RatRow b) {
    int m = int(a.size());
    int n = m ? int(a[0].size()) : 0;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
            b[i] = -b[i];
        }

    // tableau over columns [x_0..x_{n-1} | artificials | rhs]
    int total = n + m;
    RatMatrix t(m, RatRow(total + 1, Rat(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][total] = b[i];
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    // objective: minimize sum of artificials; reduced costs start as
    // -(sum of constraint rows) on the structural columns
    RatRow cost(total + 1, Rat(0));
    for (int j = 0; j < total; ++j) {
        Rat s(0);
        for (int i = 0; i < m; ++i) s += t[i][j];
        cost[j] = (j >= n ? Rat(1) : Rat(0)) - s;
    }
    while (true) {
        int enter = -1;
        for (int j = 0; j < total; ++j)
            if (cost[j] < 0) { enter = j; break; }
        if (enter < 0) break;
        int leave = -1;
        Rat best(0);
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][total] / t[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;  // unbounded: cannot happen for phase 1
        Rat piv = t[leave][enter];
        for (int j = 0; j <= total; ++j) t[leave][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
        }
        Rat f = cost[enter];
        for (int j = 0; j <= total; ++j) cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }

    for (int i = 0; i < m; ++i)
        if (basis[i] >= n && t[i][total] != 0) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][total];
    return x;
}

// Nonnegative coefficients writing `target` in the given generators, if any.
inline std::optional<std::vector<Rat>> cone_combination(
    const std::vector<RatRow>& generators, const RatRow& target) {
    if (generators.empty()) {
        for (const Rat& c : target)
            if (c != 0) return std::nullopt;
        return std::vector<Rat>{};
    }
    int n = int(target.size());
    RatMatrix a(n, RatRow(generators.size()));
    for (std::size_t j = 0; j < generators.size(); ++j)
        for (int i = 0; i < n; ++i) a[i][j] = generators[j][i];
    return feasible_nonnegative(std::move(a), target);
}

inline std::optional<std::vector<Rat>> cone_combination(
    const std::vector<LatticeVector>& generators, const LatticeVector& target) {
    std::vector<RatRow> gens;
    gens.reserve(generators.size());
    for (const auto& g : generators) {
        RatRow r(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) r[i] = Rat(g[i]);
        gens.push_back(std::move(r));
    }
    RatRow t(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) t[i] = Rat(target[i]);
    return cone_combination(gens, t);
}

inline bool in_cone(const std::vector<LatticeVector>& generators,
                    const LatticeVector& target) {
    return cone_combination(generators, target).has_value();
}

// True iff the cone spanned by the generators contains a line, i.e. 0 is a
// nontrivial nonnegative combination.
inline bool contains_line(const std::vector<LatticeVector>& generators) {
    if (generators.empty()) return false;
    int n = int(generators[0].size());
    RatMatrix a(n + 1, RatRow(generators.size()));
    RatRow b(n + 1, Rat(0));
    for (std::size_t j = 0; j < generators.size(); ++j) {
        for (int i = 0; i < n; ++i) a[i][j] = Rat(generators[j][i]);
        a[n][j] = 1;
    }
    b[n] = 1;
    return feasible_nonnegative(std::move(a), std::move(b)).has_value();
}

// Incrementally built feasibility system over free rational variables
// (each split into a difference of nonnegatives) with equality and >=
// constraints. Used by the general-cone face machinery.
struct FeasibilitySystem {
    int nvars;
    std::vector<RatRow> eq_lhs;
    RatRow eq_rhs;
    std::vector<RatRow> ge_lhs;
    RatRow ge_rhs;

    explicit FeasibilitySystem(int vars) : nvars(vars) {}

    void add_eq(const RatRow& coeffs, Rat rhs) {
        eq_lhs.push_back(coeffs);
        eq_rhs.push_back(std::move(rhs));
    }
    void add_ge(const RatRow& coeffs, Rat rhs) {
        ge_lhs.push_back(coeffs);
        ge_rhs.push_back(std::move(rhs));
    }

    bool feasible() const {
        int rows = int(eq_lhs.size() + ge_lhs.size());
        int cols = 2 * nvars + int(ge_lhs.size());  // x = p - q, plus slacks
        RatMatrix a(rows, RatRow(cols, Rat(0)));
        RatRow b(rows);
        int r = 0;
        for (std::size_t e = 0; e < eq_lhs.size(); ++e, ++r) {
            for (int j = 0; j < nvars; ++j) {
                a[r][j] = eq_lhs[e][j];
                a[r][nvars + j] = -eq_lhs[e][j];
            }
            b[r] = eq_rhs[e];
        }
        for (std::size_t g = 0; g < ge_lhs.size(); ++g, ++r) {
            for (int j = 0; j < nvars; ++j) {
                a[r][j] = ge_lhs[g][j];
                a[r][nvars + j] = -ge_lhs[g][j];
            }
            a[r][2 * nvars + int(g)] = -1;  // lhs - slack = rhs
            b[r] = ge_rhs[g];
        }
        return feasible_nonnegative(std::move(a), std::move(b)).has_value();
    }
};

}  // namespace lp
}  // namespace tormori
