#pragma once

#include <vector>

#include "tormori/fan.hpp"

namespace tormori {

// Torus-invariant Q-divisor D = sum d_v D_v, one coefficient per fan ray.
struct TorusDivisor {
    std::vector<Rat> coeffs;

    bool integral() const {
        for (const Rat& c : coeffs)
            if (denominator(c) != 1) return false;
        return true;
    }

    static TorusDivisor zero(const Fan& f) {
        return TorusDivisor{std::vector<Rat>(f.rays.size(), Rat(0))};
    }
    static TorusDivisor prime(const Fan& f, int ray) {
        TorusDivisor d = zero(f);
        d.coeffs.at(ray) = 1;
        return d;
    }
    // -K = sum of all prime invariant divisors
    static TorusDivisor anticanonical(const Fan& f) {
        return TorusDivisor{std::vector<Rat>(f.rays.size(), Rat(1))};
    }

    TorusDivisor& operator+=(const TorusDivisor& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    TorusDivisor& operator-=(const TorusDivisor& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
        return *this;
    }
    friend TorusDivisor operator+(TorusDivisor a, const TorusDivisor& b) { return a += b; }
    friend TorusDivisor operator-(TorusDivisor a, const TorusDivisor& b) { return a -= b; }
};

// Support-function data: per maximal cone, m_sigma with <m_sigma, v> = -d_v
// on the cone's generators. Exists iff the divisor is Q-Cartier; on a
// simplicial fan it always does.
struct CartierData {
    std::vector<RatRow> m_sigma;  // parallel to max_cones

    bool cartier() const {
        for (const auto& m : m_sigma)
            for (const Rat& x : m)
                if (denominator(x) != 1) return false;
        return true;
    }
};

inline RatRow local_support_functional(const Fan& f, const TorusDivisor& D,
                                       const Cone& c) {
    RatMatrix rows;
    RatRow rhs;
    for (int r : c.rays) {
        RatRow row(f.rank);
        for (int i = 0; i < f.rank; ++i) row[i] = Rat(f.rays[r][i]);
        rows.push_back(std::move(row));
        rhs.push_back(-D.coeffs[r]);
    }
    if (rows.empty()) return RatRow(f.rank, Rat(0));
    auto m = rat_solve(std::move(rows), std::move(rhs));
    if (!m) throw Error("divisor is not Q-Cartier");
    return *m;
}

inline CartierData cartier_data(const Fan& f, const TorusDivisor& D) {
    if (int(D.coeffs.size()) != f.ray_count())
        throw Error("divisor coefficient count does not match the fan");
    CartierData cd;
    cd.m_sigma.reserve(f.max_cones.size());
    for (const Cone& c : f.max_cones)
        cd.m_sigma.push_back(local_support_functional(f, D, c));
    return cd;
}

}  // namespace tormori
