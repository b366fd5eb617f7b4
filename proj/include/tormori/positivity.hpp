#pragma once

#include <optional>
#include <vector>

#include "tormori/contract.hpp"
#include "tormori/divisor.hpp"
#include "tormori/mori.hpp"

namespace tormori {

enum class PositivityVerdict { Ample, NefNotAmple, NotNef };

inline const char* to_string(PositivityVerdict v) {
    switch (v) {
        case PositivityVerdict::Ample: return "ample";
        case PositivityVerdict::NefNotAmple: return "nef_not_ample";
        default: return "not_nef";
    }
}

struct PositivityResult {
    PositivityVerdict verdict;
    std::vector<Rat> values;          // one intersection number per contracted wall
    std::optional<int> witness_wall;  // offending wall for non-ample verdicts
    std::optional<bool> f_free;       // integral divisors only: free <=> nef
};

// Relative nef/ample test: sign of D on every contracted wall curve. For an
// integral divisor the f-free verdict equals the f-nef one (toric freeness
// is nefness), so no section machinery is involved.
inline PositivityResult relative_positivity(const FanMorphism& m,
                                            const std::vector<Wall>& contracted,
                                            const TorusDivisor& D) {
    PositivityResult res;
    bool all_pos = true, all_nonneg = true;
    for (const Wall& w : contracted) {
        Rat v = intersection_number(m.source, D, w);
        if (v <= 0 && all_pos) {
            all_pos = false;
            if (!res.witness_wall) res.witness_wall = int(res.values.size());
        }
        if (v < 0 && all_nonneg) {
            all_nonneg = false;
            res.witness_wall = int(res.values.size());
        }
        res.values.push_back(std::move(v));
    }
    res.verdict = all_pos ? PositivityVerdict::Ample
                 : all_nonneg ? PositivityVerdict::NefNotAmple
                              : PositivityVerdict::NotNef;
    if (res.verdict == PositivityVerdict::Ample) res.witness_wall.reset();
    if (D.integral()) res.f_free = all_nonneg;
    return res;
}

inline PositivityResult relative_positivity(const FanMorphism& m,
                                            const TorusDivisor& D) {
    return relative_positivity(m, contracted_walls(m), D);
}

inline std::vector<Wall> walls_of(const MoriAnalysis& an) {
    std::vector<Wall> ws;
    ws.reserve(an.contracted.size());
    for (const auto& c : an.contracted) ws.push_back(c.wall);
    return ws;
}

// Pairing of a divisor with the line class C_R of an extremal ray on a
// smooth source: D_v . C_R is 1 on the xs, -b_j on the ys, 0 elsewhere.
// The relation coefficients a_i must all be 1 on a smooth fan; anything
// else is surfaced, never rescaled.
inline Rat line_class_pairing(const FanMorphism& m,
                              const ExtremalPrimitiveRelation& epr,
                              const TorusDivisor& D) {
    if (!is_smooth(m.source)) throw Error("C_R pairing requires smooth X");
    for (const Int& ai : epr.a)
        if (ai != 1) throw Error("Batyrev normalization violated");
    if (int(D.coeffs.size()) != m.source.ray_count())
        throw Error("divisor coefficient count does not match the fan");
    Rat v(0);
    for (int r : epr.xs) v += D.coeffs[r];
    for (int j = 0; j < epr.m(); ++j) v -= Rat(epr.b[j]) * D.coeffs[epr.ys[j]];
    return v;
}

// Report for the twist bound: if (L . C_R) >= t on every extremal ray, then
// (L(-D) . C_R) >= t-1 for every invariant prime divisor D; for t = 1 with
// L f-ample every twist L(-D_v) is f-free.
struct TwistFreeReport {
    bool hypothesis_holds = false;
    std::optional<int> violating_ray;  // extremal ray index when hypothesis fails
    Rat min_pairing;                   // min over rays of L . C_R
    Rat min_twisted;                   // min over (v, R) of L(-D_v) . C_R
    bool bound_holds = false;          // min_twisted >= t - 1
    std::vector<bool> twist_free;      // per ray v, filled when t == 1 and L f-ample
};

inline TwistFreeReport twist_free_bound(const FanMorphism& m,
                                        const MoriAnalysis& an,
                                        const TorusDivisor& L, const Int& t) {
    if (t <= 0) throw Error("twist bound requires a positive threshold");
    if (!L.integral()) throw Error("twist bound requires an integral divisor");
    TwistFreeReport rep;
    std::vector<ExtremalPrimitiveRelation> eprs;
    for (std::size_t k = 0; k < an.extremal.size(); ++k)
        eprs.push_back(extremal_primitive_relation(m, an, an.extremal[k]));
    if (eprs.empty()) throw Error("no extremal rays to test");

    bool first = true;
    for (std::size_t k = 0; k < eprs.size(); ++k) {
        Rat p = line_class_pairing(m, eprs[k], L);
        if (first || p < rep.min_pairing) rep.min_pairing = p;
        first = false;
        if (p < Rat(t) && !rep.violating_ray) rep.violating_ray = int(k);
    }
    rep.hypothesis_holds = !rep.violating_ray.has_value();
    if (!rep.hypothesis_holds) return rep;

    first = true;
    for (int v = 0; v < m.source.ray_count(); ++v) {
        TorusDivisor dv = TorusDivisor::prime(m.source, v);
        for (const auto& epr : eprs) {
            Rat tw = line_class_pairing(m, epr, L) - line_class_pairing(m, epr, dv);
            if (first || tw < rep.min_twisted) rep.min_twisted = tw;
            first = false;
        }
    }
    rep.bound_holds = rep.min_twisted >= Rat(t - 1);

    auto walls = walls_of(an);
    if (t == 1 &&
        relative_positivity(m, walls, L).verdict == PositivityVerdict::Ample) {
        for (int v = 0; v < m.source.ray_count(); ++v) {
            auto r = relative_positivity(m, walls,
                                         L - TorusDivisor::prime(m.source, v));
            rep.twist_free.push_back(r.verdict != PositivityVerdict::NotNef);
        }
    }
    return rep;
}

struct TwistVerdict {
    bool positive;                   // free (pair version) / ample (single version)
    std::optional<int> witness_ray;  // extremal ray index proving the negative verdict
};

namespace detail {

inline void require_f_ample(const FanMorphism& m, const std::vector<Wall>& walls,
                            const TorusDivisor& L) {
    if (!L.integral()) throw Error("criterion requires f-ample L");
    if (relative_positivity(m, walls, L).verdict != PositivityVerdict::Ample)
        throw Error("criterion requires f-ample L");
}

}  // namespace detail

// L(-D_1-D_2) fails to be f-free exactly when some extremal ray has both
// rays among its xs and L . C_R = 1. The verdict is cross-checked against
// the direct nef computation; a disagreement is surfaced as an error.
inline TwistVerdict two_divisor_free_criterion(const FanMorphism& m,
                                               const MoriAnalysis& an,
                                               const TorusDivisor& L, int v1,
                                               int v2) {
    if (!is_smooth(m.source)) throw Error("criterion requires smooth X");
    if (v1 == v2) throw Error("criterion requires two distinct rays");
    auto walls = walls_of(an);
    detail::require_f_ample(m, walls, L);
    TwistVerdict out{true, std::nullopt};
    for (std::size_t k = 0; k < an.extremal.size(); ++k) {
        auto epr = extremal_primitive_relation(m, an, an.extremal[k]);
        bool both = std::binary_search(epr.xs.begin(), epr.xs.end(), v1) &&
                    std::binary_search(epr.xs.begin(), epr.xs.end(), v2);
        if (both && line_class_pairing(m, epr, L) == 1) {
            out.positive = false;
            out.witness_ray = int(k);
            break;
        }
    }
    TorusDivisor twisted = L - TorusDivisor::prime(m.source, v1) -
                           TorusDivisor::prime(m.source, v2);
    bool direct_free =
        relative_positivity(m, walls, twisted).verdict != PositivityVerdict::NotNef;
    if (direct_free != out.positive)
        throw Error("two-divisor criterion disagrees with the direct nef check");
    return out;
}

// L(-D) fails to be f-ample exactly when some extremal ray has v among its
// xs and L . C_R = 1; cross-checked the same way.
inline TwistVerdict one_divisor_ample_criterion(const FanMorphism& m,
                                                const MoriAnalysis& an,
                                                const TorusDivisor& L, int v) {
    if (!is_smooth(m.source)) throw Error("criterion requires smooth X");
    auto walls = walls_of(an);
    detail::require_f_ample(m, walls, L);
    TwistVerdict out{true, std::nullopt};
    for (std::size_t k = 0; k < an.extremal.size(); ++k) {
        auto epr = extremal_primitive_relation(m, an, an.extremal[k]);
        if (std::binary_search(epr.xs.begin(), epr.xs.end(), v) &&
            line_class_pairing(m, epr, L) == 1) {
            out.positive = false;
            out.witness_ray = int(k);
            break;
        }
    }
    TorusDivisor twisted = L - TorusDivisor::prime(m.source, v);
    bool direct_ample =
        relative_positivity(m, walls, twisted).verdict == PositivityVerdict::Ample;
    if (direct_ample != out.positive)
        throw Error("one-divisor criterion disagrees with the direct ample check");
    return out;
}

}  // namespace tormori
