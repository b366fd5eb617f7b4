#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tormori/divisor.hpp"
#include "tormori/fan.hpp"
#include "tormori/morphism.hpp"

namespace tormori {

// The unique primitive integer relation among the rays of the two maximal
// cones adjacent to an interior wall, signed so the two off-wall rays carry
// positive coefficients.
struct WallRelation {
    Wall wall;
    std::map<int, Int> coeffs;  // ray index -> coefficient, over G(s1) u G(s2)
    std::vector<int> negative_part;
    std::vector<int> zero_part;
    std::vector<int> positive_part;
};

inline WallRelation wall_relation(const Fan& f, const Wall& w) {
    if (!w.interior()) throw Error("no relation at boundary wall");
    std::vector<int> support = f.max_cones[w.adjacent[0]].rays;
    for (int r : f.max_cones[w.adjacent[1]].rays)
        if (!std::binary_search(support.begin(), support.end(), r))
            support.push_back(r);
    std::sort(support.begin(), support.end());

    std::vector<LatticeVector> cols;
    for (int r : support) cols.push_back(f.rays[r]);
    auto kernel = integer_kernel(IntMatrix::from_columns(cols, f.rank));
    if (kernel.size() != 1) throw Error("wall relation is not unique");
    LatticeVector z = kernel[0];

    // off-wall rays: the one generator of each adjacent cone outside the wall
    auto off_ray = [&](int adj) {
        for (int r : f.max_cones[adj].rays)
            if (!std::binary_search(w.face.rays.begin(), w.face.rays.end(), r))
                return r;
        throw Error("wall is not a facet of its adjacent cone");
    };
    int u1 = off_ray(w.adjacent[0]);
    auto pos_of = [&](int ray) {
        return int(std::lower_bound(support.begin(), support.end(), ray) -
                   support.begin());
    };
    if (z[pos_of(u1)] < 0)
        for (auto& c : z) c = -c;

    WallRelation rel;
    rel.wall = w;
    for (std::size_t k = 0; k < support.size(); ++k) {
        rel.coeffs[support[k]] = z[k];
        int s = sign(z[k]);
        if (s < 0) rel.negative_part.push_back(support[k]);
        else if (s == 0) rel.zero_part.push_back(support[k]);
        else rel.positive_part.push_back(support[k]);
    }
    return rel;
}

enum class ClassNormalization { IntersectionCalibrated, PrimitiveInteger };

// Numerical class of the wall's invariant curve: the wall relation extended
// by zeros over all rays. For smooth adjacent cones the entries are the
// intersection numbers (D_v . V(w)); otherwise they are only the primitive
// integer relation and intersection numbers come from intersection_number.
struct CurveClass {
    std::vector<Rat> coeffs;
    ClassNormalization normalization = ClassNormalization::PrimitiveInteger;
};

inline CurveClass curve_class(const Fan& f, const Wall& w) {
    WallRelation rel = wall_relation(f, w);
    CurveClass cls;
    cls.coeffs.assign(f.rays.size(), Rat(0));
    for (const auto& [ray, c] : rel.coeffs) cls.coeffs[ray] = Rat(c);
    bool smooth_adj =
        multiplicity(f.cone_vectors(f.max_cones[w.adjacent[0]])) == 1 &&
        multiplicity(f.cone_vectors(f.max_cones[w.adjacent[1]])) == 1;
    cls.normalization = smooth_adj ? ClassNormalization::IntersectionCalibrated
                                   : ClassNormalization::PrimitiveInteger;
    return cls;
}

struct ContractedCurve {
    Wall wall;
    WallRelation relation;
    CurveClass cls;
};

// Classes of all walls contracted by the morphism; their nonnegative span
// is NE(X/Y).
inline std::vector<ContractedCurve> relative_mori_cone(const FanMorphism& m) {
    std::vector<ContractedCurve> out;
    for (const Wall& w : contracted_walls(m)) {
        ContractedCurve c;
        c.wall = w;
        c.relation = wall_relation(m.source, w);
        c.cls = curve_class(m.source, w);
        out.push_back(std::move(c));
    }
    return out;
}

// One ray of NE(X/Y): a proportionality class of contracted wall classes.
struct MoriRay {
    CurveClass cls;              // representative of the first supporting wall
    std::vector<int> wall_ids;   // indices into `contracted`
    bool extremal = false;
    std::vector<Rat> witness;    // non-extremal: coefficients over extremal rays
};

struct MoriAnalysis {
    std::vector<ContractedCurve> contracted;
    std::vector<MoriRay> rays;       // grouped, in order of first supporting wall
    std::vector<int> extremal;       // indices into `rays`
    int relative_picard_number = 0;
};

namespace detail {

inline std::vector<Rat> primitive_direction(const std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& x : v) l = lcm(l, denominator(x));
    LatticeVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        w[i] = numerator(v[i]) * (l / denominator(v[i]));
    Int g = gcd_of(w);
    std::vector<Rat> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(w[i] / g);
    return out;
}

}  // namespace detail

// Groups proportional contracted classes and decides extremality by exact
// LP: a class is extremal iff it is not a nonnegative combination of the
// other proportionality classes. Rejected classes keep an explicit witness
// combination over the extremal ones.
inline MoriAnalysis analyze_mori(const FanMorphism& m) {
    MoriAnalysis an;
    an.contracted = relative_mori_cone(m);

    std::vector<std::vector<Rat>> dirs;
    for (int i = 0; i < int(an.contracted.size()); ++i) {
        auto d = detail::primitive_direction(an.contracted[i].cls.coeffs);
        int g = -1;
        for (int k = 0; k < int(dirs.size()); ++k)
            if (dirs[k] == d) { g = k; break; }
        if (g < 0) {
            dirs.push_back(d);
            MoriRay r;
            r.cls = an.contracted[i].cls;
            r.wall_ids = {i};
            an.rays.push_back(std::move(r));
        } else {
            an.rays[g].wall_ids.push_back(i);
        }
    }

    for (int k = 0; k < int(an.rays.size()); ++k) {
        std::vector<RatRow> others;
        for (int j = 0; j < int(an.rays.size()); ++j)
            if (j != k) others.push_back(dirs[j]);
        an.rays[k].extremal = !lp::cone_combination(others, dirs[k]).has_value();
        if (an.rays[k].extremal) an.extremal.push_back(k);
    }
    std::vector<RatRow> extremal_dirs;
    for (int k : an.extremal) extremal_dirs.push_back(dirs[k]);
    for (int k = 0; k < int(an.rays.size()); ++k) {
        if (an.rays[k].extremal) continue;
        auto wit = lp::cone_combination(extremal_dirs, dirs[k]);
        if (!wit) throw Error("rejected class is not spanned by extremal classes");
        // re-verify the stored witness exactly
        for (std::size_t c = 0; c < dirs[k].size(); ++c) {
            Rat acc(0);
            for (std::size_t e = 0; e < extremal_dirs.size(); ++e)
                acc += (*wit)[e] * extremal_dirs[e][c];
            if (acc != dirs[k][c]) throw Error("extremality witness fails re-verification");
        }
        an.rays[k].witness = std::move(*wit);
    }

    RatMatrix span;
    for (const auto& c : an.contracted) span.push_back(c.cls.coeffs);
    an.relative_picard_number = span.empty() ? 0 : rat_rank(std::move(span));
    return an;
}

inline int relative_picard_number(const FanMorphism& m) {
    return analyze_mori(m).relative_picard_number;
}

// The relation a_1 x_1 + ... + a_l x_l = b_1 y_1 + ... + b_m y_m attached to
// an extremal ray, with the derived cones of the contraction construction.
struct ExtremalPrimitiveRelation {
    std::vector<int> xs;
    std::vector<Int> a;
    std::vector<int> ys;
    std::vector<Int> b;
    Cone w_prime;                        // cone on ys, in the source fan
    std::optional<GeneralCone> w_tilde;  // cone on ys u xs, pruned; birational only
    std::vector<int> w_plus;  // generator indices xs
    std::vector<Cone> sigma;  // sigma_i = cone on xs \ {x_i}
    int l() const { return int(xs.size()); }
    int m() const { return int(ys.size()); }

    Int degree() const {  // sum a_i - sum b_j; the sign of (-K) . C
        Int d = 0;
        for (const Int& x : a) d += x;
        for (const Int& y : b) d -= y;
        return d;
    }
};

namespace detail {

struct EprCore {
    std::vector<int> xs, ys;
    std::vector<Int> a, b;
    friend bool operator==(const EprCore&, const EprCore&) = default;
};

inline EprCore epr_core(const WallRelation& rel) {
    EprCore core;
    for (int r : rel.positive_part) {
        core.xs.push_back(r);
        core.a.push_back(rel.coeffs.at(r));
    }
    for (int r : rel.negative_part) {
        core.ys.push_back(r);
        core.b.push_back(-rel.coeffs.at(r));
    }
    return core;
}

}  // namespace detail

inline ExtremalPrimitiveRelation extremal_primitive_relation(
    const FanMorphism& m, const MoriAnalysis& an, int ray_index) {
    const MoriRay& ray = an.rays.at(ray_index);
    if (!ray.extremal) throw Error("ray is not extremal");

    // all supporting walls must induce the same relation data
    detail::EprCore core =
        detail::epr_core(an.contracted[ray.wall_ids[0]].relation);
    for (std::size_t k = 1; k < ray.wall_ids.size(); ++k)
        if (detail::epr_core(an.contracted[ray.wall_ids[k]].relation) != core)
            throw Error("non-canonical extremal relation");

    ExtremalPrimitiveRelation epr;
    epr.xs = core.xs;
    epr.a = core.a;
    epr.ys = core.ys;
    epr.b = core.b;
    epr.w_prime = Cone(core.ys);
    if (!core.ys.empty()) {  // for fiber-type rays cone(xs u ys) is not pointed
        std::vector<LatticeVector> tilde;
        for (int r : core.ys) tilde.push_back(m.source.rays[r]);
        for (int r : core.xs) tilde.push_back(m.source.rays[r]);
        epr.w_tilde = make_general_cone(std::move(tilde));
    }
    epr.w_plus = core.xs;
    for (int i = 0; i < epr.l(); ++i) {
        std::vector<int> rest;
        for (int j = 0; j < epr.l(); ++j)
            if (j != i) rest.push_back(core.xs[j]);
        epr.sigma.push_back(Cone(rest));
        // w' + sigma_i must be a cone of the fan
        std::vector<int> need = rest;
        need.insert(need.end(), core.ys.begin(), core.ys.end());
        std::sort(need.begin(), need.end());
        if (!generates_cone(m.source, need))
            throw Error("extremal structure violated");
    }
    if (is_complete(m.source)) {
        auto pcs = primitive_collections(m.source);
        if (std::find(pcs.begin(), pcs.end(), epr.xs) == pcs.end())
            throw Error("extremal structure violated");
    }
    return epr;
}

namespace detail {

// All faces of the fan containing the given sorted ray set.
inline std::set<std::vector<int>> faces_containing(const Fan& f,
                                                   const std::vector<int>& base) {
    std::set<std::vector<int>> out;
    for (const Cone& c : f.max_cones) {
        if (!c.contains_all(base)) continue;
        std::vector<int> extra;
        for (int r : c.rays)
            if (!std::binary_search(base.begin(), base.end(), r))
                extra.push_back(r);
        int e = int(extra.size());
        for (unsigned mask = 0; mask < (1u << e); ++mask) {
            std::vector<int> face = base;
            for (int i = 0; i < e; ++i)
                if (mask & (1u << i)) face.push_back(extra[i]);
            std::sort(face.begin(), face.end());
            out.insert(std::move(face));
        }
    }
    return out;
}

}  // namespace detail

// Closure property of the other primitive collections with respect to the
// extremal one: for Q meeting xs, (Q \ xs) u ys must contain a collection.
inline ValidationReport verify_primitive_closure(
    const Fan& f, const ExtremalPrimitiveRelation& epr) {
    ValidationReport rep;
    auto pcs = primitive_collections(f);
    for (const auto& q : pcs) {
        if (q == epr.xs) continue;
        bool meets = false;
        for (int r : q)
            if (std::binary_search(epr.xs.begin(), epr.xs.end(), r)) {
                meets = true;
                break;
            }
        if (!meets) continue;
        std::vector<int> s;
        for (int r : q)
            if (!std::binary_search(epr.xs.begin(), epr.xs.end(), r))
                s.push_back(r);
        s.insert(s.end(), epr.ys.begin(), epr.ys.end());
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        bool contains_pc = false;
        for (const auto& p : pcs)
            if (std::includes(s.begin(), s.end(), p.begin(), p.end())) {
                contains_pc = true;
                break;
            }
        if (!contains_pc) {
            std::string msg = "collection {";
            for (int r : q) msg += std::to_string(r) + " ";
            msg += "} has no replacement collection";
            rep.problems.push_back(std::move(msg));
        }
    }
    return rep;
}

// Structure theorem for cones containing w': replacing the xs-part of any
// such cone by any sigma_i must land back in the fan.
inline ValidationReport verify_extremal_structure(
    const Fan& f, const ExtremalPrimitiveRelation& epr) {
    ValidationReport rep;
    for (const auto& face : detail::faces_containing(f, epr.w_prime.rays)) {
        std::vector<int> tau;
        for (int r : face) {
            bool in_ys = std::binary_search(epr.ys.begin(), epr.ys.end(), r);
            bool in_xs = std::binary_search(epr.xs.begin(), epr.xs.end(), r);
            if (!in_ys && !in_xs) tau.push_back(r);
        }
        for (int i = 0; i < epr.l(); ++i) {
            std::vector<int> need = tau;
            need.insert(need.end(), epr.ys.begin(), epr.ys.end());
            for (int j = 0; j < epr.l(); ++j)
                if (j != i) need.push_back(epr.xs[j]);
            std::sort(need.begin(), need.end());
            if (!generates_cone(f, need)) {
                std::string msg = "w' + sigma_" + std::to_string(i) + " + tau {";
                for (int r : need) msg += std::to_string(r) + " ";
                msg += "} is not a cone";
                rep.problems.push_back(std::move(msg));
            }
        }
    }
    return rep;
}

// Sign of D_v . C for the extremal curve class: positive on xs, negative on
// ys, zero elsewhere.
inline int intersection_sign(const ExtremalPrimitiveRelation& epr, int ray) {
    if (std::binary_search(epr.xs.begin(), epr.xs.end(), ray)) return 1;
    if (std::binary_search(epr.ys.begin(), epr.ys.end(), ray)) return -1;
    return 0;
}

// Degree of D on the wall curve V(w): the difference of the two local
// support functionals descends to the rank-1 quotient across the wall; its
// value on the primitive image of the second off-wall ray, with the sign
// convention fixed by the line on the projective plane.
inline Rat intersection_number(const Fan& f, const TorusDivisor& D, const Wall& w) {
    if (!w.interior()) throw Error("no relation at boundary wall");
    if (int(D.coeffs.size()) != f.ray_count())
        throw Error("divisor coefficient count does not match the fan");
    RatRow m1 = local_support_functional(f, D, f.max_cones[w.adjacent[0]]);
    RatRow m2 = local_support_functional(f, D, f.max_cones[w.adjacent[1]]);
    RatRow delta(f.rank);
    for (int i = 0; i < f.rank; ++i) delta[i] = m1[i] - m2[i];

    std::vector<LatticeVector> wall_vecs = f.cone_vectors(w.face);
    QuotientMap q = quotient_map(wall_vecs, f.rank);
    if (q.rank_out != 1) throw Error("wall does not have corank one");

    int u2 = -1;
    for (int r : f.max_cones[w.adjacent[1]].rays)
        if (!std::binary_search(w.face.rays.begin(), w.face.rays.end(), r)) u2 = r;
    LatticeVector img = q.map.apply(f.rays[u2]);
    int s = sign(img[0]);

    // integer v with Q v = 1 (the row of Q is primitive)
    SmithForm sf = smith_normal_form(q.map);
    LatticeVector v(f.rank);
    for (int i = 0; i < f.rank; ++i) v[i] = sf.V.at(i, 0);
    if (sf.U.at(0, 0) < 0)
        for (auto& x : v) x = -x;
    Rat val(0);
    for (int i = 0; i < f.rank; ++i) val += delta[i] * Rat(v[i]);
    return val * s;
}

// Weighted-projective-space recognition: a complete simplicial fan with
// rank+1 rays generating the lattice is P(a_1,...,a_{n+1}); returns the
// weights in ray order.
inline std::optional<std::vector<Int>> recognize_wps(const Fan& f) {
    if (!f.simplicial() || !is_complete(f)) return std::nullopt;
    if (f.ray_count() != f.rank + 1) return std::nullopt;
    IntMatrix cols = IntMatrix::from_columns(f.rays, f.rank);
    SmithForm sf = smith_normal_form(cols);
    if (sf.rank != f.rank) return std::nullopt;
    for (int i = 0; i < sf.rank; ++i)
        if (sf.S.at(i, i) != 1) return std::nullopt;  // rays generate a proper sublattice
    auto kernel = integer_kernel(cols);
    if (kernel.size() != 1) return std::nullopt;
    LatticeVector z = kernel[0];
    bool all_neg = std::all_of(z.begin(), z.end(), [](const Int& c) { return c < 0; });
    if (all_neg)
        for (auto& c : z) c = -c;
    for (const Int& c : z)
        if (c <= 0) return std::nullopt;
    return z;
}

}  // namespace tormori
