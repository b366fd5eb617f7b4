#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tormori/lattice.hpp"
#include "tormori/lp.hpp"
#include "tormori/numeric.hpp"

namespace tormori {

// Strongly convex rational cone given by an irredundant list of primitive
// generators (none is a nonnegative combination of the others). Used for the
// non-simplicial cones that contraction targets produce.
struct GeneralCone {
    std::vector<LatticeVector> generators;
};

// Drops generators lying in the cone of the remaining ones. Keeps input order.
inline std::vector<LatticeVector> prune_to_extreme(
    std::vector<LatticeVector> gens) {
    for (std::size_t i = 0; i < gens.size();) {
        std::vector<LatticeVector> others;
        others.reserve(gens.size() - 1);
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) others.push_back(gens[j]);
        if (lp::in_cone(others, gens[i]))
            gens.erase(gens.begin() + long(i));
        else
            ++i;
    }
    return gens;
}

inline GeneralCone make_general_cone(std::vector<LatticeVector> gens) {
    for (auto& g : gens) {
        if (is_zero(g)) throw Error("general cone generator is zero");
        if (!is_primitive(g)) throw Error("general cone generator not primitive");
    }
    if (lp::contains_line(gens)) throw Error("cone is not strongly convex");
    return GeneralCone{prune_to_extreme(std::move(gens))};
}

// H-representation of a cone: rational functionals cutting out its span and
// its facets. Facet normals are found by scanning corank-1 subsets of the
// generators; fine for the handful of generators a contraction produces.
struct ConeHRep {
    int ambient = 0;
    int dim = 0;
    std::vector<RatRow> span_eqs;  // vanish on the span
    std::vector<RatRow> facets;    // >= 0 on the cone
};

namespace detail {

inline RatRow rat_of(const LatticeVector& v) {
    RatRow r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

inline Rat dot(const RatRow& a, const RatRow& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Canonical scaling: clear denominators, divide by content; orientation is
// already pinned by the caller.
inline RatRow canonical_functional(RatRow v) {
    Int l = 1;
    for (const Rat& x : v) l = lcm(l, denominator(x));
    LatticeVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        w[i] = numerator(v[i]) * (l / denominator(v[i]));
    Int g = gcd_of(w);
    RatRow out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(w[i] / g);
    return out;
}

}  // namespace detail

inline ConeHRep build_hrep(const std::vector<LatticeVector>& gens, int ambient) {
    ConeHRep h;
    h.ambient = ambient;
    h.dim = rank_of_vectors(gens);

    // functionals vanishing on the span
    {
        RatMatrix rows;
        for (const auto& g : gens) rows.push_back(detail::rat_of(g));
        if (rows.empty()) rows.push_back(RatRow(ambient, Rat(0)));
        for (auto& eq : rat_nullspace(std::move(rows)))
            h.span_eqs.push_back(detail::canonical_functional(std::move(eq)));
    }
    if (h.dim == 0) return h;

    // basis of the span, chosen greedily from the generators
    std::vector<LatticeVector> basis;
    for (const auto& g : gens) {
        auto probe = basis;
        probe.push_back(g);
        if (rank_of_vectors(probe) > int(basis.size())) basis.push_back(g);
        if (int(basis.size()) == h.dim) break;
    }
    // generator coordinates in that basis
    std::vector<RatRow> coords;
    for (const auto& g : gens) {
        RatRow b(ambient);
        for (int i = 0; i < ambient; ++i) b[i] = Rat(g[i]);
        auto c = rat_solve(to_rat_columns(basis, ambient), std::move(b));
        coords.push_back(std::move(*c));
    }

    int d = h.dim;
    int k = int(gens.size());
    std::vector<RatRow> normals;  // in span coordinates
    auto emit = [&](const std::vector<int>& pick) {
        RatRow nu;
        if (pick.empty()) {  // d == 1: the single facet is the origin
            nu = RatRow{Rat(1)};
        } else {
            RatMatrix rows;
            for (int i : pick) rows.push_back(coords[i]);
            if (rat_rank(rows) != d - 1) return;
            auto null = rat_nullspace(std::move(rows));
            if (null.size() != 1) return;
            nu = null[0];
        }
        bool any_pos = false, any_neg = false;
        for (const auto& c : coords) {
            int s = sign(detail::dot(nu, c));
            any_pos |= s > 0;
            any_neg |= s < 0;
        }
        if (any_pos && any_neg) return;
        if (any_neg)
            for (auto& x : nu) x = -x;
        nu = detail::canonical_functional(std::move(nu));
        if (std::find(normals.begin(), normals.end(), nu) == normals.end())
            normals.push_back(std::move(nu));
    };
    if (d == 1) {
        emit({});
    } else {
        std::vector<int> c(d - 1);
        for (int i = 0; i < d - 1; ++i) c[i] = i;
        while (true) {
            emit(c);
            int i = d - 2;
            while (i >= 0 && c[i] == k - (d - 1) + i) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < d - 1; ++j) c[j] = c[j - 1] + 1;
        }
    }

    // lift each normal from span coordinates to an ambient functional
    for (const auto& nu : normals) {
        RatMatrix sys;
        for (const auto& bvec : basis) sys.push_back(detail::rat_of(bvec));
        auto psi = rat_solve(std::move(sys), nu);
        h.facets.push_back(detail::canonical_functional(std::move(*psi)));
    }
    return h;
}

inline bool hrep_contains(const ConeHRep& h, const LatticeVector& x) {
    RatRow xr = detail::rat_of(x);
    for (const auto& eq : h.span_eqs)
        if (detail::dot(eq, xr) != 0) return false;
    for (const auto& fac : h.facets)
        if (detail::dot(fac, xr) < 0) return false;
    return true;
}

// Generators of the minimal face of the cone containing x (x must lie in the
// cone): keep exactly the generators on every facet active at x.
inline std::vector<int> minimal_face_generators(const ConeHRep& h,
                                                const std::vector<LatticeVector>& gens,
                                                const LatticeVector& x) {
    RatRow xr = detail::rat_of(x);
    std::vector<const RatRow*> active;
    for (const auto& fac : h.facets)
        if (detail::dot(fac, xr) == 0) active.push_back(&fac);
    std::vector<int> face;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        RatRow gr = detail::rat_of(gens[i]);
        bool on_all = true;
        for (const RatRow* fac : active)
            if (detail::dot(*fac, gr) != 0) { on_all = false; break; }
        if (on_all) face.push_back(int(i));
    }
    return face;
}

namespace detail {

inline void add_cone_constraints(lp::FeasibilitySystem& sys, const ConeHRep& h) {
    for (const auto& eq : h.span_eqs) sys.add_eq(eq, Rat(0));
    for (const auto& fac : h.facets) sys.add_ge(fac, Rat(0));
}

// True iff the functional is identically zero on the region cut out by the
// two cone H-reps (their intersection).
inline bool vanishes_on_intersection(const ConeHRep& a, const ConeHRep& b,
                                     const RatRow& phi) {
    for (int s : {1, -1}) {
        lp::FeasibilitySystem sys(a.ambient);
        add_cone_constraints(sys, a);
        add_cone_constraints(sys, b);
        RatRow f = phi;
        if (s < 0)
            for (auto& x : f) x = -x;
        sys.add_eq(f, Rat(1));
        if (sys.feasible()) return false;
    }
    return true;
}

}  // namespace detail

// Exact test that two strongly convex cones intersect in a common face.
// Computes, for each cone, the minimal face containing the intersection
// (facets vanishing on it) and checks that face is contained in the other
// cone; everything runs as small rational feasibility problems.
inline bool intersect_in_common_face(const ConeHRep& a,
                                     const ConeHRep& b) {
    for (const auto* first : {&a, &b}) {
        const ConeHRep& f = *first;
        const ConeHRep& g = (first == &a) ? b : a;
        std::vector<const RatRow*> vanishing;
        for (const auto& fac : f.facets)
            if (detail::vanishes_on_intersection(f, g, fac)) vanishing.push_back(&fac);
        // F := f cut by its facets vanishing on the intersection; check F <= g
        auto in_F = [&](lp::FeasibilitySystem& sys) {
            detail::add_cone_constraints(sys, f);
            for (const RatRow* fac : vanishing) sys.add_eq(*fac, Rat(0));
        };
        for (const auto& eq : g.span_eqs) {
            for (int s : {1, -1}) {
                lp::FeasibilitySystem sys(f.ambient);
                in_F(sys);
                RatRow e = eq;
                if (s < 0)
                    for (auto& x : e) x = -x;
                sys.add_eq(e, Rat(1));
                if (sys.feasible()) return false;
            }
        }
        for (const auto& fac : g.facets) {
            lp::FeasibilitySystem sys(f.ambient);
            in_F(sys);
            sys.add_eq(fac, Rat(-1));
            if (sys.feasible()) return false;
        }
    }
    return true;
}

}  // namespace tormori
