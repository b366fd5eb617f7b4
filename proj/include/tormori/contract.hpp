#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tormori/mori.hpp"

namespace tormori {

enum class ContractionKind { Fano, Divisorial, Small };

inline ContractionKind classify(const ExtremalPrimitiveRelation& epr) {
    if (epr.m() == 0) return ContractionKind::Fano;
    if (epr.m() == 1) return ContractionKind::Divisorial;
    return ContractionKind::Small;
}

inline const char* to_string(ContractionKind k) {
    switch (k) {
        case ContractionKind::Fano: return "Fano";
        case ContractionKind::Divisorial: return "Divisorial";
        default: return "Small";
    }
}

enum class Trichotomy { Flip, Flop, AntiFlip };

inline Trichotomy trichotomy_of(const ExtremalPrimitiveRelation& epr) {
    Int d = epr.degree();
    if (d > 0) return Trichotomy::Flip;
    if (d == 0) return Trichotomy::Flop;
    return Trichotomy::AntiFlip;
}

inline const char* to_string(Trichotomy t) {
    switch (t) {
        case Trichotomy::Flip: return "flip";
        case Trichotomy::Flop: return "flop";
        default: return "anti-flip";
    }
}

// General fiber of a Fano contraction: the Picard-number-one complete toric
// variety with relation sum a_i x_i = 0 in a rank l-1 lattice.
struct GeneralFiber {
    std::vector<Int> weights;
    int lattice_rank = 0;
    std::optional<std::vector<Int>> wps_weights;  // set when the x_i generate the lattice
};

struct ContractionResult {
    ContractionKind kind;
    Fan target_fan;
    std::optional<QuotientMap> quotient;     // Fano only
    std::optional<GeneralFiber> fiber;       // Fano only
    std::optional<Cone> exceptional_locus;   // w', in source ray indices
    std::optional<GeneralCone> image_cone;   // pruned w~, spanning phi(A)
    std::optional<int> codim_A;
    std::optional<int> dim_B;
    std::optional<Fan> flip_fan;             // Delta^+, small case via flip()
    std::optional<Trichotomy> trichotomy;
    std::optional<ExtremalPrimitiveRelation> reversed;  // recomputed on Delta^+
};

namespace detail {

// Drops ray indices whose vector lies in the cone of the remaining ones.
inline std::vector<int> prune_cone_indices(const Fan& f, std::vector<int> idx) {
    for (std::size_t i = 0; i < idx.size();) {
        std::vector<LatticeVector> others;
        for (std::size_t j = 0; j < idx.size(); ++j)
            if (j != i) others.push_back(f.rays[idx[j]]);
        if (lp::in_cone(others, f.rays[idx[i]]))
            idx.erase(idx.begin() + long(i));
        else
            ++i;
    }
    return idx;
}

// Assembles a fan from maximal-cone candidates given as ray index sets over
// a parent ray list: prunes redundant generators, drops cones contained in
// others, drops unused rays (order preserved), and classifies each cone as
// simplicial or general.
inline Fan assemble_fan(const Fan& parent, std::vector<std::vector<int>> cones,
                        const char* error_label) {
    std::vector<std::vector<int>> pruned;
    for (auto& c : cones) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        auto p = prune_cone_indices(parent, c);
        std::sort(p.begin(), p.end());
        if (std::find(pruned.begin(), pruned.end(), p) == pruned.end())
            pruned.push_back(std::move(p));
    }
    // keep only maximal index sets
    std::vector<std::vector<int>> maximal;
    for (const auto& c : pruned) {
        bool contained = false;
        for (const auto& d : pruned)
            if (c != d && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
                contained = true;
                break;
            }
        if (!contained) maximal.push_back(c);
    }
    std::set<int> used;
    for (const auto& c : maximal) used.insert(c.begin(), c.end());
    std::vector<int> remap(parent.rays.size(), -1);
    Fan out;
    out.rank = parent.rank;
    for (int i = 0; i < parent.ray_count(); ++i)
        if (used.count(i)) {
            remap[i] = int(out.rays.size());
            out.rays.push_back(parent.rays[i]);
        }
    for (const auto& c : maximal) {
        std::vector<int> rc;
        for (int r : c) rc.push_back(remap[r]);
        Cone cone(std::move(rc));
        auto vs = out.cone_vectors(cone);
        if (rank_of_vectors(vs) == int(vs.size()))
            out.max_cones.push_back(std::move(cone));
        else
            out.general_cones.push_back(std::move(cone));
    }
    out = canonicalized(std::move(out));
    auto rep = validate_fan(out);
    if (!rep.ok())
        throw Error(std::string(error_label) + ": " + rep.problems.front());
    return out;
}

}  // namespace detail

// Fiber-type contraction: quotient the lattice by the span of the xs and
// push every cone through; the general fiber has relation sum a_i x_i = 0.
inline ContractionResult fano_contraction(const FanMorphism& m,
                                          const ExtremalPrimitiveRelation& epr) {
    if (classify(epr) != ContractionKind::Fano)
        throw Error("not a Fano contraction");
    const Fan& f = m.source;
    std::vector<LatticeVector> span;
    for (int r : epr.xs) span.push_back(f.rays[r]);
    QuotientMap q = quotient_map(span, f.rank);

    // primitive images of the rays, deduplicated in first-appearance order
    std::vector<LatticeVector> image_rays;
    std::vector<int> image_of(f.rays.size(), -1);
    for (int i = 0; i < f.ray_count(); ++i) {
        LatticeVector img = q.map.apply(f.rays[i]);
        if (is_zero(img)) continue;
        img = primitive_part(img);
        auto it = std::find(image_rays.begin(), image_rays.end(), img);
        if (it == image_rays.end()) {
            image_of[i] = int(image_rays.size());
            image_rays.push_back(std::move(img));
        } else {
            image_of[i] = int(it - image_rays.begin());
        }
    }
    Fan image_parent;
    image_parent.rank = q.rank_out;
    image_parent.rays = image_rays;
    std::vector<std::vector<int>> cones;
    for (const Cone& c : f.max_cones) {
        std::vector<int> img;
        for (int r : c.rays)
            if (image_of[r] >= 0) img.push_back(image_of[r]);
        cones.push_back(std::move(img));  // may be empty: the zero cone
    }
    ContractionResult res;
    res.kind = ContractionKind::Fano;
    res.quotient = q;
    res.target_fan = detail::assemble_fan(image_parent, std::move(cones),
                                          "quotient is not a fan");
    if (res.target_fan.max_cones.empty() && res.target_fan.general_cones.empty())
        res.target_fan.max_cones.push_back(Cone(std::vector<int>{}));  // fan of a point

    GeneralFiber fiber;
    fiber.weights = epr.a;
    auto fiber_basis = integer_kernel(q.map);  // saturation of span(xs)
    fiber.lattice_rank = int(fiber_basis.size());
    if (!fiber_basis.empty()) {
        // coordinates of each x_i in the fiber lattice
        IntMatrix coords(fiber.lattice_rank, epr.l());
        bool integral = true;
        for (int j = 0; j < epr.l(); ++j) {
            RatRow rhs(f.rank);
            for (int i = 0; i < f.rank; ++i) rhs[i] = Rat(f.rays[epr.xs[j]][i]);
            auto sol = rat_solve(to_rat_columns(fiber_basis, f.rank), std::move(rhs));
            for (int i = 0; i < fiber.lattice_rank; ++i) {
                if (denominator((*sol)[i]) != 1) integral = false;
                else coords.at(i, j) = numerator((*sol)[i]);
            }
        }
        if (integral) {
            SmithForm sf = smith_normal_form(coords);
            bool generates = sf.rank == fiber.lattice_rank;
            for (int i = 0; i < sf.rank && generates; ++i)
                if (sf.S.at(i, i) != 1) generates = false;
            if (generates) fiber.wps_weights = epr.a;
        }
    }
    res.fiber = std::move(fiber);
    return res;
}

// Divisorial or small contraction: every cone containing w' is merged into
// w~ + tau over the same lattice; everything else is kept.
inline ContractionResult birational_contraction(const FanMorphism& m,
                                                const ExtremalPrimitiveRelation& epr) {
    if (classify(epr) == ContractionKind::Fano)
        throw Error("not a birational contraction");
    const Fan& f = m.source;
    const std::vector<int>& ys = epr.ys;
    std::vector<int> xsys = epr.xs;
    xsys.insert(xsys.end(), ys.begin(), ys.end());
    std::sort(xsys.begin(), xsys.end());

    std::vector<std::vector<int>> cones;
    bool any_replaced = false;
    for (const Cone& c : f.max_cones) {
        if (!c.contains_all(ys)) {
            cones.push_back(c.rays);
            continue;
        }
        any_replaced = true;
        std::vector<int> merged = xsys;
        for (int r : c.rays)
            if (!std::binary_search(xsys.begin(), xsys.end(), r))
                merged.push_back(r);  // tau rays
        cones.push_back(std::move(merged));
    }
    if (!any_replaced) throw Error("no cone contains w'");

    ContractionResult res;
    res.kind = classify(epr);
    res.target_fan =
        detail::assemble_fan(f, std::move(cones), "contraction target is not a fan");

    res.exceptional_locus = epr.w_prime;
    res.image_cone = *epr.w_tilde;
    int dim_wprime = rank_of_vectors(f.cone_vectors(epr.w_prime));
    res.codim_A = dim_wprime;
    int dim_wtilde = rank_of_vectors(epr.w_tilde->generators);
    res.dim_B = f.rank - dim_wtilde;
    if (*res.codim_A != epr.m() ||
        *res.dim_B != f.rank - epr.l() - epr.m() + 1)
        throw Error("exceptional locus dimensions violate the contraction formulas");
    return res;
}

// Small-contraction surgery: star-subdivide the contraction target along
// w+ = cone(xs); the reversed relation is recomputed on the result and must
// come back as its extremal primitive relation over the target.
inline ContractionResult flip(const FanMorphism& m,
                              const ExtremalPrimitiveRelation& epr) {
    if (classify(epr) != ContractionKind::Small)
        throw Error("not a small contraction");
    ContractionResult res = birational_contraction(m, epr);
    const Fan& f = m.source;
    const Fan& w_fan = res.target_fan;

    // target rays must be the source rays (small contractions keep all rays)
    if (w_fan.rays != f.rays)
        throw Error("small contraction changed the ray set");

    Fan plus;
    plus.rank = f.rank;
    plus.rays = f.rays;
    plus.max_cones = w_fan.max_cones;
    for (const Cone& g : w_fan.general_cones) {
        std::vector<int> tau;
        for (int r : g.rays) {
            bool in_x = std::binary_search(epr.xs.begin(), epr.xs.end(), r);
            bool in_y = std::binary_search(epr.ys.begin(), epr.ys.end(), r);
            if (!in_x && !in_y) tau.push_back(r);
        }
        for (int j = 0; j < epr.m(); ++j) {
            std::vector<int> c = epr.xs;
            for (int k = 0; k < epr.m(); ++k)
                if (k != j) c.push_back(epr.ys[k]);
            c.insert(c.end(), tau.begin(), tau.end());
            Cone cone(std::move(c));
            auto vs = plus.cone_vectors(cone);
            if (rank_of_vectors(vs) != int(vs.size()))
                throw Error("flip produced a non-simplicial cone");
            plus.max_cones.push_back(std::move(cone));
        }
    }
    plus = canonicalized(std::move(plus));

    // recompute the extremal primitive relation of the flipped side over W
    FanMorphism to_w{IntMatrix::identity(f.rank), plus, w_fan};
    if (!check_morphism(to_w).ok())
        throw Error("flipped fan is not compatible with the contraction target");
    MoriAnalysis an = analyze_mori(to_w);
    if (an.extremal.size() != 1)
        throw Error("flipped fan does not have a unique extremal ray over the target");
    ExtremalPrimitiveRelation rev =
        extremal_primitive_relation(to_w, an, an.extremal[0]);
    if (rev.xs != epr.ys || rev.a != epr.b || rev.ys != epr.xs || rev.b != epr.a)
        throw Error("reversed relation mismatch on the flipped fan");

    res.flip_fan = std::move(plus);
    res.trichotomy = trichotomy_of(epr);
    res.reversed = std::move(rev);
    return res;
}

// One step of the minimal model program over the base: contract the chosen
// extremal ray; fiber type stops with a Mori fiber space, divisorial steps
// continue on the target, K-negative small rays continue on the flip.
struct MmpStep {
    enum class Outcome { MoriFiberSpace, Continue, HaltNonFlipSmall };
    Outcome outcome;
    ContractionKind kind;
    ContractionResult contraction;
    std::optional<FanMorphism> next;
    std::optional<Trichotomy> trich;
};

inline MmpStep mmp_step(const FanMorphism& m, const MoriAnalysis& an, int ray_index) {
    ExtremalPrimitiveRelation epr = extremal_primitive_relation(m, an, ray_index);
    MmpStep step{MmpStep::Outcome::Continue, classify(epr), {}, std::nullopt,
                 std::nullopt};
    switch (step.kind) {
        case ContractionKind::Fano:
            step.contraction = fano_contraction(m, epr);
            step.outcome = MmpStep::Outcome::MoriFiberSpace;
            break;
        case ContractionKind::Divisorial: {
            step.contraction = birational_contraction(m, epr);
            FanMorphism next{m.matrix, step.contraction.target_fan, m.target};
            if (!check_morphism(next).ok())
                throw Error("contracted fan is not compatible with the base");
            step.next = std::move(next);
            step.outcome = MmpStep::Outcome::Continue;
            break;
        }
        case ContractionKind::Small: {
            step.trich = trichotomy_of(epr);
            if (*step.trich != Trichotomy::Flip) {
                step.contraction = birational_contraction(m, epr);
                step.outcome = MmpStep::Outcome::HaltNonFlipSmall;
                break;
            }
            step.contraction = flip(m, epr);
            FanMorphism next{m.matrix, *step.contraction.flip_fan, m.target};
            if (!check_morphism(next).ok())
                throw Error("flipped fan is not compatible with the base");
            step.next = std::move(next);
            step.outcome = MmpStep::Outcome::Continue;
            break;
        }
    }
    return step;
}

}  // namespace tormori
