#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tormori/fan.hpp"

namespace tormori {

// Toric morphism data: an integer lattice map compatible with both fans.
struct FanMorphism {
    IntMatrix matrix;  // f_N : N_source -> N_target
    Fan source;
    Fan target;
};

namespace detail {

// Membership of a lattice point in a cone of the fan, by kind.
inline bool target_cone_contains(const Fan& f, const Cone& c, bool simplicial_cone,
                                 const LatticeVector& x, ConeHRep* cache, bool* built) {
    if (is_zero(x)) return true;
    if (simplicial_cone) return cone_solve(f.cone_vectors(c), x).has_value();
    if (!*built) {
        *cache = build_hrep(f.cone_vectors(c), f.rank);
        *built = true;
    }
    return hrep_contains(*cache, x);
}

}  // namespace detail

inline ValidationReport check_morphism(const FanMorphism& m) {
    if (m.matrix.rows != m.target.rank || m.matrix.cols != m.source.rank)
        throw Error("morphism matrix shape mismatch");
    ValidationReport rep;

    std::vector<Cone> tcones = m.target.max_cones;
    std::vector<char> tsimp(tcones.size(), 1);
    for (const Cone& c : m.target.general_cones) {
        tcones.push_back(c);
        tsimp.push_back(0);
    }
    std::vector<ConeHRep> cache(tcones.size());
    std::vector<char> built(tcones.size(), 0);

    auto check_cone = [&](const Cone& c, const char* kind) {
        std::vector<LatticeVector> images;
        for (int r : c.rays) images.push_back(m.matrix.apply(m.source.rays[r]));
        for (std::size_t t = 0; t < tcones.size(); ++t) {
            bool all_in = true;
            for (const auto& img : images) {
                ConeHRep* h = &cache[t];
                bool b = built[t];
                bool in = detail::target_cone_contains(m.target, tcones[t], tsimp[t],
                                                       img, h, &b);
                built[t] = b;
                if (!in) { all_in = false; break; }
            }
            if (all_in) return;
        }
        std::string rays;
        for (int r : c.rays) rays += (rays.empty() ? "" : ",") + std::to_string(r);
        rep.problems.push_back(std::string(kind) + " cone {" + rays +
                               "} image not contained in any target cone");
    };
    for (const Cone& c : m.source.max_cones) check_cone(c, "maximal");
    for (const Cone& c : m.source.general_cones) check_cone(c, "general");
    return rep;
}

// Dimension of the minimal target cone containing the image of the wall.
// The wall is contracted (its orbit closure maps to a point) exactly when
// that cone is full-dimensional in the target lattice.
inline int image_cone_dimension(const FanMorphism& m, const Wall& w) {
    std::vector<LatticeVector> images;
    LatticeVector s(m.target.rank, Int(0));
    for (int r : w.face.rays) {
        images.push_back(m.matrix.apply(m.source.rays[r]));
        s = s + images.back();
    }
    std::vector<Cone> tcones = m.target.max_cones;
    std::vector<char> tsimp(tcones.size(), 1);
    for (const Cone& c : m.target.general_cones) {
        tcones.push_back(c);
        tsimp.push_back(0);
    }
    if (m.target.rank == 0) return 0;  // everything maps to the origin
    for (std::size_t t = 0; t < tcones.size(); ++t) {
        auto gens = m.target.cone_vectors(tcones[t]);
        ConeHRep h = build_hrep(gens, m.target.rank);
        if (!hrep_contains(h, s)) continue;
        auto face_idx = minimal_face_generators(h, gens, s);
        std::vector<LatticeVector> face_gens;
        for (int i : face_idx) face_gens.push_back(gens[i]);
        ConeHRep fh = build_hrep(face_gens, m.target.rank);
        for (const auto& img : images)
            if (!hrep_contains(fh, img)) throw Error("morphism incompatible");
        return fh.dim;
    }
    throw Error("morphism incompatible");
}

// Interior walls whose invariant curve is contracted by the morphism.
inline std::vector<Wall> contracted_walls(const FanMorphism& m) {
    std::vector<Wall> out;
    for (const Wall& w : enumerate_walls(m.source)) {
        if (!w.interior()) continue;
        if (m.target.rank - image_cone_dimension(m, w) == 0) out.push_back(w);
    }
    return out;
}

enum class Properness { Proven, Refuted, Unknown };

// Properness is decidable here in two situations: maps to a point (source
// must be complete) and identity-lattice refinements (the source cones must
// cover each target cone, detected by exposed facets). Anything else is the
// caller's assertion.
inline Properness verify_properness(const FanMorphism& m) {
    if (m.target.rank == 0)
        return is_complete(m.source) ? Properness::Proven : Properness::Refuted;

    bool ident = m.matrix.rows == m.matrix.cols &&
                 m.matrix == IntMatrix::identity(m.matrix.rows);
    if (!ident) return Properness::Unknown;
    if (!m.source.simplicial()) return Properness::Unknown;
    for (const Cone& c : m.source.max_cones)
        if (int(c.rays.size()) != m.source.rank) return Properness::Unknown;

    std::vector<Cone> tcones = m.target.max_cones;
    tcones.insert(tcones.end(), m.target.general_cones.begin(),
                  m.target.general_cones.end());
    for (const Cone& tc : tcones) {
        auto tgens = m.target.cone_vectors(tc);
        ConeHRep th = build_hrep(tgens, m.target.rank);
        if (th.dim != m.target.rank) return Properness::Unknown;
        // source cones sitting inside this target cone
        std::vector<const Cone*> inside;
        for (const Cone& sc : m.source.max_cones) {
            bool in = true;
            for (int r : sc.rays)
                if (!hrep_contains(th, m.source.rays[r])) { in = false; break; }
            if (in) inside.push_back(&sc);
        }
        if (inside.empty()) return Properness::Refuted;
        // every once-covered facet must lie on the target cone's boundary
        std::map<std::vector<int>, int> count;
        for (const Cone* sc : inside)
            for (std::size_t drop = 0; drop < sc->rays.size(); ++drop) {
                std::vector<int> face;
                for (std::size_t k = 0; k < sc->rays.size(); ++k)
                    if (k != drop) face.push_back(sc->rays[k]);
                ++count[face];
            }
        for (const auto& [face, c] : count) {
            if (c != 1) continue;
            bool on_boundary = false;
            for (const auto& psi : th.facets) {
                bool vanishes = true;
                for (int r : face) {
                    Rat v(0);
                    for (int i = 0; i < m.source.rank; ++i)
                        v += psi[i] * Rat(m.source.rays[r][i]);
                    if (v != 0) { vanishes = false; break; }
                }
                if (vanishes) { on_boundary = true; break; }
            }
            if (!on_boundary) return Properness::Refuted;
        }
    }
    return Properness::Proven;
}

}  // namespace tormori
