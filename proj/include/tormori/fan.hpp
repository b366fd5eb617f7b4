#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tormori/cones.hpp"
#include "tormori/lattice.hpp"
#include "tormori/lp.hpp"
#include "tormori/numeric.hpp"

namespace tormori {

// Cone of a fan, as a sorted set of indices into the fan's ray list.
struct Cone {
    std::vector<int> rays;

    Cone() = default;
    explicit Cone(std::vector<int> r) : rays(std::move(r)) {
        std::sort(rays.begin(), rays.end());
    }
    int dim_upper_bound() const { return int(rays.size()); }
    bool contains_all(const std::vector<int>& sub) const {
        return std::includes(rays.begin(), rays.end(), sub.begin(), sub.end());
    }
    friend bool operator==(const Cone& a, const Cone& b) { return a.rays == b.rays; }
    friend auto operator<=>(const Cone& a, const Cone& b) { return a.rays <=> b.rays; }
};

// A fan in N = Z^rank. `max_cones` hold the simplicial maximal cones;
// non-simplicial maximal cones (contraction targets only) go into
// `general_cones`. The fan is simplicial iff `general_cones` is empty.
struct Fan {
    int rank = 0;
    std::vector<LatticeVector> rays;
    std::vector<Cone> max_cones;
    std::vector<Cone> general_cones;

    bool simplicial() const { return general_cones.empty(); }
    int ray_count() const { return int(rays.size()); }

    std::vector<LatticeVector> cone_vectors(const Cone& c) const {
        std::vector<LatticeVector> out;
        out.reserve(c.rays.size());
        for (int i : c.rays) out.push_back(rays[i]);
        return out;
    }

    friend bool operator==(const Fan& a, const Fan& b) {
        return a.rank == b.rank && a.rays == b.rays &&
               a.max_cones == b.max_cones && a.general_cones == b.general_cones;
    }
};

// Wall: an (n-1)-dimensional cone with the one or two maximal cones
// adjacent to it. Interior walls have exactly two.
struct Wall {
    Cone face;
    std::vector<int> adjacent;  // indices into max_cones
    bool interior() const { return adjacent.size() == 2; }
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

// Canonical form: sorted, deduplicated cone lists. Ray order is preserved;
// it is part of the fan's identity in golden comparisons.
inline Fan canonicalized(Fan f) {
    auto tidy = [](std::vector<Cone>& cs) {
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    };
    tidy(f.max_cones);
    tidy(f.general_cones);
    return f;
}

inline ValidationReport validate_fan(const Fan& f) {
    ValidationReport rep;
    auto bad = [&](std::string s) { rep.problems.push_back(std::move(s)); };

    for (int i = 0; i < f.ray_count(); ++i) {
        if (int(f.rays[i].size()) != f.rank)
            bad("ray " + std::to_string(i) + " has wrong length");
        else if (is_zero(f.rays[i]))
            bad("ray " + std::to_string(i) + " is zero");
        else if (!is_primitive(f.rays[i]))
            bad("ray " + std::to_string(i) + " not primitive");
    }
    if (!rep.ok()) return rep;  // index math below assumes sane rays

    for (int i = 0; i < f.ray_count(); ++i)
        for (int j = i + 1; j < f.ray_count(); ++j)
            if (primitive_part(f.rays[i]) == primitive_part(f.rays[j]))
                bad("proportional rays " + std::to_string(i) + ", " + std::to_string(j));

    std::vector<char> used(f.rays.size(), 0);
    auto check_indices = [&](const Cone& c, const char* kind) {
        for (std::size_t k = 0; k < c.rays.size(); ++k) {
            if (c.rays[k] < 0 || c.rays[k] >= f.ray_count()) {
                bad(std::string(kind) + " cone has ray index out of range");
                return false;
            }
            if (k > 0 && c.rays[k] == c.rays[k - 1]) {
                bad(std::string(kind) + " cone repeats a ray index");
                return false;
            }
            used[c.rays[k]] = 1;
        }
        return true;
    };
    for (const Cone& c : f.max_cones)
        if (!check_indices(c, "maximal")) return rep;
    for (const Cone& c : f.general_cones)
        if (!check_indices(c, "general")) return rep;
    for (int i = 0; i < f.ray_count(); ++i)
        if (!used[i]) bad("ray " + std::to_string(i) + " not used by any cone");

    for (const Cone& c : f.max_cones) {
        auto vs = f.cone_vectors(c);
        if (rank_of_vectors(vs) != int(vs.size()))
            bad("cone listed as simplicial has dependent generators");
        if (int(c.rays.size()) > f.rank) bad("cone has more rays than the rank");
    }
    for (const Cone& c : f.general_cones) {
        auto vs = f.cone_vectors(c);
        if (lp::contains_line(vs)) bad("general cone is not strongly convex");
        auto pruned = prune_to_extreme(vs);
        if (pruned.size() != vs.size())
            bad("general cone lists a redundant generator");
    }
    if (!rep.ok()) return rep;

    // duplicate / nested listings
    std::vector<Cone> all = f.max_cones;
    all.insert(all.end(), f.general_cones.begin(), f.general_cones.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (i == j) continue;
            if (all[i] == all[j]) {
                if (i < j) bad("duplicate cone listed");
            } else if (all[j].contains_all(all[i].rays)) {
                bad("cone is contained in another listed cone");
            }
        }

    // pairwise face-intersection checks
    int nm = int(f.max_cones.size());
    auto pair_ok_simplicial = [&](const Cone& a, const Cone& b) {
        // feasible iff some point of the intersection uses a non-common ray,
        // which for simplicial cones is exactly a face-condition failure
        std::vector<int> noncom_a, noncom_b;
        for (int r : a.rays)
            if (!std::binary_search(b.rays.begin(), b.rays.end(), r)) noncom_a.push_back(r);
        for (int r : b.rays)
            if (!std::binary_search(a.rays.begin(), a.rays.end(), r)) noncom_b.push_back(r);
        if (noncom_a.empty() && noncom_b.empty()) return true;
        int n = f.rank;
        int vars = int(a.rays.size() + b.rays.size());
        RatMatrix m(n + 1, RatRow(vars, Rat(0)));
        RatRow rhs(n + 1, Rat(0));
        int col = 0;
        for (int r : a.rays) {
            for (int i = 0; i < n; ++i) m[i][col] = Rat(f.rays[r][i]);
            if (!std::binary_search(b.rays.begin(), b.rays.end(), r)) m[n][col] = 1;
            ++col;
        }
        for (int r : b.rays) {
            for (int i = 0; i < n; ++i) m[i][col] = -Rat(f.rays[r][i]);
            if (!std::binary_search(a.rays.begin(), a.rays.end(), r)) m[n][col] = 1;
            ++col;
        }
        rhs[n] = 1;
        return !lp::feasible_nonnegative(std::move(m), std::move(rhs)).has_value();
    };
    std::vector<ConeHRep> hreps(all.size());
    std::vector<char> hrep_built(all.size(), 0);
    auto hrep_of = [&](std::size_t i) -> const ConeHRep& {
        if (!hrep_built[i]) {
            hreps[i] = build_hrep(f.cone_vectors(all[i]), f.rank);
            hrep_built[i] = 1;
        }
        return hreps[i];
    };
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            bool both_simplicial = int(i) < nm && int(j) < nm;
            bool ok = both_simplicial
                          ? pair_ok_simplicial(all[i], all[j])
                          : intersect_in_common_face(hrep_of(i), hrep_of(j));
            if (!ok)
                bad("cones do not intersect in a common face (" +
                    std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    return rep;
}

// All (n-1)-dimensional faces of the maximal cones, with adjacency.
// Deterministic: sorted by face ray set.
inline std::vector<Wall> enumerate_walls(const Fan& f) {
    if (!f.simplicial()) throw Error("walls require a simplicial fan");
    for (const Cone& c : f.max_cones)
        if (int(c.rays.size()) != f.rank)
            throw Error("walls require pure full-dimensional fan");
    std::map<std::vector<int>, std::vector<int>> facets;
    for (int ci = 0; ci < int(f.max_cones.size()); ++ci) {
        const auto& rays = f.max_cones[ci].rays;
        for (std::size_t drop = 0; drop < rays.size(); ++drop) {
            std::vector<int> face;
            face.reserve(rays.size() - 1);
            for (std::size_t k = 0; k < rays.size(); ++k)
                if (k != drop) face.push_back(rays[k]);
            facets[face].push_back(ci);
        }
    }
    std::vector<Wall> walls;
    for (auto& [face, adj] : facets) {
        if (adj.size() > 2) throw Error("more than two cones share a facet");
        walls.push_back(Wall{Cone(face), adj});
    }
    return walls;
}

// Complete <=> every wall interior, adjacency graph connected, and the fan
// is a nonempty pure full-dimensional simplicial fan.
inline bool is_complete(const Fan& f) {
    if (!f.simplicial() || f.max_cones.empty()) return false;
    for (const Cone& c : f.max_cones)
        if (int(c.rays.size()) != f.rank) return false;
    auto walls = enumerate_walls(f);
    std::vector<int> parent(f.max_cones.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Wall& w : walls) {
        if (!w.interior()) return false;
        parent[find(w.adjacent[0])] = find(w.adjacent[1]);
    }
    for (std::size_t i = 0; i < f.max_cones.size(); ++i)
        if (find(int(i)) != find(0)) return false;
    return true;
}

inline bool is_smooth(const Fan& f) {
    if (!f.simplicial()) return false;
    for (const Cone& c : f.max_cones)
        if (multiplicity(f.cone_vectors(c)) != 1) return false;
    return true;
}

namespace detail {

inline std::uint64_t cone_bits(const Cone& c) {
    std::uint64_t b = 0;
    for (int r : c.rays) b |= std::uint64_t(1) << r;
    return b;
}

}  // namespace detail

// S generates a cone of a simplicial fan iff S is a subset of some maximal cone.
inline bool generates_cone(const Fan& f, const std::vector<int>& sorted_rays) {
    for (const Cone& c : f.max_cones)
        if (c.contains_all(sorted_rays)) return true;
    return false;
}

// Minimal non-faces of the complex of cone-generating subsets. Enumerated by
// increasing size (a minimal non-face has at most rank+1 rays) and pruned by
// the collections already found.
inline std::vector<std::vector<int>> primitive_collections(const Fan& f) {
    if (!f.simplicial())
        throw Error("primitive collections require a simplicial fan");
    int R = f.ray_count();
    if (R > 62) throw Error("too many rays for primitive collection search");
    std::vector<std::uint64_t> cones;
    cones.reserve(f.max_cones.size());
    for (const Cone& c : f.max_cones) cones.push_back(detail::cone_bits(c));
    auto is_face = [&](std::uint64_t s) {
        for (std::uint64_t c : cones)
            if ((s & ~c) == 0) return true;
        return false;
    };

    std::vector<std::vector<int>> found;
    std::vector<std::uint64_t> found_bits;
    for (int size = 2; size <= std::min(R, f.rank + 1); ++size) {
        std::vector<int> c(size);
        std::iota(c.begin(), c.end(), 0);
        while (true) {
            std::uint64_t bits = 0;
            for (int r : c) bits |= std::uint64_t(1) << r;
            bool minimal_candidate = true;
            for (std::uint64_t p : found_bits)
                if ((p & ~bits) == 0) { minimal_candidate = false; break; }
            if (minimal_candidate && !is_face(bits)) {
                found.push_back(c);
                found_bits.push_back(bits);
            }
            int i = size - 1;
            while (i >= 0 && c[i] == R - size + i) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < size; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return found;
}

// Star subdivision along the face spanned by the given rays: inserts the
// primitive sum of the face's rays as a new ray and splits every maximal
// cone containing the face. Smoothness is preserved when the face is smooth.
inline Fan star_subdivide_face(const Fan& f, const std::vector<int>& face_rays) {
    if (!f.simplicial()) throw Error("star subdivision requires a simplicial fan");
    std::vector<int> face = face_rays;
    std::sort(face.begin(), face.end());
    if (face.empty()) throw Error("empty subdivision face");
    if (!generates_cone(f, face)) throw Error("subdivision face is not a cone of the fan");
    if (face.size() == 1) return f;

    LatticeVector v(f.rank, Int(0));
    for (int r : face) v = v + f.rays[r];
    v = primitive_part(v);
    for (const auto& r : f.rays)
        if (r == v) throw Error("subdivision ray already present");

    Fan out;
    out.rank = f.rank;
    out.rays = f.rays;
    out.rays.push_back(v);
    int vi = int(out.rays.size()) - 1;
    for (const Cone& c : f.max_cones) {
        if (!c.contains_all(face)) {
            out.max_cones.push_back(c);
            continue;
        }
        for (int t : face) {
            std::vector<int> nc;
            for (int r : c.rays)
                if (r != t) nc.push_back(r);
            nc.push_back(vi);
            out.max_cones.push_back(Cone(std::move(nc)));
        }
    }
    return canonicalized(std::move(out));
}

}  // namespace tormori
