#pragma once

#include "tormori/fan.hpp"
#include "tormori/morphism.hpp"

// Shared desk-scale fixtures: the standard smooth surfaces, a weighted
// projective plane, and the two threefold wall-crossing configurations.
namespace fixtures {

using namespace tormori;

inline Fan make_fan(int rank, std::vector<LatticeVector> rays,
                    std::vector<std::vector<int>> cones,
                    std::vector<std::vector<int>> general = {}) {
    Fan f;
    f.rank = rank;
    f.rays = std::move(rays);
    for (auto& c : cones) f.max_cones.push_back(Cone(std::move(c)));
    for (auto& c : general) f.general_cones.push_back(Cone(std::move(c)));
    return f;
}

inline Fan p2() {
    return make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
}

// Hirzebruch surface F1 = blowup of P^2: r3 = (1,1) is the exceptional ray.
inline Fan f1() {
    return make_fan(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}},
                    {{0, 3}, {1, 3}, {1, 2}, {0, 2}});
}

inline Fan p1xp1() {
    return make_fan(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                    {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

inline Fan p121() {  // P(1,2,1)
    return make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
}

inline Fan p1() { return make_fan(1, {{1}, {-1}}, {{0}, {1}}); }

inline Fan point_fan() { return make_fan(0, {}, {{}}); }

inline Fan affine_plane() { return make_fan(2, {{1, 0}, {0, 1}}, {{0, 1}}); }

inline Fan blowup_affine_plane() {
    return make_fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 2}, {1, 2}});
}

// Atiyah flop: u1 + u2 = u3 + u4, source subdivided along cone(u1, u2).
inline Fan atiyah_source() {
    return make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}},
                    {{0, 1, 2}, {0, 1, 3}});
}

inline Fan atiyah_target() {
    return make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}}, {},
                    {{0, 1, 2, 3}});
}

// Weighted small contraction: u3 + u4 = 2 u1 + u2.
inline Fan weighted_flip_source() {
    return make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 1, -1}},
                    {{0, 1, 2}, {0, 1, 3}});
}

inline Fan weighted_flip_target() {
    return make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 1, -1}}, {},
                    {{0, 1, 2, 3}});
}

inline FanMorphism to_point(const Fan& f) {
    return FanMorphism{IntMatrix(0, f.rank), f, point_fan()};
}

inline FanMorphism identity_morphism(const Fan& f) {
    return FanMorphism{IntMatrix::identity(f.rank), f, f};
}

// first projection P^1 x P^1 -> P^1
inline FanMorphism p1xp1_to_p1() {
    IntMatrix m(1, 2);
    m.at(0, 0) = 1;
    return FanMorphism{m, p1xp1(), p1()};
}

inline FanMorphism blowup_to_affine_plane() {
    return FanMorphism{IntMatrix::identity(2), blowup_affine_plane(), affine_plane()};
}

inline FanMorphism atiyah_morphism() {
    return FanMorphism{IntMatrix::identity(3), atiyah_source(), atiyah_target()};
}

inline FanMorphism weighted_flip_morphism() {
    return FanMorphism{IntMatrix::identity(3), weighted_flip_source(),
                       weighted_flip_target()};
}

}  // namespace fixtures
