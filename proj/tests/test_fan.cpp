#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "tormori/fan.hpp"
#include "tormori/morphism.hpp"

using namespace tormori;
using namespace fixtures;

TEST_CASE("fan validation") {
    CHECK(validate_fan(p2()).ok());
    CHECK(validate_fan(f1()).ok());
    CHECK(validate_fan(p1xp1()).ok());
    CHECK(validate_fan(p121()).ok());
    CHECK(validate_fan(blowup_affine_plane()).ok());
    CHECK(validate_fan(atiyah_source()).ok());
    CHECK(validate_fan(atiyah_target()).ok());
    CHECK(validate_fan(weighted_flip_source()).ok());
    CHECK(validate_fan(weighted_flip_target()).ok());
    CHECK(validate_fan(point_fan()).ok());

    SECTION("cone order does not matter") {
        Fan f = make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {0, 2}, {1, 2}});
        CHECK(validate_fan(f).ok());
    }
    SECTION("proportional rays are rejected") {
        Fan f = make_fan(2, {{1, 0}, {2, 0}}, {{0, 1}});
        auto rep = validate_fan(f);
        REQUIRE_FALSE(rep.ok());
        bool found = false;
        for (const auto& p : rep.problems)
            if (p.find("not primitive") != std::string::npos ||
                p.find("proportional") != std::string::npos)
                found = true;
        CHECK(found);
    }
    SECTION("non-primitive ray is rejected, never normalized") {
        Fan f = make_fan(2, {{2, 0}, {0, 1}}, {{0, 1}});
        auto rep = validate_fan(f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems.front().find("not primitive") != std::string::npos);
    }
    SECTION("overlapping cones are rejected") {
        // cone((1,0),(0,1)) and cone((1,1),(0,1)) overlap in 2 dimensions
        Fan f = make_fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {1, 2}, {0, 2}});
        auto rep = validate_fan(f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems.front().find("common face") != std::string::npos);
    }
    SECTION("dependent generators in a simplicial cone are rejected") {
        Fan f = make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1, 2}});
        CHECK_FALSE(validate_fan(f).ok());
    }
    SECTION("unused ray is rejected") {
        Fan f = make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}});
        CHECK_FALSE(validate_fan(f).ok());
    }
    SECTION("general cone with a line is rejected") {
        Fan f = make_fan(2, {{1, 0}, {-1, 0}, {0, 1}}, {}, {{0, 1, 2}});
        auto rep = validate_fan(f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems.front().find("strongly convex") != std::string::npos);
    }
    SECTION("general cone with a redundant generator is rejected") {
        // (1,1) is inside cone((1,0),(0,1))
        Fan f = make_fan(2, {{1, 0}, {0, 1}, {1, 1}}, {}, {{0, 1, 2}});
        auto rep = validate_fan(f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems.front().find("redundant") != std::string::npos);
    }
}

TEST_CASE("wall enumeration") {
    SECTION("projective plane: three interior walls") {
        auto walls = enumerate_walls(p2());
        REQUIRE(walls.size() == 3);
        for (const auto& w : walls) {
            CHECK(w.face.rays.size() == 1);
            CHECK(w.adjacent.size() == 2);
        }
    }
    SECTION("blowup of the affine plane: one interior, two boundary") {
        auto walls = enumerate_walls(blowup_affine_plane());
        REQUIRE(walls.size() == 3);
        int interior = 0;
        for (const auto& w : walls) {
            if (w.interior()) {
                ++interior;
                CHECK(w.face.rays == std::vector<int>{2});  // ray (1,1)
            }
        }
        CHECK(interior == 1);
    }
    SECTION("single cone: only boundary walls") {
        auto walls = enumerate_walls(affine_plane());
        REQUIRE(walls.size() == 2);
        for (const auto& w : walls) CHECK(w.adjacent.size() == 1);
    }
    SECTION("walls are faces of their adjacent cones, each listed once") {
        for (const Fan& f : {p2(), f1(), p1xp1(), atiyah_source()}) {
            auto walls = enumerate_walls(f);
            std::set<std::vector<int>> seen;
            for (const auto& w : walls) {
                CHECK(seen.insert(w.face.rays).second);
                for (int adj : w.adjacent)
                    CHECK(f.max_cones[adj].contains_all(w.face.rays));
            }
        }
    }
    SECTION("non-pure fan errors") {
        Fan f = make_fan(2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {2}});
        CHECK_THROWS_WITH(enumerate_walls(f),
                          Catch::Matchers::ContainsSubstring("pure"));
    }
}

TEST_CASE("completeness") {
    CHECK(is_complete(p2()));
    CHECK(is_complete(f1()));
    CHECK(is_complete(p1xp1()));
    CHECK(is_complete(p121()));
    CHECK(is_complete(p1()));
    CHECK(is_complete(point_fan()));
    CHECK_FALSE(is_complete(blowup_affine_plane()));
    CHECK_FALSE(is_complete(atiyah_source()));
    SECTION("empty fan is not complete") {
        Fan f;
        f.rank = 1;
        CHECK_FALSE(is_complete(f));
    }
}

TEST_CASE("smoothness") {
    CHECK(is_smooth(p2()));
    CHECK(is_smooth(f1()));
    CHECK(is_smooth(p1xp1()));
    CHECK(is_smooth(blowup_affine_plane()));
    CHECK(is_smooth(atiyah_source()));
    CHECK(is_smooth(weighted_flip_source()));
    CHECK_FALSE(is_smooth(p121()));
    SECTION("flipped side of the weighted fixture is singular") {
        Fan plus = make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 1, -1}},
                            {{0, 2, 3}, {1, 2, 3}});
        CHECK(validate_fan(plus).ok());
        CHECK_FALSE(is_smooth(plus));
    }
}

TEST_CASE("primitive collections") {
    SECTION("projective plane: the single triple") {
        auto pcs = primitive_collections(p2());
        REQUIRE(pcs.size() == 1);
        CHECK(pcs[0] == std::vector<int>{0, 1, 2});
    }
    SECTION("Hirzebruch surface: two pairs") {
        auto pcs = primitive_collections(f1());
        REQUIRE(pcs.size() == 2);
        CHECK(pcs[0] == std::vector<int>{0, 1});
        CHECK(pcs[1] == std::vector<int>{2, 3});
    }
    SECTION("affine plane: none") {
        CHECK(primitive_collections(affine_plane()).empty());
    }
    SECTION("definition holds on every fixture") {
        for (const Fan& f : {p2(), f1(), p1xp1(), p121(), atiyah_source()}) {
            for (const auto& pc : primitive_collections(f)) {
                CHECK_FALSE(generates_cone(f, pc));
                for (std::size_t drop = 0; drop < pc.size(); ++drop) {
                    std::vector<int> sub;
                    for (std::size_t k = 0; k < pc.size(); ++k)
                        if (k != drop) sub.push_back(pc[k]);
                    CHECK(generates_cone(f, sub));
                }
            }
        }
    }
}

TEST_CASE("morphism compatibility") {
    SECTION("identity is compatible") {
        CHECK(check_morphism(identity_morphism(p2())).ok());
    }
    SECTION("first projection of the quadric surface") {
        CHECK(check_morphism(p1xp1_to_p1()).ok());
    }
    SECTION("projection of the projective plane is not a morphism") {
        IntMatrix m(1, 2);
        m.at(0, 0) = 1;
        FanMorphism bad{m, p2(), p1()};
        auto rep = check_morphism(bad);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems.front().find("not contained") != std::string::npos);
    }
    SECTION("shape mismatch errors") {
        FanMorphism bad{IntMatrix(1, 3), p2(), p1()};
        CHECK_THROWS_WITH(check_morphism(bad),
                          Catch::Matchers::ContainsSubstring("shape"));
    }
    SECTION("all fixture morphisms are compatible") {
        CHECK(check_morphism(to_point(p2())).ok());
        CHECK(check_morphism(to_point(f1())).ok());
        CHECK(check_morphism(to_point(p121())).ok());
        CHECK(check_morphism(blowup_to_affine_plane()).ok());
        CHECK(check_morphism(atiyah_morphism()).ok());
        CHECK(check_morphism(weighted_flip_morphism()).ok());
    }
}

TEST_CASE("contracted walls") {
    SECTION("fibration of the quadric surface contracts the horizontal rays") {
        auto walls = contracted_walls(p1xp1_to_p1());
        REQUIRE(walls.size() == 2);
        CHECK(walls[0].face.rays == std::vector<int>{0});
        CHECK(walls[1].face.rays == std::vector<int>{1});
    }
    SECTION("flop contraction contracts exactly the exchanged wall") {
        auto walls = contracted_walls(atiyah_morphism());
        REQUIRE(walls.size() == 1);
        CHECK(walls[0].face.rays == std::vector<int>{0, 1});
    }
    SECTION("maps to a point contract every interior wall") {
        for (const Fan& f : {p2(), f1(), p1xp1(), p121()}) {
            auto all = enumerate_walls(f);
            CHECK(contracted_walls(to_point(f)).size() == all.size());
        }
    }
    SECTION("identity contracts nothing") {
        CHECK(contracted_walls(identity_morphism(p2())).empty());
        CHECK(contracted_walls(identity_morphism(f1())).empty());
    }
    SECTION("contracted walls are interior walls") {
        for (const auto& m : {blowup_to_affine_plane(), atiyah_morphism()}) {
            for (const auto& w : contracted_walls(m)) CHECK(w.interior());
        }
    }
}

TEST_CASE("properness verification") {
    CHECK(verify_properness(to_point(p2())) == Properness::Proven);
    CHECK(verify_properness(to_point(f1())) == Properness::Proven);
    CHECK(verify_properness(to_point(blowup_affine_plane())) == Properness::Refuted);
    CHECK(verify_properness(blowup_to_affine_plane()) == Properness::Proven);
    CHECK(verify_properness(atiyah_morphism()) == Properness::Proven);
    CHECK(verify_properness(weighted_flip_morphism()) == Properness::Proven);
    CHECK(verify_properness(p1xp1_to_p1()) == Properness::Unknown);
    SECTION("missing coverage is refuted") {
        // only one of the two cones refining the target quadrant
        Fan sub = make_fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 2}});
        FanMorphism m{IntMatrix::identity(2), sub, affine_plane()};
        CHECK(verify_properness(m) == Properness::Refuted);
    }
}

TEST_CASE("star subdivision along a face") {
    SECTION("subdividing the affine plane gives its blowup") {
        Fan f = star_subdivide_face(affine_plane(), {0, 1});
        CHECK(f == canonicalized(blowup_affine_plane()));
    }
    SECTION("preserves validity, completeness and smoothness") {
        Fan f = star_subdivide_face(p2(), {0, 1});
        CHECK(validate_fan(f).ok());
        CHECK(is_complete(f));
        CHECK(is_smooth(f));
        CHECK(f.ray_count() == 4);
        Fan g = star_subdivide_face(f, {0, 2});
        CHECK(validate_fan(g).ok());
        CHECK(is_complete(g));
        CHECK(is_smooth(g));
    }
    SECTION("face must be a cone of the fan") {
        CHECK_THROWS(star_subdivide_face(p2(), {0, 1, 2}));
    }
}
