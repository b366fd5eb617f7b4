// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Everything runs in exact arithmetic; there are no tolerances to
// tune, equalities are checked bit-exactly.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/random_fans.hpp"
#include "tormori/contract.hpp"
#include "tormori/positivity.hpp"

using namespace tormori;
using namespace fixtures;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<std::string()>& body) {
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << number << " "
              << (ok ? "PASS" : "FAIL") << "  " << name
              << (detail.empty() ? "" : "  [" + detail + "]") << "\n";
    if (!ok) ++failures;
}

void expect(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

std::vector<Fan> all_fixture_fans() {
    return {p2(),          f1(),
            p1xp1(),       p121(),
            blowup_affine_plane(), atiyah_source(),
            weighted_flip_source()};
}

std::vector<FanMorphism> all_fixture_morphisms() {
    return {to_point(p2()),     to_point(f1()),
            to_point(p1xp1()),  to_point(p121()),
            p1xp1_to_p1(),      blowup_to_affine_plane(),
            atiyah_morphism(),  weighted_flip_morphism()};
}

std::vector<FanMorphism> smooth_fixture_morphisms() {
    return {to_point(p2()),    to_point(f1()),
            p1xp1_to_p1(),     blowup_to_affine_plane(),
            atiyah_morphism(), weighted_flip_morphism()};
}

}  // namespace

int main() {
    criterion(1, "wall relations: exact, primitive, positive off-wall", [] {
        int walls = 0;
        for (const Fan& f : all_fixture_fans()) {
            for (const Wall& w : enumerate_walls(f)) {
                if (!w.interior()) continue;
                auto rel = wall_relation(f, w);
                LatticeVector sum(f.rank, Int(0));
                Int g = 0;
                for (const auto& [ray, c] : rel.coeffs) {
                    sum = sum + c * f.rays[ray];
                    g = gcd(g, c);
                }
                expect(is_zero(sum), "relation does not sum to zero");
                expect(g == 1, "relation is not primitive");
                for (int adj : w.adjacent)
                    for (int r : f.max_cones[adj].rays)
                        if (!std::binary_search(w.face.rays.begin(),
                                                w.face.rays.end(), r))
                            expect(rel.coeffs.at(r) > 0,
                                   "off-wall coefficient not positive");
                ++walls;
            }
        }
        return std::to_string(walls) + " interior walls over 7 fixtures";
    });

    criterion(2, "birational contractions: codim A = m, dim B = n-l-m+1", [] {
        struct Case { FanMorphism m; int ray; };
        auto f1m = to_point(f1());
        std::vector<Case> cases = {{f1m, 2},
                                   {blowup_to_affine_plane(), -1},
                                   {atiyah_morphism(), -1},
                                   {weighted_flip_morphism(), -1}};
        for (auto& c : cases) {
            auto an = analyze_mori(c.m);
            int ray = c.ray < 0 ? an.extremal[0] : c.ray;
            auto epr = extremal_primitive_relation(c.m, an, ray);
            auto res = birational_contraction(c.m, epr);
            int n = c.m.source.rank;
            expect(*res.codim_A == epr.m(), "codim A != m");
            expect(*res.dim_B == n - epr.l() - epr.m() + 1,
                   "dim B != n - l - m + 1");
        }
        return std::string("4 birational contractions");
    });

    criterion(3, "fiber-type contractions reproduce the stated fibers", [] {
        {
            auto m = to_point(p2());
            auto an = analyze_mori(m);
            auto res = fano_contraction(
                m, extremal_primitive_relation(m, an, an.extremal[0]));
            expect(res.target_fan.rank == 0, "base of the plane is not a point");
            expect(res.fiber->weights == std::vector<Int>{1, 1, 1},
                   "plane fiber weights");
            expect(res.fiber->wps_weights.has_value() &&
                       *res.fiber->wps_weights == std::vector<Int>{1, 1, 1},
                   "plane fiber is P(1,1,1)");
        }
        {
            auto m = p1xp1_to_p1();
            auto an = analyze_mori(m);
            auto res = fano_contraction(
                m, extremal_primitive_relation(m, an, an.extremal[0]));
            expect(res.target_fan == canonicalized(p1()),
                   "quadric fibration base is not the line");
            expect(res.fiber->wps_weights.has_value() &&
                       *res.fiber->wps_weights == std::vector<Int>{1, 1},
                   "quadric fiber is P(1,1)");
        }
        {
            auto m = to_point(f1());
            auto an = analyze_mori(m);
            auto res = fano_contraction(m, extremal_primitive_relation(m, an, 0));
            expect(res.target_fan.rank == 1 && res.target_fan.rays.size() == 2 &&
                       res.target_fan.max_cones.size() == 2,
                   "ruling base is not the line");
            expect(res.fiber->wps_weights.has_value() &&
                       *res.fiber->wps_weights == std::vector<Int>{1, 1},
                   "ruling fiber is P(1,1)");
        }
        return std::string("3 fiber-type contractions");
    });

    criterion(4, "divisorial surgeries match their targets bit-identically", [] {
        {
            auto m = to_point(f1());
            auto an = analyze_mori(m);
            auto res = birational_contraction(
                m, extremal_primitive_relation(m, an, 2));
            expect(res.target_fan == canonicalized(p2()),
                   "contracting the exceptional ray does not give the plane");
        }
        {
            auto m = blowup_to_affine_plane();
            auto an = analyze_mori(m);
            auto res = birational_contraction(
                m, extremal_primitive_relation(m, an, an.extremal[0]));
            expect(res.target_fan == canonicalized(affine_plane()),
                   "blowdown does not reproduce the affine plane");
        }
        return std::string("2 golden fans matched");
    });

    criterion(5, "flip trichotomy, reversal, and involution", [] {
        auto run = [](const FanMorphism& m, Trichotomy expected, Int degree) {
            auto an = analyze_mori(m);
            auto epr = extremal_primitive_relation(m, an, an.extremal[0]);
            expect(epr.degree() == degree, "relation degree");
            auto res = flip(m, epr);
            expect(*res.trichotomy == expected, "trichotomy label");
            expect(res.reversed->xs == epr.ys && res.reversed->a == epr.b &&
                       res.reversed->ys == epr.xs && res.reversed->b == epr.a,
                   "reversed relation is not the extremal relation of the flip");
            expect(res.reversed->degree() == -degree, "reversed degree");
            FanMorphism m2{m.matrix, *res.flip_fan, m.target};
            auto an2 = analyze_mori(m2);
            auto epr2 = extremal_primitive_relation(m2, an2, an2.extremal[0]);
            auto res2 = flip(m2, epr2);
            expect(*res2.flip_fan == canonicalized(m.source),
                   "flip of the flip is not the original fan");
            return *res2.trichotomy;
        };
        Trichotomy back_flop = run(atiyah_morphism(), Trichotomy::Flop, 0);
        expect(back_flop == Trichotomy::Flop, "flop should reverse to a flop");
        Trichotomy back_flip = run(weighted_flip_morphism(), Trichotomy::AntiFlip, -1);
        expect(back_flip == Trichotomy::Flip, "anti-flip should reverse to a flip");
        return std::string("flop and anti-flip verified with involution");
    });

    criterion(6, "sign law: relation membership matches intersection signs", [] {
        int checks = 0;
        for (const auto& m : all_fixture_morphisms()) {
            auto an = analyze_mori(m);
            for (int k : an.extremal) {
                auto epr = extremal_primitive_relation(m, an, k);
                for (int wid : an.rays[k].wall_ids)
                    for (int v = 0; v < m.source.ray_count(); ++v) {
                        Rat num = intersection_number(
                            m.source, TorusDivisor::prime(m.source, v),
                            an.contracted[wid].wall);
                        expect(intersection_sign(epr, v) == sign(num),
                               "sign mismatch");
                        ++checks;
                    }
            }
        }
        return std::to_string(checks) + " (ray, wall) sign checks";
    });

    criterion(7, "prime divisors pair to at most one, with one attained", [] {
        Rat max_seen(-1000);
        int pairs = 0;
        for (const auto& m : smooth_fixture_morphisms()) {
            auto an = analyze_mori(m);
            for (int k : an.extremal) {
                auto epr = extremal_primitive_relation(m, an, k);
                for (int v = 0; v < m.source.ray_count(); ++v) {
                    Rat p = line_class_pairing(m, epr,
                                               TorusDivisor::prime(m.source, v));
                    expect(p <= 1, "pairing exceeds one");
                    if (p > max_seen) max_seen = p;
                    ++pairs;
                }
            }
        }
        expect(max_seen == 1, "maximum pairing is not exactly one");
        return std::to_string(pairs) + " pairings, max exactly 1";
    });

    criterion(8, "twist criteria equal the direct computation on the grid", [] {
        // the criteria throw on any disagreement with the direct check
        long long ample_count = 0, candidates = 0;
        for (const auto& m : smooth_fixture_morphisms()) {
            auto an = analyze_mori(m);
            auto walls = walls_of(an);
            int R = m.source.ray_count();
            std::vector<int> c(R, -2);
            while (true) {
                TorusDivisor L = TorusDivisor::zero(m.source);
                for (int i = 0; i < R; ++i) L.coeffs[i] = Rat(c[i]);
                ++candidates;
                if (relative_positivity(m, walls, L).verdict ==
                    PositivityVerdict::Ample) {
                    ++ample_count;
                    for (int v1 = 0; v1 < R; ++v1)
                        for (int v2 = v1 + 1; v2 < R; ++v2)
                            two_divisor_free_criterion(m, an, L, v1, v2);
                    for (int v = 0; v < R; ++v)
                        one_divisor_ample_criterion(m, an, L, v);
                }
                int i = 0;
                while (i < R && c[i] == 2) c[i++] = -2;
                if (i == R) break;
                ++c[i];
            }
        }
        expect(ample_count > 0, "no ample divisors in the grid");
        std::ostringstream os;
        os << candidates << " divisors, " << ample_count
           << " f-ample, zero disagreements";
        return os.str();
    });

    criterion(9, "anticanonical twists on the Hirzebruch surface are free", [] {
        auto m = to_point(f1());
        auto an = analyze_mori(m);
        auto rep = twist_free_bound(m, an, TorusDivisor::anticanonical(m.source),
                                    Int(1));
        expect(rep.hypothesis_holds, "hypothesis (L.C >= 1) fails");
        expect(rep.min_twisted == 0, "measured minimum is not exactly 0");
        expect(rep.bound_holds, "bound fails");
        expect(rep.twist_free.size() == 4, "expected four twists");
        for (bool fr : rep.twist_free) expect(fr, "a twist is not f-free");
        return std::string("all four twists f-free, min exactly 0 = t-1");
    });

    criterion(10, "structure theorems hold on fixtures and random fans", [] {
        int fans = 0, rays = 0;
        auto verify = [&](const FanMorphism& m) {
            auto an = analyze_mori(m);
            for (int k : an.extremal) {
                auto epr = extremal_primitive_relation(m, an, k);
                expect(verify_extremal_structure(m.source, epr).ok(),
                       "extremal structure violation");
                if (is_complete(m.source))
                    expect(verify_primitive_closure(m.source, epr).ok(),
                           "primitive closure violation");
                ++rays;
            }
            ++fans;
        };
        for (const auto& m : all_fixture_morphisms()) verify(m);

        std::mt19937 rng(0xA11CE);
        std::uniform_int_distribution<int> subs2(3, 8), subs3(2, 5);
        for (int i = 0; i < 300; ++i)
            verify(to_point(
                random_fans::random_smooth_complete(rng, 2, subs2(rng))));
        for (int i = 0; i < 200; ++i)
            verify(to_point(
                random_fans::random_smooth_complete(rng, 3, subs3(rng))));
        std::ostringstream os;
        os << fans << " fans, " << rays << " extremal rays, zero violations";
        return os.str();
    });

    criterion(11, "extremality: two rays, rejected class has a verified witness", [] {
        auto m = to_point(f1());
        auto an = analyze_mori(m);
        expect(an.contracted.size() == 4, "expected four contracted walls");
        expect(an.extremal.size() == 2, "expected exactly two extremal rays");
        int rejected = -1;
        for (int g = 0; g < int(an.rays.size()); ++g)
            if (!an.rays[g].extremal) {
                expect(rejected < 0, "expected a single rejected class");
                rejected = g;
            }
        expect(rejected >= 0, "no rejected class");
        std::vector<Rat> expected = {Rat(1), Rat(1), Rat(1), Rat(0)};
        expect(an.rays[rejected].cls.coeffs == expected,
               "rejected class is not (1,1,1,0)");
        // re-verify the stored witness independently
        const auto& wit = an.rays[rejected].witness;
        expect(wit.size() == an.extremal.size(), "witness arity");
        for (int i = 0; i < m.source.ray_count(); ++i) {
            Rat acc(0);
            for (std::size_t e = 0; e < an.extremal.size(); ++e)
                acc += wit[e] * an.rays[an.extremal[e]].cls.coeffs[i];
            expect(acc == an.rays[rejected].cls.coeffs[i],
                   "witness does not reproduce the class");
        }
        for (const Rat& w : wit) expect(w >= 0, "witness not nonnegative");
        return std::string("witness (") + to_string(wit[0]) + ", " +
               to_string(wit[1]) + ") re-verified";
    });

    if (failures) {
        std::cout << failures << " criterion(s) FAILED\n";
        return 1;
    }
    std::cout << "all 11 criteria PASS\n";
    return 0;
}
