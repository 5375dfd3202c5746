#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "logfirm/fan.hpp"

using namespace logfirm;

namespace {

using RaySets = std::set<std::vector<IntVector>>;

RaySets maximal_rays(const ConeComplex& c) {
    RaySets out;
    for (auto i : c.maximal_cones()) out.insert(c.cones[i].rays);
    return out;
}

std::set<IntVector> all_rays(const ConeComplex& c) {
    std::set<IntVector> out;
    for (const auto& cone : c.cones)
        for (const auto& r : cone.rays) out.insert(r);
    return out;
}

std::size_t cone_of(const ConeComplex& c, const std::vector<IntVector>& rays) {
    for (std::size_t i = 0; i < c.cones.size(); ++i)
        if (c.cones[i].rays == rays) return i;
    FAIL("cone not found");
    return 0;
}

ConeComplex iterated(ConeComplex c, const std::vector<IntVector>& vs) {
    for (const auto& v : vs) c = star_subdivision(c, v).fine;
    return c;
}

IntVector v2(long a, long b) { return make_vector({a, b}); }
IntVector v3(long a, long b, long c) { return make_vector({a, b, c}); }

}  // namespace

TEST_CASE("canonicalize_point") {
    auto n2 = orthant(2);
    auto p = canonicalize_point(n2, {0, v2(0, 3)});
    CHECK(n2.cones[p.cone].rays == std::vector<IntVector>{v2(0, 1)});
    CHECK(p.coords == v2(0, 3));
    CHECK(canonicalize_point(n2, {0, v2(1, 2)}) == IntegralPoint{0, v2(1, 2)});
    auto z = canonicalize_point(n2, {0, v2(0, 0)});
    CHECK(n2.cones[z.cone].dim() == 0);
    CHECK(canonicalize_point(n2, p) == p);
    CHECK_THROWS_AS(canonicalize_point(n2, {0, v2(-1, 2)}), Error);

    // Abstract cone with a nontrivial lattice: the face maps are identities
    // inside each block, and points are found in the minimal face.
    auto u = cone_union({dual_description_from_rays(2, {v2(1, 0), v2(1, 2)})});
    auto q = canonicalize_point(u, {0, v2(2, 4)});
    CHECK(u.cones[q.cone].rays == std::vector<IntVector>{v2(1, 2)});
}

TEST_CASE("map_point") {
    auto n2 = orthant(2);
    auto blow = star_subdivision(n2, v2(1, 1));
    // (2,1) lies in the cone spanned by (1,0) and (1,1).
    auto src = canonicalize_point(blow.fine, {cone_of(blow.fine, {v2(1, 0), v2(1, 1)}), v2(2, 1)});
    CHECK(map_point(n2, blow.map, src) == IntegralPoint{0, v2(2, 1)});
    auto zero = canonicalize_point(blow.fine, {0, v2(0, 0)});
    auto img = map_point(n2, blow.map, zero);
    CHECK(is_zero(img.coords));
    CHECK(n2.cones[img.cone].dim() == 0);

    auto line = orthant(1);
    auto src1 = cone_union({dual_description_from_rays(1, {make_vector({1})})});
    auto twice = make_map(src1, line, {0}, {IntMatrix{{2}}});
    CHECK(map_point(line, twice, {0, make_vector({3})}).coords == make_vector({6}));
    CHECK_THROWS_AS(make_map(src1, line, {0}, {IntMatrix{{-1}}}), Error);
}

TEST_CASE("star_subdivision") {
    auto n2 = orthant(2);
    auto blow = star_subdivision(n2, v2(1, 1));
    CHECK(maximal_rays(blow.fine) == RaySets{{v2(0, 1), v2(1, 1)}, {v2(1, 0), v2(1, 1)}});
    CHECK(is_well_formed(blow.fine));
    CHECK(maximal_rays(star_subdivision(n2, v2(1, 0)).fine) == maximal_rays(n2));

    auto n3 = star_subdivision(orthant(3), v3(1, 1, 1)).fine;
    CHECK(n3.maximal_cones().size() == 3);
    CHECK(is_well_formed(n3));

    // Boundary vector: only the cones containing it are split.
    auto edge = star_subdivision(orthant(3), v3(1, 1, 0)).fine;
    CHECK(edge.maximal_cones().size() == 2);
    CHECK(is_well_formed(edge));

    CHECK_THROWS_AS(star_subdivision(n2, v2(2, 2)), Error);
    try {
        star_subdivision(n2, v2(2, 2));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPrimitive);
    }
    try {
        star_subdivision(n2, v2(-1, 0));
        FAIL("expected OutsideSupport");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutsideSupport);
    }
}

TEST_CASE("common_refinement") {
    auto n2 = orthant(2);
    auto a = star_subdivision(n2, v2(1, 1)).fine;
    auto b = star_subdivision(n2, v2(1, 2)).fine;
    CHECK(maximal_rays(common_refinement(a, a)) == maximal_rays(a));
    auto ab = common_refinement(a, b);
    CHECK(maximal_rays(ab) == RaySets{{v2(1, 0), v2(1, 1)}, {v2(1, 1), v2(1, 2)}, {v2(0, 1), v2(1, 2)}});
    CHECK(is_well_formed(ab));
    CHECK(is_refinement(ab, a));
    CHECK(is_refinement(ab, b));
    CHECK(maximal_rays(common_refinement(a, n2)) == maximal_rays(a));

    auto half = embedded_fan(2, {{v2(1, 0), v2(1, 1)}});
    try {
        common_refinement(n2, half);
        FAIL("expected SupportMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SupportMismatch);
    }
}

TEST_CASE("sigma_n") {
    auto s1 = sigma_n(2, 1);
    CHECK(all_rays(s1) == std::set<IntVector>{v2(1, 0), v2(1, 1), v2(0, 1)});
    CHECK(s1.maximal_cones().size() == 2);
    auto s2 = sigma_n(2, 2);
    CHECK(all_rays(s2) == std::set<IntVector>{v2(1, 0), v2(2, 1), v2(1, 1), v2(1, 2), v2(0, 1)});
    CHECK(s2.maximal_cones().size() == 4);
    CHECK(maximal_rays(sigma_n(1, 1)) == maximal_rays(orthant(1)));
    CHECK(is_well_formed(s2));
    try {
        sigma_n(4, 1);
        FAIL("expected RankUnsupported");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RankUnsupported);
    }

    // Rank two: one ray per primitive vector of {0..n}^2.
    for (long n = 1; n <= 6; ++n) {
        std::size_t prim = 0;
        for (long x = 0; x <= n; ++x)
            for (long y = 0; y <= n; ++y)
                if (std::gcd(x, y) == 1) ++prim;
        CHECK(sigma_n(2, n).maximal_cones().size() == prim - 1);
    }
}

TEST_CASE("root_rescale") {
    auto n2 = orthant(2);
    auto same = root_rescale(n2, 1);
    CHECK(same.scale == 1);
    CHECK(maximal_rays(same) == maximal_rays(n2));
    auto line2 = root_rescale(orthant(1), 2);
    auto pts = lattice_points_box(line2, 1);
    REQUIRE(pts.size() == 3);
    CHECK(pts[1].coords == make_vector({1}));  // the point 1/2
    CHECK(root_rescale(sigma_n(2, 2), 2).scale == 2);
    // Index k^rank per cone.
    CHECK(lattice_points_box(root_rescale(n2, 3), 2).size() == 7 * 7);
}

TEST_CASE("is_refinement") {
    auto s1 = sigma_n(2, 1), s2 = sigma_n(2, 2);
    CHECK(is_refinement(s2, s1));
    CHECK_FALSE(is_refinement(s1, s2));
    CHECK(is_refinement(s1, s1));
    // Root stacks refine their base.
    CHECK(is_refinement(root_rescale(s2, 2), s1));
    CHECK_FALSE(is_refinement(s1, root_rescale(s1, 2)));
    // Missing support is caught by the probe.
    auto half = embedded_fan(2, {{v2(1, 0), v2(1, 1)}});
    CHECK_FALSE(is_refinement(half, orthant(2)));
}

TEST_CASE("lattice_points_box") {
    CHECK(lattice_points_box(orthant(2), 2).size() == 9);
    auto blow = star_subdivision(orthant(2), v2(1, 1)).fine;
    auto pts = lattice_points_box(blow, 2);
    CHECK(pts.size() == 9);
    std::set<IntVector> coords;
    for (const auto& p : pts) {
        coords.insert(p.coords);
        CHECK(canonicalize_point(blow, p) == p);
    }
    CHECK(coords.size() == 9);
    CHECK(lattice_points_box(root_rescale(orthant(1), 2), 1).size() == 3);
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("subdivisions preserve integral points") {
    std::vector<std::pair<Subdivision, ConeComplex>> cases;
    auto n2 = orthant(2), n3 = orthant(3);
    for (auto v : {v2(1, 1), v2(1, 2), v2(3, 1), v2(2, 5)}) cases.push_back({star_subdivision(n2, v), n2});
    cases.push_back({star_subdivision(n3, v3(1, 1, 1)), n3});
    cases.push_back({star_subdivision(n3, v3(1, 2, 0)), n3});
    cases.push_back({{sigma_n(2, 3), subdivision_map(sigma_n(2, 3), n2)}, n2});
    auto s13 = sigma_n(3, 1);
    cases.push_back({{s13, subdivision_map(s13, n3)}, n3});
    for (const auto& [sub, coarse] : cases) {
        long bound = *coarse.ambient_rank == 2 ? 10 : 5;
        auto fine_pts = lattice_points_box(sub.fine, bound);
        auto coarse_pts = lattice_points_box(coarse, bound);
        std::set<IntegralPoint> images;
        for (const auto& p : fine_pts) images.insert(map_point(coarse, sub.map, p));
        CHECK(images.size() == fine_pts.size());
        CHECK(images == std::set<IntegralPoint>(coarse_pts.begin(), coarse_pts.end()));
        CHECK(coarse_pts.size() == static_cast<std::size_t>(std::pow(bound + 1, *coarse.ambient_rank)));
        CHECK(is_well_formed(sub.fine));
    }
}

TEST_CASE("map_point is functorial") {
    auto n2 = orthant(2);
    auto first = star_subdivision(n2, v2(1, 1));
    auto second = star_subdivision(first.fine, v2(1, 2));
    auto both = compose(first.map, second.map);
    for (const auto& p : lattice_points_box(second.fine, 6)) {
        auto step = map_point(n2, first.map, map_point(first.fine, second.map, p));
        CHECK(map_point(n2, both, p) == step);
    }
    auto line = orthant(1);
    auto src = cone_union({dual_description_from_rays(1, {make_vector({1})})});
    auto mid = cone_union({dual_description_from_rays(1, {make_vector({1})})});
    auto f = make_map(src, mid, {0}, {IntMatrix{{2}}});
    auto g = make_map(mid, line, {0}, {IntMatrix{{3}}});
    for (long x = 0; x <= 5; ++x) {
        IntegralPoint p = canonicalize_point(src, {0, make_vector({x})});
        CHECK(map_point(line, compose(g, f), p) == map_point(line, g, map_point(mid, f, p)));
    }
}

TEST_CASE("sigma tower") {
    for (std::size_t n = 1; n <= 3; ++n) CHECK(is_refinement(sigma_n(2, n + 1), sigma_n(2, n)));
    auto s31 = sigma_n(3, 1), s32 = sigma_n(3, 2);
    CHECK(is_refinement(s32, s31, 4));
    CHECK(is_refinement(s31, orthant(3), 4));
    CHECK(is_well_formed(s31));
    CHECK(is_well_formed(s32));

    // Single star subdivisions at every probe vector.
    for (std::size_t n = 1; n <= 3; ++n) {
        auto s = sigma_n(2, n);
        for (long x = 0; x <= static_cast<long>(n); ++x)
            for (long y = 0; y <= static_cast<long>(n); ++y)
                if (std::gcd(x, y) == 1) CHECK(is_refinement(s, star_subdivision(orthant(2), v2(x, y)).fine));
    }
    for (long x = 0; x <= 2; ++x)
        for (long y = 0; y <= 2; ++y)
            for (long z = 0; z <= 2; ++z)
                if (std::gcd(std::gcd(x, y), z) == 1)
                    CHECK(is_refinement(s32, star_subdivision(orthant(3), v3(x, y, z)).fine, 4));
}

TEST_CASE("sigma refines every ordered stellar subdivision") {
    auto s32 = sigma_n(3, 2);
    // Three interior points as in the ordered subdivision picture, plus
    // mixed configurations with boundary points.
    std::vector<std::vector<IntVector>> configs{
        {v3(1, 1, 1), v3(2, 1, 1), v3(2, 1, 2)},
        {v3(1, 1, 2), v3(1, 2, 1), v3(2, 1, 1)},
        {v3(1, 1, 1), v3(1, 1, 0), v3(1, 2, 2)},
        {v3(0, 1, 1), v3(1, 0, 1), v3(1, 1, 0)},
    };
    for (auto config : configs) {
        std::sort(config.begin(), config.end());
        std::set<RaySets> distinct;
        do {
            auto f = iterated(orthant(3), config);
            CHECK(is_well_formed(f));
            CHECK(is_refinement(s32, f, 4));
            distinct.insert(maximal_rays(f));
        } while (std::next_permutation(config.begin(), config.end()));
        // Edge midpoints: the result depends on the order.
        if (config[0] == v3(0, 1, 1)) CHECK(distinct.size() == 3);
    }
}

TEST_CASE("sigma_1 in rank three equals the overlay of all ordered subdivisions") {
    std::vector<IntVector> vs{v3(0, 1, 1), v3(1, 0, 1), v3(1, 1, 0), v3(1, 1, 1)};
    std::sort(vs.begin(), vs.end());
    std::optional<ConeComplex> overlay;
    do {
        auto f = iterated(orthant(3), vs);
        overlay = overlay ? common_refinement(*overlay, f, 3) : f;
    } while (std::next_permutation(vs.begin(), vs.end()));
    CHECK(maximal_rays(*overlay) == maximal_rays(sigma_n(3, 1)));
}

TEST_CASE("random fans stay well formed") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> e(0, 4);
    for (int trial = 0; trial < 25; ++trial) {
        ConeComplex f = orthant(2 + trial % 2);
        std::size_t d = *f.ambient_rank;
        for (int step = 0; step < 3; ++step) {
            IntVector v(d);
            for (auto& x : v) x = e(rng);
            if (is_zero(v)) continue;
            v = primitive(v);
            auto s = star_subdivision(f, v);
            CHECK(is_refinement(s.fine, f, 4));
            f = s.fine;
        }
        CHECK(is_well_formed(f));
        auto g = star_subdivision(orthant(d), primitive(d == 2 ? v2(1 + e(rng), 1 + e(rng)) : v3(1, 1 + e(rng), e(rng)))).fine;
        auto fg = common_refinement(f, g, 4);
        CHECK(is_well_formed(fg));
        CHECK(is_refinement(fg, f, 4));
        CHECK(is_refinement(fg, g, 4));
    }
}
