#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "casson/casson.hpp"
#include "casson/curve.hpp"
#include "casson/pedal.hpp"

using namespace casson;

TEST_CASE("trivial curve is the axis") {
    auto k = builtin_trivial();
    k.check_standard();
    k.check_embedded();
    CHECK(norm(k.point(0.3) - Vec3{0.3, 0, 0}) < 1e-12);
    CHECK(norm(k.point(7.0) - Vec3{7.0, 0, 0}) < 1e-12);
    CHECK(find_crossings(k, Vec3{0, 0, 1}).empty());
}

TEST_CASE("gauss_direction basics") {
    auto k = builtin_trivial();
    CHECK(norm(gauss_direction(k, 0.0, 1.0) - Vec3{1, 0, 0}) < 1e-12);
    CHECK_THROWS_AS((void)gauss_direction(k, 0.5, 0.5), Error);

    auto tr = builtin_trefoil(0.1);
    for (double s : {-0.9, -0.3, 0.2, 0.8})
        for (double t : {-0.7, 0.1, 0.6, 1.2}) {
            if (std::abs(s - t) < 1e-9) continue;
            Vec3 a = gauss_direction(tr, s, t);
            Vec3 b = gauss_direction(tr, t, s);
            CHECK(norm(a + b) < 1e-12); // antipodality
            CHECK(std::abs(norm(a) - 1.0) < 1e-12);
        }
}

TEST_CASE("built-in trefoil realizes the positive trefoil diagram") {
    auto k = builtin_trefoil(0.1);
    k.check_standard();
    k.check_embedded();
    k.check_in_kn(Vec3{0, 0, 1}, 0.1);
    k.check_in_kn(Vec3{0, 0, 1}, 0.05);

    auto crossings = find_crossings(k, Vec3{0, 0, 1});
    REQUIRE(crossings.size() == 3);
    for (const auto& c : crossings) {
        CHECK(c.sign == 1);
        CHECK(c.separation > 0.15); // bridges at +-0.1
    }
    auto g = diagram_from_curve(k, Vec3{0, 0, 1});
    CHECK(c2_double(g) == 1);
    CHECK(to_gauss_code(g) == "U1+ O2+ U3+ O1+ U2+ O3+");
}

TEST_CASE("crossing under/over parameter pair points along N") {
    auto k = builtin_trefoil(0.1);
    auto crossings = find_crossings(k, Vec3{0, 0, 1});
    for (const auto& c : crossings) {
        Vec3 d = gauss_direction(k, c.under_t, c.over_t);
        CHECK(angle_between(d, Vec3{0, 0, 1}) < 0.02);
    }
}

TEST_CASE("petal curve reproduces the perturbed pedal diagram exactly") {
    auto p = PedalPermutation::parse("1,3,5,2,7,4,6");
    auto k = petal_curve(p.levels, 0.1, true, 1);
    k.check_standard();
    k.check_embedded();
    k.check_in_kn(Vec3{0, 0, 1}, 0.1);

    auto from_curve = diagram_from_curve(k, Vec3{0, 0, 1});
    CHECK(from_curve.get().chords.size() == 21);
    CHECK(to_gauss_code(from_curve) == to_gauss_code(pedal_perturb(p, 1)));
    CHECK(c2_double(from_curve) == -1);
}

TEST_CASE("petal trefoil curve") {
    auto p = PedalPermutation::parse("1,3,5,2,4");
    auto k = petal_curve(p.levels, 0.1, true, 2);
    auto g = diagram_from_curve(k, Vec3{0, 0, 1});
    CHECK(g.get().chords.size() == 10);
    CHECK(to_gauss_code(g) == to_gauss_code(pedal_perturb(p, 2)));
    CHECK(c2_double(g) == 1);
}

TEST_CASE("unperturbed petal curve is embedded despite the uebercrossing") {
    auto k = petal_curve({1, 2, 3}, 0.1, false, 1);
    k.check_standard();
    k.check_embedded();
    auto crossings = find_crossings(k, Vec3{0, 0, 1});
    CHECK(crossings.size() == 3); // three strands meet pairwise at one point
}

TEST_CASE("curve_from_diagram: trefoil layout round trips its diagram") {
    auto g = parse_gauss_code("U1+ O2+ U3+ O1+ U2+ O3+");
    auto k = curve_from_diagram(g, builtin_trefoil_layout(), 0.1);
    auto crossings = find_crossings(k, Vec3{0, 0, 1});
    CHECK(crossings.size() == 3); // three bridges
    CHECK(to_gauss_code(diagram_from_curve(k, Vec3{0, 0, 1})) == "U1+ O2+ U3+ O1+ U2+ O3+");
}

TEST_CASE("curve_from_diagram: straight layout with no crossings") {
    PlanarLayout layout;
    layout.waypoints = {{-1, 0}, {-0.3, 0.2}, {0.4, -0.2}, {1, 0}};
    auto g = DoubleGaussDiagram(MultiGaussDiagram{});
    auto k = curve_from_diagram(g, layout, 0.1);
    k.check_standard();
    CHECK(find_crossings(k, Vec3{0, 0, 1}).empty());
}

TEST_CASE("curve_from_diagram: kink layout") {
    PlanarLayout layout;
    layout.waypoints = {{-1, 0},    {-0.4, 0.0}, {0.25, 0.42}, {0.55, 0.1},
                        {0.3, -0.32}, {-0.12, -0.3}, {-0.3, 0.1},  {0.1, 0.56},
                        {0.6, 0.56}, {1, 0}};
    int realized = 0, rejected = 0;
    for (const char* code : {"O1+ U1+", "U1+ O1+", "O1- U1-", "U1- O1-"}) {
        try {
            auto g = parse_gauss_code(code);
            auto k = curve_from_diagram(g, layout, 0.1);
            CHECK(to_gauss_code(diagram_from_curve(k, Vec3{0, 0, 1})) == code);
            ++realized;
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotEmbeddable);
            ++rejected;
        }
    }
    // One loop realizes exactly the two codes whose sign matches its writhe.
    CHECK(realized == 2);
    CHECK(rejected == 2);

    auto trefoil = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
    CHECK_THROWS_AS((void)curve_from_diagram(trefoil, layout, 0.1), Error);
}

TEST_CASE("tangential crossings are rejected") {
    // Two nearly parallel passes meet at an angle of ~6e-4, far below the
    // transversality floor of the crossing finder.
    std::vector<CurveSample> s;
    s.push_back({-2.0, {-2, 0, 0}, {1, 0, 0}});
    s.push_back({-1.0, {-1, 0, 0}, {1, 0, 0}});
    // Outbound pass: y = 0.4 + 3e-4 x, x from -0.8 to 0, at z = 0.
    for (double x : {-0.8, -0.4, 0.0})
        s.push_back({-0.9 + (x + 0.8), {x, 0.4 + 3e-4 * x, 0.0}, {1, 3e-4, 0}});
    // Turnaround above, then the return pass y = 0.39998 - 3e-4 x at z = 0.1;
    // the lines cross near x = -0.033.
    s.push_back({0.0, {0.4, 0.6, 0.05}, {0, 1, 0}});
    for (double x : {0.0, -0.4, -0.8})
        s.push_back({0.1 - x, {x, 0.39998 - 3e-4 * x, 0.1}, {-1, 3e-4, 0}});
    s.push_back({0.95, {-0.9, -0.4, 0}, {1, -0.2, 0}});
    s.push_back({1.0, {1, 0, 0}, {1, 0, 0}});
    s.push_back({2.0, {2, 0, 0}, {1, 0, 0}});
    std::sort(s.begin(), s.end(),
              [](const CurveSample& a, const CurveSample& b) { return a.t < b.t; });
    LongKnotCurve k(std::move(s));
    CHECK_THROWS_AS((void)find_crossings(k, Vec3{0, 0, 1}), Error);
}

TEST_CASE("curve json round trip") {
    auto k = builtin_trefoil(0.1);
    auto loaded = load_curve_json(curve_to_json(k));
    for (double t : {-0.8, -0.2, 0.1, 0.45, 0.9})
        CHECK(norm(loaded.point(t) - k.point(t)) < 1e-4);
    auto g = diagram_from_curve(loaded, Vec3{0, 0, 1});
    CHECK(c2_double(g) == 1);
}

TEST_CASE("hopf link curves") {
    auto [l1, l2] = builtin_hopf();
    CHECK(norm(l1.point(0) - Vec3{1, 0, 0}) < 1e-9);
    CHECK(norm(l1.point(l1.period()) - l1.point(0)) < 1e-9);
    double dmin = 1e9;
    for (const auto& a : l1.samples())
        for (const auto& b : l2.samples()) dmin = std::min(dmin, norm(a.p - b.p));
    CHECK(dmin > 0.5);
}
