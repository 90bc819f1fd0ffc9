#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"
#include "vqfp/oracle.hpp"

using namespace vqfp;
using namespace vqfp::testing;

namespace {
Vector v1(double x) {
    Vector v(1);
    v(0) = x;
    return v;
}

ProblemInstance triangle_instance() {
    // box [0,1]^2 with x1 + x2 <= 1
    ProblemInstance p;
    p.n = 2;
    std::mt19937_64 rng(3);
    RatioObjective obj;
    obj.g = random_denominator(rng, 2);
    obj.f = obj.g;
    p.objectives.push_back(obj);
    Box box;
    box.lo = Vector::Zero(2);
    box.hi = Vector::Constant(2, 1.0);
    p.bounds = box;
    for (int i = 0; i < 2; ++i) {
        AffineConstraint up, dn;
        up.a = Vector::Zero(2);
        up.a(i) = 1.0;
        up.b = -1.0;
        dn.a = Vector::Zero(2);
        dn.a(i) = -1.0;
        dn.b = 0.0;
        p.constraints.emplace_back(up);
        p.constraints.emplace_back(dn);
    }
    AffineConstraint diag;
    diag.a = Vector::Constant(2, 1.0);
    diag.b = -1.0;
    p.constraints.emplace_back(diag);
    return p;
}
}  // namespace

TEST_CASE("unit-step lattice of the example") {
    const ProblemInstance p = paper_example();
    const std::vector<Vector> pts = collect_grid_points(p, 1.0, 1e-9);
    REQUIRE(pts.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(pts[static_cast<size_t>(k)](0) ==
                                      doctest::Approx(-2.0 + k).epsilon(1e-12));
}

TEST_CASE("constraint filtering on the triangle") {
    const ProblemInstance p = triangle_instance();
    const std::vector<Vector> pts = collect_grid_points(p, 0.5, 1e-9);
    CHECK(pts.size() == 6);
}

TEST_CASE("an instance without a box is refused") {
    ProblemInstance p = paper_example();
    p.constraints.clear();
    p.bounds.reset();
    CHECK_THROWS_AS(collect_grid_points(p, 0.5, 1e-9), ConfigError);
}

TEST_CASE("oversized lattices are refused") {
    const ProblemInstance p = paper_example();
    CHECK_THROWS_AS(collect_grid_points(p, 1e-8, 1e-9), ConfigError);
}

TEST_CASE("dominance verdicts on the example, frozen regressions") {
    const ProblemInstance p = paper_example();
    SUBCASE("certified points are undominated") {
        for (double xs : {0.0, -0.25}) {
            const DominanceReport rep = dominance_check(p, v1(xs), 1e-3, 1e-9);
            CHECK_FALSE(rep.dominated);
            CHECK_FALSE(rep.weakly_dominated);
        }
    }
    SUBCASE("x = 2 is dominated; first scan-order dominator is -1") {
        const DominanceReport rep = dominance_check(p, v1(2.0), 1e-3, 1e-9);
        CHECK(rep.dominated);
        REQUIRE(rep.dominator);
        CHECK((*rep.dominator)(0) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(rep.points_checked == 4001);
    }
    SUBCASE("x = 1.9 is dominated") {
        const DominanceReport rep = dominance_check(p, v1(1.9), 1e-3, 1e-9);
        CHECK(rep.dominated);
    }
}

TEST_CASE("approximate front of the example, frozen regression") {
    const ProblemInstance p = paper_example();
    const std::vector<FrontPoint> front = approximate_pareto_front(p, 0.01, 1e-9);
    REQUIRE(front.size() == 67);
    CHECK(front.front().x(0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(front.back().x(0) == doctest::Approx(0.16).epsilon(1e-12));
    // the front contains both certified points (on-grid ones)
    bool has_zero = false, has_quarter = false;
    for (const FrontPoint& f : front) {
        if (std::abs(f.x(0)) < 1e-12) has_zero = true;
        if (std::abs(f.x(0) + 0.25) < 1e-12) has_quarter = true;
    }
    CHECK(has_zero);
    CHECK(has_quarter);
}

TEST_CASE("front self-consistency with dominance_check") {
    const ProblemInstance p = paper_example();
    const std::vector<FrontPoint> front = approximate_pareto_front(p, 0.05, 1e-9);
    for (const FrontPoint& f : front)
        CHECK_FALSE(dominance_check(p, f.x, 0.05, 1e-9).dominated);
}

TEST_CASE("monotone refinement on nested power-of-two steps") {
    const ProblemInstance p = paper_example();
    const DominanceReport coarse = dominance_check(p, v1(2.0), 0.25, 1e-9);
    const DominanceReport fine = dominance_check(p, v1(2.0), 0.125, 1e-9);
    CHECK(coarse.dominated);
    CHECK(fine.dominated);  // dominators persist when the grid is refined
}

TEST_CASE("duplicated objectives collapse to the single-objective front") {
    std::mt19937_64 rng(109);
    ProblemInstance p = paper_example();
    p.objectives = {p.objectives[0], p.objectives[0]};
    const std::vector<FrontPoint> twice = approximate_pareto_front(p, 0.1, 1e-9);
    ProblemInstance q = paper_example();
    q.objectives = {q.objectives[0]};
    const std::vector<FrontPoint> once = approximate_pareto_front(q, 0.1, 1e-9);
    REQUIRE(twice.size() == once.size());
    for (size_t k = 0; k < once.size(); ++k)
        CHECK((twice[k].x - once[k].x).cwiseAbs().maxCoeff() <= 1e-12);
    // single objective: the front is the grid argmin set of f/g
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& x : collect_grid_points(q, 0.1, 1e-9))
        best = std::min(best, evaluate_ratios(q, x)(0));
    for (const FrontPoint& f : once) CHECK(f.ratios(0) <= best + 1e-9);
}

TEST_CASE("dominates implements the strict vector order") {
    Vector a(2), b(2);
    a << 1.0, 1.0;
    b << 1.0, 1.0;
    CHECK_FALSE(dominates(a, b, 1e-9));  // equal vectors never dominate
    b(1) = 2.0;
    CHECK(dominates(a, b, 1e-9));
    CHECK_FALSE(dominates(b, a, 1e-9));
    a(0) = 2.0;  // incomparable
    CHECK_FALSE(dominates(a, b, 1e-9));
}
