#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"
#include "vqfp/boxmin.hpp"

using namespace vqfp;
using namespace vqfp::testing;

namespace {

ProblemInstance box_only(int n, double lo, double hi) {
    ProblemInstance p;
    p.n = n;
    std::mt19937_64 rng(1);
    RatioObjective obj;  // placeholder objective so the instance validates
    obj.g = random_denominator(rng, n);
    obj.f = obj.g;
    p.objectives.push_back(obj);
    Box box;
    box.lo = Vector::Constant(n, lo);
    box.hi = Vector::Constant(n, hi);
    p.bounds = box;
    for (int i = 0; i < n; ++i) {
        AffineConstraint up, dn;
        up.a = Vector::Zero(n);
        up.a(i) = 1.0;
        up.b = -hi;
        dn.a = Vector::Zero(n);
        dn.a(i) = -1.0;
        dn.b = lo;
        p.constraints.emplace_back(up);
        p.constraints.emplace_back(dn);
    }
    return p;
}

double brute_min(const ProblemInstance& p, const QuadraticFunction& q, int per_dim) {
    const Box& box = *p.bounds;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(static_cast<size_t>(p.n), 0);
    for (;;) {
        Vector x(p.n);
        for (int i = 0; i < p.n; ++i)
            x(i) = box.lo(i) +
                   (box.hi(i) - box.lo(i)) * idx[static_cast<size_t>(i)] / (per_dim - 1);
        best = std::min(best, q.value(x));
        int i = 0;
        while (i < p.n && ++idx[static_cast<size_t>(i)] == per_dim)
            idx[static_cast<size_t>(i++)] = 0;
        if (i == p.n) break;
    }
    return best;
}

}  // namespace

TEST_CASE("interior stationary point of a convex quadratic") {
    const ProblemInstance p = box_only(1, -2.0, 2.0);
    QuadraticFunction q;
    q.Q = Matrix::Constant(1, 1, 7.0);
    q.c = Vector::Constant(1, 3.0);
    q.d = 0.0;
    RunConfig cfg;
    const MinimizeResult r = minimize_quadratic(p, q, cfg);
    REQUIRE(r.kind == MinKind::Global);
    CHECK(r.argmin(0) == doctest::Approx(-3.0 / 14.0).epsilon(1e-10));
    CHECK(r.value == doctest::Approx(-9.0 / 28.0).epsilon(1e-10));
}

TEST_CASE("concave quadratic attains its minimum at a vertex") {
    const ProblemInstance p = box_only(2, -1.0, 2.0);
    QuadraticFunction q;
    q.Q = -Matrix::Identity(2, 2);
    q.c = Vector::Zero(2);
    q.d = 0.0;
    RunConfig cfg;
    const MinimizeResult r = minimize_quadratic(p, q, cfg);
    REQUIRE(r.kind == MinKind::Global);
    CHECK(r.value == doctest::Approx(-8.0).epsilon(1e-10));  // at (2, 2)
}

TEST_CASE("face enumeration beats a dense lattice on random problems") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const ProblemInstance p = box_only(n, -1.0, 1.0);
        QuadraticFunction q;
        q.Q = random_symmetric(rng, n, 2.0);
        q.c = random_vector(rng, n, -2.0, 2.0);
        q.d = 0.0;
        RunConfig cfg;
        const MinimizeResult r = minimize_quadratic(p, q, cfg);
        REQUIRE(r.kind == MinKind::Global);
        const double lattice = brute_min(p, q, 41);
        CHECK(r.value <= lattice + 1e-9);
        CHECK(feasibility(p, r.argmin, 1e-9).feasible);
        CHECK(q.value(r.argmin) == doctest::Approx(r.value).epsilon(1e-12));
    }
}

TEST_CASE("unconstrained convex quadratic solves in closed form") {
    ProblemInstance p;
    p.n = 2;
    std::mt19937_64 rng(61);
    RatioObjective obj;
    obj.g = random_denominator(rng, 2);
    obj.f = obj.g;
    p.objectives.push_back(obj);
    QuadraticFunction q;
    q.Q = Matrix::Identity(2, 2);
    q.c = Vector::Constant(2, -2.0);
    q.d = 0.0;
    RunConfig cfg;
    const MinimizeResult r = minimize_quadratic(p, q, cfg);
    REQUIRE(r.kind == MinKind::Global);
    CHECK(r.argmin(0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.value == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("unconstrained nonconvex quadratic is unbounded") {
    ProblemInstance p;
    p.n = 1;
    std::mt19937_64 rng(67);
    RatioObjective obj;
    obj.g = random_denominator(rng, 1);
    obj.f = obj.g;
    p.objectives.push_back(obj);
    QuadraticFunction q;
    q.Q = Matrix::Constant(1, 1, -1.0);
    q.c = Vector::Zero(1);
    q.d = 0.0;
    RunConfig cfg;
    const MinimizeResult r = minimize_quadratic(p, q, cfg);
    CHECK(r.kind == MinKind::Unbounded);
}

TEST_CASE("derive_box reads the explicit box and flags extra constraints") {
    ProblemInstance p = box_only(2, -1.0, 1.0);
    EffectiveBox eb = derive_box(p);
    REQUIRE(eb.box);
    CHECK_FALSE(eb.extra);
    CHECK(eb.box->lo(0) == doctest::Approx(-1.0));
    AffineConstraint diag;
    diag.a = Vector::Constant(2, 1.0);
    diag.b = -1.0;
    p.constraints.emplace_back(diag);
    eb = derive_box(p);
    REQUIRE(eb.box);
    CHECK(eb.extra);
}

TEST_CASE("extra constraints are honored by the lattice fallback") {
    // minimize x + y over the triangle x,y in [0,1], x + y <= 1
    ProblemInstance p = box_only(2, 0.0, 1.0);
    AffineConstraint diag;
    diag.a = Vector::Constant(2, 1.0);
    diag.b = -1.0;
    p.constraints.emplace_back(diag);
    QuadraticFunction q;
    q.Q = Matrix::Zero(2, 2);
    q.c = Vector::Constant(2, -1.0);  // maximize x + y => min of -(x+y) is -1 on the edge
    q.d = 0.0;
    RunConfig cfg;
    const MinimizeResult r = minimize_quadratic(p, q, cfg);
    REQUIRE((r.kind == MinKind::Global || r.kind == MinKind::LocalOnly));
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(feasibility(p, r.argmin, 1e-6).feasible);
}
