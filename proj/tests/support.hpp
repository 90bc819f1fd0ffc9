#pragma once

#include <functional>
#include <random>

#include "vqfp/io.hpp"

namespace vqfp::testing {

inline ProblemInstance paper_example() {
    return load_instance(VQFP_DATA_DIR "/paper_example.json");
}

/// Uniform entries in [lo, hi].
inline Matrix random_matrix(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Matrix M(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) M(r, c) = u(rng);
    return M;
}

inline Vector random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = u(rng);
    return v;
}

inline Matrix random_symmetric(std::mt19937_64& rng, int n, double scale) {
    Matrix M = random_matrix(rng, n, -scale, scale);
    return 0.5 * (M + M.transpose());
}

inline Matrix random_psd(std::mt19937_64& rng, int n, double scale) {
    const Matrix R = random_matrix(rng, n, -scale, scale);
    return R.transpose() * R;
}

/// Denominator with a consistent stationary system and a positive floor:
/// b = -2 B y pins the minimizer to y, then b0 lifts g(y) into [0.5, 2.5].
inline QuadraticFunction random_denominator(std::mt19937_64& rng, int n) {
    QuadraticFunction g;
    g.Q = random_psd(rng, n, 1.0);
    const Vector y = random_vector(rng, n, -0.5, 0.5);
    g.c = -2.0 * (g.Q * y);
    std::uniform_real_distribution<double> u(0.5, 2.5);
    g.d = y.dot(g.Q * y) + u(rng);
    return g;
}

struct InstanceOptions {
    int n = 2;
    int m = 2;
    bool convex_numerators = false;
    double box_half_width = 1.0;
};

/// Box-bounded random instance honoring every model invariant.
inline ProblemInstance random_instance(std::mt19937_64& rng, const InstanceOptions& opt) {
    ProblemInstance p;
    p.n = opt.n;
    for (int i = 0; i < opt.m; ++i) {
        RatioObjective obj;
        obj.f.Q = opt.convex_numerators ? random_psd(rng, opt.n, 1.0)
                                        : random_symmetric(rng, opt.n, 2.0);
        obj.f.c = random_vector(rng, opt.n, -2.0, 2.0);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        obj.f.d = u(rng);
        obj.g = random_denominator(rng, opt.n);
        p.objectives.push_back(obj);
    }
    Box box;
    box.lo = Vector::Constant(opt.n, -opt.box_half_width);
    box.hi = Vector::Constant(opt.n, opt.box_half_width);
    p.bounds = box;
    for (int i = 0; i < opt.n; ++i) {
        AffineConstraint up, dn;
        up.a = Vector::Zero(opt.n);
        up.a(i) = 1.0;
        up.b = -box.hi(i);
        dn.a = Vector::Zero(opt.n);
        dn.a(i) = -1.0;
        dn.b = box.lo(i);
        p.constraints.emplace_back(up);
        p.constraints.emplace_back(dn);
    }
    validate_instance(p);
    return p;
}

inline Vector random_point_in_box(std::mt19937_64& rng, const Box& box) {
    Vector x(box.lo.size());
    for (int i = 0; i < x.size(); ++i) {
        std::uniform_real_distribution<double> u(box.lo(i), box.hi(i));
        x(i) = u(rng);
    }
    return x;
}

/// Central finite difference of a scalar field along coordinate axes.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double h = 1e-6) {
    Vector g(x.size());
    for (int i = 0; i < x.size(); ++i) {
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

}  // namespace vqfp::testing
