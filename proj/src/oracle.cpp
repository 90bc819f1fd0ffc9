#include "vqfp/oracle.hpp"

#include <cmath>

#include "vqfp/boxmin.hpp"

namespace vqfp {

namespace {

constexpr long kGridCap = 10'000'000;

Box require_box(const ProblemInstance& p) {
    const EffectiveBox eb = derive_box(p);
    if (!eb.box) throw ConfigError("oracle: no bounding box derivable from the instance");
    return *eb.box;
}

}  // namespace

bool dominates(const Vector& rx, const Vector& ry, double dom_tol) {
    bool strict = false;
    for (int i = 0; i < rx.size(); ++i) {
        if (rx(i) > ry(i) + dom_tol) return false;
        if (rx(i) < ry(i) - dom_tol) strict = true;
    }
    return strict;
}

void grid_points(const ProblemInstance& p, double step, double feas_tol,
                 const std::function<void(const Vector&)>& visit) {
    if (step <= 0.0) throw ConfigError("oracle: step must be positive");
    const Box box = require_box(p);
    const int n = p.n;
    std::vector<long> counts(static_cast<size_t>(n));
    long total = 1;
    for (int i = 0; i < n; ++i) {
        counts[static_cast<size_t>(i)] =
            static_cast<long>(std::floor((box.hi(i) - box.lo(i)) / step + 1e-9)) + 1;
        total *= counts[static_cast<size_t>(i)];
        if (total > kGridCap) throw ConfigError("oracle: lattice exceeds the 1e7 point cap");
    }
    std::vector<long> idx(static_cast<size_t>(n), 0);
    Vector x(n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            x(i) = box.lo(i) + static_cast<double>(idx[static_cast<size_t>(i)]) * step;
        if (feasibility(p, x, feas_tol).feasible) visit(x);
        int i = 0;
        while (i < n && ++idx[static_cast<size_t>(i)] == counts[static_cast<size_t>(i)])
            idx[static_cast<size_t>(i++)] = 0;
        if (i == n) break;
    }
}

std::vector<Vector> collect_grid_points(const ProblemInstance& p, double step,
                                        double feas_tol) {
    std::vector<Vector> pts;
    grid_points(p, step, feas_tol, [&](const Vector& x) { pts.push_back(x); });
    return pts;
}

DominanceReport dominance_check(const ProblemInstance& p, const Vector& query, double step,
                                double dom_tol, double feas_tol) {
    DominanceReport rep;
    rep.query = query;
    rep.grid_step = step;
    const Vector rq = evaluate_ratios(p, query);
    grid_points(p, step, feas_tol, [&](const Vector& x) {
        ++rep.points_checked;
        const Vector rx = evaluate_ratios(p, x);
        if (!rep.dominated && dominates(rx, rq, dom_tol)) {
            rep.dominated = true;
            rep.dominator = x;
        }
        if (!rep.weakly_dominated) {
            bool all_strict = true;
            for (int i = 0; i < rx.size(); ++i)
                if (rx(i) >= rq(i) - dom_tol) all_strict = false;
            if (all_strict) {
                rep.weakly_dominated = true;
                if (!rep.dominator) rep.dominator = x;
            }
        }
    });
    return rep;
}

std::vector<FrontPoint> approximate_pareto_front(const ProblemInstance& p, double step,
                                                 double dom_tol, double feas_tol) {
    std::vector<FrontPoint> all;
    grid_points(p, step, feas_tol,
                [&](const Vector& x) { all.push_back({x, evaluate_ratios(p, x)}); });
    std::vector<FrontPoint> front;
    for (const FrontPoint& cand : all) {
        bool dom = false;
        for (const FrontPoint& other : all) {
            if (dominates(other.ratios, cand.ratios, dom_tol)) {
                dom = true;
                break;
            }
        }
        if (!dom) front.push_back(cand);
    }
    return front;
}

}  // namespace vqfp
