#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vqfp/model.hpp"

namespace vqfp {

struct DominanceReport {
    Vector query;
    bool dominated = false;
    bool weakly_dominated = false;
    std::optional<Vector> dominator;  // first dominator in row-major scan order
    double grid_step = 0.0;
    long points_checked = 0;
};

/// Feasible lattice points of the bounding box at spacing `step`, visited in
/// row-major order (first coordinate fastest). Throws ConfigError when no
/// bounding box is derivable or the lattice exceeds the size cap.
void grid_points(const ProblemInstance& p, double step, double feas_tol,
                 const std::function<void(const Vector&)>& visit);

std::vector<Vector> collect_grid_points(const ProblemInstance& p, double step,
                                        double feas_tol);

/// Brute-force dominance scan over the lattice.
DominanceReport dominance_check(const ProblemInstance& p, const Vector& query, double step,
                                double dom_tol, double feas_tol = 1e-9);

/// All lattice points not dominated by another lattice point, with their
/// ratio vectors, in scan order.
struct FrontPoint {
    Vector x;
    Vector ratios;
};
std::vector<FrontPoint> approximate_pareto_front(const ProblemInstance& p, double step,
                                                 double dom_tol, double feas_tol = 1e-9);

/// x's ratio vector dominates y's (componentwise <=, one strictly < by tol).
bool dominates(const Vector& rx, const Vector& ry, double dom_tol);

}  // namespace vqfp
