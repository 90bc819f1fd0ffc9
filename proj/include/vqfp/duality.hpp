#pragma once

#include <optional>
#include <string>

#include "vqfp/certify.hpp"

namespace vqfp {

/// A candidate point of the dual problem: u in S, tau > 0, lambda >= 0 with
/// sum(lambda) = 1, ratio-gradient stationarity at u, and
/// sum_j lambda_j h_j(u) >= 0 (which u in S pins to ~0).
struct DualPoint {
    Vector u;
    Vector tau;
    Vector lambda;
    double stationarity_residual = 0.0;
    double lambda_h_sign = 0.0;  // value of sum_j lambda_j h_j(u)
};

struct DualFeasibility {
    bool feasible = false;
    std::string which;  // violated constraint name when infeasible
};

DualFeasibility dual_feasible(const ProblemInstance& p, const DualPoint& dp,
                              const Tolerances& tol = {});

enum class WeakDualityOutcome { Consistent, CounterexampleFound };

struct WeakDualityReport {
    WeakDualityOutcome outcome = WeakDualityOutcome::Consistent;
    Vector primal_ratios;
    Vector dual_ratios;
    std::string details;
};

/// Asserts that the primal ratio vector at x does not dominate the dual
/// ratio vector at dp.u. Throws HypothesisNotMet when F(tau, u) is not PSD.
WeakDualityReport weak_duality_check(const ProblemInstance& p, const Vector& x,
                                     const DualPoint& dp, const Tolerances& tol = {});

struct StrongDualityResult {
    bool constructed = false;
    std::optional<DualPoint> dual;
    bool equal_values = false;
    std::string reason;  // "lambda-sum-zero" when not constructible
};

/// Builds the dual point (x*, tau*, lambda*) from Step-1 multipliers, jointly
/// rescaling (tau, lambda) by 1/sum(lambda); stationarity and complementarity
/// are degree-1 homogeneous so the rescaled pair stays valid.
StrongDualityResult strong_duality_construct(const ProblemInstance& p, const Vector& xstar,
                                             const MultiplierPair& mp,
                                             const Tolerances& tol = {});

/// Re-certifies dp.u as a primal point. Throws HypothesisNotMet when dp is
/// dual-infeasible, dp.u is primal-infeasible, or F(tau, u) is not PSD.
Certificate converse_duality_check(const ProblemInstance& p, const DualPoint& dp,
                                   const RunConfig& cfg);

enum class StrictConverseOutcome { SamePoint, HypothesisNotMet, Violation };

struct StrictConverseReport {
    StrictConverseOutcome outcome = StrictConverseOutcome::HypothesisNotMet;
    double objective_gap = 0.0;  // sum_i tau_i (f_i/g_i(x*) - f_i/g_i(u*))
    double point_distance = 0.0;
    std::string details;
};

/// Gates: dp feasible, the tau-weighted ratio sums at x* and u* agree within
/// tol, and F(tau/g(x*), u*) is positive definite; then asserts x* = u*
/// within point_tol.
StrictConverseReport strict_converse_check(const ProblemInstance& p, const Vector& xstar,
                                           const DualPoint& dp, const Tolerances& tol = {},
                                           double point_tol = 1e-6);

}  // namespace vqfp
