#include "vqfp/duality.hpp"

#include <cmath>

#include "vqfp/oracle.hpp"
#include "vqfp/spectral.hpp"

namespace vqfp {

namespace {

double lambda_h_value(const ProblemInstance& p, const DualPoint& dp) {
    double s = 0.0;
    for (int j = 0; j < p.num_constraints(); ++j)
        s += dp.lambda(j) * constraint_value(p.constraints[static_cast<size_t>(j)], dp.u);
    return s;
}

double dual_stationarity(const ProblemInstance& p, const DualPoint& dp) {
    Vector r = Vector::Zero(p.n);
    for (int i = 0; i < p.num_objectives(); ++i) {
        const RatioObjective& obj = p.objectives[static_cast<size_t>(i)];
        const double ratio = obj.f.value(dp.u) / obj.g.value(dp.u);
        r += dp.tau(i) * (obj.f.gradient(dp.u) - ratio * obj.g.gradient(dp.u));
    }
    for (int j = 0; j < p.num_constraints(); ++j)
        r += dp.lambda(j) * constraint_gradient(p.constraints[static_cast<size_t>(j)], dp.u);
    return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

}  // namespace

DualFeasibility dual_feasible(const ProblemInstance& p, const DualPoint& dp,
                              const Tolerances& tol) {
    DualFeasibility out;
    if (dp.u.size() != p.n || dp.tau.size() != p.num_objectives() ||
        dp.lambda.size() != p.num_constraints())
        throw DimensionError("dual_feasible: dual point dimensions mismatch");
    if (dp.tau.minCoeff() <= tol.strict) {
        out.which = "tau > 0";
        return out;
    }
    if (p.num_constraints() > 0 && dp.lambda.minCoeff() < -tol.feas) {
        out.which = "lambda >= 0";
        return out;
    }
    const double lsum = p.num_constraints() > 0 ? dp.lambda.sum() : 0.0;
    if (std::abs(lsum - 1.0) > tol.feas) {
        out.which = "sum(lambda) = 1";
        return out;
    }
    if (!feasibility(p, dp.u, tol.feas).feasible) {
        out.which = "u in S";
        return out;
    }
    if (lambda_h_value(p, dp) < -tol.feas) {
        out.which = "sum(lambda_j h_j(u)) >= 0";
        return out;
    }
    if (dual_stationarity(p, dp) > tol.kkt) {
        out.which = "stationarity";
        return out;
    }
    out.feasible = true;
    return out;
}

WeakDualityReport weak_duality_check(const ProblemInstance& p, const Vector& x,
                                     const DualPoint& dp, const Tolerances& tol) {
    if (!feasibility(p, x, tol.feas).feasible)
        throw InfeasiblePoint("weak_duality_check: primal point infeasible");
    const Matrix F = build_F(p, dp.tau, dp.u);
    if (!is_psd(F, tol.psd))
        throw HypothesisNotMet("weak_duality_check: F(tau, u) is not PSD");

    WeakDualityReport rep;
    rep.primal_ratios = evaluate_ratios(p, x);
    rep.dual_ratios = evaluate_ratios(p, dp.u);
    if (dominates(rep.primal_ratios, rep.dual_ratios, tol.dom)) {
        rep.outcome = WeakDualityOutcome::CounterexampleFound;
        rep.details = "primal ratio vector dominates the dual ratio vector";
    }
    return rep;
}

StrongDualityResult strong_duality_construct(const ProblemInstance& p, const Vector& xstar,
                                             const MultiplierPair& mp, const Tolerances& tol) {
    StrongDualityResult out;
    const double lsum = mp.lambda.size() > 0 ? mp.lambda.sum() : 0.0;
    if (lsum <= tol.strict) {
        out.reason = "lambda-sum-zero";
        return out;
    }
    DualPoint dp;
    dp.u = xstar;
    // Step-1 multipliers weight the ratio gradients; the dual stationarity
    // weights grad f_i - (f_i/g_i) grad g_i = g_i * grad(f_i/g_i), so divide
    // by g_i(x*) before the joint rescale.
    dp.tau = Vector(mp.tau.size());
    for (int i = 0; i < mp.tau.size(); ++i) {
        const double g = p.objectives[static_cast<size_t>(i)].g.value(xstar);
        if (g <= 0.0) throw DomainError("strong_duality_construct: g_i(x*) <= 0");
        dp.tau(i) = mp.tau(i) / (g * lsum);
    }
    dp.lambda = mp.lambda / lsum;
    dp.stationarity_residual = dual_stationarity(p, dp);
    dp.lambda_h_sign = lambda_h_value(p, dp);
    out.constructed = true;
    out.dual = dp;
    // The dual objective at u = x* is the primal ratio vector itself.
    out.equal_values = true;
    return out;
}

Certificate converse_duality_check(const ProblemInstance& p, const DualPoint& dp,
                                   const RunConfig& cfg) {
    const DualFeasibility df = dual_feasible(p, dp, cfg.tol);
    if (!df.feasible)
        throw HypothesisNotMet("converse_duality_check: dual point infeasible (" + df.which +
                               ")");
    if (!feasibility(p, dp.u, cfg.tol.feas).feasible)
        throw HypothesisNotMet("converse_duality_check: u is not primal-feasible");
    const Matrix F = build_F(p, dp.tau, dp.u);
    if (!is_psd(F, cfg.tol.psd))
        throw HypothesisNotMet("converse_duality_check: F(tau, u) is not PSD");
    return certify_point(p, dp.u, cfg);
}

StrictConverseReport strict_converse_check(const ProblemInstance& p, const Vector& xstar,
                                           const DualPoint& dp, const Tolerances& tol,
                                           double point_tol) {
    StrictConverseReport rep;
    if (!feasibility(p, xstar, tol.feas).feasible)
        throw InfeasiblePoint("strict_converse_check: x* infeasible");
    const DualFeasibility df = dual_feasible(p, dp, tol);
    if (!df.feasible) {
        rep.details = "dual point infeasible (" + df.which + ")";
        return rep;
    }
    const Vector rs = evaluate_ratios(p, xstar);
    const Vector ru = evaluate_ratios(p, dp.u);
    rep.objective_gap = dp.tau.dot(rs - ru);
    if (std::abs(rep.objective_gap) > tol.kkt) {
        rep.details = "tau-weighted ratio sums differ";
        return rep;
    }
    Vector g_at_star(p.num_objectives());
    for (int i = 0; i < p.num_objectives(); ++i)
        g_at_star(i) = p.objectives[static_cast<size_t>(i)].g.value(xstar);
    const Matrix F = build_F(p, dp.tau.cwiseQuotient(g_at_star), dp.u);
    if (psd_status(F, tol.psd) != Definiteness::PositiveDefinite) {
        rep.details = "F(tau/g(x*), u*) is not positive definite";
        return rep;
    }
    rep.point_distance = (xstar - dp.u).norm();
    if (rep.point_distance <= point_tol) {
        rep.outcome = StrictConverseOutcome::SamePoint;
    } else {
        rep.outcome = StrictConverseOutcome::Violation;
        rep.details = "hypotheses hold but x* != u*";
    }
    return rep;
}

}  // namespace vqfp
