#include "vqfp/kkt.hpp"

#include <cmath>

namespace vqfp {

MultiplierPair make_multiplier_pair(const ProblemInstance& p, const Vector& xstar,
                                    const Vector& tau, const Vector& lambda) {
    MultiplierPair mp;
    mp.tau = tau;
    mp.lambda = lambda;
    const Matrix G = ratio_gradient(p, xstar);
    Vector r = G.transpose() * tau;
    double comp = 0.0;
    for (int j = 0; j < p.num_constraints(); ++j) {
        const Constraint& c = p.constraints[static_cast<size_t>(j)];
        r += lambda(j) * constraint_gradient(c, xstar);
        comp += lambda(j) * constraint_value(c, xstar);
    }
    mp.stationarity_residual = r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
    mp.complementarity_residual = std::abs(comp);
    return mp;
}

MultiplierSearch find_multipliers(const ProblemInstance& p, const Vector& xstar,
                                  const Tolerances& tol) {
    if (!feasibility(p, xstar, tol.feas).feasible)
        throw InfeasiblePoint("find_multipliers: x* is not feasible");

    const int m = p.num_objectives();
    const int l = p.num_constraints();
    const int nvars = m + l + 1;  // tau, lambda, t
    const Matrix G = ratio_gradient(p, xstar);

    // Equalities: stationarity (n rows), complementarity (1), normalization (1)
    Matrix A_eq = Matrix::Zero(p.n + 2, nvars);
    Vector b_eq = Vector::Zero(p.n + 2);
    for (int d = 0; d < p.n; ++d) {
        for (int i = 0; i < m; ++i) A_eq(d, i) = G(i, d);
        for (int j = 0; j < l; ++j)
            A_eq(d, m + j) = constraint_gradient(p.constraints[static_cast<size_t>(j)], xstar)(d);
    }
    for (int j = 0; j < l; ++j)
        A_eq(p.n, m + j) = constraint_value(p.constraints[static_cast<size_t>(j)], xstar);
    for (int i = 0; i < m + l; ++i) A_eq(p.n + 1, i) = 1.0;
    b_eq(p.n + 1) = 1.0;

    // Inequalities: t - tau_i <= 0
    Matrix A_ineq = Matrix::Zero(m, nvars);
    Vector b_ineq = Vector::Zero(m);
    for (int i = 0; i < m; ++i) {
        A_ineq(i, i) = -1.0;
        A_ineq(i, m + l) = 1.0;
    }

    Vector c = Vector::Zero(nvars);
    c(m + l) = 1.0;

    const LpResult lp = solve_linear_program({c, A_eq, b_eq, A_ineq, b_ineq});
    MultiplierSearch out;
    if (lp.status != LpStatus::Optimal) return out;
    out.floor = lp.objective;
    if (lp.objective < tol.strict) return out;
    out.found = true;
    out.pair = make_multiplier_pair(p, xstar, lp.x.head(m), lp.x.segment(m, l));
    return out;
}

Vector convert_multipliers(const ProblemInstance& p, const Vector& xstar, const Vector& mu) {
    if (mu.size() != p.num_objectives())
        throw DimensionError("convert_multipliers: mu length mismatch");
    Vector tau(mu.size());
    for (int i = 0; i < mu.size(); ++i) {
        if (mu(i) <= 0.0) throw DomainError("convert_multipliers: mu must be positive");
        const double g = p.objectives[static_cast<size_t>(i)].g.value(xstar);
        if (g <= 0.0) throw DomainError("convert_multipliers: g_i(x*) <= 0");
        tau(i) = mu(i) / g;
    }
    return tau;
}

double stationarity_residual_scalarized(const ProblemInstance& p, const Vector& xstar,
                                        const Vector& tau, const Vector& lambda) {
    Vector r = Vector::Zero(p.n);
    for (int i = 0; i < p.num_objectives(); ++i) {
        const RatioObjective& obj = p.objectives[static_cast<size_t>(i)];
        const double alpha = obj.f.value(xstar) / obj.g.value(xstar);
        r += tau(i) * (obj.f.gradient(xstar) - alpha * obj.g.gradient(xstar));
    }
    for (int j = 0; j < p.num_constraints(); ++j)
        r += lambda(j) * constraint_gradient(p.constraints[static_cast<size_t>(j)], xstar);
    return r.cwiseAbs().maxCoeff();
}

}  // namespace vqfp
