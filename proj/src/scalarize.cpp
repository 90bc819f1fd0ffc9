#include "vqfp/scalarize.hpp"

#include <cmath>

#include "vqfp/oracle.hpp"
#include "vqfp/spectral.hpp"

namespace vqfp {

ScalarizedProblem build_scalarized(const ProblemInstance& p, const Vector& xstar,
                                   const Vector& w, const Tolerances& tol) {
    if (w.size() != p.num_objectives())
        throw DimensionError("build_scalarized: weight length mismatch");
    if (w.minCoeff() <= 0.0) throw DomainError("build_scalarized: weights must be positive");

    ScalarizedProblem sp;
    sp.anchor = xstar;
    sp.weights = w;
    sp.alphas.resize(w.size());
    sp.Q_eff = Matrix::Zero(p.n, p.n);
    sp.c_eff = Vector::Zero(p.n);
    sp.d_eff = 0.0;
    for (int i = 0; i < p.num_objectives(); ++i) {
        const RatioObjective& obj = p.objectives[static_cast<size_t>(i)];
        const double g = obj.g.value(xstar);
        if (g <= 0.0) throw DomainError("build_scalarized: g_i(x*) <= 0");
        const double alpha = obj.f.value(xstar) / g;
        sp.alphas(i) = alpha;
        sp.Q_eff += w(i) * (obj.f.Q - alpha * obj.g.Q);
        sp.c_eff += w(i) * (obj.f.c - alpha * obj.g.c);
        sp.d_eff += w(i) * (obj.f.d - alpha * obj.g.d);
    }
    sp.convex = is_psd(sp.Q_eff, tol.psd);
    return sp;
}

ScalarMinResult minimize_scalarized(const ScalarizedProblem& sp, const ProblemInstance& p,
                                    const RunConfig& cfg) {
    QuadraticFunction q{sp.Q_eff, sp.c_eff, sp.d_eff};
    const MinimizeResult mr = minimize_quadratic(p, q, cfg);
    ScalarMinResult out;
    switch (mr.kind) {
        case MinKind::Global:
            out.kind = ScalarMinKind::GlobalMin;
            out.x = mr.argmin;
            out.value = mr.value;
            break;
        case MinKind::LocalOnly:
            out.kind = ScalarMinKind::LocalOnly;
            out.x = mr.argmin;
            out.value = mr.value;
            break;
        case MinKind::Unbounded:
        case MinKind::LowerBoundOnly:
            if (std::isinf(mr.lower_bound)) {
                out.kind = ScalarMinKind::Unbounded;
            } else {
                out.kind = ScalarMinKind::LocalOnly;
                out.x = sp.anchor;
                out.value = sp.value(sp.anchor);
            }
            break;
    }
    return out;
}

DinkelbachResult dinkelbach_search(const ProblemInstance& p, const Vector& w, const Vector& x0,
                                   const RunConfig& cfg) {
    if (!feasibility(p, x0, cfg.tol.feas).feasible)
        throw InfeasiblePoint("dinkelbach_search: start point infeasible");
    DinkelbachResult out;
    Vector x = x0;
    Vector alpha_prev = evaluate_ratios(p, x);
    out.alpha_history.push_back(alpha_prev);

    for (int it = 1; it <= cfg.dinkelbach_max_iter; ++it) {
        const ScalarizedProblem sp = build_scalarized(p, x, w, cfg.tol);
        const ScalarMinResult sm = minimize_scalarized(sp, p, cfg);
        out.iterations = it;
        if (sm.kind == ScalarMinKind::Unbounded) {
            out.stall_reason = "scalarized-subproblem-unbounded";
            out.x = x;
            return out;
        }
        if (sm.kind == ScalarMinKind::LocalOnly) {
            out.stall_reason = "nonconvex-subproblem-local-only";
            out.x = sm.x;
            return out;
        }
        x = sm.x;
        const Vector alpha = evaluate_ratios(p, x);
        out.alpha_history.push_back(alpha);
        double delta = 0.0;
        for (int i = 0; i < alpha.size(); ++i)
            delta = std::max(delta,
                             std::abs(alpha(i) - alpha_prev(i)) / (1.0 + std::abs(alpha(i))));
        alpha_prev = alpha;
        if (delta <= cfg.tol.alpha) {
            out.converged = true;
            out.x = x;
            try {
                out.step1_found = find_multipliers(p, x, cfg.tol).found;
            } catch (const InfeasiblePoint&) {
                out.step1_found = false;
            }
            return out;
        }
    }
    out.stall_reason = "iteration-budget-exhausted";
    out.x = x;
    return out;
}

MembershipCheck check_thm41_membership(const ProblemInstance& p, const Vector& xstar,
                                       double step, const RunConfig& cfg) {
    MembershipCheck out;
    const Vector alphas = evaluate_ratios(p, xstar);
    const Vector rq = alphas;  // ratio-space image of x*
    Vector sq = Vector::Zero(alphas.size());  // scalar-space image of x* is 0 by construction

    bool dom_ratio = false;
    bool dom_scalar = false;
    Vector witness;
    grid_points(p, step, cfg.tol.feas, [&](const Vector& x) {
        const Vector rx = evaluate_ratios(p, x);
        Vector sx(alphas.size());
        for (int i = 0; i < alphas.size(); ++i) {
            const RatioObjective& obj = p.objectives[static_cast<size_t>(i)];
            sx(i) = obj.f.value(x) - alphas(i) * obj.g.value(x);
        }
        const bool dr = dominates(rx, rq, cfg.tol.dom);
        const bool ds = dominates(sx, sq, cfg.tol.dom);
        if (dr != ds && witness.size() == 0) witness = x;
        dom_ratio = dom_ratio || dr;
        dom_scalar = dom_scalar || ds;
    });
    // The per-point orders differ only inside the dominance tolerance band
    // (the spaces are linked by the positive factors g_i(x)); the verdicts
    // compared are the global ones.
    out.consistent = (dom_ratio == dom_scalar);
    if (!out.consistent && witness.size() != 0) out.violation_witness = witness;
    return out;
}

}  // namespace vqfp
