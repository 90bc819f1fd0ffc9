#include "vqfp/certify.hpp"

#include <cmath>

namespace vqfp {

namespace {

/// Centered quadratic (x-x*)^T M (x-x*) expanded to standard form.
QuadraticFunction centered_form(const Matrix& M, const Vector& xstar) {
    QuadraticFunction q;
    q.Q = M;
    q.c = -2.0 * (M * xstar);
    q.d = xstar.dot(M * xstar);
    return q;
}

InequalityCheck decide_nonneg(const ProblemInstance& p, const QuadraticFunction& q,
                              const RunConfig& cfg) {
    InequalityCheck out;
    const MinimizeResult mr = minimize_quadratic(p, q, cfg);
    const double tol = cfg.tol.z;
    if (mr.kind == MinKind::Global) {
        if (mr.value >= -tol) {
            out.outcome = CheckOutcome::Holds;
        } else {
            out.outcome = CheckOutcome::Fails;
            out.witness = mr.argmin;
            out.gap = -mr.value;
        }
        return out;
    }
    if (mr.lower_bound >= -tol) {
        out.outcome = CheckOutcome::Holds;
        return out;
    }
    if ((mr.kind == MinKind::LocalOnly) && mr.value < -10.0 * tol) {
        out.outcome = CheckOutcome::Fails;
        out.witness = mr.argmin;
        out.gap = -mr.value;
        return out;
    }
    out.outcome = CheckOutcome::Unknown;
    return out;
}

}  // namespace

const char* to_string(Route r) {
    switch (r) {
        case Route::PointwisePsd: return "pointwise_psd";
        case Route::HPsdAlphaZero: return "h_psd_alpha_zero";
        case Route::EigenInequality: return "eigen_inequality";
        case Route::ZMinimization: return "z_minimization";
        case Route::HNonneg: return "h_nonneg";
    }
    return "?";
}

const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::CertifiedPareto: return "certified_pareto";
        case CertStatus::NotKkt: return "not_kkt";
        case CertStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

Vector tau_over_g(const ProblemInstance& p, const Vector& tau, const Vector& xstar) {
    Vector w(tau.size());
    for (int i = 0; i < tau.size(); ++i) {
        const double g = p.objectives[static_cast<size_t>(i)].g.value(xstar);
        if (g <= 0.0) throw DomainError("tau_over_g: g_i(x*) <= 0");
        w(i) = tau(i) / g;
    }
    return w;
}

double z_value(const ProblemInstance& p, const Vector& tau, const Vector& xstar,
               const Vector& x) {
    if (tau.minCoeff() <= 0.0) throw DomainError("z_value: tau must be positive");
    const Matrix Fhat = build_F(p, tau_over_g(p, tau, xstar), xstar);
    const Vector d = x - xstar;
    return d.dot(Fhat * d);
}

MinimizeResult minimize_z(const ProblemInstance& p, const Vector& tau, const Vector& xstar,
                          const RunConfig& cfg) {
    const Matrix Fhat = build_F(p, tau_over_g(p, tau, xstar), xstar);
    if (is_psd(Fhat, cfg.tol.psd)) {
        MinimizeResult res;
        res.kind = MinKind::Global;
        res.argmin = xstar;
        res.value = 0.0;
        res.lower_bound = 0.0;
        return res;
    }
    return minimize_quadratic(p, centered_form(Fhat, xstar), cfg);
}

InequalityCheck check_eigen_inequality(const ProblemInstance& p, int i, int k,
                                       const Vector& tau, const Vector& xstar,
                                       const EigenDecomposition& eigA,
                                       const EigenDecomposition& eigB, const RunConfig& cfg) {
    const RatioObjective& obj = p.objectives.at(static_cast<size_t>(i));
    const double gs = obj.g.value(xstar);
    const double fs = obj.f.value(xstar);
    const double cA = eigA.eigenvalues(k) * tau(i) / gs;
    const double cB = eigB.eigenvalues(k) * tau(i) * fs / (gs * gs);

    InequalityCheck out;
    if (cA >= 0.0 && cB <= 0.0) {
        out.outcome = CheckOutcome::Holds;  // LHS >= 0 >= RHS everywhere
        return out;
    }
    const Vector pk = eigA.eigenvectors.col(k);
    const Vector qk = eigB.eigenvectors.col(k);
    const Matrix M = cA * (pk * pk.transpose()) - cB * (qk * qk.transpose());
    return decide_nonneg(p, centered_form(M, xstar), cfg);
}

InequalityCheck check_H_nonneg(const ProblemInstance& p, int i, int k, const HMatrixData& hd,
                               const RunConfig& cfg) {
    (void)i;
    (void)k;
    if (!hd.real_valued)
        throw InapplicableRoute("check_H_nonneg: complex-valued H data");
    QuadraticFunction q;
    q.Q = 0.5 * (hd.Hbar + hd.Hbar.transpose());
    q.c = -hd.alpha;
    q.d = hd.beta;
    return decide_nonneg(p, q, cfg);
}

Certificate certify_point(const ProblemInstance& p, const Vector& xstar, const RunConfig& cfg,
                          const CertifyOptions& opts) {
    Certificate cert;
    cert.point = xstar;
    cert.tolerances = {{"feas", cfg.tol.feas},  {"strict", cfg.tol.strict},
                       {"kkt", cfg.tol.kkt},    {"psd", cfg.tol.psd},
                       {"z", cfg.tol.z},        {"dom", cfg.tol.dom}};
    cert.note = "GGCQ assumed";

    if (!feasibility(p, xstar, cfg.tol.feas).feasible)
        throw InfeasiblePoint("certify_point: query point is infeasible");

    const MultiplierSearch ms = find_multipliers(p, xstar, cfg.tol);
    if (!ms.found) {
        cert.status = CertStatus::NotKkt;
        cert.note = "conclusion valid under GGCQ (first-order necessary condition fails)";
        return cert;
    }
    cert.multipliers = ms.pair;
    const Vector tau = opts.tau_override ? *opts.tau_override : ms.pair->tau;
    if (tau.minCoeff() <= 0.0) throw DomainError("certify_point: tau must be positive");

    const int m = p.num_objectives();
    std::string reasons;

    const bool want_psd = opts.route == RouteSelection::Auto || opts.route == RouteSelection::Psd;
    const bool want_h = opts.route == RouteSelection::Auto || opts.route == RouteSelection::H;
    const bool want_eig =
        opts.route == RouteSelection::Auto || opts.route == RouteSelection::Eigen;
    const bool want_z = opts.route == RouteSelection::Auto || opts.route == RouteSelection::Zmin;

    // (a) pointwise PSD of every F_i(x*)
    if (want_psd) {
        bool all_psd = true;
        for (int i = 0; i < m && all_psd; ++i)
            all_psd = is_psd(build_Fi(p, i, xstar), cfg.tol.psd);
        if (all_psd) {
            cert.status = CertStatus::CertifiedPareto;
            cert.route = Route::PointwisePsd;
            return cert;
        }
        reasons += "pointwise_psd: some F_i(x*) not PSD; ";
    }

    std::vector<EigenDecomposition> eigA, eigB;
    eigA.reserve(static_cast<size_t>(m));
    eigB.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        eigA.push_back(eig_sym(p.objectives[static_cast<size_t>(i)].f.Q));
        eigB.push_back(eig_sym(p.objectives[static_cast<size_t>(i)].g.Q));
    }

    // (b) every Hbar PSD (via symmetric part) with alpha = 0
    if (want_h) {
        bool ok = true;
        std::string why;
        for (int i = 0; i < m && ok; ++i) {
            for (int k = 0; k < p.n && ok; ++k) {
                const HMatrixData hd =
                    build_H_data(p, i, k, xstar, eigA[static_cast<size_t>(i)],
                                 eigB[static_cast<size_t>(i)]);
                if (!hd.real_valued) {
                    ok = false;
                    why = "complex-valued H data";
                    break;
                }
                const Matrix sym = 0.5 * (hd.Hbar + hd.Hbar.transpose());
                if (!is_psd(sym, cfg.tol.psd) || hd.alpha.cwiseAbs().maxCoeff() > cfg.tol.kkt) {
                    ok = false;
                    why = "Hbar not PSD or alpha != 0";
                }
            }
        }
        if (ok) {
            cert.status = CertStatus::CertifiedPareto;
            cert.route = Route::HPsdAlphaZero;
            cert.note += "; Hbar PSD evaluated on its symmetric part";
            return cert;
        }
        reasons += "h_psd_alpha_zero: " + why + "; ";
        // Requested H route alone also tries the pointwise nonnegativity of
        // each H_{i,k} over S.
        if (opts.route == RouteSelection::H) {
            bool holds = true;
            for (int i = 0; i < m && holds; ++i) {
                for (int k = 0; k < p.n && holds; ++k) {
                    const HMatrixData hd =
                        build_H_data(p, i, k, xstar, eigA[static_cast<size_t>(i)],
                                     eigB[static_cast<size_t>(i)]);
                    if (!hd.real_valued) {
                        holds = false;
                        reasons += "h_nonneg: complex-valued H data; ";
                        break;
                    }
                    const InequalityCheck chk = check_H_nonneg(p, i, k, hd, cfg);
                    if (chk.outcome != CheckOutcome::Holds) {
                        holds = false;
                        if (chk.outcome == CheckOutcome::Fails) cert.witness = chk.witness;
                        reasons += "h_nonneg fails at (i=" + std::to_string(i) +
                                   ",k=" + std::to_string(k) + "); ";
                    }
                }
            }
            if (holds) {
                cert.status = CertStatus::CertifiedPareto;
                cert.route = Route::HNonneg;
                return cert;
            }
        }
    }

    // (c) eigen inequality per (i, k) over S
    if (want_eig) {
        bool holds = true;
        for (int i = 0; i < m && holds; ++i) {
            for (int k = 0; k < p.n && holds; ++k) {
                const InequalityCheck chk =
                    check_eigen_inequality(p, i, k, tau, xstar, eigA[static_cast<size_t>(i)],
                                           eigB[static_cast<size_t>(i)], cfg);
                if (chk.outcome != CheckOutcome::Holds) {
                    holds = false;
                    if (chk.outcome == CheckOutcome::Fails) cert.witness = chk.witness;
                    reasons += "eigen_inequality fails at (i=" + std::to_string(i) +
                               ",k=" + std::to_string(k) + "); ";
                }
            }
        }
        if (holds) {
            cert.status = CertStatus::CertifiedPareto;
            cert.route = Route::EigenInequality;
            return cert;
        }
    }

    // (d) Z minimization over S
    if (want_z) {
        const MinimizeResult zm = minimize_z(p, tau, xstar, cfg);
        if (zm.kind == MinKind::Global || zm.kind == MinKind::LocalOnly)
            cert.z_min_value = zm.value;
        if ((zm.kind == MinKind::Global && zm.value >= -cfg.tol.z) ||
            zm.lower_bound >= -cfg.tol.z) {
            cert.status = CertStatus::CertifiedPareto;
            cert.route = Route::ZMinimization;
            return cert;
        }
        if (zm.kind == MinKind::Global && zm.value < -10.0 * cfg.tol.z)
            cert.witness = zm.argmin;
        reasons += "z_minimization: min Z = " +
                   std::to_string(zm.kind == MinKind::Global ? zm.value : zm.lower_bound) + "; ";
    }

    cert.status = CertStatus::Inconclusive;
    cert.reason = reasons + "sufficient conditions refuted or undecided only";
    return cert;
}

}  // namespace vqfp
