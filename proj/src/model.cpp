#include "vqfp/model.hpp"

#include <cmath>

#include "vqfp/spectral.hpp"

namespace vqfp {

double constraint_value(const Constraint& c, const Vector& x) {
    if (const auto* a = std::get_if<AffineConstraint>(&c)) return a->a.dot(x) + a->b;
    const auto& q = std::get<QuadraticConstraint>(c);
    return x.dot(q.Q * x) + q.c.dot(x) + q.d;
}

Vector constraint_gradient(const Constraint& c, const Vector& x) {
    if (const auto* a = std::get_if<AffineConstraint>(&c)) return a->a;
    const auto& q = std::get<QuadraticConstraint>(c);
    return 2.0 * (q.Q * x) + q.c;
}

void symmetrize(Matrix& M, double pre_tol, const std::string& what) {
    const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
    if (asym > pre_tol)
        throw ValidationError("symmetry violated for " + what +
                              ": asymmetry " + std::to_string(asym));
    M = 0.5 * (M + M.transpose()).eval();
}

namespace {

void check_g_positive(const RatioObjective& obj, int index, const Tolerances& tol) {
    // Denominator minimizer: solve 2 B x = -b by least squares. An
    // inconsistent system means the quadratic part has no stationary point
    // and g is unbounded below, which the model excludes.
    const Matrix& B = obj.g.Q;
    const Vector& b = obj.g.c;
    const Vector w = (2.0 * B).colPivHouseholderQr().solve(-b);
    const double residual = (2.0 * B * w + b).norm();
    if (!w.allFinite() || !(residual <= 1e-9 * (1.0 + b.norm())))
        throw ValidationError("objective " + std::to_string(index) +
                              ": 2 B x + b = 0 has no solution; denominator unbounded below");
    const double gw = obj.g.value(w);
    if (gw < tol.g_pos)
        throw ValidationError("objective " + std::to_string(index) +
                              ": denominator minimum " + std::to_string(gw) +
                              " is not positive");
}

}  // namespace

void validate_instance(const ProblemInstance& p, const Tolerances& tol) {
    if (p.n < 1) throw ValidationError("n must be >= 1");
    if (p.objectives.empty()) throw ValidationError("at least one objective required");
    int idx = 0;
    for (const RatioObjective& obj : p.objectives) {
        if (obj.f.Q.rows() != p.n || obj.f.Q.cols() != p.n || obj.f.c.size() != p.n ||
            obj.g.Q.rows() != p.n || obj.g.Q.cols() != p.n || obj.g.c.size() != p.n)
            throw ValidationError("objective " + std::to_string(idx) + ": dimension mismatch");
        if ((obj.f.Q - obj.f.Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
            (obj.g.Q - obj.g.Q.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw ValidationError("objective " + std::to_string(idx) + ": matrix not symmetric");
        if (!is_psd(obj.g.Q, tol.psd))
            throw ValidationError("objective " + std::to_string(idx) + ": B not PSD");
        check_g_positive(obj, idx, tol);
        ++idx;
    }
    idx = 0;
    for (const Constraint& c : p.constraints) {
        if (const auto* a = std::get_if<AffineConstraint>(&c)) {
            if (a->a.size() != p.n)
                throw ValidationError("constraint " + std::to_string(idx) + ": dimension mismatch");
        } else {
            const auto& q = std::get<QuadraticConstraint>(c);
            if (q.Q.rows() != p.n || q.Q.cols() != p.n || q.c.size() != p.n)
                throw ValidationError("constraint " + std::to_string(idx) + ": dimension mismatch");
            if (!is_psd(q.Q, tol.psd))
                throw ValidationError("constraint " + std::to_string(idx) + ": Q not PSD");
        }
        ++idx;
    }
    if (p.bounds) {
        if (p.bounds->lo.size() != p.n || p.bounds->hi.size() != p.n)
            throw ValidationError("box bounds: dimension mismatch");
        for (int i = 0; i < p.n; ++i)
            if (p.bounds->lo(i) > p.bounds->hi(i))
                throw ValidationError("box bounds: lo > hi at coordinate " + std::to_string(i));
    }
}

Vector evaluate_ratios(const ProblemInstance& p, const Vector& x) {
    const int m = p.num_objectives();
    Vector r(m);
    for (int i = 0; i < m; ++i) {
        const double gx = p.objectives[static_cast<size_t>(i)].g.value(x);
        if (gx <= 0.0)
            throw DomainError("evaluate_ratios: g_" + std::to_string(i) + "(x) <= 0");
        r(i) = p.objectives[static_cast<size_t>(i)].f.value(x) / gx;
    }
    return r;
}

Matrix ratio_gradient(const ProblemInstance& p, const Vector& x) {
    const int m = p.num_objectives();
    Matrix G(m, p.n);
    for (int i = 0; i < m; ++i) {
        const RatioObjective& obj = p.objectives[static_cast<size_t>(i)];
        const double gx = obj.g.value(x);
        if (gx <= 0.0)
            throw DomainError("ratio_gradient: g_" + std::to_string(i) + "(x) <= 0");
        const double fx = obj.f.value(x);
        G.row(i) = ((obj.f.gradient(x) * gx - obj.g.gradient(x) * fx) / (gx * gx)).transpose();
    }
    return G;
}

UandS u_and_s(const ProblemInstance& p, int i, const Vector& x, const Vector& xstar) {
    const RatioObjective& obj = p.objectives.at(static_cast<size_t>(i));
    const double gx = obj.g.value(x);
    const double gs = obj.g.value(xstar);
    if (gx <= 0.0 || gs <= 0.0) throw DomainError("u_and_s: denominator not positive");
    const Vector d = x - xstar;
    const Matrix Fi = obj.f.Q - (obj.f.value(xstar) / gs) * obj.g.Q;
    return UandS{gs / gx, d.dot(Fi * d) / gx};
}

double identity_residual(const ProblemInstance& p, int i, const Vector& x,
                         const Vector& xstar) {
    const RatioObjective& obj = p.objectives.at(static_cast<size_t>(i));
    const double gx = obj.g.value(x);
    const double gs = obj.g.value(xstar);
    if (gx <= 0.0 || gs <= 0.0) throw DomainError("identity_residual: denominator not positive");
    const UandS us = u_and_s(p, i, x, xstar);
    const double lhs = obj.f.value(x) / gx - obj.f.value(xstar) / gs;
    const Vector grad =
        (obj.f.gradient(xstar) * gs - obj.g.gradient(xstar) * obj.f.value(xstar)) / (gs * gs);
    const double rhs = us.u * grad.dot(x - xstar) + us.s;
    return std::abs(lhs - rhs);
}

Feasibility feasibility(const ProblemInstance& p, const Vector& x, double tol) {
    Feasibility out;
    out.feasible = true;
    for (int j = 0; j < p.num_constraints(); ++j) {
        const double v = constraint_value(p.constraints[static_cast<size_t>(j)], x);
        if (v > tol) {
            out.feasible = false;
            out.violated.push_back(j);
            out.margins.push_back(v);
        }
    }
    return out;
}

}  // namespace vqfp
