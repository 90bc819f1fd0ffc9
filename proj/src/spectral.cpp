#include "vqfp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vqfp {

namespace {

void enforce_sign_convention(Matrix& V) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
        for (Eigen::Index i = 0; i < V.rows(); ++i) {
            if (std::abs(V(i, j)) > 1e-12) {
                if (V(i, j) < 0.0) V.col(j) = -V.col(j);
                break;
            }
        }
    }
}

double off_diagonal_norm(const Matrix& M) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (i != j) s += M(i, j) * M(i, j);
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_sym(const Matrix& M) {
    const Eigen::Index n = M.rows();
    if (M.cols() != n) throw DimensionError("eig_sym: matrix not square");
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + M.cwiseAbs().maxCoeff()))
        throw DomainError("eig_sym: matrix not symmetric");

    Matrix A = 0.5 * (M + M.transpose());
    Matrix V = Matrix::Identity(n, n);
    const double norm = std::max(A.norm(), 1e-300);
    const double target = 1e-12 * norm;
    const int max_sweeps = 30;

    int sweep = 0;
    while (off_diagonal_norm(A) > target) {
        if (++sweep > max_sweeps) throw ConvergenceError("eig_sym: Jacobi sweep budget exhausted");
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = A(p, p);
                const double aqq = A(q, q);
                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = A(r, p);
                    const double arq = A(r, q);
                    A(r, p) = c * arp - s * arq;
                    A(p, r) = A(r, p);
                    A(r, q) = s * arp + c * arq;
                    A(q, r) = A(r, q);
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double vrp = V(r, p);
                    const double vrq = V(r, q);
                    V(r, p) = c * vrp - s * vrq;
                    V(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return A(a, a) < A(b, b); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.eigenvalues(j) = A(order[static_cast<size_t>(j)], order[static_cast<size_t>(j)]);
        out.eigenvectors.col(j) = V.col(order[static_cast<size_t>(j)]);
    }
    enforce_sign_convention(out.eigenvectors);
    return out;
}

const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::PositiveDefinite: return "positive_definite";
        case Definiteness::PositiveSemidefinite: return "positive_semidefinite";
        case Definiteness::Indefinite: return "indefinite";
        case Definiteness::NegativeSemidefinite: return "negative_semidefinite";
        case Definiteness::NegativeDefinite: return "negative_definite";
    }
    return "?";
}

Definiteness psd_status(const Matrix& M, double tol) {
    const EigenDecomposition e = eig_sym(M);
    const double lo = e.eigenvalues.minCoeff();
    const double hi = e.eigenvalues.maxCoeff();
    const double t = tol * (1.0 + std::max(std::abs(lo), std::abs(hi)));
    if (lo >= t) return Definiteness::PositiveDefinite;
    if (hi <= -t) return Definiteness::NegativeDefinite;
    if (lo >= -t) return Definiteness::PositiveSemidefinite;
    if (hi <= t) return Definiteness::NegativeSemidefinite;
    return Definiteness::Indefinite;
}

bool is_psd(const Matrix& M, double tol) {
    const Definiteness d = psd_status(M, tol);
    return d == Definiteness::PositiveDefinite || d == Definiteness::PositiveSemidefinite;
}

Matrix build_Fi(const ProblemInstance& p, int i, const Vector& x) {
    const RatioObjective& obj = p.objectives.at(static_cast<size_t>(i));
    const double gx = obj.g.value(x);
    if (gx <= 0.0) throw DomainError("build_Fi: g_i(x) <= 0");
    return obj.f.Q - (obj.f.value(x) / gx) * obj.g.Q;
}

Matrix build_F(const ProblemInstance& p, const Vector& w, const Vector& x) {
    if (w.size() != p.num_objectives()) throw DimensionError("build_F: weight length mismatch");
    Matrix F = Matrix::Zero(p.n, p.n);
    for (int i = 0; i < p.num_objectives(); ++i) F += w(i) * build_Fi(p, i, x);
    return F;
}

HMatrixData build_H_data(const ProblemInstance& p, int i, int k, const Vector& xstar,
                         const EigenDecomposition& eigA, const EigenDecomposition& eigB) {
    const RatioObjective& obj = p.objectives.at(static_cast<size_t>(i));
    const double gs = obj.g.value(xstar);
    if (gs <= 0.0) throw DomainError("build_H_data: g_i(x*) <= 0");
    const double ratio = obj.f.value(xstar) / gs;

    const double muA = eigA.eigenvalues(k);
    const double muB = eigB.eigenvalues(k);
    const double scaleA = 1.0 + eigA.eigenvalues.cwiseAbs().maxCoeff();
    const double scaleB = (1.0 + eigB.eigenvalues.cwiseAbs().maxCoeff()) * (1.0 + std::abs(ratio));

    double radA = muA;
    double radB = muB * ratio;
    // clamp roundoff-negative radicands that are zero in exact arithmetic
    if (radA < 0.0 && radA > -1e-12 * scaleA) radA = 0.0;
    if (radB < 0.0 && radB > -1e-12 * scaleB) radB = 0.0;

    HMatrixData hd;
    if (radA < 0.0 || radB < 0.0) {
        hd.real_valued = false;
        return hd;
    }
    const Vector pk = eigA.eigenvectors.col(k);
    const Vector qk = eigB.eigenvectors.col(k);
    hd.a_plus = std::sqrt(radA) * pk + std::sqrt(radB) * qk;
    hd.a_minus = std::sqrt(radA) * pk - std::sqrt(radB) * qk;
    const double sp = xstar.dot(hd.a_plus);
    const double sm = xstar.dot(hd.a_minus);
    hd.alpha = sp * hd.a_minus + sm * hd.a_plus;
    hd.beta = sp * sm;
    hd.Hbar = hd.a_plus * hd.a_minus.transpose();
    hd.real_valued = true;
    return hd;
}

double entrywise_check(const HMatrixData& hd, const ProblemInstance& p, int i, int k,
                       const Vector& xstar, const EigenDecomposition& eigA,
                       const EigenDecomposition& eigB) {
    if (!hd.real_valued) throw InapplicableRoute("entrywise_check: complex-valued route");
    const RatioObjective& obj = p.objectives.at(static_cast<size_t>(i));
    const double ratio = obj.f.value(xstar) / obj.g.value(xstar);
    const double muA = eigA.eigenvalues(k);
    const double muB = eigB.eigenvalues(k);
    const Vector pk = eigA.eigenvectors.col(k);
    const Vector qk = eigB.eigenvectors.col(k);
    const double cross = std::sqrt(std::max(muA, 0.0) * std::max(muB * ratio, 0.0));

    double disc = 0.0;
    const int n = p.n;
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            const double expect = muA * pk(r) * pk(s) +
                                  cross * (pk(s) * qk(r) - pk(r) * qk(s)) -
                                  muB * ratio * qk(r) * qk(s);
            disc = std::max(disc, std::abs(hd.Hbar(r, s) - expect));
        }
        const double diag = muA * pk(r) * pk(r) - muB * ratio * qk(r) * qk(r);
        disc = std::max(disc, std::abs(hd.Hbar(r, r) - diag));
        const double ar = 2.0 * muA * xstar.dot(pk) * pk(r) -
                          2.0 * muB * ratio * xstar.dot(qk) * qk(r);
        disc = std::max(disc, std::abs(hd.alpha(r) - ar));
    }
    return disc;
}

}  // namespace vqfp
