#include "vqfp/boxmin.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "vqfp/spectral.hpp"

namespace vqfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool lex_less(const Vector& a, const Vector& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a(i) < b(i) - 1e-15) return true;
        if (a(i) > b(i) + 1e-15) return false;
    }
    return false;
}

Vector clamp_to_box(const Vector& x, const Box& box) {
    return x.cwiseMax(box.lo).cwiseMin(box.hi);
}

/// Projected gradient descent with exact quadratic line search along the
/// projected direction. Box projection only.
Vector pgd(const QuadraticFunction& q, const Box& box, Vector x, int iters) {
    x = clamp_to_box(x, box);
    for (int it = 0; it < iters; ++it) {
        const Vector g = q.gradient(x);
        double step = 1.0;
        const double gQg = g.dot(q.Q * g);
        if (gQg > 1e-300) step = g.squaredNorm() / (2.0 * gQg);
        step = std::min(std::max(step, 1e-6), 1e6);
        const Vector xn = clamp_to_box(x - step * q.gradient(x), box);
        if ((xn - x).cwiseAbs().maxCoeff() < 1e-14) break;
        if (q.value(xn) <= q.value(x))
            x = xn;
        else {
            // halve until improvement or giving up
            double s = step;
            bool moved = false;
            for (int h = 0; h < 40; ++h) {
                s *= 0.5;
                const Vector xs = clamp_to_box(x - s * q.gradient(x), box);
                if (q.value(xs) < q.value(x)) {
                    x = xs;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
    }
    return x;
}

/// Exact global minimum over a box via face enumeration. Each of the 3^n
/// faces fixes coordinates at lo/hi or leaves them free; the face contributes
/// its stationary point when the reduced Hessian is PSD there. The minimum
/// over the compact box is attained in the relative interior of some face and
/// satisfies the second-order necessary conditions, so it is enumerated.
void face_enumeration(const QuadraticFunction& q, const Box& box, Vector& best_x,
                      double& best_v) {
    const int n = static_cast<int>(box.lo.size());
    std::vector<int> pattern(static_cast<size_t>(n), 0);  // 0 lo, 1 hi, 2 free
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;

    for (long code = 0; code < total; ++code) {
        long c = code;
        std::vector<int> free_idx;
        Vector x = Vector::Zero(n);
        for (int i = 0; i < n; ++i) {
            pattern[static_cast<size_t>(i)] = static_cast<int>(c % 3);
            c /= 3;
            switch (pattern[static_cast<size_t>(i)]) {
                case 0: x(i) = box.lo(i); break;
                case 1: x(i) = box.hi(i); break;
                default: free_idx.push_back(i);
            }
        }
        // Degenerate interval: treat hi-pattern as duplicate of lo-pattern.
        bool dup = false;
        for (int i = 0; i < n; ++i)
            if (pattern[static_cast<size_t>(i)] == 1 && box.hi(i) - box.lo(i) < 1e-15) dup = true;
        if (dup) continue;

        const int k = static_cast<int>(free_idx.size());
        if (k > 0) {
            Matrix Qff(k, k);
            Vector rhs(k);
            for (int a = 0; a < k; ++a) {
                for (int b = 0; b < k; ++b) Qff(a, b) = q.Q(free_idx[a], free_idx[b]);
                double lin = q.c(free_idx[a]);
                for (int i = 0; i < n; ++i) {
                    bool fixed = true;
                    for (int f : free_idx)
                        if (f == i) fixed = false;
                    if (fixed) lin += 2.0 * q.Q(free_idx[a], i) * x(i);
                }
                rhs(a) = -0.5 * lin;
            }
            const EigenDecomposition e = eig_sym(Qff);
            const double scale = 1.0 + e.eigenvalues.cwiseAbs().maxCoeff();
            if (e.eigenvalues.minCoeff() < -1e-10 * scale) continue;  // not a face minimum
            const Vector xf = Qff.colPivHouseholderQr().solve(rhs);
            if ((Qff * xf - rhs).cwiseAbs().maxCoeff() > 1e-8 * scale) continue;  // inconsistent
            bool inside = true;
            for (int a = 0; a < k; ++a) {
                if (xf(a) < box.lo(free_idx[a]) - 1e-12 || xf(a) > box.hi(free_idx[a]) + 1e-12)
                    inside = false;
            }
            if (!inside) continue;
            for (int a = 0; a < k; ++a)
                x(free_idx[a]) =
                    std::min(std::max(xf(a), box.lo(free_idx[a])), box.hi(free_idx[a]));
        }
        const double v = q.value(x);
        const double tie = 1e-12 * (1.0 + std::abs(best_v));
        if (v < best_v - tie || (v < best_v + tie && lex_less(x, best_x))) {
            best_v = std::min(v, best_v);
            best_x = x;
        }
    }
}

}  // namespace

const char* to_string(MinKind k) {
    switch (k) {
        case MinKind::Global: return "global";
        case MinKind::LocalOnly: return "local_only";
        case MinKind::LowerBoundOnly: return "lower_bound_only";
        case MinKind::Unbounded: return "unbounded";
    }
    return "?";
}

EffectiveBox derive_box(const ProblemInstance& p) {
    EffectiveBox eb;
    Vector lo = Vector::Constant(p.n, -kInf);
    Vector hi = Vector::Constant(p.n, kInf);
    if (p.bounds) {
        lo = p.bounds->lo;
        hi = p.bounds->hi;
    }
    for (const Constraint& c : p.constraints) {
        const auto* a = std::get_if<AffineConstraint>(&c);
        if (!a) {
            eb.extra = true;
            continue;
        }
        int nz = -1;
        bool single = true;
        for (int i = 0; i < p.n; ++i) {
            if (a->a(i) != 0.0) {
                if (nz >= 0) single = false;
                nz = i;
            }
        }
        if (!single || nz < 0) {
            eb.extra = true;
            continue;
        }
        // s * x_nz + b <= 0
        const double s = a->a(nz);
        if (s > 0.0)
            hi(nz) = std::min(hi(nz), -a->b / s);
        else
            lo(nz) = std::max(lo(nz), -a->b / s);
    }
    bool finite = true;
    for (int i = 0; i < p.n; ++i)
        if (!std::isfinite(lo(i)) || !std::isfinite(hi(i))) finite = false;
    if (finite) eb.box = Box{lo, hi};
    return eb;
}

MinimizeResult minimize_quadratic(const ProblemInstance& p, const QuadraticFunction& q,
                                  const RunConfig& cfg) {
    const EffectiveBox eb = derive_box(p);
    const EigenDecomposition eq = eig_sym(q.Q);
    const double scale = 1.0 + eq.eigenvalues.cwiseAbs().maxCoeff();
    const bool convex = eq.eigenvalues.minCoeff() >= -cfg.tol.psd * scale;

    MinimizeResult res;

    if (eb.box && !eb.extra) {
        if (p.n <= cfg.grid_dims_max) {
            double best_v = kInf;
            Vector best_x = eb.box->hi;
            face_enumeration(q, *eb.box, best_x, best_v);
            res.kind = MinKind::Global;
            res.argmin = best_x;
            res.value = best_v;
            res.lower_bound = best_v;
            return res;
        }
        if (convex) {
            const Vector mid = 0.5 * (eb.box->lo + eb.box->hi);
            const Vector x = pgd(q, *eb.box, mid, 5000);
            res.kind = MinKind::Global;
            res.argmin = x;
            res.value = q.value(x);
            res.lower_bound = res.value - cfg.tol.z;
            return res;
        }
        // Nonconvex, too many dimensions for exhaustion: multistart descent
        // gives a candidate (upper bound); the spectral bound gives a floor.
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double best_v = kInf;
        Vector best_x;
        for (int s = 0; s < cfg.multistart; ++s) {
            Vector x0(p.n);
            if (s == 0)
                x0 = 0.5 * (eb.box->lo + eb.box->hi);
            else if (s == 1)
                x0 = clamp_to_box(eq.eigenvectors.col(0) * eb.box->hi.cwiseAbs().maxCoeff(),
                                  *eb.box);
            else if (s == 2)
                x0 = clamp_to_box(-eq.eigenvectors.col(0) * eb.box->hi.cwiseAbs().maxCoeff(),
                                  *eb.box);
            else
                for (int i = 0; i < p.n; ++i)
                    x0(i) = eb.box->lo(i) + unif(rng) * (eb.box->hi(i) - eb.box->lo(i));
            const Vector x = pgd(q, *eb.box, x0, 2000);
            const double v = q.value(x);
            if (v < best_v) {
                best_v = v;
                best_x = x;
            }
        }
        const double diam = (eb.box->hi - eb.box->lo).norm();
        res.kind = MinKind::LocalOnly;
        res.argmin = best_x;
        res.value = best_v;
        res.lower_bound = std::min(0.0, eq.eigenvalues.minCoeff()) * diam * diam +
                          std::min(best_v, 0.0);
        return res;
    }

    if (eb.box && eb.extra) {
        // Lattice scan filtered by full feasibility, then descent polish.
        // Honest tag: the curved boundary is not exhaustively certified.
        double best_v = kInf;
        Vector best_x;
        if (p.n <= cfg.grid_dims_max) {
            const int N = cfg.grid_initial;
            std::vector<int> idx(static_cast<size_t>(p.n), 0);
            for (;;) {
                Vector x(p.n);
                for (int i = 0; i < p.n; ++i) {
                    const double t = (N == 1) ? 0.5 : static_cast<double>(idx[i]) / (N - 1);
                    x(i) = eb.box->lo(i) + t * (eb.box->hi(i) - eb.box->lo(i));
                }
                if (feasibility(p, x, cfg.tol.feas).feasible) {
                    const double v = q.value(x);
                    if (v < best_v) {
                        best_v = v;
                        best_x = x;
                    }
                }
                int i = 0;
                while (i < p.n && ++idx[i] == N) idx[i++] = 0;
                if (i == p.n) break;
            }
        }
        if (best_v < kInf) {
            Vector x = pgd(q, *eb.box, best_x, 2000);
            if (feasibility(p, x, cfg.tol.feas).feasible && q.value(x) < best_v) {
                best_x = x;
                best_v = q.value(x);
            }
            res.kind = MinKind::LocalOnly;
            res.argmin = best_x;
            res.value = best_v;
            res.lower_bound = -kInf;
            return res;
        }
        res.kind = MinKind::LowerBoundOnly;
        res.lower_bound = -kInf;
        return res;
    }

    // No finite box.
    if (!convex) {
        res.kind = p.constraints.empty() ? MinKind::Unbounded : MinKind::LowerBoundOnly;
        res.lower_bound = -kInf;
        return res;
    }
    // Convex: the unconstrained stationary point is a global lower bound.
    const Vector xs = (2.0 * q.Q).colPivHouseholderQr().solve(-q.c);
    const double residual = (2.0 * q.Q * xs + q.c).cwiseAbs().maxCoeff();
    if (residual > 1e-8 * (1.0 + q.c.cwiseAbs().maxCoeff())) {
        res.kind = MinKind::Unbounded;  // flat direction with nonzero slope
        res.lower_bound = -kInf;
        return res;
    }
    if (p.constraints.empty() || feasibility(p, xs, cfg.tol.feas).feasible) {
        res.kind = MinKind::Global;
        res.argmin = xs;
        res.value = q.value(xs);
        res.lower_bound = res.value;
        return res;
    }
    res.kind = MinKind::LowerBoundOnly;
    res.lower_bound = q.value(xs);
    return res;
}

}  // namespace vqfp
