#include "vqfp/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace vqfp {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

struct Tableau {
    Matrix T;                 // rows x (cols + 1), last column is the rhs
    std::vector<int> basis;   // basic variable per row
    Vector objrow;            // reduced costs, last entry holds -objective value
    int rows;
    int cols;

    void price_out(const Vector& obj) {
        objrow = Vector::Zero(cols + 1);
        objrow.head(cols) = obj;
        for (int i = 0; i < rows; ++i) {
            const double cb = obj(basis[static_cast<size_t>(i)]);
            if (cb != 0.0) objrow -= cb * T.row(i).transpose();
        }
    }

    void pivot(int row, int col) {
        T.row(row) /= T(row, col);
        for (int i = 0; i < rows; ++i) {
            if (i == row) continue;
            const double f = T(i, col);
            if (f != 0.0) T.row(i) -= f * T.row(row);
        }
        const double f = objrow(col);
        if (f != 0.0) objrow -= f * T.row(row).transpose();
        basis[static_cast<size_t>(row)] = col;
    }

    // Bland's rule; `allowed` masks out columns that may not enter.
    // Returns true when optimal.
    bool iterate_to_optimum(const std::vector<bool>& allowed, long budget) {
        long it = 0;
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols; ++j) {
                if (allowed[static_cast<size_t>(j)] && objrow(j) > kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < rows; ++i) {
                const double a = T(i, enter);
                if (a > kPivotTol) {
                    const double ratio = T(i, cols) / a;
                    if (ratio < best - 1e-12 ||
                        (ratio < best + 1e-12 &&
                         (leave < 0 || basis[static_cast<size_t>(i)] <
                                           basis[static_cast<size_t>(leave)]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
            if (++it > budget) throw NumericalError("simplex: pivot budget exhausted");
        }
    }
};

}  // namespace

LpResult solve_linear_program(const LpProblem& lp) {
    const int n = static_cast<int>(lp.c.size());
    const int me = static_cast<int>(lp.b_eq.size());
    const int mi = static_cast<int>(lp.b_ineq.size());
    if ((me > 0 && lp.A_eq.cols() != n) || (mi > 0 && lp.A_ineq.cols() != n) ||
        (me > 0 && lp.A_eq.rows() != me) || (mi > 0 && lp.A_ineq.rows() != mi))
        throw DimensionError("solve_linear_program: inconsistent dimensions");

    const int rows = me + mi;
    const int nslack = mi;
    const int nart = rows;
    const int cols = n + nslack + nart;

    Tableau tab;
    tab.rows = rows;
    tab.cols = cols;
    tab.T = Matrix::Zero(rows, cols + 1);
    tab.basis.assign(static_cast<size_t>(rows), 0);

    for (int i = 0; i < me; ++i) {
        tab.T.block(i, 0, 1, n) = lp.A_eq.row(i);
        tab.T(i, cols) = lp.b_eq(i);
    }
    for (int i = 0; i < mi; ++i) {
        const int r = me + i;
        tab.T.block(r, 0, 1, n) = lp.A_ineq.row(i);
        tab.T(r, n + i) = 1.0;  // slack
        tab.T(r, cols) = lp.b_ineq(i);
    }
    for (int i = 0; i < rows; ++i) {
        if (tab.T(i, cols) < 0.0) tab.T.row(i) = -tab.T.row(i);
        tab.T(i, n + nslack + i) = 1.0;  // artificial
        tab.basis[static_cast<size_t>(i)] = n + nslack + i;
    }

    const long budget = 20000 + 200L * (rows + cols);

    // Phase 1: maximize -sum(artificials)
    Vector phase1 = Vector::Zero(cols);
    for (int i = 0; i < nart; ++i) phase1(n + nslack + i) = -1.0;
    tab.price_out(phase1);
    std::vector<bool> all(static_cast<size_t>(cols), true);
    tab.iterate_to_optimum(all, budget);  // bounded by construction
    // attained phase-1 objective = -objrow(cols); infeasible if artificials remain
    if (-tab.objrow(cols) < -kFeasTol) return {LpStatus::Infeasible, Vector(), 0.0};

    // Drive leftover artificials out of the basis; drop redundant rows by
    // zeroing them (no pivot column available).
    for (int i = 0; i < rows; ++i) {
        const int b = tab.basis[static_cast<size_t>(i)];
        if (b < n + nslack) continue;
        int col = -1;
        for (int j = 0; j < n + nslack; ++j) {
            if (std::abs(tab.T(i, j)) > 1e-9) {
                col = j;
                break;
            }
        }
        if (col >= 0) tab.pivot(i, col);
    }

    // Phase 2: block artificial columns.
    std::vector<bool> allowed(static_cast<size_t>(cols), true);
    for (int i = 0; i < nart; ++i) allowed[static_cast<size_t>(n + nslack + i)] = false;
    Vector phase2 = Vector::Zero(cols);
    phase2.head(n) = lp.c;
    tab.price_out(phase2);
    const bool optimal = tab.iterate_to_optimum(allowed, budget);
    if (!optimal) return {LpStatus::Unbounded, Vector(), 0.0};

    LpResult res;
    res.status = LpStatus::Optimal;
    res.x = Vector::Zero(n);
    for (int i = 0; i < rows; ++i) {
        const int b = tab.basis[static_cast<size_t>(i)];
        if (b < n) res.x(b) = tab.T(i, cols);
    }
    res.objective = lp.c.dot(res.x);
    return res;
}

}  // namespace vqfp
