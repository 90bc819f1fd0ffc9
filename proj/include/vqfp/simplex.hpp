#pragma once

#include "vqfp/types.hpp"

namespace vqfp {

/// maximize c^T x  s.t.  A_eq x = b_eq,  A_ineq x <= b_ineq,  x >= 0
struct LpProblem {
    Vector c;
    Matrix A_eq;
    Vector b_eq;
    Matrix A_ineq;
    Vector b_ineq;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector x;
    double objective = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Deterministic. Throws
/// NumericalError if the pivot budget is exhausted.
LpResult solve_linear_program(const LpProblem& lp);

}  // namespace vqfp
