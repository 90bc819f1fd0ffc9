#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "vqfp/types.hpp"

namespace vqfp {

/// Dense quadratic x -> x^T Q x + c^T x + d.
/// No 1/2 factor on the quadratic term; the gradient is 2 Q x + c.
struct QuadraticFunction {
    Matrix Q;
    Vector c;
    double d = 0.0;

    double value(const Vector& x) const { return x.dot(Q * x) + c.dot(x) + d; }
    Vector gradient(const Vector& x) const { return 2.0 * (Q * x) + c; }
};

/// One objective f/g with g > 0 on all of R^n.
struct RatioObjective {
    QuadraticFunction f;
    QuadraticFunction g;
};

/// a^T x + b <= 0
struct AffineConstraint {
    Vector a;
    double b = 0.0;
};

/// x^T Q x + c^T x + d <= 0 with Q positive semidefinite.
struct QuadraticConstraint {
    Matrix Q;
    Vector c;
    double d = 0.0;
};

using Constraint = std::variant<AffineConstraint, QuadraticConstraint>;

struct Box {
    Vector lo;
    Vector hi;
};

double constraint_value(const Constraint& c, const Vector& x);
Vector constraint_gradient(const Constraint& c, const Vector& x);

/// Immutable after construction (validate() is called by the loaders).
/// Box constraints are expanded into 2n affine rows; the box itself is kept
/// in `bounds` so grid-based consumers can enumerate the feasible set.
struct ProblemInstance {
    int n = 0;
    std::vector<RatioObjective> objectives;
    std::vector<Constraint> constraints;
    std::optional<Box> bounds;

    int num_objectives() const { return static_cast<int>(objectives.size()); }
    int num_constraints() const { return static_cast<int>(constraints.size()); }
};

/// Checks every model invariant: dimensions, symmetry (pre-symmetrization
/// asymmetry above tol.sym_pre rejects the instance), PSD of each B_i and of
/// quadratic constraint matrices, and positivity of each g_i certified at the
/// minimizer of its quadratic part. Throws ValidationError.
void validate_instance(const ProblemInstance& p, const Tolerances& tol = {});

/// Symmetrizes M in place as (M + M^T)/2 after checking the asymmetry budget.
void symmetrize(Matrix& M, double pre_tol, const std::string& what);

Vector evaluate_ratios(const ProblemInstance& p, const Vector& x);
Matrix ratio_gradient(const ProblemInstance& p, const Vector& x);

/// The pair (u_i, s_i):
///   u_i(x, x*) = g_i(x*) / g_i(x)
///   s_i(x, x*) = (x-x*)^T [A_i - (f_i(x*)/g_i(x*)) B_i] (x-x*) / g_i(x)
struct UandS {
    double u;
    double s;
};
UandS u_and_s(const ProblemInstance& p, int i, const Vector& x, const Vector& xstar);

/// |(f_i/g_i(x) - f_i/g_i(x*)) - u_i * grad(f_i/g_i)(x*)^T (x-x*) - s_i|.
/// Test probe for the exact first-order expansion of each ratio.
double identity_residual(const ProblemInstance& p, int i, const Vector& x, const Vector& xstar);

struct Feasibility {
    bool feasible = false;
    std::vector<int> violated;  // constraint indices with h_j(x) > tol
    std::vector<double> margins;
};
Feasibility feasibility(const ProblemInstance& p, const Vector& x, double tol);

}  // namespace vqfp
