#pragma once

#include <optional>
#include <vector>

#include "vqfp/boxmin.hpp"
#include "vqfp/kkt.hpp"

namespace vqfp {

/// The weighted scalar problem anchored at x*:
///   minimize sum_i w_i (f_i(x) - alpha_i g_i(x)),  alpha_i = f_i(x*)/g_i(x*)
struct ScalarizedProblem {
    Vector anchor;
    Vector weights;
    Vector alphas;
    Matrix Q_eff;
    Vector c_eff;
    double d_eff = 0.0;
    bool convex = false;

    double value(const Vector& x) const { return x.dot(Q_eff * x) + c_eff.dot(x) + d_eff; }
    Vector gradient(const Vector& x) const { return 2.0 * (Q_eff * x) + c_eff; }
};

ScalarizedProblem build_scalarized(const ProblemInstance& p, const Vector& xstar,
                                   const Vector& w, const Tolerances& tol = {});

enum class ScalarMinKind { GlobalMin, LocalOnly, Unbounded };

struct ScalarMinResult {
    ScalarMinKind kind = ScalarMinKind::LocalOnly;
    Vector x;
    double value = 0.0;
};

ScalarMinResult minimize_scalarized(const ScalarizedProblem& sp, const ProblemInstance& p,
                                    const RunConfig& cfg);

struct DinkelbachResult {
    bool converged = false;
    Vector x;
    int iterations = 0;
    std::vector<Vector> alpha_history;
    std::string stall_reason;
    bool step1_found = false;  // Step-1 multiplier recovery at the limit point
};

/// Fixed-point iteration: x^{k+1} minimizes the scalarization anchored at
/// x^k; stops when the ratio anchors settle to tol.alpha (relative) or the
/// iteration budget runs out.
DinkelbachResult dinkelbach_search(const ProblemInstance& p, const Vector& w, const Vector& x0,
                                   const RunConfig& cfg);

struct MembershipCheck {
    bool consistent = false;
    std::optional<Vector> violation_witness;
};

/// Grid probe of the equivalence between dominance in ratio space and in the
/// anchored scalar space f_i - alpha_i g_i.
MembershipCheck check_thm41_membership(const ProblemInstance& p, const Vector& xstar,
                                       double step, const RunConfig& cfg);

}  // namespace vqfp
