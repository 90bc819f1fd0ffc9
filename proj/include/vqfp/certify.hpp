#pragma once

#include <map>
#include <optional>
#include <string>

#include "vqfp/boxmin.hpp"
#include "vqfp/kkt.hpp"
#include "vqfp/spectral.hpp"

namespace vqfp {

enum class Route { PointwisePsd, HPsdAlphaZero, EigenInequality, ZMinimization, HNonneg };
const char* to_string(Route r);

enum class CertStatus { CertifiedPareto, NotKkt, Inconclusive };
const char* to_string(CertStatus s);

/// Outcome of the optimality test. Inconclusive never asserts that the point
/// is not Pareto optimal; the conditions checked are sufficient only.
struct Certificate {
    Vector point;
    CertStatus status = CertStatus::Inconclusive;
    std::optional<Route> route;
    std::optional<MultiplierPair> multipliers;
    std::optional<double> z_min_value;
    std::optional<Vector> witness;  // point where a checked inequality fails
    std::map<std::string, double> tolerances;
    std::string note;
    std::string reason;  // filled for Inconclusive
};

/// w_i = tau_i / g_i(x*)
Vector tau_over_g(const ProblemInstance& p, const Vector& tau, const Vector& xstar);

/// Z(x, x*) = (x - x*)^T Fhat(x*) (x - x*) with Fhat = F(tau/g(x*), x*).
double z_value(const ProblemInstance& p, const Vector& tau, const Vector& xstar,
               const Vector& x);

/// min over S of Z(., x*). PSD Fhat short-circuits to {0, x*}.
MinimizeResult minimize_z(const ProblemInstance& p, const Vector& tau, const Vector& xstar,
                          const RunConfig& cfg);

enum class CheckOutcome { Holds, Fails, Unknown };

struct InequalityCheck {
    CheckOutcome outcome = CheckOutcome::Unknown;
    Vector witness;     // for Fails
    double gap = 0.0;   // violation magnitude at the witness
};

/// Decides mu_A gamma_i^k >= mu_B eta_i^k for all x in S by globally
/// minimizing the rank-<=2 quadratic difference.
InequalityCheck check_eigen_inequality(const ProblemInstance& p, int i, int k,
                                       const Vector& tau, const Vector& xstar,
                                       const EigenDecomposition& eigA,
                                       const EigenDecomposition& eigB, const RunConfig& cfg);

/// Decides min over S of H_{i,k}(x) >= -tol; the quadratic term is evaluated
/// through the symmetric part of Hbar. Throws InapplicableRoute when the data
/// is complex-valued.
InequalityCheck check_H_nonneg(const ProblemInstance& p, int i, int k, const HMatrixData& hd,
                               const RunConfig& cfg);

enum class RouteSelection { Auto, Psd, H, Eigen, Zmin };

struct CertifyOptions {
    RouteSelection route = RouteSelection::Auto;
    std::optional<Vector> tau_override;
};

/// The full optimality test: feasibility, multiplier recovery (Step 1), then
/// sufficient-condition routes cheapest first (Step 2). Throws
/// InfeasiblePoint for infeasible query points.
Certificate certify_point(const ProblemInstance& p, const Vector& xstar, const RunConfig& cfg,
                          const CertifyOptions& opts = {});

}  // namespace vqfp
