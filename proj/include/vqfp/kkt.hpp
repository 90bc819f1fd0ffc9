#pragma once

#include <optional>

#include "vqfp/model.hpp"
#include "vqfp/simplex.hpp"

namespace vqfp {

/// KKT multipliers for the ratio-gradient stationarity system:
///   sum_i tau_i grad(f_i/g_i)(x*) + sum_j lambda_j grad h_j(x*) = 0
///   sum_j lambda_j h_j(x*) = 0,  tau > 0,  lambda >= 0
struct MultiplierPair {
    Vector tau;
    Vector lambda;
    double stationarity_residual = 0.0;
    double complementarity_residual = 0.0;
};

MultiplierPair make_multiplier_pair(const ProblemInstance& p, const Vector& xstar,
                                    const Vector& tau, const Vector& lambda);

struct MultiplierSearch {
    bool found = false;
    std::optional<MultiplierPair> pair;
    double floor = 0.0;  // attained max-min value of the tau entries
};

/// Step 1 of the optimality test: maximize t subject to stationarity,
/// complementarity, tau_i >= t, lambda >= 0 and the normalization
/// sum(tau) + sum(lambda) = 1. Found iff the optimum t clears tol.strict.
/// Throws InfeasiblePoint when x* is not feasible.
MultiplierSearch find_multipliers(const ProblemInstance& p, const Vector& xstar,
                                  const Tolerances& tol = {});

/// tau_i = mu_i / g_i(x*); maps ratio-system multipliers to the multipliers
/// of the scalarized stationarity system.
Vector convert_multipliers(const ProblemInstance& p, const Vector& xstar, const Vector& mu);

/// inf-norm of sum_i tau_i (grad f_i - (f_i/g_i) grad g_i)(x*)
///             + sum_j lambda_j grad h_j(x*).
double stationarity_residual_scalarized(const ProblemInstance& p, const Vector& xstar,
                                        const Vector& tau, const Vector& lambda);

}  // namespace vqfp
