#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vqfp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasiblePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InapplicableRoute : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HypothesisNotMet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All tolerances are absolute unless noted otherwise.
struct Tolerances {
    double sym_pre = 1e-8;    // max accepted asymmetry before load-time symmetrization
    double psd = 1e-9;        // eigenvalue tolerance, relative to max |eigenvalue|
    double g_pos = 1e-9;      // required margin g(w) at the denominator minimizer
    double feas = 1e-9;       // constraint satisfaction h_j(x) <= feas
    double strict = 1e-9;     // floor for "tau > 0" in multiplier recovery
    double kkt = 1e-8;        // stationarity / complementarity residual bound
    double z = 1e-6;          // localization tolerance for global quadratic minimization
    double dom = 1e-9;        // dominance comparison tolerance on ratio values
    double alpha = 1e-9;      // relative ratio-anchor change for fixed-point convergence
    double point = 1e-6;      // point coincidence tolerance (strict converse duality)
};

struct RunConfig {
    Tolerances tol;
    int grid_dims_max = 4;        // exhaustive grid allowed up to this dimension
    int grid_initial = 33;        // initial lattice points per dimension
    int max_refine_rounds = 60;
    int multistart = 32;
    int dinkelbach_max_iter = 100;
    std::uint64_t seed = 0;
};

}  // namespace vqfp
