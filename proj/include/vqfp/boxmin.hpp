#pragma once

#include <optional>

#include "vqfp/model.hpp"

namespace vqfp {

enum class MinKind { Global, LocalOnly, LowerBoundOnly, Unbounded };
const char* to_string(MinKind k);

struct MinimizeResult {
    MinKind kind = MinKind::LowerBoundOnly;
    Vector argmin;             // present for Global / LocalOnly
    double value = 0.0;        // objective at argmin
    double lower_bound = 0.0;  // valid lower bound on the true minimum
};

/// Effective interval bounds of the feasible set: the explicit box plus any
/// single-coordinate affine rows. `extra` reports whether constraints beyond
/// those interval bounds exist.
struct EffectiveBox {
    std::optional<Box> box;  // engaged only when finite in every coordinate
    bool extra = false;
};
EffectiveBox derive_box(const ProblemInstance& p);

/// Global minimization of x^T Q x + c^T x + d over the feasible set of `p`.
///
/// Finite box without extra constraints and n <= grid_dims_max: exact face
/// enumeration (every candidate face stationary point with PSD reduced
/// Hessian, plus all vertices). Convex objectives fall back to projected
/// gradient descent in higher dimensions. Otherwise the result is tagged
/// LocalOnly / LowerBoundOnly / Unbounded honestly.
MinimizeResult minimize_quadratic(const ProblemInstance& p, const QuadraticFunction& q,
                                  const RunConfig& cfg);

}  // namespace vqfp
