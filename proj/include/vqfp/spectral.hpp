#pragma once

#include "vqfp/model.hpp"
#include "vqfp/types.hpp"

namespace vqfp {

/// Eigenvalues ascending; column k of `eigenvectors` pairs with eigenvalue k.
/// Sign convention: the first component of each eigenvector whose magnitude
/// exceeds 1e-12 is positive, so identical inputs give identical outputs.
struct EigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
};

/// Cyclic Jacobi sweeps on a symmetric matrix. Deterministic rotation order.
/// Throws ConvergenceError if the off-diagonal norm does not fall below
/// 1e-12 * ||M|| within the sweep budget.
EigenDecomposition eig_sym(const Matrix& M);

enum class Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    NegativeSemidefinite,
    NegativeDefinite,
};
const char* to_string(Definiteness d);

/// Classification by extreme eigenvalues against tol * (1 + max|eigenvalue|).
Definiteness psd_status(const Matrix& M, double tol);

bool is_psd(const Matrix& M, double tol);

/// F_i(x) = A_i - (f_i(x)/g_i(x)) B_i
Matrix build_Fi(const ProblemInstance& p, int i, const Vector& x);

/// F(w, x) = sum_i w_i F_i(x), w > 0 componentwise.
Matrix build_F(const ProblemInstance& p, const Vector& w, const Vector& x);

/// Rank-one data for one (objective, eigenpair-index) pair:
///   a+/- = sqrt(muA) p +/- sqrt(muB f/g) q
///   alpha = <x*,a+> a- + <x*,a-> a+,  beta = <x*,a+><x*,a->
///   Hbar  = a+ a-^T  (generally not symmetric)
/// real_valued is false when either radicand is negative, in which case the
/// remaining fields are left empty.
struct HMatrixData {
    Vector a_plus;
    Vector a_minus;
    Vector alpha;
    double beta = 0.0;
    Matrix Hbar;
    bool real_valued = false;
};

HMatrixData build_H_data(const ProblemInstance& p, int i, int k, const Vector& xstar,
                         const EigenDecomposition& eigA, const EigenDecomposition& eigB);

/// Max discrepancy between the assembled Hbar/alpha and their entrywise
/// closed forms in the eigenvector components. Test probe.
double entrywise_check(const HMatrixData& hd, const ProblemInstance& p, int i, int k,
                       const Vector& xstar, const EigenDecomposition& eigA,
                       const EigenDecomposition& eigB);

}  // namespace vqfp
