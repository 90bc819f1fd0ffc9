#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"
#include "vqfp/spectral.hpp"

using namespace vqfp;
using namespace vqfp::testing;

namespace {
Vector v1(double x) {
    Vector v(1);
    v(0) = x;
    return v;
}
}  // namespace

TEST_CASE("eig_sym reconstructs the input and sorts ascending") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const Matrix M = random_symmetric(rng, n, 5.0);
        const EigenDecomposition ed = eig_sym(M);
        const Matrix R = ed.eigenvectors * ed.eigenvalues.asDiagonal() *
                         ed.eigenvectors.transpose();
        CHECK((R - M).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + M.cwiseAbs().maxCoeff()));
        const Matrix I = ed.eigenvectors.transpose() * ed.eigenvectors;
        CHECK((I - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
        for (int k = 0; k + 1 < n; ++k) CHECK(ed.eigenvalues(k) <= ed.eigenvalues(k + 1) + 1e-12);
    }
}

TEST_CASE("eig_sym agrees with the reference solver") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Matrix M = random_symmetric(rng, n, 3.0);
        const EigenDecomposition ed = eig_sym(M);
        Eigen::SelfAdjointEigenSolver<Matrix> ref(M);
        CHECK((ed.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <=
              1e-9 * (1.0 + M.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("eig_sym is deterministic, with a fixed sign convention") {
    std::mt19937_64 rng(37);
    const Matrix M = random_symmetric(rng, 4, 2.0);
    const EigenDecomposition a = eig_sym(M);
    const EigenDecomposition b = eig_sym(M);
    CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
    for (int k = 0; k < 4; ++k) {
        int lead = 0;
        while (lead < 4 && std::abs(a.eigenvectors(lead, k)) <= 1e-12) ++lead;
        if (lead < 4) CHECK(a.eigenvectors(lead, k) > 0.0);
    }
}

TEST_CASE("psd_status classification") {
    Matrix I = Matrix::Identity(2, 2);
    CHECK(psd_status(I, 1e-9) == Definiteness::PositiveDefinite);
    CHECK(psd_status(-I, 1e-9) == Definiteness::NegativeDefinite);
    Matrix Z = Matrix::Zero(2, 2);
    CHECK(psd_status(Z, 1e-9) == Definiteness::PositiveSemidefinite);
    Matrix D = I;
    D(1, 1) = -1.0;
    CHECK(psd_status(D, 1e-9) == Definiteness::Indefinite);
    Matrix S = Matrix::Zero(2, 2);
    S(0, 0) = 1.0;
    CHECK(is_psd(S, 1e-9));
    // tiny negative eigenvalue within the relative tolerance still counts as PSD
    S(1, 1) = -1e-12;
    CHECK(is_psd(S, 1e-9));
}

TEST_CASE("build_Fi reproduces the example's closed forms") {
    const ProblemInstance p = paper_example();
    for (int t = 0; t < 100; ++t) {
        const double x = -2.0 + 4.0 * t / 99.0;
        const double f1 = (2.0 - x) / (x * x + 2.0);
        const double f2 = (x + 3.0) / (x * x + 1.0);
        const double f3 = 3.0 / (x * x + x + 1.0);
        CHECK(build_Fi(p, 0, v1(x))(0, 0) == doctest::Approx(f1).epsilon(1e-12));
        CHECK(build_Fi(p, 1, v1(x))(0, 0) == doctest::Approx(f2).epsilon(1e-12));
        CHECK(build_Fi(p, 2, v1(x))(0, 0) == doctest::Approx(f3).epsilon(1e-12));
    }
}

TEST_CASE("build_F is the weighted sum of the build_Fi blocks") {
    std::mt19937_64 rng(41);
    InstanceOptions opt;
    opt.n = 3;
    opt.m = 3;
    const ProblemInstance p = random_instance(rng, opt);
    const Vector x = random_point_in_box(rng, *p.bounds);
    const Vector w = random_vector(rng, 3, 0.1, 2.0);
    Matrix sum = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) sum += w(i) * build_Fi(p, i, x);
    CHECK((build_F(p, w, x) - sum).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("H data entrywise closed forms agree to 1e-9") {
    std::mt19937_64 rng(43);
    int real_cases = 0;
    for (int t = 0; t < 500; ++t) {
        InstanceOptions opt;
        opt.n = 1 + static_cast<int>(rng() % 3);
        opt.m = 1 + static_cast<int>(rng() % 2);
        const ProblemInstance p = random_instance(rng, opt);
        const Vector xs = random_point_in_box(rng, *p.bounds);
        for (int i = 0; i < p.num_objectives(); ++i) {
            const EigenDecomposition ea = eig_sym(p.objectives[static_cast<size_t>(i)].f.Q);
            const EigenDecomposition eb = eig_sym(p.objectives[static_cast<size_t>(i)].g.Q);
            for (int k = 0; k < opt.n; ++k) {
                const HMatrixData hd = build_H_data(p, i, k, xs, ea, eb);
                if (!hd.real_valued) continue;
                ++real_cases;
                CHECK(entrywise_check(hd, p, i, k, xs, ea, eb) <= 1e-9);
            }
        }
    }
    CHECK(real_cases >= 300);
}

TEST_CASE("negative radicand disables the H route") {
    // f/g < 0 with mu^B > 0 makes the second radicand negative.
    const ProblemInstance p = paper_example();
    const EigenDecomposition ea = eig_sym(p.objectives[0].f.Q);
    const EigenDecomposition eb = eig_sym(p.objectives[0].g.Q);
    const HMatrixData hd = build_H_data(p, 0, 0, v1(0.0), ea, eb);
    CHECK_FALSE(hd.real_valued);
}

TEST_CASE("H quadratic form matches the centered rank-two expansion") {
    // x^T Hbar x - alpha.x + beta == <x - x*, a+> <x - x*, a->
    std::mt19937_64 rng(47);
    for (int t = 0; t < 200; ++t) {
        InstanceOptions opt;
        opt.n = 2 + static_cast<int>(rng() % 2);
        opt.m = 1;
        opt.convex_numerators = true;
        ProblemInstance p = random_instance(rng, opt);
        p.objectives[0].f.d += 5.0;  // push f positive so f/g > 0 at the anchor
        const Vector xs = random_point_in_box(rng, *p.bounds);
        if (p.objectives[0].f.value(xs) <= 0.0) continue;
        const EigenDecomposition ea = eig_sym(p.objectives[0].f.Q);
        const EigenDecomposition eb = eig_sym(p.objectives[0].g.Q);
        for (int k = 0; k < opt.n; ++k) {
            const HMatrixData hd = build_H_data(p, 0, k, xs, ea, eb);
            if (!hd.real_valued) continue;
            const Vector x = random_point_in_box(rng, *p.bounds);
            const double lhs = x.dot(hd.Hbar * x) - hd.alpha.dot(x) + hd.beta;
            const double rhs = (x - xs).dot(hd.a_plus) * (x - xs).dot(hd.a_minus);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}
