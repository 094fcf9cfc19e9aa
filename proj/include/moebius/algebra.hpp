#pragma once

#include <cstdint>

#include "moebius/immersion.hpp"
#include "moebius/random.hpp"
#include "moebius/tensor.hpp"

namespace moebius {

/// S_ijkl = B_ik B_jl - B_il B_jk + (1/(n-2)) sum_m (d_ik B_jm B_ml + d_jl B_im B_mk
///          - d_il B_jm B_mk - d_jk B_im B_ml). Throws DimensionTooSmall for n <= 3.
Tensor4 s_tensor(const Mat& B);

double s_tensor_distance(const Mat& B, const Mat& B_bar);

struct DiagDecision {
    enum class Verdict { SimultaneouslyDiagonalizable, BlockCase };

    Verdict verdict = Verdict::SimultaneouslyDiagonalizable;
    Mat basis;  // orthonormal columns
    // Block case only: the coupled pair occupies the first two basis vectors.
    Mat block;          // 2x2 block of B
    Vec bar_diagonal;   // diagonal of B_bar in `basis`
    double mu = 0.0;
    double mu_bar = 0.0;
    int mu_bar_sign = 1;  // mu = mu_bar_sign * mu_bar
};

/// Decide the dichotomy for a pair with equal S-tensors.
/// Errors: STensorMismatch (precondition), NumericalAmbiguity, DimensionTooSmall.
DiagDecision decide_sim_diag(const Mat& B, const Mat& B_bar, double tol = 1e-8);

/// |B B_bar - B_bar B|_inf <= tol.
bool commute_oracle(const Mat& B, const Mat& B_bar, double tol = 1e-8);

/// R^T diag(l1, l2) R (+) mu Id_{n-2} with R the theta rotation of the (1,2) plane.
/// Throws TraceNotZero unless l1 + l2 + (n-2) mu = 0.
Mat block_family(double lambda1, double lambda2, double mu, int n, double theta);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix).
Mat random_orthogonal(Rng& rng, int n);
/// Symmetric part of a Gaussian matrix.
Mat random_symmetric(Rng& rng, int n);

/// Pair generator for the decision tests.
struct TrialPair {
    enum class Kind { Commuting, ThetaBlock, Mismatched };
    Kind kind;
    Mat B;
    Mat B_bar;
};

TrialPair make_trial(TrialPair::Kind kind, int n, std::uint64_t seed);

}  // namespace moebius
