#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moebius/config.hpp"
#include "moebius/immersion.hpp"
#include "moebius/tensor.hpp"

namespace moebius {

/// Per-point Moebius invariants. Matrices B, A and vector C are components in
/// the g-orthonormal frame whose columns are stored in `frame`.
struct MoebiusData {
    double rho = 0.0;
    Mat g;
    Mat frame;
    Mat B;
    Mat A;
    Vec C;
    Vec moebius_principal;          // eigenvalues of B, descending
    std::vector<int> multiplicities;  // group sizes in the order of moebius_principal
};

struct CurvatureData {
    Tensor3 christoffel;  // Gamma^d_ab stored as (d, a, b), coordinate basis
    Tensor4 riemann;      // R_ijkl in the frame; constant curvature c gives c(d_ik d_jl - d_il d_jk)
    Mat ricci;            // R_ij = sum_k R_ikjk
    double kappa = 0.0;   // normalized scalar curvature
    std::map<std::pair<int, int>, double> sectional;  // (i<j) -> R_ijij
};

/// First covariant derivatives in the frame, derivative index last.
struct DerivativeData {
    Tensor3 dB;  // B_ij,k
    Tensor3 dA;  // A_ij,k
    Mat dC;      // C_i,j
};

/// Everything computed at one point in a single pass.
struct PointAnalysis {
    Vec point;
    double rho2 = 0.0;
    double H = 0.0;
    MoebiusData moebius;
    CurvatureData curvature;
    DerivativeData derivatives;
    Mat B_coord;  // Moebius second fundamental form in coordinates
    Mat A_coord;
    Vec Phi_coord;
};

PointAnalysis analyze(const Immersion& f, const Vec& p, const RunConfig& cfg = {});

MoebiusData moebius_data(const Immersion& f, const Vec& p, const RunConfig& cfg = {});
CurvatureData curvature(const Immersion& f, const Vec& p, const RunConfig& cfg = {});
DerivativeData covariant_derivatives(const Immersion& f, const Vec& p, const RunConfig& cfg = {});

/// Group sizes of a descending eigenvalue list; tau = 1e-4 (spread + 1).
std::vector<int> multiplicity_groups(const Vec& descending);
double multiplicity_tolerance(const Vec& eigenvalues);

/// Plain data consumed by the residual computation, so callers can inject
/// modified tensors.
struct InvariantBundle {
    int n = 0;
    Mat B;
    Mat A;
    Vec C;
    Tensor3 dB;
    Tensor3 dA;
    Mat dC;
    Tensor4 R;
    double kappa = 0.0;

    static InvariantBundle from(const PointAnalysis& a);
};

struct IntegrabilityResiduals {
    double a_codazzi = 0.0;   // A_ij,k - A_ik,j = B_ik C_j - B_ij C_k
    double c_curl = 0.0;      // C_i,j - C_j,i = sum_k (B_ik A_kj - B_jk A_ki)
    double b_codazzi = 0.0;   // B_ij,k - B_ik,j = d_ij C_k - d_ik C_j
    double gauss = 0.0;       // R_ijkl against B and A
    double ricci = 0.0;       // R_ij = -(B^2)_ij + tr(A) d_ij + (n-2) A_ij
    double traces = 0.0;      // tr B, |B|^2 - (n-1)/n, tr A - (1 + n^2 kappa)/(2n)

    std::map<std::string, double> named() const;
    /// Largest of the first five residuals.
    double structural() const;
};

IntegrabilityResiduals integrability_residuals(const InvariantBundle& b);
IntegrabilityResiduals integrability_residuals(const Immersion& f, const Vec& p, const RunConfig& cfg = {});

/// max_ijkl |R_ijkl - c (d_ik d_jl - d_il d_jk)|.
double constant_curvature_deviation(const CurvatureData& c, double expected);

}  // namespace moebius
