#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moebius/config.hpp"
#include "moebius/immersion.hpp"
#include "moebius/probes.hpp"

namespace moebius {

enum class Classification { Cylinder, Cone, Rotational, NotReducible, Inapplicable };
std::string classification_name(Classification c);

struct ReductionReport {
    std::vector<int> multiplicity_pattern;
    int mu_multiplicity = 0;
    /// "reduction" (2 <= k <= n-2), "closed-form" (k = n-1) or "none".
    std::string route = "none";
    double c_alpha_residual = 0.0;     // max over probes of |C restricted to the mu-eigenspace|
    double b_pq_alpha_residual = 0.0;  // max over probes and p, q of |(B_pq,alpha)_alpha|
    double dphi_residual = 0.0;
    double commutator_norm = 0.0;
    std::optional<double> q_value;       // mean of Q over probes
    std::vector<double> q_values;        // Q per probe
    std::vector<double> q_normalized;    // Q / (1 + |A|_inf + mu^2) per probe
    Classification classification = Classification::Inapplicable;
    std::string reason;
    std::vector<std::string> annotations;
};

/// Errors: NonConstantMultiplicity, FrameAmbiguity, plus anything raised by the
/// invariant pipeline (UmbilicPoint, BoundaryPoint, ...).
ReductionReport reduction_check(const Immersion& f, const std::vector<Vec>& probes, const RunConfig& cfg = {},
                                ExecutionMode mode = ExecutionMode::Parallel);

struct ClosedFormResidual {
    double dphi_residual = 0.0;    // max |C_i,j - C_j,i| (Frobenius per probe)
    double commutator_norm = 0.0;  // max |AB - BA| (Frobenius per probe)
};

ClosedFormResidual closed_form_residual(const Immersion& f, const std::vector<Vec>& probes, const RunConfig& cfg = {},
                                        ExecutionMode mode = ExecutionMode::Parallel);

enum class DeformationVerdict { CongruentCandidate, DeformationCandidate, MetricMismatch, SpectrumMismatch };
std::string verdict_name(DeformationVerdict v);

struct DeformationReport {
    double metric_deviation = 0.0;  // max relative |g - J^T g_bar J|
    bool eigen_match = false;       // eigenvalues of B_bar equal +-those of B at every probe
    double eigen_deviation = 0.0;
    int sign = 1;                   // sign used at the first probe
    double direction_angle = 0.0;   // max principal angle between matched eigenspaces (radians)
    DeformationVerdict verdict = DeformationVerdict::MetricMismatch;
};

/// `correspondence` maps coordinates of f to coordinates of f_bar.
/// Errors: DomainMismatch.
DeformationReport deformation_pair(const Immersion& f, const Immersion& f_bar, const JetMap& correspondence,
                                   const std::vector<Vec>& probes, const RunConfig& cfg = {},
                                   double angle_floor = 1e-3, ExecutionMode mode = ExecutionMode::Parallel);

JetMap identity_correspondence();
/// (s, w) of a rotational hypersurface over the exp spiral to (s', y) of the
/// circular cylinder: e^s phi(w) with the pole coordinate first. Isometric for
/// the flat Moebius metrics of the two hypersurfaces.
JetMap flat_pair_correspondence();

struct RigidityFit {
    double b = 0.0;
    double c = 0.0;
    double residual = 0.0;  // max per-probe misfit including off-diagonal mass
    bool flagged = false;   // residual > 1e-2
    bool b_sign_match = false;  // (b, c) close to (+-1, 0) and not flagged
};

/// Fit bar_lambda_j = b lambda_j + c with bar_lambda_j the Rayleigh quotients of
/// B_bar in the eigenbasis of B. Matrices are frame components.
RigidityFit rigidity_fit(const std::vector<Mat>& B, const std::vector<Mat>& B_bar, double tol = 1e-6);

/// Same-coordinate comparison of f and f_bar. Errors: Inapplicable when some
/// multiplicity reaches n-2.
RigidityFit rigidity_probe(const Immersion& f, const Immersion& f_bar, const std::vector<Vec>& probes,
                           const RunConfig& cfg = {}, ExecutionMode mode = ExecutionMode::Parallel);

}  // namespace moebius
