#pragma once

// Shared per-point jet computation used by the invariants and lorentz modules.

#include "moebius/config.hpp"
#include "moebius/immersion.hpp"
#include "moebius/tensor.hpp"

namespace moebius::detail {

struct PointJets {
    int n = 0;
    JetVec F;
    FormJets forms;
    Jet rho;
    Jet rho2;
    Jet logrho;
    JetMatrix B;  // rho (II - H I)
    JetMatrix A;
    JetVec Phi;
    JetMatrix g;
    JetMatrix g_inv;
    Tensor3 gamma;   // Gamma(g)^d_ab at the point
    Tensor4 dgamma;  // d_e Gamma(g)^d_ab stored as (e, d, a, b)
    Mat E;           // columns: g-orthonormal frame
};

/// Throws UmbilicPoint when rho^2 <= cfg.eps_umbilic.
PointJets compute_point_jets(const Immersion& f, const Vec& p, const RunConfig& cfg);

}  // namespace moebius::detail
