#include "moebius/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "moebius/errors.hpp"
#include "pipeline.hpp"

namespace moebius {

double multiplicity_tolerance(const Vec& eigenvalues) {
    const double spread = eigenvalues.size() ? eigenvalues.maxCoeff() - eigenvalues.minCoeff() : 0.0;
    return 1e-4 * (spread + 1.0);
}

std::vector<int> multiplicity_groups(const Vec& descending) {
    std::vector<int> groups;
    if (descending.size() == 0) return groups;
    const double tau = multiplicity_tolerance(descending);
    groups.push_back(1);
    for (int i = 1; i < descending.size(); ++i) {
        if (std::abs(descending[i - 1] - descending[i]) <= tau)
            ++groups.back();
        else
            groups.push_back(1);
    }
    return groups;
}

PointAnalysis analyze(const Immersion& f, const Vec& p, const RunConfig& cfg) {
    const detail::PointJets pj = detail::compute_point_jets(f, p, cfg);
    const int n = pj.n;
    const Mat& E = pj.E;

    PointAnalysis out;
    out.point = p;
    out.rho2 = pj.rho2.value();
    out.H = pj.forms.H.value();
    out.B_coord = pj.B.values();
    out.A_coord = pj.A.values();
    out.Phi_coord = values(pj.Phi);

    MoebiusData& md = out.moebius;
    md.rho = pj.rho.value();
    md.g = pj.g.values();
    md.frame = E;
    md.B = E.transpose() * out.B_coord * E;
    md.B = 0.5 * (md.B + md.B.transpose());
    md.A = E.transpose() * out.A_coord * E;
    md.A = 0.5 * (md.A + md.A.transpose());
    md.C = E.transpose() * out.Phi_coord;
    Eigen::SelfAdjointEigenSolver<Mat> es(md.B);
    md.moebius_principal = es.eigenvalues().reverse();
    md.multiplicities = multiplicity_groups(md.moebius_principal);

    // Curvature of g.
    CurvatureData& cd = out.curvature;
    cd.christoffel = pj.gamma;
    const Tensor3& G = pj.gamma;
    const Tensor4& dG = pj.dgamma;
    Tensor4 Rup(n);  // R^d_{cab}
    for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    double r = dG(a, d, b, c) - dG(b, d, a, c);
                    for (int e = 0; e < n; ++e) r += G(d, a, e) * G(e, b, c) - G(d, b, e) * G(e, a, c);
                    Rup(d, c, a, b) = r;
                }
    Tensor4 Rlow(n);  // g(R(d_a, d_b) d_c, d_d) stored as (d, c, a, b)
    for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    double s = 0.0;
                    for (int e = 0; e < n; ++e) s += md.g(d, e) * Rup(e, c, a, b);
                    Rlow(d, c, a, b) = s;
                }
    // R_ijkl = g(R(E_i, E_j) E_l, E_k), contracted one index at a time.
    Tensor4 t1(n), t2(n), t3(n);
    for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int b = 0; b < n; ++b) s += Rlow(d, c, a, b) * E(b, j);
                    t1(d, c, a, j) = s;
                }
    for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int a = 0; a < n; ++a) s += t1(d, c, a, j) * E(a, i);
                    t2(d, c, i, j) = s;
                }
    for (int d = 0; d < n; ++d)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int c = 0; c < n; ++c) s += t2(d, c, i, j) * E(c, l);
                    t3(d, l, i, j) = s;
                }
    cd.riemann = Tensor4(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double s = 0.0;
                    for (int d = 0; d < n; ++d) s += t3(d, l, i, j) * E(d, k);
                    cd.riemann(i, j, k, l) = s;
                }
    cd.ricci = Mat::Zero(n, n);
    double scal = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) cd.ricci(i, j) += cd.riemann(i, k, j, k);
            scal += cd.riemann(i, j, i, j);
        }
    cd.kappa = scal / (n * (n - 1.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cd.sectional[{i, j}] = cd.riemann(i, j, i, j);

    // Covariant derivatives: coordinate nabla, then frame contraction.
    const Mat& Bc = out.B_coord;
    const Mat& Ac = out.A_coord;
    std::vector<Mat> dBc(n), dAc(n);
    Mat dPhi(n, n);  // dPhi(a, c) = d_c Phi_a
    for (int c = 0; c < n; ++c) {
        dBc[c] = pj.B.d(c);
        dAc[c] = pj.A.d(c);
        for (int a = 0; a < n; ++a) dPhi(a, c) = pj.Phi[a].d(c);
    }
    Tensor3 nB(n), nA(n);
    Mat nPhi(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double vb = dBc[c](a, b), va = dAc[c](a, b);
                for (int d = 0; d < n; ++d) {
                    vb -= G(d, c, a) * Bc(d, b) + G(d, c, b) * Bc(a, d);
                    va -= G(d, c, a) * Ac(d, b) + G(d, c, b) * Ac(a, d);
                }
                nB(a, b, c) = vb;
                nA(a, b, c) = va;
            }
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            double v = dPhi(a, c);
            for (int d = 0; d < n; ++d) v -= G(d, c, a) * out.Phi_coord[d];
            nPhi(a, c) = v;
        }
    auto to_frame3 = [&](const Tensor3& t) {
        Tensor3 r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double s = 0.0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) {
                            const double eab = E(a, i) * E(b, j);
                            if (eab == 0.0) continue;
                            for (int c = 0; c < n; ++c) s += eab * E(c, k) * t(a, b, c);
                        }
                    r(i, j, k) = s;
                }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) r(i, j, k) = r(j, i, k) = 0.5 * (r(i, j, k) + r(j, i, k));
        return r;
    };
    out.derivatives.dB = to_frame3(nB);
    out.derivatives.dA = to_frame3(nA);
    out.derivatives.dC = E.transpose() * nPhi * E;
    return out;
}

MoebiusData moebius_data(const Immersion& f, const Vec& p, const RunConfig& cfg) { return analyze(f, p, cfg).moebius; }
CurvatureData curvature(const Immersion& f, const Vec& p, const RunConfig& cfg) { return analyze(f, p, cfg).curvature; }
DerivativeData covariant_derivatives(const Immersion& f, const Vec& p, const RunConfig& cfg) {
    return analyze(f, p, cfg).derivatives;
}

InvariantBundle InvariantBundle::from(const PointAnalysis& a) {
    InvariantBundle b;
    b.n = static_cast<int>(a.moebius.B.rows());
    b.B = a.moebius.B;
    b.A = a.moebius.A;
    b.C = a.moebius.C;
    b.dB = a.derivatives.dB;
    b.dA = a.derivatives.dA;
    b.dC = a.derivatives.dC;
    b.R = a.curvature.riemann;
    b.kappa = a.curvature.kappa;
    return b;
}

std::map<std::string, double> IntegrabilityResiduals::named() const {
    return {{"a_codazzi", a_codazzi}, {"c_curl", c_curl}, {"b_codazzi", b_codazzi},
            {"gauss", gauss},         {"ricci", ricci},   {"traces", traces}};
}

double IntegrabilityResiduals::structural() const { return std::max({a_codazzi, c_curl, b_codazzi, gauss, ricci}); }

IntegrabilityResiduals integrability_residuals(const InvariantBundle& x) {
    const int n = x.n;
    auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
    IntegrabilityResiduals r;
    const Mat BA = x.B * x.A;
    const Mat B2 = x.B * x.B;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double e1 = x.dA(i, j, k) - x.dA(i, k, j) - (x.B(i, k) * x.C[j] - x.B(i, j) * x.C[k]);
                const double e3 = x.dB(i, j, k) - x.dB(i, k, j) - (delta(i, j) * x.C[k] - delta(i, k) * x.C[j]);
                r.a_codazzi = std::max(r.a_codazzi, std::abs(e1));
                r.b_codazzi = std::max(r.b_codazzi, std::abs(e3));
                for (int l = 0; l < n; ++l) {
                    const double model = x.B(i, k) * x.B(j, l) - x.B(i, l) * x.B(j, k) + delta(i, k) * x.A(j, l) +
                                         delta(j, l) * x.A(i, k) - delta(i, l) * x.A(j, k) - delta(j, k) * x.A(i, l);
                    r.gauss = std::max(r.gauss, std::abs(x.R(i, j, k, l) - model));
                }
            }
            const double e2 = x.dC(i, j) - x.dC(j, i) - (BA(i, j) - BA(j, i));
            r.c_curl = std::max(r.c_curl, std::abs(e2));
            double ric = 0.0;
            for (int k = 0; k < n; ++k) ric += x.R(i, k, j, k);
            const double e5 = ric - (-B2(i, j) + x.A.trace() * delta(i, j) + (n - 2) * x.A(i, j));
            r.ricci = std::max(r.ricci, std::abs(e5));
        }
    r.traces = std::max({std::abs(x.B.trace()), std::abs(x.B.squaredNorm() - (n - 1.0) / n),
                         std::abs(x.A.trace() - (1.0 + n * n * x.kappa) / (2.0 * n))});
    return r;
}

IntegrabilityResiduals integrability_residuals(const Immersion& f, const Vec& p, const RunConfig& cfg) {
    return integrability_residuals(InvariantBundle::from(analyze(f, p, cfg)));
}

double constant_curvature_deviation(const CurvatureData& c, double expected) {
    const int n = c.riemann.n();
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double model = expected * ((i == k && j == l ? 1.0 : 0.0) - (i == l && j == k ? 1.0 : 0.0));
                    dev = std::max(dev, std::abs(c.riemann(i, j, k, l) - model));
                }
    return dev;
}

}  // namespace moebius
