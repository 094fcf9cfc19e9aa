#include "pipeline.hpp"

#include <sstream>

#include "moebius/errors.hpp"

namespace moebius::detail {

PointJets compute_point_jets(const Immersion& f, const Vec& p, const RunConfig& cfg) {
    const int n = f.n();
    PointJets pj;
    pj.n = n;
    pj.F = f.taylor(p, kMaxJetOrder);
    const JetLayout* layout = pj.F[0].layout();
    pj.forms = form_jets(pj.F, n, f.orientation());
    const FormJets& fj = pj.forms;

    pj.rho2 = fj.rho2;
    if (!(pj.rho2.value() > cfg.eps_umbilic)) {
        std::ostringstream os;
        os << "umbilic point: rho^2 = " << pj.rho2.value();
        fail(ErrorCode::UmbilicPoint, os.str());
    }
    pj.rho = sqrt(pj.rho2);
    pj.logrho = 0.5 * log(pj.rho2);

    // Christoffel symbols of I, as jets.
    std::vector<JetMatrix> dI;
    for (int c = 0; c < n; ++c) dI.push_back(fj.I.derivative(c));
    std::vector<JetMatrix> gammaI(n, JetMatrix(n, n, layout));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            JetVec lower;
            for (int d = 0; d < n; ++d) lower.push_back(0.5 * (dI[a](d, b) + dI[b](d, a) - dI[d](a, b)));
            for (int c = 0; c < n; ++c) {
                Jet s = fj.I_inv(c, 0) * lower[0];
                for (int d = 1; d < n; ++d) s += fj.I_inv(c, d) * lower[d];
                gammaI[c](a, b) = s;
                gammaI[c](b, a) = s;
            }
        }

    JetVec dL;
    for (int a = 0; a < n; ++a) dL.push_back(pj.logrho.derivative(a));
    JetMatrix hess(n, n, layout);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Jet h = dL[a].derivative(b);
            for (int c = 0; c < n; ++c) h -= gammaI[c](a, b) * dL[c];
            hess(a, b) = h;
            hess(b, a) = h;
        }
    JetVec gradL(n, Jet(layout, 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) gradL[a] += fj.I_inv(a, b) * dL[b];
    const Jet gradL2 = dot(gradL, dL);

    JetMatrix traceless = fj.II - fj.H * fj.I;
    pj.B = pj.rho * traceless;
    const Jet half = 0.5 * (gradL2 + fj.H * fj.H);
    pj.A = JetMatrix(n, n, layout);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Jet v = -(hess(a, b) - dL[a] * dL[b] - fj.H * fj.II(a, b)) - half * fj.I(a, b);
            pj.A(a, b) = v;
            pj.A(b, a) = v;
        }
    const Jet inv_rho = reciprocal(pj.rho);
    for (int a = 0; a < n; ++a) {
        Jet s = fj.H.derivative(a);
        for (int b = 0; b < n; ++b) s += traceless(a, b) * gradL[b];
        pj.Phi.push_back(-(inv_rho * s));
    }

    pj.g = pj.rho2 * fj.I;
    pj.g_inv = inverse(pj.g);
    std::vector<JetMatrix> dg;
    for (int c = 0; c < n; ++c) dg.push_back(pj.g.derivative(c));
    pj.gamma = Tensor3(n);
    pj.dgamma = Tensor4(n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            JetVec lower;
            for (int d = 0; d < n; ++d) lower.push_back(0.5 * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b)));
            for (int c = 0; c < n; ++c) {
                Jet s = pj.g_inv(c, 0) * lower[0];
                for (int d = 1; d < n; ++d) s += pj.g_inv(c, d) * lower[d];
                pj.gamma(c, a, b) = pj.gamma(c, b, a) = s.value();
                for (int e = 0; e < n; ++e) pj.dgamma(e, c, a, b) = pj.dgamma(e, c, b, a) = s.d(e);
            }
        }

    const Mat g0 = pj.g.values();
    Eigen::LLT<Mat> llt(g0);
    const Mat L = llt.matrixL();
    pj.E = L.inverse().transpose();
    return pj;
}

}  // namespace moebius::detail
