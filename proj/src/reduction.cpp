#include "moebius/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/invariants.hpp"

namespace moebius {

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::Cylinder: return "Cylinder";
        case Classification::Cone: return "Cone";
        case Classification::Rotational: return "Rotational";
        case Classification::NotReducible: return "NotReducible";
        case Classification::Inapplicable: return "Inapplicable";
    }
    return "?";
}

std::string verdict_name(DeformationVerdict v) {
    switch (v) {
        case DeformationVerdict::CongruentCandidate: return "CongruentCandidate";
        case DeformationVerdict::DeformationCandidate: return "DeformationCandidate";
        case DeformationVerdict::MetricMismatch: return "MetricMismatch";
        case DeformationVerdict::SpectrumMismatch: return "SpectrumMismatch";
    }
    return "?";
}

namespace {

struct Eig {
    Vec values;  // descending
    Mat vectors;
};

Eig eig_desc(const Mat& M) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
    return {es.eigenvalues().reverse(), es.eigenvectors().rowwise().reverse()};
}

Tensor3 rotate(const Tensor3& T, const Mat& P) {
    const int n = static_cast<int>(P.rows());
    Tensor3 a(n), b(n), c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0;
                for (int m = 0; m < n; ++m) s += P(m, i) * T(m, j, k);
                a(i, j, k) = s;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0;
                for (int m = 0; m < n; ++m) s += P(m, j) * a(i, m, k);
                b(i, j, k) = s;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0;
                for (int m = 0; m < n; ++m) s += P(m, k) * b(i, j, m);
                c(i, j, k) = s;
            }
    return c;
}

struct ProbeTerms {
    std::vector<int> pattern;
    double min_ambiguous_gap = 0.0;  // > 0 when some gap is hard to call
    double c_alpha = 0.0;
    double b_pq = 0.0;
    double q = 0.0;
    double q_norm = 0.0;
    double dphi = 0.0;
    double comm = 0.0;
    bool isoparametric = false;
};

double closed_dphi(const PointAnalysis& a) {
    const Mat& dC = a.derivatives.dC;
    return (dC - dC.transpose()).norm();
}

double closed_comm(const PointAnalysis& a) {
    const Mat& A = a.moebius.A;
    const Mat& B = a.moebius.B;
    return (A * B - B * A).norm();
}

}  // namespace

ReductionReport reduction_check(const Immersion& f, const std::vector<Vec>& probes, const RunConfig& cfg,
                                ExecutionMode mode) {
    if (probes.empty()) throw std::invalid_argument("reduction_check: no probes");
    const int n = f.n();
    const double tol = cfg.tol_classification;
    const auto analyses = map_probes(probes, [&](const Vec& p) { return analyze(f, p, cfg); }, mode);

    ReductionReport rep;
    // Multiplicity pattern, constant over probes.
    std::vector<Eig> eigs;
    for (std::size_t k = 0; k < analyses.size(); ++k) {
        Eig e = eig_desc(analyses[k].moebius.B);
        const double tau = multiplicity_tolerance(e.values);
        for (int i = 1; i < n; ++i) {
            const double gap = e.values[i - 1] - e.values[i];
            if (gap > tau && gap <= 10 * tau) {
                std::ostringstream os;
                os << "eigenvalue gap " << gap << " at probe " << k << " is within a factor 10 of the cluster tolerance";
                fail(ErrorCode::FrameAmbiguity, os.str());
            }
        }
        const auto pattern = multiplicity_groups(e.values);
        if (k == 0)
            rep.multiplicity_pattern = pattern;
        else if (pattern != rep.multiplicity_pattern)
            fail(ErrorCode::NonConstantMultiplicity, "multiplicity pattern of B changes across probes");
        eigs.push_back(std::move(e));
    }

    // Isoparametric pattern: +-sqrt((n-1)/2n), 0, ..., 0 with vanishing C.
    {
        const double s = std::sqrt((n - 1.0) / (2.0 * n));
        bool iso = true;
        for (std::size_t k = 0; k < analyses.size() && iso; ++k) {
            Vec target = Vec::Zero(n);
            target[0] = s;
            target[n - 1] = -s;
            iso = (eigs[k].values - target).cwiseAbs().maxCoeff() <= tol && analyses[k].moebius.C.norm() <= tol;
        }
        if (iso) rep.annotations.push_back("isoparametric-cartan-cone; excluded from deformable classification");
    }

    int repeated = 0, start = 0, offset = 0;
    for (int g : rep.multiplicity_pattern) {
        if (g >= 2) {
            ++repeated;
            rep.mu_multiplicity = g;
            start = offset;
        }
        offset += g;
    }
    if (repeated == 0) {
        rep.reason = "no repeated Moebius principal curvature";
        return rep;
    }
    if (repeated > 1) {
        rep.reason = "more than one repeated Moebius principal curvature";
        return rep;
    }
    const int k = rep.mu_multiplicity;
    rep.route = k == n - 1 ? "closed-form" : "reduction";

    std::vector<int> alpha, others;
    for (int i = 0; i < n; ++i) (i >= start && i < start + k ? alpha : others).push_back(i);

    double q_sum = 0.0;
    for (std::size_t pi = 0; pi < analyses.size(); ++pi) {
        const PointAnalysis& a = analyses[pi];
        const Mat& P = eigs[pi].vectors;
        const Vec& lam = eigs[pi].values;
        const Tensor3 dB = rotate(a.derivatives.dB, P);
        const Vec C = P.transpose() * a.moebius.C;
        const Mat A = P.transpose() * a.moebius.A * P;
        double mu = 0.0;
        for (int al : alpha) mu += lam[al] / k;

        double c_alpha = 0.0;
        for (int al : alpha) c_alpha += C[al] * C[al];
        rep.c_alpha_residual = std::max(rep.c_alpha_residual, std::sqrt(c_alpha));
        for (int p : others)
            for (int q : others) {
                double s = 0.0;
                for (int al : alpha) s += dB(p, q, al) * dB(p, q, al);
                rep.b_pq_alpha_residual = std::max(rep.b_pq_alpha_residual, std::sqrt(s));
            }
        double Q = 0.0;
        for (int al : alpha) {
            double t = 2 * A(al, al) + mu * mu;
            for (int p : others) t += dB(p, al, al) * dB(p, al, al) / ((lam[p] - mu) * (lam[p] - mu));
            Q += t / k;
        }
        rep.q_values.push_back(Q);
        rep.q_normalized.push_back(Q / (1.0 + A.cwiseAbs().maxCoeff() + mu * mu));
        q_sum += Q;
        rep.dphi_residual = std::max(rep.dphi_residual, closed_dphi(a));
        rep.commutator_norm = std::max(rep.commutator_norm, closed_comm(a));
    }
    rep.q_value = q_sum / static_cast<double>(analyses.size());

    std::ostringstream why;
    if (rep.c_alpha_residual > tol) why << "C along the repeated eigenspace is " << rep.c_alpha_residual << "; ";
    if (rep.b_pq_alpha_residual > tol) why << "B_pq,alpha is " << rep.b_pq_alpha_residual << "; ";
    if (rep.route == "closed-form") {
        if (rep.dphi_residual > tol) why << "Moebius form not closed (" << rep.dphi_residual << "); ";
        if (rep.commutator_norm > tol) why << "A and B do not commute (" << rep.commutator_norm << "); ";
    }
    if (!why.str().empty()) {
        rep.classification = Classification::NotReducible;
        rep.reason = why.str();
        rep.reason.resize(rep.reason.size() - 2);
        return rep;
    }
    const auto& qn = rep.q_normalized;
    const auto small = [&](double q) { return std::abs(q) <= cfg.q_tol; };
    if (std::all_of(qn.begin(), qn.end(), small)) {
        rep.classification = Classification::Cylinder;
    } else if (std::all_of(qn.begin(), qn.end(), [&](double q) { return q < -cfg.q_tol; })) {
        rep.classification = Classification::Cone;
    } else if (std::all_of(qn.begin(), qn.end(), [&](double q) { return q > cfg.q_tol; })) {
        rep.classification = Classification::Rotational;
    } else {
        rep.classification = Classification::NotReducible;
        rep.reason = "Q does not keep one sign across probes";
    }
    return rep;
}

ClosedFormResidual closed_form_residual(const Immersion& f, const std::vector<Vec>& probes, const RunConfig& cfg,
                                        ExecutionMode mode) {
    const auto terms = map_probes(
        probes,
        [&](const Vec& p) {
            const PointAnalysis a = analyze(f, p, cfg);
            return std::pair{closed_dphi(a), closed_comm(a)};
        },
        mode);
    ClosedFormResidual out;
    for (const auto& [d, c] : terms) {
        out.dphi_residual = std::max(out.dphi_residual, d);
        out.commutator_norm = std::max(out.commutator_norm, c);
    }
    return out;
}

namespace {

struct PairTerms {
    double metric = 0.0;
    double eigen = 0.0;
    int sign = 1;
    double angle = 0.0;
};

double max_principal_angle(const Mat& U, const Mat& V) {
    Eigen::JacobiSVD<Mat> svd(U.transpose() * V);
    const double s = std::clamp(svd.singularValues().minCoeff(), 0.0, 1.0);
    return std::acos(s);
}

}  // namespace

DeformationReport deformation_pair(const Immersion& f, const Immersion& f_bar, const JetMap& correspondence,
                                   const std::vector<Vec>& probes, const RunConfig& cfg, double angle_floor,
                                   ExecutionMode mode) {
    if (probes.empty()) throw std::invalid_argument("deformation_pair: no probes");
    const int n = f.n();
    if (f_bar.n() != n) fail(ErrorCode::DomainMismatch, "the two immersions have different dimensions");
    const auto terms = map_probes(
        probes,
        [&](const Vec& p) {
            const JetVec x = variables(JetLayout::get(n, 1), p);
            const JetVec y = correspondence(x);
            if (static_cast<int>(y.size()) != n) fail(ErrorCode::DomainMismatch, "correspondence has the wrong arity");
            const Vec q = values(y);
            if (!f_bar.domain().interior(q)) {
                std::ostringstream os;
                os << "correspondence sends a probe to (" << q.transpose() << "), outside the domain of " << f_bar.label();
                fail(ErrorCode::DomainMismatch, os.str());
            }
            Mat J(n, n);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) J(j, i) = y[j].d(i);
            const PointAnalysis a = analyze(f, p, cfg);
            const PointAnalysis b = analyze(f_bar, q, cfg);
            PairTerms t;
            const Mat g_pull = J.transpose() * b.moebius.g * J;
            t.metric = (a.moebius.g - g_pull).norm() / a.moebius.g.norm();
            const Mat& E = a.moebius.frame;
            const Mat Bbar = E.transpose() * J.transpose() * b.B_coord * J * E;
            const Eig eb = eig_desc(a.moebius.B);
            const Eig plus = eig_desc(Bbar);
            const Eig minus = eig_desc(-Bbar);
            const double dp = (eb.values - plus.values).cwiseAbs().maxCoeff();
            const double dm = (eb.values - minus.values).cwiseAbs().maxCoeff();
            t.sign = dm < dp ? -1 : 1;
            t.eigen = std::min(dp, dm);
            const Eig& other = t.sign > 0 ? plus : minus;
            int off = 0;
            for (int g : multiplicity_groups(eb.values)) {
                if (g < n)
                    t.angle = std::max(t.angle, max_principal_angle(eb.vectors.middleCols(off, g),
                                                                     other.vectors.middleCols(off, g)));
                off += g;
            }
            return t;
        },
        mode);
    DeformationReport rep;
    rep.sign = terms.front().sign;
    for (const auto& t : terms) {
        rep.metric_deviation = std::max(rep.metric_deviation, t.metric);
        rep.eigen_deviation = std::max(rep.eigen_deviation, t.eigen);
        rep.direction_angle = std::max(rep.direction_angle, t.angle);
    }
    rep.eigen_match = rep.eigen_deviation <= cfg.tol_invariance;
    if (rep.metric_deviation > cfg.tol_invariance)
        rep.verdict = DeformationVerdict::MetricMismatch;
    else if (!rep.eigen_match)
        rep.verdict = DeformationVerdict::SpectrumMismatch;
    else if (rep.direction_angle <= angle_floor)
        rep.verdict = DeformationVerdict::CongruentCandidate;
    else
        rep.verdict = DeformationVerdict::DeformationCandidate;
    return rep;
}

JetMap identity_correspondence() {
    return [](const JetVec& x) { return x; };
}

JetMap flat_pair_correspondence() {
    return [](const JetVec& x) {
        const Jet r = exp(x[0]);
        const JetVec phi = sphere_chart(JetVec(x.begin() + 1, x.end()));
        JetVec out{r * phi.back()};
        for (std::size_t i = 0; i + 1 < phi.size(); ++i) out.push_back(r * phi[i]);
        return out;
    };
}

RigidityFit rigidity_fit(const std::vector<Mat>& B, const std::vector<Mat>& B_bar, double tol) {
    if (B.empty() || B.size() != B_bar.size()) throw std::invalid_argument("rigidity_fit: mismatched lists");
    RigidityFit out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (std::size_t k = 0; k < B.size(); ++k) {
        const Eig e = eig_desc(B[k]);
        const Mat M = e.vectors.transpose() * B_bar[k] * e.vectors;
        const Vec lb = M.diagonal();
        const Vec& l = e.values;
        const double mx = l.mean(), my = lb.mean();
        const double var = (l.array() - mx).square().sum();
        const double b = var > 0 ? ((l.array() - mx) * (lb.array() - my)).sum() / var : 0.0;
        const double c = my - b * mx;
        const double fit = (lb.array() - b * l.array() - c).square().sum();
        const double off = (M - Mat(M.diagonal().asDiagonal())).squaredNorm();
        out.residual = std::max(out.residual, std::sqrt(fit + off));
        sx += l.sum();
        sy += lb.sum();
        sxx += l.squaredNorm();
        sxy += l.dot(lb);
        cnt += static_cast<double>(l.size());
    }
    const double den = cnt * sxx - sx * sx;
    out.b = den != 0 ? (cnt * sxy - sx * sy) / den : 0.0;
    out.c = (sy - out.b * sx) / cnt;
    out.flagged = out.residual > 1e-2;
    out.b_sign_match = !out.flagged && std::abs(std::abs(out.b) - 1.0) <= tol && std::abs(out.c) <= tol;
    return out;
}

RigidityFit rigidity_probe(const Immersion& f, const Immersion& f_bar, const std::vector<Vec>& probes,
                           const RunConfig& cfg, ExecutionMode mode) {
    const int n = f.n();
    if (f_bar.n() != n) fail(ErrorCode::DomainMismatch, "the two immersions have different dimensions");
    const auto pairs = map_probes(
        probes,
        [&](const Vec& p) {
            const PointAnalysis a = analyze(f, p, cfg);
            for (int g : a.moebius.multiplicities)
                if (g >= n - 2 && g >= 2) fail(ErrorCode::Inapplicable, "a Moebius principal curvature has multiplicity >= n-2");
            const PointAnalysis b = analyze(f_bar, p, cfg);
            const Mat& E = a.moebius.frame;
            return std::pair<Mat, Mat>{a.moebius.B, E.transpose() * b.B_coord * E};
        },
        mode);
    std::vector<Mat> B, Bb;
    for (const auto& [x, y] : pairs) {
        B.push_back(x);
        Bb.push_back(y);
    }
    return rigidity_fit(B, Bb, cfg.tol_frame);
}

}  // namespace moebius
