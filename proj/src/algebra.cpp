#include "moebius/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/invariants.hpp"
#include "moebius/random.hpp"

namespace moebius {

Tensor4 s_tensor(const Mat& B) {
    const int n = static_cast<int>(B.rows());
    if (n <= 3) fail(ErrorCode::DimensionTooSmall, "S-tensor requires n >= 4");
    const Mat B2 = B * B;
    const double w = 1.0 / (n - 2);
    auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
    Tensor4 S(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    S(i, j, k, l) = B(i, k) * B(j, l) - B(i, l) * B(j, k) +
                                    w * (d(i, k) * B2(j, l) + d(j, l) * B2(i, k) - d(i, l) * B2(j, k) - d(j, k) * B2(i, l));
    return S;
}

double s_tensor_distance(const Mat& B, const Mat& B_bar) {
    const Tensor4 S = s_tensor(B), T = s_tensor(B_bar);
    double m = 0.0;
    for (std::size_t i = 0; i < S.data().size(); ++i) m = std::max(m, std::abs(S.data()[i] - T.data()[i]));
    return m;
}

bool commute_oracle(const Mat& B, const Mat& B_bar, double tol) {
    return (B * B_bar - B_bar * B).cwiseAbs().maxCoeff() <= tol;
}

namespace {

// Clusters of a descending list: consecutive values within tau.
std::vector<std::vector<int>> clusters(const Vec& v, double tau) {
    std::vector<std::vector<int>> out;
    for (int i = 0; i < v.size(); ++i) {
        if (out.empty() || std::abs(v[i - 1] - v[i]) > tau) out.emplace_back();
        out.back().push_back(i);
    }
    return out;
}

// Eigen-decomposition of a symmetric matrix, eigenvalues descending.
std::pair<Vec, Mat> eigh_desc(const Mat& M) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
    return {es.eigenvalues().reverse(), es.eigenvectors().rowwise().reverse()};
}

}  // namespace

DiagDecision decide_sim_diag(const Mat& B, const Mat& B_bar, double tol) {
    const int n = static_cast<int>(B.rows());
    if (B.cols() != n || B_bar.rows() != n || B_bar.cols() != n) fail(ErrorCode::DimensionMismatch, "decide_sim_diag: shape mismatch");
    if (n <= 3) fail(ErrorCode::DimensionTooSmall, "decide_sim_diag requires n >= 4");
    const double sdist = s_tensor_distance(B, B_bar);
    if (sdist > tol) {
        std::ostringstream os;
        os << "S-tensors differ by " << sdist;
        fail(ErrorCode::STensorMismatch, os.str());
    }
    const double scale = 1.0 + std::max(B.cwiseAbs().maxCoeff(), B_bar.cwiseAbs().maxCoeff());
    const double coupling_tol = tol * scale;

    // Diagonalize B_bar, then B inside each B_bar eigenspace.
    auto [lam_bar, P] = eigh_desc(B_bar);
    const double tau = multiplicity_tolerance(lam_bar);
    const auto bar_clusters = clusters(lam_bar, tau);
    for (const auto& cl : bar_clusters) {
        if (cl.size() < 2) continue;
        const int k = static_cast<int>(cl.size());
        Mat Q(n, k);
        for (int a = 0; a < k; ++a) Q.col(a) = P.col(cl[a]);
        auto [mu, W] = eigh_desc(Q.transpose() * B * Q);
        Mat Qn = Q * W;
        // Within equal eigenvalues of the compressed B, rotate so the coupling
        // to the other directions is carried by as few vectors as possible.
        for (const auto& sub : clusters(mu, tau)) {
            if (sub.size() < 2) continue;
            const int s = static_cast<int>(sub.size());
            Mat U(n, s);
            for (int a = 0; a < s; ++a) U.col(a) = Qn.col(sub[a]);
            Mat outside(n, n - s);
            int c = 0;
            for (int j = 0; j < n; ++j) {
                if (std::find(cl.begin(), cl.end(), j) != cl.end()) {
                    const int pos = static_cast<int>(std::find(cl.begin(), cl.end(), j) - cl.begin());
                    if (std::find(sub.begin(), sub.end(), pos) != sub.end()) continue;
                    outside.col(c++) = Qn.col(pos);
                } else {
                    outside.col(c++) = P.col(j);
                }
            }
            const Mat coupling = U.transpose() * B * outside.leftCols(c);
            Eigen::JacobiSVD<Mat> svd(coupling, Eigen::ComputeFullU);
            U = U * svd.matrixU();
            for (int a = 0; a < s; ++a) Qn.col(sub[a]) = U.col(a);
        }
        for (int a = 0; a < k; ++a) P.col(cl[a]) = Qn.col(a);
    }

    const Mat Bp = P.transpose() * B * P;
    const Mat Bbp = P.transpose() * B_bar * P;

    // Connected components of the off-diagonal coupling graph.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(Bp(i, j)) > coupling_tol) parent[find(i)] = find(j);
    std::vector<std::vector<int>> comps(n);
    for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
    std::vector<std::vector<int>> coupled;
    for (auto& c : comps)
        if (c.size() > 1) coupled.push_back(c);

    DiagDecision d;
    if (coupled.empty()) {
        d.verdict = DiagDecision::Verdict::SimultaneouslyDiagonalizable;
        d.basis = P;
        d.bar_diagonal = Bbp.diagonal();
        return d;
    }
    if (coupled.size() != 1 || coupled[0].size() != 2) {
        std::ostringstream os;
        os << "coupling does not reduce to a single 2x2 block (" << coupled.size() << " components)";
        fail(ErrorCode::NumericalAmbiguity, os.str());
    }
    std::vector<int> order = coupled[0];
    for (int i = 0; i < n; ++i)
        if (i != order[0] && i != order[1]) order.push_back(i);
    Mat basis(n, n);
    for (int i = 0; i < n; ++i) basis.col(i) = P.col(order[i]);
    const Mat Bb = basis.transpose() * B * basis;
    const Mat Bbb = basis.transpose() * B_bar * basis;
    d.verdict = DiagDecision::Verdict::BlockCase;
    d.basis = basis;
    d.block = Bb.topLeftCorner(2, 2);
    d.bar_diagonal = Bbb.diagonal();
    const Vec rest = Bb.diagonal().tail(n - 2);
    const Vec rest_bar = d.bar_diagonal.tail(n - 2);
    d.mu = rest.mean();
    d.mu_bar = rest_bar.mean();
    const double spread = std::max(rest.maxCoeff() - rest.minCoeff(), rest_bar.maxCoeff() - rest_bar.minCoeff());
    const double check_tol = std::max(tol, 1e-8) * scale;
    if (spread > check_tol) fail(ErrorCode::NumericalAmbiguity, "trailing block is not a multiple of the identity");
    if (std::abs(d.mu - d.mu_bar) <= check_tol)
        d.mu_bar_sign = 1;
    else if (std::abs(d.mu + d.mu_bar) <= check_tol)
        d.mu_bar_sign = -1;
    else
        fail(ErrorCode::NumericalAmbiguity, "trailing eigenvalues violate mu = +-mu_bar");
    return d;
}

Mat block_family(double lambda1, double lambda2, double mu, int n, double theta) {
    if (n < 3) fail(ErrorCode::DimensionTooSmall, "block_family requires n >= 3");
    const double tr = lambda1 + lambda2 + (n - 2) * mu;
    if (std::abs(tr) > 1e-12) fail(ErrorCode::TraceNotZero, "block_family requires a trace-free triple");
    const double c = std::cos(theta), s = std::sin(theta);
    Mat M = Mat::Zero(n, n);
    M(0, 0) = lambda1 * c * c + lambda2 * s * s;
    M(1, 1) = lambda1 * s * s + lambda2 * c * c;
    M(0, 1) = M(1, 0) = (lambda1 - lambda2) * c * s;
    for (int i = 2; i < n; ++i) M(i, i) = mu;
    return M;
}

Mat random_orthogonal(Rng& rng, int n) {
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Mat> qr(G);
    return qr.householderQ();
}

Mat random_symmetric(Rng& rng, int n) {
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    return 0.5 * (G + G.transpose());
}

TrialPair make_trial(TrialPair::Kind kind, int n, std::uint64_t seed) {
    Rng rng(seed);
    TrialPair t{kind, Mat(), Mat()};
    const Mat Q = random_orthogonal(rng, n);
    switch (kind) {
        case TrialPair::Kind::Commuting: {
            const int variant = static_cast<int>(rng.next() % 3);
            if (variant == 0 || (variant == 1 && n != 4)) {
                t.B = random_symmetric(rng, n);
                t.B_bar = (rng.uniform() < 0.5 ? -1.0 : 1.0) * t.B;
            } else if (variant == 1) {
                // diag(l1,l2,l3,l4) against diag(l2,l1,l4,l3); S-equal when trace-free.
                Vec l(4);
                for (int i = 0; i < 3; ++i) l[i] = rng.normal();
                l[3] = -(l[0] + l[1] + l[2]);
                t.B = Q.transpose() * l.asDiagonal() * Q;
                Vec lp(4);
                lp << l[1], l[0], l[3], l[2];
                t.B_bar = Q.transpose() * lp.asDiagonal() * Q;
            } else {
                const double l1 = rng.normal(), l2 = rng.normal();
                const double mu = -(l1 + l2) / (n - 2);
                t.B = Q.transpose() * block_family(l1, l2, mu, n, 0.0) * Q;
                t.B_bar = Q.transpose() * block_family(l1, l2, mu, n, std::numbers::pi / 2) * Q;
            }
            break;
        }
        case TrialPair::Kind::ThetaBlock: {
            const double l1 = rng.normal(), l2 = rng.normal();
            const double mu = -(l1 + l2) / (n - 2);
            const double theta = rng.uniform(0.2, std::numbers::pi / 2 - 0.2);
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            t.B = Q.transpose() * block_family(l1, l2, mu, n, 0.0) * Q;
            t.B_bar = sign * (Q.transpose() * block_family(l1, l2, mu, n, theta) * Q);
            break;
        }
        case TrialPair::Kind::Mismatched: {
            t.B = random_symmetric(rng, n);
            t.B_bar = random_symmetric(rng, n);
            break;
        }
    }
    t.B = 0.5 * (t.B + t.B.transpose());
    t.B_bar = 0.5 * (t.B_bar + t.B_bar.transpose());
    return t;
}

}  // namespace moebius
