#include "moebius/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "moebius/errors.hpp"

namespace moebius {

bool Box::interior(const Vec& p) const {
    if (p.size() != lo.size()) return false;
    for (int i = 0; i < p.size(); ++i)
        if (!(p[i] > lo[i] && p[i] < hi[i])) return false;
    return true;
}

bool Box::contains(const Vec& p) const {
    if (p.size() != lo.size()) return false;
    for (int i = 0; i < p.size(); ++i)
        if (!(p[i] >= lo[i] && p[i] <= hi[i])) return false;
    return true;
}

Box Box::shrunk(double fraction) const {
    Vec w = hi - lo;
    return Box{lo + fraction * w, hi - fraction * w};
}

Immersion Immersion::analytic(int n, Box domain, JetMap map, std::string label) {
    if (domain.dim() != n) fail(ErrorCode::DimensionMismatch, "domain dimension differs from n");
    Immersion f;
    f.n_ = n;
    f.domain_ = std::move(domain);
    f.jet_map_ = std::move(map);
    f.label_ = std::move(label);
    return f;
}

Immersion Immersion::black_box(int n, Box domain, PointMap map, std::string label, double fd_step) {
    if (domain.dim() != n) fail(ErrorCode::DimensionMismatch, "domain dimension differs from n");
    Immersion f;
    f.n_ = n;
    f.domain_ = std::move(domain);
    f.point_map_ = std::move(map);
    f.label_ = std::move(label);
    f.backend_ = JetBackend::FiniteDiff;
    f.fd_step_ = fd_step;
    return f;
}

Immersion Immersion::with_backend(JetBackend backend, double fd_step) const {
    if (backend == JetBackend::Taylor && !jet_map_)
        fail(ErrorCode::OrderUnsupported, "black-box immersion has no Taylor backend");
    Immersion g = *this;
    g.backend_ = backend;
    g.fd_step_ = fd_step;
    return g;
}

Immersion Immersion::with_reversed_normal() const {
    Immersion g = *this;
    g.orientation_ = -orientation_;
    return g;
}

Immersion Immersion::with_label(std::string label) const {
    Immersion g = *this;
    g.label_ = std::move(label);
    return g;
}

Vec Immersion::position(const Vec& p) const {
    if (p.size() != n_) fail(ErrorCode::DimensionMismatch, "point dimension differs from n");
    if (!jet_map_) return point_map_(p);
    const JetVec out = jet_map_(variables(JetLayout::get(n_, 0), p));
    if (static_cast<int>(out.size()) != n_ + 1) fail(ErrorCode::DimensionMismatch, "immersion output has wrong dimension");
    return values(out);
}

namespace {

// Second-order central stencils for the k-th derivative: (offset, weight).
const std::vector<std::pair<int, double>>& stencil(int k) {
    static const std::vector<std::pair<int, double>> table[6] = {
        {{0, 1.0}},
        {{-1, -0.5}, {1, 0.5}},
        {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
        {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
        {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}},
        {{-3, -0.5}, {-2, 2.0}, {-1, -2.5}, {1, 2.5}, {2, -2.0}, {3, 0.5}},
    };
    return table[k];
}

Vec fd_partial(const Immersion& f, const PointMap& eval, const Vec& p, std::span<const int> alpha, int ambient,
               std::map<std::vector<long>, Vec>& cache, double h) {
    const int n = f.n();
    Vec acc = Vec::Zero(ambient);
    std::vector<std::size_t> idx(n, 0);
    int total = 0;
    for (int a : alpha) total += a;
    while (true) {
        double w = 1.0;
        Vec q = p;
        std::vector<long> key(n + 1);
        for (int v = 0; v < n; ++v) {
            const auto& [off, wt] = stencil(alpha[v])[idx[v]];
            w *= wt;
            q[v] += off * h;
            key[v] = off;
        }
        key[n] = std::lround(h * 1e12);
        if (!f.domain().contains(q)) fail(ErrorCode::StencilOutsideDomain, "finite-difference stencil leaves the domain");
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, eval(q)).first;
        acc += w * it->second;
        int v = 0;
        for (; v < n; ++v) {
            if (++idx[v] < stencil(alpha[v]).size()) break;
            idx[v] = 0;
        }
        if (v == n) break;
    }
    return acc / std::pow(h, total);
}

}  // namespace

JetVec Immersion::taylor(const Vec& p, int order) const {
    if (p.size() != n_) fail(ErrorCode::DimensionMismatch, "point dimension differs from n");
    if (order < 0 || order > kMaxJetOrder) fail(ErrorCode::OrderUnsupported, "jet order must be in [0, 5]");
    if (!domain_.interior(p)) {
        std::ostringstream os;
        os << "point is not interior to the domain of " << label_;
        fail(ErrorCode::BoundaryPoint, os.str());
    }
    const JetLayout* layout = JetLayout::get(n_, order);
    if (backend_ == JetBackend::Taylor) {
        JetVec out = jet_map_(variables(layout, p));
        if (static_cast<int>(out.size()) != n_ + 1) fail(ErrorCode::DimensionMismatch, "immersion output has wrong dimension");
        return out;
    }
    PointMap eval = point_map_;
    if (!eval) {
        const JetMap m = jet_map_;
        const int n = n_;
        eval = [m, n](const Vec& q) { return values(m(variables(JetLayout::get(n, 0), q))); };
    }
    const int ambient = n_ + 1;
    JetVec out(ambient, Jet(layout, 0.0));
    std::map<std::vector<long>, Vec> cache;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 0; i < layout->size(); ++i) {
        const auto alpha = layout->exponents(i);
        const int deg = layout->degree(i);
        const double h = std::max(fd_step_, std::pow(eps, 1.0 / (deg + 2)));
        const Vec d = fd_partial(*this, eval, p, alpha, ambient, cache, h);
        for (int j = 0; j < ambient; ++j) out[j].coeffs_mut()[i] = d[j] / layout->factorial_weight(i);
    }
    return out;
}

Immersion reparametrize(const Immersion& f, int n_new, Box new_domain, JetMap phi, std::string label) {
    if (!f.has_jet_map()) fail(ErrorCode::OrderUnsupported, "reparametrize requires an analytic immersion");
    const JetMap inner = f.jet_map();
    Immersion g = Immersion::analytic(
        n_new, std::move(new_domain), [inner, phi](const JetVec& x) { return inner(phi(x)); }, std::move(label));
    if (f.orientation() < 0) g = g.with_reversed_normal();
    if (f.backend() == JetBackend::FiniteDiff) g = g.with_backend(JetBackend::FiniteDiff, f.fd_step());
    return g;
}

const Vec& JetTable::at(std::span<const int> alpha) const {
    for (std::size_t i = 0; i < alphas.size(); ++i)
        if (std::equal(alphas[i].begin(), alphas[i].end(), alpha.begin(), alpha.end())) return values[i];
    throw std::out_of_range("JetTable: multi-index not present");
}

JetTable jet(const Immersion& f, const Vec& p, int order) {
    const JetVec F = f.taylor(p, order);
    const JetLayout* layout = F[0].layout();
    JetTable t;
    t.n = f.n();
    t.order = order;
    for (int i = 0; i < layout->size(); ++i) {
        auto e = layout->exponents(i);
        t.alphas.emplace_back(e.begin(), e.end());
        Vec v(f.ambient_dim());
        for (int j = 0; j < f.ambient_dim(); ++j) v[j] = F[j].coeff(i) * layout->factorial_weight(i);
        t.values.push_back(std::move(v));
    }
    return t;
}

FormJets form_jets(const JetVec& F, int n, int orientation) {
    const int m = n + 1;
    const JetLayout* layout = F[0].layout();
    FormJets out;
    out.n = n;
    out.DF.resize(n);
    Mat J(m, n);
    for (int a = 0; a < n; ++a) {
        for (int j = 0; j < m; ++j) out.DF[a].push_back(F[j].derivative(a));
        for (int j = 0; j < m; ++j) J(j, a) = out.DF[a][j].value();
    }
    Eigen::JacobiSVD<Mat> svd(J);
    const auto& sv = svd.singularValues();
    if (!(sv[n - 1] > 1e-8 * sv[0])) fail(ErrorCode::DegenerateJacobian, "Jacobian is rank deficient");

    out.I = JetMatrix(n, n, layout);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            out.I(a, b) = dot(out.DF[a], out.DF[b]);
            out.I(b, a) = out.I(a, b);
        }
    out.I_inv = inverse(out.I);

    // Complete the tangent space with the coordinate axis farthest from it.
    const Mat P = J * (J.transpose() * J).inverse() * J.transpose();
    int k = 0;
    double best = -1.0;
    for (int j = 0; j < m; ++j) {
        const double r = 1.0 - P(j, j);
        if (r > best) {
            best = r;
            k = j;
        }
    }
    std::vector<Jet> z(n, Jet(layout, 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) z[a] += out.I_inv(a, b) * out.DF[b][k];
    JetVec w(m, Jet(layout, 0.0));
    for (int j = 0; j < m; ++j) {
        if (j == k) w[j] += 1.0;
        for (int a = 0; a < n; ++a) w[j] -= out.DF[a][j] * z[a];
    }
    const Jet inv_norm = pow(dot(w, w), -0.5);
    for (auto& c : w) c = c * inv_norm;
    Mat M(m, m);
    M.leftCols(n) = J;
    M.col(n) = values(w);
    const double sign = (M.determinant() >= 0.0 ? 1.0 : -1.0) * orientation;
    if (sign < 0)
        for (auto& c : w) c = -c;
    out.normal = std::move(w);

    out.II = JetMatrix(n, n, layout);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            JetVec dd;
            for (int j = 0; j < m; ++j) dd.push_back(out.DF[a][j].derivative(b));
            out.II(a, b) = dot(dd, out.normal);
            out.II(b, a) = out.II(a, b);
        }
    const JetMatrix S = out.I_inv * out.II;
    out.H = trace(S) / static_cast<double>(n);
    const Jet trS2 = trace(S * S);
    out.rho2 = (trS2 - static_cast<double>(n) * out.H * out.H) * (static_cast<double>(n) / (n - 1));
    return out;
}

EuclideanData fundamental_forms(const Immersion& f, const Vec& p) {
    const FormJets fj = form_jets(f.taylor(p, 2), f.n(), f.orientation());
    EuclideanData e;
    e.I = fj.I.values();
    e.II = fj.II.values();
    e.normal = values(fj.normal);
    e.jacobian.resize(f.ambient_dim(), f.n());
    for (int a = 0; a < f.n(); ++a) e.jacobian.col(a) = values(fj.DF[a]);
    Eigen::LLT<Mat> llt(e.I);
    const Mat L = llt.matrixL();
    const Mat Linv = L.inverse();
    e.frame = Linv.transpose();
    Mat M = Linv * e.II * Linv.transpose();
    M = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    e.k = es.eigenvalues().reverse();
    e.H = e.k.sum() / f.n();
    return e;
}

double umbilic_deficit(const Immersion& f, const Vec& p) {
    const EuclideanData e = fundamental_forms(f, p);
    const int n = f.n();
    return static_cast<double>(n) / (n - 1) * (e.k.array() - e.H).square().sum();
}

}  // namespace moebius
