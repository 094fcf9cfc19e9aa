#include "moebius/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include "moebius/errors.hpp"
#include "moebius/random.hpp"
#include "pipeline.hpp"

namespace moebius {

double lorentz_inner(const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.size() == 0) fail(ErrorCode::DimensionMismatch, "lorentz_inner: length mismatch");
    return -x[0] * y[0] + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

double lorentz_inner(const LorentzVector& x, const LorentzVector& y) { return lorentz_inner(x.coords, y.coords); }

double MoebiusFrame::residual() const {
    double r = std::max({std::abs(lorentz_inner(Y, Y)), std::abs(lorentz_inner(N, N)),
                         std::abs(lorentz_inner(N, Y) - 1.0), std::abs(lorentz_inner(xi, Y)),
                         std::abs(lorentz_inner(xi, xi) - 1.0)});
    for (std::size_t i = 0; i < Yi.size(); ++i) {
        r = std::max({r, std::abs(lorentz_inner(Yi[i], Y)), std::abs(lorentz_inner(Yi[i], N)),
                      std::abs(lorentz_inner(Yi[i], xi))});
        for (std::size_t j = 0; j < Yi.size(); ++j)
            r = std::max(r, std::abs(lorentz_inner(Yi[i], Yi[j]) - (i == j ? 1.0 : 0.0)));
    }
    return r;
}

MoebiusFrame lift_frame(const Immersion& f, const Vec& p, const RunConfig& cfg) {
    const detail::PointJets pj = detail::compute_point_jets(f, p, cfg);
    const int n = pj.n;
    const int m = n + 1;
    const JetLayout* layout = pj.F[0].layout();

    const Jet f2 = dot(pj.F, pj.F);
    JetVec Y;
    Y.push_back(pj.rho * (0.5 * (1.0 + f2)));
    Y.push_back(pj.rho * (0.5 * (1.0 - f2)));
    for (int j = 0; j < m; ++j) Y.push_back(pj.rho * pj.F[j]);
    const int dimL = m + 2;

    Mat dY(dimL, n);
    for (int a = 0; a < n; ++a)
        for (int k = 0; k < dimL; ++k) dY(k, a) = Y[k].d(a);
    const Mat ginv = pj.g_inv.values();
    Vec lap = Vec::Zero(dimL);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Vec hess(dimL);
            for (int k = 0; k < dimL; ++k) hess[k] = Y[k].dd(a, b);
            for (int c = 0; c < n; ++c) hess -= pj.gamma(c, a, b) * dY.col(c);
            lap += ginv(a, b) * hess;
        }
    (void)layout;

    MoebiusFrame fr;
    fr.Y.coords = values(Y);
    const double ll = lorentz_inner(lap, lap);
    fr.N.coords = -lap / n - ll / (2.0 * n * n) * fr.Y.coords;
    for (int i = 0; i < n; ++i) fr.Yi.push_back(LorentzVector{dY * pj.E.col(i)});

    const Vec x = values(pj.F);
    const Vec nu = values(pj.forms.normal);
    const double H = pj.forms.H.value();
    const double x2 = x.squaredNorm();
    const double xn = x.dot(nu);
    Vec xi(dimL);
    xi[0] = 0.5 * (1.0 + x2) * H + xn;
    xi[1] = 0.5 * (1.0 - x2) * H - xn;
    xi.tail(m) = H * x + nu;
    fr.xi.coords = xi;
    return fr;
}

LorentzVector curvature_sphere(const MoebiusFrame& frame, double lambda) {
    if (lambda == 0.0) return frame.xi;
    return LorentzVector{lambda * frame.Y.coords + frame.xi.coords};
}

double hyperplane_pairing(const LorentzVector& s) { return -s.coords[0] - s.coords[1]; }

bool is_hyperplane(const LorentzVector& s, double tol) { return std::abs(hyperplane_pairing(s)) < tol; }

// ---------------------------------------------------------------------------

ConformalMap ConformalMap::translation(Vec v) {
    ConformalMap m;
    m.kind = Kind::Translation;
    m.vector = std::move(v);
    return m;
}

ConformalMap ConformalMap::dilation(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("dilation factor must be positive");
    ConformalMap m;
    m.kind = Kind::Dilation;
    m.scalar = s;
    return m;
}

ConformalMap ConformalMap::orthogonal(Mat q) {
    if (q.rows() != q.cols() || (q.transpose() * q - Mat::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("orthogonal map requires Q^T Q = Id");
    ConformalMap m;
    m.kind = Kind::Orthogonal;
    m.matrix = std::move(q);
    return m;
}

ConformalMap ConformalMap::inversion(Vec center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("inversion radius must be positive");
    ConformalMap m;
    m.kind = Kind::Inversion;
    m.vector = std::move(center);
    m.scalar = radius;
    return m;
}

ConformalMap ConformalMap::compose(std::vector<ConformalMap> parts) {
    ConformalMap m;
    m.kind = Kind::Composition;
    m.parts = std::move(parts);
    return m;
}

Vec ConformalMap::apply(const Vec& x) const {
    switch (kind) {
        case Kind::Translation: return x + vector;
        case Kind::Dilation: return scalar * x;
        case Kind::Orthogonal: return matrix * x;
        case Kind::Inversion: {
            const Vec d = x - vector;
            const double d2 = d.squaredNorm();
            if (d2 < 1e-24 * scalar * scalar) fail(ErrorCode::InversionSingularity, "point maps through the inversion center");
            return vector + (scalar * scalar / d2) * d;
        }
        case Kind::Composition: {
            Vec y = x;
            for (const auto& p : parts) y = p.apply(y);
            return y;
        }
    }
    return x;
}

JetVec ConformalMap::apply(const JetVec& x) const {
    const std::size_t m = x.size();
    switch (kind) {
        case Kind::Translation: {
            JetVec y = x;
            for (std::size_t i = 0; i < m; ++i) y[i] += vector[static_cast<Eigen::Index>(i)];
            return y;
        }
        case Kind::Dilation: {
            JetVec y = x;
            for (auto& c : y) c *= scalar;
            return y;
        }
        case Kind::Orthogonal: {
            JetVec y;
            for (std::size_t i = 0; i < m; ++i) {
                Jet s = matrix(static_cast<Eigen::Index>(i), 0) * x[0];
                for (std::size_t j = 1; j < m; ++j) s += matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
                y.push_back(std::move(s));
            }
            return y;
        }
        case Kind::Inversion: {
            JetVec d = x;
            for (std::size_t i = 0; i < m; ++i) d[i] -= vector[static_cast<Eigen::Index>(i)];
            const Jet d2 = dot(d, d);
            if (d2.value() < 1e-24 * scalar * scalar) fail(ErrorCode::InversionSingularity, "point maps through the inversion center");
            const Jet factor = (scalar * scalar) * reciprocal(d2);
            JetVec y;
            for (std::size_t i = 0; i < m; ++i) y.push_back(factor * d[i] + vector[static_cast<Eigen::Index>(i)]);
            return y;
        }
        case Kind::Composition: {
            JetVec y = x;
            for (const auto& p : parts) y = p.apply(y);
            return y;
        }
    }
    return x;
}

ConformalMap ConformalMap::inverse() const {
    switch (kind) {
        case Kind::Translation: return translation(-vector);
        case Kind::Dilation: return dilation(1.0 / scalar);
        case Kind::Orthogonal: return orthogonal(matrix.transpose());
        case Kind::Inversion: return *this;
        case Kind::Composition: {
            std::vector<ConformalMap> inv;
            for (auto it = parts.rbegin(); it != parts.rend(); ++it) inv.push_back(it->inverse());
            return compose(std::move(inv));
        }
    }
    return *this;
}

bool ConformalMap::operator==(const ConformalMap& o) const {
    return kind == o.kind && vector.size() == o.vector.size() && (vector.size() == 0 || vector == o.vector) &&
           scalar == o.scalar && matrix.rows() == o.matrix.rows() && matrix.cols() == o.matrix.cols() &&
           (matrix.size() == 0 || matrix == o.matrix) && parts == o.parts;
}

Immersion apply_conformal(const ConformalMap& T, const Immersion& f) {
    const std::string label = f.label() + "+conformal";
    Immersion g = f.has_jet_map()
                      ? Immersion::analytic(
                            f.n(), f.domain(), [T, inner = f.jet_map()](const JetVec& x) { return T.apply(inner(x)); }, label)
                      : Immersion::black_box(
                            f.n(), f.domain(), [T, f](const Vec& x) { return T.apply(f.position(x)); }, label, f.fd_step());
    if (f.has_jet_map() && f.backend() == JetBackend::FiniteDiff) g = g.with_backend(JetBackend::FiniteDiff, f.fd_step());
    if (f.orientation() < 0) g = g.with_reversed_normal();
    return g;
}

ConformalMap random_conformal(std::uint64_t seed, int n) {
    const int d = n + 1;
    Rng rng(seed);
    Mat G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (R(j, j) < 0) Q.col(j) *= -1.0;
    const double s = std::exp(rng.uniform(-0.5, 0.5));
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    const bool with_inversion = rng.uniform() < 0.75;
    Vec dir(d);
    for (int i = 0; i < d; ++i) dir[i] = rng.normal();
    dir.normalize();
    const double dist = rng.uniform(6.0, 10.0);
    const double radius = rng.uniform(1.0, 3.0);

    std::vector<ConformalMap> parts;
    if (with_inversion) parts.push_back(ConformalMap::inversion(dist * dir, radius));
    parts.push_back(ConformalMap::translation(v));
    parts.push_back(ConformalMap::dilation(s));
    parts.push_back(ConformalMap::orthogonal(Q));
    return ConformalMap::compose(std::move(parts));
}

}  // namespace moebius
