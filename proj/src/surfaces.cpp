#include <cmath>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"

namespace moebius {

namespace {

JetVec tau_jets(const JetVec& x) {
    const Jet inv = reciprocal(x[2]);
    const Jet r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return {0.5 * (1.0 + r2) * inv, 0.5 * (1.0 - r2) * inv, x[0] * inv, x[1] * inv};
}

double lorentz4(const Vec& a, const Vec& b) { return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

Vec cross3(const Vec& a, const Vec& b) {
    Vec c(3);
    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
    return c;
}

struct SurfaceJets {
    Vec X, Xa, Xb, Xaa, Xab, Xbb;
};

SurfaceJets derivatives(const JetVec& F) {
    const int d = static_cast<int>(F.size());
    SurfaceJets s{Vec(d), Vec(d), Vec(d), Vec(d), Vec(d), Vec(d)};
    for (int i = 0; i < d; ++i) {
        s.X[i] = F[i].value();
        s.Xa[i] = F[i].d(0);
        s.Xb[i] = F[i].d(1);
        s.Xaa[i] = F[i].dd(0, 0);
        s.Xab[i] = F[i].dd(0, 1);
        s.Xbb[i] = F[i].dd(1, 1);
    }
    return s;
}

void finish(SurfaceData& out, double curvature_offset) {
    Eigen::LLT<Mat> llt(out.I);
    const Mat Linv = llt.matrixL().solve(Mat::Identity(2, 2));
    const Mat S = Linv * out.II * Linv.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
    out.k = es.eigenvalues().reverse();
    out.H = 0.5 * out.k.sum();
    out.K = curvature_offset + out.II.determinant() / out.I.determinant();
}

void check_factor(const SurfaceSpec& u, double c, int n) {
    const Box inner = u.domain.shrunk(0.1);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double a = inner.lo[0] + (inner.hi[0] - inner.lo[0]) * i / 4.0;
            const double b = inner.lo[1] + (inner.hi[1] - inner.lo[1]) * j / 4.0;
            const SurfaceData sd = surface_data(u, a, b);
            const double factor = 4 * sd.H * sd.H - 2.0 * n / (n - 1) * (sd.K + c);
            if (!(factor > 1e-8)) {
                std::ostringstream os;
                os << "conformal factor " << factor << " at (" << a << ", " << b << ") of " << u.label;
                fail(ErrorCode::DegenerateConformalFactor, os.str());
            }
        }
}

Box extend(const Box& base, int n, double lo, double hi) {
    Box out{Vec(n), Vec(n)};
    for (int i = 0; i < n; ++i) {
        out.lo[i] = i < base.dim() ? base.lo[i] : lo;
        out.hi[i] = i < base.dim() ? base.hi[i] : hi;
    }
    return out;
}

}  // namespace

SurfaceData surface_data(const SurfaceSpec& u, double a, double b) {
    Vec p(2);
    p << a, b;
    const JetVec x = variables(JetLayout::get(2, 2), p);
    const JetVec F = u.map(x);
    SurfaceData out;
    out.I = Mat(2, 2);
    out.II = Mat(2, 2);
    switch (u.ambient) {
        case SurfaceAmbient::Euclidean3: {
            const SurfaceJets s = derivatives(F);
            out.normal = cross3(s.Xa, s.Xb).normalized();
            out.I << s.Xa.dot(s.Xa), s.Xa.dot(s.Xb), s.Xa.dot(s.Xb), s.Xb.dot(s.Xb);
            out.II << s.Xaa.dot(out.normal), s.Xab.dot(out.normal), s.Xab.dot(out.normal), s.Xbb.dot(out.normal);
            finish(out, 0.0);
            break;
        }
        case SurfaceAmbient::Sphere3: {
            const SurfaceJets s = derivatives(F);
            Mat M(3, 4);
            M.row(0) = s.X.transpose();
            M.row(1) = s.Xa.transpose();
            M.row(2) = s.Xb.transpose();
            Vec nu(4);
            for (int i = 0; i < 4; ++i) {
                Mat minor(3, 3);
                for (int c = 0, k = 0; c < 4; ++c)
                    if (c != i) minor.col(k++) = M.col(c);
                nu[i] = ((i % 2) ? -1.0 : 1.0) * minor.determinant();
            }
            out.normal = nu.normalized();
            out.I << s.Xa.dot(s.Xa), s.Xa.dot(s.Xb), s.Xa.dot(s.Xb), s.Xb.dot(s.Xb);
            out.II << s.Xaa.dot(out.normal), s.Xab.dot(out.normal), s.Xab.dot(out.normal), s.Xbb.dot(out.normal);
            finish(out, 1.0);
            break;
        }
        case SurfaceAmbient::HyperbolicHalfSpace3: {
            const SurfaceJets e = derivatives(F);
            if (!(e.X[2] > 0)) fail(ErrorCode::HalfSpaceViolation, "surface leaves the upper half-space");
            const Vec eta = e.X[2] * cross3(e.Xa, e.Xb).normalized();
            // Lorentz unit normal: the push-forward of eta under tau.
            const JetVec xj = variables(JetLayout::get(3, 1), e.X);
            const JetVec t = tau_jets(xj);
            Vec w = Vec::Zero(4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 3; ++j) w[i] += t[i].d(j) * eta[j];
            const SurfaceJets s = derivatives(tau_jets(F));
            out.normal = eta;
            out.I << lorentz4(s.Xa, s.Xa), lorentz4(s.Xa, s.Xb), lorentz4(s.Xa, s.Xb), lorentz4(s.Xb, s.Xb);
            out.II << lorentz4(s.Xaa, w), lorentz4(s.Xab, w), lorentz4(s.Xab, w), lorentz4(s.Xbb, w);
            finish(out, -1.0);
            break;
        }
    }
    return out;
}

static Box box2(double a0, double a1, double b0, double b1) {
    Vec lo(2), hi(2);
    lo << a0, b0;
    hi << a1, b1;
    return Box{lo, hi};
}

SurfaceSpec catenoid_surface() {
    SurfaceSpec s;
    s.ambient = SurfaceAmbient::Euclidean3;
    s.map = [](const JetVec& x) { return JetVec{cosh(x[0]) * cos(x[1]), cosh(x[0]) * sin(x[1]), x[0]}; };
    s.conjugate = [](const JetVec& x) { return JetVec{sinh(x[0]) * sin(x[1]), -1.0 * sinh(x[0]) * cos(x[1]), x[1]}; };
    s.domain = box2(-1.0, 1.0, -1.5, 1.5);
    s.label = "catenoid";
    s.minimal = true;
    return s;
}

SurfaceSpec round_cylinder_surface(double radius) {
    SurfaceSpec s;
    s.map = [radius](const JetVec& x) { return JetVec{radius * cos(x[0]), radius * sin(x[0]), x[1]}; };
    s.domain = box2(-1.5, 1.5, -1.0, 1.0);
    s.label = "round cylinder";
    return s;
}

SurfaceSpec plane_surface() {
    SurfaceSpec s;
    s.map = [](const JetVec& x) { return JetVec{x[0], x[1], 0.0 * x[0]}; };
    s.domain = box2(-1.0, 1.0, -1.0, 1.0);
    s.label = "plane";
    s.minimal = true;
    s.conjugate = [](const JetVec& x) { return JetVec{-1.0 * x[1], x[0], 0.0 * x[0]}; };
    return s;
}

SurfaceSpec clifford_torus(double r1) {
    if (!(r1 > 0 && r1 < 1)) throw std::invalid_argument("clifford_torus: r1 must lie in (0, 1)");
    const double r2 = std::sqrt(1 - r1 * r1);
    SurfaceSpec s;
    s.ambient = SurfaceAmbient::Sphere3;
    s.map = [r1, r2](const JetVec& x) {
        return JetVec{r1 * cos(x[0]), r1 * sin(x[0]), r2 * cos(x[1]), r2 * sin(x[1])};
    };
    s.domain = box2(-1.2, 1.2, -1.2, 1.2);
    s.label = "clifford torus";
    return s;
}

SurfaceSpec great_sphere() {
    SurfaceSpec s;
    s.ambient = SurfaceAmbient::Sphere3;
    s.map = [](const JetVec& x) {
        return JetVec{cos(x[0]) * cos(x[1]), cos(x[0]) * sin(x[1]), sin(x[0]), 0.0 * x[0]};
    };
    s.domain = box2(-1.0, 1.0, -1.5, 1.5);
    s.label = "great sphere";
    return s;
}

SurfaceSpec halfspace_graph(std::function<Jet(const Jet&, const Jet&)> height, Box domain, std::string label) {
    SurfaceSpec s;
    s.ambient = SurfaceAmbient::HyperbolicHalfSpace3;
    s.map = [height = std::move(height)](const JetVec& x) { return JetVec{x[0], x[1], height(x[0], x[1])}; };
    s.domain = std::move(domain);
    s.label = std::move(label);
    return s;
}

SurfaceSpec associated_family(const SurfaceSpec& surface, double theta) {
    if (!surface.minimal || !surface.conjugate)
        fail(ErrorCode::NotMinimal, surface.label + " carries no conjugate minimal surface");
    SurfaceSpec s = surface;
    const double c = std::cos(theta), sn = std::sin(theta);
    s.map = [f = surface.map, g = surface.conjugate, c, sn](const JetVec& x) {
        const JetVec a = f(x), b = g(x);
        JetVec out;
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(c * a[i] + sn * b[i]);
        return out;
    };
    s.conjugate = [f = surface.map, g = surface.conjugate, c, sn](const JetVec& x) {
        const JetVec a = f(x), b = g(x);
        JetVec out;
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(c * b[i] - sn * a[i]);
        return out;
    };
    std::ostringstream os;
    os << surface.label << " associate theta=" << theta;
    s.label = os.str();
    return s;
}

Immersion cylinder(const SurfaceSpec& u, int n) {
    if (n < 4) fail(ErrorCode::DimensionTooSmall, "cylinder over a surface needs n >= 4");
    if (u.ambient != SurfaceAmbient::Euclidean3) fail(ErrorCode::AmbientMismatch, "cylinder needs a surface in R^3");
    check_factor(u, 0.0, n);
    return Immersion::analytic(
        n, extend(u.domain, n, -1.0, 1.0),
        [map = u.map](const JetVec& x) {
            JetVec out = map(JetVec(x.begin(), x.begin() + 2));
            out.insert(out.end(), x.begin() + 2, x.end());
            return out;
        },
        "cylinder over " + u.label);
}

Immersion cone(const SurfaceSpec& u, int n) {
    if (n < 4) fail(ErrorCode::DimensionTooSmall, "cone over a surface needs n >= 4");
    if (u.ambient != SurfaceAmbient::Sphere3) fail(ErrorCode::AmbientMismatch, "cone needs a surface in S^3");
    check_factor(u, -1.0, n);
    Box dom = extend(u.domain, n, -1.0, 1.0);
    dom.lo[2] = 0.5;
    dom.hi[2] = 2.0;
    return Immersion::analytic(
        n, dom,
        [map = u.map](const JetVec& x) {
            JetVec out = map(JetVec(x.begin(), x.begin() + 2));
            for (auto& c : out) c = x[2] * c;
            out.insert(out.end(), x.begin() + 3, x.end());
            return out;
        },
        "cone over " + u.label);
}

Immersion rotational(const SurfaceSpec& u, int n) {
    if (n < 4) fail(ErrorCode::DimensionTooSmall, "rotational hypersurface over a surface needs n >= 4");
    if (u.ambient != SurfaceAmbient::HyperbolicHalfSpace3)
        fail(ErrorCode::AmbientMismatch, "rotational construction needs a surface in the upper half-space");
    check_factor(u, 1.0, n);
    return Immersion::analytic(
        n, extend(u.domain, n, -0.8, 0.8),
        [map = u.map](const JetVec& x) {
            const JetVec y = map(JetVec(x.begin(), x.begin() + 2));
            JetVec out{y[0], y[1]};
            for (const auto& c : sphere_chart(JetVec(x.begin() + 2, x.end()))) out.push_back(y[2] * c);
            return out;
        },
        "rotational over " + u.label);
}

Vec halfspace_to_hyperboloid(const Vec& x) {
    if (x.size() != 3) fail(ErrorCode::DimensionMismatch, "half-space points have 3 coordinates");
    if (!(x[2] > 0)) fail(ErrorCode::HalfSpaceViolation, "x3 must be positive");
    const double r2 = x.squaredNorm();
    Vec y(4);
    y << (1 + r2) / (2 * x[2]), (1 - r2) / (2 * x[2]), x[0] / x[2], x[1] / x[2];
    return y;
}

Vec hyperboloid_to_halfspace(const Vec& y) {
    if (y.size() != 4) fail(ErrorCode::DimensionMismatch, "hyperboloid points have 4 coordinates");
    const double s = y[0] + y[1];
    if (!(s > 0)) fail(ErrorCode::HalfSpaceViolation, "point is not on the upper sheet");
    Vec x(3);
    x << y[2] / s, y[3] / s, 1 / s;
    return x;
}

JetVec sphere_chart(const JetVec& w) {
    if (w.empty()) throw std::invalid_argument("sphere_chart: empty chart");
    Jet q = w[0] * w[0];
    for (std::size_t i = 1; i < w.size(); ++i) q += w[i] * w[i];
    const Jet inv = reciprocal(1.0 + q);
    JetVec out;
    for (const auto& wi : w) out.push_back(2.0 * wi * inv);
    out.push_back((1.0 - q) * inv);
    return out;
}

double UnifiedMetric::factor(double a, double b) const {
    const SurfaceData sd = surface_data(surface, a, b);
    return 4 * sd.H * sd.H - 2.0 * n / (n - 1) * (sd.K + c);
}

Mat UnifiedMetric::metric(const Vec& p) const {
    if (p.size() != n) fail(ErrorCode::DimensionMismatch, "metric point has the wrong dimension");
    const SurfaceData sd = surface_data(surface, p[0], p[1]);
    Mat g = Mat::Zero(n, n);
    g.topLeftCorner(2, 2) = sd.I;
    if (c == 0.0) {
        for (int i = 2; i < n; ++i) g(i, i) = 1.0;
    } else if (c < 0) {
        for (int i = 2; i < n; ++i) g(i, i) = 1.0 / (p[2] * p[2]);
    } else {
        const double q = p.tail(n - 2).squaredNorm();
        for (int i = 2; i < n; ++i) g(i, i) = 4.0 / ((1 + q) * (1 + q));
    }
    return (4 * sd.H * sd.H - 2.0 * n / (n - 1) * (sd.K + c)) * g;
}

UnifiedMetric unified_metric(const SurfaceSpec& u, double c, int n) {
    const SurfaceAmbient want = c == 0.0 ? SurfaceAmbient::Euclidean3
                                : c < 0  ? SurfaceAmbient::Sphere3
                                         : SurfaceAmbient::HyperbolicHalfSpace3;
    if ((c != 0.0 && c != 1.0 && c != -1.0) || u.ambient != want)
        fail(ErrorCode::AmbientMismatch, "c does not match the surface ambient");
    return UnifiedMetric{u, c, n};
}

}  // namespace moebius
