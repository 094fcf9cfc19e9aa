#include <array>
#include <cmath>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"

namespace moebius {

namespace {

constexpr double kStep = 1e-3;
constexpr int kSeriesOrder = 12;

int ambient_dim(CurveAmbient a) { return a == CurveAmbient::Euclidean2 ? 2 : 3; }

double metric_sign(CurveAmbient a, int i) { return (a == CurveAmbient::HyperbolicPlane2 && i == 0) ? -1.0 : 1.0; }

struct State {
    Vec gamma;
    Vec T;
    Vec N;
};

double inner(CurveAmbient a, const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += metric_sign(a, i) * x[i] * y[i];
    return s;
}

State initial_state(CurveAmbient a) {
    State st;
    switch (a) {
        case CurveAmbient::Euclidean2:
            st.gamma = Vec::Zero(2);
            st.T = Vec::Unit(2, 0);
            st.N = Vec::Unit(2, 1);
            break;
        case CurveAmbient::Sphere2:
            st.gamma = Vec::Unit(3, 2);
            st.T = Vec::Unit(3, 0);
            st.N = Vec::Unit(3, 1);
            break;
        case CurveAmbient::HyperbolicPlane2:
            st.gamma = Vec::Unit(3, 0);
            st.T = Vec::Unit(3, 1);
            st.N = Vec::Unit(3, 2);
            break;
    }
    return st;
}

void reorthonormalize(CurveAmbient a, State& st) {
    switch (a) {
        case CurveAmbient::Euclidean2:
            st.T.normalize();
            st.N = Vec(2);
            st.N << -st.T[1], st.T[0];
            break;
        case CurveAmbient::Sphere2: {
            st.gamma.normalize();
            st.T -= st.T.dot(st.gamma) * st.gamma;
            st.T.normalize();
            Eigen::Vector3d g = st.gamma, t = st.T;
            st.N = g.cross(t);
            break;
        }
        case CurveAmbient::HyperbolicPlane2: {
            st.gamma /= std::sqrt(-inner(a, st.gamma, st.gamma));
            st.T += inner(a, st.T, st.gamma) * st.gamma;
            st.T /= std::sqrt(inner(a, st.T, st.T));
            st.N += inner(a, st.N, st.gamma) * st.gamma;
            st.N -= inner(a, st.N, st.T) * st.T;
            st.N /= std::sqrt(inner(a, st.N, st.N));
            break;
        }
    }
}

}  // namespace

struct CurveSpec::Grid {
    double s_start = 0.0;
    std::vector<State> nodes;
};

double CurveSpec::epsilon() const {
    switch (ambient_) {
        case CurveAmbient::Euclidean2: return 0.0;
        case CurveAmbient::Sphere2: return 1.0;
        case CurveAmbient::HyperbolicPlane2: return -1.0;
    }
    return 0.0;
}

CurveSpec::CurveSpec(CurveAmbient ambient, KappaFn kappa, double s_lo, double s_hi, std::string label)
    : ambient_(ambient), kappa_(std::move(kappa)), s_lo_(s_lo), s_hi_(s_hi), label_(std::move(label)) {
    if (!(s_hi > s_lo)) throw std::invalid_argument("CurveSpec: empty parameter interval");
    const double eps = epsilon();
    const JetLayout* l0 = JetLayout::get(1, 0);
    auto k = [&](double s) { return kappa_(Jet::variable(l0, 0, s)).value(); };
    auto rhs = [&](double s, const State& st) {
        const double ks = k(s);
        return State{st.T, -eps * st.gamma + ks * st.N, -ks * st.T};
    };
    auto rk4 = [&](double s, const State& st, double h) {
        auto add = [](const State& a, const State& b, double w) {
            return State{a.gamma + w * b.gamma, a.T + w * b.T, a.N + w * b.N};
        };
        const State k1 = rhs(s, st);
        const State k2 = rhs(s + h / 2, add(st, k1, h / 2));
        const State k3 = rhs(s + h / 2, add(st, k2, h / 2));
        const State k4 = rhs(s + h, add(st, k3, h));
        State out{st.gamma + h / 6 * (k1.gamma + 2 * k2.gamma + 2 * k3.gamma + k4.gamma),
                  st.T + h / 6 * (k1.T + 2 * k2.T + 2 * k3.T + k4.T), st.N + h / 6 * (k1.N + 2 * k2.N + 2 * k3.N + k4.N)};
        reorthonormalize(ambient_, out);
        return out;
    };

    const double mid = 0.5 * (s_lo + s_hi);
    const double pad = 0.02 * (s_hi - s_lo) + 2 * kStep;
    const int back = static_cast<int>(std::ceil((mid - (s_lo - pad)) / kStep));
    const int fwd = static_cast<int>(std::ceil(((s_hi + pad) - mid) / kStep));
    auto grid = std::make_shared<Grid>();
    grid->s_start = mid - back * kStep;
    grid->nodes.resize(static_cast<std::size_t>(back + fwd + 1));
    grid->nodes[back] = initial_state(ambient_);
    for (int i = back; i < back + fwd; ++i) grid->nodes[i + 1] = rk4(mid + (i - back) * kStep, grid->nodes[i], kStep);
    for (int i = back; i > 0; --i) grid->nodes[i - 1] = rk4(mid + (i - back) * kStep, grid->nodes[i], -kStep);
    grid_ = std::move(grid);
}

double CurveSpec::kappa(double s) const { return kappa_(Jet::variable(JetLayout::get(1, 0), 0, s)).value(); }

std::vector<double> CurveSpec::kappa_derivatives(double s, int order) const {
    const JetLayout* l = JetLayout::get(1, order);
    const Jet k = kappa_(Jet::variable(l, 0, s));
    std::vector<double> out;
    double fact = 1.0;
    for (int i = 0; i <= order; ++i) {
        if (i > 0) fact *= i;
        out.push_back(k.coeff(i) * fact);
    }
    return out;
}

JetVec CurveSpec::position(const Jet& s) const {
    const double s0 = s.value();
    const Grid& g = *grid_;
    const long idx = std::lround((s0 - g.s_start) / kStep);
    if (idx < 0 || idx >= static_cast<long>(g.nodes.size())) {
        std::ostringstream os;
        os << "curve parameter " << s0 << " outside the integrated range of " << label_;
        fail(ErrorCode::BoundaryPoint, os.str());
    }
    const double sk = g.s_start + static_cast<double>(idx) * kStep;
    const State& st = g.nodes[static_cast<std::size_t>(idx)];
    const int d = ambient_dim(ambient_);
    const double eps = epsilon();

    // Taylor coefficients of (gamma, T, N) about the node from the frame equations.
    const Jet kj = kappa_(Jet::variable(JetLayout::get(1, kSeriesOrder), 0, sk));
    std::vector<Vec> cg(kSeriesOrder + 1), cT(kSeriesOrder + 1), cN(kSeriesOrder + 1);
    cg[0] = st.gamma;
    cT[0] = st.T;
    cN[0] = st.N;
    for (int m = 0; m < kSeriesOrder; ++m) {
        Vec kN = Vec::Zero(d), kT = Vec::Zero(d);
        for (int i = 0; i <= m; ++i) {
            kN += kj.coeff(i) * cN[m - i];
            kT += kj.coeff(i) * cT[m - i];
        }
        cg[m + 1] = cT[m] / (m + 1);
        cT[m + 1] = (-eps * cg[m] + kN) / (m + 1);
        cN[m + 1] = -kT / (m + 1);
    }
    // Re-expand about s0.
    const int order = s.layout()->order();
    const double delta = s0 - sk;
    JetVec out;
    for (int comp = 0; comp < d; ++comp) {
        std::vector<double> series(order + 1, 0.0);
        for (int j = 0; j <= order; ++j) {
            double acc = 0.0;
            double binom = 1.0;  // C(k, j), k = j first
            double dp = 1.0;
            for (int k = j; k <= kSeriesOrder; ++k) {
                acc += binom * cg[k][comp] * dp;
                binom = binom * (k + 1) / (k + 1 - j);
                dp *= delta;
            }
            series[j] = acc;
        }
        out.push_back(Jet::compose(series, s));
    }
    return out;
}

Vec CurveSpec::point(double s) const { return values(position(Jet::variable(JetLayout::get(1, 0), 0, s))); }

Vec CurveSpec::planar_point(double s) const {
    const Vec p = point(s);
    if (ambient_ != CurveAmbient::HyperbolicPlane2) return p;
    Vec q(2);
    q << p[2] / (p[0] + p[1]), 1.0 / (p[0] + p[1]);
    return q;
}

KappaFn spiral_kappa(SpiralKind kind, double c) {
    switch (kind) {
        case SpiralKind::Log:
            if (!(c < 0)) fail(ErrorCode::SignMismatch, "log spiral requires c < 0");
            return [a = std::sqrt(-c)](const Jet& s) { return reciprocal(a * s); };
        case SpiralKind::Sin:
            if (!(c < 0)) fail(ErrorCode::SignMismatch, "sin spiral requires c < 0");
            return [a = std::sqrt(-c)](const Jet& s) { return reciprocal(a * sin(s)); };
        case SpiralKind::Sinh:
            if (!(c < 0)) fail(ErrorCode::SignMismatch, "sinh spiral requires c < 0");
            return [a = std::sqrt(-c)](const Jet& s) { return reciprocal(a * sinh(s)); };
        case SpiralKind::Cosh:
            if (!(c > 0)) fail(ErrorCode::SignMismatch, "cosh spiral requires c > 0");
            return [a = std::sqrt(c)](const Jet& s) { return reciprocal(a * cosh(s)); };
        case SpiralKind::Exp:
            if (c != 0.0) fail(ErrorCode::SignMismatch, "exp spiral requires c = 0");
            return [](const Jet& s) { return exp(s); };
    }
    fail(ErrorCode::SignMismatch, "unknown spiral kind");
}

std::string spiral_kind_name(SpiralKind kind) {
    switch (kind) {
        case SpiralKind::Log: return "log";
        case SpiralKind::Sin: return "sin";
        case SpiralKind::Sinh: return "sinh";
        case SpiralKind::Cosh: return "cosh";
        case SpiralKind::Exp: return "exp";
    }
    return "?";
}

std::optional<SpiralKind> parse_spiral_kind(const std::string& name) {
    for (SpiralKind k : {SpiralKind::Log, SpiralKind::Sin, SpiralKind::Sinh, SpiralKind::Cosh, SpiralKind::Exp})
        if (spiral_kind_name(k) == name) return k;
    return std::nullopt;
}

CurveSpec spiral_curve(SpiralKind kind, double c, double s_lo, double s_hi) {
    KappaFn k = spiral_kappa(kind, c);
    CurveAmbient a = CurveAmbient::HyperbolicPlane2;
    if (kind == SpiralKind::Log) a = CurveAmbient::Euclidean2;
    if (kind == SpiralKind::Sin) a = CurveAmbient::Sphere2;
    return CurveSpec(a, std::move(k), s_lo, s_hi, spiral_kind_name(kind) + "-spiral");
}

CurveSpec spiral_curve(SpiralKind kind, double c) {
    switch (kind) {
        case SpiralKind::Log: return spiral_curve(kind, c, 0.5, 2.0);
        case SpiralKind::Sin: return spiral_curve(kind, c, 0.6, 2.4);
        case SpiralKind::Sinh: return spiral_curve(kind, c, 0.5, 2.0);
        case SpiralKind::Cosh: return spiral_curve(kind, c, -1.0, 1.0);
        case SpiralKind::Exp: return spiral_curve(kind, c, -1.0, 0.5);
    }
    fail(ErrorCode::SignMismatch, "unknown spiral kind");
}

CurveSpec circle_curve(double kappa0, double s_lo, double s_hi) {
    return CurveSpec(
        CurveAmbient::Euclidean2, [kappa0](const Jet& s) { return 0.0 * s + kappa0; }, s_lo, s_hi, "circle");
}

double spiral_residual(const CurveSpec& curve, double c, double s) {
    const auto k = curve.kappa_derivatives(s, 1);
    const double inv = 1.0 / k[0];
    const double dinv = -k[1] / (k[0] * k[0]);
    return dinv * dinv + curve.epsilon() * inv * inv + c;
}

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::Cylinder: return "cylinder";
        case Construction::Cone: return "cone";
        case Construction::Rotational: return "rotational";
    }
    return "?";
}

Immersion curve_hypersurface(const CurveSpec& curve, Construction construction, int n) {
    if (n < 3) fail(ErrorCode::DimensionTooSmall, "curve hypersurfaces need n >= 3");
    const CurveAmbient want = construction == Construction::Cylinder ? CurveAmbient::Euclidean2
                              : construction == Construction::Cone   ? CurveAmbient::Sphere2
                                                                     : CurveAmbient::HyperbolicPlane2;
    if (curve.ambient() != want) fail(ErrorCode::AmbientMismatch, "curve ambient does not match the construction");
    for (int i = 0; i <= 64; ++i) {
        const double s = curve.s_lo() + (curve.s_hi() - curve.s_lo()) * i / 64.0;
        if (!(std::abs(curve.kappa(s)) > 1e-8)) fail(ErrorCode::VanishingCurvature, "geodesic curvature vanishes on the domain");
    }
    Vec lo(n), hi(n);
    lo[0] = curve.s_lo();
    hi[0] = curve.s_hi();
    for (int i = 1; i < n; ++i) {
        lo[i] = -1.0;
        hi[i] = 1.0;
    }
    const std::string label = construction_name(construction) + " over " + curve.label();
    Immersion f;
    switch (construction) {
        case Construction::Cylinder:
            for (int i = 1; i < n; ++i) {
                lo[i] = -2.0;
                hi[i] = 2.0;
            }
            f = Immersion::analytic(
                n, Box{lo, hi},
                [curve](const JetVec& x) {
                    JetVec out = curve.position(x[0]);
                    out.insert(out.end(), x.begin() + 1, x.end());
                    return out;
                },
                label);
            break;
        case Construction::Cone:
            lo[1] = 0.5;
            hi[1] = 2.0;
            f = Immersion::analytic(
                n, Box{lo, hi},
                [curve](const JetVec& x) {
                    JetVec out = curve.position(x[0]);
                    for (auto& c : out) c = x[1] * c;
                    out.insert(out.end(), x.begin() + 2, x.end());
                    return out;
                },
                label);
            break;
        case Construction::Rotational:
            for (int i = 1; i < n; ++i) {
                lo[i] = -0.8;
                hi[i] = 0.8;
            }
            f = Immersion::analytic(
                n, Box{lo, hi},
                [curve](const JetVec& x) {
                    const JetVec y = curve.position(x[0]);
                    const Jet inv = reciprocal(y[0] + y[1]);
                    JetVec out{y[2] * inv};
                    const JetVec phi = sphere_chart(JetVec(x.begin() + 1, x.end()));
                    for (const auto& c : phi) out.push_back(inv * c);
                    return out;
                },
                label);
            break;
    }
    // Orient so that the curve direction carries the simple B eigenvalue +(n-1)/n.
    const EuclideanData e = fundamental_forms(f, f.domain().center());
    const double k_curve = e.II(0, 0) / e.I(0, 0);
    const double k_fiber = e.II(n - 1, n - 1) / e.I(n - 1, n - 1);
    return k_curve - k_fiber < 0 ? f.with_reversed_normal() : f;
}

}  // namespace moebius

namespace moebius {

CurveInvariants curve_closed_form(Construction construction, int n, double k, double ks, double kss) {
    CurveInvariants out{Vec::Constant(n, -1.0 / n), Vec(n), Vec::Zero(n)};
    out.B[0] = (n - 1.0) / n;
    out.C[0] = -ks / (k * k);
    const double k2 = k * k, k3 = k2 * k, k4 = k2 * k2;
    const double base = (2.0 * n - 1) / (2.0 * n * n);
    double a1 = -kss / k3 + 1.5 * ks * ks / k4 + base;
    double a2 = -0.5 * (ks * ks / k4 + 1.0 / (n * n));
    if (construction == Construction::Cone) {
        a1 += 0.5 / k2;
        a2 -= 0.5 / k2;
    } else if (construction == Construction::Rotational) {
        a1 -= 0.5 / k2;
        a2 += 0.5 / k2;
    }
    out.A.setConstant(a2);
    out.A[0] = a1;
    return out;
}

}  // namespace moebius
