#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "moebius/examples.hpp"
#include "moebius/invariants.hpp"
#include "moebius/lorentz.hpp"
#include "moebius/probes.hpp"
#include "moebius/random.hpp"
#include "oracles/curve_oracle.hpp"
#include "support.hpp"

using namespace moebius;
using test::error_of;
using test::vec;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

double rel(const Mat& a, const Mat& b) { return (a - b).norm() / b.norm(); }

Vec sorted(Vec v) {
    std::sort(v.data(), v.data() + v.size());
    return v;
}

// Smallest max-deviation between the sorted lists a and +-b.
double spectrum_distance(const Vec& a, const Vec& b) {
    return std::min((sorted(a) - sorted(b)).cwiseAbs().maxCoeff(), (sorted(a) - sorted(-b)).cwiseAbs().maxCoeff());
}

SurfaceSpec tilted_plane() {
    return halfspace_graph([](const Jet& a, const Jet&) { return 1.0 + 0.3 * a; },
                           Box{vec({-1.0, -1.0}), vec({1.0, 1.0})}, "tilted plane");
}

SurfaceSpec bumpy_graph() {
    return halfspace_graph([](const Jet& a, const Jet& b) { return 1.0 + 0.2 * a * a - 0.1 * b * b + 0.05 * a * b; },
                           Box{vec({-0.8, -0.8}), vec({0.8, 0.8})}, "bumpy graph");
}

}  // namespace

TEST_CASE("half-space isometry") {
    CHECK((halfspace_to_hyperboloid(vec({0, 0, 1})) - vec({1, 0, 0, 0})).norm() == 0.0);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const Vec x = vec({rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.05, 4)});
        const Vec y = halfspace_to_hyperboloid(x);
        CHECK(lorentz_inner(y, y) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK((hyperboloid_to_halfspace(y) - x).norm() <= 1e-12 * (1 + x.norm()));
    }
    CHECK(error_of([] { halfspace_to_hyperboloid(vec({0, 0, 0})); }) == ErrorCode::HalfSpaceViolation);
    CHECK(error_of([] { halfspace_to_hyperboloid(vec({1, 2, -1})); }) == ErrorCode::HalfSpaceViolation);
}

TEST_CASE("spiral curvatures") {
    const CurveSpec log = spiral_curve(SpiralKind::Log, -1.0);
    for (double s : {0.6, 1.0, 1.7}) {
        CHECK(log.kappa(s) == doctest::Approx(1.0 / s));
        CHECK(std::abs(spiral_residual(log, -1.0, s)) <= 1e-12);
    }
    const CurveSpec cosh_curve = spiral_curve(SpiralKind::Cosh, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double s = -0.9 + 1.8 * i / 49.0;
        CHECK(cosh_curve.kappa(s) == doctest::Approx(1.0 / std::cosh(s)));
        CHECK(std::abs(spiral_residual(cosh_curve, 1.0, s)) <= 1e-10);
    }
    for (auto [kind, c] : {std::pair{SpiralKind::Sin, -2.0}, {SpiralKind::Sinh, -0.5}, {SpiralKind::Exp, 0.0}}) {
        const CurveSpec curve = spiral_curve(kind, c);
        for (int i = 1; i < 10; ++i) {
            const double s = curve.s_lo() + (curve.s_hi() - curve.s_lo()) * i / 10.0;
            CHECK(std::abs(spiral_residual(curve, c, s)) <= 1e-10);
        }
    }
    CHECK(error_of([] { spiral_curve(SpiralKind::Sin, 1.0); }) == ErrorCode::SignMismatch);
    CHECK(error_of([] { spiral_curve(SpiralKind::Log, 0.5); }) == ErrorCode::SignMismatch);
    CHECK(error_of([] { spiral_curve(SpiralKind::Cosh, -1.0); }) == ErrorCode::SignMismatch);
    CHECK(error_of([] { spiral_curve(SpiralKind::Exp, 0.1); }) == ErrorCode::SignMismatch);
    CHECK(parse_spiral_kind("sinh") == SpiralKind::Sinh);
    CHECK_FALSE(parse_spiral_kind("tan").has_value());
    CHECK(spiral_kind_name(SpiralKind::Exp) == "exp");
}

TEST_CASE("curves are unit speed and lie in their model") {
    for (auto [kind, c] : {std::pair{SpiralKind::Log, -1.0}, {SpiralKind::Sin, -1.0}, {SpiralKind::Sinh, -1.0},
                           {SpiralKind::Cosh, 1.0}, {SpiralKind::Exp, 0.0}}) {
        const CurveSpec curve = spiral_curve(kind, c);
        const JetLayout* l = JetLayout::get(1, 2);
        for (int i = 1; i < 8; ++i) {
            const double s = curve.s_lo() + (curve.s_hi() - curve.s_lo()) * i / 8.0;
            const JetVec x = curve.position(Jet::variable(l, 0, s));
            const Vec p = values(x);
            Vec t(p.size());
            for (int k = 0; k < p.size(); ++k) t[k] = x[k].d(0);
            const double eps = curve.epsilon();
            if (eps == 0.0) {
                CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-8));
            } else if (eps > 0) {
                CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-8));
                CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-8));
            } else {
                CHECK(lorentz_inner(p, p) == doctest::Approx(-1.0).epsilon(1e-8));
                CHECK(lorentz_inner(t, t) == doctest::Approx(1.0).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("curve hypersurface errors") {
    CHECK(error_of([] { curve_hypersurface(spiral_curve(SpiralKind::Sin, -1.0), Construction::Cylinder, 4); }) ==
          ErrorCode::AmbientMismatch);
    CHECK(error_of([] { curve_hypersurface(circle_curve(1.0), Construction::Rotational, 4); }) ==
          ErrorCode::AmbientMismatch);
    const CurveSpec flat(CurveAmbient::Euclidean2, [](const Jet& s) { return s; }, -1.0, 1.0, "inflection");
    CHECK(error_of([&] { curve_hypersurface(flat, Construction::Cylinder, 4); }) == ErrorCode::VanishingCurvature);
}

TEST_CASE("curve members reproduce the closed forms") {
    const std::vector<std::tuple<std::string, std::string, std::string, double>> members{
        {"circular-cylinder", "circle", "cylinder", 0.0},     {"spiral-cylinder", "log", "cylinder", -1.0},
        {"sin-spiral-cone", "sin", "cone", -1.0},             {"sinh-spiral-rotational", "sinh", "rotational", -1.0},
        {"cosh-spiral-rotational", "cosh", "rotational", 1.0}, {"exp-spiral-rotational", "exp", "rotational", 0.0}};
    for (int n : {4, 5}) {
        for (const auto& [id, kind, construction, c] : members) {
            CAPTURE(id);
            const Immersion f = make_catalog(id, n).f;
            for (const Vec& p : sample_probes(f.domain(), 6, 17)) {
                const MoebiusData m = moebius_data(f, p);
                const oracle::Diagonal d = oracle::invariants(construction, n, oracle::spiral(kind, c, p[0]));
                for (int i = 0; i < n; ++i) {
                    CHECK(m.B(i, i) == doctest::Approx(d.B[i]).epsilon(1e-6));
                    CHECK(std::abs(m.A(i, i) - d.A[i]) <= 1e-4 * (1 + std::abs(d.A[i])));
                    CHECK(std::abs(m.C[i] - d.C[i]) <= 1e-4 * (1 + std::abs(d.C[i])));
                }
                CHECK((m.B - Mat(m.B.diagonal().asDiagonal())).norm() <= 1e-6);
                CHECK((m.A - Mat(m.A.diagonal().asDiagonal())).norm() <= 1e-4);
                const oracle::KappaJet kj = oracle::spiral(kind, c, p[0]);
                const CurveInvariants lib = curve_closed_form(
                    construction == "cylinder" ? Construction::Cylinder
                    : construction == "cone"   ? Construction::Cone
                                               : Construction::Rotational,
                    n, kj.k, kj.ks, kj.kss);
                for (int i = 0; i < n; ++i) CHECK(lib.A[i] == doctest::Approx(d.A[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("warped spiral metrics have the declared curvature") {
    for (const char* id : {"spiral-cylinder", "sin-spiral-cone", "sinh-spiral-rotational", "cosh-spiral-rotational",
                           "exp-spiral-rotational"}) {
        CAPTURE(id);
        const CatalogInstance inst = make_catalog(id, 4);
        REQUIRE(inst.constant_curvature.has_value());
        for (const Vec& p : sample_probes(inst.f.domain(), 4, 8))
            CHECK(constant_curvature_deviation(curvature(inst.f, p), *inst.constant_curvature) <= 1e-4);
    }
    const CatalogInstance s2 = make_catalog("sinh-spiral-rotational", 4, {{"c", -2.5}});
    CHECK(*s2.constant_curvature == -2.5);
    CHECK(constant_curvature_deviation(curvature(s2.f, s2.f.domain().center()), -2.5) <= 1e-4);
}

TEST_CASE("catenoid cylinder metric") {
    const SurfaceSpec u = catenoid_surface();
    const Immersion f = cylinder(u, 4);
    const UnifiedMetric um = unified_metric(u, 0.0, 4);
    for (const Vec& p : sample_probes(f.domain(), 10, 12)) {
        CHECK(um.factor(p[0], p[1]) == doctest::Approx(8.0 / 3 * std::pow(sech(p[0]), 4)).epsilon(1e-12));
        CHECK(rel(moebius_data(f, p).g, um.metric(p)) <= 1e-5);
        const SurfaceData sd = surface_data(u, p[0], p[1]);
        CHECK(std::abs(sd.H) <= 1e-12);
        CHECK(sd.K == doctest::Approx(-std::pow(sech(p[0]), 4)).epsilon(1e-10));
    }
    CHECK(error_of([&] { unified_metric(u, 1.0, 4); }) == ErrorCode::AmbientMismatch);
}

TEST_CASE("round cylinder surface and degenerate surfaces") {
    const Immersion f = cylinder(round_cylinder_surface(1.0), 4);
    const Vec p = f.domain().center();
    const EuclideanData e = fundamental_forms(f, p);
    CHECK(std::abs(std::abs(e.k[0]) + std::abs(e.k[3]) - 1.0) <= 1e-12);
    CHECK(multiplicity_groups(moebius_data(f, p).moebius_principal).size() == 2);
    CHECK(error_of([] { cylinder(plane_surface(), 4); }) == ErrorCode::DegenerateConformalFactor);
    CHECK(error_of([] { cone(great_sphere(), 4); }) == ErrorCode::DegenerateConformalFactor);
    CHECK(error_of([] { cylinder(catenoid_surface(), 3); }) == ErrorCode::DimensionTooSmall);
    CHECK(error_of([] { cone(catenoid_surface(), 4); }) == ErrorCode::AmbientMismatch);
}

TEST_CASE("clifford cone") {
    const Immersion f = make_catalog("clifford-cone", 5).f;
    for (const Vec& p : sample_probes(f.domain(), 5, 19)) {
        CHECK(integrability_residuals(f, p).traces <= 1e-6);
        Vec q = p;
        q[2] = 0.7;
        const Vec l1 = moebius_data(f, q).moebius_principal;
        q[2] = 1.6;
        const Vec l2 = moebius_data(f, q).moebius_principal;
        CHECK((l1 - l2).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(rel(moebius_data(f, p).g, unified_metric(clifford_torus(0.6), -1.0, 5).metric(p)) <= 1e-5);
    }
}

TEST_CASE("rotational hypersurfaces over half-space graphs") {
    for (const SurfaceSpec& u : {tilted_plane(), bumpy_graph()}) {
        CAPTURE(u.label);
        const Immersion f = rotational(u, 4);
        const UnifiedMetric um = unified_metric(u, 1.0, 4);
        for (const Vec& p : sample_probes(f.domain(), 6, 23)) {
            CHECK(rel(moebius_data(f, p).g, um.metric(p)) <= 1e-4);
            const SurfaceData sd = surface_data(u, p[0], p[1]);
            const double x3 = u.map(variables(JetLayout::get(2, 0), p.head(2)))[2].value();
            const double e3 = sd.normal[2] / (x3 * x3);
            const Vec expected = vec({sd.k[0] / x3 - e3, sd.k[1] / x3 - e3, -e3, -e3});
            CHECK(spectrum_distance(fundamental_forms(f, p).k, expected) <= 1e-5);

            // rotating the chart of the fiber sphere is an ambient isometry
            Vec q = p;
            const double c = std::cos(0.7), s = std::sin(0.7);
            q[2] = c * p[2] - s * p[3];
            q[3] = s * p[2] + c * p[3];
            if (f.domain().shrunk(0.05).contains(q))
                CHECK((moebius_data(f, p).moebius_principal - moebius_data(f, q).moebius_principal).cwiseAbs().maxCoeff() <=
                      1e-6);
        }
    }
    // the tilted plane is an equidistant surface: umbilic in H^3 with |k| < 1
    const SurfaceData sd = surface_data(tilted_plane(), 0.1, 0.2);
    CHECK(sd.k[0] == doctest::Approx(sd.k[1]).epsilon(1e-10));
    CHECK(std::abs(sd.k[0]) < 1.0);
    CHECK(sd.K == doctest::Approx(sd.k[0] * sd.k[1] - 1.0).epsilon(1e-10));
}

TEST_CASE("associated family") {
    const SurfaceSpec cat = catenoid_surface();
    const SurfaceSpec a0 = associated_family(cat, 0.0);
    const SurfaceSpec helicoid = associated_family(cat, std::numbers::pi / 2);
    const SurfaceSpec a4 = associated_family(cat, std::numbers::pi / 4);
    double ii_diff = 0.0;
    for (const Vec& p : sample_probes(cat.domain, 25, 31)) {
        const JetVec x = variables(JetLayout::get(2, 0), p);
        CHECK((values(a0.map(x)) - values(cat.map(x))).norm() <= 1e-15);
        const Vec h = values(helicoid.map(x));
        CHECK(h[0] == doctest::Approx(std::sinh(p[0]) * std::sin(p[1])));
        CHECK(h[2] == doctest::Approx(p[1]));
        const SurfaceData s0 = surface_data(cat, p[0], p[1]);
        const SurfaceData s2 = surface_data(helicoid, p[0], p[1]);
        const SurfaceData s4 = surface_data(a4, p[0], p[1]);
        CHECK((s2.I - s0.I).norm() <= 1e-10);
        CHECK((s4.I - s0.I).norm() <= 1e-10);
        CHECK(std::abs(s4.H - s0.H) <= 1e-10);
        CHECK(s4.K == doctest::Approx(s0.K).epsilon(1e-10));
        ii_diff = std::max(ii_diff, (s4.II - s0.II).norm());
    }
    CHECK(ii_diff > 0.1);
    CHECK(error_of([] { associated_family(round_cylinder_surface(1.0), 0.3); }) == ErrorCode::NotMinimal);
}

TEST_CASE("catalog") {
    std::vector<std::string> ids;
    for (const auto& e : catalog()) ids.push_back(e.id);
    CHECK(ids == std::vector<std::string>{"circular-cylinder", "spiral-cylinder", "sin-spiral-cone",
                                          "sinh-spiral-rotational", "cosh-spiral-rotational", "exp-spiral-rotational",
                                          "catenoid-cylinder", "assoc-cylinder(theta)", "clifford-cone"});
    CHECK(error_of([] { make_catalog("helicoid", 4); }) == ErrorCode::UnknownId);
    const CatalogInstance a = make_catalog("assoc-cylinder(1.2)", 4);
    CHECK(a.entry.params.at("theta") == doctest::Approx(1.2));
    const CatalogInstance b = make_catalog("assoc-cylinder(theta)", 4, {{"theta", 1.2}});
    const Vec p = a.f.domain().center();
    CHECK((a.f.position(p) - b.f.position(p)).norm() == 0.0);
    CHECK(make_catalog("circular-cylinder", 4).coordinates == std::vector<std::string>{"s", "y1", "y2", "y3"});
    CHECK(make_catalog("clifford-cone", 5).coordinates == std::vector<std::string>{"a", "b", "t", "y1", "y2"});
    CHECK(make_catalog("exp-spiral-rotational", 3).coordinates == std::vector<std::string>{"s", "w1", "w2"});
    CHECK(error_of([] { make_catalog("catenoid-cylinder", 3); }) == ErrorCode::DimensionTooSmall);
    CHECK(error_of([] { make_catalog("spiral-cylinder", 4, {{"c", 1.0}}); }) == ErrorCode::SignMismatch);
    CHECK(make_catalog("catenoid-cylinder", 4).constant_curvature == std::nullopt);
    CHECK(make_catalog("circular-cylinder", 4).constant_curvature == 0.0);
}
