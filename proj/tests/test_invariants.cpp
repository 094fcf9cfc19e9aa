#include <cmath>
#include <numeric>

#include "doctest.h"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/invariants.hpp"
#include "moebius/probes.hpp"

using namespace moebius;

namespace {

Vec vec(std::initializer_list<double> xs) {
    Vec p(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) p[i++] = x;
    return p;
}

Mat diag(std::initializer_list<double> xs) { return Mat(vec(xs).asDiagonal()); }

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("circular cylinder invariants") {
    const Immersion f = make_catalog("circular-cylinder", 4).f;
    const MoebiusData m = moebius_data(f, vec({0.3, -0.2, 0.5, 0.1}));
    CHECK(m.rho == doctest::Approx(1.0));
    CHECK(max_abs(m.B - diag({0.75, -0.25, -0.25, -0.25})) < 1e-12);
    CHECK(max_abs(m.A - diag({7.0 / 32, -1.0 / 32, -1.0 / 32, -1.0 / 32})) < 1e-12);
    CHECK(m.C.norm() < 1e-12);
    CHECK(m.multiplicities == std::vector<int>{1, 3});
}

TEST_CASE("cone over a spherical circle") {
    const double k = std::sqrt(2.0);
    const CurveSpec circle(CurveAmbient::Sphere2, [k](const Jet& s) { return 0.0 * s + k; }, -1.0, 1.0, "small circle");
    const Immersion f = curve_hypersurface(circle, Construction::Cone, 4);
    for (const Vec& p : sample_probes(f.domain(), 5, 2)) {
        const MoebiusData m = moebius_data(f, p);
        CHECK(std::abs(m.C[0]) < 1e-10);
        CHECK(max_abs(m.B - diag({0.75, -0.25, -0.25, -0.25})) < 1e-10);
    }
}

TEST_CASE("trace identities on the catalog") {
    for (const auto& entry : catalog()) {
        const int n = 4;
        const Immersion f = make_catalog(entry.id, n).f;
        for (const Vec& p : sample_probes(f.domain(), 5, 21)) {
            const PointAnalysis a = analyze(f, p);
            CHECK(std::abs(a.moebius.B.trace()) <= 1e-6);
            CHECK(std::abs(a.moebius.B.squaredNorm() - 0.75) <= 1e-6);
            CHECK(std::abs(a.moebius.A.trace() - (1 + n * n * a.curvature.kappa) / (2.0 * n)) <= 1e-5);
            const EuclideanData e = fundamental_forms(f, p);
            CHECK((a.moebius.g - a.rho2 * e.I).norm() <= 1e-8 * a.moebius.g.norm());
        }
    }
}

TEST_CASE("spiral cylinder has constant curvature -1") {
    const Immersion f = make_catalog("spiral-cylinder", 4).f;
    for (const Vec& p : sample_probes(f.domain(), 10, 4)) {
        const CurvatureData c = curvature(f, p);
        for (const auto& [ij, k] : c.sectional) CHECK(k == doctest::Approx(-1.0).epsilon(1e-4));
        CHECK(constant_curvature_deviation(c, -1.0) <= 1e-4);
    }
}

TEST_CASE("circular cylinder is flat and has parallel B") {
    const Immersion f = make_catalog("circular-cylinder", 4).f;
    const Vec p = vec({0.1, 0.2, 0.3, -0.4});
    const CurvatureData c = curvature(f, p);
    CHECK(c.riemann.max_abs() <= 1e-10);
    CHECK(covariant_derivatives(f, p).dB.max_abs() <= 1e-10);
    CHECK(integrability_residuals(f, p).gauss <= 1e-4);
}

TEST_CASE("spiral cylinder derivative pattern at s = 1") {
    const Immersion f = make_catalog("spiral-cylinder", 4).f;
    const Vec p = vec({1.0, 0.3, -0.2, 0.1});
    const PointAnalysis a = analyze(f, p);
    CHECK(a.moebius.C[0] == doctest::Approx(1.0).epsilon(1e-8));
    for (int j = 1; j < 4; ++j) CHECK(a.derivatives.dB(0, j, j) == doctest::Approx(-a.moebius.C[0]).epsilon(1e-8));
}

TEST_CASE("covariant derivative symmetries") {
    const Immersion f = make_catalog("clifford-cone", 5).f;
    const DerivativeData d = covariant_derivatives(f, f.domain().center());
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                CHECK(d.dB(i, j, k) == doctest::Approx(d.dB(j, i, k)));
                CHECK(d.dA(i, j, k) == doctest::Approx(d.dA(j, i, k)));
            }
}

TEST_CASE("riemann tensor symmetries and scalar curvature") {
    const Immersion f = make_catalog("catenoid-cylinder", 4).f;
    const CurvatureData c = curvature(f, vec({0.3, 0.2, -0.1, 0.4}));
    const Tensor4& R = c.riemann;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            sum += R(i, j, i, j);
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    CHECK(std::abs(R(i, j, k, l) + R(j, i, k, l)) <= 1e-5);
                    CHECK(std::abs(R(i, j, k, l) + R(i, j, l, k)) <= 1e-5);
                    CHECK(std::abs(R(i, j, k, l) - R(k, l, i, j)) <= 1e-5);
                    CHECK(std::abs(R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k)) <= 1e-5);
                }
        }
    CHECK(c.kappa == doctest::Approx(sum / 12.0).epsilon(1e-8));
}

TEST_CASE("integrability on the catenoid cylinder") {
    const Immersion f = make_catalog("catenoid-cylinder", 4).f;
    for (const Vec& p : sample_probes(f.domain(), 20, 5)) {
        const IntegrabilityResiduals r = integrability_residuals(f, p);
        for (const auto& [name, v] : r.named()) CHECK_MESSAGE(v <= 1e-4, name);
    }
}

TEST_CASE("exp-spiral rotational is flat with exact traces") {
    const Immersion f = make_catalog("exp-spiral-rotational", 4).f;
    for (const Vec& p : sample_probes(f.domain(), 5, 6)) {
        CHECK(integrability_residuals(f, p).traces <= 1e-6);
        CHECK(constant_curvature_deviation(curvature(f, p), 0.0) <= 1e-4);
    }
}

TEST_CASE("corrupted B is detected") {
    const Immersion f = make_catalog("catenoid-cylinder", 4).f;
    InvariantBundle b = InvariantBundle::from(analyze(f, vec({0.1, 0.2, 0.3, 0.4})));
    CHECK(integrability_residuals(b).traces <= 1e-6);
    b.B(0, 0) += 0.1;
    CHECK(integrability_residuals(b).traces >= 0.05);
}

TEST_CASE("permuting coordinates conjugates B") {
    for (const char* id : {"catenoid-cylinder", "clifford-cone", "sinh-spiral-rotational"}) {
        const Immersion f = make_catalog(id, 4).f;
        std::vector<int> perm{2, 0, 3, 1};  // new coordinate k is old coordinate perm[k]
        Box nb{Vec(4), Vec(4)};
        for (int k = 0; k < 4; ++k) {
            nb.lo[k] = f.domain().lo[perm[k]];
            nb.hi[k] = f.domain().hi[perm[k]];
        }
        const Immersion g = reparametrize(
            f, 4, nb,
            [perm](const JetVec& x) {
                JetVec y(4);
                for (int k = 0; k < 4; ++k) y[perm[k]] = x[k];
                return y;
            },
            "permuted");
        for (const Vec& p : sample_probes(f.domain(), 3, 9)) {
            Vec q(4);
            for (int k = 0; k < 4; ++k) q[k] = p[perm[k]];
            const MoebiusData a = moebius_data(f, p);
            const MoebiusData b = moebius_data(g, q);
            const Vec flipped = (-b.moebius_principal).reverse();
            const double d = std::min((a.moebius_principal - b.moebius_principal).cwiseAbs().maxCoeff(),
                                      (a.moebius_principal - flipped).cwiseAbs().maxCoeff());
            CHECK(d <= 1e-8);
        }
    }
}

TEST_CASE("umbilic points are rejected") {
    Box b{Vec::Constant(3, -0.5), Vec::Constant(3, 0.5)};
    const Immersion plane = Immersion::analytic(
        3, b, [](const JetVec& x) { return JetVec{x[0], x[1], x[2], 0.0 * x[0]}; }, "hyperplane");
    try {
        moebius_data(plane, Vec::Zero(3));
        FAIL("expected UmbilicPoint");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UmbilicPoint);
    }
}

TEST_CASE("multiplicity grouping") {
    CHECK(multiplicity_groups(vec({0.75, -0.25, -0.25, -0.25})) == std::vector<int>{1, 3});
    CHECK(multiplicity_groups(vec({0.6, 0.0, -0.00001, -0.6})) == std::vector<int>{1, 2, 1});
    CHECK(multiplicity_groups(vec({0.5, 0.2, -0.1, -0.6})) == std::vector<int>{1, 1, 1, 1});
    CHECK(multiplicity_tolerance(vec({1.0, -1.0})) == doctest::Approx(3e-4));
}
