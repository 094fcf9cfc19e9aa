#include <cmath>
#include <numbers>

#include "doctest.h"
#include "moebius/examples.hpp"
#include "moebius/invariants.hpp"
#include "moebius/probes.hpp"
#include "moebius/reduction.hpp"
#include "support.hpp"

using namespace moebius;
using test::error_of;
using test::vec;

namespace {

std::vector<Vec> probes_for(const Immersion& f, int count = 10, std::uint64_t seed = 42) {
    return sample_probes(f.domain(), count, seed);
}

// x5 = (a0 x0^2 + a1 x1^2 + a2 x2^2 + a3 x3^2)/2 + b x0^3 on [-0.3, 0.3]^4.
Immersion graph(Vec a, double b) {
    return Immersion::analytic(
        4, Box{Vec::Constant(4, -0.3), Vec::Constant(4, 0.3)},
        [a, b](const JetVec& x) {
            Jet h = 0.5 * a[0] * x[0] * x[0] + b * x[0] * x[0] * x[0];
            for (int i = 1; i < 4; ++i) h += 0.5 * a[i] * x[i] * x[i];
            return JetVec{x[0], x[1], x[2], x[3], h};
        },
        "graph");
}

}  // namespace

TEST_CASE("reduction examples") {
    {
        const Immersion f = make_catalog("catenoid-cylinder", 4).f;
        const ReductionReport r = reduction_check(f, probes_for(f));
        CHECK(r.multiplicity_pattern.size() == 3);
        CHECK(r.mu_multiplicity == 2);
        CHECK(r.route == "reduction");
        CHECK(r.classification == Classification::Cylinder);
        REQUIRE(r.q_value.has_value());
        CHECK(std::abs(*r.q_value) <= 1e-3);
        CHECK(r.c_alpha_residual <= 1e-4);
        CHECK(r.b_pq_alpha_residual <= 1e-4);
    }
    {
        const Immersion f = make_catalog("clifford-cone", 4).f;
        const ReductionReport r = reduction_check(f, probes_for(f));
        CHECK(r.classification == Classification::Cone);
        CHECK(*r.q_value < -1e-3);
    }
    {
        const Immersion f = make_catalog("spiral-cylinder", 4).f;
        const ReductionReport r = reduction_check(f, probes_for(f));
        CHECK(r.route == "closed-form");
        CHECK(r.dphi_residual <= 1e-4);
        CHECK(r.classification == Classification::Cylinder);
    }
}

TEST_CASE("classification follows the construction") {
    for (int n : {4, 5}) {
        for (const auto& e : catalog()) {
            CAPTURE(e.id);
            const Immersion f = make_catalog(e.id, n).f;
            const ReductionReport r = reduction_check(f, probes_for(f, 8, 5));
            const Classification expected = e.construction == Construction::Cylinder ? Classification::Cylinder
                                            : e.construction == Construction::Cone   ? Classification::Cone
                                                                                     : Classification::Rotational;
            CHECK(r.classification == expected);
            if (expected == Classification::Cylinder)
                for (double q : r.q_normalized) CHECK(std::abs(q) <= 1e-3);
            else
                for (double q : r.q_normalized) CHECK((q > 0) == (expected == Classification::Rotational));
        }
    }
}

TEST_CASE("closed Moebius form residuals") {
    for (const auto& e : catalog()) {
        if (e.id == "assoc-cylinder(theta)") continue;
        CAPTURE(e.id);
        const Immersion f = make_catalog(e.id, 4).f;
        const ClosedFormResidual r = closed_form_residual(f, probes_for(f, 6));
        CHECK(r.dphi_residual <= 1e-4);
        CHECK(r.commutator_norm <= 1e-4);
    }
    // The associated member is reducible but its Moebius form is not closed; both residuals are large together.
    const Immersion f = make_catalog("assoc-cylinder(theta)", 4).f;
    const ClosedFormResidual r = closed_form_residual(f, probes_for(f, 6));
    CHECK(r.dphi_residual > 1e-2);
    CHECK(r.commutator_norm > 1e-2);
    CHECK(r.dphi_residual <= 10 * r.commutator_norm);
    CHECK(r.commutator_norm <= 10 * r.dphi_residual);
}

TEST_CASE("inapplicable and ambiguous patterns") {
    const Immersion generic = quadric_graph(4);
    const ReductionReport r = reduction_check(generic, probes_for(generic, 5));
    CHECK(r.classification == Classification::Inapplicable);
    CHECK(r.route == "none");
    CHECK(r.multiplicity_pattern == std::vector<int>{1, 1, 1, 1});

    const Immersion two_pairs = rotational(
        halfspace_graph([](const Jet& a, const Jet&) { return 1.0 + 0.3 * a; },
                        Box{vec({-1.0, -1.0}), vec({1.0, 1.0})}, "tilted plane"),
        4);
    const ReductionReport r2 = reduction_check(two_pairs, probes_for(two_pairs, 4));
    CHECK(r2.multiplicity_pattern == std::vector<int>{2, 2});
    CHECK(r2.classification == Classification::Inapplicable);

    const Immersion split = graph(vec({1.0, 1.0, 2.0, 3.0}), 0.5);
    CHECK(error_of([&] { reduction_check(split, {Vec::Zero(4), vec({0.2, 0.0, 0.0, 0.0})}); }) ==
          ErrorCode::NonConstantMultiplicity);
    const Immersion near = graph(vec({1.0, 1.002, 2.0, 3.0}), 0.0);
    CHECK(error_of([&] { reduction_check(near, {Vec::Zero(4)}); }) == ErrorCode::FrameAmbiguity);
}

TEST_CASE("Q sign is stable across probes") {
    for (const char* id : {"sin-spiral-cone", "cosh-spiral-rotational", "clifford-cone", "sinh-spiral-rotational"}) {
        const Immersion f = make_catalog(id, 4).f;
        const ReductionReport r = reduction_check(f, probes_for(f, 20, 77));
        const double first = r.q_values.front();
        for (double q : r.q_values) CHECK((q > 0) == (first > 0));
    }
}

TEST_CASE("isoparametric pattern annotation") {
    // No catalog member carries the pattern; the cylinder over a minimal surface in R^3 has
    // B eigenvalues +-l, 0, 0 with l = sqrt(3/8) at n = 4, but C does not vanish.
    const Immersion f = make_catalog("catenoid-cylinder", 4).f;
    const MoebiusData m = moebius_data(f, f.domain().center());
    CHECK(m.moebius_principal[0] == doctest::Approx(std::sqrt(3.0 / 8)));
    const ReductionReport r = reduction_check(f, probes_for(f, 5));
    CHECK(r.annotations.empty());
}

TEST_CASE("deformation pairs") {
    const Immersion cat = make_catalog("catenoid-cylinder", 4).f;
    const auto probes = probes_for(cat);
    {
        const DeformationReport r = deformation_pair(cat, cat, identity_correspondence(), probes);
        CHECK(r.verdict == DeformationVerdict::CongruentCandidate);
        CHECK(r.direction_angle <= 1e-6);
        CHECK(r.metric_deviation <= 1e-12);
    }
    {
        const Immersion hel = make_catalog("assoc-cylinder(theta)", 4, {{"theta", std::numbers::pi / 2}}).f;
        const DeformationReport r = deformation_pair(cat, hel, identity_correspondence(), probes);
        CHECK(r.verdict == DeformationVerdict::DeformationCandidate);
        CHECK(r.metric_deviation <= 1e-5);
        CHECK(r.eigen_match);
        CHECK(r.direction_angle > 0.1);
    }
    {
        const Immersion exp_rot = make_catalog("exp-spiral-rotational", 4).f;
        const Immersion circ = make_catalog("circular-cylinder", 4).f;
        const DeformationReport r =
            deformation_pair(exp_rot, circ, flat_pair_correspondence(), probes_for(exp_rot));
        CHECK(r.verdict == DeformationVerdict::DeformationCandidate);
        CHECK(r.metric_deviation <= 1e-5);
        CHECK(r.eigen_match);
    }
    {
        const Immersion circ = make_catalog("circular-cylinder", 4).f;
        const DeformationReport r = deformation_pair(cat, circ, identity_correspondence(), probes_for(cat, 3));
        CHECK(r.verdict == DeformationVerdict::MetricMismatch);
    }
    {
        const Immersion circ = make_catalog("circular-cylinder", 4).f;
        const JetMap far = [](const JetVec& x) {
            JetVec y = x;
            y[0] += 10.0;
            return y;
        };
        CHECK(error_of([&] { deformation_pair(circ, circ, far, probes_for(circ, 3)); }) == ErrorCode::DomainMismatch);
    }
}

TEST_CASE("rigidity fit") {
    const Immersion f = quadric_graph(5);
    const auto probes = probes_for(f, 8);
    const RigidityFit same = rigidity_probe(f, f, probes);
    CHECK(same.b == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(same.c) <= 1e-8);
    CHECK(same.b_sign_match);
    const RigidityFit flipped = rigidity_probe(f, f.with_reversed_normal(), probes);
    CHECK(flipped.b == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(std::abs(flipped.c) <= 1e-8);
    CHECK(flipped.b_sign_match);

    std::vector<Mat> B, Bb;
    for (const Vec& p : probes) {
        const Mat b = moebius_data(f, p).B;
        Mat perturbed = b;
        perturbed(0, 1) += 0.05;
        perturbed(1, 0) += 0.05;
        perturbed(2, 2) += 0.03;
        B.push_back(b);
        Bb.push_back(perturbed);
    }
    const RigidityFit bad = rigidity_fit(B, Bb);
    CHECK(bad.residual > 1e-2);
    CHECK(bad.flagged);
    CHECK_FALSE(bad.b_sign_match);

    const Immersion cyl = make_catalog("circular-cylinder", 4).f;
    CHECK(error_of([&] { rigidity_probe(cyl, cyl, probes_for(cyl, 2)); }) == ErrorCode::Inapplicable);
}

TEST_CASE("serial and parallel reports agree") {
    const Immersion f = make_catalog("sinh-spiral-rotational", 5).f;
    const auto probes = probes_for(f, 12);
    const ReductionReport a = reduction_check(f, probes, {}, ExecutionMode::Serial);
    const ReductionReport b = reduction_check(f, probes, {}, ExecutionMode::Parallel);
    CHECK(a.q_values == b.q_values);
    CHECK(a.c_alpha_residual == b.c_alpha_residual);
    CHECK(a.classification == b.classification);
}
