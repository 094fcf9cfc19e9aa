#include "moebius/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/invariants.hpp"
#include "moebius/lorentz.hpp"
#include "moebius/reduction.hpp"

namespace moebius {

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {"traces",           "integrability",      "lift-frame",
                                                   "closed-form",      "constant-curvature", "moebius-invariance",
                                                   "classification"};
    return names;
}

namespace {

struct Ctx {
    const CatalogInstance& inst;
    const std::vector<Vec>& probes;
    const VerifyOptions& opt;
};

CheckMetric metric(std::string name, double value, double tol) {
    return CheckMetric{std::move(name), value, tol, value <= tol};
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

void traces(const Ctx& c, CheckResult& r) {
    const int n = c.opt.n;
    const auto rows = map_probes(
        c.probes,
        [&](const Vec& p) {
            const PointAnalysis a = analyze(c.inst.f, p, c.opt.cfg);
            const Mat& B = a.moebius.B;
            return std::array<double, 3>{std::abs(B.trace()), std::abs(B.squaredNorm() - (n - 1.0) / n),
                                         std::abs(a.moebius.A.trace() - (1 + n * n * a.curvature.kappa) / (2.0 * n))};
        },
        c.opt.mode);
    std::array<double, 3> m{};
    for (const auto& row : rows)
        for (int i = 0; i < 3; ++i) m[i] = std::max(m[i], row[i]);
    r.metrics = {metric("trace_B", m[0], c.opt.cfg.tol_frame), metric("norm_B", m[1], c.opt.cfg.tol_frame),
                 metric("trace_A", m[2], c.opt.cfg.tol_invariance)};
}

void integrability(const Ctx& c, CheckResult& r) {
    const auto rows = map_probes(
        c.probes, [&](const Vec& p) { return integrability_residuals(c.inst.f, p, c.opt.cfg); }, c.opt.mode);
    IntegrabilityResiduals worst;
    for (const auto& x : rows) {
        worst.a_codazzi = std::max(worst.a_codazzi, x.a_codazzi);
        worst.c_curl = std::max(worst.c_curl, x.c_curl);
        worst.b_codazzi = std::max(worst.b_codazzi, x.b_codazzi);
        worst.gauss = std::max(worst.gauss, x.gauss);
        worst.ricci = std::max(worst.ricci, x.ricci);
    }
    for (const auto& [name, v] : worst.named())
        if (name != "traces") r.metrics.push_back(metric(name, v, c.opt.cfg.tol_integrability));
}

void lift(const Ctx& c, CheckResult& r) {
    const auto rows =
        map_probes(c.probes, [&](const Vec& p) { return lift_frame(c.inst.f, p, c.opt.cfg).residual(); }, c.opt.mode);
    r.metrics = {metric("frame_residual", max_of(rows), c.opt.cfg.tol_frame)};
}

void closed_form(const Ctx& c, CheckResult& r) {
    if (!c.inst.curve) {
        r.applicable = false;
        r.detail = "closed forms exist for the curve constructions only";
        return;
    }
    const CurveSpec& curve = *c.inst.curve;
    const Construction kind = c.inst.entry.construction;
    const int n = c.opt.n;
    const auto rows = map_probes(
        c.probes,
        [&](const Vec& p) {
            const MoebiusData m = moebius_data(c.inst.f, p, c.opt.cfg);
            const auto k = curve.kappa_derivatives(p[0], 2);
            const CurveInvariants cf = curve_closed_form(kind, n, k[0], k[1], k[2]);
            return std::array<double, 3>{(m.B - Mat(cf.B.asDiagonal())).cwiseAbs().maxCoeff(),
                                         (m.A - Mat(cf.A.asDiagonal())).cwiseAbs().maxCoeff(),
                                         (m.C - cf.C).cwiseAbs().maxCoeff()};
        },
        c.opt.mode);
    std::array<double, 3> w{};
    for (const auto& row : rows)
        for (int i = 0; i < 3; ++i) w[i] = std::max(w[i], row[i]);
    const double tol = c.opt.cfg.tol_integrability;
    r.metrics = {metric("B", w[0], tol), metric("A", w[1], tol), metric("C", w[2], tol)};
}

void constant_curvature(const Ctx& c, CheckResult& r) {
    const std::optional<double> target = c.opt.expect ? c.opt.expect : c.inst.constant_curvature;
    if (!target) {
        r.applicable = false;
        r.detail = "no constant curvature is expected for this member; pass --expect to test a value";
        return;
    }
    const auto rows = map_probes(
        c.probes,
        [&](const Vec& p) { return constant_curvature_deviation(curvature(c.inst.f, p, c.opt.cfg), *target); },
        c.opt.mode);
    std::ostringstream os;
    os << "expected sectional curvature " << *target;
    r.detail = os.str();
    r.metrics = {metric("curvature_deviation", max_of(rows), c.opt.cfg.tol_integrability)};
}

void invariance(const Ctx& c, CheckResult& r) {
    const int n = c.opt.n;
    double g_dev = 0.0, b_dev = 0.0;
    for (int k = 0; k < 5; ++k) {
        const ConformalMap T = random_conformal(c.opt.cfg.seed * 1000003ULL + static_cast<std::uint64_t>(k), n);
        const Immersion h = apply_conformal(T, c.inst.f);
        const auto rows = map_probes(
            c.probes,
            [&](const Vec& p) {
                const MoebiusData a = moebius_data(c.inst.f, p, c.opt.cfg);
                const MoebiusData b = moebius_data(h, p, c.opt.cfg);
                const double gd = (a.g - b.g).norm() / a.g.norm();
                const Vec flipped = (-b.moebius_principal).reverse();
                const double bd = std::min((a.moebius_principal - b.moebius_principal).cwiseAbs().maxCoeff(),
                                           (a.moebius_principal - flipped).cwiseAbs().maxCoeff());
                return std::pair{gd, bd};
            },
            c.opt.mode);
        for (const auto& [gd, bd] : rows) {
            g_dev = std::max(g_dev, gd);
            b_dev = std::max(b_dev, bd);
        }
    }
    r.detail = "5 random conformal maps";
    r.metrics = {metric("metric_relative", g_dev, c.opt.cfg.tol_invariance),
                 metric("eigenvalues_mod_sign", b_dev, c.opt.cfg.tol_invariance)};
}

void classification(const Ctx& c, CheckResult& r) {
    const ReductionReport rep = reduction_check(c.inst.f, c.probes, c.opt.cfg, c.opt.mode);
    const std::string expected = construction_name(c.inst.entry.construction);
    std::string got = classification_name(rep.classification);
    std::transform(got.begin(), got.end(), got.begin(), [](unsigned char ch) { return std::tolower(ch); });
    const double tol = c.opt.cfg.tol_classification;
    const bool covanish = (rep.dphi_residual <= tol) == (rep.commutator_norm <= tol);
    r.metrics = {CheckMetric{"matches_construction", got == expected ? 0.0 : 1.0, 0.0, got == expected},
                 CheckMetric{"closed_form_covanishing", covanish ? 0.0 : 1.0, 0.0, covanish}};
    r.detail = "expected " + expected + ", got " + got;
    if (!rep.reason.empty()) r.detail += " (" + rep.reason + ")";
}

}  // namespace

std::vector<CheckResult> run_checks(const std::string& id, const std::vector<std::string>& checks,
                                    const VerifyOptions& opt) {
    static const std::map<std::string, std::function<void(const Ctx&, CheckResult&)>> table = {
        {"traces", traces},
        {"integrability", integrability},
        {"lift-frame", lift},
        {"closed-form", closed_form},
        {"constant-curvature", constant_curvature},
        {"moebius-invariance", invariance},
        {"classification", classification},
    };
    for (const auto& name : checks)
        if (!table.count(name)) throw std::invalid_argument("unknown check: " + name);
    const CatalogInstance inst = make_catalog(id, opt.n, opt.params);
    const std::vector<Vec> probes = sample_probes(inst.f.domain(), opt.cfg.probe_count, opt.cfg.seed);
    const Ctx ctx{inst, probes, opt};
    std::vector<CheckResult> out;
    for (const auto& name : checks) {
        CheckResult r;
        r.id = inst.entry.id;
        r.check = name;
        try {
            table.at(name)(ctx, r);
        } catch (const Error& e) {
            r.metrics.clear();
            r.detail = std::string(error_code_name(e.code())) + ": " + e.what();
            r.passed = false;
            out.push_back(std::move(r));
            continue;
        }
        for (const auto& m : r.metrics) r.passed = r.passed && m.passed;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace moebius
