// moebius: command-line front end for the invariant engine.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moebius/config.hpp"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/invariants.hpp"
#include "moebius/reduction.hpp"
#include "moebius/report.hpp"
#include "moebius/verify.hpp"

using nlohmann::json;
using namespace moebius;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
    int n = 4;
    std::optional<int> probes;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::string> format;
    std::string config_path;
    std::optional<double> theta;
    std::optional<double> c;
    std::optional<double> r1;
    std::string backend;
};

void add_common(CLI::App* app, Common& c, bool with_params = true) {
    app->add_option("-n", c.n, "hypersurface dimension")->check(CLI::Range(3, 12));
    app->add_option("--probes", c.probes, "number of probe points")->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "probe and map seed");
    app->add_option("--tol", c.tol, "tolerance for frame, integrability, classification and invariance checks");
    app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--config", c.config_path, "JSON file with RunConfig fields")->check(CLI::ExistingFile);
    app->add_option("--backend", c.backend, "jet backend")->check(CLI::IsMember({"taylor", "finite-diff"}));
    if (with_params) {
        app->add_option("--theta", c.theta, "associated-family angle for assoc-cylinder");
        app->add_option("--c", c.c, "spiral constant for the spiral members");
        app->add_option("--r1", c.r1, "torus radius for clifford-cone");
    }
}

void set_tolerance(RunConfig& cfg, double t) {
    cfg.tol_frame = t;
    cfg.tol_integrability = t;
    cfg.tol_classification = t;
    cfg.tol_invariance = t;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    const json j = json::parse(in);
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "tol_frame") cfg.tol_frame = v.get<double>();
        else if (key == "tol_integrability") cfg.tol_integrability = v.get<double>();
        else if (key == "tol_classification") cfg.tol_classification = v.get<double>();
        else if (key == "tol_invariance") cfg.tol_invariance = v.get<double>();
        else if (key == "q_tol") cfg.q_tol = v.get<double>();
        else if (key == "eps_umbilic") cfg.eps_umbilic = v.get<double>();
        else if (key == "probe_count") cfg.probe_count = v.get<int>();
        else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
        else if (key == "fd_step") cfg.fd_step = v.get<double>();
        else if (key == "output_format") {
            const auto s = v.get<std::string>();
            if (s != "json" && s != "csv") throw std::invalid_argument("output_format must be json or csv");
            cfg.output_format = s == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        } else if (key == "jet_backend") {
            const auto s = v.get<std::string>();
            if (s != "taylor" && s != "finite-diff") throw std::invalid_argument("jet_backend must be taylor or finite-diff");
            cfg.jet_backend = s == "finite-diff" ? JetBackend::FiniteDiff : JetBackend::Taylor;
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
}

// Precedence: flags > config file > MOEBIUS_TOL > defaults.
RunConfig resolve_config(const Common& c) {
    RunConfig cfg;
    if (const char* env = std::getenv("MOEBIUS_TOL")) {
        std::size_t used = 0;
        const std::string s(env);
        const double t = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("MOEBIUS_TOL is not a number");
        set_tolerance(cfg, t);
    }
    if (!c.config_path.empty()) apply_config_file(cfg, c.config_path);
    if (c.tol) set_tolerance(cfg, *c.tol);
    if (c.probes) cfg.probe_count = *c.probes;
    if (c.seed) cfg.seed = *c.seed;
    if (c.format) cfg.output_format = *c.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (!c.backend.empty()) cfg.jet_backend = c.backend == "finite-diff" ? JetBackend::FiniteDiff : JetBackend::Taylor;
    cfg.validate();
    return cfg;
}

// With `declared_only`, parameters the member does not take are dropped
// instead of rejected (pair applies one set of flags to two members).
std::map<std::string, double> params_for(const std::string& id, const Common& c, bool declared_only = false) {
    std::map<std::string, double> p;
    const bool assoc = id.rfind("assoc-cylinder", 0) == 0;
    if (c.theta) {
        if (!assoc && !declared_only) throw std::invalid_argument("--theta applies to assoc-cylinder only");
        p["theta"] = *c.theta;
    }
    if (c.c) p["c"] = *c.c;
    if (c.r1) p["r1"] = *c.r1;
    if (declared_only) {
        const std::string key = assoc ? "assoc-cylinder(theta)" : id;
        for (const auto& e : catalog())
            if (e.id == key) std::erase_if(p, [&](const auto& kv) { return !e.params.count(kv.first); });
    }
    return p;
}

CatalogInstance instance(const std::string& id, int n, const Common& c, const RunConfig& cfg,
                         bool declared_only = false) {
    CatalogInstance inst = make_catalog(id, n, params_for(id, c, declared_only));
    if (cfg.jet_backend == JetBackend::FiniteDiff) inst.f = inst.f.with_backend(JetBackend::FiniteDiff, cfg.fd_step);
    return inst;
}

json config_json(const RunConfig& cfg) {
    return json{{"tol_frame", cfg.tol_frame},
                {"tol_integrability", cfg.tol_integrability},
                {"tol_classification", cfg.tol_classification},
                {"tol_invariance", cfg.tol_invariance},
                {"q_tol", cfg.q_tol},
                {"eps_umbilic", cfg.eps_umbilic},
                {"probe_count", cfg.probe_count},
                {"seed", cfg.seed},
                {"jet_backend", cfg.jet_backend == JetBackend::Taylor ? "taylor" : "finite-diff"},
                {"fd_step", cfg.fd_step}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownId:
        case ErrorCode::DomainMismatch:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::DimensionTooSmall:
        case ErrorCode::SignMismatch:
        case ErrorCode::AmbientMismatch:
        case ErrorCode::NotMinimal:
        case ErrorCode::TraceNotZero:
            return true;
        default:
            return false;
    }
}

int cmd_catalog(bool as_json, const std::string& filter) {
    std::vector<const CatalogEntry*> picked;
    for (const auto& e : catalog())
        if (filter.empty() || construction_name(e.construction) == filter || e.id.find(filter) != std::string::npos)
            picked.push_back(&e);
    if (as_json) {
        json a = json::array();
        for (const auto* e : picked) a.push_back(to_json(*e));
        emit(a);
        return kExitOk;
    }
    for (const auto* e : picked) {
        std::cout << e->id << "\t" << construction_name(e->construction) << " over a " << e->generator;
        for (const auto& [k, v] : e->params) std::cout << "\t" << k << "=" << v;
        std::cout << "\n    " << e->description << "\n";
    }
    return kExitOk;
}

int cmd_invariants(const std::string& id, const Common& c) {
    const RunConfig cfg = resolve_config(c);
    const CatalogInstance inst = instance(id, c.n, c, cfg);
    const auto probes = sample_probes(inst.f.domain(), cfg.probe_count, cfg.seed);
    const auto rows = map_probes(probes, [&](const Vec& p) { return invariant_row(inst.f, p, cfg); });
    if (cfg.output_format == OutputFormat::Csv) {
        std::cout << csv_header(inst.coordinates) << "\n";
        for (const auto& r : rows) {
            if (r.error) {
                std::cerr << "skipped probe: " << error_code_name(r.error->code()) << ": " << r.error->what() << "\n";
                continue;
            }
            std::cout << csv_row(r) << "\n";
        }
        return kExitOk;
    }
    json out = report_envelope("invariants");
    out["id"] = inst.entry.id;
    out["n"] = c.n;
    out["config"] = config_json(cfg);
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r, inst.coordinates));
    out["rows"] = arr;
    emit(out);
    return kExitOk;
}

int cmd_verify(const std::string& id, bool all, std::vector<std::string> checks, std::optional<double> expect,
               const Common& c) {
    const RunConfig cfg = resolve_config(c);
    if (!all && id.empty()) throw CLI::ValidationError("verify", "give a catalog id or --all");
    if (all && !id.empty()) throw CLI::ValidationError("verify", "give either a catalog id or --all");
    if (checks.empty()) checks = check_names();
    VerifyOptions opt;
    opt.n = c.n;
    opt.cfg = cfg;
    opt.expect = expect;
    std::vector<std::string> ids;
    if (all) {
        for (const auto& e : catalog()) ids.push_back(e.id);
    } else {
        ids.push_back(id);
        opt.params = params_for(id, c);
    }
    json results = json::array();
    int failed = 0, skipped = 0, total = 0;
    for (const auto& member : ids) {
        for (const auto& r : run_checks(member, checks, opt)) {
            ++total;
            if (!r.applicable) ++skipped;
            if (!r.passed) {
                ++failed;
                std::cerr << "FAIL " << r.id << " " << r.check;
                for (const auto& m : r.metrics)
                    if (!m.passed) std::cerr << " " << m.name << "=" << m.value << " (tol " << m.tolerance << ")";
                if (!r.detail.empty()) std::cerr << " " << r.detail;
                std::cerr << "\n";
            }
            results.push_back(to_json(r));
        }
    }
    json out = report_envelope("verify");
    out["n"] = c.n;
    out["config"] = config_json(cfg);
    out["results"] = results;
    out["summary"] = json{{"checks", total}, {"failed", failed}, {"not_applicable", skipped}};
    out["passed"] = failed == 0;
    emit(out);
    return failed == 0 ? kExitOk : kExitFailed;
}

int cmd_classify(const std::string& id, const Common& c) {
    const RunConfig cfg = resolve_config(c);
    const CatalogInstance inst = instance(id, c.n, c, cfg);
    const auto probes = sample_probes(inst.f.domain(), cfg.probe_count, cfg.seed);
    json out = report_envelope("classify");
    out["id"] = inst.entry.id;
    out["n"] = c.n;
    out["config"] = config_json(cfg);
    json rep = to_json(reduction_check(inst.f, probes, cfg));
    for (auto& [k, v] : rep.items()) out[k] = v;
    emit(out);
    return kExitOk;
}

int cmd_pair(const std::string& a, const std::string& b, std::optional<int> n_bar, const std::string& corr,
             double angle_floor, const Common& c) {
    const RunConfig cfg = resolve_config(c);
    const CatalogInstance fa = instance(a, c.n, c, cfg, true);
    const CatalogInstance fb = instance(b, n_bar.value_or(c.n), c, cfg, true);
    if (fa.f.n() != fb.f.n()) fail(ErrorCode::DomainMismatch, "the two members have different dimensions");
    JetMap map;
    if (corr == "identity")
        map = identity_correspondence();
    else
        map = flat_pair_correspondence();
    const auto probes = sample_probes(fa.f.domain(), cfg.probe_count, cfg.seed);
    json out = report_envelope("pair");
    out["ids"] = {fa.entry.id, fb.entry.id};
    out["n"] = c.n;
    out["correspondence"] = corr;
    out["angle_floor"] = angle_floor;
    out["config"] = config_json(cfg);
    json rep = to_json(deformation_pair(fa.f, fb.f, map, probes, cfg, angle_floor));
    for (auto& [k, v] : rep.items()) out[k] = v;
    emit(out);
    return kExitOk;
}

int cmd_spiral(const std::string& kind_name, std::optional<double> c_opt, int points, const Common& c) {
    const RunConfig cfg = resolve_config(c);
    const auto kind = parse_spiral_kind(kind_name);
    if (!kind) throw std::invalid_argument("unknown spiral kind: " + kind_name);
    const double cval = c_opt.value_or(*kind == SpiralKind::Cosh ? 1.0 : *kind == SpiralKind::Exp ? 0.0 : -1.0);
    const CurveSpec curve = spiral_curve(*kind, cval);
    struct Sample {
        double s, kappa, residual;
        Vec planar;
    };
    std::vector<Sample> samples;
    for (int i = 0; i < points; ++i) {
        const double s = curve.s_lo() + (curve.s_hi() - curve.s_lo()) * i / std::max(points - 1, 1);
        samples.push_back({s, curve.kappa(s), spiral_residual(curve, cval, s), curve.planar_point(s)});
    }
    if (cfg.output_format == OutputFormat::Csv) {
        std::cout << "s,kappa,residual,x,y\n";
        for (const auto& p : samples)
            std::cout << csv_number(p.s) << "," << csv_number(p.kappa) << "," << csv_number(p.residual) << ","
                      << csv_number(p.planar[0]) << "," << csv_number(p.planar[1]) << "\n";
        return kExitOk;
    }
    json out = report_envelope("spiral");
    out["kind"] = spiral_kind_name(*kind);
    out["c"] = cval;
    out["ambient"] = curve.ambient() == CurveAmbient::Euclidean2 ? "R2"
                     : curve.ambient() == CurveAmbient::Sphere2  ? "S2"
                                                                 : "H2";
    json arr = json::array();
    for (const auto& p : samples) {
        json pt = json::array();
        for (int i = 0; i < p.planar.size(); ++i) pt.push_back(p.planar[i]);
        arr.push_back(json{{"s", p.s}, {"kappa", p.kappa}, {"residual", p.residual}, {"point", pt}});
    }
    out["samples"] = arr;
    emit(out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moebius invariants of hypersurfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "moebius 1.0.0");

    bool cat_json = false;
    std::string cat_filter;
    auto* cat = app.add_subcommand("catalog", "list catalog members");
    cat->add_flag("--json", cat_json, "print a JSON array");
    cat->add_option("--filter", cat_filter, "construction name or id substring");

    Common inv_c;
    std::string inv_id;
    auto* inv = app.add_subcommand("invariants", "per-probe Moebius invariants of a catalog member");
    inv->add_option("id", inv_id, "catalog id")->required();
    add_common(inv, inv_c);

    Common ver_c;
    std::string ver_id;
    bool ver_all = false;
    std::vector<std::string> ver_checks;
    std::optional<double> ver_expect;
    auto* ver = app.add_subcommand("verify", "run property checks");
    ver->add_option("id", ver_id, "catalog id");
    ver->add_flag("--all", ver_all, "every catalog member");
    ver->add_option("--check", ver_checks, "check name (repeatable)")->check(CLI::IsMember(check_names()));
    ver->add_option("--expect", ver_expect, "expected constant sectional curvature");
    add_common(ver, ver_c);

    Common cls_c;
    std::string cls_id;
    auto* cls = app.add_subcommand("classify", "reduction report of a catalog member");
    cls->add_option("id", cls_id, "catalog id")->required();
    add_common(cls, cls_c);

    Common pair_c;
    std::string pair_a, pair_b, pair_corr = "identity";
    std::optional<int> pair_nbar;
    double pair_floor = 1e-3;
    auto* pair = app.add_subcommand("pair", "compare two catalog members point by point");
    pair->add_option("id_a", pair_a, "catalog id of f")->required();
    pair->add_option("id_b", pair_b, "catalog id of f_bar")->required();
    pair->add_option("--n-bar", pair_nbar, "dimension of f_bar (defaults to -n)");
    pair->add_option("--correspondence", pair_corr, "coordinate correspondence")
        ->check(CLI::IsMember({"identity", "flat"}));
    pair->add_option("--angle-floor", pair_floor, "direction angle below which the pair counts as congruent");
    add_common(pair, pair_c);

    Common sp_c;
    std::string sp_kind;
    std::optional<double> sp_cval;
    int sp_points = 50;
    auto* sp = app.add_subcommand("spiral", "sample a curvature spiral");
    sp->add_option("kind", sp_kind, "log, sin, sinh, cosh or exp")->required();
    sp->add_option("--c", sp_cval, "spiral constant");
    sp->add_option("--points", sp_points, "number of samples")->check(CLI::PositiveNumber);
    add_common(sp, sp_c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*cat) return cmd_catalog(cat_json, cat_filter);
        if (*inv) return cmd_invariants(inv_id, inv_c);
        if (*ver) return cmd_verify(ver_id, ver_all, ver_checks, ver_expect, ver_c);
        if (*cls) return cmd_classify(cls_id, cls_c);
        if (*pair) return cmd_pair(pair_a, pair_b, pair_nbar, pair_corr, pair_floor, pair_c);
        if (*sp) return cmd_spiral(sp_kind, sp_cval, sp_points, sp_c);
    } catch (const Error& e) {
        json out = report_envelope("error");
        out["error"] = error_json(e.code(), e.what());
        emit(out);
        std::cerr << error_code_name(e.code()) << ": " << e.what() << "\n";
        return is_input_error(e.code()) ? kExitUsage : kExitFailed;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        json out = report_envelope("error");
        out["error"] = json{{"code", "InvalidInput"}, {"message", e.what()}};
        emit(out);
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
