#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"

namespace moebius {

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"circular-cylinder", Construction::Cylinder, "curve",
         "cylinder over the unit circle in R^2; flat Moebius metric, curvatures of multiplicity 1 and n-1", {}},
        {"spiral-cylinder", Construction::Cylinder, "curve",
         "cylinder over the logarithmic spiral kappa = 1/(sqrt(-c) s); constant Moebius curvature c < 0", {{"c", -1.0}}},
        {"sin-spiral-cone", Construction::Cone, "curve",
         "cone over the spherical spiral kappa = 1/(sqrt(-c) sin s); constant Moebius curvature c < 0", {{"c", -1.0}}},
        {"sinh-spiral-rotational", Construction::Rotational, "curve",
         "rotational hypersurface over the hyperbolic spiral kappa = 1/(sqrt(-c) sinh s); constant curvature c < 0",
         {{"c", -1.0}}},
        {"cosh-spiral-rotational", Construction::Rotational, "curve",
         "rotational hypersurface over the hyperbolic spiral kappa = 1/(sqrt(c) cosh s); constant curvature c > 0",
         {{"c", 1.0}}},
        {"exp-spiral-rotational", Construction::Rotational, "curve",
         "rotational hypersurface over the hyperbolic spiral kappa = e^s; flat Moebius metric", {{"c", 0.0}}},
        {"catenoid-cylinder", Construction::Cylinder, "surface",
         "cylinder over the catenoid; Moebius metric (8/3) sech^4 a (I_u + dy^2) for n = 4", {}},
        {"assoc-cylinder(theta)", Construction::Cylinder, "surface",
         "cylinder over a member of the catenoid associated family; isometric to catenoid-cylinder with "
         "rotated principal directions",
         {{"theta", std::numbers::pi / 2}}},
        {"clifford-cone", Construction::Cone, "surface",
         "cone over the flat torus (r1 cos a, r1 sin a, r2 cos b, r2 sin b) in S^3", {{"r1", 0.6}}},
    };
    return entries;
}

namespace {

std::vector<std::string> coordinate_names(Construction c, const std::string& generator, int n) {
    std::vector<std::string> out;
    if (generator == "curve") {
        out.push_back("s");
        if (c == Construction::Cone) out.push_back("t");
    } else {
        out = {"a", "b"};
        if (c == Construction::Cone) out.push_back("t");
    }
    const std::string fiber = c == Construction::Rotational ? "w" : "y";
    for (int k = 1; static_cast<int>(out.size()) < n; ++k) out.push_back(fiber + std::to_string(k));
    return out;
}

}  // namespace

CatalogInstance make_catalog(const std::string& id, int n, const std::map<std::string, double>& params) {
    std::string key = id;
    std::map<std::string, double> overrides = params;
    static const std::regex assoc(R"(assoc-cylinder(?:\((.*)\))?)");
    std::smatch m;
    if (std::regex_match(id, m, assoc)) {
        key = "assoc-cylinder(theta)";
        const std::string arg = m[1].matched ? m[1].str() : "theta";
        if (arg != "theta") {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(arg, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != arg.size()) fail(ErrorCode::UnknownId, "cannot parse theta in " + id);
            overrides["theta"] = v;
        }
    }
    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog())
        if (e.id == key) entry = &e;
    if (!entry) fail(ErrorCode::UnknownId, "unknown catalog id: " + id);

    std::map<std::string, double> p = entry->params;
    for (const auto& [k, v] : overrides) {
        if (!p.count(k)) fail(ErrorCode::UnknownId, "parameter '" + k + "' does not apply to " + entry->id);
        p[k] = v;
    }

    CatalogEntry resolved = *entry;
    resolved.params = p;
    if (key == "assoc-cylinder(theta)") {
        std::ostringstream os;
        os << "assoc-cylinder(" << p["theta"] << ")";
        resolved.id = os.str();
    }

    auto with_curve = [&](CurveSpec curve, std::optional<double> cc) {
        Immersion f = curve_hypersurface(curve, entry->construction, n).with_label(resolved.id);
        return CatalogInstance{resolved, f, coordinate_names(entry->construction, "curve", n), curve, std::nullopt, cc};
    };
    auto with_surface = [&](SurfaceSpec u) {
        Immersion f = entry->construction == Construction::Cylinder ? cylinder(u, n) : cone(u, n);
        return CatalogInstance{resolved, f.with_label(resolved.id), coordinate_names(entry->construction, "surface", n),
                               std::nullopt, u, std::nullopt};
    };

    if (key == "circular-cylinder") return with_curve(circle_curve(1.0), 0.0);
    if (key == "spiral-cylinder") return with_curve(spiral_curve(SpiralKind::Log, p["c"]), p["c"]);
    if (key == "sin-spiral-cone") return with_curve(spiral_curve(SpiralKind::Sin, p["c"]), p["c"]);
    if (key == "sinh-spiral-rotational") return with_curve(spiral_curve(SpiralKind::Sinh, p["c"]), p["c"]);
    if (key == "cosh-spiral-rotational") return with_curve(spiral_curve(SpiralKind::Cosh, p["c"]), p["c"]);
    if (key == "exp-spiral-rotational") return with_curve(spiral_curve(SpiralKind::Exp, p["c"]), p["c"]);
    if (key == "catenoid-cylinder") return with_surface(catenoid_surface());
    if (key == "assoc-cylinder(theta)") return with_surface(associated_family(catenoid_surface(), p["theta"]));
    return with_surface(clifford_torus(p["r1"]));
}

Immersion quadric_graph(int n) {
    if (n < 2) fail(ErrorCode::DimensionTooSmall, "quadric_graph needs n >= 2");
    Vec lo = Vec::Constant(n, -0.3), hi = Vec::Constant(n, 0.3);
    return Immersion::analytic(
        n, Box{lo, hi},
        [n](const JetVec& x) {
            JetVec out(x.begin(), x.end());
            Jet h = 0.1 * x[0] * x[0] * x[0];
            for (int i = 0; i < n; ++i) h += 0.5 * (0.5 + 0.6 * i) * x[i] * x[i];
            out.push_back(h);
            return out;
        },
        "quadric-graph");
}

}  // namespace moebius
