#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moebius/immersion.hpp"

namespace moebius {

// ---------------------------------------------------------------- surfaces

enum class SurfaceAmbient { Euclidean3, Sphere3, HyperbolicHalfSpace3 };

/// Two-parameter surface. `map` returns 3 coordinates (Euclidean3 and the
/// upper half-space model) or 4 coordinates (unit sphere in R^4).
struct SurfaceSpec {
    SurfaceAmbient ambient = SurfaceAmbient::Euclidean3;
    JetMap map;
    Box domain;
    std::string label;
    bool minimal = false;
    JetMap conjugate;  // conjugate minimal surface, when known
};

/// Intrinsic and extrinsic data of a surface in its 3-dimensional space form.
struct SurfaceData {
    Mat I;       // induced metric of the space form
    Mat II;
    double H = 0.0;
    double K = 0.0;  // Gauss curvature (intrinsic)
    Vec k;           // principal curvatures, descending
    Vec normal;      // unit normal: R^3 for Euclidean, R^4 for the sphere, half-space vector with |eta|/x3 = 1
};

SurfaceData surface_data(const SurfaceSpec& u, double a, double b);

SurfaceSpec catenoid_surface();
SurfaceSpec round_cylinder_surface(double radius);
SurfaceSpec plane_surface();
/// Flat torus (r1 cos a, r1 sin a, r2 cos b, r2 sin b) in S^3, r2 = sqrt(1 - r1^2).
SurfaceSpec clifford_torus(double r1);
SurfaceSpec great_sphere();
/// Graph x3 = h(x1, x2) > 0 in the upper half-space model.
SurfaceSpec halfspace_graph(std::function<Jet(const Jet&, const Jet&)> height, Box domain, std::string label);

/// cos(theta) f + sin(theta) f*. Throws NotMinimal without conjugate data.
SurfaceSpec associated_family(const SurfaceSpec& surface, double theta);

/// Cylinder (u, y) over a surface in R^3; domain u.domain x [-1,1]^{n-2}.
Immersion cylinder(const SurfaceSpec& u, int n);
/// Cone (t u, y) over a surface in S^3; t in [0.5, 2], y in [-1,1]^{n-3}.
Immersion cone(const SurfaceSpec& u, int n);
/// Rotational (x1, x2, x3 phi(w)) over a surface in the half-space; w in [-0.8,0.8]^{n-2}
/// is a stereographic chart of S^{n-2}.
Immersion rotational(const SurfaceSpec& u, int n);

/// tau: R^3_+ -> H^3 in R^4_1. Throws HalfSpaceViolation unless x3 > 0.
Vec halfspace_to_hyperboloid(const Vec& x);
Vec hyperboloid_to_halfspace(const Vec& y);

/// Inverse stereographic chart w -> S^{m} in R^{m+1}, pole (0,...,0,-1) excluded.
JetVec sphere_chart(const JetVec& w);

/// Closed-form Moebius metric factor(p) (I_u + I_fiber) of the surface
/// constructions; c = 0 (cylinder), -1 (cone), +1 (rotational).
struct UnifiedMetric {
    SurfaceSpec surface;
    double c = 0.0;
    int n = 0;

    double factor(double a, double b) const;
    Mat metric(const Vec& p) const;
};

/// Throws AmbientMismatch when c does not match the surface ambient.
UnifiedMetric unified_metric(const SurfaceSpec& u, double c, int n);

// ------------------------------------------------------------------ curves

enum class CurveAmbient { Euclidean2, Sphere2, HyperbolicPlane2 };
enum class SpiralKind { Log, Sin, Sinh, Cosh, Exp };

using KappaFn = std::function<Jet(const Jet&)>;

/// Unit-speed curve in R^2, S^2 or the hyperboloid model of H^2 in R^3_1,
/// obtained from its geodesic curvature by integrating the moving-frame
/// equations (RK4, step 1e-3) from the domain midpoint.
class CurveSpec {
public:
    CurveSpec(CurveAmbient ambient, KappaFn kappa, double s_lo, double s_hi, std::string label);

    CurveAmbient ambient() const { return ambient_; }
    double s_lo() const { return s_lo_; }
    double s_hi() const { return s_hi_; }
    const std::string& label() const { return label_; }
    /// epsilon = 0, 1, -1 for R^2, S^2, H^2.
    double epsilon() const;

    double kappa(double s) const;
    /// Derivatives of kappa at s up to `order`.
    std::vector<double> kappa_derivatives(double s, int order) const;

    /// Ambient coordinates of the curve as jets in the layout of `s`.
    JetVec position(const Jet& s) const;
    Vec point(double s) const;
    /// Position in the plane model: R^2 itself, or the Poincare half plane for H^2.
    Vec planar_point(double s) const;

private:
    struct Grid;
    CurveAmbient ambient_;
    KappaFn kappa_;
    double s_lo_;
    double s_hi_;
    std::string label_;
    std::shared_ptr<const Grid> grid_;
};

/// Throws SignMismatch when the sign of c does not suit the kind.
CurveSpec spiral_curve(SpiralKind kind, double c);
CurveSpec spiral_curve(SpiralKind kind, double c, double s_lo, double s_hi);
/// Circle of curvature kappa0 in R^2.
CurveSpec circle_curve(double kappa0, double s_lo = -2.0, double s_hi = 2.0);
KappaFn spiral_kappa(SpiralKind kind, double c);
/// (d/ds (1/kappa))^2 + eps (1/kappa)^2 + c at s.
double spiral_residual(const CurveSpec& curve, double c, double s);
std::string spiral_kind_name(SpiralKind kind);
std::optional<SpiralKind> parse_spiral_kind(const std::string& name);

enum class Construction { Cylinder, Cone, Rotational };
std::string construction_name(Construction c);

/// m = 1 constructions. Fibers: y in [-2,2]^{n-1} (cylinder), t in [0.5,2] and
/// y in [-1,1]^{n-2} (cone), w in [-0.8,0.8]^{n-1} (rotational). Errors: AmbientMismatch, VanishingCurvature.
Immersion curve_hypersurface(const CurveSpec& curve, Construction construction, int n);

/// Diagonal B and A and the vector C of a curve hypersurface in the frame
/// (unit tangent direction first, then the fiber), for the orientation whose
/// simple B eigenvalue is (n-1)/n.
struct CurveInvariants {
    Vec B;
    Vec A;
    Vec C;
};

CurveInvariants curve_closed_form(Construction construction, int n, double kappa, double kappa_s, double kappa_ss);

// ----------------------------------------------------------------- catalog

struct CatalogEntry {
    std::string id;
    Construction construction;
    std::string generator;    // "curve" or "surface"
    std::string description;  // where the family comes from
    std::map<std::string, double> params;
};

const std::vector<CatalogEntry>& catalog();

struct CatalogInstance {
    CatalogEntry entry;
    Immersion f;
    std::vector<std::string> coordinates;
    std::optional<CurveSpec> curve;
    std::optional<SurfaceSpec> surface;
    std::optional<double> constant_curvature;  // Moebius sectional curvature, when constant
};

/// Accepts plain ids, "assoc-cylinder(theta)" and "assoc-cylinder(<value>)".
/// `params` overrides entry parameters (c, theta, r1). Errors: UnknownId.
CatalogInstance make_catalog(const std::string& id, int n, const std::map<std::string, double>& params = {});

/// Generic graph hypersurface x_{n+1} = sum_i a_i x_i^2 / 2 + small cubic terms with
/// distinct curvatures at the origin; domain [-0.3, 0.3]^n.
Immersion quadric_graph(int n);

}  // namespace moebius
