#pragma once

#include <cstdint>
#include <vector>

#include "moebius/config.hpp"
#include "moebius/immersion.hpp"

namespace moebius {

/// Vector in R^{n+3}_1; index 0 carries the minus sign.
struct LorentzVector {
    Vec coords;

    int n() const { return static_cast<int>(coords.size()) - 3; }
};

/// <x,y> = -x0 y0 + sum_{k>=1} xk yk. Throws DimensionMismatch on unequal lengths.
double lorentz_inner(const LorentzVector& x, const LorentzVector& y);
double lorentz_inner(const Vec& x, const Vec& y);

struct MoebiusFrame {
    LorentzVector Y;
    LorentzVector N;
    std::vector<LorentzVector> Yi;
    LorentzVector xi;

    /// Largest deviation over the frame pairings (Y,Y), (N,N), (N,Y)-1,
    /// (Yi,Y), (Yi,N), (Yi,Yj)-delta, (xi,Y), (xi,xi)-1.
    double residual() const;
};

/// Errors: UmbilicPoint, BoundaryPoint.
MoebiusFrame lift_frame(const Immersion& f, const Vec& p, const RunConfig& cfg = {});

/// lambda Y + xi.
LorentzVector curvature_sphere(const MoebiusFrame& frame, double lambda);
/// <s, (1,-1,0,...,0)>; equals minus the Euclidean principal curvature.
double hyperplane_pairing(const LorentzVector& s);
bool is_hyperplane(const LorentzVector& s, double tol = 1e-8);

/// Moebius transformation of R^{n+1} as a composition of generators.
struct ConformalMap {
    enum class Kind { Translation, Dilation, Orthogonal, Inversion, Composition };

    Kind kind = Kind::Composition;
    Vec vector;        // translation offset or inversion center
    double scalar = 1.0;  // dilation factor or inversion radius
    Mat matrix;        // orthogonal part
    std::vector<ConformalMap> parts;  // applied in order: parts[0] first

    static ConformalMap identity() { return {}; }
    static ConformalMap translation(Vec v);
    static ConformalMap dilation(double s);
    static ConformalMap orthogonal(Mat q);
    static ConformalMap inversion(Vec center, double radius);
    static ConformalMap compose(std::vector<ConformalMap> parts);

    Vec apply(const Vec& x) const;
    JetVec apply(const JetVec& x) const;
    ConformalMap inverse() const;

    bool operator==(const ConformalMap& o) const;
};

/// Errors: InversionSingularity (checked lazily at each evaluated point).
Immersion apply_conformal(const ConformalMap& T, const Immersion& f);

/// orthogonal o dilation o translation o (optional) inversion, reproducible from seed.
/// `n` is the hypersurface dimension; the map acts on R^{n+1}.
ConformalMap random_conformal(std::uint64_t seed, int n);

}  // namespace moebius
