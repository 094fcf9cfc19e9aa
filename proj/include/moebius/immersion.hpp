#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "moebius/config.hpp"
#include "moebius/jet_linalg.hpp"

namespace moebius {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Map from coordinate jets to ambient-coordinate jets. Must only use jet
/// arithmetic so that any layout (and any base point) is accepted.
using JetMap = std::function<JetVec(const JetVec&)>;
using PointMap = std::function<Vec(const Vec&)>;

inline constexpr int kMaxJetOrder = 5;

/// Axis-aligned box with open interior.
struct Box {
    Vec lo;
    Vec hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool interior(const Vec& p) const;
    bool contains(const Vec& p) const;
    /// Box shrunk by `fraction` of each side length on both ends.
    Box shrunk(double fraction) const;
    Vec center() const { return 0.5 * (lo + hi); }
};

/// Parametrized hypersurface f: domain subset R^n -> R^{n+1}.
///
/// Analytic members carry a JetMap and are differentiated exactly by Taylor
/// arithmetic. Black-box members only evaluate points and are differentiated
/// by central finite differences. `orientation` flips the chosen unit normal.
class Immersion {
public:
    static Immersion analytic(int n, Box domain, JetMap map, std::string label);
    static Immersion black_box(int n, Box domain, PointMap map, std::string label, double fd_step = 1e-4);

    int n() const { return n_; }
    int ambient_dim() const { return n_ + 1; }
    const Box& domain() const { return domain_; }
    const std::string& label() const { return label_; }
    int orientation() const { return orientation_; }
    JetBackend backend() const { return backend_; }
    double fd_step() const { return fd_step_; }
    bool has_jet_map() const { return static_cast<bool>(jet_map_); }
    const JetMap& jet_map() const { return jet_map_; }

    /// Same immersion evaluated through a different backend. Switching an
    /// analytic member to FiniteDiff keeps exact point evaluation.
    Immersion with_backend(JetBackend backend, double fd_step) const;
    Immersion with_reversed_normal() const;
    Immersion with_label(std::string label) const;

    Vec position(const Vec& p) const;

    /// Taylor jets (one per ambient coordinate) of order `order` at interior
    /// point p. Errors: BoundaryPoint, OrderUnsupported, StencilOutsideDomain.
    JetVec taylor(const Vec& p, int order) const;

private:
    int n_ = 0;
    Box domain_;
    std::string label_;
    JetMap jet_map_;
    PointMap point_map_;
    JetBackend backend_ = JetBackend::Taylor;
    double fd_step_ = 1e-4;
    int orientation_ = 1;
};

/// Reparametrize f by a coordinate change phi: new_domain -> domain(f).
Immersion reparametrize(const Immersion& f, int n_new, Box new_domain, JetMap phi, std::string label);

/// Partial derivatives d^alpha f(p) for all |alpha| <= order.
struct JetTable {
    int n = 0;
    int order = 0;
    std::vector<std::vector<int>> alphas;
    std::vector<Vec> values;

    /// Derivative for multi-index alpha. Throws std::out_of_range if absent.
    const Vec& at(std::span<const int> alpha) const;
};

JetTable jet(const Immersion& f, const Vec& p, int order);

/// Classical surface data at a point (coordinate basis).
struct EuclideanData {
    Mat I;
    Mat II;
    double H = 0.0;
    Vec k;  // principal curvatures, descending
    Vec normal;
    Mat frame;  // columns: I-orthonormal basis in coordinates
    Mat jacobian;
};

EuclideanData fundamental_forms(const Immersion& f, const Vec& p);

/// rho^2 = n/(n-1) (|II|^2 - n H^2).
double umbilic_deficit(const Immersion& f, const Vec& p);

/// Jet-level first and second fundamental forms shared by the invariant
/// pipeline. Valid orders: DF order-1, normal order-1, II order-2.
struct FormJets {
    int n = 0;
    std::vector<JetVec> DF;  // DF[a][j] = d_a f_j
    JetMatrix I;
    JetMatrix I_inv;
    JetVec normal;
    JetMatrix II;
    Jet H;
    Jet rho2;
};

/// Throws DegenerateJacobian when the Jacobian is rank deficient at the base point.
FormJets form_jets(const JetVec& F, int n, int orientation);

}  // namespace moebius
