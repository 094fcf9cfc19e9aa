#pragma once

// Closed-form Moebius invariants of the curve cylinders, cones and rotational
// hypersurfaces with hand-differentiated spiral curvatures. Independent of
// the library: no jets, no examples module.

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace oracle {

struct KappaJet {
    double k, ks, kss;
};

// kappa, kappa', kappa'' of the five spirals and the unit circle.
inline KappaJet spiral(const std::string& kind, double c, double s) {
    if (kind == "circle") return {1.0, 0.0, 0.0};
    if (kind == "log") {
        const double a = std::sqrt(-c);
        return {1 / (a * s), -1 / (a * s * s), 2 / (a * s * s * s)};
    }
    if (kind == "sin") {
        const double a = std::sqrt(-c), sn = std::sin(s), cs = std::cos(s);
        return {1 / (a * sn), -cs / (a * sn * sn), (1 + cs * cs) / (a * sn * sn * sn)};
    }
    if (kind == "sinh") {
        const double a = std::sqrt(-c), sn = std::sinh(s), cs = std::cosh(s);
        return {1 / (a * sn), -cs / (a * sn * sn), (1 + cs * cs) / (a * sn * sn * sn)};
    }
    if (kind == "cosh") {
        const double a = std::sqrt(c), ch = std::cosh(s), sh = std::sinh(s);
        return {1 / (a * ch), -sh / (a * ch * ch), (sh * sh - 1) / (a * ch * ch * ch)};
    }
    // exp
    const double e = std::exp(s);
    return {e, e, e};
}

struct Diagonal {
    std::vector<double> B, A, C;
};

// construction: "cylinder", "cone", "rotational".
inline Diagonal invariants(const std::string& construction, int n, const KappaJet& kj) {
    const double k = kj.k, ks = kj.ks, kss = kj.kss;
    Diagonal d;
    d.B.assign(n, -1.0 / n);
    d.B[0] = (n - 1.0) / n;
    d.C.assign(n, 0.0);
    d.C[0] = -ks / (k * k);
    double a1 = -kss / (k * k * k) + 1.5 * ks * ks / std::pow(k, 4) + (2.0 * n - 1) / (2.0 * n * n);
    double a2 = -0.5 * (ks * ks / std::pow(k, 4) + 1.0 / (n * n));
    if (construction == "cone") {
        a1 += 1 / (2 * k * k);
        a2 += -1 / (2 * k * k);
    } else if (construction == "rotational") {
        a1 += -1 / (2 * k * k);
        a2 += 1 / (2 * k * k);
    }
    d.A.assign(n, a2);
    d.A[0] = a1;
    return d;
}

}  // namespace oracle
