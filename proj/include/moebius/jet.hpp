#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace moebius {

/// Monomial bookkeeping for truncated Taylor polynomials in `nvars` variables
/// up to total degree `order`. Monomials are stored graded (by degree, then
/// lexicographically), so every jet coefficient vector shares this layout.
///
/// Layouts are interned: `get` returns the same pointer for the same
/// (nvars, order) pair and the object lives for the rest of the program.
class JetLayout {
public:
    struct Product {
        int lhs;
        int rhs;
        int out;
    };
    struct DerivativeTerm {
        int src;
        int dst;
        double factor;
    };

    static const JetLayout* get(int nvars, int order);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(degree_.size()); }
    int degree(int idx) const { return degree_[idx]; }
    std::span<const int> exponents(int idx) const;

    /// Index of the monomial with the given exponents, or -1 if above order.
    int index_of(std::span<const int> exps) const;

    /// Number of monomials of degree <= d.
    int count_up_to(int d) const { return degree_offsets_[d + 1]; }

    /// Products (a, b) -> out with deg(out) <= d.
    std::span<const Product> products_up_to(int d) const;

    std::span<const DerivativeTerm> derivative_terms(int var) const { return deriv_[var]; }

    /// Product of factorials of the exponents of monomial idx.
    double factorial_weight(int idx) const { return fact_weight_[idx]; }

private:
    JetLayout(int nvars, int order);

    int nvars_;
    int order_;
    std::vector<int> exps_;
    std::vector<int> degree_;
    std::vector<int> degree_offsets_;
    std::vector<double> fact_weight_;
    std::vector<Product> products_;
    std::vector<int> product_offsets_;
    std::vector<std::vector<DerivativeTerm>> deriv_;
    std::unordered_map<std::uint64_t, int> index_;
};

/// Truncated multivariate Taylor polynomial about a base point.
///
/// `valid_order()` tracks how many degrees carry meaningful coefficients:
/// differentiation lowers it by one and binary operations take the minimum.
/// Coefficients above the valid order are kept at zero.
class Jet {
public:
    Jet() = default;
    Jet(const JetLayout* layout, double value);

    static Jet constant(const JetLayout* layout, double value) { return Jet(layout, value); }
    static Jet variable(const JetLayout* layout, int var, double value);

    const JetLayout* layout() const { return layout_; }
    int valid_order() const { return valid_; }
    double value() const { return c_[0]; }
    double coeff(int idx) const { return c_[idx]; }
    std::span<const double> coeffs() const { return c_; }
    std::span<double> coeffs_mut() { return c_; }
    void set_valid_order(int v);

    /// Partial derivative at the base point for the given multi-index
    /// (alpha! times the Taylor coefficient).
    double partial(std::span<const int> alpha) const;
    /// First partial derivative at the base point.
    double d(int var) const;
    /// Second partial derivative at the base point.
    double dd(int a, int b) const;

    /// Exact derivative as a jet (valid order drops by one).
    Jet derivative(int var) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);
    Jet operator-() const;

    /// Evaluate sum_k series[k] * (x - x0)^k, with series the univariate
    /// Taylor coefficients of some function about x0 = x.value().
    static Jet compose(std::span<const double> series, const Jet& x);

private:
    friend Jet operator*(const Jet& a, const Jet& b);
    const JetLayout* layout_ = nullptr;
    std::vector<double> c_;
    int valid_ = 0;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);

Jet sqrt(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);
Jet pow(const Jet& x, double r);
Jet reciprocal(const Jet& x);

}  // namespace moebius
