#pragma once

#include <Eigen/Dense>
#include <vector>

#include "moebius/jet.hpp"

namespace moebius {

using JetVec = std::vector<Jet>;

/// Dense row-major matrix of jets sharing one layout.
class JetMatrix {
public:
    JetMatrix() = default;
    JetMatrix(int rows, int cols, const JetLayout* layout, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Jet(layout, fill)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Jet& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Jet& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Eigen::MatrixXd values() const;
    /// Matrix of partial derivatives d/dx_var of every entry at the base point.
    Eigen::MatrixXd d(int var) const;
    JetMatrix derivative(int var) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Jet> a_;
};

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator+(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator-(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator*(const Jet& s, const JetMatrix& a);

/// Inverse by Gauss-Jordan elimination with pivoting chosen on base-point values.
JetMatrix inverse(const JetMatrix& m);
Jet trace(const JetMatrix& m);
JetMatrix identity(int n, const JetLayout* layout);

Jet dot(const JetVec& a, const JetVec& b);
Eigen::VectorXd values(const JetVec& v);

/// Jets of the n coordinate variables at base point p.
JetVec variables(const JetLayout* layout, const Eigen::VectorXd& p);

}  // namespace moebius
