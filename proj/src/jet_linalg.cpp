#include "moebius/jet_linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace moebius {

Eigen::MatrixXd JetMatrix::values() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).value();
    return m;
}

Eigen::MatrixXd JetMatrix::d(int var) const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).d(var);
    return m;
}

JetMatrix JetMatrix::derivative(int var) const {
    JetMatrix out = *this;
    for (auto& e : out.a_) e = e.derivative(var);
    return out;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("JetMatrix product: shape mismatch");
    const JetLayout* layout = a(0, 0).layout();
    JetMatrix out(a.rows(), b.cols(), layout);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Jet s = a(i, 0) * b(0, j);
            for (int k = 1; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            out(i, j) = std::move(s);
        }
    return out;
}

JetMatrix operator+(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

JetMatrix operator-(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

JetMatrix operator*(const Jet& s, const JetMatrix& a) {
    JetMatrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

JetMatrix inverse(const JetMatrix& m) {
    const int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const JetLayout* layout = m(0, 0).layout();
    JetMatrix a = m;
    JetMatrix inv = identity(n, layout);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col).value()) > std::abs(a(piv, col).value())) piv = r;
        if (a(piv, col).value() == 0.0) throw std::domain_error("inverse: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const Jet r = reciprocal(a(col, col));
        for (int j = 0; j < n; ++j) {
            a(col, j) = a(col, j) * r;
            inv(col, j) = inv(col, j) * r;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            const Jet f = a(row, col);
            for (int j = 0; j < n; ++j) {
                a(row, j) -= f * a(col, j);
                inv(row, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Jet trace(const JetMatrix& m) {
    Jet t = m(0, 0);
    for (int i = 1; i < m.rows(); ++i) t += m(i, i);
    return t;
}

JetMatrix identity(int n, const JetLayout* layout) {
    JetMatrix id(n, n, layout);
    for (int i = 0; i < n; ++i) id(i, i) = Jet(layout, 1.0);
    return id;
}

Jet dot(const JetVec& a, const JetVec& b) {
    Jet s = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Eigen::VectorXd values(const JetVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].value();
    return out;
}

JetVec variables(const JetLayout* layout, const Eigen::VectorXd& p) {
    JetVec x;
    x.reserve(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i) x.push_back(Jet::variable(layout, i, p[i]));
    return x;
}

}  // namespace moebius
