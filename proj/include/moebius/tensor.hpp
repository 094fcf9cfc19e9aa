#pragma once

#include <cmath>
#include <vector>

namespace moebius {

/// Dense n^R array with row-major index order.
template <int R>
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(int n) : n_(n), v_(size_for(n), 0.0) {}

    int n() const { return n_; }
    template <typename... I>
    double& operator()(I... idx) {
        static_assert(sizeof...(I) == R);
        return v_[offset(idx...)];
    }
    template <typename... I>
    double operator()(I... idx) const {
        static_assert(sizeof...(I) == R);
        return v_[offset(idx...)];
    }
    const std::vector<double>& data() const { return v_; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    static std::size_t size_for(int n) {
        std::size_t s = 1;
        for (int r = 0; r < R; ++r) s *= static_cast<std::size_t>(n);
        return s;
    }
    template <typename... I>
    std::size_t offset(I... idx) const {
        std::size_t o = 0;
        ((o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx)), ...);
        return o;
    }

    int n_ = 0;
    std::vector<double> v_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

}  // namespace moebius
