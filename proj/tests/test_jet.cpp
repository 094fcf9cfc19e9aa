#include <cmath>
#include <vector>

#include "doctest.h"
#include "moebius/jet.hpp"
#include "moebius/jet_linalg.hpp"
#include "moebius/random.hpp"

using namespace moebius;
using Vec = Eigen::VectorXd;

namespace {

double at(const Jet& j, std::vector<int> alpha) { return j.partial(alpha); }

}  // namespace

TEST_CASE("layout counts monomials by degree") {
    const JetLayout* l = JetLayout::get(3, 4);
    CHECK(l->size() == 35);  // C(3+4, 4)
    CHECK(l->count_up_to(0) == 1);
    CHECK(l->count_up_to(1) == 4);
    CHECK(JetLayout::get(3, 4) == l);
    const std::vector<int> e{1, 2, 1};
    const int idx = l->index_of(e);
    REQUIRE(idx >= 0);
    CHECK(l->degree(idx) == 4);
    CHECK(l->factorial_weight(idx) == doctest::Approx(2.0));
    const std::vector<int> too_high{2, 2, 1};
    CHECK(l->index_of(too_high) == -1);
}

TEST_CASE("products match hand expansion") {
    const JetLayout* l = JetLayout::get(2, 3);
    const Jet x = Jet::variable(l, 0, 1.0), y = Jet::variable(l, 1, 2.0);
    const Jet f = x * x * y;  // at (1,2)
    CHECK(f.value() == doctest::Approx(2.0));
    CHECK(f.d(0) == doctest::Approx(4.0));
    CHECK(f.d(1) == doctest::Approx(1.0));
    CHECK(f.dd(0, 0) == doctest::Approx(4.0));
    CHECK(f.dd(0, 1) == doctest::Approx(2.0));
    CHECK(f.dd(1, 1) == doctest::Approx(0.0));
    CHECK(at(f, {2, 1}) == doctest::Approx(2.0));
}

TEST_CASE("elementary functions agree with closed-form derivatives") {
    const JetLayout* l = JetLayout::get(1, 5);
    const double x0 = 0.7;
    const Jet x = Jet::variable(l, 0, x0);
    const Jet e = exp(x);
    const Jet s = sin(x);
    const Jet c = cos(x);
    const Jet lg = log(x);
    const Jet r = reciprocal(x);
    const Jet sq = sqrt(x);
    const Jet sh = sinh(x);
    const Jet ch = cosh(x);
    for (int k = 0; k <= 5; ++k) {
        const std::vector<int> a{k};
        CHECK(e.partial(a) == doctest::Approx(std::exp(x0)));
        const double sk[4] = {std::sin(x0), std::cos(x0), -std::sin(x0), -std::cos(x0)};
        CHECK(s.partial(a) == doctest::Approx(sk[k % 4]));
        CHECK(c.partial(a) == doctest::Approx(sk[(k + 1) % 4]));
        CHECK(sh.partial(a) == doctest::Approx(k % 2 ? std::cosh(x0) : std::sinh(x0)));
        CHECK(ch.partial(a) == doctest::Approx(k % 2 ? std::sinh(x0) : std::cosh(x0)));
        // d^k (1/x) = (-1)^k k! / x^{k+1}
        double fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        CHECK(r.partial(a) == doctest::Approx((k % 2 ? -1 : 1) * fact / std::pow(x0, k + 1)));
        if (k >= 1) CHECK(lg.partial(a) == doctest::Approx((k % 2 ? 1 : -1) * (fact / k) / std::pow(x0, k)));
    }
    CHECK(lg.value() == doctest::Approx(std::log(x0)));
    CHECK(sq.d(0) == doctest::Approx(0.5 / std::sqrt(x0)));
    CHECK(sq.partial(std::vector<int>{2}) == doctest::Approx(-0.25 * std::pow(x0, -1.5)));
}

TEST_CASE("division and pow are inverse to multiplication") {
    const JetLayout* l = JetLayout::get(2, 4);
    Vec p(2);
    p << 0.3, -0.4;
    const JetVec v = variables(l, p);
    const Jet a = 2.0 + v[0] * v[1] + sin(v[0]);
    const Jet b = exp(v[1]) + v[0] * v[0];
    const Jet q = (a / b) * b - a;
    for (double c : q.coeffs()) CHECK(std::abs(c) < 1e-13);
    const Jet w = pow(b, 2.5) * pow(b, -2.5) - 1.0;
    for (double c : w.coeffs()) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("derivative lowers the valid order and commutes") {
    const JetLayout* l = JetLayout::get(2, 4);
    Vec p(2);
    p << 0.1, 0.2;
    const JetVec v = variables(l, p);
    const Jet f = exp(v[0] * v[1]) * cos(v[1]);
    const Jet dxy = f.derivative(0).derivative(1);
    const Jet dyx = f.derivative(1).derivative(0);
    CHECK(dxy.valid_order() == 2);
    for (int i = 0; i < l->count_up_to(2); ++i) CHECK(dxy.coeff(i) == doctest::Approx(dyx.coeff(i)));
    CHECK(dxy.value() == doctest::Approx(f.dd(0, 1)));
}

TEST_CASE("compose evaluates a shifted univariate series") {
    const JetLayout* l = JetLayout::get(2, 3);
    Vec p(2);
    p << 0.5, 0.25;
    const JetVec v = variables(l, p);
    const Jet u = v[0] + v[1];
    const double u0 = u.value();
    // exp about u0: e^{u0} / k!
    std::vector<double> series{std::exp(u0), std::exp(u0), std::exp(u0) / 2, std::exp(u0) / 6};
    const Jet c = Jet::compose(series, u);
    const Jet e = exp(u);
    for (int i = 0; i < l->size(); ++i) CHECK(c.coeff(i) == doctest::Approx(e.coeff(i)));
}

TEST_CASE("jet matrix inverse") {
    const JetLayout* l = JetLayout::get(2, 3);
    Vec p(2);
    p << 0.2, -0.1;
    const JetVec v = variables(l, p);
    JetMatrix m(3, 3, l);
    Rng rng(5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1, 1) + (i == j ? 3.0 : 0.0) + v[i % 2] * v[j % 2];
    const JetMatrix prod = m * inverse(m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Jet err = prod(i, j) - (i == j ? 1.0 : 0.0);
            for (double c : err.coeffs()) CHECK(std::abs(c) < 1e-12);
        }
}
