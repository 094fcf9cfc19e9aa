#include "moebius/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace moebius {

namespace {

std::uint64_t encode(std::span<const int> exps, int base) {
    std::uint64_t code = 0;
    for (auto it = exps.rbegin(); it != exps.rend(); ++it) code = code * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(*it);
    return code;
}

// Enumerate exponent vectors of total degree d in lexicographic order.
void enumerate_degree(int nvars, int d, std::vector<int>& current, int var, std::vector<int>& out) {
    if (var == nvars - 1) {
        current[var] = d;
        out.insert(out.end(), current.begin(), current.end());
        return;
    }
    for (int e = d; e >= 0; --e) {
        current[var] = e;
        enumerate_degree(nvars, d - e, current, var + 1, out);
    }
}

}  // namespace

const JetLayout* JetLayout::get(int nvars, int order) {
    if (nvars < 1 || order < 0) throw std::invalid_argument("JetLayout: nvars >= 1 and order >= 0 required");
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> layouts;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = layouts[{nvars, order}];
    if (!slot) slot.reset(new JetLayout(nvars, order));
    return slot.get();
}

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
    std::vector<int> current(nvars, 0);
    degree_offsets_.push_back(0);
    for (int d = 0; d <= order; ++d) {
        const auto before = exps_.size() / nvars;
        enumerate_degree(nvars, d, current, 0, exps_);
        const auto after = exps_.size() / nvars;
        for (auto i = before; i < after; ++i) degree_.push_back(d);
        degree_offsets_.push_back(static_cast<int>(after));
    }
    // Pad so count_up_to(d) is safe for d up to order + 1.
    degree_offsets_.push_back(degree_offsets_.back());

    auto& index = index_;
    for (int i = 0; i < size(); ++i) {
        auto e = exponents(i);
        index[encode(e, order + 1)] = i;
        double w = 1.0;
        for (int v : e)
            for (int k = 2; k <= v; ++k) w *= k;
        fact_weight_.push_back(w);
    }

    std::vector<int> sum(nvars);
    for (int a = 0; a < size(); ++a) {
        for (int b = 0; b < size(); ++b) {
            if (degree_[a] + degree_[b] > order) continue;
            auto ea = exponents(a);
            auto eb = exponents(b);
            for (int v = 0; v < nvars; ++v) sum[v] = ea[v] + eb[v];
            products_.push_back({a, b, index.at(encode(sum, order + 1))});
        }
    }
    std::stable_sort(products_.begin(), products_.end(),
                     [this](const Product& x, const Product& y) { return degree_[x.out] < degree_[y.out]; });
    product_offsets_.assign(order + 2, 0);
    for (const auto& p : products_) ++product_offsets_[degree_[p.out] + 1];
    for (int d = 1; d <= order + 1; ++d) product_offsets_[d] += product_offsets_[d - 1];

    deriv_.resize(nvars);
    std::vector<int> lowered(nvars);
    for (int v = 0; v < nvars; ++v) {
        for (int i = 0; i < size(); ++i) {
            auto e = exponents(i);
            if (e[v] == 0) continue;
            std::copy(e.begin(), e.end(), lowered.begin());
            --lowered[v];
            deriv_[v].push_back({i, index.at(encode(lowered, order + 1)), static_cast<double>(e[v])});
        }
    }
}

std::span<const int> JetLayout::exponents(int idx) const {
    return std::span<const int>(exps_).subspan(static_cast<std::size_t>(idx) * nvars_, nvars_);
}

int JetLayout::index_of(std::span<const int> exps) const {
    int total = 0;
    for (int e : exps) {
        if (e < 0) return -1;
        total += e;
    }
    if (total > order_ || static_cast<int>(exps.size()) != nvars_) return -1;
    auto it = index_.find(encode(exps, order_ + 1));
    return it == index_.end() ? -1 : it->second;
}

std::span<const JetLayout::Product> JetLayout::products_up_to(int d) const {
    d = std::clamp(d, -1, order_);
    return std::span<const Product>(products_).first(static_cast<std::size_t>(product_offsets_[d + 1]));
}

// ---------------------------------------------------------------------------

Jet::Jet(const JetLayout* layout, double value) : layout_(layout), c_(layout->size(), 0.0), valid_(layout->order()) {
    c_[0] = value;
}

Jet Jet::variable(const JetLayout* layout, int var, double value) {
    Jet j(layout, value);
    if (layout->order() >= 1) {
        std::vector<int> e(layout->nvars(), 0);
        e[var] = 1;
        j.c_[layout->index_of(e)] = 1.0;
    }
    return j;
}

void Jet::set_valid_order(int v) {
    valid_ = std::min(v, layout_->order());
    for (int i = layout_->count_up_to(std::max(valid_, -1)); i < layout_->size(); ++i) c_[i] = 0.0;
}

double Jet::partial(std::span<const int> alpha) const {
    int total = 0;
    for (int a : alpha) total += a;
    if (total > valid_) throw std::logic_error("Jet::partial: requested order exceeds valid order");
    const int idx = layout_->index_of(alpha);
    return c_[idx] * layout_->factorial_weight(idx);
}

double Jet::d(int var) const {
    std::vector<int> e(layout_->nvars(), 0);
    e[var] = 1;
    return partial(e);
}

double Jet::dd(int a, int b) const {
    std::vector<int> e(layout_->nvars(), 0);
    ++e[a];
    ++e[b];
    return partial(e);
}

Jet Jet::derivative(int var) const {
    if (valid_ < 1) throw std::logic_error("Jet::derivative: valid order exhausted");
    Jet out(layout_, 0.0);
    out.valid_ = valid_ - 1;
    const int limit = layout_->count_up_to(valid_);
    for (const auto& t : layout_->derivative_terms(var)) {
        if (t.src < limit) out.c_[t.dst] += t.factor * c_[t.src];
    }
    return out;
}

Jet& Jet::operator+=(const Jet& o) {
    assert(layout_ == o.layout_);
    valid_ = std::min(valid_, o.valid_);
    const int limit = layout_->count_up_to(valid_);
    for (int i = 0; i < limit; ++i) c_[i] += o.c_[i];
    for (int i = limit; i < layout_->size(); ++i) c_[i] = 0.0;
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    assert(layout_ == o.layout_);
    valid_ = std::min(valid_, o.valid_);
    const int limit = layout_->count_up_to(valid_);
    for (int i = 0; i < limit; ++i) c_[i] -= o.c_[i];
    for (int i = limit; i < layout_->size(); ++i) c_[i] = 0.0;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    assert(a.layout_ == b.layout_);
    Jet out(a.layout_, 0.0);
    out.valid_ = std::min(a.valid_, b.valid_);
    double* o = out.c_.data();
    const double* x = a.c_.data();
    const double* y = b.c_.data();
    for (const auto& p : a.layout_->products_up_to(out.valid_)) o[p.out] += x[p.lhs] * y[p.rhs];
    return out;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this * reciprocal(o); }

Jet& Jet::operator+=(double s) {
    c_[0] += s;
    return *this;
}
Jet& Jet::operator-=(double s) {
    c_[0] -= s;
    return *this;
}
Jet& Jet::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}
Jet& Jet::operator/=(double s) {
    for (double& v : c_) v /= s;
    return *this;
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (double& v : out.c_) v = -v;
    return out;
}

Jet Jet::compose(std::span<const double> series, const Jet& x) {
    Jet delta = x;
    delta.c_[0] = 0.0;
    int top = std::min(static_cast<int>(series.size()) - 1, x.valid_);
    if (top < 0) throw std::invalid_argument("Jet::compose: empty series");
    Jet result(x.layout_, series[top]);
    result.valid_ = x.valid_;
    for (int k = top - 1; k >= 0; --k) {
        result = result * delta;
        result.c_[0] += series[k];
    }
    return result;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a -= s; }
Jet operator-(double s, const Jet& a) {
    Jet out = -a;
    return out += s;
}
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a) { return reciprocal(a) *= s; }

namespace {

int series_order(const Jet& x) { return x.valid_order(); }

}  // namespace

Jet exp(const Jet& x) {
    const int k = series_order(x);
    std::vector<double> s(k + 1);
    const double e = std::exp(x.value());
    double fact = 1.0;
    for (int i = 0; i <= k; ++i) {
        if (i > 0) fact *= i;
        s[i] = e / fact;
    }
    return Jet::compose(s, x);
}

Jet log(const Jet& x) {
    const double x0 = x.value();
    if (!(x0 > 0.0)) throw std::domain_error("log of non-positive jet");
    const int k = series_order(x);
    std::vector<double> s(k + 1);
    s[0] = std::log(x0);
    double p = 1.0;
    for (int i = 1; i <= k; ++i) {
        p *= x0;
        s[i] = ((i % 2 == 1) ? 1.0 : -1.0) / (i * p);
    }
    return Jet::compose(s, x);
}

namespace {

// Series for functions whose derivatives cycle through `cycle` with period.
Jet cyclic(const Jet& x, const double* cycle, int period) {
    const int k = series_order(x);
    std::vector<double> s(k + 1);
    double fact = 1.0;
    for (int i = 0; i <= k; ++i) {
        if (i > 0) fact *= i;
        s[i] = cycle[i % period] / fact;
    }
    return Jet::compose(s, x);
}

}  // namespace

Jet sin(const Jet& x) {
    const double a = std::sin(x.value()), b = std::cos(x.value());
    const double cycle[4] = {a, b, -a, -b};
    return cyclic(x, cycle, 4);
}

Jet cos(const Jet& x) {
    const double a = std::sin(x.value()), b = std::cos(x.value());
    const double cycle[4] = {b, -a, -b, a};
    return cyclic(x, cycle, 4);
}

Jet sinh(const Jet& x) {
    const double cycle[2] = {std::sinh(x.value()), std::cosh(x.value())};
    return cyclic(x, cycle, 2);
}

Jet cosh(const Jet& x) {
    const double cycle[2] = {std::cosh(x.value()), std::sinh(x.value())};
    return cyclic(x, cycle, 2);
}

Jet pow(const Jet& x, double r) {
    const double x0 = x.value();
    if (!(x0 > 0.0)) throw std::domain_error("pow of non-positive jet");
    const int k = series_order(x);
    std::vector<double> s(k + 1);
    double binom = 1.0;
    const double base = std::pow(x0, r);
    double p = 1.0;
    for (int i = 0; i <= k; ++i) {
        if (i > 0) {
            binom *= (r - (i - 1)) / i;
            p *= x0;
        }
        s[i] = base * binom / p;
    }
    return Jet::compose(s, x);
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

Jet reciprocal(const Jet& x) {
    const double x0 = x.value();
    if (x0 == 0.0) throw std::domain_error("reciprocal of jet with zero value");
    const int k = series_order(x);
    std::vector<double> s(k + 1);
    double term = 1.0 / x0;
    for (int i = 0; i <= k; ++i) {
        s[i] = term;
        term *= -1.0 / x0;
    }
    return Jet::compose(s, x);
}

}  // namespace moebius
