#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "series.hpp"

namespace solilab {

/// Element of the product algebra Q^n (cyclic sites k mod n) or of a finite
/// window of Q^Z (sites lo..hi), with coordinate-wise operations.
///
/// shift(s) realises the automorphism (w_k) -> (w_{k+s}). On a window the
/// result lives on the translated window; binary operations on windows act
/// on the intersection of the two windows.
template <class A>
class SiteFamily {
public:
    using value_type = A;

    SiteFamily() = default;

    static SiteFamily cyclic(std::vector<A> values) {
        if (values.empty()) throw ShapeMismatch("cyclic family needs at least one site");
        SiteFamily f;
        f.period_ = static_cast<int>(values.size());
        f.values_ = std::move(values);
        return f;
    }

    static SiteFamily window(int lo, std::vector<A> values) {
        SiteFamily f;
        f.lo_ = lo;
        f.values_ = std::move(values);
        return f;
    }

    bool is_cyclic() const noexcept { return period_.has_value(); }
    int period() const { return period_.value(); }
    int lo() const noexcept { return is_cyclic() ? 0 : lo_; }
    int hi() const noexcept { return lo() + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    bool contains(int k) const noexcept { return is_cyclic() || (k >= lo_ && k <= hi()); }

    const A& operator[](int k) const { return values_.at(slot(k)); }
    A& operator[](int k) { return values_.at(slot(k)); }

    /// Sites in ascending order (0..n-1 for cyclic families).
    std::vector<int> sites() const {
        std::vector<int> s;
        for (int k = lo(); k <= hi(); ++k) s.push_back(k);
        return s;
    }

    const std::vector<A>& values() const noexcept { return values_; }

    /// (w_k) -> (w_{k+s}).
    SiteFamily shift(int s) const {
        SiteFamily f = *this;
        if (is_cyclic()) {
            for (int k = 0; k < period(); ++k) f.values_[k] = (*this)[k + s];
        } else {
            f.lo_ = lo_ - s;
        }
        return f;
    }

    template <class Fn>
    auto map(Fn&& fn) const -> SiteFamily<std::decay_t<decltype(fn(std::declval<const A&>()))>> {
        using B = std::decay_t<decltype(fn(std::declval<const A&>()))>;
        std::vector<B> out;
        out.reserve(values_.size());
        for (const A& v : values_) out.push_back(fn(v));
        return is_cyclic() ? SiteFamily<B>::cyclic(std::move(out)) : SiteFamily<B>::window(lo_, std::move(out));
    }

    template <class Fn>
    SiteFamily zip(const SiteFamily& o, Fn&& fn) const {
        if (is_cyclic() != o.is_cyclic()) throw ShapeMismatch("mixing cyclic and windowed site families");
        if (is_cyclic()) {
            if (period() != o.period()) throw ShapeMismatch("site families with different periods");
            std::vector<A> out;
            for (int k = 0; k < period(); ++k) out.push_back(fn(values_[k], o.values_[k]));
            return cyclic(std::move(out));
        }
        const int a = std::max(lo(), o.lo());
        const int b = std::min(hi(), o.hi());
        std::vector<A> out;
        for (int k = a; k <= b; ++k) out.push_back(fn((*this)[k], o[k]));
        return window(a, std::move(out));
    }

private:
    std::size_t slot(int k) const {
        if (is_cyclic()) {
            const int n = period();
            return static_cast<std::size_t>(((k % n) + n) % n);
        }
        if (!contains(k)) throw ShapeMismatch("site " + std::to_string(k) + " outside window");
        return static_cast<std::size_t>(k - lo_);
    }

    int lo_ = 0;
    std::optional<int> period_;
    std::vector<A> values_;
};

template <class A>
SiteFamily<A> operator+(const SiteFamily<A>& a, const SiteFamily<A>& b) {
    return a.zip(b, [](const A& x, const A& y) { return x + y; });
}
template <class A>
SiteFamily<A> operator-(const SiteFamily<A>& a, const SiteFamily<A>& b) {
    return a.zip(b, [](const A& x, const A& y) { return x - y; });
}
template <class A>
SiteFamily<A> operator*(const SiteFamily<A>& a, const SiteFamily<A>& b) {
    return a.zip(b, [](const A& x, const A& y) { return x * y; });
}
template <class A>
SiteFamily<A> operator-(const SiteFamily<A>& a) {
    return a.map([](const A& x) { return -x; });
}

template <class A>
SiteFamily<A> zero_like(const SiteFamily<A>& f) {
    return f.map([](const A& x) { return zero_like(x); });
}
template <class A>
SiteFamily<A> one_like(const SiteFamily<A>& f) {
    return f.map([](const A& x) { return one_like(x); });
}
template <class A>
bool is_zero(const SiteFamily<A>& f) {
    for (const A& x : f.values())
        if (!is_zero(x)) return false;
    return true;
}
template <class A>
SiteFamily<A> inverse(const SiteFamily<A>& f) {
    std::vector<A> out;
    for (int k : f.sites()) {
        try {
            out.push_back(inverse(f[k]));
        } catch (const Error& e) {
            throw NonInvertibleSolution(k, e.what());
        }
    }
    return f.is_cyclic() ? SiteFamily<A>::cyclic(std::move(out)) : SiteFamily<A>::window(f.lo(), std::move(out));
}
template <class A>
double magnitude(const SiteFamily<A>& f) {
    double best = 0.0;
    for (const A& x : f.values()) best = std::max(best, magnitude(x));
    return best;
}
template <class A>
int valid_order(const SiteFamily<A>& f) {
    int v = std::numeric_limits<int>::max();
    for (const A& x : f.values()) v = std::min(v, valid_order(x));
    return v;
}

template <class A, class F>
SiteFamily<A> derive(const SiteFamily<A>& f, const Derivation<F>& d) {
    return f.map([&](const A& x) { return derive(x, d); });
}

} // namespace solilab
