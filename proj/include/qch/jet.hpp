// SPDX-License-Identifier: Apache-2.0
/// \file
/// Truncated second-order Taylor arithmetic in four chart variables.
///
/// A Jet2 carries a value, the four first-order coefficients and the ten
/// independent second-order coefficients of a scalar expression, and
/// propagates them through +, -, *, /, sqrt, exp, log, pow, sin, cos.
/// The scalar type is a template parameter so jets can nest: Jet2<Jet2<double>>
/// evaluated at a seed point exposes third and fourth derivatives of the
/// underlying expression, which is how metric components derived from a
/// potential are differentiated twice more.

#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace qch {

namespace detail {
/// Packed index for the upper triangle of a symmetric 4x4 array.
constexpr int sym4_index(int i, int j) {
    return (i <= j) ? (i * (7 - i)) / 2 + j : (j * (7 - j)) / 2 + i;
}
} // namespace detail

template <class T>
struct Jet2 {
    using scalar_type = T;

    T v{};                 ///< value
    std::array<T, 4> d{};  ///< first-order coefficients
    std::array<T, 10> h{}; ///< second-order coefficients, upper triangle packed

    constexpr Jet2() = default;

    /// Constant jet (all derivatives zero).
    constexpr Jet2(const T& value) : v(value) {}
    constexpr Jet2(double value)
        requires(!std::is_same_v<T, double>)
        : v(value) {}

    /// Seed jet for chart variable `index`.
    static Jet2 variable(const T& value, int index) {
        Jet2 j(value);
        j.d[static_cast<std::size_t>(index)] = T(1.0);
        return j;
    }

    const T& hess(int i, int j) const { return h[static_cast<std::size_t>(detail::sym4_index(i, j))]; }
    T& hess(int i, int j) { return h[static_cast<std::size_t>(detail::sym4_index(i, j))]; }

    Jet2 operator-() const {
        Jet2 r;
        r.v = -v;
        for (int i = 0; i < 4; ++i) r.d[i] = -d[i];
        for (int i = 0; i < 10; ++i) r.h[i] = -h[i];
        return r;
    }

    Jet2& operator+=(const Jet2& o) {
        v += o.v;
        for (int i = 0; i < 4; ++i) d[i] += o.d[i];
        for (int i = 0; i < 10; ++i) h[i] += o.h[i];
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        v -= o.v;
        for (int i = 0; i < 4; ++i) d[i] -= o.d[i];
        for (int i = 0; i < 10; ++i) h[i] -= o.h[i];
        return *this;
    }
    Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
    Jet2& operator/=(const Jet2& o) { return *this = *this / o; }

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }

    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        Jet2 r;
        r.v = a.v * b.v;
        for (int i = 0; i < 4; ++i) r.d[i] = a.v * b.d[i] + b.v * a.d[i];
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j)
                r.hess(i, j) = a.v * b.hess(i, j) + b.v * a.hess(i, j) + a.d[i] * b.d[j] + a.d[j] * b.d[i];
        return r;
    }

    friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

    friend Jet2 operator+(Jet2 a, double s) {
        a.v += T(s);
        return a;
    }
    friend Jet2 operator+(double s, Jet2 a) { return a + s; }
    friend Jet2 operator-(Jet2 a, double s) {
        a.v -= T(s);
        return a;
    }
    friend Jet2 operator-(double s, const Jet2& a) { return -a + s; }
    friend Jet2 operator*(const Jet2& a, double s) {
        Jet2 r;
        r.v = a.v * T(s);
        for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] * T(s);
        for (int i = 0; i < 10; ++i) r.h[i] = a.h[i] * T(s);
        return r;
    }
    friend Jet2 operator*(double s, const Jet2& a) { return a * s; }
    friend Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
    friend Jet2 operator/(double s, const Jet2& a) { return reciprocal(a) * s; }

    /// Chain rule for a unary function with value f0 and derivatives f1, f2 at x.v.
    friend Jet2 compose(const T& f0, const T& f1, const T& f2, const Jet2& x) {
        Jet2 r;
        r.v = f0;
        for (int i = 0; i < 4; ++i) r.d[i] = f1 * x.d[i];
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) r.hess(i, j) = f1 * x.hess(i, j) + f2 * x.d[i] * x.d[j];
        return r;
    }

    friend Jet2 reciprocal(const Jet2& x) {
        T inv = T(1.0) / x.v;
        T inv2 = inv * inv;
        return compose(inv, -inv2, T(2.0) * inv2 * inv, x);
    }

    friend Jet2 sqrt(const Jet2& x) {
        using std::sqrt;
        T s = sqrt(x.v);
        T f1 = T(0.5) / s;
        T f2 = T(-0.25) / (s * x.v);
        return compose(s, f1, f2, x);
    }

    friend Jet2 exp(const Jet2& x) {
        using std::exp;
        T e = exp(x.v);
        return compose(e, e, e, x);
    }

    friend Jet2 log(const Jet2& x) {
        using std::log;
        T inv = T(1.0) / x.v;
        return compose(log(x.v), inv, -inv * inv, x);
    }

    friend Jet2 pow(const Jet2& x, double e) {
        using std::pow;
        T p = pow(x.v, e);
        T p1 = pow(x.v, e - 1.0) * T(e);
        T p2 = pow(x.v, e - 2.0) * T(e * (e - 1.0));
        return compose(p, p1, p2, x);
    }

    /// Integer power by repeated multiplication; valid for any sign of the base.
    friend Jet2 pown(const Jet2& x, int n) {
        if (n < 0) return reciprocal(pown(x, -n));
        Jet2 r(T(1.0));
        Jet2 base = x;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    friend Jet2 sin(const Jet2& x) {
        using std::cos;
        using std::sin;
        T s = sin(x.v);
        return compose(s, cos(x.v), -s, x);
    }

    friend Jet2 cos(const Jet2& x) {
        using std::cos;
        using std::sin;
        T c = cos(x.v);
        return compose(c, -sin(x.v), -c, x);
    }
};

using Jet2d = Jet2<double>;
using Jet2x2d = Jet2<Jet2d>; // nested jet, carries derivatives up to order four

inline bool is_finite(double x) { return std::isfinite(x); }

template <class T>
bool is_finite(const Jet2<T>& j) {
    if (!is_finite(j.v)) return false;
    for (const auto& x : j.d)
        if (!is_finite(x)) return false;
    for (const auto& x : j.h)
        if (!is_finite(x)) return false;
    return true;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Jet2<T>& j) {
    os << "{v=" << j.v << ", d=[";
    for (int i = 0; i < 4; ++i) os << (i ? "," : "") << j.d[i];
    os << "]}";
    return os;
}

} // namespace qch
