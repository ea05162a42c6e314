#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace debranges {

/// Truncated Taylor expansion f(x0 + h) = sum_k c[k] h^k, k < N.
///
/// Arithmetic propagates the coefficients exactly (up to rounding), which is
/// how phase derivatives are obtained from closed forms without finite
/// differences. Coefficients are Taylor coefficients, not derivatives; use
/// derivative(k) to read f^(k)(x0).
template <typename T, std::size_t N>
struct Jet {
    std::array<T, N> c{};

    static Jet constant(T v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    static Jet variable(T x0) {
        Jet j;
        j.c[0] = x0;
        if constexpr (N > 1) j.c[1] = T(1);
        return j;
    }
    /// Build from derivatives f, f', f'', ...
    static Jet from_derivatives(const std::array<T, N>& d) {
        Jet j;
        T fact = 1;
        for (std::size_t k = 0; k < N; ++k) {
            if (k > 0) fact *= T(k);
            j.c[k] = d[k] / fact;
        }
        return j;
    }

    T value() const { return c[0]; }
    T derivative(std::size_t k) const {
        T fact = 1;
        for (std::size_t i = 2; i <= k; ++i) fact *= T(i);
        return c[k] * fact;
    }
    /// d/dx, losing the top coefficient.
    Jet<T, N> diff() const {
        Jet<T, N> r;
        for (std::size_t k = 0; k + 1 < N; ++k) r.c[k] = c[k + 1] * T(k + 1);
        return r;
    }

    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k < N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k < N; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(T s) {
        for (auto& v : c) v *= s;
        return *this;
    }
    Jet& operator+=(T s) {
        c[0] += s;
        return *this;
    }
};

template <typename T, std::size_t N>
Jet<T, N> operator+(Jet<T, N> a, const Jet<T, N>& b) { return a += b; }
template <typename T, std::size_t N>
Jet<T, N> operator-(Jet<T, N> a, const Jet<T, N>& b) { return a -= b; }
template <typename T, std::size_t N>
Jet<T, N> operator-(Jet<T, N> a) { return a *= T(-1); }
template <typename T, std::size_t N>
Jet<T, N> operator*(Jet<T, N> a, T s) { return a *= s; }
template <typename T, std::size_t N>
Jet<T, N> operator*(T s, Jet<T, N> a) { return a *= s; }
template <typename T, std::size_t N>
Jet<T, N> operator+(Jet<T, N> a, T s) { return a += s; }
template <typename T, std::size_t N>
Jet<T, N> operator+(T s, Jet<T, N> a) { return a += s; }

template <typename T, std::size_t N>
Jet<T, N> operator*(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; i + j < N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> operator/(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    for (std::size_t k = 0; k < N; ++k) {
        T s = a.c[k];
        for (std::size_t j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
        r.c[k] = s / b.c[0];
    }
    return r;
}

/// f^p for real p; requires f(x0) > 0 unless p is a non-negative integer.
template <typename T, std::size_t N>
Jet<T, N> pow(const Jet<T, N>& f, T p) {
    using std::pow;
    Jet<T, N> g;
    g.c[0] = pow(f.c[0], p);
    for (std::size_t k = 1; k < N; ++k) {
        T s = 0;
        for (std::size_t j = 1; j <= k; ++j)
            s += ((p + T(1)) * T(j) - T(k)) * f.c[j] * g.c[k - j];
        g.c[k] = s / (T(k) * f.c[0]);
    }
    return g;
}

template <typename T, std::size_t N>
Jet<T, N> sqrt(const Jet<T, N>& f) { return pow(f, T(0.5)); }

template <typename To, typename From, std::size_t N>
Jet<To, N> jet_cast(const Jet<From, N>& j) {
    Jet<To, N> r;
    for (std::size_t k = 0; k < N; ++k) r.c[k] = static_cast<To>(j.c[k]);
    return r;
}

}  // namespace debranges
