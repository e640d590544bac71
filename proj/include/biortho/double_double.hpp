#pragma once

#include <cmath>

namespace biortho {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, about 106 significant bits.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT: implicit on purpose
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
    bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator-(const DoubleDouble& x) { return {-x.hi, -x.lo}; }

inline DoubleDouble operator+(const DoubleDouble& x, const DoubleDouble& y) {
    DoubleDouble s = dd_detail::two_sum(x.hi, y.hi);
    const DoubleDouble t = dd_detail::two_sum(x.lo, y.lo);
    s.lo += t.hi;
    s = dd_detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& x, const DoubleDouble& y) { return x + (-y); }

inline DoubleDouble operator*(const DoubleDouble& x, const DoubleDouble& y) {
    DoubleDouble p = dd_detail::two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& x, const DoubleDouble& y) {
    const double q1 = x.hi / y.hi;
    DoubleDouble r = x - y * DoubleDouble(q1);
    const double q2 = r.hi / y.hi;
    r = r - y * DoubleDouble(q2);
    const double q3 = r.hi / y.hi;
    return dd_detail::quick_two_sum(q1, q2) + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& x, const DoubleDouble& y) { return x = x + y; }
inline DoubleDouble& operator-=(DoubleDouble& x, const DoubleDouble& y) { return x = x - y; }
inline DoubleDouble& operator*=(DoubleDouble& x, const DoubleDouble& y) { return x = x * y; }
inline DoubleDouble& operator/=(DoubleDouble& x, const DoubleDouble& y) { return x = x / y; }

inline DoubleDouble abs(const DoubleDouble& x) { return x.hi < 0.0 ? -x : x; }

inline DoubleDouble pow_int(DoubleDouble base, unsigned e) {
    DoubleDouble r(1.0);
    while (e != 0) {
        if (e & 1U) r *= base;
        base *= base;
        e >>= 1U;
    }
    return r;
}

// Rising factorial (x)_m = x (x+1) ... (x+m-1).
inline DoubleDouble pochhammer(const DoubleDouble& x, int m) {
    DoubleDouble r(1.0);
    for (int k = 0; k < m; ++k) r *= x + DoubleDouble(static_cast<double>(k));
    return r;
}

inline DoubleDouble factorial_dd(int m) {
    DoubleDouble r(1.0);
    for (int k = 2; k <= m; ++k) r *= DoubleDouble(static_cast<double>(k));
    return r;
}

}  // namespace biortho
