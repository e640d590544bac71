#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "biortho/double_double.hpp"
#include "biortho/errors.hpp"

namespace biortho {

using Real = double;
using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Neumaier summation. Carries one compensation term.
template <class Range>
double compensated_sum(const Range& terms) {
    double sum = 0.0;
    double comp = 0.0;
    for (const double t : terms) {
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    return sum + comp;
}

// Double-width running sum. add() is exact up to the double-double rounding.
class Accumulator {
public:
    void add(double x) { s_ += DoubleDouble(x); }
    void add(const DoubleDouble& x) { s_ += x; }
    double value() const { return s_.to_double(); }
    DoubleDouble wide() const { return s_; }

private:
    DoubleDouble s_;
};

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286061;

// zeta(k) for k = 2..30
inline constexpr std::array<double, 29> zeta_values = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915, 1.0369277551433699263,
    1.0173430619844491397, 1.0083492773819228268, 1.0040773561979443394, 1.0020083928260822144,
    1.0009945751278180853, 1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519, 1.0000076371976378998,
    1.0000038172932649998, 1.0000019082127165539, 1.0000009539620338728, 1.0000004769329867878,
    1.0000002384505027277, 1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147,
    1.0000000149015548284, 1.0000000074507117898, 1.0000000037253340248, 1.0000000018626597235,
    1.0000000009313274324,
};

// ln Gamma(1+z) for |z| <= 1/4, Taylor series about 1.
inline double log_gamma_1p_series(double z) {
    double acc = 0.0;
    for (int k = 30; k >= 2; --k) {
        const double c = ((k % 2 == 0) ? 1.0 : -1.0) * zeta_values[static_cast<std::size_t>(k - 2)] / k;
        acc = (acc + c) * z;
    }
    return (acc - euler_gamma) * z;
}

inline constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline double log_gamma_lanczos(double x) {
    const double z = x - 1.0;
    double a = lanczos_coeffs[0];
    for (std::size_t k = 1; k < lanczos_coeffs.size(); ++k) a += lanczos_coeffs[k] / (z + static_cast<double>(k));
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

inline double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive and finite");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    if (std::abs(x - 1.0) <= 0.25) return detail::log_gamma_1p_series(x - 1.0);
    if (std::abs(x - 2.0) <= 0.25) {
        const double z = x - 2.0;
        return std::log1p(z) + detail::log_gamma_1p_series(z);
    }
    return detail::log_gamma_lanczos(x);
}

// Principal logarithm with argument in (-pi, pi]; a negative-zero imaginary part maps to +pi.
inline Complex principal_log(Complex z) {
    double arg = std::arg(z);
    if (arg == -pi) arg = pi;
    return {std::log(std::abs(z)), arg};
}

inline Complex complex_pow_principal(Complex z, double p) {
    if (z == Complex(0.0, 0.0)) {
        if (p > 0.0) return {0.0, 0.0};
        throw DomainError("complex_pow_principal: zero base with non-positive exponent");
    }
    return std::exp(p * principal_log(z));
}

template <class F>
double find_root_bisect(F&& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw BracketError("find_root_bisect: empty bracket");
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) throw BracketError("find_root_bisect: endpoint values have the same sign");
    for (int it = 0; it < 2000 && (hi - lo) > tol; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

struct FdOptions {
    double step = 0.0;  // 0 picks an order-dependent default
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

// Central differences with two Richardson sweeps (h, h/2, h/4).
template <class F>
Complex fd_derivative(F&& f, double x, int order, FdOptions opt = {}) {
    if (order < 1 || order > 3) throw DomainError("fd_derivative: order must be 1, 2 or 3");
    double h = opt.step;
    if (h <= 0.0) {
        constexpr std::array<double, 3> defaults = {1e-2, 2e-2, 5e-2};
        h = defaults[static_cast<std::size_t>(order - 1)] * std::max(1.0, std::abs(x));
    }
    const double reach = (order == 3 ? 2.0 : 1.0) * h;
    if (x - reach < opt.lo || x + reach > opt.hi) throw DomainError("fd_derivative: stencil leaves the declared domain");

    auto eval = [&](double y) { return Complex(f(y)); };
    auto central = [&](double s) -> Complex {
        switch (order) {
            case 1: return (eval(x + s) - eval(x - s)) / (2.0 * s);
            case 2: return (eval(x + s) - 2.0 * eval(x) + eval(x - s)) / (s * s);
            default:
                return (eval(x + 2.0 * s) - 2.0 * eval(x + s) + 2.0 * eval(x - s) - eval(x - 2.0 * s)) /
                       (2.0 * s * s * s);
        }
    };
    const Complex d0 = central(h);
    const Complex d1 = central(0.5 * h);
    const Complex d2 = central(0.25 * h);
    const Complex r0 = (4.0 * d1 - d0) / 3.0;
    const Complex r1 = (4.0 * d2 - d1) / 3.0;
    return (16.0 * r1 - r0) / 15.0;
}

struct SlopePoint {
    long long n = 0;
    double err = 0.0;
};

inline double fit_loglog_slope(const std::vector<SlopePoint>& rows) {
    if (rows.size() < 3) throw InsufficientDataError("fit_loglog_slope: need at least 3 rows");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].n <= rows[i - 1].n) throw DomainError("fit_loglog_slope: n must be strictly increasing");
        if (!(rows[i].err > 0.0) || rows[i].n <= 0) throw DomainError("fit_loglog_slope: n and err must be positive");
        sx += std::log(static_cast<double>(rows[i].n));
        sy += std::log(rows[i].err);
    }
    const double m = static_cast<double>(rows.size());
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& r : rows) {
        const double dx = std::log(static_cast<double>(r.n)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(r.err) - my);
    }
    return sxy / sxx;
}

// Platform-independent uniform draw in [0, 1) from a 64-bit engine.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace biortho
