#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "biortho/double_double.hpp"
#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"

namespace biortho {

// Weight (1-x)^a (1+x)^b on [-1, 1] tested against the system (1-x)^{alpha j}.
struct Params {
    double alpha = 1.0;
    double a = 0.0;
    double b = 0.0;
};

inline void validate(const Params& p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha) || !(p.a > -1.0) || !std::isfinite(p.a) || !(p.b > -1.0) ||
        !std::isfinite(p.b)) {
        std::ostringstream msg;
        msg << "invalid parameters (alpha=" << p.alpha << ", a=" << p.a << ", b=" << p.b
            << "): need alpha > 0, a > -1, b > -1";
        throw ParameterError(msg.str());
    }
}

inline void validate_degree(int n) {
    if (n < 0) throw ParameterError("degree must be non-negative");
}

struct EvalResult {
    double value = 0.0;
    double condition_estimate = 1.0;
    long long terms_used = 0;
    bool unreliable = false;  // condition_estimate above 1e12
};

inline constexpr double unreliable_condition = 1e12;

namespace detail {

struct HalfPoints {
    DoubleDouble lower;  // (1 - x) / 2
    DoubleDouble upper;  // (1 + x) / 2
};

inline HalfPoints half_points(double x) {
    const DoubleDouble one(1.0);
    return {(one - DoubleDouble(x)) * DoubleDouble(0.5), (one + DoubleDouble(x)) * DoubleDouble(0.5)};
}

inline EvalResult finish_sum(const std::vector<DoubleDouble>& terms, long long terms_used) {
    Accumulator acc;
    double biggest = 0.0;
    for (const auto& t : terms) {
        if (!t.is_finite()) throw NumericalError("polynomial term overflow; degree too large for direct evaluation");
        acc.add(t);
        biggest = std::max(biggest, std::abs(t.hi));
    }
    EvalResult out;
    out.value = acc.value();
    out.terms_used = terms_used;
    if (out.value == 0.0)
        out.condition_estimate = biggest == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    else
        out.condition_estimate = std::max(1.0, biggest / std::abs(out.value));
    out.unreliable = out.condition_estimate > unreliable_condition;
    return out;
}

// Coefficients of prod_{k<n} (s + a + 1 + k alpha) / (alpha (k+1)) in the falling-factorial basis s^(j).
inline std::vector<DoubleDouble> falling_factorial_coeffs(const Params& p, int n) {
    std::vector<DoubleDouble> e(static_cast<std::size_t>(n) + 1, DoubleDouble(0.0));
    e[0] = DoubleDouble(1.0);
    const DoubleDouble alpha(p.alpha);
    const DoubleDouble a1 = DoubleDouble(p.a) + DoubleDouble(1.0);
    for (int k = 0; k < n; ++k) {
        const DoubleDouble c = a1 + DoubleDouble(static_cast<double>(k)) * alpha;
        const DoubleDouble scale = DoubleDouble(1.0) / (alpha * DoubleDouble(static_cast<double>(k + 1)));
        for (int j = k + 1; j >= 0; --j) {
            const auto uj = static_cast<std::size_t>(j);
            DoubleDouble v = (DoubleDouble(static_cast<double>(j)) + c) * e[uj];
            if (j > 0) v += e[uj - 1];
            e[uj] = v * scale;
        }
    }
    return e;
}

// The textbook double sum, every term a product of Pochhammer symbols in double-double.
// Kept as an independent cross-check for eval_biortho at small degrees.
inline EvalResult eval_biortho_direct(const Params& p, int n, double x) {
    validate(p);
    validate_degree(n);
    const HalfPoints hp = half_points(x);
    const DoubleDouble alpha(p.alpha);
    const DoubleDouble nfact = factorial_dd(n);
    std::vector<DoubleDouble> terms;
    for (int r = 0; r <= n; ++r) {
        const DoubleDouble outer = pochhammer(DoubleDouble(n - r + 1.0) + DoubleDouble(p.b), r) *
                                   pow_int(hp.lower, static_cast<unsigned>(r)) *
                                   pow_int(hp.upper, static_cast<unsigned>(n - r)) / nfact;
        for (int s = 0; s <= r; ++s) {
            const DoubleDouble arg = (DoubleDouble(s + 1.0) + DoubleDouble(p.a)) / alpha;
            DoubleDouble t = outer * pochhammer(arg, n) / (factorial_dd(s) * factorial_dd(r - s));
            if (s % 2 == 1) t = -t;
            terms.push_back(t);
        }
    }
    return finish_sum(terms, static_cast<long long>(terms.size()));
}

}  // namespace detail

// P_n^{(alpha,a,b)}(x), normalised so that P_n(1) = ((a+1)/alpha)_n / n!. At alpha = 1 this is the
// classical Jacobi polynomial. The inner alternating sum is an r-th
// forward difference of a polynomial in s and is computed exactly from falling-factorial
// coefficients; only the outer sum over r is accumulated with cancellation.
inline EvalResult eval_biortho(const Params& p, int n, double x) {
    validate(p);
    validate_degree(n);
    if (!(std::abs(x) <= 1.0)) throw DomainError("eval_biortho: x must lie in [-1, 1]");
    const long long terms_used = static_cast<long long>(n + 1) * (n + 2) / 2;
    if (n == 0) return {1.0, 1.0, terms_used, false};

    const std::vector<DoubleDouble> e = detail::falling_factorial_coeffs(p, n);
    auto outer_factor = [&](int r) {
        // (n - r + b + 1)_r
        return pochhammer(DoubleDouble(n - r + 1.0) + DoubleDouble(p.b), r);
    };

    std::vector<DoubleDouble> terms;
    if (x == 1.0) {
        terms.push_back(e[0]);
    } else if (x == -1.0) {
        DoubleDouble t = outer_factor(n) * e[static_cast<std::size_t>(n)];
        terms.push_back(n % 2 == 1 ? -t : t);
    } else {
        const detail::HalfPoints hp = detail::half_points(x);
        std::vector<DoubleDouble> upper_pow(static_cast<std::size_t>(n) + 1);
        upper_pow[0] = DoubleDouble(1.0);
        for (int k = 1; k <= n; ++k) upper_pow[static_cast<std::size_t>(k)] = upper_pow[static_cast<std::size_t>(k - 1)] * hp.upper;
        DoubleDouble lower_pow(1.0);
        DoubleDouble q(1.0);
        for (int r = 0; r <= n; ++r) {
            if (r > 0) {
                lower_pow *= hp.lower;
                q *= DoubleDouble(static_cast<double>(n - r + 1)) + DoubleDouble(p.b);
            }
            DoubleDouble t = q * e[static_cast<std::size_t>(r)] * lower_pow * upper_pow[static_cast<std::size_t>(n - r)];
            terms.push_back(r % 2 == 1 ? -t : t);
        }
    }
    EvalResult out = detail::finish_sum(terms, terms_used);
    return out;
}

// Classical Jacobi polynomial from its explicit single sum, with its condition estimate.
inline EvalResult eval_jacobi_rep_detailed(double a, double b, int n, double x) {
    validate(Params{1.0, a, b});
    validate_degree(n);
    if (n == 0) return {1.0, 1.0, 1, false};
    const detail::HalfPoints hp = detail::half_points(x);
    std::vector<DoubleDouble> terms;
    for (int r = 0; r <= n; ++r) {
        DoubleDouble t = pochhammer(DoubleDouble(r + 1.0) + DoubleDouble(a), n - r) *
                         pochhammer(DoubleDouble(n - r + 1.0) + DoubleDouble(b), r) /
                         (factorial_dd(n - r) * factorial_dd(r));
        t *= pow_int(hp.lower, static_cast<unsigned>(r)) * pow_int(hp.upper, static_cast<unsigned>(n - r));
        terms.push_back(r % 2 == 1 ? -t : t);
    }
    return detail::finish_sum(terms, n + 1);
}

inline double eval_jacobi_rep(double a, double b, int n, double x) { return eval_jacobi_rep_detailed(a, b, n, x).value; }

inline double eval_jacobi_recurrence(double a, double b, int n, double x) {
    validate(Params{1.0, a, b});
    validate_degree(n);
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    const double ab = a + b;
    for (int k = 2; k <= n; ++k) {
        const double kk = k;
        const double c2 = 2.0 * kk + ab;
        const double lead = 2.0 * kk * (kk + ab) * (c2 - 2.0);
        const double mid = (c2 - 1.0) * (c2 * (c2 - 2.0) * x + a * a - b * b);
        const double back = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * c2;
        const double next = (mid * cur - back * prev) / lead;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline double normalization_at_one(const Params& p, int n) {
    validate(p);
    validate_degree(n);
    if (n == 0) return 1.0;
    const double c = (p.a + 1.0) / p.alpha;
    return std::exp(log_gamma(n + c) - log_gamma(n + 1.0) - log_gamma(c));
}

struct ChuVandermondeSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

inline ChuVandermondeSides chu_vandermonde_sides(int n, int r, double a) {
    if (n < 0 || r < 0 || r > n) throw DomainError("chu_vandermonde_sides: need 0 <= r <= n");
    if (!(a > -1.0)) throw ParameterError("chu_vandermonde_sides: need a > -1");
    const DoubleDouble nfact = factorial_dd(n);
    std::vector<DoubleDouble> terms;
    for (int s = 0; s <= r; ++s) {
        DoubleDouble t = pochhammer(DoubleDouble(s + 1.0) + DoubleDouble(a), n) /
                         (nfact * factorial_dd(s) * factorial_dd(r - s));
        terms.push_back(s % 2 == 1 ? -t : t);
    }
    Accumulator acc;
    for (const auto& t : terms) acc.add(t);
    DoubleDouble rhs = pochhammer(DoubleDouble(r + 1.0) + DoubleDouble(a), n - r) / (factorial_dd(n - r) * factorial_dd(r));
    if (r % 2 == 1) rhs = -rhs;
    return {acc.value(), rhs.to_double()};
}

}  // namespace biortho
