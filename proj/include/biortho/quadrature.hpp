#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/phase.hpp"
#include "biortho/polys.hpp"

namespace biortho {

// The represented quantity is value * exp(log_scale); error_estimate and magnitude share that scale.
template <class T>
struct QuadResult {
    T value{};
    double error_estimate = 0.0;
    long long evaluations = 0;
    double magnitude = 0.0;  // integral of |integrand|, divided by pi for contour integrals
    double log_scale = 0.0;
};

struct EndpointExponents {
    double a = 0.0;  // power of (1 - x)
    double b = 0.0;  // power of (1 + x)
};

struct IntervalOptions {
    int min_level = 4;
    int max_level = 12;
};

// Integral over (-1, 1) of f(x) (1-x)^a (1+x)^b by tanh-sinh. The weight is applied in log
// form from the substitution variable, so 1 -+ x never suffers cancellation.
template <class F>
QuadResult<double> integrate_interval(F&& f, EndpointExponents ex, double tol, IntervalOptions opt = {}) {
    if (!(ex.a > -1.0) || !(ex.b > -1.0)) throw ParameterError("integrate_interval: endpoint exponents must exceed -1");
    if (!(tol > 0.0)) throw DomainError("integrate_interval: tolerance must be positive");

    const double decay = std::min(ex.a, ex.b) + 1.0;
    const double t_max = std::min(9.0, std::asinh(2.0 * (22.0 / decay) / pi) + 0.5);
    const double log_half_pi = std::log(0.5 * pi);
    const double ln2 = std::log(2.0);

    long long evals = 0;
    auto node = [&](double t, double& sum, double& l1) {
        const double u = 0.5 * pi * std::sinh(t);
        const double au = std::abs(u);
        const double e = std::exp(-2.0 * au);
        const double l1pe = std::log1p(e);
        const double log_cosh_u = au + l1pe - ln2;
        const double log_near = ln2 - 2.0 * au - l1pe;  // log of the endpoint distance on the side u points to
        const double log_far = ln2 - l1pe;
        const double log_one_minus_x = u >= 0.0 ? log_near : log_far;
        const double log_one_plus_x = u >= 0.0 ? log_far : log_near;
        const double logw = log_half_pi + std::log(std::cosh(t)) - 2.0 * log_cosh_u + ex.a * log_one_minus_x +
                            ex.b * log_one_plus_x;
        if (logw < -720.0) return;
        const double x = std::tanh(u);
        const double fx = f(x);
        ++evals;
        const double w = std::exp(logw);
        sum += w * fx;
        l1 += w * std::abs(fx);
    };

    double h = 1.0;
    double sum = 0.0, l1 = 0.0;
    node(0.0, sum, l1);
    for (double t = h; t <= t_max; t += h) {
        node(t, sum, l1);
        node(-t, sum, l1);
    }
    double prev = sum * h;
    QuadResult<double> out;
    for (int level = 1; level <= opt.max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            node(t, sum, l1);
            node(-t, sum, l1);
        }
        const double cur = sum * h;
        const double mass = l1 * h;
        out.value = cur;
        out.error_estimate = std::abs(cur - prev);
        out.magnitude = mass;
        out.evaluations = evals;
        if (!std::isfinite(cur)) throw NumericalError("integrate_interval: non-finite integrand");
        if (level >= opt.min_level && out.error_estimate <= tol * mass) return out;
        prev = cur;
    }
    throw NumericalError("integrate_interval: refinement stalled above the requested tolerance");
}

namespace detail {

struct GaussRule {
    std::array<double, 16> x{};
    std::array<double, 16> w{};
};

// 16-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_16.
inline const GaussRule& gauss16() {
    static const GaussRule rule = [] {
        GaussRule g;
        constexpr int m = 16;
        for (int i = 0; i < m; ++i) {
            double z = std::cos(pi * (i + 0.75) / (m + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 1; j <= m; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
                }
                dp = m * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-17) break;
            }
            g.x[static_cast<std::size_t>(i)] = z;
            g.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        return g;
    }();
    return rule;
}

// log of e^{n f_theta(phi)} g_theta(phi), with all theta-dependent pieces precomputed.
class ContourIntegrand {
public:
    ContourIntegrand(const Params& p, int n, double theta) : p_(p), n_(n) {
        const double alpha = p.alpha;
        const double ti = theta_major(1.0 / alpha, theta);
        const double ta = theta_major(alpha, theta);
        st_ = std::pow(ti, alpha) * ta;
        const_re_ = -(p.a + 1.0 - alpha) * std::log(ti) - std::log(2.0) - ((p.a + 1.0) / alpha - 1.0) * std::log(ta) -
                    p.b * std::log(1.0 - ti * std::pow(ta, 1.0 / alpha));
    }

    struct Sample {
        Complex log_value;
        double phase;  // n Im f
    };

    Sample operator()(double phi) const {
        const double alpha = p_.alpha, a = p_.a, b = p_.b;
        const double nn = static_cast<double>(n_);
        const detail::Angles an = detail::angles(alpha, phi);
        const double th = theta_major(1.0 / alpha, phi);
        const double thp = theta_major_prime(1.0 / alpha, phi);
        const double lth = std::log(th);
        const Complex bracket = numerator_factor(th, an.y);
        const Complex den = denominator_factor(std::exp(alpha * lth), st_, an.z);
        const Complex lbr = std::log(bracket);
        const Complex lden = std::log(den);
        // f without the i(phi - pi) term
        const Complex f0 = alpha * lth + lbr - lden;
        const Complex xip_tail = Complex((1.0 + alpha) * thp, th);  // xi' = -(2a/(1+a)) Th^{a-1} e^{-iZ} tail
        Complex lg(const_re_ + (a + 1.0 - alpha) * lth, -(pi + an.y * (a + b + 1.0 - alpha)));
        lg += b * lbr - lden;
        lg += Complex(std::log(2.0 * alpha / (1.0 + alpha)) + (alpha - 1.0) * lth, pi - an.z) + std::log(xip_tail);
        const double phase = nn * (f0.imag() + phi - pi);
        const Complex lv(nn * f0.real() + lg.real(), phase + lg.imag());
        return {lv, phase};
    }

private:
    Params p_;
    int n_;
    double st_ = 0.0;
    double const_re_ = 0.0;
};

}  // namespace detail

// log of the contour integrand e^{n f} g at phi, for diagnostics.
inline Complex contour_log_integrand(const Params& p, int n, double theta, double phi) {
    validate(p);
    require_open_angle(theta, "theta");
    require_open_angle(phi, "phi");
    return detail::ContourIntegrand(p, n, theta)(phi).log_value;
}

struct ContourOptions {
    double panel_const = 2.5;      // initial panel width min(0.5, panel_const / sqrt(n))
    double phase_cap = pi / 4.0;   // max advance of n Im f across one panel
    double negligible = 1e-20;     // panels below this fraction of the peak skip the phase cap
    double noise_factor = 32.0;    // panels agreeing to within rounding of e^{i n Im f} are accepted
    int max_depth = 60;
    int scan_points = 512;
};

inline double contour_min_degree(const Params& p) { return std::max(1.0 - (p.a + 1.0) / p.alpha, -p.b); }

// Re{(1/(pi i)) int_0^pi e^{n f} g dphi}, returned in units of exp(log_scale).
inline QuadResult<double> rodrigues_contour_eval_scaled(const Params& p, int n, double theta, double tol,
                                                        ContourOptions opt = {}) {
    validate(p);
    require_open_angle(theta, "theta");
    if (static_cast<double>(n) < contour_min_degree(p) || n < 0)
        throw DomainError("rodrigues_contour_eval: degree below the contour-representation threshold");
    if (!(tol > 0.0)) throw DomainError("rodrigues_contour_eval: tolerance must be positive");

    const detail::ContourIntegrand integrand(p, n, theta);
    const detail::GaussRule& gl = detail::gauss16();
    long long evals = 0;

    double log_scale = integrand(theta).log_value.real();
    for (int i = 1; i < opt.scan_points; ++i) {
        const double phi = pi * i / opt.scan_points;
        log_scale = std::max(log_scale, integrand(phi).log_value.real());
        ++evals;
    }

    struct Panel {
        Complex sum;
        double l1 = 0.0;
        double peak = 0.0;
        double phase_span = 0.0;
        double phase_abs = 0.0;
    };
    auto panel = [&](double lo, double hi) {
        Panel pn;
        const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
        double pmin = 0.0, pmax = 0.0;
        for (std::size_t i = 0; i < 16; ++i) {
            const auto s = integrand(c + hw * gl.x[i]);
            const Complex v = std::exp(s.log_value - log_scale);
            pn.sum += gl.w[i] * hw * v;
            const double av = std::abs(v);
            pn.l1 += gl.w[i] * hw * av;
            pn.peak = std::max(pn.peak, av);
            if (i == 0 || s.phase < pmin) pmin = s.phase;
            if (i == 0 || s.phase > pmax) pmax = s.phase;
            pn.phase_abs = std::max(pn.phase_abs, std::abs(s.phase));
        }
        evals += 16;
        pn.phase_span = pmax - pmin;
        return pn;
    };

    const double w0 = std::min(0.5, opt.panel_const / std::sqrt(std::max(1, n)));
    const int m = static_cast<int>(std::ceil(pi / w0));
    std::vector<double> edges(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) edges[static_cast<std::size_t>(i)] = pi * i / m;
    edges.back() = pi;

    std::vector<Panel> first(static_cast<std::size_t>(m));
    double l1_scale = 0.0;
    for (int i = 0; i < m; ++i) {
        first[static_cast<std::size_t>(i)] = panel(edges[static_cast<std::size_t>(i)], edges[static_cast<std::size_t>(i) + 1]);
        l1_scale += first[static_cast<std::size_t>(i)].l1;
    }

    Complex total(0.0, 0.0);
    double l1_total = 0.0;
    double err_total = 0.0;
    bool stalled = false;

    struct Task {
        double lo, hi;
        Panel whole;
        int depth;
    };
    std::vector<Task> stack;
    for (int i = m - 1; i >= 0; --i)
        stack.push_back({edges[static_cast<std::size_t>(i)], edges[static_cast<std::size_t>(i) + 1], first[static_cast<std::size_t>(i)], 0});

    while (!stack.empty()) {
        const Task task = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (task.lo + task.hi);
        const Panel left = panel(task.lo, mid);
        const Panel right = panel(mid, task.hi);
        const Complex refined = left.sum + right.sum;
        const double diff = std::abs(refined - task.whole.sum);
        const bool negligible = task.whole.peak < opt.negligible && left.peak < opt.negligible && right.peak < opt.negligible;
        const bool phase_ok = negligible || (left.phase_span <= opt.phase_cap && right.phase_span <= opt.phase_cap);
        const double noise = opt.noise_factor * std::numeric_limits<double>::epsilon() *
                             std::max(1.0, task.whole.phase_abs) * (left.l1 + right.l1);
        const bool accurate = diff <= std::max(tol * l1_scale * std::sqrt((task.hi - task.lo) / pi), noise);
        if ((accurate && phase_ok) || task.depth >= opt.max_depth) {
            if (!(accurate && phase_ok)) stalled = true;
            total += refined;
            l1_total += left.l1 + right.l1;
            err_total += diff;
            continue;
        }
        stack.push_back({mid, task.hi, right, task.depth + 1});
        stack.push_back({task.lo, mid, left, task.depth + 1});
    }
    if (stalled || !std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw NumericalError("rodrigues_contour_eval: adaptive refinement did not converge");

    QuadResult<double> out;
    out.value = total.imag() / pi;
    out.error_estimate = err_total / pi;
    out.magnitude = l1_total / pi;
    out.evaluations = evals;
    out.log_scale = log_scale;
    return out;
}

inline QuadResult<double> rodrigues_contour_eval(const Params& p, int n, double theta, double tol,
                                                 ContourOptions opt = {}) {
    QuadResult<double> r = rodrigues_contour_eval_scaled(p, n, theta, tol, opt);
    const double s = std::exp(r.log_scale);
    r.value *= s;
    r.error_estimate *= s;
    r.magnitude *= s;
    r.log_scale = 0.0;
    return r;
}

}  // namespace biortho
