#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/phase.hpp"
#include "biortho/polys.hpp"
#include "biortho/quadrature.hpp"

namespace biortho {

inline void require_proven_scope(const Params& p, bool allow_unproven) {
    if (p.alpha < 1.0 && !allow_unproven)
        throw ScopeError("the Darboux-type formula is only established for alpha >= 1 (pass the override to evaluate anyway)");
}

// Leading term divided by rho^n, so it stays representable for large n.
inline double darboux_biortho_scaled(const Params& p, int n, double theta, bool allow_unproven = false) {
    validate(p);
    require_open_angle(theta, "theta");
    require_proven_scope(p, allow_unproven);
    if (n < 1) throw DomainError("darboux_biortho: n must be at least 1");
    const double alpha = p.alpha;
    const double coef = std::sqrt(2.0) * alpha / std::sqrt(1.0 + alpha) / std::sqrt(pi * n);
    const Complex osc = m_alpha(p, theta) * std::polar(1.0, n * theta);
    return coef * osc.real();
}

inline double darboux_biortho(const Params& p, int n, double theta, bool allow_unproven = false) {
    const double scaled = darboux_biortho_scaled(p, n, theta, allow_unproven);
    return scaled * std::exp(n * std::log(sine_ratio(p.alpha, theta)));
}

// Envelope of the leading term, divided by rho^n.
inline double darboux_envelope_scaled(const Params& p, int n, double theta) {
    const double alpha = p.alpha;
    return std::sqrt(2.0) * alpha / std::sqrt(1.0 + alpha) / std::sqrt(pi * n) * std::abs(m_alpha(p, theta));
}

inline double darboux_classical(double a, double b, int n, double theta) {
    validate(Params{1.0, a, b});
    require_open_angle(theta, "theta");
    if (n < 1) throw DomainError("darboux_classical: n must be at least 1");
    const double big_n = n + 0.5 * (a + b + 1.0);
    return std::pow(std::sin(0.5 * theta), -a - 0.5) * std::pow(std::cos(0.5 * theta), -b - 0.5) *
           std::cos(big_n * theta - 0.5 * a * pi - 0.25 * pi) / std::sqrt(pi * n);
}

enum class ReferenceMode { exact, contour, automatic };

inline const char* to_string(ReferenceMode m) {
    switch (m) {
        case ReferenceMode::exact: return "exact";
        case ReferenceMode::contour: return "contour";
        default: return "automatic";
    }
}

inline constexpr int automatic_exact_limit = 40;

// P_n(x(theta)) as mantissa * exp(log_scale).
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;
    double error_scale = 0.0;  // floor for relative comparisons, same units as mantissa
    double value() const { return mantissa * std::exp(log_scale); }
};

inline ScaledValue reference_value(const Params& p, int n, double theta, ReferenceMode mode, double tol = 1e-12) {
    const bool exact = mode == ReferenceMode::exact || (mode == ReferenceMode::automatic && n <= automatic_exact_limit);
    if (exact) {
        const EvalResult r = eval_biortho(p, n, x_of_theta(p, theta));
        return {r.value, 0.0, std::abs(r.value) * r.condition_estimate * 1e-16};
    }
    const QuadResult<double> q = rodrigues_contour_eval_scaled(p, n, theta, tol);
    return {q.value, q.log_scale, q.magnitude};
}

struct ConvergenceRow {
    int n = 0;
    // reference, asymptotic and abs_err are in units of exp(log_scale) with log_scale = n ln rho
    double reference = 0.0;
    double asymptotic = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;  // |reference - asymptotic| / envelope
    bool envelope_ok = false;
    double log_scale = 0.0;
};

struct RateReport {
    double slope = 0.0;
    std::vector<ConvergenceRow> rows;
    double theta = 0.0;
    Params params;
    ReferenceMode mode = ReferenceMode::automatic;
    std::size_t kept = 0;
};

struct TableOptions {
    double envelope_threshold = 0.3;
    double tol = 1e-12;
    bool allow_unproven = false;
};

inline ConvergenceRow convergence_row(const Params& p, int n, double theta, ReferenceMode mode, const TableOptions& opt) {
    ConvergenceRow row;
    row.n = n;
    const double log_rho = std::log(sine_ratio(p.alpha, theta));
    row.log_scale = n * log_rho;
    const ScaledValue ref = reference_value(p, n, theta, mode, opt.tol);
    row.reference = ref.mantissa * std::exp(ref.log_scale - row.log_scale);
    row.asymptotic = darboux_biortho_scaled(p, n, theta, opt.allow_unproven);
    row.abs_err = std::abs(row.reference - row.asymptotic);
    const double env = darboux_envelope_scaled(p, n, theta);
    row.rel_err = row.abs_err / env;
    const Complex m = m_alpha(p, theta);
    const double osc = std::abs((m * std::polar(1.0, n * theta)).real());
    row.envelope_ok = osc >= opt.envelope_threshold * std::abs(m);
    return row;
}

inline RateReport convergence_table(const Params& p, double theta, const std::vector<int>& n_list,
                                    ReferenceMode mode = ReferenceMode::automatic, TableOptions opt = {}) {
    validate(p);
    require_open_angle(theta, "theta");
    require_proven_scope(p, opt.allow_unproven);
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw DomainError("convergence_table: n_list must be increasing");
    RateReport rep;
    rep.theta = theta;
    rep.params = p;
    rep.mode = mode;
    std::vector<SlopePoint> pts;
    for (const int n : n_list) {
        rep.rows.push_back(convergence_row(p, n, theta, mode, opt));
        const ConvergenceRow& r = rep.rows.back();
        if (r.envelope_ok && r.rel_err > 0.0) pts.push_back({r.n, r.rel_err});
    }
    rep.kept = pts.size();
    if (pts.size() < 3) throw InsufficientDataError("convergence_table: fewer than 3 rows pass the envelope filter");
    rep.slope = fit_loglog_slope(pts);
    return rep;
}

inline std::vector<int> dyadic_degrees(int k0, int k1) {
    if (k0 < 0 || k1 < k0 || k1 > 30) throw DomainError("dyadic_degrees: need 0 <= k0 <= k1 <= 30");
    std::vector<int> out;
    for (int k = k0; k <= k1; ++k) out.push_back(1 << k);
    return out;
}

struct EnvelopeRow {
    int n = 0;
    double normalized = 0.0;  // |P_n(x(theta))| n^{1/2} rho^{-n}
};

struct EnvelopeReport {
    double constant = 0.0;
    double median = 0.0;
    double max_over_median = 0.0;
    bool stable = false;
    std::vector<EnvelopeRow> rows;
};

inline EnvelopeReport envelope_bound(const Params& p, double theta, const std::vector<int>& n_list,
                                     ReferenceMode mode = ReferenceMode::automatic, double tol = 1e-12) {
    validate(p);
    require_open_angle(theta, "theta");
    if (p.alpha < 1.0) throw ScopeError("envelope_bound: the bound is only established for alpha >= 1");
    if (n_list.empty()) throw InsufficientDataError("envelope_bound: empty degree list");
    const double log_rho = std::log(sine_ratio(p.alpha, theta));
    EnvelopeReport rep;
    std::vector<double> vals;
    for (const int n : n_list) {
        const ScaledValue v = reference_value(p, n, theta, mode, tol);
        const double norm = std::abs(v.mantissa) * std::exp(v.log_scale - n * log_rho) * std::sqrt(static_cast<double>(n));
        if (!std::isfinite(norm)) throw NumericalError("envelope_bound: non-finite normalised value");
        rep.rows.push_back({n, norm});
        vals.push_back(norm);
    }
    rep.constant = *std::max_element(vals.begin(), vals.end());
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    rep.median = m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    rep.max_over_median = rep.median > 0.0 ? rep.constant / rep.median : std::numeric_limits<double>::infinity();
    rep.stable = rep.max_over_median <= 10.0;
    return rep;
}

}  // namespace biortho
