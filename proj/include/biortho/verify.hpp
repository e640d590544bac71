#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "biortho/config.hpp"
#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/parallel.hpp"
#include "biortho/phase.hpp"
#include "biortho/polys.hpp"
#include "biortho/quadrature.hpp"

namespace biortho {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "skipped";
    }
}

using NamedValues = std::vector<std::pair<std::string, double>>;

struct Witness {
    NamedValues inputs;
    double residual = 0.0;
};

struct CheckRecord {
    std::string check_id;
    NamedValues params;
    Status status = Status::pass;
    Witness witness;  // worst case seen, pass or fail
    double tolerance = 0.0;
    std::string note;
};

namespace detail {

inline NamedValues params_of(const Params& p) { return {{"alpha", p.alpha}, {"a", p.a}, {"b", p.b}}; }

// Keeps the worst residual and where it happened.
struct Worst {
    double residual = -1.0;
    NamedValues at;
    void offer(double r, NamedValues where) {
        if (std::isnan(residual)) return;
        if (!(r <= residual)) {  // NaN always wins
            residual = r;
            at = std::move(where);
        }
    }
};

inline CheckRecord finish(std::string id, NamedValues params, const Worst& w, double tol, std::string note = {}) {
    CheckRecord rec;
    rec.check_id = std::move(id);
    rec.params = std::move(params);
    rec.witness = {w.at, std::max(w.residual, 0.0)};
    rec.tolerance = tol;
    rec.status = w.residual <= tol ? Status::pass : Status::fail;
    rec.note = std::move(note);
    return rec;
}

inline double mixed_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

inline double mixed_residual(Complex lhs, Complex rhs) {
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

// Open grid (i + 1/2) pi / n, i = 0..n-1.
inline std::vector<double> midpoint_grid(int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = (i + 0.5) * pi / n;
    return g;
}

inline constexpr double sample_margin = 0.05;

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// biorthogonality and reduction

inline CheckRecord biorthogonality_check(const Params& p, int n, double tol, double quad_tol = 1e-10) {
    validate(p);
    if (n < 1) throw DomainError("biorthogonality_check: n must be at least 1");
    CheckRecord rec;
    rec.check_id = "biortho.vanishing_moments";
    rec.params = detail::params_of(p);
    rec.params.emplace_back("n", n);
    rec.tolerance = tol;
    std::vector<double> moments;
    try {
        for (int j = 0; j <= n; ++j) {
            const auto q = integrate_interval([&](double x) { return eval_biortho(p, n, x).value; },
                                              EndpointExponents{p.alpha * j + p.a, p.b}, quad_tol);
            moments.push_back(q.value);
        }
    } catch (const NumericalError& e) {
        rec.status = Status::skipped;
        rec.note = std::string("quadrature did not converge: ") + e.what();
        return rec;
    }
    const double top = std::abs(moments.back());
    double worst = 0.0;
    int worst_j = 0;
    for (int j = 0; j < n; ++j) {
        const double r = std::abs(moments[static_cast<std::size_t>(j)]) / top;
        if (!(r <= worst)) {
            worst = r;
            worst_j = j;
        }
    }
    rec.witness = {{{"j", worst_j}, {"I_j", moments[static_cast<std::size_t>(worst_j)]}, {"I_n", moments.back()}}, worst};
    rec.status = (worst <= tol && top > tol) ? Status::pass : Status::fail;
    if (!(top > tol)) rec.note = "I_n is not bounded away from zero";
    return rec;
}

inline CheckRecord reduction_check(double a, double b, int n_max, double tol) {
    validate(Params{1.0, a, b});
    detail::Worst w;
    for (int n = 0; n <= n_max; ++n) {
        for (int i = 0; i <= 40; ++i) {
            const double x = -1.0 + i / 20.0;
            const double got = eval_biortho(Params{1.0, a, b}, n, x).value;
            const double want = eval_jacobi_recurrence(a, b, n, x);
            w.offer(std::abs(got - want) / std::max(1.0, std::abs(want)), {{"n", n}, {"x", x}});
        }
    }
    return detail::finish("reduction.jacobi", {{"a", a}, {"b", b}, {"n_max", n_max}}, w, tol);
}

// ---------------------------------------------------------------------------------------------
// sampled identities

namespace detail {

template <class F>
CheckRecord sampled_identity(const std::string& id, const char* angle_name, int samples, std::uint64_t seed,
                             std::uint64_t stream, double tol, F&& residual) {
    auto rng = seeded_rng(seed, stream);
    Worst w;
    for (int i = 0; i < samples; ++i) {
        const double alpha = uniform_in(rng, 0.25, 4.0);
        const double ang = uniform_in(rng, sample_margin, pi - sample_margin);
        w.offer(residual(alpha, ang), {{"alpha", alpha}, {angle_name, ang}});
    }
    return finish(id, {{"samples", samples}, {"seed", static_cast<double>(seed)}}, w, tol);
}

}  // namespace detail

inline CheckRecord identity_saddle_ratio(int samples, std::uint64_t seed, double tol) {
    return detail::sampled_identity("identity.saddle_ratio", "theta", samples, seed, 1, tol, [](double al, double th) {
        const detail::Angles an = detail::angles(al, th);
        const Complex lhs = (std::polar(1.0, an.y) - theta_major(1.0 / al, th)) /
                            (std::polar(1.0, -an.z) - theta_major(al, th));
        return detail::mixed_residual(lhs, Complex(-std::sin(an.y) / std::sin(an.z), 0.0));
    });
}

inline CheckRecord identity_u_bracket(int samples, std::uint64_t seed, double tol) {
    return detail::sampled_identity("identity.u_bracket", "phi", samples, seed, 2, tol, [](double al, double ph) {
        const detail::Angles an = detail::angles(al, ph);
        const double th = theta_major(1.0 / al, ph);
        const double lhs = (1.0 + al) * th * th - (1.0 + 2.0 * al) * th * std::cos(an.y) + al;
        const double rhs = (1.0 + al) * theta_major_prime(1.0 / al, ph) * std::sin(an.y);
        return detail::mixed_residual(lhs, rhs);
    });
}

inline CheckRecord identity_cos_bridge(int samples, std::uint64_t seed, double tol) {
    return detail::sampled_identity("identity.cos_bridge", "phi", samples, seed, 3, tol, [](double al, double ph) {
        const detail::Angles an = detail::angles(al, ph);
        const double lhs = (1.0 + al) / std::sin(ph) * (theta_major(1.0 / al, ph) - std::cos(an.y));
        const double rhs = d_of_phi(al, ph) * std::cos(an.z) - std::sin(an.z);
        return detail::mixed_residual(lhs, rhs);
    });
}

inline CheckRecord identity_sin_bridge(int samples, std::uint64_t seed, double tol) {
    return detail::sampled_identity("identity.sin_bridge", "phi", samples, seed, 4, tol, [](double al, double ph) {
        const detail::Angles an = detail::angles(al, ph);
        const double lhs = (1.0 + al) * std::sin(an.y) / std::sin(ph);
        const double rhs = d_of_phi(al, ph) * std::sin(an.z) + std::cos(an.z);
        return detail::mixed_residual(lhs, rhs);
    });
}

inline CheckRecord identity_theta_derivative(int samples, std::uint64_t seed, double tol) {
    return detail::sampled_identity("identity.theta_derivative", "phi", samples, seed, 5, tol, [](double al, double ph) {
        const double rhs = d_of_phi(al, ph) * theta_major(1.0 / al, ph) / (1.0 + al);
        return detail::mixed_residual(theta_major_prime(1.0 / al, ph), rhs);
    });
}

inline CheckRecord identity_d_derivative(int samples, std::uint64_t seed, double tol) {
    return detail::sampled_identity("identity.d_derivative", "phi", samples, seed, 6, tol, [](double al, double ph) {
        const double th = theta_major(1.0 / al, ph);
        const double sp = std::sin(ph);
        const double rhs = -(1.0 + al) / (sp * sp) * (1.0 - th * th);
        return detail::mixed_residual(d_prime(al, ph), rhs);
    });
}

inline CheckRecord identity_lambda_derivative(int samples, std::uint64_t seed, double tol) {
    return detail::sampled_identity("identity.lambda_derivative", "phi", samples, seed, 7, tol, [](double al, double ph) {
        const double fd = fd_derivative([al](double t) { return lambda_of_phi(al, t); }, ph, 1,
                                        FdOptions{1e-3, 0.0, pi})
                              .real();
        return detail::mixed_residual(fd, lambda_prime(al, ph));
    });
}

// Every (n, r) with r <= n <= n_max, for a fixed list of a and a few random ones.
inline CheckRecord identity_chu_vandermonde(int random_a, std::uint64_t seed, double tol, int n_max = 20) {
    std::vector<double> as = {-0.9, -0.5, 0.0, 1.5, 3.2};
    auto rng = detail::seeded_rng(seed, 8);
    for (int i = 0; i < random_a; ++i) as.push_back(uniform_in(rng, -0.99, 5.0));
    detail::Worst w;
    for (const double a : as) {
        for (int n = 0; n <= n_max; ++n) {
            for (int r = 0; r <= n; ++r) {
                const ChuVandermondeSides cv = chu_vandermonde_sides(n, r, a);
                w.offer(std::abs(cv.lhs - cv.rhs) / std::abs(cv.rhs), {{"a", a}, {"n", n}, {"r", r}});
            }
        }
    }
    return detail::finish("identity.chu_vandermonde", {{"n_max", n_max}, {"a_values", static_cast<double>(as.size())}},
                          w, tol);
}

// ---------------------------------------------------------------------------------------------
// saddle point, concavity and monotone descent

inline CheckRecord saddle_and_concavity_check(double alpha, double theta, int grid, double tol) {
    const Params p{alpha, 0.0, 0.0};
    validate(p);
    require_open_angle(theta, "theta");
    // f' at theta through the unfactored numerator, which does not vanish identically.
    const Complex raw = upp_defining(p, theta, theta) / low_defining(p, theta, theta) * contour_derivative(p, theta);
    const double residual = std::max(std::abs(f_prime(p, theta, theta)), std::abs(raw));

    int changes = 0;
    double prev = 0.0;
    for (const double ph : detail::midpoint_grid(grid)) {
        const double re = f_prime(p, theta, ph).real();
        if (re != 0.0) {
            if (prev != 0.0 && (re > 0.0) != (prev > 0.0)) ++changes;
            prev = re;
        }
    }
    const Complex f2 = f_second_at_saddle(p, theta);
    const Complex f2_fd = fd_derivative([&](double ph) { return f_phase(p, theta, ph); }, theta, 2,
                                        FdOptions{1e-2, 0.0, pi});
    const double fd_rel = std::abs(f2 - f2_fd) / std::abs(f2);

    CheckRecord rec;
    rec.check_id = "lemma.saddle_concavity";
    rec.params = {{"alpha", alpha}, {"theta", theta}, {"grid", grid}};
    rec.tolerance = tol;
    rec.witness = {{{"sign_changes", changes}, {"re_f_second", f2.real()}, {"f_second_fd_rel", fd_rel}}, residual};
    const bool concave_required = alpha >= 1.0;
    const bool ok = residual <= tol && changes == 1 && fd_rel <= 1e-5 && (!concave_required || f2.real() < 0.0);
    rec.status = ok ? Status::pass : Status::fail;
    return rec;
}

// T_theta increasing before theta and decreasing after, on a grid refined tenfold near theta.
inline CheckRecord monotonicity_scan(double alpha, double theta, int grid) {
    const Params p{alpha, 0.0, 0.0};
    validate(p);
    require_open_angle(theta, "theta");
    if (grid < 100) throw DomainError("monotonicity_scan: grid must have at least 100 points");
    const double h = pi / grid;
    std::vector<double> pts;
    for (int i = 1; i < grid; ++i) pts.push_back(i * h);
    for (int i = -50; i <= 50; ++i) {
        const double ph = theta + i * h / 10.0;
        if (ph > 0.0 && ph < pi) pts.push_back(ph);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [h](double x, double y) { return y - x < 1e-3 * h; }), pts.end());

    int violations = 0;
    double worst = 0.0, worst_phi = 0.0;
    double prev_phi = -1.0, prev_t = 0.0;
    for (const double ph : pts) {
        if (ph == theta) continue;
        const double t = t_modulus(p, theta, ph);
        if (prev_phi >= 0.0 && (prev_phi < theta) == (ph < theta)) {
            const double step = ph < theta ? t - prev_t : prev_t - t;  // should be positive
            if (!(step > 0.0)) {
                ++violations;
                const double size = -step / std::max(prev_t, t);
                if (!(size <= worst)) {
                    worst = size;
                    worst_phi = ph;
                }
            }
        }
        prev_phi = ph;
        prev_t = t;
    }
    CheckRecord rec;
    rec.check_id = "lemma.monotone_descent";
    rec.params = {{"alpha", alpha}, {"theta", theta}, {"grid", grid}};
    rec.tolerance = 0.0;
    rec.witness = {{{"violations", violations}, {"phi", worst_phi}}, worst};
    if (alpha >= 1.0) {
        rec.status = violations == 0 ? Status::pass : Status::fail;
    } else {
        rec.status = Status::pass;
        rec.note = violations == 0 ? "evidence only (alpha < 1): descent structure intact on this grid"
                                   : "evidence only (alpha < 1): descent structure broken on this grid";
    }
    return rec;
}

// T = |e^f|^2 on a grid x grid set of (theta, phi).
inline CheckRecord modulus_consistency_check(double alpha, int grid, double tol) {
    const Params p{alpha, 0.0, 0.0};
    validate(p);
    const auto g = detail::midpoint_grid(grid);
    detail::Worst w;
    for (const double th : g) {
        for (const double ph : g) {
            const double t = t_modulus(p, th, ph);
            const double e = std::exp(2.0 * f_phase(p, th, ph).real());
            w.offer(std::abs(t - e) / std::max(t, e), {{"theta", th}, {"phi", ph}});
        }
    }
    return detail::finish("lemma.modulus_consistency", {{"alpha", alpha}, {"grid", grid}}, w, tol);
}

// Sign of T' by finite differences against the sign of [s(phi) - s(theta)][w - u s(phi) s(theta)].
inline CheckRecord t_prime_sign_check(double alpha, double theta, int grid) {
    const Params p{alpha, 0.0, 0.0};
    validate(p);
    const double st = s_of_theta(alpha, theta);
    int mismatches = 0;
    double worst_phi = 0.0;
    for (const double ph : detail::midpoint_grid(grid)) {
        if (std::abs(ph - theta) < 1e-3) continue;
        const double fd = fd_derivative([&](double x) { return t_modulus(p, theta, x); }, ph, 1,
                                        FdOptions{1e-5, 0.0, pi})
                              .real();
        const StructureBundle sb = structure_functions(alpha, ph);
        const double factor = (sb.s - st) * (sb.w - sb.u * sb.s * st);
        if ((fd > 0.0) != (factor > 0.0)) {
            ++mismatches;
            worst_phi = ph;
        }
    }
    CheckRecord rec;
    rec.check_id = "lemma.t_prime_sign";
    rec.params = {{"alpha", alpha}, {"theta", theta}, {"grid", grid}};
    rec.tolerance = 0.0;
    rec.witness = {{{"phi", worst_phi}}, static_cast<double>(mismatches)};
    rec.status = mismatches == 0 ? Status::pass : Status::fail;
    return rec;
}

// ---------------------------------------------------------------------------------------------
// structure functions

// At each grid phi: u = 0 with w < 0, or h outside (0, 1). Also checks the quadratic relation.
inline CheckRecord claim_check(double alpha, int grid, double tol_claim, double tol_quadratic) {
    if (!(alpha >= 1.0)) throw ScopeError("claim_check: the dichotomy is only claimed for alpha >= 1");
    std::vector<double> pts = detail::midpoint_grid(grid);
    const double phi0 = phi_star(alpha);
    pts.push_back(phi0);
    double min_margin = std::numeric_limits<double>::infinity();
    double margin_phi = 0.0;
    detail::Worst quad;
    bool ok = true;
    std::string note;
    for (const double ph : pts) {
        const StructureBundle sb = structure_functions(alpha, ph);
        const double scale = std::max({std::abs(sb.u) * sb.s * sb.s, std::abs(sb.v) * sb.s, std::abs(sb.w)});
        quad.offer(std::abs(sb.u * sb.s * sb.s + sb.v * sb.s + sb.w) / scale, {{"phi", ph}});
        const double u_rel = std::abs(sb.d * sb.d - 1.0) / (sb.d * sb.d + 1.0);
        if (u_rel <= tol_claim) {
            if (!(sb.w < 0.0)) {
                ok = false;
                note = "u vanishes but w is not negative";
                margin_phi = ph;
            }
            continue;
        }
        const double h = *sb.h;
        const double margin = h <= 0.0 ? -h : (h >= 1.0 ? h - 1.0 : -std::min(h, 1.0 - h));
        if (margin < min_margin) {
            min_margin = margin;
            margin_phi = ph;
        }
        if (h > tol_claim && h < 1.0 - tol_claim) ok = false;
    }
    CheckRecord rec;
    rec.check_id = "structure.claim_dichotomy";
    rec.params = {{"alpha", alpha}, {"grid", grid}};
    rec.tolerance = tol_quadratic;
    rec.witness = {{{"phi", margin_phi}, {"min_margin", min_margin}, {"phi0", phi0}, {"quadratic_phi", quad.at[0].second}},
                   quad.residual};
    rec.status = ok && quad.residual <= tol_quadratic ? Status::pass : Status::fail;
    rec.note = note;
    return rec;
}

inline CheckRecord quadratic_identity_check(int samples, std::uint64_t seed, double tol) {
    auto rng = detail::seeded_rng(seed, 9);
    detail::Worst w;
    for (int i = 0; i < samples; ++i) {
        const double alpha = uniform_in(rng, 1.0, 4.0);
        const double ph = uniform_in(rng, detail::sample_margin, pi - detail::sample_margin);
        const StructureBundle sb = structure_functions(alpha, ph);
        const double scale = std::max({std::abs(sb.u) * sb.s * sb.s, std::abs(sb.v) * sb.s, std::abs(sb.w)});
        w.offer(std::abs(sb.u * sb.s * sb.s + sb.v * sb.s + sb.w) / scale, {{"alpha", alpha}, {"phi", ph}});
    }
    return detail::finish("structure.quadratic", {{"samples", samples}, {"seed", static_cast<double>(seed)}}, w, tol);
}

inline CheckRecord phi_star_check(double alpha, double tol) {
    const double phi0 = phi_star(alpha);
    const StructureBundle sb = structure_functions(alpha, phi0);
    const double u_rel = std::abs(sb.d * sb.d - 1.0) / (sb.d * sb.d + 1.0);
    const double res = std::max(std::abs(sb.d - 1.0), u_rel);
    CheckRecord rec;
    rec.check_id = "structure.phi_star";
    rec.params = {{"alpha", alpha}};
    rec.tolerance = tol;
    rec.witness = {{{"phi0", phi0}, {"u", sb.u}, {"w", sb.w}}, res};
    rec.status = res <= tol && sb.w < 0.0 ? Status::pass : Status::fail;
    return rec;
}

// lambda >= 0 for alpha >= 1 and lambda < 0 throughout for alpha < 1.
inline CheckRecord lambda_sign_check(double alpha, int grid, double tol) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double lo_phi = 0.0, hi_phi = 0.0;
    for (const double ph : detail::midpoint_grid(grid)) {
        const double l = lambda_of_phi(alpha, ph);
        if (l < lo) {
            lo = l;
            lo_phi = ph;
        }
        if (l > hi) {
            hi = l;
            hi_phi = ph;
        }
    }
    CheckRecord rec;
    rec.check_id = "structure.lambda_sign";
    rec.params = {{"alpha", alpha}, {"grid", grid}};
    rec.tolerance = tol;
    if (alpha >= 1.0) {
        rec.witness = {{{"phi", lo_phi}, {"lambda", lo}}, std::max(0.0, -lo)};
        rec.status = lo >= -tol ? Status::pass : Status::fail;
    } else {
        rec.witness = {{{"phi", hi_phi}, {"lambda", hi}}, std::max(0.0, hi)};
        rec.status = hi < 0.0 ? Status::pass : Status::fail;
        rec.note = "alpha < 1: lambda is expected to be negative everywhere";
    }
    return rec;
}

// Delta >= (d^2 Theta + Theta + 2) lambda / ((1+alpha) sin Z), relative to the size of the two sides.
inline CheckRecord delta_bound_check(double alpha, int grid, double tol) {
    detail::Worst w;
    for (const double ph : detail::midpoint_grid(grid)) {
        const double del = delta_of_phi(alpha, ph);
        const double bound = delta_lower_bound(alpha, ph);
        const double shortfall = (bound - del) / std::max({1.0, std::abs(del), std::abs(bound)});
        w.offer(std::max(0.0, shortfall), {{"phi", ph}, {"delta", del}, {"bound", bound}});
    }
    return detail::finish("structure.delta_bound", {{"alpha", alpha}, {"grid", grid}}, w, tol);
}

// h is non-increasing on each side of phi0.
inline CheckRecord h_monotone_check(double alpha, int grid, double tol) {
    const double phi0 = phi_star(alpha);
    detail::Worst w;
    w.offer(0.0, {{"phi", 0.0}});
    double prev_phi = -1.0, prev_h = 0.0;
    for (const double ph : detail::midpoint_grid(grid)) {
        const auto h = h_of_phi(alpha, ph);
        if (!h) continue;
        if (prev_phi >= 0.0 && (prev_phi < phi0) == (ph < phi0)) {
            const double rise = (*h - prev_h) / std::max({1.0, std::abs(*h), std::abs(prev_h)});
            if (rise > 0.0) w.offer(rise, {{"phi", ph}});
        }
        prev_phi = ph;
        prev_h = *h;
    }
    return detail::finish("structure.h_monotone", {{"alpha", alpha}, {"grid", grid}}, w, tol);
}

// For 0 < alpha < 1: some phi in (0, 0.2) with u > 0 and 0 < h < 1, refining toward 0.
inline CheckRecord counterexample_scan(double alpha, double floor = 1e-6) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ScopeError("counterexample_scan: alpha must lie in (0, 1)");
    CheckRecord rec;
    rec.check_id = "structure.counterexample";
    rec.params = {{"alpha", alpha}};
    rec.tolerance = 0.0;
    for (int k = 1;; ++k) {
        const double ph = 0.2 * std::pow(10.0, -k / 40.0);
        if (ph < floor) break;
        const StructureBundle sb = structure_functions(alpha, ph);
        if (sb.u > 0.0 && sb.h && *sb.h > 0.0 && *sb.h < 1.0) {
            rec.witness = {{{"phi", ph}, {"u", sb.u}, {"h", *sb.h}, {"lambda", sb.lambda_low}}, 0.0};
            rec.status = sb.lambda_low < 0.0 ? Status::pass : Status::fail;
            if (rec.status == Status::fail) rec.note = "witness found but lambda is not negative there";
            return rec;
        }
    }
    rec.witness = {{{"phi", floor}}, 1.0};
    rec.status = Status::fail;
    rec.note = "no witness above the refinement floor";
    return rec;
}

// ---------------------------------------------------------------------------------------------
// maps and contour

inline CheckRecord theta_major_monotone_check(double alpha, int grid) {
    detail::Worst w;
    w.offer(0.0, {{"t", 0.0}});
    double prev = 0.0;
    for (const double t : detail::midpoint_grid(grid)) {
        const double v = theta_major(alpha, t);
        if (!(v > prev) || !(v < 1.0)) w.offer(1.0, {{"t", t}});
        prev = v;
    }
    return detail::finish("map.theta_monotone", {{"alpha", alpha}, {"grid", grid}}, w, 0.0);
}

inline CheckRecord x_map_check(double alpha, int grid, double tol) {
    const Params p{alpha, 0.0, 0.0};
    detail::Worst w;
    double prev = 1.0;
    const auto g = detail::midpoint_grid(grid);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = x_of_theta(p, g[i]);
        if (!(x < prev) || !(x > -1.0)) w.offer(1.0, {{"theta", g[i]}});
        prev = x;
        if (i % 50 == 0) w.offer(std::abs(theta_of_x(p, x) - g[i]), {{"theta", g[i]}});
    }
    return detail::finish("map.x_monotone", {{"alpha", alpha}, {"grid", grid}}, w, tol);
}

inline CheckRecord contour_check(double alpha, int grid, double tol) {
    const Params p{alpha, 0.0, 0.0};
    detail::Worst w;
    double min_xp = std::numeric_limits<double>::infinity();
    for (const double ph : detail::midpoint_grid(grid)) {
        const ContourPoint up = contour_point(p, ph);
        const ContourPoint lo = contour_point(p, -ph);
        double r = std::abs(up.xi - std::conj(lo.xi));
        if (up.xi.imag() < 0.0) r = std::max(r, 1.0);
        if (alpha == 1.0) r = std::max(r, std::abs(std::abs(up.xi) - 1.0));
        w.offer(r, {{"phi", ph}});
        min_xp = std::min(min_xp, std::abs(*up.xi_prime));
    }
    CheckRecord rec = detail::finish("map.contour", {{"alpha", alpha}, {"grid", grid}}, w, tol);
    rec.witness.inputs.emplace_back("min_abs_xi_prime", min_xp);
    if (!(min_xp > 0.0)) rec.status = Status::fail;
    return rec;
}

// ---------------------------------------------------------------------------------------------
// suites

using CheckTask = std::function<CheckRecord()>;

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"all", "identities", "lemmas", "biortho", "reduction"};
    return names;
}

inline bool is_suite(const std::string& s) {
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), s) != n.end();
}

inline std::vector<CheckTask> reduction_tasks(const Settings& st) {
    std::vector<CheckTask> out;
    for (const double a : {-0.5, 0.0, 0.7, 2.3})
        for (const double b : {-0.5, 0.0, 0.7, 2.3})
            out.emplace_back([=] { return reduction_check(a, b, st.reduction_n_max, st.tol_reduction); });
    return out;
}

inline std::vector<CheckTask> biortho_tasks(const Settings& st) {
    std::vector<CheckTask> out;
    for (const double alpha : {1.5, 2.0, 3.0})
        for (const double a : {-0.5, 0.0, 1.2})
            for (const double b : {-0.5, 0.0, 1.2})
                for (int n = 1; n <= st.biortho_n_max; ++n)
                    out.emplace_back([=] { return biorthogonality_check({alpha, a, b}, n, st.tol_biortho, st.tol_biortho_quad); });
    return out;
}

inline std::vector<CheckTask> identity_tasks(const Settings& st, std::uint64_t seed) {
    const int m = st.samples_identity;
    const double tol = st.tol_identity;
    return {
        [=] { return identity_saddle_ratio(m, seed, tol); },
        [=] { return identity_u_bracket(m, seed, tol); },
        [=] { return identity_cos_bridge(m, seed, tol); },
        [=] { return identity_sin_bridge(m, seed, tol); },
        [=] { return identity_theta_derivative(m, seed, st.tol_theta_derivative); },
        [=] { return identity_d_derivative(m, seed, tol); },
        [=] { return identity_lambda_derivative(m, seed, st.tol_fd); },
        [=] { return identity_chu_vandermonde(std::max(1, m / 100), seed, tol); },
    };
}

inline std::vector<CheckTask> lemma_tasks(const Settings& st, std::uint64_t seed) {
    std::vector<CheckTask> out;
    const std::vector<double> proven = {1.0, 1.5, 2.0, 4.0};
    const std::vector<double> below = {0.3, 0.5, 0.8, 0.99};
    const std::vector<double> thetas = {pi / 6.0, pi / 3.0, pi / 2.0, 2.0 * pi / 3.0};
    for (const double al : proven)
        for (const double th : thetas)
            out.emplace_back([=] { return saddle_and_concavity_check(al, th, st.grid_saddle, st.tol_saddle); });
    for (const double al : proven)
        for (const double th : thetas) out.emplace_back([=] { return monotonicity_scan(al, th, st.grid_monotone); });
    out.emplace_back([=] { return monotonicity_scan(0.5, pi / 2.0, st.grid_monotone); });
    for (const double al : {0.5, 1.0, 2.0, 4.0})
        out.emplace_back([=] { return modulus_consistency_check(al, st.grid_modulus, st.tol_modulus); });
    for (const double al : {1.0, 2.0, 4.0})
        for (const double th : {pi / 3.0, pi / 2.0})
            out.emplace_back([=] { return t_prime_sign_check(al, th, st.grid_structure); });
    for (const double al : proven)
        out.emplace_back([=] { return claim_check(al, st.grid_claim, st.tol_claim, st.tol_quadratic); });
    out.emplace_back([=] { return quadratic_identity_check(st.samples_quadratic, seed, st.tol_quadratic); });
    for (const double al : proven) out.emplace_back([=] { return phi_star_check(al, st.tol_claim); });
    for (const double al : proven) out.emplace_back([=] { return lambda_sign_check(al, st.grid_structure, st.tol_lambda); });
    for (const double al : below) out.emplace_back([=] { return lambda_sign_check(al, st.grid_structure, st.tol_lambda); });
    for (const double al : proven) out.emplace_back([=] { return delta_bound_check(al, st.grid_structure, st.tol_delta); });
    for (const double al : proven) out.emplace_back([=] { return h_monotone_check(al, st.grid_structure, st.tol_claim); });
    for (const double al : below) out.emplace_back([=] { return counterexample_scan(al, st.counterexample_floor); });
    for (const double al : {0.5, 1.0, 2.0, 4.0})
        out.emplace_back([=] { return theta_major_monotone_check(al, st.grid_monotone); });
    for (const double al : {0.5, 1.0, 2.0, 4.0}) out.emplace_back([=] { return x_map_check(al, st.grid_monotone, 1e-9); });
    for (const double al : {1.0, 2.0, 4.0})
        out.emplace_back([=] { return contour_check(al, st.grid_monotone, st.tol_contour); });
    return out;
}

inline std::vector<CheckTask> suite_tasks(const std::string& suite, const Settings& st, std::uint64_t seed) {
    if (!is_suite(suite)) throw ParameterError("unknown suite '" + suite + "'");
    std::vector<CheckTask> out;
    auto append = [&](std::vector<CheckTask> more) {
        for (auto& t : more) out.push_back(std::move(t));
    };
    if (suite == "all" || suite == "reduction") append(reduction_tasks(st));
    if (suite == "all" || suite == "biortho") append(biortho_tasks(st));
    if (suite == "all" || suite == "identities") append(identity_tasks(st, seed));
    if (suite == "all" || suite == "lemmas") append(lemma_tasks(st, seed));
    return out;
}

// Runs tasks on up to `jobs` threads; results keep task order.
inline std::vector<CheckRecord> run_tasks(const std::vector<CheckTask>& tasks, unsigned jobs = 1) {
    std::vector<CheckRecord> out(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t i) { out[i] = tasks[i](); });
    return out;
}

inline std::vector<CheckRecord> run_suite(const std::string& suite, const Settings& st, std::uint64_t seed,
                                          unsigned jobs = 1) {
    return run_tasks(suite_tasks(suite, st, seed), jobs);
}

inline bool all_passed(const std::vector<CheckRecord>& recs) {
    return std::none_of(recs.begin(), recs.end(), [](const CheckRecord& r) { return r.status == Status::fail; });
}

}  // namespace biortho
