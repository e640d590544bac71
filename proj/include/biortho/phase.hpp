#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/polys.hpp"

namespace biortho {

inline void require_open_angle(double t, const char* what) {
    if (!(t > 0.0 && t < pi)) throw DomainError(std::string(what) + " must lie in the open interval (0, pi)");
}

// Theta_beta(t) = sin t / ((1+beta) sin((pi-t)/(1+beta))), with its limits 0 and 1 at the ends.
inline double theta_major(double beta, double t) {
    if (t <= 0.0) return 0.0;
    if (t >= pi) return 1.0;
    const double u = pi - t;
    return std::sin(t > 0.5 * pi ? u : t) / ((1.0 + beta) * std::sin(u / (1.0 + beta)));
}

// With u = pi - t, w = u/c, k = c - 1 the numerator is sin(kw) - k sin w + 2k sin w sin^2(u/2);
// the first difference goes through its Taylor series when kw is small.
inline double theta_major_prime(double beta, double t) {
    const double c = 1.0 + beta;
    const double k = beta;
    const double u = pi - t;
    const double w = u / c;
    const double sw = std::sin(w);
    double g = 0.0;
    if (k * w < 1.0) {
        const double w2 = w * w, k2 = k * k;
        double wp = w, kp = k, fact = 1.0;
        for (int j = 1; j <= 12; ++j) {
            wp *= w2;
            kp *= k2;
            fact *= (2.0 * j) * (2.0 * j + 1.0);
            g += ((j % 2 == 1) ? -1.0 : 1.0) * (kp - k) * wp / fact;
        }
    } else {
        g = std::sin(k * w) - k * sw;
    }
    const double hu = std::sin(0.5 * u);
    const double num = g + 2.0 * k * sw * hu * hu;
    return num / (c * c * sw * sw);
}

namespace detail {

// Angles that recur everywhere: Y = (pi-phi)/(1+alpha) and Z = alpha Y.
struct Angles {
    double y;
    double z;
};

inline Angles angles(double alpha, double phi) {
    const double y = (pi - phi) / (1.0 + alpha);
    return {y, alpha * y};
}

// c - cos(w), written so that it keeps its digits when c is near 1 and w near 0.
inline double minus_cos(double c, double w) {
    const double h = std::sin(0.5 * w);
    return (c - 1.0) + 2.0 * h * h;
}

// e^{iY} - Theta and Theta^alpha e^{-iZ} - s, free of cancellation near phi = pi.
inline Complex numerator_factor(double th, double y) { return {-minus_cos(th, y), std::sin(y)}; }

inline Complex denominator_factor(double tha, double st, double z) {
    const double h = std::sin(0.5 * z);
    return {(tha - st) - 2.0 * tha * h * h, -tha * std::sin(z)};
}

}  // namespace detail

inline double x_of_theta(const Params& p, double theta) {
    validate(p);
    if (theta <= 0.0) return 1.0;
    if (theta >= pi) return -1.0;
    return 1.0 - 2.0 * theta_major(1.0 / p.alpha, theta) * std::pow(theta_major(p.alpha, theta), 1.0 / p.alpha);
}

// s(theta) = Theta_{1/alpha}^alpha Theta_alpha = (1 - t(theta)) / 2
inline double s_of_theta(double alpha, double theta) {
    if (theta <= 0.0) return 0.0;
    if (theta >= pi) return 1.0;
    return std::pow(theta_major(1.0 / alpha, theta), alpha) * theta_major(alpha, theta);
}

inline double t_of_theta(const Params& p, double theta) {
    validate(p);
    return 1.0 - 2.0 * s_of_theta(p.alpha, theta);
}

inline double theta_of_x(const Params& p, double x, double tol = 1e-13) {
    validate(p);
    return find_root_bisect([&](double th) { return x_of_theta(p, th) - x; }, 0.0, pi, 0.25 * tol);
}

struct ContourPoint {
    double phi = 0.0;
    Complex xi;
    std::optional<Complex> xi_prime;  // empty at the endpoints phi in {0, +-pi}
};

namespace detail {

inline Complex xi_upper(double alpha, double phi) {
    const Angles an = angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    return 1.0 - 2.0 * std::pow(th, alpha) * std::polar(1.0, -an.z);
}

inline Complex xi_prime_upper(double alpha, double phi) {
    const Angles an = angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const double thp = theta_major_prime(1.0 / alpha, phi);
    return -(2.0 * alpha / (1.0 + alpha)) * std::pow(th, alpha - 1.0) * std::polar(1.0, -an.z) *
           Complex((1.0 + alpha) * thp, th);
}

}  // namespace detail

inline ContourPoint contour_point(const Params& p, double phi) {
    validate(p);
    if (!(phi >= -pi && phi < pi)) throw DomainError("contour_point: phi must lie in [-pi, pi)");
    ContourPoint cp;
    cp.phi = phi;
    if (phi == 0.0) {
        cp.xi = 1.0;
        return cp;
    }
    if (phi == -pi) {
        cp.xi = -1.0;
        return cp;
    }
    if (phi > 0.0) {
        cp.xi = detail::xi_upper(p.alpha, phi);
        cp.xi_prime = detail::xi_prime_upper(p.alpha, phi);
    } else {
        cp.xi = std::conj(detail::xi_upper(p.alpha, -phi));
        cp.xi_prime = -std::conj(detail::xi_prime_upper(p.alpha, -phi));
    }
    return cp;
}

inline Complex contour_derivative(const Params& p, double phi) {
    validate(p);
    require_open_angle(phi, "phi");
    return detail::xi_prime_upper(p.alpha, phi);
}

// f_theta(phi) assembled factor by factor:
//   i(phi - pi) + alpha ln Theta + Log(e^{iY} - Theta) - Log(Theta^alpha e^{-iZ} - s(theta)).
// Each Log has its argument confined to (0, pi) or (-pi, 0), so f is continuous in phi.
inline Complex f_phase(const Params& p, double theta, double phi) {
    validate(p);
    require_open_angle(theta, "theta");
    require_open_angle(phi, "phi");
    const double alpha = p.alpha;
    const detail::Angles an = detail::angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const double st = s_of_theta(alpha, theta);
    const Complex num = detail::numerator_factor(th, an.y);
    const Complex den = detail::denominator_factor(std::pow(th, alpha), st, an.z);
    if (den == Complex(0.0, 0.0)) throw NumericalError("f_phase: contour meets t(theta)");
    return Complex(alpha * std::log(th), phi - pi) + std::log(num) - std::log(den);
}

// Numerator of f' in the defining form alpha[(1+1/alpha) q^{1/alpha} - 1](1-t) - 2 q^{1+1/alpha}, q = (1-xi)/2.
inline Complex upp_defining(const Params& p, double theta, double phi) {
    const double alpha = p.alpha;
    const Complex q = 0.5 * (1.0 - detail::xi_upper(alpha, phi));
    const Complex q1 = complex_pow_principal(q, 1.0 / alpha);
    const double one_minus_t = 2.0 * s_of_theta(alpha, theta);
    return alpha * ((1.0 + 1.0 / alpha) * q1 - 1.0) * one_minus_t - 2.0 * q * q1;
}

// The same numerator factored as 2[(1+alpha) Theta e^{-iY} - alpha](s(theta) - s(phi)).
inline Complex upp_factored(const Params& p, double theta, double phi) {
    const double alpha = p.alpha;
    const detail::Angles an = detail::angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const double ds = s_of_theta(alpha, theta) - s_of_theta(alpha, phi);
    return 2.0 * ((1.0 + alpha) * th * std::polar(1.0, -an.y) - alpha) * ds;
}

inline Complex low_defining(const Params& p, double theta, double phi) {
    const double alpha = p.alpha;
    const Complex xi = detail::xi_upper(alpha, phi);
    const Complex q = 0.5 * (1.0 - xi);
    const double t = 1.0 - 2.0 * s_of_theta(alpha, theta);
    return alpha * (1.0 - xi) * (1.0 - complex_pow_principal(q, 1.0 / alpha)) * (xi - t);
}

inline Complex f_prime(const Params& p, double theta, double phi) {
    validate(p);
    require_open_angle(theta, "theta");
    require_open_angle(phi, "phi");
    const Complex low = low_defining(p, theta, phi);
    if (low == Complex(0.0, 0.0)) throw NumericalError("f_prime: denominator vanishes");
    return upp_factored(p, theta, phi) / low * detail::xi_prime_upper(p.alpha, phi);
}

// log g_theta(phi), second displayed form, with Log taken per factor.
inline Complex log_g_amplitude(const Params& p, double theta, double phi) {
    validate(p);
    require_open_angle(theta, "theta");
    require_open_angle(phi, "phi");
    const double alpha = p.alpha, a = p.a, b = p.b;
    const detail::Angles an = detail::angles(alpha, phi);
    const double th_phi = theta_major(1.0 / alpha, phi);
    const double th_theta = theta_major(1.0 / alpha, theta);
    const double tha_theta = theta_major(alpha, theta);
    const double st = s_of_theta(alpha, theta);
    const double half_one_plus_x = 1.0 - th_theta * std::pow(tha_theta, 1.0 / alpha);

    const Complex bracket = detail::numerator_factor(th_phi, an.y);
    const Complex den = detail::denominator_factor(std::pow(th_phi, alpha), st, an.z);
    const Complex xip = detail::xi_prime_upper(alpha, phi);

    Complex out((a + 1.0 - alpha) * (std::log(th_phi) - std::log(th_theta)), -(pi + an.y * (a + b + 1.0 - alpha)));
    out += -std::log(2.0) - ((a + 1.0) / alpha - 1.0) * std::log(tha_theta);
    out += b * std::log(bracket) - b * std::log(half_one_plus_x);
    out += std::log(xip) - std::log(den);
    return out;
}

inline Complex g_amplitude(const Params& p, double theta, double phi) { return std::exp(log_g_amplitude(p, theta, phi)); }

// First displayed form of g, written directly in terms of xi and t. Used to cross-check g_amplitude.
inline Complex g_amplitude_ratio_form(const Params& p, double theta, double phi) {
    validate(p);
    const double alpha = p.alpha;
    const Complex xi = detail::xi_upper(alpha, phi);
    const Complex xip = detail::xi_prime_upper(alpha, phi);
    const double t = 1.0 - 2.0 * s_of_theta(alpha, theta);
    const Complex q1 = complex_pow_principal(0.5 * (1.0 - xi), 1.0 / alpha);
    const double qt1 = std::pow(0.5 * (1.0 - t), 1.0 / alpha);
    const Complex first = complex_pow_principal((1.0 - xi) / (1.0 - t), (p.a + 1.0) / alpha - 1.0);
    const Complex second = complex_pow_principal((1.0 - q1) / (1.0 - qt1), p.b);
    return first * second * xip / (xi - t);
}

// T_theta(phi) = |e^{f}|^2 = k l / (k + r s + s^2), s = s(theta); the denominator is |Theta^alpha e^{-iZ} - s|^2.
inline double t_modulus(const Params& p, double theta, double phi) {
    validate(p);
    require_open_angle(theta, "theta");
    if (phi <= 0.0 || phi >= pi) return 0.0;
    const double alpha = p.alpha;
    const detail::Angles an = detail::angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const double tha = std::pow(th, alpha);
    const double st = s_of_theta(alpha, theta);
    const double k = tha * tha;
    const double l = std::norm(detail::numerator_factor(th, an.y));
    return k * l / std::norm(detail::denominator_factor(tha, st, an.z));
}

inline double sine_ratio(double alpha, double theta) {
    require_open_angle(theta, "theta");
    return std::sin((pi - theta) / (1.0 + alpha)) / std::sin((pi - theta) / (1.0 + 1.0 / alpha));
}

inline Complex f_at_saddle(const Params& p, double theta) {
    validate(p);
    return {std::log(sine_ratio(p.alpha, theta)), theta};
}

inline Complex g_at_saddle(const Params& p, double theta) {
    validate(p);
    require_open_angle(theta, "theta");
    const double alpha = p.alpha, a = p.a, b = p.b;
    const detail::Angles an = detail::angles(alpha, theta);
    const double ti = theta_major(1.0 / alpha, theta);
    const double ta = theta_major(alpha, theta);
    const Complex num = std::polar(1.0, -(pi + an.y * (a + b + 1.0 - alpha))) *
                        complex_pow_principal(std::polar(1.0, an.y) - ti, b) * (std::polar(1.0, an.z) - ta) *
                        detail::xi_prime_upper(alpha, theta);
    const double den = 2.0 * std::pow(ti, alpha) * std::pow(ta, (a + 1.0) / alpha - 1.0) *
                       std::pow(1.0 - ti * std::pow(ta, 1.0 / alpha), b) *
                       (1.0 + ta * ta - 2.0 * ta * std::cos(an.z));
    return num / den;
}

inline Complex f_second_at_saddle(const Params& p, double theta) {
    validate(p);
    require_open_angle(theta, "theta");
    const double alpha = p.alpha;
    const detail::Angles an = detail::angles(alpha, theta);
    const double ti = theta_major(1.0 / alpha, theta);
    const Complex xip = detail::xi_prime_upper(alpha, theta);
    return (1.0 + alpha) / (4.0 * alpha * alpha) * std::polar(1.0, -(pi - 2.0 * alpha * an.y)) *
           std::pow(ti, 1.0 - 2.0 * alpha) * xip * xip / (std::polar(1.0, an.y) - ti);
}

inline Complex m_alpha(const Params& p, double theta) {
    validate(p);
    require_open_angle(theta, "theta");
    const double alpha = p.alpha, a = p.a, b = p.b;
    const detail::Angles an = detail::angles(alpha, theta);
    const double ti = theta_major(1.0 / alpha, theta);
    const double ta = theta_major(alpha, theta);
    const Complex num = std::polar(1.0, -(0.5 * pi + an.y * (a + b + 1.0))) *
                        complex_pow_principal(std::polar(1.0, an.y) - ti, b + 0.5) * (std::polar(1.0, an.z) - ta);
    const double den = std::sqrt(ti) * std::pow(ta, (a + 1.0) / alpha - 1.0) *
                       std::pow(1.0 - ti * std::pow(ta, 1.0 / alpha), b) *
                       (1.0 + ta * ta - 2.0 * ta * std::cos(an.z));
    return num / den;
}

// Square root with argument in (-pi/2, pi/2].
inline Complex sqrt_right_half(Complex z) {
    Complex r = std::sqrt(z);
    if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
    return r;
}

struct SaddleData {
    Complex f_saddle;
    Complex g_saddle;
    Complex f_second;
    Complex m_alpha;
    double sine_ratio = 0.0;
};

inline SaddleData saddle_data(const Params& p, double theta) {
    return {f_at_saddle(p, theta), g_at_saddle(p, theta), f_second_at_saddle(p, theta), m_alpha(p, theta),
            sine_ratio(p.alpha, theta)};
}

// d(phi) = (1+alpha) cot phi + alpha cot((pi-phi)/(1+1/alpha)); +infinity at phi = 0.
inline double d_of_phi(double alpha, double phi) {
    if (phi <= 0.0) return std::numeric_limits<double>::infinity();
    if (phi >= pi) return 0.0;
    const detail::Angles an = detail::angles(alpha, phi);
    return (1.0 + alpha) / std::tan(phi) + alpha / std::tan(an.z);
}

inline double d_prime(double alpha, double phi) {
    const detail::Angles an = detail::angles(alpha, phi);
    const double sp = std::sin(phi), sz = std::sin(an.z);
    return -(1.0 + alpha) / (sp * sp) + alpha * alpha / (1.0 + alpha) / (sz * sz);
}

inline double phi_star(double alpha, double tol = 1e-14) {
    if (!(alpha > 0.0)) throw ParameterError("phi_star: alpha must be positive");
    return find_root_bisect([&](double ph) { return 1.0 - d_of_phi(alpha, ph); }, 0.0, pi, tol);
}

inline double lambda_of_phi(double alpha, double phi) {
    const detail::Angles an = detail::angles(alpha, phi);
    return std::cos(an.y) * std::sin(an.z) - alpha * std::sin(an.y) * std::cos(an.z);
}

inline double lambda_prime(double alpha, double phi) {
    const detail::Angles an = detail::angles(alpha, phi);
    return (1.0 - alpha) * std::sin(an.y) * std::sin(an.z);
}

inline double delta_of_phi(double alpha, double phi) {
    const detail::Angles an = detail::angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const double d = d_of_phi(alpha, phi);
    return (d * d - 1.0) * th * (std::cos(an.y) - th) + 2.0 * (1.0 - th * th);
}

// Lower bound for Delta in terms of lambda (valid whenever lambda >= 0).
inline double delta_lower_bound(double alpha, double phi) {
    const detail::Angles an = detail::angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const double d = d_of_phi(alpha, phi);
    return (d * d * th + th + 2.0) / ((1.0 + alpha) * std::sin(an.z)) * lambda_of_phi(alpha, phi);
}

// h = w / (u s) in closed form; empty where d = 1.
inline std::optional<double> h_of_phi(double alpha, double phi) {
    const detail::Angles an = detail::angles(alpha, phi);
    const double d = d_of_phi(alpha, phi);
    const double dm = d * d - 1.0;
    if (dm == 0.0) return std::nullopt;
    const double th = theta_major(1.0 / alpha, phi);
    return std::pow(th, alpha) * (std::cos(an.z) - 2.0 * d / dm * std::sin(an.z));
}

struct StructureBundle {
    double k = 0.0, l = 0.0, r = 0.0, s = 0.0;
    double u = 0.0, v = 0.0, w = 0.0;
    double d = 0.0;
    std::optional<double> h;
    double delta_cap = 0.0;
    double lambda_low = 0.0;
};

// k, l, r with their analytic derivatives.
struct KlrDerivatives {
    double k, l, r, dk, dl, dr;
};

inline KlrDerivatives klr_derivatives(double alpha, double phi) {
    const detail::Angles an = detail::angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const double thp = theta_major_prime(1.0 / alpha, phi);
    const double tha = std::pow(th, alpha);
    KlrDerivatives o{};
    o.k = tha * tha;
    o.l = std::norm(detail::numerator_factor(th, an.y));
    o.r = -2.0 * tha * std::cos(an.z);
    o.dk = 2.0 * alpha * std::pow(th, 2.0 * alpha - 1.0) * thp;
    o.dl = 2.0 * thp * (th - std::cos(an.y)) - 2.0 / (1.0 + alpha) * th * std::sin(an.y);
    o.dr = -2.0 * alpha * std::pow(th, alpha - 1.0) * thp * std::cos(an.z) -
           2.0 * tha * (alpha / (1.0 + alpha)) * std::sin(an.z);
    return o;
}

inline StructureBundle structure_functions(double alpha, double phi) {
    if (!(alpha > 0.0)) throw ParameterError("structure_functions: alpha must be positive");
    require_open_angle(phi, "phi");
    const detail::Angles an = detail::angles(alpha, phi);
    const double th = theta_major(1.0 / alpha, phi);
    const KlrDerivatives kd = klr_derivatives(alpha, phi);
    StructureBundle sb;
    sb.k = kd.k;
    sb.l = kd.l;
    sb.r = kd.r;
    sb.s = s_of_theta(alpha, phi);
    sb.d = d_of_phi(alpha, phi);
    const double dm = sb.d * sb.d - 1.0;
    sb.u = 2.0 * std::sin(an.y) / (1.0 + alpha) * std::pow(th, 2.0 * alpha + 1.0) * dm;
    sb.w = 2.0 * std::sin(phi) / ((1.0 + alpha) * (1.0 + alpha)) * std::pow(th, 4.0 * alpha + 1.0) *
           (dm * std::cos(an.z) - 2.0 * sb.d * std::sin(an.z));
    const double kl_prime = kd.dk * kd.l + kd.k * kd.dl;
    sb.v = kl_prime * kd.r - kd.k * kd.l * kd.dr;
    sb.h = h_of_phi(alpha, phi);
    sb.delta_cap = delta_of_phi(alpha, phi);
    sb.lambda_low = lambda_of_phi(alpha, phi);
    return sb;
}

}  // namespace biortho
