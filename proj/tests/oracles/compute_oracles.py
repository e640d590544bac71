"""High-precision reference values for the C++ test suite.

Every value here is computed with mpmath directly from the defining
formulas (double sum, contour integral, closed forms), independently of the
library code paths.  Inputs that the C++ side holds as doubles are converted
with F() so both sides see bit-identical arguments.  Running the script
rewrites tests/oracle_values.hpp.
"""
import os

from mpmath import mp, mpf, mpc, gamma, rgamma, sin, cos, exp, log, pi, sqrt, quad, diff, findroot, jacobi, beta, re

mp.dps = 40


def theta_major(beta_, t):
    return sin(t) / ((1 + beta_) * sin((pi - t) / (1 + beta_)))


def x_of_theta(al, th):
    return 1 - 2 * theta_major(1 / al, th) * theta_major(al, th) ** (1 / al)


def t_of_theta(al, th):
    return 1 - 2 * theta_major(1 / al, th) ** al * theta_major(al, th)


def biortho_double_sum(al, a, b, n, x):
    al, a, b, x = mpf(al), mpf(a), mpf(b), mpf(x)
    v = mpf(0)
    for r in range(n + 1):
        for s in range(r + 1):
            v += ((-1) ** s * gamma(n + (s + a + 1) / al) * gamma(n + b + 1)
                  * rgamma(n + 1) * rgamma(s + 1) * rgamma(r - s + 1)
                  * rgamma((s + a + 1) / al) * rgamma(n - r + b + 1)
                  * ((1 - x) / 2) ** r * ((1 + x) / 2) ** (n - r))
    return v


def xi(al, phi):
    return 1 - 2 * theta_major(1 / al, phi) ** al * exp(-1j * (pi - phi) / (1 + 1 / al))


def contour_value(al, a, b, n, th):
    """Rodrigues contour integral on the upper half of the contour, first form of the integrand."""
    al, a, b = mpf(al), mpf(a), mpf(b)
    t = t_of_theta(al, th)
    c = (a + 1) / al - 1
    den_b = 1 - ((1 - t) / 2) ** (1 / al)

    def integrand(phi):
        z = xi(al, phi)
        dz = diff(lambda p: xi(al, p), phi)
        q = (1 - z) / 2
        base = (z - 1) * (1 - q ** (1 / al)) / (z - t)
        return base ** n * ((1 - z) / (1 - t)) ** c * ((1 - q ** (1 / al)) / den_b) ** b * dz / (z - t)

    val = quad(integrand, [0, th / 2, th, (th + pi) / 2, pi])
    return re(val / (pi * 1j))


def m_alpha(al, a, b, th):
    al, a, b = mpf(al), mpf(a), mpf(b)
    Y = (pi - th) / (1 + al)
    Z = (pi - th) / (1 + 1 / al)
    Ti = theta_major(1 / al, th)
    Ta = theta_major(al, th)
    num = exp(-1j * (pi / 2 + Y * (a + b + 1))) * (exp(1j * Y) - Ti) ** (b + mpf(1) / 2) * (exp(1j * Z) - Ta)
    den = sqrt(Ti) * Ta ** ((a + 1) / al - 1) * (1 - Ti * Ta ** (1 / al)) ** b * (1 + Ta ** 2 - 2 * Ta * cos(Z))
    return num / den


def sine_ratio(al, th):
    return sin((pi - th) / (1 + al)) / sin((pi - th) / (1 + 1 / al))


def f_phase(al, th, phi):
    """Phase via the first (defining) form, principal Log of the full ratio."""
    z = xi(al, phi)
    t = t_of_theta(al, th)
    return log((z - 1) * (1 - ((1 - z) / 2) ** (1 / al)) / (z - t))


def d_of_phi(al, phi):
    return (1 + al) / mp.tan(phi) + al / mp.tan((pi - phi) / (1 + 1 / al))


def F(v):
    """The double nearest to a decimal literal, as an exact mpf."""
    return mpf(float(mpf(v)))


ENTRIES = []


def emit(name, v):
    if isinstance(v, mpc):
        ENTRIES.append(f"inline constexpr double {name}_re = {mp.nstr(v.real, 22)};")
        ENTRIES.append(f"inline constexpr double {name}_im = {mp.nstr(v.imag, 22)};")
    else:
        ENTRIES.append(f"inline constexpr double {name} = {mp.nstr(v, 22)};")


if __name__ == "__main__":
    PI2 = F(pi / 2)
    PI3 = F(pi / 3)
    TH25 = F(2 * pi / 5)
    emit("lgamma_half", log(sqrt(pi)))
    emit("lgamma_7_3", log(gamma(F("2.3333333333333335"))))
    emit("x_alpha2_half_pi", x_of_theta(2, PI2))
    emit("t_alpha2_half_pi", t_of_theta(2, PI2))
    emit("x_alpha3_theta1_1", x_of_theta(3, F("1.1")))
    x8 = F(x_of_theta(2, PI2))
    emit("x_for_p8", x8)
    emit("p_a2_b05_bm03_n8_xhalfpi", biortho_double_sum(2, F("0.5"), F("-0.3"), 8, x8))
    emit("p_a15_n20_x03", biortho_double_sum(F("1.5"), 0, 0, 20, F("0.3")))
    emit("p_a4_a12_bm05_n12_xm04", biortho_double_sum(4, F("1.2"), F("-0.5"), 12, F("-0.4")))
    emit("p_a1_a05_bm03_n7_x03", biortho_double_sum(1, F("0.5"), F("-0.3"), 7, F("0.3")))
    emit("p_a3_a23_b07_n25_x055", biortho_double_sum(3, F("2.3"), F("0.7"), 25, F("0.55")))
    emit("contour_a2_a05_bm03_n8_halfpi", contour_value(2, F("0.5"), F("-0.3"), 8, PI2))
    emit("contour_a4_a12_bm05_n12_2pi5", contour_value(4, F("1.2"), F("-0.5"), 12, TH25))
    emit("jacobi_4_1_1_x02", jacobi(4, 1, 1, F("0.2")))
    emit("jacobi_6_0_0_x05", jacobi(6, 0, 0, mpf("0.5")))
    emit("beta_moment_a05_b0", 2 ** mpf("1.5") * beta(mpf("1.5"), 1))
    emit("beta_moment_am095_bm09", 2 ** F("-0.85") * gamma(1 + F("-0.95")) * gamma(1 + F("-0.9")) / gamma(2 + F("-0.95") + F("-0.9")))
    emit("m_a2_a05_bm03_2pi5", m_alpha(2, F("0.5"), F("-0.3"), TH25))
    emit("rho_a2_2pi5", sine_ratio(2, TH25))
    emit("f_second_a2_2pi5", diff(lambda p: f_phase(2, TH25, p), TH25, 2))
    emit("f_a2_pi3_phi1", f_phase(2, PI3, mpf(1)))
    emit("phi0_alpha2", findroot(lambda p: d_of_phi(2, p) - 1, 1.5))
    emit("phi0_alpha4", findroot(lambda p: d_of_phi(4, p) - 1, 1.5))
    emit("phi0_alpha05", findroot(lambda p: d_of_phi(mpf("0.5"), p) - 1, 1.5))

    here = os.path.dirname(os.path.abspath(__file__))
    out = os.path.join(here, "..", "oracle_values.hpp")
    with open(out, "w") as fh:
        fh.write("#pragma once\n\n")
        fh.write("// Generated by tests/oracles/compute_oracles.py (mpmath, 40 digits). Do not edit.\n\n")
        fh.write("namespace oracle {\n\n")
        fh.write("\n".join(ENTRIES))
        fh.write("\n\n}  // namespace oracle\n")
    print("\n".join(ENTRIES))
