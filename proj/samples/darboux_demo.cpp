// Compares P_n(x(theta)) with its leading asymptotic term as n grows.
//   darboux_demo [alpha a b theta]
#include <cstdio>
#include <cstdlib>

#include "biortho/biortho.hpp"

int main(int argc, char** argv) {
    using namespace biortho;
    Params p{2.0, 0.5, -0.3};
    double theta = 2.0 * pi / 5.0;
    if (argc == 5) {
        p = {std::atof(argv[1]), std::atof(argv[2]), std::atof(argv[3])};
        theta = std::atof(argv[4]);
    }
    try {
        std::printf("alpha=%g a=%g b=%g theta=%.6f x(theta)=%.15f rho=%.15f\n", p.alpha, p.a, p.b, theta,
                    x_of_theta(p, theta), sine_ratio(p.alpha, theta));
        std::printf("%6s %24s %24s %12s\n", "n", "P_n / rho^n", "leading / rho^n", "rel_err");
        for (const int n : dyadic_degrees(3, 10)) {
            const ConvergenceRow r = convergence_row(p, n, theta, ReferenceMode::automatic, TableOptions{});
            std::printf("%6d %24.16e %24.16e %12.3e%s\n", n, r.reference, r.asymptotic, r.rel_err,
                        r.envelope_ok ? "" : "  (near a zero of the oscillation)");
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
