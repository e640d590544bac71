// Prints the moments I_j = int P_n(x) (1-x)^{alpha j} (1-x)^a (1+x)^b dx, j = 0..n.
// Only I_n should be visibly nonzero.
#include <cmath>
#include <cstdio>

#include "biortho/biortho.hpp"

int main() {
    using namespace biortho;
    const Params p{2.0, 0.5, -0.3};
    const int n = 6;
    for (int j = 0; j <= n; ++j) {
        const auto q = integrate_interval([&](double x) { return eval_biortho(p, n, x).value; },
                                          EndpointExponents{p.alpha * j + p.a, p.b}, 1e-12);
        std::printf("I_%d = % .6e   (%lld evaluations)\n", j, q.value, q.evaluations);
    }
    return 0;
}
