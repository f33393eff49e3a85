// Builds a zero of the Bergman kernel of G_3 and prints the pieces of the
// construction.

#include <cstdio>

#include "symdisc/symdisc.hpp"

int main() {
    using namespace symdisc;

    const auto q = abc(nu0());
    std::printf("a(nu0) = %s\nb(nu0) = %s\nc(nu0) = %s\n", format_complex(q.a).c_str(), format_complex(q.b).c_str(),
                format_complex(q.c).c_str());
    const Complex z0 = z0_closed();
    std::printf("z0 = %s, |z0| = %.15g, residual = %.3g\n", format_complex(z0).c_str(), std::abs(z0), quad_residual(q, z0));

    const auto w = construct_kernel_zero_G3();
    std::printf("\nlambda =");
    for (const auto& x : w.lam) std::printf(" %s", format_complex(x).c_str());
    std::printf("\nmu     =");
    for (const auto& x : w.mu) std::printf(" %s", format_complex(x).c_str());
    std::printf("\nK = %s\n|K| / local scale = %.3g (eps = %g)\n", format_complex(w.kernel_value).c_str(), w.normalized_abs, w.eps);
    return 0;
}
