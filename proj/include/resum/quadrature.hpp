#pragma once
#include <complex>
#include <functional>

namespace resum {

struct quad_result {
    std::complex<double> value{0.0, 0.0};
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = false;
};

using integrand = std::function<std::complex<double>(double)>;

// Adaptive Gauss-Kronrod 7/15 on [a, b].  Splits the worst interval until the
// summed error estimate drops below abs_tol or the interval budget runs out.
quad_result gk_adaptive(const integrand& f, double a, double b, double abs_tol,
                        int max_intervals = 4000);

// integral_0^infty f(t) dt for integrands that decay at both ends of the ray.
// Near the origin substitutes t = scale*exp(-x); outward walks doubling
// segments [scale*2^k, scale*2^(k+1)] until consecutive contributions are
// negligible, then refines globally to the relative tolerance.
quad_result ray_integral(const integrand& f, double scale, double rel_tol);

// integral_0^b f(t) dt with the same exp substitution at the origin.
quad_result origin_integral(const integrand& f, double b, double rel_tol);

// integral_a^infty f(t) dt by doubling segments only.
quad_result tail_integral(const integrand& f, double a, double rel_tol);

} // namespace resum
