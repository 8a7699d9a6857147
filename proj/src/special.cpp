#include "resum/special.hpp"

#include <cmath>

namespace resum {

using cplx = std::complex<double>;

// Lanczos coefficients, g = 7, n = 9 (Godfrey's set).
static const double lanczos_g = 7.0;
static const double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        const double pi = 3.14159265358979323846;
        return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + double(i));
    cplx t = z + lanczos_g + 0.5;
    const double half_log_2pi = 0.91893853320467274178;
    return half_log_2pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx cgamma(cplx z) { return std::exp(log_gamma(z)); }

double rgamma(double x) {
    if (x > 0.5) {
        if (x > 170.0) return 0.0; // Gamma overflows; reciprocal underflows
        return 1.0 / std::tgamma(x);
    }
    // 1/Gamma(x) = Gamma(1-x) * sin(pi x) / pi; zero at x = 0, -1, -2, ...
    const double pi = 3.14159265358979323846;
    double r = std::round(x);
    if (x == r && x <= 0.0) return 0.0;
    double lg = std::lgamma(1.0 - x); // 1-x > 0.5 here
    double s = std::sin(pi * x);
    // sin carries the sign; magnitude via logs to dodge overflow
    double mag = lg + std::log(std::abs(s) / pi);
    if (mag > 700.0) return s > 0 ? INFINITY : -INFINITY;
    return std::copysign(std::exp(mag), s);
}

double log_binomial(long n, long k) {
    return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) - std::lgamma(double(n - k + 1));
}

} // namespace resum
