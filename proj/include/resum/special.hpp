#pragma once
#include <complex>

namespace resum {

// log Gamma on the half-plane Re z > 0 (principal branch), Lanczos g=7.
// Accurate to ~1e-13 relative; reflection is applied for Re z < 0.5.
std::complex<double> log_gamma(std::complex<double> z);

// Gamma(z) = exp(log_gamma(z)); overflows for large |z| like the real version.
std::complex<double> cgamma(std::complex<double> z);

// 1/Gamma(x) for real x, including zero and negative integers (where it is 0).
double rgamma(double x);

// log(n choose k) for nonnegative integers.
double log_binomial(long n, long k);

} // namespace resum
