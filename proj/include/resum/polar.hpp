#pragma once
#include <cmath>
#include <complex>

namespace resum {

using cplx = std::complex<double>;

// Point on the Riemann surface of the logarithm: positive modulus, argument a
// plain real number (not reduced mod 2*pi).  Sector membership and fractional
// powers depend on the unreduced argument, so evaluators take these instead of
// std::complex.
struct polar {
    double mod = 0.0;
    double arg = 0.0;

    cplx value() const { return std::polar(mod, arg); }
    polar pow(double s) const { return {std::pow(mod, s), arg * s}; }
    bool finite() const { return std::isfinite(mod) && std::isfinite(arg); }
};

inline polar operator*(const polar& a, const polar& b) { return {a.mod * b.mod, a.arg + b.arg}; }
inline polar operator/(const polar& a, const polar& b) { return {a.mod / b.mod, a.arg - b.arg}; }
inline polar scale(const polar& a, double r) { return {a.mod * r, a.arg}; }

// z^w for z on the surface, w complex: exp(w log z) with log z = log|z| + i arg.
inline cplx cpow(const polar& z, const cplx& w) {
    cplx logz(std::log(z.mod), z.arg);
    return std::exp(w * logz);
}

} // namespace resum
