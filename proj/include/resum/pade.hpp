#pragma once
#include <vector>

#include "resum/polar.hpp"

namespace resum {

// Rational approximant built from Taylor coefficients through an SVD-filtered
// Toeplitz solve.  Near-rank-deficiency triggers degree reduction, so noisy or
// exactly-rational inputs come back with spurious pole/zero pairs removed
// instead of doublets sitting on the ray of interest.
struct pade_approximant {
    std::vector<cplx> num; // ascending powers
    std::vector<cplx> den; // den[0] = 1
    int requested_l = 0, requested_m = 0;
    int effective_l = 0, effective_m = 0;

    cplx eval(cplx t) const;
    std::vector<cplx> poles() const; // finite denominator roots
};

pade_approximant robust_pade(const std::vector<cplx>& coeff, int l, int m, double tol = 1e-13);

// distance diagnostics for a pole field against a ray arg t = d
struct ray_clearance {
    bool blocked = false;   // some pole within angular_tol of the ray
    double nearest = 0.0;   // angular distance of the nearest pole, radians
    cplx blocking_pole{0.0, 0.0};
};
ray_clearance poles_near_ray(const std::vector<cplx>& poles, double d, double angular_tol = 0.12,
                             double radius_cap = INFINITY);

} // namespace resum
