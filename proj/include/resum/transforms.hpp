#pragma once
#include <functional>
#include <string>
#include <vector>

#include "resum/envelope.hpp"
#include "resum/kernels.hpp"
#include "resum/polar.hpp"
#include "resum/sequences.hpp"
#include "resum/series.hpp"

namespace resum {

// Unbounded sector on the log-Riemann surface: |arg z - direction| <
// opening*pi/2, optionally cut at |z| < radius.
struct sector {
    double direction = 0.0;
    double opening = 1.0; // in units of pi/2 half-planes
    double radius = INFINITY;
    bool contains(const polar& z) const;
};

struct transform_result {
    cplx value{0.0, 0.0};
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// integral_0^{inf, arg tau} e(u/z) f(u) du/u.  Needs |arg z - tau| < omega*pi/2
// (throws std::invalid_argument otherwise) and f defined along the ray.
transform_result laplace_ray(const ray_evaluator& f, const kernel& k, double tau, polar z,
                             double rel_tol = 1e-10);

// Inverse path: out along arg = tau + omega*(pi+eps)/2 from the origin to
// radius arc_radius, clockwise arc, back in along tau - omega*(pi+eps)/2.
struct path_spec {
    double direction = 0.0;
    double eps = 0.0;        // widening beyond omega*pi/2, radians; 0 = pick default
    double arc_radius = 0.0; // 0 = pick from |u| and the domain radius
};

// -(1/2 pi i) integral over the path of E(u/z) f(z) dz/z.  f must be defined on
// the widened sector out to the arc radius.  domain_radius caps the default
// arc radius when f is only known on a bounded sector (INFINITY = no cap).
// Kernels with omega >= 2 must be built by rescale(); the path then runs in the
// base variable where the aperture fits and the result is composed back.
transform_result borel_path(const ray_evaluator& f, const kernel& k, const path_spec& path,
                            polar u, double rel_tol = 1e-9, double domain_radius = INFINITY);

// | w/(w-z) - integral_0^{inf,tau} e(u/z) E(u/w) du/u |, the kernel-pair
// reproducing identity.  Needs |z| < |w| and both args admissible around tau.
double reproducing_residual(const kernel& k, polar z, polar w, double tau, double rel_tol = 1e-9);

// Fit |f(z)| <= c / h(k/|z|) over a sector sample grid.
struct growth_fit_options {
    double radius_lo = 1e-2;
    double radius_hi = 1e2;
    int radii = 30;
    int rays = 5;
    double k_lo = 1.0 / 1024.0;
    double k_hi = 1024.0;
    int k_steps = 61;
    k_preference pref = k_preference::min_c;
};
envelope_fit growth_class_fit(const ray_evaluator& f, const sector& s, const sequence_table& table,
                              const growth_fit_options& opt = {});

// Entire-function duality: coefficient bound |a_n| <= c k^n / M_n against the
// global bound |f(z)| <= c' exp(M(k'|z|)), checked on the truncation's reliable
// disc.  radius_estimate is the reconstructed convergence radius (INFINITY for
// entire-looking data); when it is finite the function side is skipped.
struct duality_report {
    envelope_fit coefficient_side;
    envelope_fit function_side;
    double radius_estimate = INFINITY;
    bool entire_like = false;
    bool consistent = false; // both sides admit constants
    std::string note;
};
duality_report entire_duality_check(const formal_series& a, const sequence_table& table);

// Remainder envelope: R_n = sup over samples of |f - partial_n| / (M_n |z|^n),
// then the geometric fit R_n <= C A^n.  Diverging R_n (no finite fit) is
// reported, not thrown.
struct asymptotic_report {
    bool bounded = false;
    double log_c = 0.0;
    double a = 0.0; // geometric ratio
    std::vector<double> remainder_log; // log R_n, n = 1..order
    std::string note;
};
asymptotic_report asymptotic_fit(const ray_evaluator& f, const formal_series& s,
                                 const sequence_table& table, const sector& sub, int order = 14,
                                 int radii = 10, int rays = 3, double radius_hi = 0.25);

// How the transform pair moves asymptotic classes: the direct transform of an
// M'-asymptotic function is checked against M*M', the inverse against M'/M.
struct transform_asymptotics_report {
    asymptotic_report direct;  // Laplace side, class product
    asymptotic_report inverse; // Borel side, class quotient
    bool product_ok = false;
    bool quotient_ok = false;
};
transform_asymptotics_report transform_asymptotics_check(
    const ray_evaluator& f, const formal_series& s, const kernel& k, const sequence_table& base,
    const sequence_table& extra, double tau, int order = 8, double radius_hi = 0.15);

// Termwise product/quotient tables for class arithmetic (names joined with the
// operator; throws if the quotient is not a valid table).
sequence_table product_table(const sequence_table& a, const sequence_table& b);
sequence_table quotient_table(const sequence_table& a, const sequence_table& b);

} // namespace resum
