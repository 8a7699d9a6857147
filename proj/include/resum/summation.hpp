#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resum/envelope.hpp"
#include "resum/kernels.hpp"
#include "resum/pade.hpp"
#include "resum/series.hpp"
#include "resum/transforms.hpp"

namespace resum {

// coefficient-class membership |a_p| <= c a^p m(p)
struct coefficient_fit {
    bool in_class = false;
    double log_c = 0.0;
    double a = 0.0;     // geometric factor
    double trend = 0.0; // residual drift when rejected
};
coefficient_fit coefficient_class(const formal_series& fhat, const moment_sequence& m);

struct sum_method {
    enum class type { pade, closed };
    type kind = type::pade;
    int l = 0, m = 0;          // pade degrees; 0,0 = pick from series length
    ray_evaluator closed;      // analytic continuation supplied by the caller
    std::string closed_name;

    static sum_method pade(int l = 0, int m = 0);
    static sum_method closed_form(std::string name, ray_evaluator g);
};

// analytic continuation of the transformed series along a ray
struct continuation {
    ray_evaluator eval;
    std::vector<cplx> poles;   // pade only
    ray_clearance clearance;   // against the requested ray
    double radius_estimate = INFINITY; // nearest pole distance, pade only
    int effective_l = 0, effective_m = 0;
};
continuation continue_borel(const formal_series& bhat, double direction, const sum_method& method);

struct point_value {
    cplx z{0.0, 0.0};
    cplx value{0.0, 0.0};
    double err_estimate = 0.0;
    bool inside_certified = false;
    bool converged = false;
};

struct summability_report {
    // stage verdicts
    coefficient_fit coeff;
    bool pole_free = true;
    ray_clearance clearance;
    envelope_fit ray_growth;      // |g| <= c/h(k1/|u|) along the ray
    envelope_fit kernel_decay;    // |e| <= c h(k2/|z|) inside the kernel sector
    rho_witness rho2;
    double certified_radius = 0.0;
    bool certified = false;
    std::string failure;          // first stage that broke, empty when certified

    std::vector<point_value> points;
};

struct summation_options {
    double tol = 1e-8;
    std::size_t depth = 0;      // moment table depth; 0 = series length + 8
    double ray_radius_hi = 50.0;
    int ray_samples = 28;
    std::size_t workers = 1;    // per-point parallelism; 0 = RESUM_WORKERS
};

// Full pipeline: coefficient fit, termwise inverse, continuation, growth and
// decay certificates, then the kernel transform at the requested points.
summability_report m_sum(const formal_series& fhat, const kernel& e, double direction,
                         const sum_method& method, const std::vector<cplx>& points,
                         const summation_options& opt = {});

// Same series, same direction, two kernels with equivalent moment sequences:
// reports the per-point deviation of the two sums.
struct independence_report {
    summability_report first, second;
    double max_deviation = 0.0;
    bool comparable = false; // both runs certified and converged
};
independence_report kernel_independence(const formal_series& fhat, const kernel& e1,
                                        const kernel& e2, double direction,
                                        const sum_method& method, const std::vector<cplx>& points,
                                        const summation_options& opt = {});

} // namespace resum
