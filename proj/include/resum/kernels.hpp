#pragma once
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resum/mittag_leffler.hpp"
#include "resum/polar.hpp"
#include "resum/sequences.hpp"

namespace resum {

using ray_evaluator = std::function<cplx(polar)>;
using moment_closed_form = std::function<cplx(cplx)>;

enum class kernel_kind { gevrey, classical, gamma_power, maergoiz, rescaled, custom };

struct moment_value {
    cplx value{0.0, 0.0};
    double abs_error = 0.0;
    bool from_quadrature = false;
};

// Summability kernel e: proper sector evaluator plus its moment function
// m(lambda) = integral_0^inf t^(lambda-1) e(t) dt, normalized so m(0) = 1.
class kernel {
  public:
    // e(z) = (1/alpha) z^(1/alpha) exp(-z^(1/alpha)), moments Gamma(1+alpha*lambda)
    static kernel gevrey(double alpha);
    // e(z) = k z^k exp(-z^k), moments Gamma(1+lambda/k)
    static kernel classical(double k);
    // e(z) = z^a exp(-z) / Gamma(a), moments Gamma(a+lambda)/Gamma(a)
    static kernel gamma_power(double a);
    // e(z) = z exp(-V(z)) / omega, normalized at construction; V is sampled on
    // the real ray for positivity and monotone growth
    static kernel maergoiz(ray_evaluator V, double omega);
    // e^(s)(z) = e(z^(1/s))/s, moments m(s*lambda); lifts omega to s*omega(base)
    static kernel rescaled(kernel base, double s);
    static kernel custom(std::string name, ray_evaluator e, double omega,
                         std::optional<moment_closed_form> closed = std::nullopt);

    kernel_kind kind() const;
    double omega() const;
    const std::string& describe() const;
    cplx e(polar z) const;
    bool has_closed_moment() const;

    // closed form when available unless forced to the quadrature path
    moment_value moment(cplx lambda, double tol = 1e-10, bool force_quadrature = false) const;
    double log_moment(double p, double tol = 1e-10) const; // overflow-safe for closed forms
    // m(p+1)/m(p); a finite product of integers/offsets for integer-parameter
    // gamma families (hence exact in double range), exp of log difference else
    double moment_quotient(std::size_t p, double tol = 1e-10) const;

    // E(z) = sum_n z^n / m(n): exp / Mittag-Leffler / Kummer closed strategies,
    // guarded power series otherwise.  For rescaled kernels with omega >= 2
    // this evaluates the base kernel's entire companion (the only one with a
    // nontrivial decay sector).
    ml_result E(cplx z, double tol = 1e-12) const;
    double log_abs_E(cplx z) const;

    const kernel* base() const;   // rescaled kernels only, else nullptr
    double rescale_factor() const;

  private:
    struct impl;
    std::shared_ptr<impl> im_;
    kernel() = default;
};

// Tabulated m(0..depth) with quadrature error bounds; positivity and
// log-convexity are checked within the error slack.
class moment_sequence {
  public:
    moment_sequence(kernel k, std::size_t depth, double tol = 1e-10);

    const kernel& source() const { return kernel_; }
    std::size_t depth() const { return logm_.size() - 1; }
    double log_value(std::size_t p) const { return logm_.at(p); }
    double value(std::size_t p) const;
    double quad_error(std::size_t p) const { return err_.at(p); }
    bool positive_ok() const { return positive_; }
    bool log_convex_ok() const { return convex_; }

    sequence_table as_table() const; // M_p = m(p), for the growth-map machinery

  private:
    kernel kernel_;
    std::vector<double> logm_;
    std::vector<double> err_;
    bool positive_ = false;
    bool convex_ = false;
};

enum class condition_verdict { pass, fail, assumed };

struct condition_report {
    std::string name;
    condition_verdict verdict = condition_verdict::assumed;
    double c = 0.0, k = 0.0; // fitted envelope constants when relevant
    std::string note;
};

struct kernel_validation {
    std::vector<condition_report> conditions;
    double omega_kernel = 0.0;
    double omega_table = 0.0;
    bool omega_consistent = false;
    bool admissible = false;
};

struct validation_options {
    double eps = 0.26;         // sector margin, radians off the boundary rays
    double radius_min = 1e-3;
    double radius_max = 1e3;
    int radii = 40;
    int rays = 5;
    double tol = 1e-8;
};

// Samples every kernel axiom against the table's growth maps and fits the
// decay/growth envelopes.  Violations come back as failing entries, not
// exceptions.  Direct kernels with omega >= 2 are rejected in the report with
// a pointer at rescaling.
kernel_validation validate_kernel(const kernel& k, const sequence_table& table,
                                  const validation_options& opt = {});

// equivalence_check of the kernel's moment table against the given table
equivalence_result moment_equivalence(const kernel& k, const sequence_table& table,
                                      std::size_t depth = 60, double tol = 1e-10);

} // namespace resum
