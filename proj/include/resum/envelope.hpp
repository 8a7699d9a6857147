#pragma once
#include <functional>
#include <vector>

namespace resum {

// Least-max-violation envelope fit: find k on a log grid and c so that
// log v_i <= log c + bound_log(k, x_i) on all usable samples, rejecting k
// whose residual keeps climbing through the sample tail (non-membership).
struct envelope_fit {
    bool member = false;
    double log_c = 0.0;
    double k = 0.0;
    double trend = 0.0;       // residual drift, tail vs middle, for chosen k
    std::size_t usable = 0;   // samples the bound could be evaluated on
};

// Which admissible k to report: the one with the least max-violation constant
// (diagnostics), or the extreme end of the admissible range (certificates,
// where the sharpest honest constant matters).
enum class k_preference { min_c, smallest, largest };

// bound_log may throw depth_error or return NaN to skip a sample; a k needs at
// least half the samples usable to qualify.
envelope_fit fit_envelope(const std::vector<double>& x, const std::vector<double>& log_v,
                          const std::function<double(double, double)>& bound_log,
                          double k_lo, double k_hi, int k_steps, double trend_band = 0.5,
                          k_preference pref = k_preference::min_c);

} // namespace resum
