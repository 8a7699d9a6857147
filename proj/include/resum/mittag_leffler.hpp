#pragma once
#include <complex>

namespace resum {

struct ml_result {
    std::complex<double> value{0.0, 0.0};
    double abs_error = 0.0; // estimated
    bool reliable = false;
};

// E_alpha(z) = sum_n z^n / Gamma(1 + alpha n) for alpha in (0, 2].
// Power series with a cancellation guard at moderate |z|; exponentially
// improved asymptotics at large |z|; the half-order split for alpha > 1.
ml_result mittag_leffler(double alpha, std::complex<double> z);

// log|E_alpha(z)| without overflow at large |z| in the growth sector.
double log_abs_mittag_leffler(double alpha, std::complex<double> z);

} // namespace resum
