#include "resum/mittag_leffler.hpp"

#include <cmath>

#include "resum/special.hpp"

namespace resum {

using cplx = std::complex<double>;
static const double pi = 3.14159265358979323846;

namespace {

// Plain power series with running cancellation estimate.  Fails (reliable =
// false) when rounding noise from the largest term, or term overflow, eats the
// requested accuracy.
ml_result ml_series(double alpha, cplx z) {
    ml_result out;
    cplx zn = 1.0;
    cplx acc = 0.0;
    double max_term = 0.0;
    const int nmax = 20000;
    for (int n = 0; n < nmax; ++n) {
        double lg = std::lgamma(1.0 + alpha * n);
        if (n > 0) zn *= z;
        if (!std::isfinite(std::abs(zn))) return out; // overflow, unusable
        cplx term = (lg > 700.0) ? zn * std::exp(-lg) : zn / std::tgamma(1.0 + alpha * n);
        double at = std::abs(term);
        max_term = std::max(max_term, at);
        acc += term;
        // terms eventually decay like |z|^n / Gamma(1+alpha n); stop once two
        // consecutive terms are far below the accumulated value
        if (n > 2 && at < 1e-18 * (std::abs(acc) + max_term * 1e-16)) {
            double prev = std::abs(zn / z) * rgamma(1.0 + alpha * (n - 1.0));
            if (prev < 1e-17 * (std::abs(acc) + 1e-300) || at < 1e-18 * std::abs(acc)) break;
        }
        if (!std::isfinite(max_term)) return out;
    }
    out.value = acc;
    out.abs_error = max_term * 1e-15 + std::abs(acc) * 1e-15;
    out.reliable = std::isfinite(std::abs(acc));
    return out;
}

// Algebraic expansion E_alpha(z) ~ [exp branch] - sum_k z^-k / Gamma(1-alpha k),
// truncated at the smallest term.  The exponential branch is kept whenever
// it is representable; it underflows harmlessly deep in the decay sector.
ml_result ml_asymptotic(double alpha, cplx z) {
    ml_result out;
    double az = std::abs(z);
    if (az < 1.0) return out;
    cplx zinv = 1.0 / z;
    cplx zk = zinv;
    cplx acc = 0.0;
    double last = INFINITY;
    double first_dropped = 0.0;
    const int kmax = 300;
    for (int k = 1; k <= kmax; ++k) {
        double rg = rgamma(1.0 - alpha * k);
        cplx term = zk * rg;
        double at = std::abs(term);
        if (at > last) { // divergent tail reached
            first_dropped = at;
            break;
        }
        acc -= term;
        last = std::max(at, 1e-300);
        zk *= zinv;
        first_dropped = std::abs(zk) * std::abs(rgamma(1.0 - alpha * (k + 1.0)));
    }
    cplx expo = 0.0;
    if (std::abs(z.imag()) < pi * alpha || true) {
        // principal branch of z^(1/alpha); only contributes when representable
        double la = std::log(az) / alpha;
        double th = std::arg(z) / alpha;
        if (std::abs(std::arg(z)) <= alpha * pi) {
            cplx w = std::exp(cplx(la, th)); // z^(1/alpha)
            if (w.real() < 700.0) expo = std::exp(w) / alpha;
        }
    }
    out.value = expo + acc;
    out.abs_error = first_dropped + std::abs(out.value) * 1e-15;
    out.reliable = std::isfinite(std::abs(out.value));
    return out;
}

ml_result ml_dispatch(double alpha, cplx z);

ml_result ml_split(double alpha, cplx z) {
    // E_a(z) = (E_{a/2}(sqrt z) + E_{a/2}(-sqrt z)) / 2
    cplx w = std::sqrt(z);
    ml_result a = ml_dispatch(alpha / 2.0, w);
    ml_result b = ml_dispatch(alpha / 2.0, -w);
    ml_result out;
    out.value = 0.5 * (a.value + b.value);
    out.abs_error = 0.5 * (a.abs_error + b.abs_error);
    out.reliable = a.reliable && b.reliable;
    return out;
}

ml_result ml_dispatch(double alpha, cplx z) {
    if (alpha == 1.0) {
        ml_result out;
        if (z.real() < 700.0) {
            out.value = std::exp(z);
            out.abs_error = std::abs(out.value) * 1e-15;
            out.reliable = true;
        }
        return out;
    }
    if (alpha > 1.0) return ml_split(alpha, z);
    double az = std::abs(z);
    if (az <= 5.0) return ml_series(alpha, z);
    ml_result s;
    if (az <= 40.0) {
        s = ml_series(alpha, z);
        double target = std::abs(s.value) * 1e-10 + 1e-18;
        if (s.reliable && s.abs_error <= target) return s;
    }
    ml_result a = ml_asymptotic(alpha, z);
    if (s.reliable && (!a.reliable || s.abs_error < a.abs_error)) return s;
    return a;
}

} // namespace

ml_result mittag_leffler(double alpha, cplx z) { return ml_dispatch(alpha, z); }

double log_abs_mittag_leffler(double alpha, cplx z) {
    double az = std::abs(z);
    double th = std::arg(z);
    if (std::abs(th) < alpha * pi / 2.0 && az > 4.0) {
        // growth sector: dominant branch exp(z^(1/alpha)) / alpha
        double re_w = std::pow(az, 1.0 / alpha) * std::cos(th / alpha);
        if (re_w > 40.0) return re_w - std::log(alpha);
    }
    ml_result r = mittag_leffler(alpha, z);
    double av = std::abs(r.value);
    return av > 0.0 ? std::log(av) : -INFINITY;
}

} // namespace resum
