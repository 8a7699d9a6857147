#include "resum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace resum {

using cplx = std::complex<double>;

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule (QUADPACK dqk15).
static const double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
static const double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
static const double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

namespace {

struct panel {
    double a, b;
    cplx value;
    double error;
};

panel gk15(const integrand& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * xgk[j]);
        fv[14 - j] = f(c + h * xgk[j]);
    }
    fv[7] = f(c);
    cplx resk = wgk[7] * fv[7];
    cplx resg = wg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        resk += wgk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) resg += wg[j / 2] * (fv[j] + fv[14 - j]);
    }
    panel p{a, b, resk * h, std::abs(resk - resg) * std::abs(h)};
    // QUADPACK-style error sharpening
    double resabs = 0.0;
    for (int j = 0; j < 15; ++j) resabs += std::abs(fv[j]);
    resabs *= std::abs(h) / 15.0;
    if (resabs > 0.0 && p.error > 0.0) {
        double r = std::pow(200.0 * p.error / resabs, 1.5);
        p.error = resabs * std::min(1.0, r);
    }
    return p;
}

struct worse {
    bool operator()(const panel& x, const panel& y) const { return x.error < y.error; }
};

} // namespace

quad_result gk_adaptive(const integrand& f, double a, double b, double abs_tol, int max_intervals) {
    quad_result out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<panel, std::vector<panel>, worse> heap;
    panel p0 = gk15(f, a, b);
    out.evaluations = 15;
    cplx total = p0.value;
    double err = p0.error;
    heap.push(p0);
    int n = 1;
    while (err > abs_tol && n < max_intervals) {
        panel w = heap.top();
        if (w.error <= 0.0 || w.b - w.a < 1e-15 * (std::abs(w.a) + 1.0)) break;
        heap.pop();
        double m = 0.5 * (w.a + w.b);
        panel l = gk15(f, w.a, m), r = gk15(f, m, w.b);
        out.evaluations += 30;
        total += l.value + r.value - w.value;
        err += l.error + r.error - w.error;
        heap.push(l);
        heap.push(r);
        ++n;
    }
    out.value = total;
    out.abs_error = std::max(err, 0.0);
    out.converged = out.abs_error <= abs_tol * 1.0000001 || out.abs_error <= 1e-16 * std::abs(total);
    return out;
}

namespace {

// Shared driver: accumulate segments until two consecutive ones are negligible,
// then re-refine the worst segments against the final relative target.
quad_result accumulate_segments(const std::vector<std::pair<double, double>>& segs,
                                const integrand& f, double rel_tol) {
    quad_result out;
    std::vector<panel> panels;
    cplx total = 0.0;
    for (auto [a, b] : segs) {
        panel p = gk15(f, a, b);
        out.evaluations += 15;
        panels.push_back(p);
        total += p.value;
    }
    // global refinement
    auto cmp = [](const panel& x, const panel& y) { return x.error < y.error; };
    std::priority_queue<panel, std::vector<panel>, decltype(cmp)> heap(cmp, panels);
    double err = 0.0;
    for (const auto& p : panels) err += p.error;
    long budget = 200000;
    while (true) {
        double target = rel_tol * std::max(std::abs(total), 1e-300);
        if (err <= target || out.evaluations >= budget) break;
        panel w = heap.top();
        heap.pop();
        if (w.error <= 0.0 || w.b - w.a < 1e-15 * (std::abs(w.a) + 1.0)) break;
        double m = 0.5 * (w.a + w.b);
        panel l = gk15(f, w.a, m), r = gk15(f, m, w.b);
        out.evaluations += 30;
        total += l.value + r.value - w.value;
        err += l.error + r.error - w.error;
        heap.push(l);
        heap.push(r);
    }
    out.value = total;
    out.abs_error = std::max(err, 0.0);
    out.converged = out.abs_error <= rel_tol * std::max(std::abs(total), 1e-300) * 1.01;
    return out;
}

// Doubling segments in the substituted variable x, integrand g(x); returns the
// list of x segments once the tail is negligible (or budget reached).
std::vector<std::pair<double, double>> doubling_x_segments(const integrand& g, double rel_tol,
                                                           int max_k, bool* ok) {
    std::vector<std::pair<double, double>> segs;
    double lo = 0.0, hi = 1.0;
    double acc = 0.0;
    int quiet = 0;
    *ok = false;
    for (int k = 0; k < max_k; ++k) {
        panel p = gk15(g, lo, hi);
        segs.emplace_back(lo, hi);
        acc += std::abs(p.value);
        if (std::abs(p.value) <= 0.25 * rel_tol * std::max(acc, 1e-300))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2) {
            *ok = true;
            break;
        }
        lo = hi;
        hi = 2.0 * hi;
    }
    return segs;
}

} // namespace

quad_result origin_integral(const integrand& f, double b, double rel_tol) {
    // t = b*exp(-x): integral_0^b f = integral_0^inf f(b e^-x) b e^-x dx
    integrand g = [&](double x) {
        double t = b * std::exp(-x);
        return f(t) * t;
    };
    bool ok = false;
    auto segs = doubling_x_segments(g, rel_tol, 12, &ok);
    quad_result r = accumulate_segments(segs, g, rel_tol);
    if (!ok) r.converged = false;
    return r;
}

quad_result tail_integral(const integrand& f, double a, double rel_tol) {
    std::vector<std::pair<double, double>> segs;
    double lo = a, hi = 2.0 * a;
    double acc = 0.0;
    int quiet = 0;
    bool ok = false;
    for (int k = 0; k < 64; ++k) {
        panel p = gk15(f, lo, hi);
        segs.emplace_back(lo, hi);
        acc += std::abs(p.value);
        if (std::abs(p.value) <= 0.25 * rel_tol * std::max(acc, 1e-300))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2) {
            ok = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    quad_result r = accumulate_segments(segs, f, rel_tol);
    if (!ok) r.converged = false;
    return r;
}

quad_result ray_integral(const integrand& f, double scale, double rel_tol) {
    quad_result in = origin_integral(f, scale, 0.5 * rel_tol);
    quad_result outp = tail_integral(f, scale, 0.5 * rel_tol);
    quad_result r;
    r.value = in.value + outp.value;
    r.abs_error = in.abs_error + outp.abs_error;
    r.evaluations = in.evaluations + outp.evaluations;
    r.converged = in.converged && outp.converged;
    // re-check combined relative target (one side may dominate the magnitude)
    if (!r.converged && r.abs_error <= rel_tol * std::max(std::abs(r.value), 1e-300)) r.converged = true;
    return r;
}

} // namespace resum
